import argparse
import os
import sys
import time
from types import SimpleNamespace

import wandb
import yaml

from codes.campaign import (
    ALIASES, EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, THEOREMS, exit_status, get_theorem, lift_instance,
    resolve_theorem_id, run_campaign, validate_config, verify_instance,
)
from codes.errors import BudgetExceededError, DrazinLabError, InvariantViolation, UnknownTheoremError
from codes.generators import FAMILIES
from codes.instance_io import dump_instance, load_instance
from codes.reports import aggregate, render, summary_frame
from codes.scalars import ScalarKind
from codes.utils import get_worker_count, load_config, make_run_name, parse_dim, set_seed, trial_rng

# CLI flag -> config key
OVERRIDES = {
    "theorem": "theorem",
    "trials": "trials",
    "dim": "dim",
    "scalar": "scalar",
    "seed": "seed",
    "family": "family",
    "budget_seconds": "budget_seconds",
    "out": "out",
    "format": "format",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact verification campaigns for one-sided Drazin inverses.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification campaign for one theorem id")
    run.add_argument(
        '--config',
        type=str,
        default='config.yaml',  # 기본값 설정
        help='Name of the configuration YAML file (e.g., config.yaml, experiment_A.yaml)'
    )
    run.add_argument('--theorem', type=str, help='theorem id (see `list`)')
    run.add_argument('--trials', type=int)
    run.add_argument('--dim', type=str, help="matrix dimension or range such as '2-4'")
    run.add_argument('--scalar', type=str, help='rational, gaussian or mod:m')
    run.add_argument('--seed', type=int)
    run.add_argument('--family', type=str, help='instance generator name')
    run.add_argument('--budget-seconds', dest='budget_seconds', type=int)
    run.add_argument('--out', type=str, help='report path; a per-trial CSV is written next to it')
    run.add_argument('--format', type=str, choices=['text', 'structured'])
    run.add_argument('--quiet', action='store_true', help='no progress bar')
    run.add_argument('--instance', type=str, help='verify one instance YAML (from `gen`) instead of sampling trials')

    gen = sub.add_parser("gen", help="write one generated instance as YAML")
    gen.add_argument('--family', type=str, required=True, choices=sorted(FAMILIES))
    gen.add_argument('--dim', type=int, default=2)
    gen.add_argument('--scalar', type=str, default='rational')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--param', action='append', default=[], metavar='KEY=VALUE',
                     help='family parameter, value parsed as YAML (e.g. rank=0, spec=[[1,2]])')
    gen.add_argument('--out', type=str, required=True)

    sub.add_parser("list", help="list registered theorem ids")
    return parser


def resolve_config_path(name: str) -> str:
    if os.path.exists(name):
        return name
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), name)


def apply_overrides(cfg: SimpleNamespace, args: argparse.Namespace) -> SimpleNamespace:
    for flag, key in OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, key, value)
    for key, default in (("family", None), ("budget_seconds", None), ("out", None), ("format", "text"),
                         ("sampling", None), ("ring", None), ("workers", 1)):
        if not hasattr(cfg, key):
            setattr(cfg, key, default)
    return cfg


def parse_params(pairs: list[str]) -> dict:
    params = {}
    for item in pairs:
        if "=" not in item:
            raise ValueError(f"--param expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = yaml.safe_load(value)
    return params


def write_report(cfg: SimpleNamespace, text: str, reports) -> None:
    out_dir = os.path.dirname(os.path.abspath(cfg.out))
    os.makedirs(out_dir, exist_ok=True)
    with open(cfg.out, "w") as f:
        f.write(text)
    csv_path = os.path.splitext(cfg.out)[0] + ".csv"
    summary_frame(reports).to_csv(csv_path, index=False)
    print(f"📢 report : {cfg.out}")
    print(f"📢 trials : {csv_path}")


def run_instance(cfg: SimpleNamespace, path: str) -> int:
    """--instance: 파일 하나를 campaign 대신 검증"""
    try:
        get_theorem(cfg.theorem)
        cfg.theorem = resolve_theorem_id(cfg.theorem)
        inst = load_instance(path)
        rep = verify_instance(cfg.theorem, inst, seed=cfg.seed)
    except InvariantViolation as e:
        print(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILURE
    except (UnknownTheoremError, ValueError, KeyError, OSError) as e:
        print(f"⚠️ usage error: {e}")
        return EXIT_USAGE
    print("⚙️ Theorem :", cfg.theorem, "/ instance", path)
    header = {"theorem": cfg.theorem, "family": inst.family, "instance": path, "seed": cfg.seed}
    agg = aggregate([rep], header)
    text = render(agg, [rep], cfg.format)
    if cfg.out:
        write_report(cfg, text, [rep])
    else:
        print(text)
    status = exit_status([rep], False)
    print("📢 PASS" if status == EXIT_OK else f"❌ FAIL {', '.join(rep.failed_checks)}")
    return status


def run_command(args: argparse.Namespace) -> int:
    # Yaml 파일 읽기
    cfg = load_config(config_path=resolve_config_path(args.config))
    cfg = apply_overrides(cfg, args)
    if args.instance:
        return run_instance(cfg, args.instance)
    try:
        entry = validate_config(cfg)
    except (UnknownTheoremError, ValueError) as e:
        print(f"⚠️ usage error: {e}")
        return EXIT_USAGE
    # 랜덤성 제어
    set_seed(cfg.seed)
    workers = get_worker_count(cfg)
    print("⚙️ Theorem :", cfg.theorem, "-", entry.description)
    print(f"⚙️ Family : {cfg.family or entry.families[0]} / dim {cfg.dim} / {cfg.scalar} / seed {cfg.seed}")
    print("⚙️ Workers :", workers)

    next_run_name = make_run_name(cfg)
    run = None
    if hasattr(cfg, 'wandb') and cfg.wandb and cfg.wandb['log']:
        run = wandb.init(
            project=cfg.wandb['project'],
            name=next_run_name,
            config=vars(cfg),
        )

    start = time.time()
    budget_exceeded = False
    try:
        reports, budget_exceeded = run_campaign(cfg, workers=workers, run=run, verbose=not args.quiet)
    except BudgetExceededError as e:
        print(f"⚠️ budget exceeded: {e}")
        reports, budget_exceeded = [], True
    finally:
        if run is not None:
            run.finish()
    print(f"⌚ 실행 시간: {time.time() - start:.1f}s")

    header = {
        "theorem": cfg.theorem,
        "family": cfg.family or entry.families[0],
        "dim": str(cfg.dim),
        "scalar": str(cfg.scalar),
        "seed": cfg.seed,
        "trials_requested": 1 if entry.exhaustive else int(cfg.trials),
        "budget_exceeded": budget_exceeded,
    }
    agg = aggregate(reports, header)
    text = render(agg, reports, cfg.format)
    if cfg.out:
        write_report(cfg, text, reports)
    else:
        print(text)

    status = exit_status(reports, budget_exceeded)
    if status == EXIT_OK:
        print(f"📢 PASS {agg['passed']}/{agg['trials_run']}")
    elif status == EXIT_BUDGET:
        print(f"⚠️ budget of {cfg.budget_seconds}s exceeded after {agg['trials_run']} trials")
    else:
        print(f"❌ FAIL {agg['failed']}/{agg['trials_run']}")
    return status


def gen_command(args: argparse.Namespace) -> int:
    try:
        params = parse_params(args.param)
        scalar = ScalarKind.parse(args.scalar)
        parse_dim(args.dim)
    except (ValueError, yaml.YAMLError) as e:
        print(f"⚠️ usage error: {e}")
        return EXIT_USAGE
    params.setdefault("dim", args.dim)
    if args.family == "exhaustive-ring":
        if scalar.name != "mod":
            print("⚠️ usage error: exhaustive-ring needs --scalar mod:<m>")
            return EXIT_USAGE
        params.update(ring_dim=args.dim, modulus=scalar.modulus, with_pairs=True)
    rng = trial_rng(args.seed, 0)
    try:
        inst = FAMILIES[args.family](rng, SimpleNamespace(**params))
        if scalar.name == "gaussian":
            inst = lift_instance(inst, scalar)
        path = dump_instance(args.out, inst, args.seed)
    except DrazinLabError as e:
        print(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILURE
    print(f"📢 {args.family} instance : {path}")
    return EXIT_OK


def list_command(args: argparse.Namespace) -> int:
    for theorem_id, entry in THEOREMS.items():
        print(f"{theorem_id:28s} {','.join(entry.families):40s} {entry.description}")
    print()
    for alias, theorem_id in ALIASES.items():
        print(f"{alias:28s} -> {theorem_id}")
    return EXIT_OK


COMMANDS = {
    "run": run_command,
    "gen": gen_command,
    "list": list_command,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    try:
        status = main()
    finally:
        sys.stdout.flush()
    sys.exit(status)
