"""Verification campaigns.

THEOREMS 는 theorem id -> (기본 family, construction, predicate) 테이블이다.
construction 은 generator 가 만든 Instance 에서 witness 를 만들고,
predicate 는 그 결과를 독립적인 검증 함수로 다시 확인해 report 에 기록한다.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import SimpleNamespace
from typing import Callable

import numpy as np
from tqdm import tqdm

from codes.algebra import inverse, mat_pow, poly_eval, rank, solve_left, solve_right
from codes.drazin import (
    Side, azumaya_left, azumaya_right, core_report, drazin_index, drazin_inverse, group_inverse,
    intertwine_check, left_normal_form_checks, left_regular_witness, left_strongly_pi_witness,
    normalize_left_gdrazin, normalize_right_gdrazin, reverse_order, right_normal_form_checks,
    right_regular_witness, right_strongly_pi_witness, sided_agreement_check,
    verify_left_drazin, verify_left_gdrazin, verify_left_pi_regular, verify_left_regular,
    verify_left_strongly_pi, verify_right_drazin, verify_right_gdrazin, verify_right_pi_regular,
    verify_right_regular, verify_right_strongly_pi,
)
from codes.errors import BudgetExceededError, DrazinLabError, UnknownTheoremError
from codes.generators import FAMILIES, Instance, random_invertible
from codes.intertwine import (
    IntertwinePair, pair_condition, pair_drazin_transfer, pair_exhaustive, pair_gdrazin_transfer,
    pair_group_transfer, pair_index_preserved, pair_regular_transfer, pair_strong_pi_transfer, quad_to_pair,
)
from codes.reports import VerificationReport
from codes.ring_lab import (
    azumaya_audit, search_left_drazin, search_left_strongly_pi, search_right_drazin, search_right_strongly_pi,
)
from codes.scalars import GAUSSIAN, ScalarKind
from codes.spectra import (
    charpoly_equal, commuting_radius_check, group_spectrum, intertwine_identity_check, jordan_block_matrix,
    lifted_identity_audit, point_index, product_identity_check,
)
from codes.transfer import (
    JacobsonQuad, binomial_probe, drazin_transfer, gdrazin_transfer, gdrazin_defect_nilpotent, group_transfer,
    index_preserved, pi_regular_transfer, regular_transfer, strong_pi_transfer, cline_partial_left,
    cline_partial_right,
)
from codes.utils import parse_dim, trial_rng

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

QUAD_FAMILIES = ("classical-quad", "case-II-quad", "solved-quad")
PAIR_FAMILIES = ("idempotent-pair", "planted-pair")


@dataclass(frozen=True)
class TheoremEntry:
    description: str
    families: tuple[str, ...]
    construct: Callable
    verify: Callable
    params: dict = field(default_factory=dict)
    exhaustive: bool = False


def _side_of(theorem_id: str) -> Side:
    return Side.RIGHT if theorem_id.endswith("-right") else Side.LEFT


### core
def _c_core(inst, cfg, rng, side):
    a = inst.matrices["a"]
    return {"a": a, "drazin": drazin_inverse(a)}


def _v_core(inst, art, rep, side):
    rep.merge(core_report(art["a"]))


def _v_agreement(inst, art, rep, side):
    X, k = art["drazin"]
    rep.indices["k"] = k
    rep.check("left (X, k) = right (X, k)", sided_agreement_check(art["a"], X, k, X, k))


def _c_azumaya(inst, cfg, rng, side):
    a = inst.matrices["a"]
    k = drazin_index(a)
    if side is Side.LEFT:
        x = left_strongly_pi_witness(a, k)
        return {"a": a, "k": k, "x": x, "w": azumaya_left(a, x, k)}
    y = right_strongly_pi_witness(a, k)
    return {"a": a, "k": k, "x": y, "w": azumaya_right(a, y, k)}


def _v_azumaya(inst, art, rep, side):
    a, k, w = art["a"], art["k"], art["w"]
    rep.indices["p"] = k
    verify_spi = verify_left_strongly_pi if side is Side.LEFT else verify_right_strongly_pi
    verify_dr = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    rep.check("strongly-pi witness", verify_spi(a, art["x"], k))
    rep.check("azumaya realization is a Drazin witness", verify_dr(a, w.candidate, k))
    rep.witness = w


def _c_audit(inst, cfg, rng, side):
    return {"report": azumaya_audit(inst.ring)}


def _v_audit(inst, art, rep, side):
    rep.merge(art["report"])
    rep.matrices.update(art["report"].matrices)


def _c_normalize(inst, cfg, rng, side):
    a = inst.matrices["a"]
    X, _ = drazin_inverse(a)
    b = normalize_left_gdrazin(a, X) if side is Side.LEFT else normalize_right_gdrazin(a, X)
    return {"a": a, "b": b}


def _v_normalize(inst, art, rep, side):
    if side is Side.LEFT:
        checks = left_normal_form_checks(art["a"], art["b"])
    else:
        checks = right_normal_form_checks(art["a"], art["b"])
        printed = checks.pop("aca=c^2a (as printed)")
        rep.notes.append(f"aca=c^2a (as printed) holds: {printed}")
    for name, ok in checks.items():
        rep.check(name, ok)


def _c_intertwine(inst, cfg, rng, side):
    a = inst.matrices["a"]
    s = random_invertible(rng, a.dim, a.kind)
    b = inverse(s) @ a @ s
    x, _ = drazin_inverse(a)
    y, _ = drazin_inverse(b)
    return {"a": a, "b": b, "z": s, "x": x, "y": y}


def _v_intertwine(inst, art, rep, side):
    rep.check("xz = zy", intertwine_check(art["a"], art["b"], art["z"], art["x"], art["y"]))


def _c_reverse(inst, cfg, rng, side):
    b = inst.matrices["a"]
    coeffs = [Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3))) for _ in range(b.dim)]
    a = poly_eval(coeffs, b)
    x, _ = drazin_inverse(a)
    y, j = drazin_inverse(b)
    return {
        "a": a, "b": b,
        "drazin": reverse_order(a, b, x, y, side, j),
        "generalized": reverse_order(a, b, x, y, side, generalized=True),
    }


def _v_reverse(inst, art, rep, side):
    ab = art["a"] @ art["b"]
    w, g = art["drazin"], art["generalized"]
    verify_dr = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    verify_gd = verify_left_gdrazin if side is Side.LEFT else verify_right_gdrazin
    rep.indices["j'"] = w.index
    rep.check("yx Drazin witness of ab", verify_dr(ab, w.candidate, w.index))
    rep.check("yx generalized Drazin witness of ab", verify_gd(ab, g.candidate))


### quads
def _alpha_witness(alpha, side, solver_left, solver_right):
    return solver_left(alpha) if side is Side.LEFT else solver_right(alpha)


def _c_regular(inst, cfg, rng, side):
    q = inst.quad
    x = _alpha_witness(q.alpha, side, left_regular_witness, right_regular_witness)
    x_beta = _alpha_witness(q.beta, side, left_regular_witness, right_regular_witness)
    art = {"q": q, "x": x, "beta_regular": x_beta is not None}
    if x is not None:
        y = regular_transfer(q, x, side)
        art["y"] = y
        art["x_back"] = regular_transfer(q, y, side, reverse=True)
    return art


def _v_regular(inst, art, rep, side):
    q = art["q"]
    verify = verify_left_regular if side is Side.LEFT else verify_right_regular
    rep.check("alpha regular <=> beta regular", (art["x"] is not None) == art["beta_regular"])
    if art["x"] is None:
        rep.notes.append("alpha not regular (index >= 2)")
        return
    rep.check("y regular witness of beta", verify(q.beta, art["y"]))
    rep.check("reverse witness of alpha", verify(q.alpha, art["x_back"]))


def _c_pi_regular(inst, cfg, rng, side):
    q = inst.quad
    n = max(1, drazin_index(q.alpha))
    a_n = mat_pow(q.alpha, n)
    x = solve_left(a_n @ a_n, a_n) if side is Side.LEFT else solve_right(a_n @ a_n, a_n)
    return {"q": q, "n": n, "w": pi_regular_transfer(q, x, n, side)}


def _v_pi_regular(inst, art, rep, side):
    verify = verify_left_pi_regular if side is Side.LEFT else verify_right_pi_regular
    rep.indices["n"] = art["n"]
    rep.check("y pi-regular witness of beta", verify(art["q"].beta, art["w"].candidate, art["n"]))
    rep.witness = art["w"]


def _c_strong_pi(inst, cfg, rng, side):
    q = inst.quad
    p = drazin_index(q.alpha)
    solver = left_strongly_pi_witness if side is Side.LEFT else right_strongly_pi_witness
    x = solver(q.alpha, p)
    y = strong_pi_transfer(q, x, p, side)
    return {"q": q, "p": p, "y": y, "x_back": strong_pi_transfer(q, y, p, side, reverse=True)}


def _v_strong_pi(inst, art, rep, side):
    q, p = art["q"], art["p"]
    verify = verify_left_strongly_pi if side is Side.LEFT else verify_right_strongly_pi
    rep.indices["p"] = p
    rep.check("y strongly-pi witness of beta", verify(q.beta, art["y"], p))
    rep.check("reverse witness of alpha", verify(q.alpha, art["x_back"], p))
    rep.check("index preserved", index_preserved(q))


def _c_drazin(inst, cfg, rng, side, group=False):
    q = inst.quad
    if group:
        if drazin_index(q.alpha) >= 2:
            # group 전제가 없는 인스턴스: β 쪽도 group invertible 이 아니어야 한다
            return {"q": q, "skipped": True}
        x, k = group_inverse(q.alpha), 1
        w = group_transfer(q, x, side)
        back = group_transfer(q, w.candidate, side, reverse=True)
    else:
        x, k = drazin_inverse(q.alpha)
        w = drazin_transfer(q, x, k, side)
        back = drazin_transfer(q, w.candidate, k, side, reverse=True)
    return {"q": q, "k": k, "w": w, "back": back}


def _v_drazin(inst, art, rep, side):
    q = art["q"]
    if art.get("skipped"):
        rep.notes.append("ind(alpha) >= 2, group transfer not applicable")
        rep.check("ind(beta) >= 2", drazin_index(q.beta) >= 2)
        return
    k = art["k"]
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    rep.indices["k"] = k
    rep.check("y Drazin witness of beta", verify(q.beta, art["w"].candidate, k))
    rep.check("reverse witness of alpha", verify(q.alpha, art["back"].candidate, k))
    rep.check("ind(alpha) = ind(beta)", index_preserved(q))
    rep.witness = art["w"]


def _c_gdrazin(inst, cfg, rng, side):
    q = inst.quad
    x, _ = drazin_inverse(q.alpha)
    w = gdrazin_transfer(q, x, side)
    return {"q": q, "w": w, "back": gdrazin_transfer(q, w.candidate, side, reverse=True)}


def _v_gdrazin(inst, art, rep, side):
    q, y = art["q"], art["w"].candidate
    verify = verify_left_gdrazin if side is Side.LEFT else verify_right_gdrazin
    rep.check("y generalized Drazin witness of beta", verify(q.beta, y))
    rep.check("beta - beta y beta nilpotent", gdrazin_defect_nilpotent(q.beta, y))
    rep.check("reverse witness of alpha", verify(q.alpha, art["back"].candidate))
    rep.witness = art["w"]


def _c_binomial(inst, cfg, rng, side):
    return {"probes": {n: binomial_probe(inst.quad, n) for n in (1, 2, 3, 4)}}


def _v_binomial(inst, art, rep, side):
    for n, probe in art["probes"].items():
        for name, ok in probe.items():
            if name.startswith("corrected"):
                rep.check(f"n={n} {name}", ok)
        literal_ok = all(ok for name, ok in probe.items() if name.startswith("literal: (1-"))
        rep.notes.append(f"literal sign convention satisfies the power identities at n={n}: {literal_ok}")
        same = probe["corrected: a c_n a = d b_n a"] == probe["corrected: d b_n a = a c_n a"]
        rep.notes.append(f"a c_n a = d b_n a and d b_n a = a c_n a agree: {same}")


def _c_quad_to_pair(inst, cfg, rng, side):
    q = inst.quad
    pair = quad_to_pair(q.a, q.b, q.c, q.d, 1)
    art = {"q": q, "pair": pair}
    if pair is not None:
        X, k = drazin_inverse(pair.one - pair.a)
        art["k"] = k
        art["w"] = pair_drazin_transfer(pair, X, k)
    return art


def _v_quad_to_pair(inst, art, rep, side):
    q, pair = art["q"], art["pair"]
    # acd = dbd, dba = aca 이면 ac(db) = (db)^2, db(ac) = (ac)^2 는 항상 성립
    rep.check("quad reduces to a pair", pair is not None)
    rep.check("power conditions hold", pair_condition(q.ac, q.d @ q.b, 1))
    if pair is None:
        return
    rep.indices["k"] = art["k"]
    rep.check("1-db Drazin witness", verify_left_drazin(pair.one - pair.b, art["w"].candidate, art["k"]))
    rep.check("ind(1-ac) = ind(1-db)", pair_index_preserved(pair))


def _c_cline(inst, cfg, rng, side):
    a, c = inst.matrices["a"], inst.matrices["c"]
    if side is Side.LEFT:
        x, k = drazin_inverse(a @ c)
        return {"ca": c @ a, "k": k, "w": cline_partial_left(a, c, x, k)}
    # right case: 가역인 쪽이 a 자리에 오도록 (c, a) 순서로 넣는다
    x, k = drazin_inverse(c @ a)
    return {"ca": a @ c, "k": k, "w": cline_partial_right(c, a, x, k)}


def _v_cline(inst, art, rep, side):
    verify = verify_left_drazin if side is Side.LEFT else verify_right_drazin
    rep.indices["k"] = art["k"]
    rep.check("y Drazin witness of ca at k+1", verify(art["ca"], art["w"].candidate, art["k"] + 1))
    rep.witness = art["w"]


### pairs
def _pair_witness(pair: IntertwinePair, side, kind):
    alpha = pair.one - pair.a
    if kind == "regular":
        return _alpha_witness(alpha, side, left_regular_witness, right_regular_witness), None
    if kind == "strong-pi":
        p = drazin_index(alpha)
        solver = left_strongly_pi_witness if side is Side.LEFT else right_strongly_pi_witness
        return solver(alpha, p), p
    if kind == "group":
        if drazin_index(alpha) >= 2:
            return None, None
        return group_inverse(alpha), 1
    return drazin_inverse(alpha)


def _pair_transfer(pair, x, idx, side, kind):
    if kind == "regular":
        return pair_regular_transfer(pair, x, side)
    if kind == "strong-pi":
        return pair_strong_pi_transfer(pair, x, idx, side)
    if kind == "drazin":
        return pair_drazin_transfer(pair, x, idx, side).candidate
    if kind == "group":
        return pair_group_transfer(pair, x, side).candidate
    return pair_gdrazin_transfer(pair, x, side).candidate


def _pair_verify(alpha, y, idx, side, kind):
    left = side is Side.LEFT
    if kind == "regular":
        return (verify_left_regular if left else verify_right_regular)(alpha, y)
    if kind == "strong-pi":
        return (verify_left_strongly_pi if left else verify_right_strongly_pi)(alpha, y, idx)
    if kind in ("drazin", "group"):
        return (verify_left_drazin if left else verify_right_drazin)(alpha, y, idx)
    return (verify_left_gdrazin if left else verify_right_gdrazin)(alpha, y)


def _pair_construct(kind):
    def construct(inst, cfg, rng, side):
        pair = inst.pair
        x, idx = _pair_witness(pair, side, kind)
        art = {"pair": pair, "x": x, "idx": idx}
        if x is not None:
            y = _pair_transfer(pair, x, idx, side, kind)
            art["y"] = y
            art["x_back"] = _pair_transfer(pair.swapped(), y, idx, side, kind)
        return art
    return construct


def _pair_check(kind):
    def verify(inst, art, rep, side):
        pair = art["pair"]
        one = pair.one
        if art["x"] is None:
            # regular, group witness 는 index ≤ 1 에서만 존재
            rep.notes.append(f"ind(1-a) >= 2, {kind} transfer not applicable")
            rep.check("ind(1-b) >= 2", drazin_index(one - pair.b) >= 2)
            return
        if art["idx"] is not None:
            rep.indices["k"] = art["idx"]
        rep.check(f"{kind} witness of 1-b", _pair_verify(one - pair.b, art["y"], art["idx"], side, kind))
        rep.check(f"reverse {kind} witness of 1-a", _pair_verify(one - pair.a, art["x_back"], art["idx"], side, kind))
        rep.check("ind(1-a) = ind(1-b)", pair_index_preserved(pair))
        if kind == "gdrazin":
            y = art["y"]
            beta = one - pair.b
            rep.check("(1-b) - (1-b)y(1-b) nilpotent", gdrazin_defect_nilpotent(beta, y))
    return verify


_EXHAUSTIVE_PROBES = (
    ("left spi", Side.LEFT, search_left_strongly_pi, verify_left_strongly_pi),
    ("right spi", Side.RIGHT, search_right_strongly_pi, verify_right_strongly_pi),
    ("left drazin", Side.LEFT, search_left_drazin, verify_left_drazin),
    ("right drazin", Side.RIGHT, search_right_drazin, verify_right_drazin),
)


def _c_pair_exhaustive(inst, cfg, rng, side):
    ring, n = inst.ring, inst.meta.get("n", 1)
    rows = []
    for pair in pair_exhaustive(ring, n):
        alpha, beta = pair.one - pair.a, pair.one - pair.b
        entry = {"pair": pair}
        for label, side_, search, verify in _EXHAUSTIVE_PROBES:
            found, found_beta = search(ring, alpha), search(ring, beta)
            if found is None or found_beta is None:
                # 유한환의 원소는 항상 strongly π-regular: 탐색 상한 안에서 찾아져야 한다
                entry[label] = False
                continue
            x, idx = found
            if label.endswith("spi"):
                y = pair_strong_pi_transfer(pair, x, idx, side_)
            else:
                y = pair_drazin_transfer(pair, x, idx, side_).candidate
            entry[label] = verify(beta, y, idx) and found_beta[1] == idx
        rows.append(entry)
    return {"rows": rows, "ring": ring, "n": n}


def _v_pair_exhaustive(inst, art, rep, side):
    rows = art["rows"]
    rep.indices["pairs"] = len(rows)
    for label in ("left spi", "right spi", "left drazin", "right drazin"):
        bad = [i for i, row in enumerate(rows) if not row[label]]
        rep.check(f"{label} transfer and minimal index over all pairs", not bad)
        for i in bad:
            rep.matrices[f"pair_{i}_a"] = rows[i]["pair"].a
            rep.matrices[f"pair_{i}_b"] = rows[i]["pair"].b
    rep.notes.append(f"{art['ring']} n={art['n']}: {len(rows)} pairs")


### spectra
def _c_product(inst, cfg, rng, side):
    a = inst.matrices["a"]
    c = inst.matrices.get("c")
    if c is None:
        c = random_invertible(rng, a.dim, a.kind)
    return {"a": a, "c": c}


def _v_product(inst, art, rep, side):
    rep.merge(product_identity_check(art["a"], art["c"]))
    lam = inst.meta.get("planted")
    if lam is not None:
        a, c = art["a"], art["c"]
        in_ac = lam in group_spectrum(a @ c).group_spectrum
        in_ca = lam in group_spectrum(c @ a).group_spectrum
        rep.check("planted lambda in group spectrum of AC and CA", in_ac and in_ca)
        rep.indices["rank(C)"] = rank(c)


def _c_pair_spectrum(inst, cfg, rng, side):
    return {"report": intertwine_identity_check(inst.pair)}


def _v_pair_spectrum(inst, art, rep, side):
    rep.merge(art["report"])


def _c_pair_lift(inst, cfg, rng, side):
    return {"report": lifted_identity_audit(inst.ring, inst.meta.get("n", 1))}


def _c_planted(inst, cfg, rng, side):
    a = inst.matrices["a"]
    return {"a": a, "spec": inst.meta["spec"], "spectrum": group_spectrum(a)}


def _v_planted(inst, art, rep, side):
    a, spec, spectrum = art["a"], art["spec"], art["spectrum"]
    rep.check("charpoly = prod (t - lambda)^size", charpoly_equal(a, jordan_block_matrix(spec)))
    planted = sorted({lam for lam, _ in spec.blocks}, key=lambda v: (v.re, v.im))
    rep.check("all planted eigenvalues detected", spectrum.eigenvalues == planted)
    rep.check("point index = largest block",
              all(point_index(a, lam) == spec.largest_block(lam) for lam in planted))
    rep.check("group spectrum = blocks of size >= 2",
              spectrum.group_spectrum == [lam for lam in planted if spec.largest_block(lam) >= 2])
    rep.indices["group_spectrum_size"] = len(spectrum.group_spectrum)


def _c_radius(inst, cfg, rng, side):
    n = inst.matrices["a"].dim
    pool = [Fraction(v) for v in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2)]
    lams = [pool[int(rng.integers(0, len(pool)))] for _ in range(n)]
    mus = [pool[int(rng.integers(0, len(pool)))] for _ in range(n)]
    return {"report": commuting_radius_check(lams, mus, rng), "lams": lams, "mus": mus}


def _v_radius(inst, art, rep, side):
    rep.merge(art["report"])
    rep.indices["dim"] = len(art["lams"])
    rep.notes.append(f"lambda={[str(v) for v in art['lams']]} mu={[str(v) for v in art['mus']]}")


THEOREMS: dict[str, TheoremEntry] = {
    "core-self-consistency": TheoremEntry("drazin_inverse passes both one-sided predicates and is index-minimal",
                                          ("random-matrix",), _c_core, _v_core),
    "sided-agreement": TheoremEntry("minimal left and right Drazin inverses coincide",
                                    ("random-matrix",), _c_core, _v_agreement),
    "azumaya-audit": TheoremEntry("exhaustive: strongly pi-regular <=> Drazin, Azumaya realization",
                                  ("exhaustive-ring",), _c_audit, _v_audit, exhaustive=True),
    "product-spectrum": TheoremEntry("charpoly, nonzero point indices and ind(I-AC) agree for AC and CA",
                                     ("planted-product", "random-pair", "planted-jordan"), _c_product, _v_product),
    "pair-spectrum": TheoremEntry("group spectra of a and b agree away from 0",
                                  PAIR_FAMILIES, _c_pair_spectrum, _v_pair_spectrum),
    "pair-spectrum-lift": TheoremEntry("exhaustive: Z/m pairs whose Q lift stays a pair satisfy the identity",
                                       ("exhaustive-ring",), _c_pair_lift, _v_audit, exhaustive=True),
    "planted-spectrum": TheoremEntry("planted Jordan data is recovered exactly",
                                     ("planted-jordan",), _c_planted, _v_planted),
    "commuting-radius": TheoremEntry("r(AB) <= r(A) r(B) for commuting planted pairs",
                                     ("random-matrix",), _c_radius, _v_radius),
    "intertwine-similar": TheoremEntry("az = zb implies xz = zy",
                                       ("random-matrix",), _c_intertwine, _v_intertwine),
    "binomial-probe": TheoremEntry("(1-bd)^n = 1 - b_n d and (1-ac)^n = 1 - a c_n, n = 1..4",
                                   QUAD_FAMILIES, _c_binomial, _v_binomial),
    "quad-to-pair": TheoremEntry("every quad reduces to an intertwined pair (ac, db)",
                                 QUAD_FAMILIES, _c_quad_to_pair, _v_quad_to_pair),
}

for _side in ("left", "right"):
    THEOREMS.update({
        f"azumaya-{_side}": TheoremEntry(f"{_side} Azumaya realization of a non-canonical witness",
                                         ("random-matrix",), _c_azumaya, _v_azumaya),
        f"normalize-{_side}": TheoremEntry(f"{_side} normalization xax satisfies the strengthened system",
                                           ("random-matrix",), _c_normalize, _v_normalize),
        f"reverse-order-{_side}": TheoremEntry(f"yx is a {_side} (generalized) Drazin inverse of ab",
                                               ("random-matrix",), _c_reverse, _v_reverse),
        f"regular-transfer-{_side}": TheoremEntry(f"{_side} regularity transfers between 1-ac and 1-bd",
                                                  QUAD_FAMILIES, _c_regular, _v_regular),
        f"pi-regular-transfer-{_side}": TheoremEntry(f"{_side} pi-regularity via the binomial power quad",
                                                     QUAD_FAMILIES, _c_pi_regular, _v_pi_regular),
        f"strong-pi-transfer-{_side}": TheoremEntry(f"{_side} strong pi-regularity transfer",
                                                    QUAD_FAMILIES, _c_strong_pi, _v_strong_pi),
        f"drazin-transfer-{_side}": TheoremEntry(f"{_side} Drazin transfer with index preservation",
                                                 QUAD_FAMILIES, _c_drazin, _v_drazin),
        f"group-transfer-{_side}": TheoremEntry(f"{_side} group transfer",
                                                QUAD_FAMILIES, lambda i, c, r, s: _c_drazin(i, c, r, s, group=True),
                                                _v_drazin, params={"planted_index": 1}),
        f"gdrazin-transfer-{_side}": TheoremEntry(f"{_side} generalized Drazin transfer",
                                                  QUAD_FAMILIES, _c_gdrazin, _v_gdrazin),
        f"cline-{_side}": TheoremEntry(f"{_side} partial Cline: c x^2 a at index k+1",
                                       ("cline",), _c_cline, _v_cline),
        f"pair-regular-{_side}": TheoremEntry(f"{_side} regular transfer for intertwined pairs",
                                              PAIR_FAMILIES, _pair_construct("regular"), _pair_check("regular")),
        f"pair-strong-pi-{_side}": TheoremEntry(f"{_side} strong pi-regular transfer for intertwined pairs",
                                                PAIR_FAMILIES, _pair_construct("strong-pi"), _pair_check("strong-pi")),
        f"pair-drazin-{_side}": TheoremEntry(f"{_side} Drazin transfer for intertwined pairs",
                                             PAIR_FAMILIES, _pair_construct("drazin"), _pair_check("drazin")),
        f"pair-group-{_side}": TheoremEntry(f"{_side} group transfer for intertwined pairs",
                                            PAIR_FAMILIES, _pair_construct("group"), _pair_check("group"),
                                            params={"planted_index": 1}),
        f"pair-gdrazin-{_side}": TheoremEntry(f"{_side} generalized Drazin transfer for intertwined pairs",
                                              PAIR_FAMILIES, _pair_construct("gdrazin"), _pair_check("gdrazin")),
    })
THEOREMS["pair-exhaustive"] = TheoremEntry("strongly pi / Drazin pair transfers over every pair of a finite ring",
                                           ("exhaustive-ring",), _c_pair_exhaustive, _v_pair_exhaustive,
                                           exhaustive=True)

# 명제 번호로도 부를 수 있도록 (alias -> 등록된 id)
ALIASES: dict[str, str] = {
    "prop-1.4": "sided-agreement",
    "thm-2.7-audit": "azumaya-audit",
    "cor-3.10": "product-spectrum",
    "cor-3.11": "product-spectrum",
    "rem-4.6": "quad-to-pair",
    "cor-4.7": "pair-spectrum",
}
for _side in ("left", "right"):
    ALIASES.update({
        f"thm-2.7-{_side}": f"azumaya-{_side}",
        f"thm-3.5-{_side}": f"drazin-transfer-{_side}",
        f"thm-3.6-{_side}": f"gdrazin-transfer-{_side}",
        f"prop-cline-{_side}": f"cline-{_side}",
        f"thm-4.2-{_side}": f"pair-drazin-{_side}",
        f"thm-4.3-{_side}": f"pair-group-{_side}",
        f"thm-4.5-{_side}": f"pair-gdrazin-{_side}",
    })


FAMILY_ALIASES = {"classical": "classical-quad", "case-II": "case-II-quad", "solved": "solved-quad"}


def resolve_theorem_id(theorem_id: str) -> str:
    return ALIASES.get(theorem_id, theorem_id)


def get_theorem(theorem_id: str) -> TheoremEntry:
    theorem_id = resolve_theorem_id(theorem_id)
    if theorem_id not in THEOREMS:
        raise UnknownTheoremError(theorem_id)
    return THEOREMS[theorem_id]


### trial 실행
def lift_instance(inst: Instance, kind: ScalarKind) -> Instance:
    """rational 인스턴스를 gaussian 으로 (불변식은 생성자에서 다시 확인)"""
    if kind != GAUSSIAN:
        return inst
    if inst.quad is not None:
        q = inst.quad
        inst.quad = JacobsonQuad(*(m.to_kind(kind) for m in (q.a, q.b, q.c, q.d)))
    if inst.pair is not None:
        inst.pair = IntertwinePair(inst.pair.a.to_kind(kind), inst.pair.b.to_kind(kind), inst.pair.n)
    inst.matrices = {k: v.to_kind(kind) for k, v in inst.matrices.items()}
    return inst


def build_instance(cfg: SimpleNamespace, entry: TheoremEntry, rng: np.random.Generator) -> Instance:
    family = cfg.family or entry.families[0]
    lo, hi = parse_dim(cfg.dim)
    dim = lo if lo == hi else int(rng.integers(lo, hi + 1))
    scalar = ScalarKind.parse(str(cfg.scalar))
    params = SimpleNamespace(**{**entry.params, **(getattr(cfg, "sampling", None) or {}), "dim": dim})
    if scalar.name == "mod":
        ring_cfg = getattr(cfg, "ring", None) or {}
        params.modulus = scalar.modulus
        params.ring_dim = dim
        params.budget = int(ring_cfg.get("budget", 10_000))
        params.pair_budget = int(ring_cfg.get("pair_budget", 100_000))
    inst = FAMILIES[family](rng, params)
    if scalar.name != "mod":
        inst = lift_instance(inst, scalar)
    return inst


def run_trial(theorem_id: str, cfg: SimpleNamespace, trial: int) -> VerificationReport:
    """trial 하나. BudgetExceededError 를 제외한 DrazinLabError 는 실패한 check 로 기록된다."""
    theorem_id = resolve_theorem_id(theorem_id)
    entry = get_theorem(theorem_id)
    side = _side_of(theorem_id)
    rng = trial_rng(cfg.seed, trial)
    rep = VerificationReport(f"{theorem_id}#{trial}")
    start = time.perf_counter()
    inst = None
    try:
        inst = build_instance(cfg, entry, rng)
        art = entry.construct(inst, cfg, rng, side)
        entry.verify(inst, art, rep, side)
    except BudgetExceededError:
        raise
    except DrazinLabError as e:
        rep.check(f"raised {type(e).__name__}", False)
        rep.notes.append(str(e))
    if inst is not None and not rep.passed:
        rep.matrices.update(inst.all_matrices())
    if not rep.checks:
        rep.check("instance generated", inst is not None)
    rep.elapsed = time.perf_counter() - start
    return rep


def _instance_mismatch(theorem_id: str, entry: TheoremEntry, inst: Instance) -> str | None:
    families = set(entry.families)
    if families & set(QUAD_FAMILIES):
        return None if inst.quad is not None else f"{theorem_id} needs a quad instance"
    if families & set(PAIR_FAMILIES):
        return None if inst.pair is not None else f"{theorem_id} needs a pair instance"
    if entry.exhaustive:
        return None if inst.ring is not None else f"{theorem_id} needs a ring instance"
    need = ("a", "c") if "cline" in families else ("a",)
    missing = [k for k in need if k not in inst.matrices]
    if missing:
        return f"{theorem_id} needs matrices {missing}"
    if families == {"planted-jordan"} and "spec" not in inst.meta:
        return f"{theorem_id} needs jordan data in the instance file"
    return None


def verify_instance(theorem_id: str, inst: Instance, seed: int = 0) -> VerificationReport:
    """파일에서 읽은 instance 하나에 construction + predicate 를 적용

    :raises ValueError: instance 종류가 theorem 에 맞지 않을 때
    """
    theorem_id = resolve_theorem_id(theorem_id)
    entry = get_theorem(theorem_id)
    reason = _instance_mismatch(theorem_id, entry, inst)
    if reason is not None:
        raise ValueError(reason)
    side = _side_of(theorem_id)
    rep = VerificationReport(f"{theorem_id}@{inst.family}")
    start = time.perf_counter()
    try:
        art = entry.construct(inst, None, trial_rng(seed, 0), side)
        entry.verify(inst, art, rep, side)
    except BudgetExceededError:
        raise
    except DrazinLabError as e:
        rep.check(f"raised {type(e).__name__}", False)
        rep.notes.append(str(e))
    if not rep.passed:
        rep.matrices.update(inst.all_matrices())
    if not rep.checks and not rep.skipped:
        rep.check("instance loaded", True)
    rep.elapsed = time.perf_counter() - start
    return rep


def validate_config(cfg: SimpleNamespace) -> TheoremEntry:
    """usage error 는 trial 을 시작하기 전에 ValueError / UnknownTheoremError 로"""
    entry = get_theorem(cfg.theorem)
    cfg.theorem = resolve_theorem_id(cfg.theorem)
    if cfg.family is not None:
        cfg.family = FAMILY_ALIASES.get(cfg.family, cfg.family)
    if int(cfg.trials) < 1:
        raise ValueError(f"trials must be positive, got {cfg.trials}")
    parse_dim(cfg.dim)
    scalar = ScalarKind.parse(str(cfg.scalar))
    if entry.exhaustive and scalar.name != "mod":
        raise ValueError(f"{cfg.theorem} enumerates a finite ring, use --scalar mod:<m>")
    if not entry.exhaustive and scalar.name == "mod":
        raise ValueError(f"{cfg.theorem} needs rational or gaussian scalars")
    if cfg.family is not None and cfg.family not in entry.families:
        raise ValueError(f"family {cfg.family!r} is not registered for {cfg.theorem}; choose from {list(entry.families)}")
    if cfg.budget_seconds is not None and cfg.budget_seconds <= 0:
        raise ValueError("budget_seconds must be positive")
    return entry


def _run_trial_job(job):
    theorem_id, cfg_dict, trial = job
    return run_trial(theorem_id, SimpleNamespace(**cfg_dict), trial)


def _worker_cfg(cfg: SimpleNamespace) -> dict:
    keys = ("theorem", "trials", "dim", "scalar", "seed", "family", "sampling", "ring")
    return {k: getattr(cfg, k, None) for k in keys}


def run_campaign(cfg: SimpleNamespace, workers: int = 1, run=None, verbose: bool = True):
    """trial 들을 실행하고 (reports, budget_exceeded) 를 돌려준다.

    결과는 trial 번호 순으로 모이므로 worker 수와 무관하게 결정적이다.
    """
    required_attrs = ["theorem", "trials", "dim", "scalar", "seed", "family", "budget_seconds"]
    for attr in required_attrs:
        assert hasattr(cfg, attr), f"AttributeError: There's no '{attr}' attribute in cfg."
    entry = validate_config(cfg)
    n_trials = 1 if entry.exhaustive else int(cfg.trials)
    jobs = [(cfg.theorem, _worker_cfg(cfg), t) for t in range(n_trials)]
    reports: list[VerificationReport] = []
    budget_exceeded = False
    start = time.monotonic()

    def collect(results):
        nonlocal budget_exceeded
        for rep in tqdm(results, total=n_trials, desc=cfg.theorem, disable=not verbose):
            reports.append(rep)
            if run is not None:
                run.log({"trial": len(reports) - 1, "passed": int(rep.passed), "elapsed": rep.elapsed})
            if not rep.passed and verbose:
                tqdm.write(f"❌ {rep.instance_id}: {', '.join(rep.failed_checks)}")
            if cfg.budget_seconds and time.monotonic() - start > cfg.budget_seconds and len(reports) < n_trials:
                budget_exceeded = True
                break

    if workers > 1 and n_trials > 1:
        executor = ProcessPoolExecutor(max_workers=workers)
        try:
            collect(executor.map(_run_trial_job, jobs, chunksize=max(1, n_trials // (workers * 4))))
        finally:
            executor.shutdown(wait=not budget_exceeded, cancel_futures=True)
    else:
        collect(_run_trial_job(job) for job in jobs)
    return reports, budget_exceeded


def exit_status(reports: list[VerificationReport], budget_exceeded: bool) -> int:
    if any(not r.passed for r in reports):
        return EXIT_FAILURE
    if budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK
