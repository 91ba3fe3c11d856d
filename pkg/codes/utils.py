import os
import random
from datetime import datetime
from types import SimpleNamespace
from zoneinfo import ZoneInfo

import numpy as np
import yaml
from dotenv import load_dotenv


def load_config(config_path='./config.yaml'):
    """.yaml 설정 파일 읽기

    :param str config_path: 설정 파일 경로, defaults to './config.yaml'
    :return SimpleNamespace: 설정값
    """
    with open(config_path, 'r') as file:
        cfg = yaml.safe_load(file)
    return SimpleNamespace(**cfg)


def set_seed(seed: int = 256):
    """랜덤성 제어 함수 (전역 random / numpy). trial 단위 rng 는 trial_rng 사용

    :param int seed: defaults to 256
    """
    random.seed(seed)
    np.random.seed(seed % (2 ** 32))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """(seed, trial) 로부터 결정적인 독립 rng. worker 스케줄과 무관하다."""
    return np.random.default_rng(np.random.SeedSequence([seed % (2 ** 64), trial]))


def parse_dim(dim):
    """'2-4' 같은 범위 문자열 또는 정수 -> (lo, hi)"""
    if isinstance(dim, int):
        return dim, dim
    text = str(dim)
    if "-" in text:
        lo, hi = text.split("-", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid dim range {dim!r}")
    return lo, hi


def get_worker_count(cfg) -> int:
    """OSDRAZIN_THREADS 환경변수가 config 의 workers 보다 우선한다"""
    load_dotenv()
    env = os.environ.get("OSDRAZIN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            print(f"⚠️ OSDRAZIN_THREADS={env!r} is not an integer, falling back to config")
    return max(1, int(getattr(cfg, "workers", 1) or 1))


def make_run_name(cfg) -> str:
    CURRENT_TIME = datetime.now(ZoneInfo("Asia/Seoul")).strftime("%y%m%d%H%M")
    return (
        f"{CURRENT_TIME}-"
        f"{cfg.theorem}-"
        f"{cfg.family or 'default'}-"
        f"dim{cfg.dim}-"
        f"{cfg.scalar}-"
        f"seed{cfg.seed}"
    )
