"""YAML instance files.

matrix: {dim, scalar: "rational" | "gaussian" | "mod:<m>", entries: [[str, ...], ...]}
"""
from __future__ import annotations

import os

import yaml

from codes.algebra import SquareMatrix
from codes.errors import InvariantViolation, MatrixFormatError
from codes.generators import Instance
from codes.intertwine import IntertwinePair
from codes.ring_lab import FiniteRingSpec
from codes.scalars import GAUSSIAN, ScalarKind
from codes.spectra import JordanSpec
from codes.transfer import JacobsonQuad


def matrix_to_dict(A: SquareMatrix) -> dict:
    return {"dim": A.dim, "scalar": str(A.kind), "entries": A.entries_as_strings()}


def matrix_from_dict(doc: dict) -> SquareMatrix:
    try:
        dim = int(doc["dim"])
        kind = ScalarKind.parse(str(doc["scalar"]))
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise MatrixFormatError(f"bad matrix document: {e}") from None
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise MatrixFormatError(f"entries do not form a {dim}x{dim} grid")
    return SquareMatrix.from_rows([[kind.parse_entry(str(v)) for v in row] for row in entries], kind)


def instance_to_dict(inst: Instance, seed: int | None = None) -> dict:
    doc = {"family": inst.family, "seed": seed}
    if inst.quad is not None:
        doc["type"] = "quad"
        doc["matrices"] = {k: matrix_to_dict(v) for k, v in inst.quad.matrices().items()}
    elif inst.pair is not None:
        doc["type"] = "pair"
        doc["n"] = inst.pair.n
        doc["matrices"] = {k: matrix_to_dict(v) for k, v in inst.pair.matrices().items()}
    elif inst.ring is not None:
        doc["type"] = "ring"
        doc["ring"] = {"dim": inst.ring.dim, "modulus": inst.ring.modulus}
        doc["n"] = inst.meta.get("n", 1)
        doc["pairs"] = [
            {"a": matrix_to_dict(p.a), "b": matrix_to_dict(p.b)} for p in inst.meta.get("pairs", [])
        ]
    else:
        doc["type"] = "matrices"
        doc["matrices"] = {k: matrix_to_dict(v) for k, v in inst.matrices.items()}
        spec = inst.meta.get("spec")
        if spec is not None:
            doc["jordan"] = [[str(lam), size] for lam, size in spec.blocks]
        if "planted" in inst.meta:
            doc["planted"] = str(inst.meta["planted"])
    return doc


def instance_from_dict(doc: dict) -> Instance:
    """읽는 즉시 quad / pair 의 불변식을 다시 검사한다 (생성자에서)"""
    kind = doc.get("type")
    family = doc.get("family", "file")
    if kind == "quad":
        m = {k: matrix_from_dict(v) for k, v in doc["matrices"].items()}
        return Instance(family, quad=JacobsonQuad(m["a"], m["b"], m["c"], m["d"]))
    if kind == "pair":
        m = {k: matrix_from_dict(v) for k, v in doc["matrices"].items()}
        return Instance(family, pair=IntertwinePair(m["a"], m["b"], int(doc["n"])))
    if kind == "ring":
        ring = FiniteRingSpec(int(doc["ring"]["dim"]), int(doc["ring"]["modulus"]))
        n = int(doc.get("n", 1))
        pairs = [IntertwinePair(matrix_from_dict(p["a"]), matrix_from_dict(p["b"]), n) for p in doc.get("pairs", [])]
        return Instance(family, ring=ring, meta={"n": n, "pairs": pairs})
    if kind == "matrices":
        meta = {}
        if "jordan" in doc:
            try:
                blocks = [(GAUSSIAN.parse_entry(str(lam)), int(size)) for lam, size in doc["jordan"]]
                meta["spec"] = JordanSpec(tuple(blocks))
            except (TypeError, ValueError) as e:
                raise MatrixFormatError(f"bad jordan data: {e}") from None
        if "planted" in doc:
            meta["planted"] = GAUSSIAN.parse_entry(str(doc["planted"]))
        return Instance(family, matrices={k: matrix_from_dict(v) for k, v in doc["matrices"].items()}, meta=meta)
    raise MatrixFormatError(f"unknown instance type {kind!r}")


def dump_instance(path: str, inst: Instance, seed: int | None = None) -> str:
    doc = instance_to_dict(inst, seed)
    # 쓰기 전에 round-trip 으로 불변식 재검증
    try:
        instance_from_dict(doc)
    except InvariantViolation as e:
        raise InvariantViolation(f"generator produced an invalid {inst.family} instance: {e}") from e
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(doc, f, sort_keys=False, allow_unicode=True)
    return path


def load_instance(path: str) -> Instance:
    with open(path, "r") as f:
        return instance_from_dict(yaml.safe_load(f))
