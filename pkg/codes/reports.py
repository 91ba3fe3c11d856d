"""VerificationReport 와 campaign 집계(aggregate) 리포트"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import pandas as pd
import yaml

from codes.algebra import SquareMatrix


@dataclass
class VerificationReport:
    """trial 하나의 검증 기록

    :param str instance_id: 인스턴스 식별자 (theorem id + trial 번호 등)
    """
    instance_id: str
    checks: list[tuple[str, bool]] = field(default_factory=list)
    witness: Any = None
    indices: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    matrices: dict[str, SquareMatrix] = field(default_factory=dict)
    elapsed: float = 0.0
    # 전제가 성립하지 않아 검증 대상이 아닌 인스턴스
    skipped: bool = False

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    def merge(self, other: VerificationReport, prefix: str = ""):
        for name, ok in other.checks:
            self.checks.append((f"{prefix}{name}", ok))
        for k, v in other.indices.items():
            self.indices[f"{prefix}{k}"] = v
        self.notes.extend(other.notes)
        self.skipped = self.skipped or other.skipped

    @property
    def passed(self) -> bool:
        if self.skipped:
            return all(ok for _, ok in self.checks)
        return bool(self.checks) and all(ok for _, ok in self.checks)

    @property
    def failed_checks(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]

    def to_record(self, with_matrices: bool = False) -> dict:
        record = {
            "instance_id": self.instance_id,
            "passed": self.passed,
            "skipped": self.skipped,
            "checks": [{"name": n, "ok": ok} for n, ok in self.checks],
            "indices": dict(self.indices),
            "notes": list(self.notes),
        }
        if self.witness is not None:
            record["witness"] = self.witness.to_record()
        if with_matrices:
            record["matrices"] = {
                name: {"dim": m.dim, "scalar": str(m.kind), "entries": m.entries_as_strings()}
                for name, m in self.matrices.items()
            }
        return record


def summary_frame(reports: list[VerificationReport]) -> pd.DataFrame:
    """trial 단위 요약 테이블 (시간 정보 제외)"""
    rows = []
    for trial, rep in enumerate(reports):
        rows.append({
            "trial": trial,
            "instance_id": rep.instance_id,
            "passed": rep.passed,
            "skipped": rep.skipped,
            "n_checks": len(rep.checks),
            "failed": ",".join(rep.failed_checks),
            "indices": ",".join(f"{k}={v}" for k, v in sorted(rep.indices.items())),
        })
    return pd.DataFrame(rows, columns=["trial", "instance_id", "passed", "n_checks", "failed", "indices"])


def aggregate(reports: list[VerificationReport], header: dict) -> dict:
    """집계: pass/fail 개수, 관측된 index 분포, 실패 trial 의 행렬 전체"""
    df = summary_frame(reports)
    failures = [r for r in reports if not r.passed]
    index_counts: dict[str, dict[int, int]] = {}
    for rep in reports:
        for k, v in rep.indices.items():
            index_counts.setdefault(k, {})
            index_counts[k][v] = index_counts[k].get(v, 0) + 1
    check_failures = (
        pd.Series([name for r in failures for name in r.failed_checks], dtype=object)
        .value_counts().sort_index()
    )
    notes = sorted({n for r in reports for n in r.notes})
    return {
        **header,
        "trials_run": int(len(df)),
        "passed": int(df["passed"].sum()) if len(df) else 0,
        "failed": len(failures),
        "skipped": sum(1 for r in reports if r.skipped),
        "failed_checks": {str(k): int(v) for k, v in check_failures.items()},
        "indices_observed": {
            k: {int(i): int(c) for i, c in sorted(v.items())} for k, v in sorted(index_counts.items())
        },
        "notes": notes,
        "counterexamples": [r.to_record(with_matrices=True) for r in failures],
    }


def render(agg: dict, reports: list[VerificationReport], fmt: str = "text") -> str:
    if fmt == "structured":
        return yaml.safe_dump(agg, sort_keys=False, allow_unicode=True)
    lines = [f"{k}: {agg[k]}" for k in agg if k not in ("counterexamples", "indices_observed", "notes")]
    for k, counts in agg["indices_observed"].items():
        lines.append(f"index[{k}]: " + ", ".join(f"{i}×{c}" for i, c in counts.items()))
    for note in agg["notes"]:
        lines.append(f"note: {note}")
    lines.append("")
    lines.append(summary_frame(reports).to_string(index=False))
    if agg["counterexamples"]:
        lines.append("")
        lines.append("counterexamples:")
        lines.append(yaml.safe_dump(agg["counterexamples"], sort_keys=False, allow_unicode=True))
    return "\n".join(lines) + "\n"
