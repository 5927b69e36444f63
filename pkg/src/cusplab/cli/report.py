"""Versioned report records and their serialisations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

SCHEMA = "cusplab.report/1"
STATUSES = ("verified", "refuted", "skipped")


@dataclass
class ClaimRecord:
    claim_id: str
    suite: str
    statement: str
    status: str
    witness: dict
    wall_time: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {"claim_id": self.claim_id, "suite": self.suite, "statement": self.statement,
               "status": self.status, "witness": self.witness}
        if timings and self.wall_time is not None:
            out["wall_time_s"] = round(self.wall_time, 3)
        return out


@dataclass
class Report:
    config: dict
    records: list[ClaimRecord] = field(default_factory=list)
    timings: bool = False
    rows: list[dict] = field(default_factory=list)  # per-representation data for figures

    @property
    def summary(self) -> dict[str, int]:
        return {s: sum(r.status == s for r in self.records) for s in STATUSES}

    @property
    def exit_code(self) -> int:
        return 1 if self.summary["refuted"] else 0

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "config": self.config,
                "claims": [r.to_json(self.timings) for r in self.records],
                "summary": self.summary}

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            cols = ["claim_id", "suite", "status", "statement"] + (["wall_time_s"] if self.timings else [])
            w.writerow(cols)
            for r in self.records:
                row = [r.claim_id, r.suite, r.status, r.statement]
                if self.timings:
                    row.append(f"{r.wall_time:.3f}")
                w.writerow(row)
            return buf.getvalue()
        if fmt == "text":
            lines = []
            for r in self.records:
                t = f"  ({r.wall_time:.1f}s)" if self.timings else ""
                lines.append(f"{r.claim_id:<3} {r.status:<8} [{r.suite}] {r.statement}{t}")
                reason = r.witness.get("reason")
                if reason:
                    lines.append(f"    {reason}")
            s = self.summary
            lines.append(f"{s['verified']} verified, {s['refuted']} refuted, {s['skipped']} skipped")
            return "\n".join(lines) + "\n"
        raise ValueError(f"unknown format {fmt!r}")
