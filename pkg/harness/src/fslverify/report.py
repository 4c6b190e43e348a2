"""Report records for bundle verification runs.

All engine results are numerical and non-rigorous; every record says so
and carries the hash of the bundle it came from plus the engine version,
so a report is reproducible given the same inputs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Optional


@dataclass
class LinkRecord:
    name: str
    bundle_sha256: str
    is_hyperbolic: Optional[bool] = None
    volume: Optional[float] = None
    expected: Optional[float] = None
    abs_error: Optional[float] = None
    isometry_matches: list = field(default_factory=list)
    isometry_nonmatches: list = field(default_factory=list)
    status: str = "pending"   # ok | failed | skipped
    note: str = ""
    rigor: str = "numerical, non-rigorous"


@dataclass
class VerificationReport:
    engine: str
    records: list = field(default_factory=list)
    summary_pass: bool = False

    def finalize(self) -> "VerificationReport":
        self.summary_pass = all(r.status == "ok" for r in self.records)
        return self

    def to_json(self) -> str:
        return json.dumps(
            {
                "engine": self.engine,
                "summary_pass": self.summary_pass,
                "records": [asdict(r) for r in self.records],
            },
            indent=2,
        ) + "\n"

    def to_text(self) -> str:
        lines = [f"engine: {self.engine}"]
        for r in self.records:
            vol = "-" if r.volume is None else f"{r.volume:.9f}"
            exp = "-" if r.expected is None else f"{r.expected:.9f}"
            err = "-" if r.abs_error is None else f"{r.abs_error:.3e}"
            hyp = {True: "hyperbolic", False: "NOT hyperbolic",
                   None: "?"}[r.is_hyperbolic]
            matches = ",".join(r.isometry_matches) or "-"
            lines.append(
                f"{r.status.upper():7s} {r.name:20s} {hyp:14s} "
                f"vol={vol} expected={exp} err={err} matches={matches} "
                f"[{r.rigor}]" + (f" {r.note}" if r.note else "")
            )
        lines.append(f"summary: {'PASS' if self.summary_pass else 'FAIL'}")
        return "\n".join(lines) + "\n"


def bundle_hash(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()
