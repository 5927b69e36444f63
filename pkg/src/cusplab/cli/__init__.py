"""``cusplab run``: execute the claim suites and write a report.

Exit codes: 0 all selected claims verified or skipped, 1 some claim refuted,
2 configuration or cache I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from cusplab.cli.cache import ENV_VAR, CacheError, DiskCache
from cusplab.cli.report import ClaimRecord, Report
from cusplab.cli.suites import SUITES, Session, select

SUPPORTED_Q = (2, 3)
RINGS = {"zp2": ["zp2"], "dual": ["dual"], "both": ["zp2", "dual"]}

log = logging.getLogger("cusplab")


@dataclass
class RunConfig:
    q: int = 2
    ring: str = "both"
    suites: list[str] = field(default_factory=lambda: ["all"])
    cache_dir: str | None = None
    workers: int = 1
    fmt: str = "json"
    timings: bool = False

    def validate(self) -> None:
        if self.q not in SUPPORTED_Q:
            raise ValueError(f"q={self.q} is not supported (choose from {SUPPORTED_Q})")
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}")
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")
        select(self.suites)

    def describe(self) -> dict:
        return {"q": self.q, "rings": RINGS[self.ring], "suites": list(self.suites)}


def run(config: RunConfig, cache=None) -> Report:
    config.validate()
    claims = select(config.suites) if config.suites else []
    session = Session(config.q, RINGS[config.ring], cache=cache, workers=config.workers)
    report = Report(config.describe(), timings=config.timings)
    for claim in claims:
        t0 = time.perf_counter()
        ok, witness = claim.check(session)
        status = "skipped" if ok is None else ("verified" if ok else "refuted")
        dt = time.perf_counter() - t0
        log.info("%s %s in %.1fs", claim.claim_id, status, dt)
        report.records.append(ClaimRecord(claim.claim_id, claim.suite, claim.statement, status, witness, dt))
    report.rows = session.rows()
    return report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cusplab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run verification suites")
    r.add_argument("--q", type=int, default=2, help="residue field size (2 or 3)")
    r.add_argument("--ring", default="both", choices=sorted(RINGS),
                   help="zp2 = Z/p^2, dual = F_p[t]/t^2")
    r.add_argument("--suite", action="append", dest="suites",
                   help=f"one of all, {', '.join(SUITES)}; repeatable or comma-separated")
    r.add_argument("--out", help="write the report here instead of stdout")
    r.add_argument("--format", default="json", choices=["json", "csv", "text"], dest="fmt")
    r.add_argument("--cache", help=f"cache directory (default: ${ENV_VAR}, else none)")
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--figures", metavar="DIR", help="render matplotlib figures into DIR")
    r.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identity)")
    r.add_argument("-v", "--verbose", action="store_true")
    return ap


def _suites(raw: list[str] | None) -> list[str]:
    if raw is None:
        return ["all"]
    return [s for item in raw for s in item.split(",") if s.strip()]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    config = RunConfig(q=args.q, ring=args.ring, suites=_suites(args.suites), cache_dir=args.cache,
                       workers=args.workers, fmt=args.fmt, timings=args.timings)
    try:
        config.validate()
        cache = DiskCache.from_env(config.cache_dir)
        report = run(config, cache)
    except ValueError as e:
        print(f"cusplab: configuration error: {e}", file=sys.stderr)
        return 2
    except CacheError as e:
        print(f"cusplab: cache error: {e}", file=sys.stderr)
        return 2

    text = report.dumps(config.fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.figures:
        from cusplab.cli.plotting import render
        for path in render(report.rows, args.figures):
            log.info("figure %s", path)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
