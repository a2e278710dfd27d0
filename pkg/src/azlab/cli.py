"""Command-line front end.

Exit codes: 0 every check passed, 1 at least one check failed, 2 usage,
configuration or I/O error.  Reports go to stdout (or ``--out``); the run
summary goes to stderr so reports stay byte-identical across runs.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import IO, Any, Dict, List, Optional, Sequence, Tuple

from . import checks, series
from .checks import CongruenceTarget, IdentityName
from .modular import prime_range
from .sequences import FORMULAS, g_table, gamma_table

log = logging.getLogger("azlab")

MAX_PRIME = 10**4
MAX_N = 2000


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    targets: List[CongruenceTarget] = field(default_factory=list)
    names: List[IdentityName] = field(default_factory=list)
    primes: Tuple[int, int] = (5, 100)
    min_n: int = 0
    max_n: int = 50
    kind: str = "gamma"
    formula: str = "def"
    terms: int = 120
    digits: int = 60
    fmt: str = "text"
    out: Optional[str] = None
    jobs: int = 1
    perturb_gamma: Optional[Tuple[int, int]] = None


@dataclass
class RunSummary:
    total: int = 0
    passes: int = 0
    failures: int = 0
    first_failure: Optional[Dict[str, Any]] = None
    wall_time: float = 0.0

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def record(self, rec: Dict[str, Any], ok: bool) -> None:
        self.total += 1
        if ok:
            self.passes += 1
        else:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = rec

    def describe(self) -> str:
        s = f"{self.total} checks, {self.passes} passed, {self.failures} failed in {self.wall_time:.2f}s"
        if self.first_failure is not None:
            s += f"; first failure: {json.dumps(self.first_failure)}"
        return s


# ---------------------------------------------------------------------------
# argument parsing


def parse_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split("..", 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _enum_list(enum_cls):
    def parse(text: str):
        if text.strip().lower() == "all":
            return list(enum_cls)
        out = []
        for tok in filter(None, (t.strip().lower() for t in text.split(","))):
            try:
                out.append(enum_cls(tok))
            except ValueError:
                choices = ", ".join(e.value for e in enum_cls)
                raise argparse.ArgumentTypeError(f"unknown name {tok!r}; choose from: {choices}")
        return out

    return parse


def parse_perturbation(text: str) -> Tuple[int, int]:
    try:
        k, delta = (int(x) for x in text.split(":", 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected index:delta, got {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError("index must be >= 0")
    return k, delta


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="azlab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--format", dest="fmt", choices=["text", "json", "csv"], default="text")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("seq", help="print gamma_n or g_n")
    p.add_argument("--kind", choices=["gamma", "g"], default="gamma")
    p.add_argument("--max", dest="max_n", type=int, default=10)
    p.add_argument("--formula", choices=sorted(FORMULAS), default="def")
    common(p)

    p = sub.add_parser("verify", help="check congruence targets over a prime range")
    p.add_argument("--targets", type=_enum_list(CongruenceTarget), default=list(CongruenceTarget))
    p.add_argument("--primes", type=parse_range, default=(5, 100))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--perturb-gamma", type=parse_perturbation, metavar="K:DELTA",
                   help="add DELTA to gamma_K before checking (failure injection)")
    common(p)

    p = sub.add_parser("identity", help="check exact identities for n in a range")
    p.add_argument("--names", type=_enum_list(IdentityName), default=list(IdentityName))
    p.add_argument("--max-n", type=int, default=50)
    p.add_argument("--min-n", type=int, default=0)
    common(p)

    p = sub.add_parser("series", help="partial sum of the 1/pi series")
    p.add_argument("--terms", type=int, default=120)
    p.add_argument("--digits", type=int, default=60)
    common(p)

    p = sub.add_parser("convergence-report", help="error table for N = 10, 20, ..., terms")
    p.add_argument("--terms", type=int, default=200)
    p.add_argument("--digits", type=int, default=250)
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.subcommand, fmt=ns.fmt, out=ns.out)
    if ns.subcommand == "seq":
        cfg.kind, cfg.max_n, cfg.formula = ns.kind, ns.max_n, ns.formula
    elif ns.subcommand == "verify":
        cfg.targets, cfg.primes, cfg.jobs = ns.targets, ns.primes, ns.jobs
        cfg.perturb_gamma = ns.perturb_gamma
    elif ns.subcommand == "identity":
        cfg.names, cfg.min_n, cfg.max_n = ns.names, ns.min_n, ns.max_n
    else:
        cfg.terms, cfg.digits = ns.terms, ns.digits
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    if cfg.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if cfg.subcommand == "verify":
        lo, hi = cfg.primes
        if hi > MAX_PRIME:
            raise UsageError(f"prime range is limited to p <= {MAX_PRIME}")
        if not cfg.targets:
            raise UsageError("no targets selected")
        if not prime_range(max(lo, 5), hi):
            raise UsageError(f"no primes >= 5 in {lo}..{hi}")
    elif cfg.subcommand in ("seq", "identity"):
        if not 0 <= cfg.min_n <= cfg.max_n <= MAX_N:
            raise UsageError(f"need 0 <= n range <= {MAX_N}")
        if cfg.subcommand == "identity" and not cfg.names:
            raise UsageError("no identities selected")
    else:
        if cfg.terms < 1:
            raise UsageError("--terms must be >= 1")
        if not series.MIN_DIGITS <= cfg.digits <= series.MAX_DIGITS:
            raise UsageError(f"--digits must be in [{series.MIN_DIGITS}, {series.MAX_DIGITS}]")
        if cfg.subcommand == "convergence-report" and cfg.terms < 20:
            raise UsageError("convergence-report needs --terms >= 20")


# ---------------------------------------------------------------------------
# execution


class _Writer:
    def __init__(self, stream: IO[str], fmt: str):
        self.stream, self.fmt = stream, fmt
        self._csv = None

    def write(self, rec: Dict[str, Any], text: str) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(rec) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.DictWriter(self.stream, fieldnames=list(rec), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow({k: "" if v is None else v for k, v in rec.items()})
        else:
            self.stream.write(text + "\n")


def _run_seq(cfg, out, summary):
    if cfg.kind == "g":
        values = g_table(cfg.max_n).values
    else:
        values = gamma_table(cfg.max_n, cfg.formula).values
    for n, v in enumerate(values):
        out.write({"kind": cfg.kind, "n": n, "value": str(v)}, str(v))


def _run_verify(cfg, out, summary):
    lo, hi = cfg.primes
    tables = checks.get_tables(prime_range(max(lo, 5), hi)[-1])
    if cfg.perturb_gamma is not None:
        tables = tables.with_gamma_offset(*cfg.perturb_gamma)
    for c in checks.sweep(cfg.targets, lo, hi, tables=tables, jobs=cfg.jobs):
        rec = c.to_record()
        status = "ok" if c.holds else "FAIL"
        tag = " [conjecture]" if c.conjecture else ""
        where = f" first failing index {c.first_failing_index}" if c.first_failing_index is not None else ""
        text = f"{c.target.value:<13} p={c.p:<5} mod p^{c.m}: lhs={c.lhs.value} rhs={c.rhs.value} {status}{tag}{where}"
        out.write(rec, text)
        summary.record(rec, c.holds)


def _run_identity(cfg, out, summary):
    for r in checks.identity_sweep(cfg.names, cfg.max_n, cfg.min_n):
        rec = r.to_record()
        idx = "" if r.i is None else f" i={r.i}"
        out.write(rec, f"{r.name.value:<12} n={r.n}{idx}: {'ok' if r.holds else 'FAIL'} (lhs={r.lhs}, rhs={r.rhs})")
        summary.record(rec, r.holds)


def _run_series(cfg, out, summary):
    r = series.chan_verrill_partial(cfg.terms, cfg.digits)
    out.write(r.to_record(), f"N={r.terms_used} partial={r.partial_sum}\n"
              f"target={r.target}\nerror={r.abs_error} ({float(r.abs_error):.3e})")


def _run_convergence(cfg, out, summary):
    grid = list(range(10, cfg.terms + 1, 10))
    rows = series.convergence_report(cfg.digits, grid)
    prev = None
    for r in rows:
        rec = r.to_record()
        ok = prev is None or r.abs_error.scaled < prev
        prev = r.abs_error.scaled
        rec["decreasing"] = ok
        out.write(rec, f"N={r.terms_used:<4} error={float(r.abs_error):.3e}{'' if ok else '  (not decreasing)'}")
        summary.record(rec, ok)


_HANDLERS = {
    "seq": _run_seq,
    "verify": _run_verify,
    "identity": _run_identity,
    "series": _run_series,
    "convergence-report": _run_convergence,
}


def run(cfg: RunConfig, stream: Optional[IO[str]] = None) -> RunSummary:
    """Execute ``cfg``, writing the report to ``stream`` (or cfg.out / stdout)."""
    validate(cfg)
    summary = RunSummary()
    start = time.perf_counter()
    if stream is None and cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            _HANDLERS[cfg.subcommand](cfg, _Writer(fh, cfg.fmt), summary)
    else:
        _HANDLERS[cfg.subcommand](cfg, _Writer(stream or sys.stdout, cfg.fmt), summary)
    summary.wall_time = time.perf_counter() - start
    return summary


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(ns)
        summary = run(cfg)
    except UsageError as exc:
        print(f"azlab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"azlab: I/O error: {exc}", file=sys.stderr)
        return 2
    if summary.total:
        print(summary.describe(), file=sys.stderr)
    return summary.exit_code


if __name__ == "__main__":
    sys.exit(main())
