"""Run every congruence target and identity and write line-delimited JSON reports.

    python scripts/full_sweep.py --hi 499 --max-n 100 --jobs 4 --outdir results
"""
import argparse
import json
import time
from collections import Counter
from pathlib import Path

from azlab.checks import CongruenceTarget, IdentityName, identity_sweep, sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lo", type=int, default=5)
    ap.add_argument("--hi", type=int, default=499)
    ap.add_argument("--max-n", type=int, default=100)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    checks = sweep(list(CongruenceTarget), args.lo, args.hi, jobs=args.jobs)
    with open(args.outdir / "congruences.jsonl", "w") as fh:
        for c in checks:
            fh.write(json.dumps(c.to_record()) + "\n")
    fails = Counter(c.target.value for c in checks if not c.holds)
    print(f"{len(checks)} congruence checks in {time.perf_counter() - t0:.1f}s")
    for target in CongruenceTarget:
        n = sum(1 for c in checks if c.target is target)
        print(f"  {target.value:<13} {n - fails[target.value]:>4}/{n} hold")

    t0 = time.perf_counter()
    results = list(identity_sweep(list(IdentityName), args.max_n))
    with open(args.outdir / "identities.jsonl", "w") as fh:
        for r in results:
            fh.write(json.dumps(r.to_record()) + "\n")
    bad = sum(not r.holds for r in results)
    print(f"{len(results)} identity instances, {bad} failures, {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
