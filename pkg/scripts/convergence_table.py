"""Tabulate the error of the 1/pi series partial sums, per term and on the report grid."""
import argparse
import math

from azlab.sequences import gamma_table
from azlab.series import chan_verrill_partial, monotone_start, target_value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=200)
    ap.add_argument("--digits", type=int, default=250)
    args = ap.parse_args()

    gamma = gamma_table(args.terms).values
    target = target_value(args.digits)
    errs = [chan_verrill_partial(N, args.digits, gamma, target).abs_error for N in range(1, args.terms + 1)]

    print(f"{'N':>5}  log10|error|")
    for N in range(10, args.terms + 1, 10):
        e = errs[N - 1].scaled
        print(f"{N:>5}  {math.log10(e) - args.digits:8.2f}" if e else f"{N:>5}  below 1e-{args.digits}")
    rises = [N for N in range(1, args.terms) if errs[N].scaled >= errs[N - 1].scaled]
    print("error fails to drop after term N =", rises)
    print("strictly decreasing from N0 =", monotone_start(errs))


if __name__ == "__main__":
    main()
