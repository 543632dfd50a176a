"""Numerical invariants of Lefschetz fibrations read off their monodromy words."""

from __future__ import annotations

import argparse
from fractions import Fraction

from monodromy.fibrations import (
    FibrationSpec,
    NonIntegralHodgeDegree,
    donaldson_schedule,
    fibration_invariants,
    genus3_nonholomorphic,
    hyperelliptic_signature,
    separating_word_report,
)
from monodromy.io import read_input


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=10_000, help="length of the logarithmic schedule run")
    args = parser.parse_args(argv)

    for name in ("e1.json", "cubic_pencil.json", "genus2_fibration.json"):
        r = fibration_invariants(FibrationSpec.from_json(read_input(name)[0]))
        print(f"{name:<24} chi={r.chi:>3} sigma={r.sigma:>4} b1={r.b1} b2={r.b2}")

    for delta0 in (26, 27, 28):
        try:
            print(f"genus 3, delta0={delta0}: sigma", hyperelliptic_signature(3, delta0).sigma)
        except NonIntegralHodgeDegree as exc:
            print(f"genus 3, delta0={delta0}: {exc}")

    r = genus3_nonholomorphic(66, -44)
    print("chi=66, sigma=-44 non-holomorphic:", r.nonholomorphic, "|", "; ".join(r.reasons))

    r = separating_word_report(4, 10)
    print(f"separating twists only, g=4, delta=10: c1^2 = {r.c1_squared}")

    poly = donaldson_schedule("poly", Fraction(2), 2, 200)
    log = donaldson_schedule("log", 4, 2, args.steps)
    print(f"polynomial schedule fails at step {poly.first_failure}; "
          f"logarithmic schedule survives {args.steps} steps: {log.survived}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
