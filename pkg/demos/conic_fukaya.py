"""The directed Fukaya category of the conic pencil, computed from three
circles on a four-punctured sphere."""

from __future__ import annotations

import argparse

from monodromy.fukaya import (
    compute_category,
    conic_pencil_example,
    validate_arrangement,
    verify_a_infinity,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--up-to", type=int, default=4, help="longest A-infinity relation to check")
    args = parser.parse_args(argv)

    arr = conic_pencil_example()
    rep = validate_arrangement(arr)
    print(f"V={rep.V} E={rep.E} F={rep.F}, punctured faces: {sum(1 for p in rep.punctures if p)}")

    data = compute_category(arr)
    for (i, j), gens in sorted(data.homs.items()):
        if i < j:
            print(f"Hom(L{i}, L{j}) = {gens}")
    for inputs, out in sorted(data.mu[2].items()):
        if not any(x.startswith("id") for x in inputs):
            print(f"mu2{inputs} = {sorted(out)}")

    res = verify_a_infinity(data, args.up_to)
    print(f"A-infinity relations up to length {args.up_to}: {res.holds} ({res.checked} tuples)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
