"""Walk through the conic: from its braid monodromy to the double cover it
branches."""

from __future__ import annotations

import argparse

from monodromy.braidmono import (
    BraidedCurveSpec,
    BranchData,
    enumerate_thetas,
    group_certificate,
    presentation_abelianization,
    verify_braided_curve,
    zvk_presentation,
)
from monodromy.groups import parse_braid, sl2z_eval
from monodromy.io import read_input
from monodromy.lifting import lift_homology_action, pencil_monodromy


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--curve", default="conic.json", help="bundled or local braided curve file")
    args = parser.parse_args(argv)

    print("(AB)^6 in SL(2, Z):", sl2z_eval("A B " * 6))

    spec = BraidedCurveSpec.from_json(read_input(args.curve)[0])
    check = verify_braided_curve(spec)
    print(f"degree {spec.degree}, {len(spec.factors)} factors, valid: {check.valid}")

    pres = zvk_presentation(spec)
    print("relators:", [str(r) for r in pres.relators])
    print("H1 of the complement:", presentation_abelianization(pres))
    print("finite quotient certificate order:", group_certificate(pres).order)

    thetas = enumerate_thetas(spec, 2)
    for b in thetas.classes:
        print("compatible branch data:", b.pairs())
    if thetas.classes:
        report = pencil_monodromy(spec, thetas.classes[0])
        print(f"pencil fiber genus {report.genus}, {len(report.factorization)} vanishing cycles")

    # four branch points on two sheets give a torus; half twists lift to Dehn twists
    torus = BranchData.from_pairs(2, [(1, 2)] * 4)
    for w in ("x1", "x2", "x1 x1"):
        act = lift_homology_action(parse_braid(w, 4), torus)
        print(f"lift of {w}: {act.matrix}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
