"""Command-line interface.

Exit codes: 0 ok, 1 a checked property is violated, 2 input error,
3 undetermined because a budget ran out.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import metadata
from pathlib import Path

from . import braidmono, factorizations, fibrations, fukaya, lifting
from .factorizations import Factorization, Move, MovePath
from .groups import ResourceLimitError, braid_equal, parse_braid
from .io import Report, canonical_json, read_input, verify_corpus, write_corpus


class InputError(ValueError):
    """Malformed input; reported with exit code 2."""


class Runner:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.inputs: dict[str, str] = {}

    def load(self, path: str):
        try:
            obj, h, source = read_input(path)
        except (OSError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        self.inputs[source] = h
        return obj

    def provenance(self) -> dict:
        try:
            version = metadata.version("artifact")
        except metadata.PackageNotFoundError:
            version = "unknown"
        a = self.args
        return {
            "inputs": dict(sorted(self.inputs.items())),
            "version": version,
            "budgets": {"depth": a.budget_depth, "states": a.budget_states,
                        "steps": a.budget_steps, "polygon_cap": a.polygon_cap},
            "seed": a.seed,
        }


def _matrix_text(m) -> list[str]:
    return ["  [" + " ".join(f"{x:>3}" for x in row) + " ]" for row in m]


# ---------------------------------------------------------------------------
# Handlers


def cmd_braid_eq(r: Runner) -> Report:
    a = r.args
    try:
        u, v = parse_braid(a.left, a.strands), parse_braid(a.right, a.strands)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    eq = braid_equal(u, v)
    return Report("ok" if eq else "violated", {"equal": eq},
                  text=[f"{'equal' if eq else 'not equal'} in B_{a.strands}"])


def _factorization(r: Runner, path: str) -> Factorization:
    try:
        return Factorization.from_json(r.load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_fact_verify(r: Runner) -> Report:
    f = _factorization(r, r.args.file)
    ok = factorizations.verify_product(f)
    return Report("ok" if ok else "violated",
                  {"factors": len(f.factors), "product_matches_target": ok,
                   "exponent_sum": f.exponent_sum() if f.context.kind == "braid" else None},
                  text=[f"{len(f.factors)} factors in {f.context}",
                        "product equals the target" if ok else "product differs from the target"])


def cmd_fact_move(r: Runner) -> Report:
    a = r.args
    f = _factorization(r, a.file)
    ctx = f.context
    try:
        if a.hurwitz is not None:
            move = Move("hurwitz", a.hurwitz, -1 if a.inverse else 1)
        elif a.conjugate is not None:
            move = Move("conjugate", element=ctx.parse(a.conjugate))
        elif a.insert is not None:
            move = Move("insert", int(a.insert[0]), element=ctx.parse(a.insert[1]))
        else:
            move = Move("delete", a.delete)
        g = move.apply(f)
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from exc
    ok = factorizations.verify_product(g)
    return Report("ok" if ok else "violated", {"result": g.to_json(), "move": move.to_json(ctx)},
                  text=[canonical_json(g.to_json()).rstrip()])


def cmd_fact_search(r: Runner) -> Report:
    a = r.args
    f1, f2 = _factorization(r, a.source), _factorization(r, a.target)
    try:
        res = factorizations.orbit_search(f1, f2, a.budget_depth, a.budget_states,
                                          conjugate=a.conjugate, delete=a.delete)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"found": res.found, "visited": res.visited, "depth": res.depth_reached,
               "reason": res.reason,
               "path": res.path.to_json(f1.context) if res.path else None}
    if res.found:
        status = "ok"
    elif res.reason.startswith("orbit exhausted"):
        status = "violated"
    else:
        status = "undetermined"
    return Report(status, payload, text=[f"{res.status}: {res.reason} ({res.visited} states)"])


def cmd_fact_replay(r: Runner) -> Report:
    a = r.args
    f = _factorization(r, a.source)
    cert = r.load(a.path)
    try:
        moves = cert["moves"] if isinstance(cert, dict) else cert
        path = MovePath.from_json(moves, f.context)
        claimed = Factorization.from_json(cert["result"]) if isinstance(cert, dict) and "result" in cert else None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    try:
        g = factorizations.replay(f, path)
    except (ValueError, IndexError) as exc:
        return Report("violated", {"replayed": False, "reason": str(exc)}, text=[f"replay failed: {exc}"])
    matches = claimed is None or factorizations.factorwise_equal(g, claimed)
    ok = matches and factorizations.verify_product(g)
    return Report("ok" if ok else "violated",
                  {"replayed": True, "moves": len(path.moves), "matches_claim": matches,
                   "product_matches_target": factorizations.verify_product(g)},
                  text=[f"{len(path.moves)} moves replayed",
                        "result matches the claim" if matches else "result differs from the claim"])


def cmd_invariants(r: Runner) -> Report:
    try:
        spec = fibrations.FibrationSpec.from_json(r.load(r.args.file))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    try:
        rep = fibrations.fibration_invariants(spec, hyperelliptic=r.args.hyperelliptic or None)
    except fibrations.NonIntegralHodgeDegree as exc:
        return Report("violated", {"chi": fibrations.euler_characteristic(spec), "error": str(exc)},
                      text=[str(exc)])
    except fibrations.UnsupportedWordClass as exc:
        raise InputError(str(exc)) from exc
    lines = [f"chi = {rep.chi}", f"sigma = {rep.sigma}", f"b1 = {rep.b1}", f"b2 = {rep.b2}",
             f"c1^2 = {rep.c1_squared}", f"c2 = {rep.c2}"] + list(rep.notes)
    return Report("ok", rep.to_json(), text=lines)


def cmd_hyperelliptic(r: Runner) -> Report:
    a = r.args
    try:
        res = fibrations.hyperelliptic_signature(a.genus, a.delta0, a.delta_h or ())
    except fibrations.NonIntegralHodgeDegree as exc:
        return Report("violated", {"error": str(exc)}, text=[str(exc)])
    return Report("ok", {"sigma": res.sigma, "hodge_degree": str(res.hodge_degree)},
                  text=[f"sigma = {res.sigma}", f"Hodge degree = {res.hodge_degree}"])


def cmd_genus3(r: Runner) -> Report:
    rep = fibrations.genus3_nonholomorphic(r.args.chi, r.args.sigma)
    return Report("ok", {"nonholomorphic": rep.nonholomorphic, "condition_i": rep.condition_i,
                         "condition_ii": rep.condition_ii, "delta": rep.delta,
                         "pairing": str(rep.pairing), "reasons": list(rep.reasons)},
                  text=[f"non-holomorphic: {rep.nonholomorphic}"] + list(rep.reasons))


def cmd_schedule(r: Runner) -> Report:
    a = r.args
    try:
        parameter = Fraction(a.parameter)
        res = fibrations.donaldson_schedule(a.kind, parameter, a.n, a.steps, Fraction(a.beta0))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"kind": a.kind, "parameter": a.parameter, "n": a.n, "steps": a.steps,
               "first_failure": res.first_failure, "first_violation": res.first_violation,
               "violations": res.violations, "survived": res.survived}
    verdict = "survives" if res.survived else f"fails from step {res.first_failure} on"
    return Report("ok", payload, text=[f"{a.kind} schedule ({a.parameter}): {verdict}",
                                       f"{res.violations} violating steps"])


def _curve(r: Runner, path: str) -> braidmono.BraidedCurveSpec:
    try:
        return braidmono.BraidedCurveSpec.from_json(r.load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _branch(r: Runner, path: str) -> braidmono.BranchData:
    try:
        return braidmono.BranchData.from_json(r.load(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_curve_verify(r: Runner) -> Report:
    spec = _curve(r, r.args.file)
    rep = braidmono.verify_braided_curve(spec)
    payload = {"valid": rep.valid, "checksum": rep.checksum, "expected_checksum": rep.expected_checksum,
               "counts": rep.counts, "messages": list(rep.messages)}
    if rep.product_ok is None and rep.checksum_ok:
        status = "undetermined"
    else:
        status = "ok" if rep.valid else "violated"
    return Report(status, payload, text=[f"degree {spec.degree}, checksum {rep.checksum}/{rep.expected_checksum}"]
                  + list(rep.messages))


def cmd_curve_zvk(r: Runner) -> Report:
    a = r.args
    spec = _curve(r, a.file)
    branch = _branch(r, a.theta) if a.theta else None
    try:
        p = braidmono.zvk_presentation(spec, stabilized=a.stabilized, branch=branch)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cert = braidmono.group_certificate(p, max_index=a.max_index)
    payload = {"presentation": p.to_json(), "abelianization": cert.abelianization.to_json(),
               "simplified": cert.simplified.to_json(), "order": cert.order,
               "subgroup_counts": list(cert.subgroup_counts)}
    return Report("ok", payload, text=[str(p), f"abelianization: {cert.abelianization}",
                                       f"simplified: {cert.simplified}",
                                       f"order: {cert.order if cert.order is not None else 'unknown'}"])


def cmd_curve_thetas(r: Runner) -> Report:
    a = r.args
    spec = _curve(r, a.file)
    res = braidmono.enumerate_thetas(spec, a.sheets, bound=a.budget_states)
    payload = {"classes": [b.to_json() for b in res.classes], "complete": res.complete,
               "visited": res.visited}
    return Report("ok" if res.complete else "undetermined", payload,
                  text=[res.diagnostic] + [str(b) for b in res.classes])


def cmd_moishezon(r: Runner) -> Report:
    try:
        m = braidmono.moishezon_family(r.args.p, r.args.k)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"degree": m.degree, "cusps": m.cusps, "nodes": m.nodes,
               "canonical_relation": [str(x) for x in m.canonical_relation], "proportional": m.proportional}
    return Report("ok", payload, text=[f"degree {m.degree}, {m.cusps} cusps, {m.nodes} nodes",
                                       f"K proportional to omega: {m.proportional}"])


def cmd_lift_check(r: Runner) -> Report:
    a = r.args
    branch = _branch(r, a.theta)
    try:
        w = parse_braid(a.braid, branch.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if not lifting.is_liftable(w, branch):
        return Report("violated", {"liftable": False}, text=["braid does not preserve theta"])
    act = lifting.lift_homology_action(w, branch)
    payload = {"liftable": True, "matrix": [list(row) for row in act.matrix],
               "marked_points": str(act.marked_points),
               "transvection": lifting.is_transvection(act.matrix)}
    return Report("ok", payload, text=["liftable; action on H_1:"] + _matrix_text(act.matrix)
                  + [f"marked points: {act.marked_points}"])


def cmd_lift_pencil(r: Runner) -> Report:
    a = r.args
    spec, branch = _curve(r, a.curve), _branch(r, a.theta)
    try:
        rep = lifting.pencil_monodromy(spec, branch)
    except lifting.NotLiftable as exc:
        return Report("violated", {"error": str(exc)}, text=[str(exc)])
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {"genus": rep.genus, "product_is_identity": rep.product_is_identity,
               "singular_factors_trivial": rep.singular_factors_trivial,
               "factorization": rep.factorization.to_json(), "messages": list(rep.messages)}
    return Report("ok" if rep.ok else "violated", payload,
                  text=[f"fiber genus {rep.genus}, {len(rep.factorization.factors)} twists"] + list(rep.messages))


def _arrangement(r: Runner, path: str) -> fukaya.CurveArrangement:
    try:
        arr = fukaya.CurveArrangement.from_json(r.load(path))
        fukaya.validate_arrangement(arr, raise_on_error=True)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    return arr


def cmd_fukaya_compute(r: Runner) -> Report:
    arr = _arrangement(r, r.args.file)
    try:
        data = fukaya.compute_category(arr, max_n=r.args.max_n, cap=r.args.polygon_cap)
    except fukaya.ImmersedPolygonUnsupported as exc:
        raise InputError(str(exc)) from exc
    lines = [f"{arr.r} objects"]
    for (i, j), gens in sorted(data.homs.items()):
        if i < j:
            lines.append(f"Hom(L{i},L{j}) = <{', '.join(gens)}>")
    for n, table in sorted(data.mu.items()):
        for k, v in sorted(table.items()):
            if not any(x.startswith("id") for x in k):
                lines.append(f"mu{n}({', '.join(k)}) = {' + '.join(sorted(v))}")
    return Report("ok", data.to_json(), text=lines)


def cmd_fukaya_verify(r: Runner) -> Report:
    arr = _arrangement(r, r.args.file)
    try:
        data = fukaya.compute_category(arr, cap=r.args.polygon_cap)
    except fukaya.ImmersedPolygonUnsupported as exc:
        raise InputError(str(exc)) from exc
    res = fukaya.verify_a_infinity(data, r.args.up_to)
    payload = {"holds": res.holds, "checked": res.checked,
               "failure": list(res.failure) if res.failure else None, "defect": sorted(res.defect)}
    text = [f"A-infinity relations hold up to length {r.args.up_to} ({res.checked} tuples)"] if res.holds \
        else [f"relation fails on ({', '.join(res.failure)})"]
    return Report("ok" if res.holds else "violated", payload, text=text)


def cmd_examples_install(r: Runner) -> Report:
    target = Path(r.args.directory)
    manifest = write_corpus(target)
    bad = verify_corpus(target)
    return Report("ok" if not bad else "violated", {"directory": str(target), "manifest": manifest},
                  text=[f"wrote {len(manifest['files'])} files to {target}"])


# ---------------------------------------------------------------------------
# Parser


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("budgets must be positive")
    return v


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies use SUPPRESS so they never overwrite flags given earlier
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="print the report as JSON")
    p.add_argument("--budget-depth", type=_positive, default=d(factorizations.DEFAULT_DEPTH))
    p.add_argument("--budget-states", type=_positive, default=d(factorizations.DEFAULT_STATES))
    p.add_argument("--budget-steps", type=_positive, default=d(braidmono.DEFAULT_TIETZE_STEPS))
    p.add_argument("--polygon-cap", type=_positive, default=d(fukaya.DEFAULT_POLYGON_CAP))
    p.add_argument("--seed", type=int, default=d(0), help="recorded for property-test replay")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="monodromy", parents=[_global_flags(suppress=False)],
                                     description="Monodromy invariants of pencils and branched covers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="action", required=True)

    def leaf(subs, name, fn, help_text=None):
        p = subs.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=fn)
        return p

    braid = group("braid", "braid words")
    p = leaf(braid, "eq", cmd_braid_eq, "decide equality of two braid words")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--strands", type=int, required=True)

    fact = group("factorization", "ordered factorizations")
    p = leaf(fact, "verify", cmd_fact_verify)
    p.add_argument("file")
    p = leaf(fact, "move", cmd_fact_move)
    p.add_argument("file")
    m = p.add_mutually_exclusive_group(required=True)
    m.add_argument("--hurwitz", type=int, metavar="I")
    m.add_argument("--conjugate", metavar="WORD")
    m.add_argument("--insert", nargs=2, metavar=("I", "WORD"))
    m.add_argument("--delete", type=int, metavar="I")
    p.add_argument("--inverse", action="store_true", default=False)
    p.set_defaults(hurwitz=None, conjugate=None, insert=None, delete=None)
    p = leaf(fact, "search", cmd_fact_search)
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--conjugate", action="store_true", default=False)
    p.add_argument("--delete", action="store_true", default=False)
    p = leaf(fact, "replay", cmd_fact_replay)
    p.add_argument("path")
    p.add_argument("source")

    p = leaf(sub, "invariants", cmd_invariants, "invariants of a fibration or pencil")
    p.add_argument("file")
    p.add_argument("--hyperelliptic", action="store_true", default=False)

    p = leaf(sub, "hyperelliptic", cmd_hyperelliptic, "signature of a hyperelliptic word")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--delta0", type=int, required=True)
    p.add_argument("--delta-h", type=int, nargs="*", default=[])

    p = leaf(sub, "genus3", cmd_genus3, "non-holomorphicity test in genus 3")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)

    p = leaf(sub, "schedule", cmd_schedule, "iterate a globalization schedule")
    p.add_argument("--kind", choices=["poly", "log"], required=True)
    p.add_argument("--parameter", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--beta0", default="1/4")

    curve = group("curve", "braided curves")
    p = leaf(curve, "verify", cmd_curve_verify)
    p.add_argument("file")
    p = leaf(curve, "zvk", cmd_curve_zvk)
    p.add_argument("file")
    p.add_argument("--theta")
    p.add_argument("--stabilized", action="store_true", default=False)
    p.add_argument("--max-index", type=int, default=braidmono.DEFAULT_QUOTIENT_INDEX)
    p.set_defaults(theta=None)
    p = leaf(curve, "thetas", cmd_curve_thetas)
    p.add_argument("file")
    p.add_argument("--sheets", type=int, required=True)

    p = leaf(sub, "moishezon", cmd_moishezon, "numerics of the Moishezon family")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=0)

    lift = group("lift", "lifting to the branched cover")
    p = leaf(lift, "check", cmd_lift_check)
    p.add_argument("--braid", required=True)
    p.add_argument("--theta", required=True)
    p = leaf(lift, "pencil", cmd_lift_pencil)
    p.add_argument("--curve", required=True)
    p.add_argument("--theta", required=True)

    fk = group("fukaya", "directed Fukaya categories")
    p = leaf(fk, "compute", cmd_fukaya_compute)
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=None)
    p = leaf(fk, "verify", cmd_fukaya_verify)
    p.add_argument("file")
    p.add_argument("--up-to", type=int, default=4)

    ex = group("examples", "bundled example corpus")
    p = leaf(ex, "install", cmd_examples_install)
    p.add_argument("directory", nargs="?", default="monodromy-examples")
    return parser


def run(argv=None) -> tuple[int, Report, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    runner = Runner(args)
    try:
        report = args.handler(runner)
    except InputError as exc:
        report = Report("error", {"error": str(exc)}, text=[f"error: {exc}"])
    except ResourceLimitError as exc:
        report = Report("undetermined", {"reason": str(exc)}, text=[f"undetermined: {exc}"])
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        # violations are returned by the handlers, so anything left is bad input
        report = Report("error", {"error": str(exc)}, text=[f"error: {exc}"])
    report.provenance = runner.provenance()
    return report.exit_code, report, args


def main(argv=None) -> int:
    code, report, args = run(argv)
    if args.json:
        sys.stdout.write(canonical_json(report.to_json()))
    else:
        stream = sys.stderr if report.status == "error" else sys.stdout
        for line in report.text:
            print(line, file=stream)
        if report.status not in ("ok", "error"):
            print(f"status: {report.status}", file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
