"""Acceptance gate: twelve criteria, one PASS/FAIL line each.

Run with ``pytest -v tests/test_acceptance.py``; the lines are printed to the
terminal even when output is captured.  Runtime limits are checked against
the best of a few repetitions to keep scheduler noise out of the verdict.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from monodromy.braidmono import (
    BraidedCurveSpec,
    BranchData,
    enumerate_thetas,
    group_certificate,
    moishezon_family,
    presentation_abelianization,
    tietze_simplify,
    verify_braided_curve,
    zvk_presentation,
)
from monodromy.factorizations import (
    ConjugatedPower,
    Context,
    Factorization,
    Move,
    MovePath,
    factorwise_equal,
    replay,
    verify_product,
)
from monodromy.fibrations import (
    FibrationSpec,
    NonIntegralHodgeDegree,
    donaldson_schedule,
    euler_characteristic,
    genus3_nonholomorphic,
    hyperelliptic_signature,
    separating_word_report,
)
from monodromy.fukaya import compute_category, conic_pencil_example, verify_a_infinity
from monodromy.groups import BraidWord, sl2z_eval
from monodromy.io import read_input
from monodromy.lifting import CoverModel, is_liftable, is_symplectic, is_transvection, lift_homology_action


def _report(capsys, number: int, title: str, ok: bool, detail: str = "") -> None:
    with capsys.disabled():
        print(f"\ncriterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else ""))


def _best_time(fn, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _braid_words(d: int, max_len: int):
    letters = [s * i for i in range(1, d) for s in (1, -1)]
    layer = [()]
    yield BraidWord(d)
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in letters if not w or w[-1] != -a]
        for w in layer:
            yield BraidWord(d, w)


def _hurwitz_oracle(ts, w: BraidWord):
    """Hurwitz action on a tuple of transpositions, move by move."""
    ts = list(ts)
    for a in w.letters:
        i = abs(a) - 1
        x, y = ts[i], ts[i + 1]
        if a > 0:
            ts[i], ts[i + 1] = x * y * x, x
        else:
            ts[i], ts[i + 1] = y, y * x * y
    return tuple(ts)


# -- 1 -------------------------------------------------------------------------


def test_criterion_01_elliptic_relation(capsys):
    f = Factorization.from_json(read_input("elliptic_sl2z.json")[0])

    def check():
        return sl2z_eval("A B " * 6).is_identity() and verify_product(f) and len(f) == 12

    ok = check()
    elapsed = _best_time(check, 5)
    ok = ok and elapsed < 1e-3
    _report(capsys, 1, "elliptic relation (AB)^6 = I", ok, f"{elapsed * 1e3:.3f} ms < 1 ms")
    assert ok


# -- 2 -------------------------------------------------------------------------


def test_criterion_02_cubic_pencil(capsys):
    pencil = FibrationSpec.from_json(read_input("cubic_pencil.json")[0])
    e1 = FibrationSpec.from_json(read_input("e1.json")[0])
    values = (euler_characteristic(pencil), euler_characteristic(e1))
    ok = values == (3, 12) and (pencil.base_points, len(pencil.twists)) == (9, 12)
    _report(capsys, 2, "cubic pencil chi = 3, fibration chi = 12", ok, f"got {values}")
    assert ok


# -- 3 -------------------------------------------------------------------------


def test_criterion_03_hyperelliptic_signature(capsys):
    s1 = hyperelliptic_signature(1, 12).sigma
    s2 = hyperelliptic_signature(2, 20).sigma
    # CP1 x CP1 blown up at the 4 * 3 = 12 base points of a (2, 3) pencil
    blowup_chi, blowup_sigma = 4 + 12, 0 - 12
    genus2 = FibrationSpec.from_json(read_input("genus2_fibration.json")[0])
    independent = euler_characteristic(genus2) == blowup_chi and s2 == blowup_sigma

    def sweep():
        bad = []
        for delta0 in range(1, 201):
            chi = 4 - 4 * 3 + delta0
            try:
                hyperelliptic_signature(3, delta0)
                raised = False
            except NonIntegralHodgeDegree:
                raised = True
            if raised != ((chi + 1) % 7 != 0) or raised != (delta0 % 7 != 0):
                bad.append(delta0)
        return bad

    bad = sweep()
    elapsed = _best_time(sweep)
    ok = s1 == -8 and s2 == -12 and independent and not bad and elapsed < 1.0
    _report(capsys, 3, "hyperelliptic signatures and genus-3 integrality sweep", ok,
            f"sigma {s1}, {s2}; sweep mismatches {bad[:5]}; {elapsed:.3f} s < 1 s")
    assert ok


# -- 4 -------------------------------------------------------------------------


def test_criterion_04_genus3_predicate(capsys):
    lo, hi = -10_000, 10_000
    rng = random.Random(4)
    points = [(chi, sigma) for chi in range(lo, hi + 1, 101) for sigma in range(lo, hi + 1, 101)]
    points += [(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(20_000)]
    # points on and next to the line 9 sigma + 5 chi + 40 = 0
    for chi in range(lo, hi + 1, 7):
        for offset in (-2, -1, 0, 1, 2):
            num = -(5 * chi + 40) + offset
            if num % 9 == 0 and lo <= num // 9 <= hi:
                points.append((chi, num // 9))
    points += [(lo, lo), (lo, hi), (hi, lo), (hi, hi)]
    mismatches = []
    for chi, sigma in points:
        r = genus3_nonholomorphic(chi, sigma)
        linear = 9 * sigma + 5 * chi + 40
        if 4 * r.pairing != linear or r.condition_ii != (linear < 0):
            mismatches.append((chi, sigma))
    # the pairing is affine in (chi, sigma); agreement at three affinely independent
    # points makes 4 * pairing and 9 sigma + 5 chi + 40 the same polynomial
    ok = not mismatches and len(points) > 50_000
    _report(capsys, 4, "genus-3 pairing equals (9 sigma + 5 chi + 40)/4", ok,
            f"{len(points)} points, {len(mismatches)} mismatches")
    assert ok


# -- 5 -------------------------------------------------------------------------


def test_criterion_05_separating_obstruction(capsys):
    bad = []
    for g in range(2, 11):
        for delta in range(1, 101):
            c = separating_word_report(g, delta).c1_squared
            if not (c == 8 - 8 * g - delta and c < -delta):
                bad.append((g, delta))
    ok = not bad
    _report(capsys, 5, "separating-only words have c1^2 = 8 - 8g - delta < -delta", ok,
            f"900 cases, {len(bad)} failures")
    assert ok


# -- 6 -------------------------------------------------------------------------


def test_criterion_06_donaldson_schedule(capsys):
    results = {}

    def run():
        for q in ("1.5", "2", "3"):
            results[("poly", q)] = donaldson_schedule("poly", Fraction(q), 2, 200, Fraction(1, 4))
        for d in (1, 4):
            results[("log", d)] = donaldson_schedule("log", d, 2, 10_000, Fraction(1, 4))

    elapsed = _best_time(run, 1)
    poly_ok = all(not results[("poly", q)].survived and results[("poly", q)].first_failure is not None
                  and results[("poly", q)].first_failure <= 200 for q in ("1.5", "2", "3"))
    log_ok = all(results[("log", d)].survived for d in (1, 4))
    ok = poly_ok and log_ok and elapsed < 5.0
    firsts = [results[("poly", q)].first_failure for q in ("1.5", "2", "3")]
    _report(capsys, 6, "polynomial schedules fail, logarithmic ones survive 10^4 steps", ok,
            f"poly first failures {firsts}; {elapsed:.2f} s < 5 s")
    assert ok


# -- 7 -------------------------------------------------------------------------


def test_criterion_07_braided_conic(capsys):
    conic = BraidedCurveSpec.from_json(read_input("conic.json")[0])
    valid = verify_braided_curve(conic).valid
    tangencies = conic.degree == 2 and len(conic.factors) == 2 and all(q.exponent == 1 for q in conic.factors)
    thetas = enumerate_thetas(conic, 2)
    pres = zvk_presentation(conic)
    ab = presentation_abelianization(pres)
    simplified = tietze_simplify(pres)
    cert = group_certificate(simplified.presentation)
    ok = (valid and tangencies and thetas.complete and len(thetas.classes) == 1
          and ab.free_rank == 0 and ab.torsion == (2,) and not simplified.exhausted and cert.order == 2)
    _report(capsys, 7, "braided conic: valid, one theta class, group of order 2", ok,
            f"classes {len(thetas.classes)}, H1 {ab}, certificate order {cert.order}")
    assert ok


# -- 8 -------------------------------------------------------------------------


def _random_factorization(rng: random.Random) -> Factorization:
    d = rng.randint(2, 5)
    ctx = Context("braid", d)
    factors = []
    # sizes stay small: Hurwitz moves lengthen conjugators and Artin images grow fast
    for _ in range(rng.randint(1, 5)):
        conj = BraidWord(d, tuple(rng.choice([1, -1]) * rng.randint(1, d - 1) for _ in range(rng.randint(0, 2))))
        factors.append(ConjugatedPower(conj, rng.randint(1, d - 1), rng.choice([1, 2, -1])))
    return Factorization(ctx, tuple(factors), None, ctx.product(factors))


def _random_move(rng: random.Random, f: Factorization) -> Move:
    d, n = f.context.size, len(f)
    roll = rng.random()
    if roll < 0.15:
        return Move("conjugate", element=BraidWord(d, (rng.choice([1, -1]) * rng.randint(1, d - 1),)))
    if roll < 0.25:
        g = ConjugatedPower(BraidWord(d), rng.randint(1, d - 1), rng.choice([1, -1]))
        return Move("insert", rng.randint(1, n + 1), element=g)
    if roll < 0.35:
        for i in range(1, n):
            a, b = f.factors[i - 1], f.factors[i]
            if f.context.is_identity(f.context.multiply(a, b)):
                return Move("delete", i)
    if n < 2:
        return Move("insert", 1, element=ConjugatedPower(BraidWord(d), 1, 1))
    return Move("hurwitz", rng.randint(1, n - 1), rng.choice([1, -1]))


def test_criterion_08_hurwitz_conservation(capsys):
    rng = random.Random(8)
    start = time.perf_counter()
    failures = []
    for k in range(10_000):
        f0 = _random_factorization(rng)
        f, moves = f0, []
        for _ in range(rng.randint(1, 3)):
            move = _random_move(rng, f)
            f = move.apply(f)
            moves.append(move)
        path = MovePath.from_json(MovePath(tuple(moves)).to_json(f0.context), f0.context)
        if not (verify_product(f) and f.exponent_sum() == f0.exponent_sum()
                and factorwise_equal(replay(f0, path), f)):
            failures.append(k)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30.0
    _report(capsys, 8, "10^4 random move sequences keep the product; replays verify", ok,
            f"{len(failures)} failures; {elapsed:.1f} s < 30 s")
    assert ok


# -- 9 -------------------------------------------------------------------------


def test_criterion_09_lifting(capsys):
    start = time.perf_counter()
    branch = BranchData.from_pairs(2, [(1, 2)] * 4)
    model = CoverModel(branch)
    act = lift_homology_action(BraidWord(4, (1, 1)), branch, model)
    lift_ok = model.genus == 1 and is_transvection(act.matrix) and is_symplectic(act.matrix, model.intersection_form)
    disagreements = count = 0
    for w in _braid_words(4, 6):
        count += 1
        if is_liftable(w, branch) != (_hurwitz_oracle(branch.transpositions, w) == branch.transpositions):
            disagreements += 1
    node_branch = BranchData.from_pairs(4, [(1, 2), (3, 4), (2, 3), (2, 3), (3, 4), (1, 2), (1, 2), (1, 2)])
    node = ConjugatedPower(BraidWord(8), 1, 2).word
    node_ok = is_liftable(node, node_branch) and \
        lift_homology_action(node, node_branch).matrix == ((1, 0), (0, 1))
    elapsed = time.perf_counter() - start
    ok = lift_ok and disagreements == 0 and node_ok and elapsed < 10.0
    _report(capsys, 9, "lift of sigma1^2 is a symplectic transvection; liftability matches oracle", ok,
            f"{count} words, {disagreements} disagreements; node acts trivially: {node_ok}; {elapsed:.2f} s < 10 s")
    assert ok


# -- 10 ------------------------------------------------------------------------


def test_criterion_10_fukaya_conic(capsys):
    state = {}

    def run():
        data = compute_category(conic_pencil_example())
        state["data"] = data
        state["ainf"] = verify_a_infinity(data, 4)

    elapsed = _best_time(run)
    data, ainf = state["data"], state["ainf"]
    expected = {("a", "b"): {"c"}, ("a'", "b'"): {"c"}, ("a", "b'"): {"c'"}, ("a'", "b"): {"c'"}}
    nonunit = {k: set(v) for k, v in data.mu.get(2, {}).items() if not any(x.startswith("id") for x in k)}
    higher = any(data.mu.get(n) for n in range(3, 6))
    ok = ([data.rank(1, 2), data.rank(2, 3), data.rank(1, 3)] == [2, 2, 2] and not data.mu.get(1)
          and nonunit == expected and not higher and ainf.holds and elapsed < 1.0)
    _report(capsys, 10, "conic Fukaya table and A-infinity relations to order 4", ok,
            f"{ainf.checked} tuples; {elapsed:.3f} s < 1 s")
    assert ok


# -- 11 ------------------------------------------------------------------------


def test_criterion_11_lantern(capsys):
    from monodromy.groups import sphere_quotient_is_inner

    s1, s2 = BraidWord.generator(4, 1), BraidWord.generator(4, 2)
    state = {}

    def run():
        third = s1.conjugate(s2.inverse())  # s2^-1 s1 s2
        word = s1 ** 2 * s2 ** 2 * third ** 2
        state["good"] = sphere_quotient_is_inner(word.artin, 4)
        state["other"] = sphere_quotient_is_inner((s1 ** 2 * s2 ** 2 * s1.conjugate(s2) ** 2).artin, 4)

    elapsed = _best_time(run)
    ok = state["good"].inner is True and state["other"].inner is False and elapsed < 1.0
    _report(capsys, 11, "capped lantern relation is inner", ok, f"{elapsed * 1e3:.1f} ms < 1 s")
    assert ok


# -- 12 ------------------------------------------------------------------------


def test_criterion_12_moishezon_family(capsys):
    rows = []
    ok = True
    for k in range(6):
        a, b = moishezon_family(2, k), moishezon_family(3, k)
        ok &= (a.degree, a.cusps, a.nodes) == (18, 81, 0) and (b.degree, b.cusps, b.nodes) == (54, 378, 756)
        ok &= a.proportional == (k == 0) and b.proportional == (k == 0)
        rows.append((k, a.proportional, b.proportional))
    _report(capsys, 12, "Moishezon family numerics and proportionality iff k = 0", bool(ok),
            f"(18, 81, 0), (54, 378, 756); flags {rows[:2]}...")
    assert ok
