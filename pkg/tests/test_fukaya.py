from __future__ import annotations

import numpy as np
import pytest

from monodromy.fukaya import (
    CurveArrangement,
    FukayaData,
    ImmersedPolygonUnsupported,
    InvalidArrangement,
    check_immersed_candidates,
    circle_arrangement,
    compute_category,
    compute_mu,
    conic_pencil_example,
    enumerate_polygons,
    hom_basis,
    identity_name,
    validate_arrangement,
    verify_a_infinity,
)

CONIC_MU2 = {("a", "b"): {"c"}, ("a'", "b'"): {"c"}, ("a", "b'"): {"c'"}, ("a'", "b"): {"c'"}}


def with_punctures(arr: CurveArrangement, faces) -> CurveArrangement:
    counts = tuple(1 if k in faces else 0 for k in range(len(arr.faces)))
    return CurveArrangement(arr.next, arr.opposite, arr.curve, arr.faces, counts, arr.curves, arr.names)


def random_arrangements(seed, count, max_curves=4, max_faces=16):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        r = int(rng.integers(2, max_curves + 1))
        circles = [(rng.normal(size=3), float(rng.uniform(-0.6, 0.6))) for _ in range(r)]
        try:
            base = circle_arrangement(circles, [])
        except ValueError:
            continue
        F = len(base.faces)
        if F > max_faces:
            continue
        chosen = set(rng.choice(F, size=max(1, F // 3), replace=False).tolist())
        arr = with_punctures(base, chosen)
        if validate_arrangement(arr).valid:
            out.append(arr)
    return out


# -- arrangements --------------------------------------------------------------


def test_conic_arrangement_counts():
    rep = validate_arrangement(conic_pencil_example())
    assert rep.valid, rep.problems
    assert (rep.V, rep.E, rep.F, rep.genus) == (6, 12, 8, 0)
    assert sorted(rep.punctures) == [0, 0, 0, 0, 1, 1, 1, 1]


def test_single_curve():
    arr = circle_arrangement([((0, 0, 1), 0.0)], [(0, 0, 1), (0, 0, -1)])
    rep = validate_arrangement(arr)
    assert rep.valid and (rep.V, rep.E, rep.F) == (1, 1, 2)
    data = compute_category(arr)
    assert data.r == 1 and data.homs == {(1, 1): [identity_name(1)]}
    assert verify_a_infinity(data, 3).holds


def test_single_curve_needs_punctures_on_both_sides():
    arr = circle_arrangement([((0, 0, 1), 0.0)], [(0, 0, 1)])
    rep = validate_arrangement(arr)
    assert not rep.valid and any("unpunctured disc" in p for p in rep.problems)


def test_disjoint_curves():
    arr = circle_arrangement([((0, 0, 1), 0.5), ((0, 0, 1), -0.5)],
                             [(0, 0, 1), (1, 0, 0), (0, 0, -1)])
    rep = validate_arrangement(arr)
    assert rep.valid and (rep.V, rep.E, rep.F) == (2, 2, 3)
    assert hom_basis(arr, 1, 2) == []
    data = compute_category(arr)
    assert data.rank(1, 2) == 0 and data.rank(1, 1) == 1
    assert verify_a_infinity(data, 3).holds


def test_broken_next_cycle_is_rejected():
    arr = conic_pencil_example()
    nxt = list(arr.next)
    a, b = arr.faces[0][0], arr.faces[1][0]
    nxt[a], nxt[b] = nxt[b], nxt[a]
    broken = CurveArrangement(tuple(nxt), arr.opposite, arr.curve, arr.faces, arr.punctures, arr.curves)
    rep = validate_arrangement(broken)
    assert not rep.valid and any("leaves the face" in p for p in rep.problems)
    with pytest.raises(InvalidArrangement):
        validate_arrangement(broken, raise_on_error=True)


def test_bad_opposite_is_rejected():
    arr = conic_pencil_example()
    opp = list(arr.opposite)
    opp[0], opp[1] = opp[1], opp[0]
    rep = validate_arrangement(CurveArrangement(arr.next, tuple(opp), arr.curve, arr.faces,
                                                arr.punctures, arr.curves))
    assert not rep.valid


def test_json_round_trip():
    arr = conic_pencil_example()
    back = CurveArrangement.from_json(arr.to_json())
    assert back == arr


# -- morphisms and structure maps ----------------------------------------------------


def test_conic_hom_spaces():
    arr = conic_pencil_example()
    assert hom_basis(arr, 1, 2) == ["a", "a'"]
    assert hom_basis(arr, 2, 3) == ["b", "b'"]
    assert hom_basis(arr, 1, 3) == ["c", "c'"]
    assert hom_basis(arr, 2, 2) == [identity_name(2)]
    assert hom_basis(arr, 3, 1) == []
    with pytest.raises(IndexError):
        hom_basis(arr, 0, 1)


def test_conic_mu_table():
    data = compute_category(conic_pencil_example())
    assert [data.rank(1, 2), data.rank(2, 3), data.rank(1, 3)] == [2, 2, 2]
    assert not data.mu.get(1)
    for inputs, out in CONIC_MU2.items():
        assert data.mu_value(inputs) == out
    # with three objects no polygon has four increasing corners
    assert compute_mu(conic_pencil_example(), 3, ["a", "b", "id3"]) == frozenset()
    nonunit = {k: v for k, v in data.mu[2].items() if not any(x.startswith("id") for x in k)}
    assert {k: set(v) for k, v in nonunit.items()} == CONIC_MU2


def test_compute_mu_checks_inputs():
    arr = conic_pencil_example()
    data = compute_category(arr)
    with pytest.raises(ValueError):
        compute_mu(arr, 2, ["a"], data)
    with pytest.raises(ValueError):
        compute_mu(arr, 2, ["b", "a"], data)
    with pytest.raises(ValueError):
        compute_mu(arr, 2, ["a", "zz"], data)
    assert compute_mu(arr, 2, ["id1", "a"], data) == {"a"}


def test_conic_a_infinity():
    res = verify_a_infinity(compute_category(conic_pencil_example()), 4)
    assert res.holds and res.checked > 0


def test_flipped_mu2_entry_is_detected():
    # non-unit products of the conic sit in no composable triple, so corrupt a unit entry
    data = compute_category(conic_pencil_example())
    data.mu[2][("id1", "a")] = frozenset(["a'"])
    res = verify_a_infinity(data, 3)
    assert not res.holds and res.failure is not None and len(res.failure) == 3


def test_missing_unit_entry_is_detected():
    data = compute_category(conic_pencil_example())
    del data.mu[2][("id1", "a")]
    assert not verify_a_infinity(data, 3).holds


def test_empty_category():
    assert verify_a_infinity(FukayaData(0, {}, {}), 4).holds


def test_directedness_enforced():
    with pytest.raises(AssertionError):
        FukayaData(2, {(2, 1): ["x"]}, {})


def test_json_table_is_deterministic():
    a = compute_category(conic_pencil_example()).to_json()
    b = compute_category(conic_pencil_example()).to_json()
    assert a == b and a["mu"]["2"]["a b"] == ["c"]


# -- random arrangements ----------------------------------------------------------


def test_random_arrangements_satisfy_a_infinity():
    checked = nontrivial = 0
    for arr in random_arrangements(11, 25):
        try:
            data = compute_category(arr)
        except ImmersedPolygonUnsupported:
            continue
        res = verify_a_infinity(data, 4)
        assert res.holds, (res.failure, res.defect)
        checked += 1
        nontrivial += any(data.mu.get(n) for n in (1, 3))
    assert checked >= 20 and nontrivial >= 10


def test_immersed_candidate_is_refused():
    # boundary passes a vertex twice; counting embedded discs alone breaks A-infinity here
    arr = random_arrangements(11, 25)[3]
    assert arr.r == 4 and len(arr.faces) == 12
    with pytest.raises(ImmersedPolygonUnsupported):
        compute_category(arr)
    assert enumerate_polygons(arr)


def test_screen_passes_conic():
    check_immersed_candidates(conic_pencil_example())


def test_more_punctures_never_add_polygons():
    for arr in random_arrangements(5, 15):
        fewer = {p.faces for p in enumerate_polygons(arr)}
        empty = [k for k, p in enumerate(arr.punctures) if not p]
        if not empty:
            continue
        more = with_punctures(arr, {k for k, p in enumerate(arr.punctures) if p} | {empty[0]})
        assert {p.faces for p in enumerate_polygons(more)} <= fewer


def test_polygons_avoid_punctured_faces():
    for arr in random_arrangements(7, 10):
        for p in enumerate_polygons(arr):
            assert all(arr.punctures[f] == 0 for f in p.faces)
            assert len(p.corners) == len(p.arcs) >= 2
