from __future__ import annotations

import itertools

import pytest

from monodromy.braidmono import BraidedCurveSpec, BranchData
from monodromy.factorizations import ConjugatedPower
from monodromy.groups import BraidWord, Permutation, parse_braid
from monodromy.io import read_input
from monodromy.lifting import (
    CoverModel,
    NotLiftable,
    fiber_genus,
    hurwitz_tuple_action,
    is_liftable,
    is_symplectic,
    is_transvection,
    lift_homology_action,
    pencil_monodromy,
)
from monodromy.snf import determinant, matmul


def words(d, max_len):
    letters = [s * i for i in range(1, d) for s in (1, -1)]
    layer = [()]
    yield BraidWord(d)
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in letters if not w or w[-1] != -a]
        for w in layer:
            yield BraidWord(d, w)


def tuple_oracle(ts, w):
    """Hurwitz action on transposition tuples, straight from the move definition."""
    ts = list(ts)
    for a in w.letters:
        i = abs(a) - 1
        x, y = ts[i], ts[i + 1]
        if a > 0:
            ts[i], ts[i + 1] = x * y * x, x  # transpositions are involutions
        else:
            ts[i], ts[i + 1] = y, y * x * y
    return tuple(ts)


def sl2z_conjugate_to(M, T, bound=4):
    """Search P in SL(2, Z) with entries in [-bound, bound] and P M P^-1 = T."""
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if a * d - b * c == 1:
            P = ((a, b), (c, d))
            if matmul(P, M) == matmul(T, P):
                return P
    return None


def test_fiber_genus_examples():
    assert fiber_genus(2, 6) == 2
    assert fiber_genus(2, 2) == 0
    assert fiber_genus(2, 4) == 1
    with pytest.raises(ValueError):
        fiber_genus(3, 5)


def test_is_liftable_examples():
    same = BranchData.from_pairs(2, [(1, 2), (1, 2)])
    assert is_liftable(BraidWord.generator(2, 1), same)
    mixed = BranchData.from_pairs(3, [(1, 2), (1, 3)])
    assert not is_liftable(BraidWord.generator(2, 1), mixed)
    assert hurwitz_tuple_action(mixed.transpositions, BraidWord.generator(2, 1)) == \
        BranchData.from_pairs(3, [(2, 3), (1, 2)]).transpositions
    assert is_liftable(BraidWord(2), mixed)


@pytest.mark.parametrize("pairs,N", [([(1, 2)] * 4, 2), ([(1, 2), (1, 2), (1, 3), (1, 3)], 3),
                                     ([(1, 2), (2, 3), (2, 3), (1, 2)], 3)])
def test_liftability_agrees_with_tuple_oracle(pairs, N):
    branch = BranchData.from_pairs(N, pairs)
    count = 0
    for w in words(4, 5):
        fixed = tuple_oracle(branch.transpositions, w) == branch.transpositions
        assert is_liftable(w, branch) == fixed
        assert hurwitz_tuple_action(branch.transpositions, w) == tuple_oracle(branch.transpositions, w)
        count += fixed
    assert count > 0


def test_torus_cover_model():
    branch = BranchData.from_pairs(2, [(1, 2)] * 4)
    model = CoverModel(branch)
    assert model.genus == 1 and model.rank == 2
    assert model.euler_characteristic == 0
    J = model.intersection_form
    assert J in (((0, 1), (-1, 0)), ((0, -1), (1, 0)))


@pytest.mark.parametrize("d", [4, 6, 8])
def test_intersection_form_unimodular(d):
    model = CoverModel(BranchData.from_pairs(2, [(1, 2)] * d))
    J = model.intersection_form
    n = len(J)
    assert n == 2 * fiber_genus(2, d)
    assert all(J[i][j] == -J[j][i] for i in range(n) for j in range(n))
    assert determinant(J) == 1


def test_half_twists_lift_to_dehn_twists():
    branch = BranchData.from_pairs(2, [(1, 2)] * 4)
    model = CoverModel(branch)
    A = ((1, 1), (0, 1))
    lifts = [lift_homology_action(BraidWord.generator(4, i), branch, model).matrix for i in (1, 2, 3)]
    for M in lifts:
        assert is_transvection(M)
        assert is_symplectic(M, model.intersection_form)
        # a single Dehn twist is conjugate in SL(2, Z) to A or A^-1
        assert sl2z_conjugate_to(M, A) or sl2z_conjugate_to(M, ((1, -1), (0, 1)))
    m1, m2, _ = lifts
    assert matmul(matmul(m1, m2), m1) == matmul(matmul(m2, m1), m2)


def test_sigma1_squared_lift():
    branch = BranchData.from_pairs(2, [(1, 2)] * 4)
    act = lift_homology_action(parse_braid("x1 x1", 4), branch)
    M = act.matrix
    assert is_transvection(M)
    assert act.marked_points.is_identity()
    # the lift of a full twist on two branch points is a squared Dehn twist
    A2 = ((1, 2), (0, 1))
    assert sl2z_conjugate_to(M, A2) or sl2z_conjugate_to(M, ((1, -2), (0, 1)))


def test_identity_braid_lifts_to_identity():
    branch = BranchData.from_pairs(2, [(1, 2)] * 6)
    act = lift_homology_action(BraidWord(6), branch)
    assert act.is_identity()


def test_lift_is_homomorphism():
    branch = BranchData.from_pairs(2, [(1, 2)] * 6)
    model = CoverModel(branch)
    for u, v in [("x1 x2", "x3^-1 x5"), ("x4 x4 x2", "x1^-1 x3 x5")]:
        a = lift_homology_action(parse_braid(u, 6), branch, model)
        b = lift_homology_action(parse_braid(v, 6), branch, model)
        ab = lift_homology_action(parse_braid(u, 6) * parse_braid(v, 6), branch, model)
        # (uv).artin substitutes v.artin into u.artin, so lifts multiply in word order
        assert ab.matrix == tuple(map(tuple, matmul(a.matrix, b.matrix)))


def test_node_with_disjoint_transpositions_acts_trivially():
    pairs = [(1, 2), (3, 4), (2, 3), (2, 3), (3, 4), (1, 2), (1, 2), (1, 2)]
    branch = BranchData.from_pairs(4, pairs)
    model = CoverModel(branch)
    assert model.genus == 1
    node = ConjugatedPower(BraidWord(8), 1, 2).word
    assert is_liftable(node, branch)
    act = lift_homology_action(node, branch, model)
    assert act.matrix == ((1, 0), (0, 1))


def test_not_liftable_raises():
    branch = BranchData.from_pairs(3, [(1, 2), (1, 3), (1, 3), (1, 2)])
    with pytest.raises(NotLiftable):
        lift_homology_action(BraidWord.generator(4, 1), branch)


def test_cover_model_rejects_bad_branch_data():
    with pytest.raises(ValueError):
        CoverModel(BranchData.from_pairs(3, [(1, 2), (1, 2)]))
    with pytest.raises(ValueError):
        CoverModel(BranchData.from_pairs(3, [(1, 2), (1, 3)]))


def test_pencil_monodromy_conic():
    spec = BraidedCurveSpec.from_json(read_input("conic.json")[0])
    report = pencil_monodromy(spec, BranchData.from_pairs(2, [(1, 2), (1, 2)]))
    assert report.genus == 0 and report.ok
    assert len(report.factorization) == 2


def test_pencil_monodromy_sextic():
    spec = BraidedCurveSpec.from_json(read_input("sextic.json")[0])
    branch = BranchData.from_json(read_input("sextic_theta.json")[0])
    report = pencil_monodromy(spec, branch)
    assert report.genus == 2 and report.ok
    model = CoverModel(branch)
    for M in report.factorization.factors:
        assert is_transvection(M) and is_symplectic(M, model.intersection_form)


def test_pencil_rejects_incompatible_theta():
    spec = BraidedCurveSpec.from_json(read_input("cuspidal_cubic.json")[0])
    with pytest.raises(ValueError):
        pencil_monodromy(spec, BranchData.from_pairs(3, [(1, 2), (2, 3), (1, 2), (2, 3)]))


def test_marked_point_permutation_is_on_sheets():
    branch = BranchData.from_pairs(2, [(1, 2)] * 4)
    act = lift_homology_action(parse_braid("x1", 4), branch)
    assert isinstance(act.marked_points, Permutation)
    assert act.marked_points.degree == 2
