"""Lifting liftable braids to the branched-cover fiber, at homology level.

Cell model of the base sphere: one vertex ``q``, a petal loop ``x_j`` around
each branch point, a disc ``P_j`` bounded by ``x_j`` and an outer disc
bounded by ``(x_1 ... x_d)^-1``.  The ``N``-sheeted cover has vertices
``1..N`` (the sheets over ``q``), edges ``(j, s)`` from ``s`` to
``theta(x_j)(s)``, the ``N`` lifts of the outer disc, and one lift of
``P_j`` per orbit of ``theta(x_j)`` on the sheets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .braidmono import BraidedCurveSpec, BranchData, theta_compatible, verify_braided_curve
from .factorizations import Context, Factorization, matrix_inverse
from .groups import BraidWord, FreeWord, Permutation
from .snf import determinant, identity, matmul, smith_normal_form, transpose  # noqa: F401

IntMatrix = tuple[tuple[int, ...], ...]


class NotLiftable(ValueError):
    """The braid does not preserve the branch data."""


def fiber_genus(N: int, d: int) -> int:
    """Genus of an ``N``-sheeted simply branched cover of the sphere with ``d`` branch points."""
    if N < 1 or d < 0:
        raise ValueError("N must be positive and d non-negative")
    twice = d - 2 * N + 2
    if twice % 2 or twice < 0:
        raise ValueError(f"d - 2N + 2 = {twice} must be even and non-negative")
    return twice // 2


def hurwitz_tuple_action(ts: Sequence[Permutation], w: BraidWord) -> tuple[Permutation, ...]:
    """Act on a tuple of transpositions letter by letter.

    ``X_i``: ``(t_i, t_{i+1}) -> (t_i t_{i+1} t_i, t_i)``; ``X_i^-1`` is the
    inverse move ``(t_i, t_{i+1}) -> (t_{i+1}, t_{i+1} t_i t_{i+1})``.
    """
    ts = list(ts)
    for a in w.letters:
        i = abs(a) - 1
        x, y = ts[i], ts[i + 1]
        if a > 0:
            ts[i], ts[i + 1] = x * y * x.inverse(), x
        else:
            ts[i], ts[i + 1] = y, y.inverse() * x * y
    return tuple(ts)


def is_liftable(w: BraidWord, branch: BranchData) -> bool:
    """Does ``w`` fix the branch data exactly (``theta o phi_w == theta``)?"""
    if w.strands != branch.degree:
        raise ValueError(f"braid on {w.strands} strands, branch data of length {branch.degree}")
    return all(branch.evaluate(img) == t for img, t in zip(w.artin.images, branch.transpositions))


@dataclass(frozen=True)
class HomologyAction:
    """Action on ``H_1`` (column vectors) plus the permutation of marked points."""

    matrix: IntMatrix
    marked_points: Permutation

    def __mul__(self, other: HomologyAction) -> HomologyAction:
        return HomologyAction(tuple(map(tuple, matmul(self.matrix, other.matrix))),
                              self.marked_points * other.marked_points)

    def is_identity(self) -> bool:
        return self.matrix == tuple(map(tuple, identity(len(self.matrix)))) and self.marked_points.is_identity()


class CoverModel:
    """Explicit cell structure of the closed fiber for given branch data."""

    def __init__(self, branch: BranchData):
        if not branch.is_transitive():
            raise ValueError("branch data is not transitive: the cover is disconnected")
        d, N = branch.degree, branch.sheets
        if not branch.evaluate(FreeWord(d, tuple(range(1, d + 1)))).is_identity():
            raise ValueError("theta(x_1 ... x_d) is not the identity")
        self.branch = branch
        self.N = N
        self.d = d
        self.genus = fiber_genus(N, d)
        # edges: index k <-> (j, s); tail s, head theta(x_j)(s)
        self.edges = [(j, s) for j in range(1, d + 1) for s in range(1, N + 1)]
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.tail = [s for _, s in self.edges]
        self.head = [branch.transpositions[j - 1](s) for j, s in self.edges]
        self.faces: list[list[tuple[int, int]]] = []
        self.outer_faces: list[int] = []
        outer = FreeWord(d, tuple(range(1, d + 1))).inverse()
        for s in range(1, N + 1):
            self.outer_faces.append(len(self.faces))
            self.faces.append(self.lift_path(outer, s))
        for j, t in enumerate(branch.transpositions, start=1):
            for s in range(1, N + 1):
                if t(s) == s:
                    self.faces.append([(self.edge_index[(j, s)], 1)])
                elif s < t(s):
                    self.faces.append([(self.edge_index[(j, s)], 1), (self.edge_index[(j, t(s))], 1)])

    # paths and chains -----------------------------------------------------

    def lift_path(self, w: FreeWord, s: int) -> list[tuple[int, int]]:
        """Edge sequence ``(edge, +-1)`` of the lift of ``w`` starting at sheet ``s``."""
        path = []
        ts = self.branch.transpositions
        for a in w.letters:
            t = ts[abs(a) - 1]
            if a > 0:
                path.append((self.edge_index[(a, s)], 1))
                s = t(s)
            else:
                s = t.inverse()(s)
                path.append((self.edge_index[(-a, s)], -1))
        return path

    def chain(self, path: Sequence[tuple[int, int]]) -> list[int]:
        c = [0] * len(self.edges)
        for e, sign in path:
            c[e] += sign
        return c

    @property
    def euler_characteristic(self) -> int:
        return self.N - len(self.edges) + len(self.faces)

    # spanning tree and cycle coordinates ------------------------------------

    @cached_property
    def _tree(self) -> tuple[list[int], dict[int, tuple[int, int] | None]]:
        """Non-tree edges and, per vertex, the tree edge (with sign) towards the root."""
        parent: dict[int, tuple[int, int] | None] = {1: None}
        frontier = [1]
        tree = set()
        while frontier:
            nxt = []
            for v in frontier:
                for k in range(len(self.edges)):
                    for a, b, sign in ((self.tail[k], self.head[k], 1), (self.head[k], self.tail[k], -1)):
                        if a == v and b not in parent:
                            parent[b] = (k, sign)
                            tree.add(k)
                            nxt.append(b)
            frontier = nxt
        return [k for k in range(len(self.edges)) if k not in tree], parent

    def _root_path(self, v: int) -> list[int]:
        """Chain of the tree path from the root to ``v``."""
        _, parent = self._tree
        c = [0] * len(self.edges)
        while parent[v] is not None:
            k, sign = parent[v]
            c[k] += sign
            v = self.tail[k] if sign == 1 else self.head[k]
        return c

    def cycle_coordinates(self, chain: Sequence[int]) -> list[int]:
        non_tree, _ = self._tree
        return [chain[k] for k in non_tree]

    def fundamental_cycle(self, k: int) -> list[int]:
        c = [a - b for a, b in zip(self._root_path(self.tail[k]), self._root_path(self.head[k]))]
        c[k] += 1
        return c

    @cached_property
    def _smith(self):
        non_tree, _ = self._tree
        rows = [self.cycle_coordinates(self.chain(f)) for f in self.faces]
        form = smith_normal_form(rows, cols=len(non_tree))
        if any(x not in (0, 1) for x in form.diagonal):
            raise AssertionError("torsion in H_1 of a closed orientable surface")
        return form

    @property
    def rank(self) -> int:
        return len(self._tree[0]) - self._smith.rank

    def homology_coordinates(self, chain: Sequence[int]) -> list[int]:
        """Coordinates of a 1-cycle in the fixed basis of ``H_1``."""
        if any(self.boundary(chain)):
            raise ValueError("chain is not a cycle")
        x = self.cycle_coordinates(chain)
        xv = matmul([x], self._smith.V)[0] if x else []
        return xv[self._smith.rank:]

    def boundary(self, chain: Sequence[int]) -> list[int]:
        out = [0] * self.N
        for k, c in enumerate(chain):
            out[self.head[k] - 1] += c
            out[self.tail[k] - 1] -= c
        return out

    @cached_property
    def basis(self) -> list[list[int]]:
        """Edge chains of the ``H_1`` basis cycles."""
        V = self._smith.V
        Vinv = matrix_inverse(V) if V else ()
        non_tree, _ = self._tree
        out = []
        for row in Vinv[self._smith.rank:]:
            chain = [0] * len(self.edges)
            for coeff, k in zip(row, non_tree):
                if coeff:
                    chain = [a + coeff * b for a, b in zip(chain, self.fundamental_cycle(k))]
            out.append(chain)
        return out

    # intersection form ------------------------------------------------------

    @cached_property
    def rotation(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Counter-clockwise successor of each half-edge ``(edge, 0=tail | 1=head)``."""
        rot = {}
        for face in self.faces:
            n = len(face)
            for i in range(n):
                (e1, s1), (e2, s2) = face[i], face[(i + 1) % n]
                h_in = (e1, 1) if s1 == 1 else (e1, 0)
                h_out = (e2, 0) if s2 == 1 else (e2, 1)
                if h_out in rot:
                    raise AssertionError("half-edge used twice as a face corner")
                rot[h_out] = h_in
        return rot

    def pushoff(self, chain: Sequence[int]) -> list[int]:
        """Cochain counting signed crossings of the right push-off of a cycle."""
        incoming: dict[int, list] = {}
        outgoing: dict[int, list] = {}
        for k, c in enumerate(chain):
            if c == 0:
                continue
            # unit traversals; the head half-edge is incoming at the end vertex
            if c > 0:
                start, end, h_from, h_to = self.tail[k], self.head[k], (k, 0), (k, 1)
            else:
                start, end, h_from, h_to = self.head[k], self.tail[k], (k, 1), (k, 0)
            outgoing.setdefault(start, []).extend([h_from] * abs(c))
            incoming.setdefault(end, []).extend([h_to] * abs(c))
        out = [0] * len(self.edges)
        for v, ins in incoming.items():
            outs = outgoing.get(v, [])
            if len(ins) != len(outs):
                raise ValueError("chain is not a cycle")
            for h_in, h_out in zip(ins, outs):
                h = self.rotation[h_in]
                while h != h_out:
                    e, end = h
                    out[e] += 1 if end == 0 else -1
                    h = self.rotation[h]
        return out

    def intersection(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(a, self.pushoff(b)))

    @cached_property
    def intersection_form(self) -> IntMatrix:
        B = self.basis
        return tuple(tuple(self.intersection(x, y) for y in B) for x in B)

    # lifts ------------------------------------------------------------------

    def lift_matrix(self, w: BraidWord) -> IntMatrix:
        if not is_liftable(w, self.branch):
            raise NotLiftable(f"{w} does not preserve theta")
        phi = w.artin
        images = [self.chain(self.lift_path(phi(FreeWord.generator(self.d, j)), s)) for j, s in self.edges]
        cols = []
        for b in self.basis:
            img = [0] * len(self.edges)
            for k, c in enumerate(b):
                if c:
                    img = [x + c * y for x, y in zip(img, images[k])]
            cols.append(self.homology_coordinates(img))
        return tuple(map(tuple, transpose(cols, len(self.basis)))) if cols else ()

    def marked_point_permutation(self, w: BraidWord) -> Permutation:
        """How the lift permutes the preimages of the point at infinity."""
        outer = FreeWord(self.d, tuple(range(1, self.d + 1))).inverse()
        image = w.artin(outer)
        perm = []
        for s in range(1, self.N + 1):
            target = self.lift_path(image, s)
            match = [t for t, f in enumerate(self.outer_faces, start=1)
                     if _same_cycle(self.faces[f], target)]
            if len(match) != 1:
                raise AssertionError("lifted outer boundary is not an outer face")
            perm.append(match[0])
        return Permutation(tuple(perm))


def _same_cycle(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    return any(list(a[i:]) + list(a[:i]) == list(b) for i in range(len(a))) or not a


def is_symplectic(M: IntMatrix, J: IntMatrix) -> bool:
    return [list(r) for r in matmul(matmul(transpose(M, len(J)), J), M)] == [list(r) for r in J]


def lift_homology_action(w: BraidWord, branch: BranchData, model: CoverModel | None = None) -> HomologyAction:
    model = model or CoverModel(branch)
    return HomologyAction(model.lift_matrix(w), model.marked_point_permutation(w))


def is_transvection(M: IntMatrix) -> bool:
    """``M - I`` is non-zero of rank one with ``(M - I)^2 = 0``."""
    n = len(M)
    N = [[M[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    if not any(any(r) for r in N):
        return False
    return smith_normal_form(N).rank == 1 and not any(any(r) for r in matmul(N, N))


@dataclass(frozen=True)
class PencilReport:
    factorization: Factorization
    genus: int
    product_is_identity: bool
    singular_factors_trivial: bool
    messages: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.product_is_identity and self.singular_factors_trivial


def pencil_monodromy(spec: BraidedCurveSpec, branch: BranchData) -> PencilReport:
    """Homology-level monodromy of the pencil: lifts of the tangency factors.

    Node and cusp factors are lifted too and must act trivially on ``H_1``.
    """
    curve = verify_braided_curve(spec)
    if not curve.valid:
        raise ValueError("; ".join(curve.messages))
    compat = theta_compatible(spec, branch)
    if not compat.compatible:
        raise ValueError("; ".join(compat.diagnostics))
    model = CoverModel(branch)
    size = 2 * model.genus
    ident = tuple(map(tuple, identity(size)))
    factors = []
    singular_ok = True
    messages = []
    for k, q in enumerate(spec.factors, start=1):
        w = q.word
        if not is_liftable(w, branch):
            raise NotLiftable(f"factor {k} ({q}) does not preserve theta")
        M = model.lift_matrix(w)
        if q.exponent == 1:
            factors.append(M)
        elif M != ident:
            singular_ok = False
            messages.append(f"factor {k} ({q}) acts non-trivially on H_1")
    f = Factorization(Context("matrix", size), tuple(factors), "identity")
    product = f.product()
    prod_ok = product == ident
    messages.append("product of the lifted twists is the identity" if prod_ok
                    else "product of the lifted twists is not the identity")
    return PencilReport(f, model.genus, prod_ok, singular_ok, tuple(messages))


__all__ = [
    "CoverModel", "HomologyAction", "NotLiftable", "PencilReport", "determinant", "fiber_genus",
    "hurwitz_tuple_action", "is_liftable", "is_symplectic", "is_transvection",
    "lift_homology_action", "pencil_monodromy",
]
