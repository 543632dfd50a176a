"""Braided plane curves: braid monodromy, branch data and presentations.

A braided curve of degree ``d`` is a factorization of the full twist in
``B_d`` into factors ``c X_b^e c^-1`` with ``e`` in ``{1, 2, -2, 3}``
(tangency, positive node, negative node, cusp).  Branch data ``theta``
assigns a transposition of ``S_N`` to each of the ``d`` meridians.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .factorizations import ConjugatedPower, Context, Factorization, verify_product
from .groups import (
    BraidWord,
    FreeWord,
    Permutation,
    ResourceLimitError,
    transpositions,
)
from .snf import AbelianGroup

CURVE_EXPONENTS = (1, 2, -2, 3)
FACTOR_TYPES = {1: "tangency", 2: "node", -2: "negative node", 3: "cusp"}

DEFAULT_CONJUGATOR_LENGTH = 4
DEFAULT_TIETZE_STEPS = 10_000
DEFAULT_QUOTIENT_INDEX = 6
DEFAULT_QUOTIENT_BUDGET = 2_000_000
DEFAULT_THETA_BOUND = 1_000_000


# ---------------------------------------------------------------------------
# Data


@dataclass(frozen=True)
class BraidedCurveSpec:
    degree: int
    factors: tuple[ConjugatedPower, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        object.__setattr__(self, "factors", tuple(self.factors))
        for k, q in enumerate(self.factors, start=1):
            if q.strands != self.degree:
                raise ValueError(f"factor {k} lives in B_{q.strands}, expected B_{self.degree}")
            if q.exponent not in CURVE_EXPONENTS:
                raise ValueError(f"factor {k}: exponent {q.exponent} not in {CURVE_EXPONENTS}")

    def to_factorization(self) -> Factorization:
        if self.degree == 1:
            return Factorization(Context("braid", 1), self.factors, "identity")
        return Factorization(Context("braid", self.degree), self.factors, "full_twist")

    @classmethod
    def from_factorization(cls, f: Factorization) -> BraidedCurveSpec:
        if f.context.kind != "braid":
            raise ValueError("braided curves need a braid context")
        if not all(isinstance(a, ConjugatedPower) for a in f.factors):
            raise ValueError("every factor must be a conjugated half-twist power")
        return cls(f.context.size, f.factors)

    def to_json(self) -> dict:
        return self.to_factorization().to_json()

    @classmethod
    def from_json(cls, obj: dict) -> BraidedCurveSpec:
        if "context" not in obj:
            obj = dict(obj, context={"kind": "braid", "strands": obj["degree"]})
        obj = dict(obj)
        obj.setdefault("target", "full_twist")
        return cls.from_factorization(Factorization.from_json(obj))

    def exponent_checksum(self) -> int:
        return sum(q.exponent for q in self.factors)

    def counts(self) -> dict[str, int]:
        out = {name: 0 for name in FACTOR_TYPES.values()}
        for q in self.factors:
            out[FACTOR_TYPES[q.exponent]] += 1
        return out


@dataclass(frozen=True)
class BranchData:
    """Transposition assigned to each meridian ``x_1..x_d``."""

    sheets: int
    transpositions: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "transpositions", tuple(self.transpositions))
        for k, t in enumerate(self.transpositions, start=1):
            if t.degree != self.sheets or not t.is_transposition():
                raise ValueError(f"theta(x{k}) = {t} is not a transposition of S_{self.sheets}")

    @property
    def degree(self) -> int:
        return len(self.transpositions)

    @classmethod
    def from_pairs(cls, sheets: int, pairs: Iterable[Sequence[int]]) -> BranchData:
        return cls(sheets, tuple(Permutation.transposition(sheets, a, b) for a, b in pairs))

    def pairs(self) -> list[tuple[int, int]]:
        return [tuple(sorted(t.support())) for t in self.transpositions]

    def to_json(self) -> dict:
        return {"sheets": self.sheets, "transpositions": [list(p) for p in self.pairs()]}

    @classmethod
    def from_json(cls, obj: dict) -> BranchData:
        return cls.from_pairs(int(obj["sheets"]), obj["transpositions"])

    def evaluate(self, w: FreeWord) -> Permutation:
        """``theta(w)``; products act on sheets left to right."""
        if w.rank != self.degree:
            raise ValueError(f"word of rank {w.rank} for branch data of length {self.degree}")
        return w.evaluate(self.transpositions, Permutation.identity(self.sheets))

    def is_transitive(self) -> bool:
        if self.sheets == 1:
            return True
        reached = {1}
        frontier = [1]
        while frontier:
            s = frontier.pop()
            for t in self.transpositions:
                if t(s) not in reached:
                    reached.add(t(s))
                    frontier.append(t(s))
        return len(reached) == self.sheets

    def conjugate(self, p: Permutation) -> BranchData:
        """Relabel sheets by ``p``: ``theta'(x) = p^-1 theta(x) p``."""
        pinv = p.inverse()
        return BranchData(self.sheets, tuple(pinv * t * p for t in self.transpositions))

    def canonical_key(self) -> tuple:
        """Lexicographically least pair list over all relabelings of the sheets."""
        best = None
        for images in itertools.permutations(range(1, self.sheets + 1)):
            key = tuple(tuple(sorted((images[a - 1], images[b - 1]))) for a, b in self.pairs())
            if best is None or key < best:
                best = key
        return best

    def hurwitz_act(self, w: BraidWord) -> BranchData:
        """``theta o phi_w`` on the meridians."""
        if w.strands != self.degree:
            raise ValueError("strand count differs from the number of branch points")
        images = tuple(self.evaluate(img) for img in w.artin.images)
        return BranchData(self.sheets, images)

    def __str__(self) -> str:
        return " ".join(str(t) for t in self.transpositions)


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class CurveReport:
    valid: bool
    checksum: int
    expected_checksum: int
    checksum_ok: bool
    product_ok: bool | None
    counts: dict
    messages: tuple[str, ...] = ()


def verify_braided_curve(spec: BraidedCurveSpec) -> CurveReport:
    """Check the exponent checksum ``d(d-1)`` and then ``prod = Delta^2``."""
    d = spec.degree
    expected = d * (d - 1)
    checksum = spec.exponent_checksum()
    counts = spec.counts()
    if checksum != expected:
        return CurveReport(False, checksum, expected, False, None, counts,
                           (f"exponent sum {checksum} differs from d(d-1) = {expected}",))
    try:
        ok = verify_product(spec.to_factorization())
    except ResourceLimitError as exc:
        return CurveReport(False, checksum, expected, True, None, counts, (f"undetermined: {exc}",))
    msg = "product equals the full twist" if ok else "product differs from the full twist"
    return CurveReport(ok, checksum, expected, True, ok, counts, (msg,))


def local_meridians(q: ConjugatedPower) -> tuple[FreeWord, FreeWord]:
    """Images of ``x_b, x_{b+1}`` under the conjugator's Artin action."""
    phi = q.conjugator.artin
    d = q.strands
    return phi(FreeWord.generator(d, q.base)), phi(FreeWord.generator(d, q.base + 1))


def factor_relators(q: ConjugatedPower) -> list[FreeWord]:
    """``x_i^-1 phi_Q(x_i)`` for every meridian moved by the factor."""
    phi = q.word.artin
    out = []
    for i in range(1, q.strands + 1):
        x = FreeWord.generator(q.strands, i)
        r = x.inverse() * phi(x)
        if r.letters:
            out.append(r)
    return out


def projective_relator(d: int) -> FreeWord:
    """The loop around all ``d`` points of a generic line, ``x_1 ... x_d``."""
    return FreeWord(d, tuple(range(1, d + 1)))


@dataclass(frozen=True)
class ThetaReport:
    compatible: bool
    diagnostics: tuple[str, ...]


def _local_check(q: ConjugatedPower, theta) -> str | None:
    """Local-type violation message, or None; ``theta`` maps words to permutations."""
    m1, m2 = local_meridians(q)
    t1, t2 = theta(m1), theta(m2)
    s1, s2 = t1.support(), t2.support()
    kind = FACTOR_TYPES[q.exponent]
    if q.exponent == 1 and t1 != t2:
        return f"{kind}: meridians map to {t1} and {t2}, expected equal transpositions"
    if q.exponent in (2, -2) and s1 & s2:
        return f"{kind}: meridians map to {t1} and {t2}, expected disjoint transpositions"
    if q.exponent == 3 and len(s1 & s2) != 1:
        return f"{kind}: meridians map to {t1} and {t2}, expected adjacent transpositions"
    return None


def theta_compatible(spec: BraidedCurveSpec, branch: BranchData) -> ThetaReport:
    """Does ``theta`` extend over the curve complement with the right local types?"""
    if branch.degree != spec.degree:
        raise ValueError(f"branch data has length {branch.degree}, curve degree is {spec.degree}")
    diags = []
    if not branch.evaluate(projective_relator(spec.degree)).is_identity():
        diags.append("theta does not kill the loop around the line at infinity")
    for k, q in enumerate(spec.factors, start=1):
        for r in factor_relators(q):
            if not branch.evaluate(r).is_identity():
                diags.append(f"factor {k}: theta does not kill relator {r}")
                break
        msg = _local_check(q, branch.evaluate)
        if msg:
            diags.append(f"factor {k} {msg}")
    if not branch.is_transitive():
        diags.append("image of theta is not transitive")
    return ThetaReport(not diags, tuple(diags))


def admissible_node_pair(branch: BranchData):
    """Admissibility for pair insertion: a node whose meridians have disjoint images."""
    def admissible(g, f) -> bool:
        return (isinstance(g, ConjugatedPower) and g.exponent in (2, -2)
                and _local_check(g, branch.evaluate) is None)
    return admissible


# ---------------------------------------------------------------------------
# Presentations


def _canonical_relator(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Least cyclic rotation of the word or its inverse."""
    if not letters:
        return letters
    inv = tuple(-a for a in reversed(letters))
    return min(w[i:] + w[:i] for w in (letters, inv) for i in range(len(w)))


def _cyclic_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return letters[i:j]


@dataclass(frozen=True)
class Presentation:
    generators: int
    relators: tuple[FreeWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.rank != self.generators:
                raise ValueError("relator rank differs from the generator count")

    def to_json(self) -> dict:
        return {"generators": self.generators, "relators": [str(r) if r.letters else "1" for r in self.relators]}

    def __str__(self) -> str:
        gens = ", ".join(f"x{i}" for i in range(1, self.generators + 1))
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def zvk_presentation(spec: BraidedCurveSpec, stabilized: bool = False,
                     branch: BranchData | None = None,
                     conjugator_length: int = DEFAULT_CONJUGATOR_LENGTH) -> Presentation:
    """Zariski-van Kampen presentation of the curve complement.

    The stabilized variant adds ``[a, c b c^-1]`` for base meridians ``a, b``
    (the standard generators and all local meridians) and reduced
    conjugators ``c`` of length at most ``conjugator_length`` whenever
    ``theta(a)`` and ``theta(c b c^-1)`` are disjoint transpositions.
    """
    d = spec.degree
    seen = set()
    rels: list[FreeWord] = []

    def add(r: FreeWord):
        key = _canonical_relator(_cyclic_reduce(r.letters))
        if key and key not in seen:
            seen.add(key)
            rels.append(r)

    for q in spec.factors:
        for r in factor_relators(q):
            add(r)
    add(projective_relator(d))
    if stabilized:
        if branch is None:
            raise ValueError("the stabilized presentation needs branch data")
        if branch.degree != d:
            raise ValueError("branch data length differs from the degree")
        for r in stabilizing_relators(spec, branch, conjugator_length):
            add(r)
    return Presentation(d, tuple(rels))


def _reduced_words(rank: int, max_len: int) -> list[FreeWord]:
    out = [FreeWord(rank)]
    layer = [()]
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    for _ in range(max_len):
        nxt = [w + (a,) for w in layer for a in letters if not w or w[-1] != -a]
        out.extend(FreeWord(rank, w) for w in nxt)
        layer = nxt
    return out


def stabilizing_relators(spec: BraidedCurveSpec, branch: BranchData,
                         conjugator_length: int = DEFAULT_CONJUGATOR_LENGTH) -> list[FreeWord]:
    d = spec.degree
    base: list[FreeWord] = [FreeWord.generator(d, i) for i in range(1, d + 1)]
    for q in spec.factors:
        base.extend(local_meridians(q))
    uniq = []
    seen = set()
    for b in base:
        if b.letters not in seen:
            seen.add(b.letters)
            uniq.append(b)
    images = [branch.evaluate(b) for b in uniq]
    conj = [(c, branch.evaluate(c)) for c in _reduced_words(d, conjugator_length)]
    out = []
    for a, ta in zip(uniq, images):
        for b, tb in zip(uniq, images):
            for c, tc in conj:
                t = tc * tb * tc.inverse()
                if not ta.support() & t.support():
                    cb = b.conjugate(c)
                    out.append(a * cb * a.inverse() * cb.inverse())
    return out


@dataclass(frozen=True)
class TietzeResult:
    presentation: Presentation
    steps: int
    eliminated: tuple[int, ...]
    exhausted: bool


def _substitute(rel: tuple[int, ...], g: int, repl: tuple[int, ...]) -> list[int]:
    inv = tuple(-a for a in reversed(repl))
    out: list[int] = []
    for a in rel:
        if a == g:
            out.extend(repl)
        elif a == -g:
            out.extend(inv)
        else:
            out.append(a)
    return out


def _free_reduce(letters) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def _tidy(rels: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    out = set()
    for r in rels:
        r = _canonical_relator(_cyclic_reduce(_free_reduce(r)))
        if r:
            out.add(r)
    return sorted(out, key=lambda r: (len(r), r))


def tietze_simplify(p: Presentation, max_steps: int = DEFAULT_TIETZE_STEPS,
                    max_length: int = 100_000) -> TietzeResult:
    """Bounded Tietze simplification.

    Repeatedly solves a relator for a generator occurring in it exactly once,
    substitutes, and drops the generator; relators are kept freely and
    cyclically reduced and deduplicated up to rotation and inversion.
    """
    gens = list(range(1, p.generators + 1))
    rels = _tidy(r.letters for r in p.relators)
    eliminated = []
    steps = 0
    exhausted = False
    while True:
        choice = None
        for idx, r in enumerate(rels):
            for g in sorted({abs(a) for a in r}):
                if sum(1 for a in r if abs(a) == g) == 1:
                    choice = (len(r), idx, g)
                    break
            if choice:
                break
        if choice is None:
            break
        if steps >= max_steps:
            exhausted = True
            break
        _, idx, g = choice
        r = rels[idx]
        pos = next(i for i, a in enumerate(r) if abs(a) == g)
        # r = u g^s v  =>  g^s = u^-1 v^-1
        u, s, v = r[:pos], 1 if r[pos] > 0 else -1, r[pos + 1:]
        repl = _free_reduce(tuple(-a for a in reversed(u)) + tuple(-a for a in reversed(v)))
        if s == -1:
            repl = tuple(-a for a in reversed(repl))
        rest = [_substitute(x, g, repl) for j, x in enumerate(rels) if j != idx]
        if sum(len(x) for x in rest) > max_length:
            exhausted = True
            break
        rels = _tidy(rest)
        gens.remove(g)
        eliminated.append(g)
        steps += 1
    # renumber the surviving generators
    index = {g: k for k, g in enumerate(gens, start=1)}
    renum = [tuple((1 if a > 0 else -1) * index[abs(a)] for a in r) for r in rels]
    pres = Presentation(len(gens), tuple(FreeWord(len(gens), r) for r in renum))
    return TietzeResult(pres, steps, tuple(eliminated), exhausted)


def presentation_abelianization(p: Presentation) -> AbelianGroup:
    return AbelianGroup.from_relations([r.exponent_sums() for r in p.relators], p.generators)


@dataclass(frozen=True)
class GroupCertificate:
    """Computable invariants of a finitely presented group.

    ``order`` is set only when the simplified presentation has one
    generator (then the group is cyclic of order the gcd of the relator
    exponents, ``0`` meaning infinite).  ``subgroup_counts[n-1]`` is the
    number of subgroups of index ``n``; ``None`` marks an index beyond budget.
    """

    simplified: Presentation
    abelianization: AbelianGroup
    order: int | None
    subgroup_counts: tuple[int | None, ...]


def count_transitive_actions(p: Presentation, n: int, budget: int = DEFAULT_QUOTIENT_BUDGET) -> int:
    """Number of transitive homomorphisms ``G -> S_n``, by exhaustive search."""
    k = p.generators
    if math.factorial(n) ** k > budget:
        raise ResourceLimitError(f"{math.factorial(n)}^{k} assignments exceed budget {budget}")
    perms = [Permutation(img) for img in itertools.permutations(range(1, n + 1))]
    ident = Permutation.identity(n)
    count = 0
    for assignment in itertools.product(perms, repeat=k):
        if all(r.evaluate(assignment, ident).is_identity() for r in p.relators):
            if _transitive(assignment, n):
                count += 1
    return count


def _transitive(perms: Sequence[Permutation], n: int) -> bool:
    reached = {1}
    frontier = [1]
    while frontier:
        s = frontier.pop()
        for t in perms:
            for x in (t(s), t.inverse()(s)):
                if x not in reached:
                    reached.add(x)
                    frontier.append(x)
    return len(reached) == n


def group_certificate(p: Presentation, max_index: int = DEFAULT_QUOTIENT_INDEX,
                      budget: int = DEFAULT_QUOTIENT_BUDGET,
                      max_steps: int = DEFAULT_TIETZE_STEPS) -> GroupCertificate:
    simple = tietze_simplify(p, max_steps).presentation
    order = None
    if simple.generators == 0:
        order = 1
    elif simple.generators == 1:
        order = 0
        for r in simple.relators:
            order = math.gcd(order, r.exponent_sums()[0])
    counts: list[int | None] = []
    for n in range(1, max_index + 1):
        try:
            counts.append(count_transitive_actions(simple, n, budget) // math.factorial(n - 1))
        except ResourceLimitError:
            counts.append(None)
    return GroupCertificate(simple, presentation_abelianization(simple), order, tuple(counts))


# ---------------------------------------------------------------------------
# Structure sequence


@dataclass(frozen=True)
class StructureReport:
    passes: bool
    image_order: int
    ambient_order: int
    index: int | None
    in_parity_kernel: bool
    degree_even: bool
    generators: tuple[tuple[str, int], ...]
    messages: tuple[str, ...]


def structure_sequence_check(p: Presentation, branch: BranchData | None, d: int,
                             max_elements: int = 1_000_000) -> StructureReport:
    """Check that ``(theta, deg)`` maps onto the parity kernel in ``S_N x Z_d``.

    ``branch=None`` stands for the degenerate one-sheeted case.
    """
    if p.generators != d:
        raise ValueError(f"presentation has {p.generators} generators, expected {d}")
    if branch is None:
        perms = [Permutation.identity(1)] * d
        n = 1
    else:
        if branch.degree != d:
            raise ValueError("branch data length differs from d")
        for r in p.relators:
            if not branch.evaluate(r).is_identity():
                raise ValueError(f"theta is not a homomorphism: relator {r} maps to {branch.evaluate(r)}")
        perms = list(branch.transpositions)
        n = branch.sheets
    gens = [(t.images, 1 % d) for t in perms]
    ident = (tuple(range(1, n + 1)), 0)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for images, c in frontier:
            for gi, gc in gens:
                e = (tuple(gi[i - 1] for i in images), (c + gc) % d)
                if e not in seen:
                    seen.add(e)
                    nxt.append(e)
                    if len(seen) > max_elements:
                        raise ResourceLimitError(f"image subgroup exceeds {max_elements} elements")
        frontier = nxt
    ambient = math.factorial(n) * d
    even = d % 2 == 0
    in_kernel = even and all(Permutation(s).sign() * (-1) ** c == 1 for s, c in seen)
    index = ambient // len(seen) if ambient % len(seen) == 0 else None
    msgs = []
    if not even:
        msgs.append(f"d = {d} is odd: the parity map sign * (-1)^c is not defined on Z_d")
    if index != 2:
        msgs.append(f"image has index {index} in S_{n} x Z_{d}")
    ok = even and in_kernel and index == 2
    if ok:
        msgs.append("image is the kernel of the parity map")
    gen_desc = tuple((str(t), 1 % d) for t in perms)
    return StructureReport(ok, len(seen), ambient, index, in_kernel, even, gen_desc, tuple(msgs))


# ---------------------------------------------------------------------------
# Enumeration of branch data


@dataclass(frozen=True)
class ThetaEnumeration:
    classes: tuple[BranchData, ...]
    visited: int
    complete: bool
    diagnostic: str


def enumerate_thetas(spec: BraidedCurveSpec, N: int, bound: int = DEFAULT_THETA_BOUND) -> ThetaEnumeration:
    """All compatible branch data with ``N`` sheets, up to relabeling of sheets.

    Backtracks over transposition assignments, checking each relator and
    local-type condition as soon as all meridians it involves are assigned.
    Since all transpositions are conjugate, ``theta(x_1)`` is fixed to ``(1 2)``.
    """
    d = spec.degree
    if N < 2:
        return ThetaEnumeration((), 0, True, "no transpositions exist for N < 2")
    report = verify_braided_curve(spec)
    if not report.checksum_ok:
        return ThetaEnumeration((), 0, True, report.messages[0])
    # constraints keyed by the largest meridian index they involve
    checks: dict[int, list] = {i: [] for i in range(1, d + 1)}
    ident = Permutation.identity(N)
    rels = [projective_relator(d)] + [r for q in spec.factors for r in factor_relators(q)]
    for r in rels:
        checks[max(abs(a) for a in r.letters)].append(("rel", r))
    for q in spec.factors:
        m1, m2 = local_meridians(q)
        top = max(abs(a) for a in m1.letters + m2.letters)
        checks[top].append(("local", q))
    choices = transpositions(N)
    assignment: list[Permutation] = []
    found: dict[tuple, BranchData] = {}
    visited = 0
    complete = True

    def partial_ok(k: int) -> bool:
        imgs = assignment + [ident] * (d - k)
        theta = lambda w: w.evaluate(imgs, ident)  # noqa: E731
        for kind, obj in checks[k]:
            if kind == "rel":
                if not theta(obj).is_identity():
                    return False
            elif _local_check(obj, theta) is not None:
                return False
        return True

    def extend(k: int) -> bool:
        nonlocal visited, complete
        if k == d:
            b = BranchData(N, tuple(assignment))
            if b.is_transitive():
                found.setdefault(b.canonical_key(), b)
            return True
        options = choices[:1] if k == 0 else choices
        for t in options:
            visited += 1
            if visited > bound:
                complete = False
                return False
            assignment.append(t)
            if partial_ok(k + 1) and not extend(k + 1):
                assignment.pop()
                return False
            assignment.pop()
        return True

    extend(0)
    classes = tuple(found[k] for k in sorted(found))
    diag = (f"{len(classes)} class(es) after visiting {visited} nodes" if complete
            else f"search bound {bound} exceeded after {len(classes)} class(es)")
    return ThetaEnumeration(classes, visited, complete, diag)


# ---------------------------------------------------------------------------
# Abelian invariants of the stabilized group


@dataclass(frozen=True)
class LambdaQuotient:
    quotient: AbelianGroup
    multiplicity: int

    def summary(self) -> str:
        if self.multiplicity == 0 or self.quotient.is_trivial():
            return "0"
        q = str(self.quotient)
        return q if self.multiplicity == 1 else f"({q})^{self.multiplicity}"


def lambda_quotient(pairs: Sequence[Sequence[int]], N: int) -> LambdaQuotient:
    """``Z^2 / Lambda`` for ``Lambda`` spanned by the pairs, with multiplicity ``N - 1``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    for p in pairs:
        if len(p) != 2:
            raise ValueError(f"pair {p} does not have two entries")
    return LambdaQuotient(AbelianGroup.from_relations([list(p) for p in pairs], 2), N - 1)


# ---------------------------------------------------------------------------
# Moishezon's family


@dataclass(frozen=True)
class MoishezonData:
    p: int
    k: int
    degree: int
    cusps: int
    nodes: int
    canonical_relation: tuple[Fraction, Fraction]
    proportional: bool


def moishezon_family(p: int, k: int) -> MoishezonData:
    """Branch-curve numerics of the family ``X_{p,k}``.

    ``canonical_relation`` is ``(a, b)`` with
    ``c1(K) = a [omega] + b PD([T])``, i.e. the stated relation divided by ``p``.
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    d = 9 * p * (p - 1)
    cusps = 27 * (p - 1) * (4 * p - 5)
    nodes2 = 27 * (p - 1) * (p - 2) * (3 * p * p + 3 * p - 8)
    assert nodes2 % 2 == 0
    rel = (Fraction(6 * p - 9, p), Fraction((2 * p - 3) * k, p))
    return MoishezonData(p, k, d, cusps, nodes2 // 2, rel, k == 0)


__all__ = [
    "BraidedCurveSpec", "BranchData", "CurveReport", "GroupCertificate", "LambdaQuotient",
    "MoishezonData", "Presentation", "StructureReport", "ThetaEnumeration", "ThetaReport",
    "TietzeResult", "admissible_node_pair", "count_transitive_actions", "enumerate_thetas",
    "factor_relators", "group_certificate", "lambda_quotient", "local_meridians",
    "moishezon_family", "presentation_abelianization", "projective_relator",
    "stabilizing_relators", "structure_sequence_check", "theta_compatible",
    "tietze_simplify", "verify_braided_curve", "zvk_presentation",
]
