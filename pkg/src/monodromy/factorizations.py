"""Monodromy factorizations and their equivalence moves.

A factorization is an ordered tuple of group elements together with a
declared target for their left-to-right product.  Elements live in one of
four contexts:

``braid``   the braid group ``B_d``; factors are ``ConjugatedPower`` values
            ``c X_b^e c^-1`` or plain ``BraidWord``\\ s
``sl2z``    ``SL(2, Z)``; factors are words in ``A``, ``B`` (rank-2 free
            words, letter 1 = ``A``, letter 2 = ``B``) evaluated to matrices
``free``    a free group on symbolic twists; equality is free reduction
``matrix``  invertible integer ``n x n`` matrices (homology-level monodromy)
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, Sequence

from .groups import (
    BraidWord,
    FreeWord,
    SL2ZMatrix,
    SL2Z_LETTERS,
    braid_equal,
    format_word,
    full_twist,
    parse_braid,
    parse_free_word,
    parse_sl2z_word,
)
from .snf import determinant, identity as int_identity, matmul

DEFAULT_DEPTH = 6
DEFAULT_STATES = 100_000


class ContextMismatch(ValueError):
    """Factors or operands belong to different groups."""


class InadmissiblePair(ValueError):
    """An insertion or deletion was refused."""


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True)
class ConjugatedPower:
    """The braid ``conjugator * X_base^exponent * conjugator^-1``."""

    conjugator: BraidWord
    base: int
    exponent: int

    def __post_init__(self):
        if not 1 <= self.base < self.conjugator.strands:
            raise ValueError(f"base {self.base} out of range for B_{self.conjugator.strands}")
        if self.exponent == 0:
            raise ValueError("exponent must be non-zero")

    @property
    def strands(self) -> int:
        return self.conjugator.strands

    @property
    def local(self) -> BraidWord:
        return BraidWord.generator(self.strands, self.base, self.exponent)

    @property
    def word(self) -> BraidWord:
        c = self.conjugator
        return c * self.local * c.inverse()

    def conjugate(self, g: BraidWord) -> ConjugatedPower:
        return ConjugatedPower(g * self.conjugator, self.base, self.exponent)

    def inverse(self) -> ConjugatedPower:
        return ConjugatedPower(self.conjugator, self.base, -self.exponent)

    def __str__(self) -> str:
        inner = format_word(self.local.letters)
        if not self.conjugator.letters:
            return inner
        return f"({self.conjugator}) {inner} ({self.conjugator})^-1"


# ---------------------------------------------------------------------------
# Contexts


def _matrix(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in rows)


def matrix_inverse(m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Inverse of a unimodular integer matrix via the adjugate."""
    n = len(m)
    det = determinant(m)
    if det not in (1, -1):
        raise ValueError(f"matrix with determinant {det} is not invertible over Z")
    if n == 1:
        return ((det,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(list, m)) if k != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return _matrix([[det * x for x in row] for row in adj])


@dataclass(frozen=True)
class Context:
    """Group in which factors live; ``size`` is strands, rank or dimension."""

    kind: str
    size: int = 0

    def __post_init__(self):
        if self.kind not in ("braid", "sl2z", "free", "matrix"):
            raise ValueError(f"unknown context kind {self.kind!r}")
        if self.kind == "sl2z":
            object.__setattr__(self, "size", 2)
        elif self.kind == "matrix" and self.size == 0:
            pass  # H_1 of a sphere
        elif self.size < 1:
            raise ValueError(f"{self.kind} context needs a positive size")

    # element values ------------------------------------------------------

    def value(self, a):
        """The group element represented by factor ``a``."""
        if self.kind == "braid":
            return a.word if isinstance(a, ConjugatedPower) else a
        if self.kind == "sl2z":
            m = SL2ZMatrix.identity()
            gens = (SL2Z_LETTERS["A"], SL2Z_LETTERS["B"])
            for letter in a.letters:
                g = gens[abs(letter) - 1]
                m = m * (g if letter > 0 else g.inverse())
            return m
        return a

    def identity(self):
        if self.kind == "braid":
            return BraidWord(self.size)
        if self.kind == "sl2z":
            return FreeWord(2)
        if self.kind == "free":
            return FreeWord(self.size)
        return _matrix(int_identity(self.size))

    def multiply(self, a, b):
        if self.kind == "braid":
            return self.value(a) * self.value(b)
        if self.kind in ("sl2z", "free"):
            return a * b
        return _matrix(matmul(a, b))

    def inverse(self, a):
        if self.kind == "matrix":
            return matrix_inverse(a)
        return a.inverse()

    def conjugate(self, a, g):
        """``g a g^-1``, keeping the factor's representation."""
        if self.kind == "braid":
            g = self.value(g)
            if isinstance(a, ConjugatedPower):
                return a.conjugate(g)
            return g * a * g.inverse()
        return self.multiply(self.multiply(g, a), self.inverse(g))

    def product(self, factors: Iterable):
        result = self.identity()
        for a in factors:
            result = self.multiply(result, a)
        return self.value(result) if self.kind == "braid" else result

    def key(self, a):
        """Hashable canonical form of the element represented by ``a``."""
        v = self.value(a)
        if self.kind == "braid":
            return v.key()
        if self.kind == "sl2z":
            return v.rows()
        if self.kind == "free":
            return v.letters
        return _matrix(v)

    def equal(self, a, b) -> bool:
        if self.kind == "braid":
            return braid_equal(self.value(a), self.value(b))
        return self.key(a) == self.key(b)

    def is_identity(self, a) -> bool:
        return self.key(a) == self.key(self.identity())

    def generators(self) -> list:
        """Generators and their inverses, in canonical order."""
        if self.kind == "braid":
            return [BraidWord.generator(self.size, i, e)
                    for i in range(1, self.size) for e in (1, -1)]
        if self.kind in ("sl2z", "free"):
            return [FreeWord(self.size, (s * i,)) for i in range(1, self.size + 1) for s in (1, -1)]
        out = []
        for i in range(self.size):
            for j in range(self.size):
                if i != j:
                    for s in (1, -1):
                        m = [list(r) for r in int_identity(self.size)]
                        m[i][j] = s
                        out.append(_matrix(m))
        return out

    def check(self, a) -> None:
        """Raise ContextMismatch unless ``a`` belongs to this context."""
        ok = False
        if self.kind == "braid":
            ok = isinstance(a, (BraidWord, ConjugatedPower)) and a.strands == self.size
        elif self.kind in ("sl2z", "free"):
            ok = isinstance(a, FreeWord) and a.rank == self.size
        else:
            ok = (isinstance(a, tuple) and len(a) == self.size
                  and all(isinstance(r, tuple) and len(r) == self.size for r in a))
        if not ok:
            raise ContextMismatch(f"element {a!r} does not belong to context {self}")

    # text and JSON -------------------------------------------------------

    def parse(self, obj):
        if self.kind == "braid":
            if isinstance(obj, str):
                return parse_braid(obj, self.size)
            if "word" in obj:
                return parse_braid(obj["word"], self.size)
            return ConjugatedPower(parse_braid(obj.get("conjugator", ""), self.size),
                                   int(obj["base"]), int(obj.get("exponent", 1)))
        if self.kind == "sl2z":
            letters = []
            for name, e in parse_sl2z_word(obj):
                letters.extend([1 if name == "A" else 2] * e if e > 0 else [-1 if name == "A" else -2] * -e)
            return FreeWord(2, tuple(letters))
        if self.kind == "free":
            return parse_free_word(obj, self.size)
        m = _matrix(obj)
        self.check(m)
        return m

    def dump(self, a):
        if self.kind == "braid":
            if isinstance(a, ConjugatedPower):
                return {"conjugator": format_word(a.conjugator.letters), "base": a.base,
                        "exponent": a.exponent}
            return {"word": format_word(a.letters)}
        if self.kind == "sl2z":
            return format_word(a.letters, "?").replace("?1", "A").replace("?2", "B")
        if self.kind == "free":
            return format_word(a.letters)
        return [list(r) for r in a]

    def to_json(self) -> dict:
        if self.kind == "braid":
            return {"kind": "braid", "strands": self.size}
        if self.kind == "sl2z":
            return {"kind": "sl2z"}
        if self.kind == "free":
            return {"kind": "free", "rank": self.size}
        return {"kind": "matrix", "dimension": self.size}

    @classmethod
    def from_json(cls, obj: dict) -> Context:
        kind = str(obj.get("kind", "")).lower()
        if kind == "braid":
            return cls("braid", int(obj["strands"]))
        if kind == "sl2z":
            return cls("sl2z")
        if kind == "free":
            return cls("free", int(obj["rank"]))
        if kind == "matrix":
            return cls("matrix", int(obj["dimension"]))
        raise ValueError(f"unknown context kind {obj.get('kind')!r}")

    def __str__(self) -> str:
        return {"braid": f"B_{self.size}", "sl2z": "SL(2,Z)", "free": f"F_{self.size}",
                "matrix": f"GL({self.size},Z)"}[self.kind]


# ---------------------------------------------------------------------------
# Factorizations


@dataclass(frozen=True)
class Factorization:
    """Ordered factors whose product should equal ``target``.

    ``target_name`` is ``"identity"``, ``"full_twist"`` or ``None`` for an
    explicit element stored in ``target``.
    """

    context: Context
    factors: tuple = ()
    target_name: str | None = "identity"
    target: Any = None

    def __post_init__(self):
        factors = tuple(self.factors)
        for a in factors:
            self.context.check(a)
        object.__setattr__(self, "factors", factors)
        if self.target_name == "identity":
            object.__setattr__(self, "target", self.context.identity())
        elif self.target_name == "full_twist":
            if self.context.kind != "braid":
                raise ValueError("full_twist target needs a braid context")
            object.__setattr__(self, "target", full_twist(self.context.size))
        elif self.target_name is None:
            if self.target is None:
                raise ValueError("explicit target missing")
            self.context.check(self.target)
        else:
            raise ValueError(f"unknown target {self.target_name!r}")

    def __len__(self) -> int:
        return len(self.factors)

    def with_factors(self, factors) -> Factorization:
        return replace(self, factors=tuple(factors))

    def product(self):
        return self.context.product(self.factors)

    def key(self) -> tuple:
        return (len(self.factors), tuple(self.context.key(a) for a in self.factors))

    def same_target(self, other: Factorization) -> bool:
        return self.context.equal(self.target, other.target)

    def exponent_sum(self) -> int:
        if self.context.kind != "braid":
            raise ValueError("exponent sums are defined for braid contexts only")
        return sum(self.context.value(a).exponent_sum() for a in self.factors)

    def to_json(self) -> dict:
        out = {"context": self.context.to_json(),
               "factors": [self.context.dump(a) for a in self.factors]}
        if self.target_name is None:
            out["target"] = {"element": self.context.dump(self.target)}
        else:
            out["target"] = self.target_name
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Factorization:
        ctx = Context.from_json(obj["context"])
        factors = tuple(ctx.parse(f) for f in obj.get("factors", []))
        target = obj.get("target", "identity")
        if isinstance(target, dict):
            return cls(ctx, factors, None, ctx.parse(target["element"]))
        return cls(ctx, factors, target)


def verify_product(f: Factorization) -> bool:
    """Does the left-to-right product of the factors equal the target?"""
    return f.context.equal(f.product(), f.target)


def _check_index(f: Factorization, i: int) -> None:
    if not 1 <= i < len(f.factors):
        raise IndexError(f"Hurwitz index {i} outside 1..{len(f.factors) - 1}")


def hurwitz_move(f: Factorization, i: int, direction: int = 1) -> Factorization:
    """Hurwitz move at positions ``i, i+1`` (1-based).

    ``+1``: ``(a, b) -> (a b a^-1, a)``; ``-1``: ``(a, b) -> (b, b^-1 a b)``.
    """
    _check_index(f, i)
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    ctx = f.context
    fs = list(f.factors)
    a, b = fs[i - 1], fs[i]
    if direction == 1:
        fs[i - 1], fs[i] = ctx.conjugate(b, ctx.value(a) if ctx.kind == "braid" else a), a
    else:
        binv = ctx.inverse(ctx.value(b) if ctx.kind == "braid" else b)
        fs[i - 1], fs[i] = b, ctx.conjugate(a, binv)
    return f.with_factors(fs)


def global_conjugate(f: Factorization, g) -> Factorization:
    """Conjugate every factor, and the target, by ``g``."""
    ctx = f.context
    ctx.check(g)
    factors = [ctx.conjugate(a, g) for a in f.factors]
    if f.target_name is not None:
        # identity and the full twist are central
        return f.with_factors(factors)
    return replace(f, factors=tuple(factors), target=ctx.conjugate(f.target, g))


AdmissibleFn = Callable[[Any, Factorization], bool]


def insert_pair(f: Factorization, i: int, g, admissible: AdmissibleFn | None = None) -> Factorization:
    """Insert ``(g, g^-1)`` so that ``g`` becomes factor ``i`` (1-based).

    ``admissible(g, f)`` must hold; ``None`` accepts every pair.
    """
    ctx = f.context
    ctx.check(g)
    if not 1 <= i <= len(f.factors) + 1:
        raise IndexError(f"insertion position {i} outside 1..{len(f.factors) + 1}")
    if admissible is not None and not admissible(g, f):
        raise InadmissiblePair(f"pair ({g}, inverse) is not admissible")
    inv = g.inverse() if isinstance(g, ConjugatedPower) else ctx.inverse(g)
    fs = list(f.factors)
    fs[i - 1:i - 1] = [g, inv]
    return f.with_factors(fs)


def delete_pair(f: Factorization, i: int) -> Factorization:
    """Delete factors ``i, i+1`` provided they are mutually inverse."""
    _check_index(f, i)
    ctx = f.context
    a, b = f.factors[i - 1], f.factors[i]
    if not ctx.is_identity(ctx.multiply(a, b)):
        raise InadmissiblePair(f"factors {i} and {i + 1} are not mutually inverse")
    return f.with_factors(f.factors[:i - 1] + f.factors[i + 1:])


def twisted_fiber_sum(f1: Factorization, f2: Factorization, phi) -> Factorization:
    """``f1`` followed by ``phi^-1 a phi`` for each factor ``a`` of ``f2``."""
    if f1.context != f2.context:
        raise ContextMismatch(f"{f1.context} vs {f2.context}")
    ctx = f1.context
    for f in (f1, f2):
        if not ctx.is_identity(f.target):
            raise ValueError("twisted fiber sums need identity targets")
    ctx.check(phi)
    phi_inv = ctx.inverse(ctx.value(phi) if ctx.kind == "braid" else phi)
    twisted = [ctx.conjugate(a, phi_inv) for a in f2.factors]
    return Factorization(ctx, f1.factors + tuple(twisted), "identity")


# ---------------------------------------------------------------------------
# Move paths


@dataclass(frozen=True)
class Move:
    """One equivalence move.  ``kind`` is hurwitz, conjugate, insert or delete."""

    kind: str
    index: int = 0
    direction: int = 1
    element: Any = None

    def apply(self, f: Factorization, admissible: AdmissibleFn | None = None) -> Factorization:
        if self.kind == "hurwitz":
            return hurwitz_move(f, self.index, self.direction)
        if self.kind == "conjugate":
            return global_conjugate(f, self.element)
        if self.kind == "insert":
            return insert_pair(f, self.index, self.element, admissible)
        if self.kind == "delete":
            return delete_pair(f, self.index)
        raise ValueError(f"unknown move {self.kind!r}")

    def to_json(self, ctx: Context) -> dict:
        out: dict = {"move": self.kind}
        if self.kind == "hurwitz":
            out.update(index=self.index, direction=self.direction)
        elif self.kind == "conjugate":
            out["element"] = ctx.dump(self.element)
        elif self.kind == "insert":
            out.update(index=self.index, element=ctx.dump(self.element))
        else:
            out["index"] = self.index
        return out

    @classmethod
    def from_json(cls, obj: dict, ctx: Context) -> Move:
        kind = obj["move"]
        if kind == "hurwitz":
            return cls("hurwitz", int(obj["index"]), int(obj.get("direction", 1)))
        if kind == "conjugate":
            return cls("conjugate", element=ctx.parse(obj["element"]))
        if kind in ("insert", "insert_pair"):
            return cls("insert", int(obj["index"]), element=ctx.parse(obj["element"]))
        if kind in ("delete", "delete_pair"):
            return cls("delete", int(obj["index"]))
        raise ValueError(f"unknown move {kind!r}")

    def __str__(self) -> str:
        if self.kind == "hurwitz":
            return f"hurwitz({self.index}, {self.direction:+d})"
        if self.kind == "conjugate":
            return f"conjugate({self.element})"
        if self.kind == "insert":
            return f"insert_pair({self.index}, {self.element})"
        return f"delete_pair({self.index})"


@dataclass(frozen=True)
class MovePath:
    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def to_json(self, ctx: Context) -> list:
        return [m.to_json(ctx) for m in self.moves]

    @classmethod
    def from_json(cls, items: Sequence[dict], ctx: Context) -> MovePath:
        return cls(tuple(Move.from_json(m, ctx) for m in items))


def replay(f: Factorization, path: MovePath, admissible: AdmissibleFn | None = None) -> Factorization:
    for move in path.moves:
        f = move.apply(f, admissible)
    return f


def factorwise_equal(f: Factorization, g: Factorization) -> bool:
    return f.context == g.context and f.key() == g.key()


# ---------------------------------------------------------------------------
# Bounded search


@dataclass(frozen=True)
class SearchResult:
    found: bool
    path: MovePath | None
    visited: int
    depth_reached: int
    reason: str

    @property
    def status(self) -> str:
        return "found" if self.found else "not found within budget"


def _expand(f: Factorization, hurwitz: bool, conjugate: bool, delete: bool):
    if hurwitz:
        for i in range(1, len(f.factors)):
            for e in (1, -1):
                yield Move("hurwitz", i, e)
    if conjugate:
        for g in f.context.generators():
            yield Move("conjugate", element=g)
    if delete:
        ctx = f.context
        for i in range(1, len(f.factors)):
            if ctx.is_identity(ctx.multiply(f.factors[i - 1], f.factors[i])):
                yield Move("delete", i)


def orbit_search(f1: Factorization, f2: Factorization, depth: int = DEFAULT_DEPTH,
                 states: int = DEFAULT_STATES, *, hurwitz: bool = True,
                 conjugate: bool = False, delete: bool = False) -> SearchResult:
    """Breadth-first search for a move path from ``f1`` to ``f2``.

    Each level is processed in the canonical order of state keys, so the
    returned path is deterministic.  A negative result only means that no
    path exists within the budget.
    """
    if f1.context != f2.context:
        raise ContextMismatch(f"{f1.context} vs {f2.context}")
    if not f1.same_target(f2):
        raise ValueError("factorizations have different targets")
    if depth < 0 or states < 1:
        raise ValueError("budgets must be positive")
    goal = f2.key()
    if f1.key() == goal:
        return SearchResult(True, MovePath(), 1, 0, "identical")
    parents: dict = {f1.key(): None}
    level = [f1]
    for d in range(1, depth + 1):
        candidates = {}
        for f in level:
            fk = f.key()
            for move in _expand(f, hurwitz, conjugate, delete):
                g = move.apply(f)
                gk = g.key()
                if gk in parents:
                    continue
                parents[gk] = (fk, move)
                candidates[gk] = g
                if gk == goal:
                    moves = []
                    k = gk
                    while parents[k] is not None:
                        k, m = parents[k]
                        moves.append(m)
                    return SearchResult(True, MovePath(tuple(reversed(moves))), len(parents), d, "found")
                if len(parents) >= states:
                    return SearchResult(False, None, len(parents), d, f"state budget {states} exhausted")
        if not candidates:
            return SearchResult(False, None, len(parents), d, "orbit exhausted under the enabled moves")
        level = [candidates[k] for k in sorted(candidates)]
    return SearchResult(False, None, len(parents), depth, f"depth budget {depth} exhausted")
