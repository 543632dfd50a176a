"""Exact group elements: permutations, free words, braids and SL(2, Z).

Conventions used throughout the package:

* Strands, generators and sheets are numbered from 1.
* Products are read left to right.  For permutations ``p * q`` means
  "apply ``p``, then ``q``", so that a loop ``a b`` in a covering space is
  lifted by following ``a`` and then ``b``.
* Braids act on the free group by the Artin automorphisms
  ``x_i -> x_i x_{i+1} x_i^-1``, ``x_{i+1} -> x_i``.  The action is a
  homomorphism: ``artin_automorphism(u * v) == artin_automorphism(u) *
  artin_automorphism(v)`` where automorphisms compose as maps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product as _cartesian
from typing import Iterable, Sequence

# Reduced free words longer than this raise ResourceLimitError.
MAX_WORD_LENGTH = 2_000_000


class ResourceLimitError(RuntimeError):
    """A computation exceeded a configured size or step budget."""


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    if len(stack) > MAX_WORD_LENGTH:
        raise ResourceLimitError(f"free word of length {len(stack)} exceeds {MAX_WORD_LENGTH}")
    return tuple(stack)


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..degree`` stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def transposition(cls, degree: int, i: int, j: int) -> Permutation:
        if i == j or not (1 <= i <= degree and 1 <= j <= degree):
            raise ValueError(f"bad transposition ({i} {j}) in S_{degree}")
        images = list(range(1, degree + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Product of cycles, composed left to right."""
        result = cls.identity(degree)
        for cycle in cycles:
            images = list(range(1, degree + 1))
            cyc = list(cycle)
            if len(set(cyc)) != len(cyc) or any(not 1 <= c <= degree for c in cyc):
                raise ValueError(f"bad cycle {cyc} in S_{degree}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
            result = result * cls(tuple(images))
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images, start=1))

    def support(self) -> frozenset[int]:
        return frozenset(i for i, image in enumerate(self.images, start=1) if i != image)

    def is_transposition(self) -> bool:
        return len(self.support()) == 2

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``(1 2)(3 4)``; ``()`` is the identity."""
    stripped = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*[ ,]\s*\d+)*)?\s*\))+", stripped):
        raise ValueError(f"cannot parse permutation {text!r}")
    cycles = [[int(t) for t in re.split(r"[\s,]+", body.strip())]
              for body in re.findall(r"\(([^)]*)\)", stripped) if body.strip()]
    return Permutation.from_cycles(degree, cycles)


# ---------------------------------------------------------------------------
# Free groups


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in ``x_1..x_rank``; letter ``-i`` is ``x_i^-1``."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise ValueError(f"letter {a} out of range for rank {self.rank}")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def generator(cls, rank: int, i: int) -> FreeWord:
        return cls(rank, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return FreeWord(self.rank, self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(self.rank, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> FreeWord:
        base = self.letters if k >= 0 else self.inverse().letters
        return FreeWord(self.rank, base * abs(k))

    def conjugate(self, g: FreeWord) -> FreeWord:
        """``g self g^-1``."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self) -> tuple[int, ...]:
        sums = [0] * self.rank
        for a in self.letters:
            sums[abs(a) - 1] += 1 if a > 0 else -1
        return tuple(sums)

    def cyclic_reduction(self) -> tuple[FreeWord, FreeWord]:
        """Return ``(u, c)`` with ``self == u c u^-1`` and ``c`` cyclically reduced."""
        letters = self.letters
        k = 0
        while 2 * k + 1 < len(letters) and letters[k] == -letters[-1 - k]:
            k += 1
        return (FreeWord(self.rank, letters[:k]),
                FreeWord(self.rank, letters[k:len(letters) - k]))

    def is_conjugate_to(self, other: FreeWord) -> bool:
        c1 = self.cyclic_reduction()[1].letters
        c2 = other.cyclic_reduction()[1].letters
        if len(c1) != len(c2):
            return False
        if not c1:
            return True
        doubled = c1 + c1
        return any(doubled[i:i + len(c2)] == c2 for i in range(len(c1)))

    def evaluate(self, images: Sequence, identity):
        """Evaluate in another group given the images of the generators."""
        result = identity
        for a in self.letters:
            g = images[abs(a) - 1]
            result = result * (g if a > 0 else g.inverse())
        return result

    def __str__(self) -> str:
        return format_word(self.letters, "x") or "1"


def _substitute(letters: Sequence[int], images: Sequence[tuple[int, ...]],
                inverses: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        out.extend(images[a - 1] if a > 0 else inverses[-a - 1])
    return _reduce(out)


@dataclass(frozen=True)
class FreeAutomorphism:
    """Endomorphism of the free group given by generator images.

    ``(a * b)(w) == a(b(w))``: composition as maps, right factor first.
    """

    rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        if len(self.images) != self.rank or any(w.rank != self.rank for w in self.images):
            raise ValueError("automorphism images must be rank-matched words, one per generator")

    @classmethod
    def identity(cls, rank: int) -> FreeAutomorphism:
        return cls(rank, tuple(FreeWord.generator(rank, i) for i in range(1, rank + 1)))

    @classmethod
    def conjugation(cls, g: FreeWord) -> FreeAutomorphism:
        return cls(g.rank, tuple(FreeWord.generator(g.rank, i).conjugate(g)
                                 for i in range(1, g.rank + 1)))

    @cached_property
    def _inverse_images(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w.inverse().letters for w in self.images)

    def __call__(self, word: FreeWord) -> FreeWord:
        if word.rank != self.rank:
            raise ValueError("rank mismatch")
        letters = _substitute(word.letters, [w.letters for w in self.images], self._inverse_images)
        return FreeWord(self.rank, letters)

    def __mul__(self, other: FreeAutomorphism) -> FreeAutomorphism:
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return FreeAutomorphism(self.rank, tuple(self(w) for w in other.images))

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, start=1))

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w.letters for w in self.images)

    def __str__(self) -> str:
        return ", ".join(f"x{i} -> {w}" for i, w in enumerate(self.images, start=1))


# ---------------------------------------------------------------------------
# Braids


def _artin_step(images: list[tuple[int, ...]], letter: int) -> None:
    """Right-multiply the automorphism with images ``images`` by ``X_i^{+-1}``.

    ``images[j]`` holds the image of ``x_{j+1}``; with ``Phi' = Phi o phi``
    only the images of ``x_i`` and ``x_{i+1}`` change.
    """
    i = abs(letter) - 1
    a, b = images[i], images[i + 1]
    inv = lambda w: tuple(-c for c in reversed(w))  # noqa: E731
    if letter > 0:
        # phi: x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        images[i], images[i + 1] = _reduce(a + b + inv(a)), a
    else:
        # phi^-1: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
        images[i], images[i + 1] = b, _reduce(inv(b) + a + b)


@dataclass(frozen=True, eq=False)
class BraidWord:
    """Word in the half-twists ``X_1..X_{strands-1}``; letter ``-i`` is ``X_i^-1``.

    Equality and hashing go through the (faithful) Artin action, so two
    words are equal exactly when they represent the same braid.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) >= self.strands:
                raise ValueError(f"generator {a} out of range for B_{self.strands}")
        object.__setattr__(self, "letters", _reduce(letters))

    @classmethod
    def generator(cls, strands: int, i: int, exponent: int = 1) -> BraidWord:
        return cls(strands, (i if exponent > 0 else -i,) * abs(exponent))

    @cached_property
    def artin(self) -> FreeAutomorphism:
        images = [(i,) for i in range(1, self.strands + 1)]
        for a in self.letters:
            _artin_step(images, a)
        return FreeAutomorphism(self.strands, tuple(FreeWord(self.strands, w) for w in images))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("strand-count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> BraidWord:
        base = self.letters if k >= 0 else self.inverse().letters
        return BraidWord(self.strands, base * abs(k))

    def conjugate(self, g: BraidWord) -> BraidWord:
        """``g self g^-1``."""
        return g * self * g.inverse()

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters)

    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.artin.key()

    def __eq__(self, other) -> bool:
        if not isinstance(other, BraidWord):
            return NotImplemented
        return braid_equal(self, other)

    def __hash__(self) -> int:
        return hash((self.strands, self.key()))

    def is_identity(self) -> bool:
        return not self.letters or self.artin.is_identity()

    def __str__(self) -> str:
        return format_word(self.letters, "x") or "1"

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, {str(self)!r})"


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    """Decide ``u == v`` in ``B_d`` by comparing Artin automorphisms."""
    if u.strands != v.strands:
        raise ValueError(f"strand-count mismatch: {u.strands} vs {v.strands}")
    if u.letters == v.letters:
        return True
    if u.exponent_sum() != v.exponent_sum():
        return False
    return u.artin.key() == v.artin.key()


def braid_permutation(w: BraidWord) -> Permutation:
    perm = Permutation.identity(w.strands)
    for a in w.letters:
        perm = perm * Permutation.transposition(w.strands, abs(a), abs(a) + 1)
    return perm


def full_twist(d: int) -> BraidWord:
    """``(X_1 ... X_{d-1})^d``, the generator of the centre of ``B_d``."""
    if d < 2:
        raise ValueError("full twist needs d >= 2")
    return BraidWord(d, tuple(range(1, d)) * d)


def artin_automorphism(w: BraidWord) -> FreeAutomorphism:
    return w.artin


# ---------------------------------------------------------------------------
# Punctured spheres


@dataclass(frozen=True)
class InnerCheck:
    """Outcome of :func:`sphere_quotient_is_inner`.

    ``inner`` is ``None`` when the bounded search was inconclusive.
    """

    inner: bool | None
    conjugator: FreeWord | None = None
    reason: str = ""


def _cap_last_generator(w: FreeWord, n: int) -> FreeWord:
    # x_n = (x_1 ... x_{n-1})^-1 in <x_1..x_n | x_1...x_n>
    tail = tuple(-i for i in range(n - 1, 0, -1))
    out: list[int] = []
    for a in w.letters:
        if a == n:
            out.extend(tail)
        elif a == -n:
            out.extend(range(1, n))
        else:
            out.append(a)
    return FreeWord(n - 1, out)


def sphere_quotient_is_inner(a: FreeAutomorphism, n: int, window: int = 8) -> InnerCheck:
    """Is ``a`` inner on ``pi_1(S^2 - n points) = <x_1..x_n | x_1...x_n>``?

    The quotient is free on ``x_1..x_{n-1}``.  A conjugator must have the
    form ``u x_1^k`` where ``u`` is read off the cyclic reduction of the image
    of ``x_1``; ``k`` is searched in ``[-window, window]``.
    """
    if a.rank != n:
        raise ValueError(f"automorphism has rank {a.rank}, expected {n}")
    boundary = FreeWord(n, tuple(range(1, n + 1)))
    if not a(boundary).is_conjugate_to(boundary):
        raise ValueError("automorphism does not preserve x_1...x_n up to conjugacy")
    if n <= 1:
        return InnerCheck(True, FreeWord(max(n - 1, 0)), "trivial group")
    images = [_cap_last_generator(w, n) for w in a.images[: n - 1]]
    gens = [FreeWord.generator(n - 1, i) for i in range(1, n)]
    if n == 2:
        ok = images[0] == gens[0]
        return InnerCheck(ok, FreeWord(1) if ok else None, "quotient is infinite cyclic")
    for img, gen in zip(images, gens):
        if not img.is_conjugate_to(gen):
            return InnerCheck(False, None, f"image of {gen} is not conjugate to it")
    u, core = images[0].cyclic_reduction()
    if core != gens[0]:
        return InnerCheck(False, None, "image of x1 is not conjugate to x1")
    # The centraliser of x1 in a free group is <x1>, so any conjugator is
    # u x1^k; k is read off the leading x1-run of u^-1 a(x2) u.
    v = (u.inverse() * images[1] * u).letters
    k = 0
    while k < len(v) and v[k] == 1:
        k += 1
    if k == 0:
        while k < len(v) and v[k] == -1:
            k += 1
        k = -k
    if abs(k) > window:
        return InnerCheck(None, None, f"candidate exponent {k} outside window {window}")
    w = u * gens[0] ** k
    if all(gen.conjugate(w) == img for gen, img in zip(gens, images)):
        return InnerCheck(True, w, "conjugator found")
    return InnerCheck(False, None, "no conjugator of the form u x1^k")


# ---------------------------------------------------------------------------
# SL(2, Z)


@dataclass(frozen=True)
class SL2ZMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> SL2ZMatrix:
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __mul__(self, o: SL2ZMatrix) -> SL2ZMatrix:
        return SL2ZMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                          self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> SL2ZMatrix:
        return SL2ZMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> SL2ZMatrix:
        base = self if k >= 0 else self.inverse()
        result = SL2ZMatrix.identity()
        for _ in range(abs(k)):
            result = result * base
        return result

    def trace(self) -> int:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self == SL2ZMatrix.identity()

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


SL2Z_LETTERS = {"A": SL2ZMatrix(1, 1, 0, 1), "B": SL2ZMatrix(1, 0, -1, 1)}


def sl2z_eval(word: Sequence[tuple[str, int]] | str) -> SL2ZMatrix:
    """Multiply out a word in ``A``, ``B`` left to right."""
    if isinstance(word, str):
        word = parse_sl2z_word(word)
    result = SL2ZMatrix.identity()
    for letter, exponent in word:
        result = result * SL2Z_LETTERS[letter] ** exponent
    return result


# ---------------------------------------------------------------------------
# Text syntax

_TOKEN = re.compile(r"^([A-Za-z]+)(\d*)(?:\^(-?\d+))?$")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m or (m.group(3) is not None and int(m.group(3)) == 0):
            raise ValueError(f"unknown token {tok!r}")
        out.append((m.group(1), m.group(2), int(m.group(3) or 1)))
    return out


def _parse_indexed(text: str, prefix: str) -> list[int]:
    letters: list[int] = []
    for name, index, exponent in _tokens(text):
        if name != prefix or not index:
            raise ValueError(f"unknown token {name}{index!s}: expected {prefix}<i>")
        i = int(index)
        letters.extend([i if exponent > 0 else -i] * abs(exponent))
    return letters


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``"x1 x2^-1 x3^2"``; the empty string is the identity."""
    return BraidWord(strands, tuple(_parse_indexed(text, "x")))


def parse_free_word(text: str, rank: int) -> FreeWord:
    return FreeWord(rank, tuple(_parse_indexed(text, "x")))


def parse_sl2z_word(text: str) -> list[tuple[str, int]]:
    word = []
    for name, index, exponent in _tokens(text):
        if index or name not in SL2Z_LETTERS:
            raise ValueError(f"unknown SL(2,Z) token {name}{index}")
        word.append((name, exponent))
    return word


def format_word(letters: Sequence[int], prefix: str = "x") -> str:
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        a, k = letters[i], j - i
        exp = k if a > 0 else -k
        parts.append(f"{prefix}{abs(a)}" + ("" if exp == 1 else f"^{exp}"))
        i = j
    return " ".join(parts)


def format_sl2z_word(word: Sequence[tuple[str, int]]) -> str:
    return " ".join(f"{name}" + ("" if e == 1 else f"^{e}") for name, e in word)


def transpositions(n: int) -> list[Permutation]:
    return [Permutation.transposition(n, i, j) for i, j in _cartesian(range(1, n + 1), repeat=2) if i < j]
