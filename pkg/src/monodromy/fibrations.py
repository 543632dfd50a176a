"""Numerical invariants of Lefschetz pencils and fibrations.

Everything here is exact integer or rational arithmetic except the
globalization schedule, which runs in ``mpmath`` at 200 bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .snf import AbelianGroup


class NonIntegralHodgeDegree(ValueError):
    """The hyperelliptic signature formula produced a non-integer."""


class UnsupportedWordClass(ValueError):
    """No licensed signature formula applies to this twist word."""


# ---------------------------------------------------------------------------
# Data


@dataclass(frozen=True)
class TwistDatum:
    """One vanishing cycle.

    Non-separating cycles carry a nonzero homology class of length ``2g``;
    separating cycles carry ``genus_split`` ``h`` (the genus of one side).
    """

    separating: bool
    homology_class: tuple[int, ...] = ()
    genus_split: int | None = None

    def to_json(self) -> dict:
        if self.separating:
            return {"separating": True, "h": self.genus_split}
        return {"separating": False, "class": list(self.homology_class)}

    @classmethod
    def from_json(cls, obj: dict) -> TwistDatum:
        if obj.get("separating", False):
            return cls(True, tuple(obj.get("class", ())), obj.get("h"))
        return cls(False, tuple(int(x) for x in obj["class"]))


@dataclass(frozen=True)
class FibrationSpec:
    genus: int
    base_points: int = 0
    twists: tuple[TwistDatum, ...] = ()

    def __post_init__(self):
        g = self.genus
        if g < 0 or self.base_points < 0:
            raise ValueError("genus and base-point count must be non-negative")
        object.__setattr__(self, "twists", tuple(self.twists))
        for k, t in enumerate(self.twists, start=1):
            if t.separating:
                if any(t.homology_class):
                    raise ValueError(f"twist {k}: separating cycle with nonzero class")
                if t.genus_split is None or not 1 <= t.genus_split <= g // 2:
                    raise ValueError(f"twist {k}: separating cycle needs h in 1..{g // 2}")
            else:
                if len(t.homology_class) != 2 * g:
                    raise ValueError(f"twist {k}: class must have length {2 * g}")
                if not any(t.homology_class):
                    raise ValueError(f"twist {k}: non-separating cycle with zero class")

    @property
    def delta(self) -> int:
        return len(self.twists)

    def counts(self) -> tuple[int, list[int]]:
        """``(delta_0, [delta_1, ..., delta_{g//2}])``."""
        d0 = sum(1 for t in self.twists if not t.separating)
        dh = [sum(1 for t in self.twists if t.separating and t.genus_split == h)
              for h in range(1, self.genus // 2 + 1)]
        return d0, dh

    def to_json(self) -> dict:
        return {"genus": self.genus, "base_points": self.base_points,
                "twists": [t.to_json() for t in self.twists]}

    @classmethod
    def from_json(cls, obj: dict) -> FibrationSpec:
        return cls(int(obj["genus"]), int(obj.get("base_points", 0)),
                   tuple(TwistDatum.from_json(t) for t in obj.get("twists", [])))


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of a closed 4-manifold; ``c1^2 = 2 chi + 3 sigma``, ``c2 = chi``."""

    chi: int
    b1: int
    b2: int
    sigma: int
    c1_squared: int
    c2: int
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.c1_squared != 2 * self.chi + 3 * self.sigma or self.c2 != self.chi:
            raise AssertionError("inconsistent invariant report")
        if self.chi != 2 - 2 * self.b1 + self.b2:
            raise AssertionError("Betti numbers disagree with chi")

    @classmethod
    def build(cls, chi: int, b1: int, sigma: int, notes: Sequence[str] = ()) -> InvariantReport:
        return cls(chi, b1, chi - 2 + 2 * b1, sigma, 2 * chi + 3 * sigma, chi, tuple(notes))

    @property
    def b_plus(self) -> int:
        return (self.b2 + self.sigma) // 2

    def to_json(self) -> dict:
        return {"chi": self.chi, "b1": self.b1, "b2": self.b2, "sigma": self.sigma,
                "c1_squared": self.c1_squared, "c2": self.c2, "notes": list(self.notes)}


# ---------------------------------------------------------------------------
# Topology of the total space


def euler_characteristic(spec: FibrationSpec) -> int:
    """``4 - 4g - n + delta``."""
    return 4 - 4 * spec.genus - spec.base_points + spec.delta


def h1_quotient(spec: FibrationSpec) -> AbelianGroup:
    """``H_1(fiber) / <vanishing cycles>``, the first homology of the total space."""
    if spec.base_points:
        raise ValueError("h1_quotient needs a fibration (no base points)")
    classes = [t.homology_class for t in spec.twists if not t.separating]
    return AbelianGroup.from_relations(classes, 2 * spec.genus)


def separating_word_report(g: int, delta: int) -> InvariantReport:
    """Invariants forced on a hypothetical word of separating twists only.

    Each local model contributes -1 to the signature, so ``sigma = -delta``
    and ``c1^2 = 8 - 8g - delta``.
    """
    if g < 1:
        raise ValueError("separating twists need genus >= 1")
    if delta < 1:
        raise ValueError("at least one twist is required")
    chi = 4 - 4 * g + delta
    report = InvariantReport.build(chi, 2 * g, -delta)
    if report.c1_squared < -delta:
        note = (f"c1^2 = {report.c1_squared} < -delta = {-delta}: X would be rational or ruled, "
                "contradicting b1 = 2g with a separating-only word")
    else:
        note = f"c1^2 = {report.c1_squared} is not below -delta; the ruled-surface route does not apply"
    return InvariantReport.build(chi, 2 * g, -delta, [note])


@dataclass(frozen=True)
class HodgeResult:
    sigma: int
    hodge_degree: Fraction

    @property
    def hodge_degree_integral(self) -> bool:
        return self.hodge_degree.denominator == 1


def hyperelliptic_signature(g: int, delta0: int, delta_h: Sequence[int] = ()) -> HodgeResult:
    """Signature of a hyperelliptic fibration from its singular-fiber counts.

    ``(8g+4) c = g delta0 + sum 4h(g-h) delta_h`` and ``sigma = 4c - delta``.
    Raises NonIntegralHodgeDegree when ``sigma`` is not an integer.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    delta_h = list(delta_h)
    if len(delta_h) > g // 2:
        raise ValueError(f"at most {g // 2} separating counts for genus {g}")
    if delta0 < 0 or any(x < 0 for x in delta_h):
        raise ValueError("counts must be non-negative")
    numerator = g * delta0 + sum(4 * h * (g - h) * n for h, n in enumerate(delta_h, start=1))
    c = Fraction(numerator, 8 * g + 4)
    sigma = 4 * c - delta0 - sum(delta_h)
    if sigma.denominator != 1:
        raise NonIntegralHodgeDegree(
            f"sigma = {sigma} is not an integer (Hodge degree {c}); the word cannot be hyperelliptic")
    return HodgeResult(int(sigma), c)


def fibration_invariants(spec: FibrationSpec, hyperelliptic: bool | None = None) -> InvariantReport:
    """InvariantReport of the total space, when a signature formula applies.

    Genus 1 and 2 words are always hyperelliptic; higher genus needs the
    ``hyperelliptic`` flag.  For a pencil the base points are blown down,
    which raises the signature by one per point.
    """
    chi = euler_characteristic(spec)
    fib = FibrationSpec(spec.genus, 0, spec.twists)
    b1 = h1_quotient(fib).free_rank
    d0, dh = spec.counts()
    notes = []
    if spec.twists and d0 == 0:
        sigma = separating_word_report(spec.genus, spec.delta).sigma
        notes.append("separating-only word: no such positive relation exists")
    elif spec.genus == 0 and not spec.twists:
        sigma = 0
    elif spec.genus >= 1 and (spec.genus <= 2 or hyperelliptic):
        sigma = hyperelliptic_signature(spec.genus, d0, dh).sigma
        notes.append("signature from the hyperelliptic relation")
    else:
        raise UnsupportedWordClass("signature of a general twist word is not supported")
    if spec.base_points:
        sigma += spec.base_points
        notes.append(f"blown down {spec.base_points} base points")
    return InvariantReport.build(chi, b1, sigma, notes)


@dataclass(frozen=True)
class Genus3Report:
    nonholomorphic: bool
    condition_i: bool
    condition_ii: bool
    delta: int
    pairing: Fraction
    reasons: tuple[str, ...]


def genus3_nonholomorphic(chi: int, sigma: int) -> Genus3Report:
    """Sufficient conditions for a genus-3 fibration with irreducible fibers
    to be non-holomorphic.

    With ``delta = chi + 8`` and ``c = (sigma + delta)/4`` the pairing of the
    base sphere with ``9 c1(lambda) - [Delta_0] - 3 [Delta_1]`` is
    ``9c - delta``; a holomorphic fibration has this pairing non-negative.
    """
    delta = chi + 8
    c = Fraction(sigma + delta, 4)
    pairing = 9 * c - delta
    cond_i = (chi + 1) % 7 != 0
    cond_ii = pairing < 0
    reasons = (
        f"chi + 1 = {chi + 1} is {'not ' if cond_i else ''}divisible by 7",
        f"pairing with the hyperelliptic divisor = {pairing} ({'<' if cond_ii else '>='} 0)",
    )
    return Genus3Report(cond_i and cond_ii, cond_i, cond_ii, delta, pairing, reasons)


# ---------------------------------------------------------------------------
# Surfaces in 4-manifolds


def adjunction_genus(self_intersection: int, k_dot: int) -> int:
    """Genus of an embedded symplectic surface: ``1 + (S.S + K.S)/2``."""
    total = self_intersection + k_dot
    if total % 2:
        raise ValueError(f"S.S + K.S = {total} is odd")
    g = 1 + total // 2
    if g < 0:
        raise ValueError(f"adjunction gives negative genus {g}")
    return g


@dataclass(frozen=True)
class ComponentReport:
    index: int
    multiplicity: int
    self_intersection: int
    d_dot: int
    genus: int
    flagged: bool
    exceptional_sphere: bool


@dataclass(frozen=True)
class SmoothingReport:
    smoothable: bool
    components: tuple[ComponentReport, ...]


def smoothing_criterion(multiplicities: Sequence[int], intersections: Sequence[Sequence[int]],
                        genera: Sequence[int] | None = None) -> SmoothingReport:
    """Check ``D . S_j >= 0`` for the canonical divisor ``D = sum a_i S_i``.

    Component genera follow from adjunction with ``K = D``:
    ``D.S_j + S_j^2 = 2 g_j - 2``.  Declared ``genera`` are checked against it.
    """
    a = [int(x) for x in multiplicities]
    Q = [[int(x) for x in row] for row in intersections]
    m = len(a)
    if len(Q) != m or any(len(r) != m for r in Q):
        raise ValueError("intersection matrix must be square and match the multiplicities")
    if any(Q[i][j] != Q[j][i] for i in range(m) for j in range(m)):
        raise ValueError("intersection matrix is not symmetric")
    if any(x <= 0 for x in a):
        raise ValueError("multiplicities must be positive")
    comps = []
    for j in range(m):
        d_dot = sum(a[i] * Q[i][j] for i in range(m))
        try:
            g = adjunction_genus(Q[j][j], d_dot)
        except ValueError as exc:
            raise ValueError(f"component {j + 1}: inconsistent genus ({exc})") from None
        if genera is not None and genera[j] != g:
            raise ValueError(f"component {j + 1}: declared genus {genera[j]} but adjunction gives {g}")
        flagged = d_dot < 0
        comps.append(ComponentReport(j + 1, a[j], Q[j][j], d_dot, g, flagged,
                                     flagged and g == 0 and Q[j][j] == -1))
    return SmoothingReport(not any(c.flagged for c in comps), tuple(comps))


def gw_section_index(dim_m: int, c1_pairing: int) -> int:
    """Real index ``(dim M - 6) + 2 c1(TM).[f(S^2)]``."""
    if dim_m % 2 or dim_m < 2:
        raise ValueError(f"dimension {dim_m} must be even and at least 2")
    return dim_m - 6 + 2 * c1_pairing


@dataclass(frozen=True)
class ModuliDimension:
    dimension: int
    euler_sign: int


def taubes_moduli_dimension(b_plus: int, b1: int) -> ModuliDimension:
    """Projective dimension ``(b+ - b1 - 1)/2 - 1`` and obstruction sign ``(-1)^(N+1)``."""
    top = b_plus - b1 - 1
    if top % 2:
        raise ValueError(f"b+ - b1 - 1 = {top} is odd")
    n = top // 2 - 1
    if n < 0:
        raise ValueError(f"negative dimension {n}")
    return ModuliDimension(n, -1 if n % 2 == 0 else 1)


# ---------------------------------------------------------------------------
# Globalization schedule

SCHEDULE_PRECISION = 200


@dataclass(frozen=True)
class ScheduleResult:
    """Outcome of iterating ``beta_{N+1} = t(beta_N)/2``.

    ``log_inverse`` holds ``log(1/beta_N)`` for ``N = 0..steps``.  The check
    at index ``N`` compares ``exp(-N^(1/n)) beta_N`` with ``beta_{N+1}/2``.
    ``first_failure`` is the start of the violation run that persists to the
    last step (``None`` if the final check passes); ``first_violation`` is
    the earliest violating index of any kind.
    """

    kind: str
    parameter: object
    n: int
    steps: int
    log_inverse: tuple
    first_failure: int | None
    first_violation: int | None
    violations: int
    notes: tuple[str, ...] = field(default=())

    def beta(self, N: int):
        with mpmath.workprec(SCHEDULE_PRECISION):
            return mpmath.exp(-self.log_inverse[N])

    @property
    def survived(self) -> bool:
        return self.first_failure is None


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str) and "/" in x:
        return _mpf(Fraction(x))
    return mpmath.mpf(str(x)) if isinstance(x, float) else mpmath.mpf(x)


def donaldson_schedule(kind: str, parameter, n: int, steps: int, beta0=Fraction(1, 4)) -> ScheduleResult:
    """Iterate the globalization schedule in ``L = log(1/beta)`` coordinates.

    ``kind="log"``: ``t(beta) = beta / log(1/beta)^d`` so
    ``L' = L + d log L + log 2``.  ``kind="poly"``: ``t(beta) = beta^q`` so
    ``L' = q L + log 2``.  Constant prefactors are set to 1.
    """
    if kind not in ("log", "poly"):
        raise ValueError("kind must be 'log' or 'poly'")
    if steps < 1 or n < 1:
        raise ValueError("steps and n must be positive")
    with mpmath.workprec(SCHEDULE_PRECISION):
        b0 = _mpf(beta0)
        if not 0 < b0 < mpmath.exp(-1):
            raise ValueError(f"beta0 = {beta0} is outside (0, 1/e)")
        p = _mpf(parameter)
        ln2 = mpmath.log(2)
        L = [-mpmath.log(b0)]
        checks = []
        for N in range(steps):
            cur = L[-1]
            nxt = cur + p * mpmath.log(cur) + ln2 if kind == "log" else p * cur + ln2
            L.append(nxt)
            checks.append(nxt + ln2 < cur + mpmath.mpf(N) ** (mpmath.mpf(1) / n))
        violations = [N for N, ok in enumerate(checks) if not ok]
        first_failure = None
        if violations and violations[-1] == steps - 1:
            first_failure = steps - 1
            while first_failure > 0 and not checks[first_failure - 1]:
                first_failure -= 1
        notes = ("constant prefactors in t(beta) set to 1",
                 f"working precision {SCHEDULE_PRECISION} bits")
        return ScheduleResult(kind, parameter, n, steps, tuple(L), first_failure,
                              violations[0] if violations else None, len(violations), notes)
