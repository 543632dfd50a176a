"""Directed Fukaya categories of curve systems on a punctured sphere.

Curves ``L_1..L_r`` are given as a combinatorial map.  Each dart ``d`` has
``next[d]`` (the following dart of the face on its left), ``opposite[d]``
and the label of the curve it runs along.  ``next[opposite[d]]`` rotates
around the tail vertex of ``d``.

Structure maps count puncture-free embedded polygons with convex corners,
with ``Z/2`` coefficients.  Walking a polygon boundary with the polygon on
the left, the arcs lie on ``L_{i_0}, ..., L_{i_n}`` with
``i_0 < ... < i_n``; the corner between the arcs on ``L_{i_{k-1}}`` and
``L_{i_k}`` is the input ``p_k`` and the corner from ``L_{i_n}`` back to
``L_{i_0}`` is the output of ``mu^n(p_1, ..., p_n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .groups import ResourceLimitError

DEFAULT_POLYGON_CAP = 1_000_000


class InvalidArrangement(ValueError):
    """An arrangement invariant fails; ``problems`` lists each violation."""

    def __init__(self, problems: Sequence[str]):
        super().__init__("; ".join(problems))
        self.problems = tuple(problems)


class ImmersedPolygonUnsupported(RuntimeError):
    """A face configuration of multiplicity >= 2 could bound an immersed polygon."""


# ---------------------------------------------------------------------------
# Arrangements


@dataclass(frozen=True)
class CurveArrangement:
    next: tuple[int, ...]
    opposite: tuple[int, ...]
    curve: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]
    punctures: tuple[int, ...]
    curves: tuple[tuple[int, ...], ...]
    names: Mapping[int, str] = field(default_factory=dict)

    @property
    def darts(self) -> range:
        return range(len(self.next))

    @property
    def r(self) -> int:
        return len(self.curves)

    def rotate(self, d: int) -> int:
        """Next outgoing dart around the tail of ``d``."""
        return self.next[self.opposite[d]]

    def vertex_darts(self) -> list[tuple[int, ...]]:
        """Outgoing darts around each vertex, in rotation order, starting at the least dart."""
        seen = set()
        out = []
        for d in self.darts:
            if d in seen:
                continue
            orbit = [d]
            seen.add(d)
            e = self.rotate(d)
            while e != d:
                if e in seen:
                    raise InvalidArrangement([f"rotation around dart {d} does not close"])
                orbit.append(e)
                seen.add(e)
                e = self.rotate(e)
            out.append(tuple(orbit))
        return out

    def face_of(self) -> list[int]:
        f = [-1] * len(self.next)
        for k, face in enumerate(self.faces):
            for d in face:
                f[d] = k
        return f

    def boundary_counts(self) -> list[int]:
        """Number of next-cycles in each face (1 for a disc, 2 for an annulus)."""
        counts = []
        for face in self.faces:
            rest = set(face)
            k = 0
            while rest:
                d = min(rest)
                while d in rest:
                    rest.discard(d)
                    d = self.next[d]
                k += 1
            counts.append(k)
        return counts

    def vertex_of(self) -> list[int]:
        v = [-1] * len(self.next)
        for k, orbit in enumerate(self.vertex_darts()):
            for d in orbit:
                v[d] = k
        return v

    def straight(self, d: int) -> int:
        """The dart continuing ``d`` along its curve through the head vertex."""
        e = self.opposite[d]
        valence = 1
        f = self.rotate(e)
        while f != e:
            valence += 1
            f = self.rotate(f)
        for _ in range(valence // 2):
            e = self.rotate(e)
        return e

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "darts": [{"id": d, "next": self.next[d], "opposite": self.opposite[d],
                       "curve": self.curve[d]} for d in self.darts],
            "faces": [{"darts": list(f), "punctures": p} for f, p in zip(self.faces, self.punctures)],
            "curves": [list(c) for c in self.curves],
        }
        if self.names:
            out["generators"] = {name: d for d, name in sorted(self.names.items())}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> CurveArrangement:
        darts = sorted(obj["darts"], key=lambda x: x["id"])
        if [x["id"] for x in darts] != list(range(len(darts))):
            raise InvalidArrangement(["dart ids must be 0..n-1"])
        names = {int(d): str(name) for name, d in obj.get("generators", {}).items()}
        return cls(tuple(int(x["next"]) for x in darts), tuple(int(x["opposite"]) for x in darts),
                   tuple(int(x["curve"]) for x in darts),
                   tuple(tuple(f["darts"]) for f in obj["faces"]),
                   tuple(int(f.get("punctures", 0)) for f in obj["faces"]),
                   tuple(tuple(c) for c in obj["curves"]), names)


@dataclass(frozen=True)
class ArrangementReport:
    valid: bool
    V: int
    E: int
    F: int
    genus: int | None
    punctures: tuple[int, ...]
    problems: tuple[str, ...]


def validate_arrangement(arr: CurveArrangement, raise_on_error: bool = False) -> ArrangementReport:
    """Check every structural invariant of a curve arrangement."""
    problems: list[str] = []
    n = len(arr.next)
    V = E = F = 0
    genus = None
    if len(arr.opposite) != n or len(arr.curve) != n:
        problems.append("next, opposite and curve must have one entry per dart")
    elif sorted(arr.next) != list(range(n)):
        problems.append("next is not a permutation of the darts")
    elif sorted(arr.opposite) != list(range(n)):
        problems.append("opposite is not a permutation of the darts")
    if problems:
        return _report(problems, 0, 0, 0, None, arr, raise_on_error)
    for d in arr.darts:
        o = arr.opposite[d]
        if o == d or arr.opposite[o] != d:
            problems.append(f"dart {d}: opposite is not a fixed-point-free involution")
        elif arr.curve[o] != arr.curve[d]:
            problems.append(f"dart {d}: opposite dart lies on another curve")
        if not 1 <= arr.curve[d] <= arr.r:
            problems.append(f"dart {d}: curve label {arr.curve[d]} outside 1..{arr.r}")
    # faces must be exactly the next-cycles
    listed = [d for f in arr.faces for d in f]
    if sorted(listed) != list(range(n)):
        problems.append("faces do not partition the darts")
    for k, face in enumerate(arr.faces):
        members = set(face)
        for d in face:
            if arr.next[d] not in members:
                problems.append(f"face {k}: next of dart {d} leaves the face")
                break
    for k, p in enumerate(arr.punctures):
        if p < 0:
            problems.append(f"face {k}: negative puncture count")
    if sum(arr.punctures) < 1:
        problems.append("no punctures: the surface must be a punctured sphere")
    if problems:
        return _report(problems, 0, 0, 0, None, arr, raise_on_error)
    try:
        vertices = arr.vertex_darts()
    except InvalidArrangement as exc:
        return _report(list(exc.problems), 0, 0, 0, None, arr, raise_on_error)
    V, E, F = len(vertices), n // 2, len(arr.faces)
    chi = V - E + sum(2 - b for b in arr.boundary_counts())
    if chi % 2 == 0:
        genus = (2 - chi) // 2
    if chi != 2:
        problems.append(f"V - E + F = {chi}, expected 2 for a sphere")
    for orbit in vertices:
        labels = [arr.curve[d] for d in orbit]
        if len(orbit) == 4:
            if labels[0] == labels[1] or labels[0] != labels[2] or labels[1] != labels[3]:
                problems.append(f"vertex at dart {orbit[0]}: labels {labels} do not alternate between two curves")
        elif len(orbit) == 2:
            if labels[0] != labels[1]:
                problems.append(f"vertex at dart {orbit[0]}: 2-valent vertex joins two curves")
        else:
            problems.append(f"vertex at dart {orbit[0]}: valence {len(orbit)} is not 4 (or 2 for a marker)")
    if problems:
        return _report(problems, V, E, F, genus, arr, raise_on_error)
    # curves close up and cover their darts
    for i, c in enumerate(arr.curves, start=1):
        if not c:
            problems.append(f"curve {i} is empty")
            continue
        for k, d in enumerate(c):
            if arr.curve[d] != i:
                problems.append(f"curve {i}: dart {d} is labelled {arr.curve[d]}")
                break
            if arr.straight(d) != c[(k + 1) % len(c)]:
                problems.append(f"curve {i}: dart {c[(k + 1) % len(c)]} does not continue dart {d}")
                break
        own = {d for d in arr.darts if arr.curve[d] == i}
        covered = set(c) | {arr.opposite[d] for d in c}
        if covered != own or len(set(c)) != len(c) or set(c) & {arr.opposite[d] for d in c}:
            problems.append(f"curve {i} does not traverse each of its edges exactly once")
    if problems:
        return _report(problems, V, E, F, genus, arr, raise_on_error)
    # exactness: punctures on both sides of every curve
    face_of = arr.face_of()
    for i, c in enumerate(arr.curves, start=1):
        sides = []
        for start in (face_of[c[0]], face_of[arr.opposite[c[0]]]):
            seen = {start}
            stack = [start]
            while stack:
                f = stack.pop()
                for d in arr.faces[f]:
                    if arr.curve[d] == i:
                        continue
                    g = face_of[arr.opposite[d]]
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
            sides.append(seen)
        if sides[0] & sides[1]:
            problems.append(f"curve {i} does not separate the sphere")
        for side in sides:
            if not sum(arr.punctures[f] for f in side):
                problems.append(f"curve {i} bounds an unpunctured disc")
    return _report(problems, V, E, F, genus, arr, raise_on_error)


def _report(problems, V, E, F, genus, arr, raise_on_error):
    if problems and raise_on_error:
        raise InvalidArrangement(problems)
    return ArrangementReport(not problems, V, E, F, genus, tuple(arr.punctures), tuple(problems))


# ---------------------------------------------------------------------------
# Generators


def identity_name(i: int) -> str:
    return f"id{i}"


@dataclass(frozen=True)
class Generator:
    name: str
    source: int
    target: int
    vertex: int | None  # None for identities


def _generators(arr: CurveArrangement) -> dict[int, Generator]:
    """Intersection-point generators keyed by vertex index."""
    out = {}
    counters: dict[tuple[int, int], int] = {}
    for v, orbit in enumerate(arr.vertex_darts()):
        if len(orbit) != 4:
            continue
        i, j = sorted({arr.curve[d] for d in orbit})
        name = next((arr.names[d] for d in orbit if d in arr.names), None)
        if name is None:
            counters[(i, j)] = counters.get((i, j), 0) + 1
            name = f"p{i}_{j}_{counters[(i, j)]}"
        out[v] = Generator(name, i, j, v)
    return out


def hom_basis(arr: CurveArrangement, i: int, j: int) -> list[str]:
    """Generator names of ``Hom(L_i, L_j)``."""
    if not (1 <= i <= arr.r and 1 <= j <= arr.r):
        raise IndexError(f"object index outside 1..{arr.r}")
    if i == j:
        return [identity_name(i)]
    if i > j:
        return []
    return sorted(g.name for g in _generators(arr).values() if (g.source, g.target) == (i, j))


# ---------------------------------------------------------------------------
# Polygons


@dataclass(frozen=True)
class Polygon:
    faces: frozenset[int]
    corners: tuple[int, ...]   # vertices of convex corners, counter-clockwise
    arcs: tuple[int, ...]      # curve of the arc leaving each corner


def _sector_ok(in_s: Sequence[bool]) -> bool:
    k = sum(in_s)
    n = len(in_s)
    if k in (0, 1, n):
        return True
    if k == 2 and n == 4:
        return any(in_s[i] and in_s[(i + 1) % 4] for i in range(4))
    return False


def enumerate_polygons(arr: CurveArrangement, cap: int = DEFAULT_POLYGON_CAP) -> list[Polygon]:
    """All embedded puncture-free discs bounded by curve arcs with convex corners."""
    face_of = arr.face_of()
    vertex_of = arr.vertex_of()
    vertices = arr.vertex_darts()
    holes = arr.boundary_counts()
    free = [f for f in range(len(arr.faces)) if arr.punctures[f] == 0]
    free_set = set(free)
    nbrs: dict[int, set[int]] = {f: set() for f in free}
    for d in arr.darts:
        f, g = face_of[d], face_of[arr.opposite[d]]
        if f in free_set and g in free_set and f != g:
            nbrs[f].add(g)
    polygons = []
    visited = 0

    def consider(S: frozenset[int]):
        # local sector conditions
        touched = {vertex_of[d] for f in S for d in arr.faces[f]}
        for v in touched:
            if not _sector_ok([face_of[d] in S for d in vertices[v]]):
                return
        edges = {min(d, arr.opposite[d]) for f in S for d in arr.faces[f]}
        if len(touched) - len(edges) + sum(2 - holes[f] for f in S) != 1:
            return
        boundary = [d for f in S for d in arr.faces[f] if face_of[arr.opposite[d]] not in S]
        if not boundary:
            return
        start = min(boundary)
        cycle = [start]
        corners = []
        arcs_after = []
        d = start
        while True:
            e = arr.next[d]
            sectors = 1
            while face_of[arr.opposite[e]] in S:
                e = arr.next[arr.opposite[e]]
                sectors += 1
            if arr.curve[e] != arr.curve[d]:
                if sectors != 1:
                    return
                corners.append(vertex_of[e])
                arcs_after.append(arr.curve[e])
            if e == start:
                break
            cycle.append(e)
            d = e
        if len(cycle) != len(boundary):
            return
        polygons.append(Polygon(S, tuple(corners), tuple(arcs_after)))

    def extend(sub: frozenset[int], ext: set[int], root: int):
        nonlocal visited
        visited += 1
        if visited > cap:
            raise ResourceLimitError(f"polygon search visited more than {cap} face sets")
        consider(sub)
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            excl = {u for u in nbrs[w] if u > root and u not in sub
                    and not any(u in nbrs[s] or u == s for s in sub)}
            extend(sub | {w}, ext | excl, root)

    for root in free:
        extend(frozenset([root]), {u for u in nbrs[root] if u > root}, root)
    return polygons


def _vertex_routings(arr: CurveArrangement, orbit: Sequence[int], flow: Mapping[int, int] | Sequence[int]):
    """Ways to carry boundary flow through one vertex.

    Every incoming unit either continues along its curve or turns left into
    a convex corner.  Yields ``(moves, corners)`` with ``moves`` a tuple of
    ``(in_dart, out_dart)`` pairs, one per unit.
    """
    choices = []
    for o in orbit:
        d = arr.opposite[o]
        if not flow[d]:
            continue
        s, left = arr.straight(d), arr.next[d]
        if s == left:
            choices.append([(((d, s),) * flow[d], 0)])
        else:
            choices.append([(((d, s),) * k + ((d, left),) * (flow[d] - k), flow[d] - k)
                            for k in range(flow[d] + 1)])
    for combo in itertools.product(*choices):
        moves = tuple(mv for part, _ in combo for mv in part)
        if all(sum(1 for _, o2 in moves if o2 == o) == flow[o] for o in orbit):
            yield moves, sum(c for _, c in combo)


def _single_boundary_cycle(arr: CurveArrangement, moves: Sequence[tuple[int, int]],
                           flow: Sequence[int], budget: int) -> list[int] | None:
    """Search unit labelings so the routed boundary is one closed loop.

    Returns the curves of the boundary arcs in order, or None.
    """
    slots: dict[int, list[int]] = {}
    for k, (_, o) in enumerate(moves):
        slots.setdefault(o, []).append(k)
    ambiguous = [o for o, ks in slots.items() if len(ks) > 1]
    total = sum(flow)
    tried = 0
    for perms in itertools.product(*(itertools.permutations(slots[o]) for o in ambiguous)):
        tried += 1
        if tried > budget:
            return None
        # move k lands on unit (o, index of k among slots[o])
        land = {}
        for o, ks in slots.items():
            for idx, k in enumerate(ks):
                land[k] = (o, idx)
        for o, perm in zip(ambiguous, perms):
            for idx, k in enumerate(perm):
                land[k] = (o, idx)
        leave: dict[tuple[int, int], int] = {}
        count: dict[int, int] = {}
        for k, (d, _) in enumerate(moves):
            leave[(d, count.get(d, 0))] = k
            count[d] = count.get(d, 0) + 1
        start = land[0]
        unit, seen, arcs = start, 0, []
        while True:
            k = leave[unit]
            d, o = moves[k]
            if arr.curve[o] != arr.curve[d]:
                arcs.append(arr.curve[o])
            unit = land[k]
            seen += 1
            if unit == start or seen > total:
                break
        if unit == start and seen == total:
            return arcs
    return None


def _monotone_cycle(seq: Sequence[int]) -> bool:
    n = len(seq)
    if len(set(seq)) != n:
        return False
    drops = sum(1 for i in range(n) if seq[i] > seq[(i + 1) % n])
    rises = n - drops
    return drops == 1 or rises == 1


def check_immersed_candidates(arr: CurveArrangement, cap: int = DEFAULT_POLYGON_CAP) -> None:
    """Raise ImmersedPolygonUnsupported if some non-embedded 2-chain could be
    an immersed polygon contributing to a structure map.

    Multiplicities run over ``{0, 1, 2}`` on puncture-free faces.  The induced
    boundary flow must route through every vertex by straight continuation or
    convex left turns, close up into a single loop whose arcs lie on distinct
    curves in cyclic order, and have Euler measure ``1 - corners/4``.  A chain
    is non-embedded when some face has multiplicity 2 or the boundary passes a
    vertex twice.
    """
    face_of = arr.face_of()
    vertices = arr.vertex_darts()
    free = [f for f in range(len(arr.faces)) if arr.punctures[f] == 0]
    if not free:
        return
    order = {f: k for k, f in enumerate(free)}
    vertex_ready: dict[int, list[int]] = {k: [] for k in range(len(free))}
    for v, orbit in enumerate(vertices):
        last = max((order[face_of[d]] for d in orbit if face_of[d] in order), default=None)
        if last is not None:
            vertex_ready[last].append(v)
    m = [0] * len(arr.faces)
    vertex_of = arr.vertex_of()
    # Euler measures in quarters
    face_euler = [4 * (2 - b) - sum(1 for d in face if len(vertices[vertex_of[arr.next[d]]]) == 4)
                  for face, b in zip(arr.faces, arr.boundary_counts())]
    nodes = 0

    def flow_of() -> list[int]:
        return [max(0, m[face_of[d]] - m[face_of[arr.opposite[d]]]) for d in arr.darts]

    local: dict[tuple, bool] = {}

    def vertex_ok(v: int) -> bool:
        key = (v, tuple(m[face_of[d]] for d in vertices[v]))
        if key not in local:
            flow = {}
            for o in vertices[v]:
                for d in (o, arr.opposite[o]):
                    flow[d] = max(0, m[face_of[d]] - m[face_of[arr.opposite[d]]])
            local[key] = next(_vertex_routings(arr, vertices[v], flow), None) is not None
        return local[key]

    def full_check() -> bool:
        corners = 4 - sum(m[f] * face_euler[f] for f in range(len(arr.faces)))
        if not 2 <= corners <= arr.r:
            return False
        flow = flow_of()
        if not any(flow):
            return False
        passes = [sum(flow[arr.opposite[o]] for o in orbit) for orbit in vertices]
        if 2 not in m and max(passes) < 2:
            return False  # embedded; counted by enumerate_polygons
        options = [list(_vertex_routings(arr, orbit, flow)) if passes[v] else [((), 0)]
                   for v, orbit in enumerate(vertices)]
        for combo in itertools.product(*options):
            if sum(c for _, c in combo) != corners:
                continue
            moves = [mv for part, _ in combo for mv in part]
            arcs = _single_boundary_cycle(arr, moves, flow, cap)
            if arcs is not None and len(arcs) == corners and _monotone_cycle(arcs):
                return True
        return False

    def assign(k: int):
        nonlocal nodes
        if k == len(free):
            if full_check():
                raise ImmersedPolygonUnsupported(
                    "a non-embedded 2-chain passes the immersed-polygon tests; "
                    "only embedded polygons are counted")
            return
        for value in (0, 1, 2):
            nodes += 1
            if nodes > cap:
                raise ResourceLimitError(f"immersed-polygon screen exceeded {cap} nodes")
            m[free[k]] = value
            if all(vertex_ok(v) for v in vertex_ready[k]):
                assign(k + 1)
        m[free[k]] = 0

    assign(0)


# ---------------------------------------------------------------------------
# Categories


Combination = frozenset  # Z/2 combination of generator names


@dataclass
class FukayaData:
    """Objects ``1..r``, hom bases and ``mu`` tables over ``Z/2``.

    ``mu[n]`` maps an input tuple of generator names to the set of output
    generators with coefficient 1.  Missing entries are zero.
    """

    r: int
    homs: dict[tuple[int, int], list[str]]
    mu: dict[int, dict[tuple[str, ...], frozenset[str]]]
    hom_of: dict[str, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), gens in self.homs.items():
            if i > j and gens:
                raise AssertionError("directedness violated")
            for g in gens:
                self.hom_of[g] = (i, j)

    def rank(self, i: int, j: int) -> int:
        return len(self.homs.get((i, j), []))

    def mu_value(self, inputs: Sequence[str]) -> frozenset[str]:
        n = len(inputs)
        table = self.mu.get(n)
        if table is None:
            # a polygon has at most r corners, so mu^n vanishes for n >= r
            if n >= max(self.r, 3):
                return frozenset()
            raise KeyError(f"no mu^{n} table")
        return table.get(tuple(inputs), frozenset())

    def to_json(self) -> dict:
        return {
            "objects": self.r,
            "homs": {f"{i},{j}": g for (i, j), g in sorted(self.homs.items())},
            "mu": {str(n): {" ".join(k): sorted(v) for k, v in sorted(t.items()) if v}
                   for n, t in sorted(self.mu.items())},
        }


def _mu_tables(arr: CurveArrangement, polygons: Iterable[Polygon], max_n: int) -> dict:
    gens = _generators(arr)
    tables: dict[int, dict[tuple[str, ...], set[str]]] = {n: {} for n in range(1, max_n + 1)}
    for poly in polygons:
        n = len(poly.corners) - 1
        if n < 1 or n > max_n:
            continue
        # arcs[k] is the curve after corner k; find the rotation with increasing curves
        arcs = poly.arcs
        m = len(arcs)
        for s in range(m):
            seq = [arcs[(s + k) % m] for k in range(m)]
            if all(seq[k] < seq[k + 1] for k in range(m - 1)):
                # corner s precedes the arc on L_{i_0}: it is the output
                out_gen = gens[poly.corners[s]]
                assert (out_gen.source, out_gen.target) == (seq[0], seq[-1])
                out = out_gen.name
                inputs = tuple(gens[poly.corners[(s + k) % m]].name for k in range(1, m))
                key = tables[n].setdefault(inputs, set())
                key ^= {out}
                break
    return tables


def compute_category(arr: CurveArrangement, max_n: int | None = None,
                     cap: int = DEFAULT_POLYGON_CAP) -> FukayaData:
    """Hom bases and ``mu^1..mu^max_n`` (default ``r - 1``, at least 2)."""
    validate_arrangement(arr, raise_on_error=True)
    r = arr.r
    if max_n is None:
        max_n = max(r - 1, 2)
    check_immersed_candidates(arr, cap)
    homs = {(i, j): hom_basis(arr, i, j) for i in range(1, r + 1) for j in range(1, r + 1)}
    polygons = enumerate_polygons(arr, cap)
    raw = _mu_tables(arr, polygons, max_n)
    mu: dict[int, dict[tuple[str, ...], frozenset[str]]] = {
        n: {k: frozenset(v) for k, v in sorted(t.items()) if v} for n, t in raw.items()}
    # strict units
    mu.setdefault(2, {})
    for i in range(1, r + 1):
        e = identity_name(i)
        mu[2][(e, e)] = frozenset([e])
        for j in range(i + 1, r + 1):
            for g in homs[(i, j)]:
                mu[2][(e, g)] = frozenset([g])
                mu[2][(g, identity_name(j))] = frozenset([g])
    return FukayaData(r, homs, mu)


def compute_mu(arr: CurveArrangement, n: int, inputs: Sequence[str],
               data: FukayaData | None = None) -> frozenset[str]:
    """``mu^n`` on a generator tuple, as a set of output generators."""
    data = data or compute_category(arr, max_n=max(n, 2))
    if len(inputs) != n:
        raise ValueError(f"mu^{n} needs {n} inputs, got {len(inputs)}")
    chain = []
    for g in inputs:
        if g not in data.hom_of:
            raise ValueError(f"unknown generator {g!r}")
        chain.append(data.hom_of[g])
    for (a, b), (c, _) in zip(chain, chain[1:]):
        if b != c:
            raise ValueError("inputs are not composable")
    if n not in data.mu:
        return frozenset()
    return data.mu_value(inputs)


@dataclass(frozen=True)
class AInfinityResult:
    holds: bool
    checked: int
    failure: tuple[str, ...] | None
    defect: frozenset[str] = frozenset()


def _apply(data: FukayaData, inputs: Sequence[frozenset[str]]) -> frozenset[str]:
    """Multilinear extension of ``mu^n`` over Z/2 combinations."""
    total: set[str] = set()
    for combo in itertools.product(*[sorted(x) for x in inputs]):
        total ^= set(data.mu_value(combo))
    return frozenset(total)


def verify_a_infinity(data: FukayaData, up_to: int) -> AInfinityResult:
    """Check ``sum mu(a_1..a_i, mu(a_{i+1}..a_{i+j}), ..a_n) = 0`` over Z/2 for ``n <= up_to``."""
    gens_by_source: dict[int, list[str]] = {}
    for (i, j), gens in sorted(data.homs.items()):
        if i <= j:
            gens_by_source.setdefault(i, []).extend(gens)
    checked = 0

    def tuples(n: int):
        def rec(prefix, obj):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            for g in gens_by_source.get(obj, []):
                yield from rec(prefix + [g], data.hom_of[g][1])
        for i in range(1, data.r + 1):
            yield from rec([], i)

    for n in range(1, up_to + 1):
        for t in tuples(n):
            checked += 1
            total: set[str] = set()
            for i in range(n):
                for j in range(1, n - i + 1):
                    inner = data.mu_value(t[i:i + j])
                    if not inner:
                        continue
                    args = [frozenset([x]) for x in t[:i]] + [inner] + [frozenset([x]) for x in t[i + j:]]
                    total ^= set(_apply(data, args))
            if total:
                return AInfinityResult(False, checked, t, frozenset(total))
    return AInfinityResult(True, checked, None)


# ---------------------------------------------------------------------------
# Builders


def circle_arrangement(circles: Sequence[tuple[Sequence[float], float]],
                       punctures: Sequence[Sequence[float]],
                       names: Mapping[str, Sequence[float]] | None = None,
                       tol: float = 1e-9) -> CurveArrangement:
    """Arrangement of round circles ``{x : x.n = h}`` on the unit sphere.

    Faces are oriented counter-clockwise as seen from inside the sphere.
    Each puncture point is assigned to the face containing it; ``names``
    maps generator names to points near the corresponding vertex.
    """
    normals = []
    for n, h in circles:
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        if abs(h) >= 1:
            raise ValueError("circle misses the sphere")
        normals.append((n, float(h)))
    r = len(normals)
    # vertices
    points: list[np.ndarray] = []
    on_circle: list[list[int]] = [[] for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            (n1, h1), (n2, h2) = normals[i], normals[j]
            G = np.array([[1, n1 @ n2], [n1 @ n2, 1]])
            cross = np.cross(n1, n2)
            if np.linalg.norm(cross) < tol:
                continue
            a, b = np.linalg.solve(G, [h1, h2])
            base = a * n1 + b * n2
            g2 = (1 - base @ base) / (cross @ cross)
            if g2 <= tol:
                continue
            for s in (1, -1):
                points.append(base + s * np.sqrt(g2) * cross)
                on_circle[i].append(len(points) - 1)
                on_circle[j].append(len(points) - 1)
    for i, (n, h) in enumerate(normals):
        if not on_circle[i]:
            # a marker vertex on a circle meeting no other circle
            u = np.cross(n, [1.0, 0, 0] if abs(n[0]) < 0.9 else [0, 1.0, 0])
            u /= np.linalg.norm(u)
            points.append(h * n + np.sqrt(1 - h * h) * u)
            on_circle[i].append(len(points) - 1)
    # darts along each circle; even darts run in the direction of n x p
    tail, head, label, tangent, arc = [], [], [], [], []
    opposite: list[int] = []
    curves = []
    for i, (n, h) in enumerate(normals):
        c = h * n
        u = points[on_circle[i][0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        angle = {p: float(np.arctan2((points[p] - c) @ w, (points[p] - c) @ u) % (2 * np.pi))
                 for p in on_circle[i]}
        order = sorted(on_circle[i], key=angle.get)
        fwd = []
        for k, p in enumerate(order):
            q = order[(k + 1) % len(order)]
            span = (angle[q] - angle[p]) % (2 * np.pi) or 2 * np.pi
            d = len(tail)
            tail += [p, q]
            head += [q, p]
            label += [i + 1, i + 1]
            tangent += [np.cross(n, points[p]), -np.cross(n, points[q])]
            mid = angle[p] + span / 2
            arc += [(c, u, w, mid, 1.0), (c, u, w, mid, -1.0)]
            opposite += [d + 1, d]
            fwd.append(d)
        curves.append(tuple(fwd))
    nd = len(tail)
    # rotation at each vertex, counter-clockwise about the inward normal
    out_at: dict[int, list[int]] = {}
    for d in range(nd):
        out_at.setdefault(tail[d], []).append(d)
    ccw_prev = {}
    for v, ds in out_at.items():
        nu = -points[v]
        e1 = tangent[ds[0]] / np.linalg.norm(tangent[ds[0]])
        e2 = np.cross(nu, e1)
        ds = sorted(ds, key=lambda d: np.arctan2(tangent[d] @ e2, tangent[d] @ e1) % (2 * np.pi))
        for k, d in enumerate(ds):
            ccw_prev[d] = ds[k - 1]
    nxt = [ccw_prev[opposite[d]] for d in range(nd)]
    faces = []
    seen = set()
    for d in range(nd):
        if d in seen:
            continue
        f = [d]
        seen.add(d)
        e = nxt[d]
        while e != d:
            f.append(e)
            seen.add(e)
            e = nxt[e]
        faces.append(tuple(f))

    def sample(face):
        # a point just to the left of the midpoint of the first arc
        c, u, w, t, direction = arc[face[0]]
        radius = np.sqrt(1 - c @ c)
        mid = c + radius * (np.cos(t) * u + np.sin(t) * w)
        step = direction * radius * (-np.sin(t) * u + np.cos(t) * w)
        left = np.cross(-mid, step)
        x = mid + 1e-5 * left / np.linalg.norm(left)
        return x / np.linalg.norm(x)

    def signs(x):
        return tuple(bool(x @ n > h) for n, h in normals)

    face_signs = [signs(sample(f)) for f in faces]
    if _components(nd, nxt, opposite) > 1:
        # a region bounded by several components is one face with several cycles
        merged: dict[tuple[bool, ...], list[int]] = {}
        for f, sg in zip(faces, face_signs):
            merged.setdefault(sg, []).extend(f)
        faces = [tuple(f) for f in merged.values()]
        face_signs = list(merged)
    counts = [0] * len(faces)
    for pt in punctures:
        pt = np.asarray(pt, dtype=float)
        pt /= np.linalg.norm(pt)
        match = [k for k, s in enumerate(face_signs) if s == signs(pt)]
        if len(match) != 1:
            raise ValueError(f"puncture {pt} does not determine a unique face")
        counts[match[0]] += 1
    dart_names = {}
    for name, pt in (names or {}).items():
        pt = np.asarray(pt, dtype=float)
        v = min(range(len(points)), key=lambda k: np.linalg.norm(points[k] - pt))
        dart_names[min(out_at[v])] = name
    return CurveArrangement(tuple(nxt), tuple(opposite), tuple(label), tuple(faces), tuple(counts),
                            tuple(curves), dart_names)


def _components(nd: int, nxt: Sequence[int], opposite: Sequence[int]) -> int:
    seen = [False] * nd
    count = 0
    for d in range(nd):
        if seen[d]:
            continue
        count += 1
        stack = [d]
        seen[d] = True
        while stack:
            e = stack.pop()
            for f in (nxt[e], opposite[e]):
                if not seen[f]:
                    seen[f] = True
                    stack.append(f)
    return count


def conic_pencil_example() -> CurveArrangement:
    """Three vanishing cycles of a conic pencil on a four-punctured sphere.

    ``L_1, L_2, L_3`` are the great circles ``z = 0``, ``y = 0``, ``x = 0``.
    The octants with an odd number of negative coordinates carry one
    puncture each; the other four octants are the triangles.
    """
    X, Y, Z = np.eye(3)
    circles = [(Z, 0.0), (Y, 0.0), (X, 0.0)]
    punctures = [np.array(v, dtype=float) for v in [(-1, 1, 1), (1, -1, 1), (1, 1, -1), (-1, -1, -1)]]
    names = {"a": X, "a'": -X, "b": Z, "b'": -Z, "c": Y, "c'": -Y}
    return circle_arrangement(circles, punctures, names)
