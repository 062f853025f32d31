"""GKM graphs, Morse orientations and equivariant classes on them."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .charring import CharacterElement, divisible_mod_weight, one_minus, parse_element
from .lattice import dot

__all__ = [
    "BadParameters",
    "BadVertexCircle",
    "CapExceeded",
    "ClassCheck",
    "CyclicAscent",
    "DescendingEdge",
    "Edge",
    "GenericityViolation",
    "GkmGraph",
    "GraphFormatError",
    "KClass",
    "MorseOrientation",
    "OrientedEdge",
    "Polarization",
    "ValidationReport",
    "Violation",
    "ascending_paths",
    "check_class",
    "class_from_json",
    "class_to_json",
    "gen_cpn",
    "gen_grassmannian",
    "cpn_polarization",
    "grassmannian_polarization",
    "graph_from_json",
    "graph_to_json",
    "lambda_minus",
    "load_graph",
    "orient",
    "validate_graph",
]


class GenericityViolation(ValueError):
    """Some edge label pairs to zero with the polarization."""


class CyclicAscent(ValueError):
    """The ascending edges contain a directed cycle."""


class BadVertexCircle(ValueError):
    """A per-vertex circle does not pair negatively with a descending label."""


class CapExceeded(RuntimeError):
    """Path enumeration hit its cap."""


class BadParameters(ValueError):
    """Invalid generator parameters."""


class GraphFormatError(ValueError):
    """Malformed graph or class document."""


@dataclass(frozen=True)
class Edge:
    """Closed edge; ``label`` is the weight seen from ``source``."""

    source: str
    target: str
    label: tuple[int, ...]

    def label_at(self, v: str) -> tuple[int, ...]:
        if v == self.source:
            return self.label
        if v == self.target:
            return tuple(-x for x in self.label)
        raise KeyError(v)

    def other(self, v: str) -> str:
        if v == self.source:
            return self.target
        if v == self.target:
            return self.source
        raise KeyError(v)


@dataclass(frozen=True)
class OrientedEdge:
    """An edge traversed from ``source`` to ``target``; ``label`` is at ``source``."""

    index: int
    source: str
    target: str
    label: tuple[int, ...]

    def reversed(self) -> OrientedEdge:
        return OrientedEdge(self.index, self.target, self.source, tuple(-x for x in self.label))

    def __str__(self):
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class GkmGraph:
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    sum_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "edges",
            tuple(Edge(e.source, e.target, tuple(int(x) for x in e.label)) for e in self.edges),
        )

    def incident(self, v: str) -> list[OrientedEdge]:
        """Edges at ``v`` oriented away from it, sorted by (target, index)."""
        out = [
            OrientedEdge(i, v, e.other(v), e.label_at(v))
            for i, e in enumerate(self.edges)
            if v in (e.source, e.target) and e.source != e.target
        ]
        return sorted(out, key=lambda o: (o.target, o.index))

    @property
    def valence(self) -> int | None:
        vals = {len(self.incident(v)) for v in self.vertices}
        return vals.pop() if len(vals) == 1 else None


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    valence: int | None = None
    n_vertices: int = 0
    n_edges: int = 0

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def summary(self) -> str:
        if self.valid:
            return f"valence {self.valence}, {self.n_vertices} vertices, {self.n_edges} edges"
        return "; ".join(f"{v.code}: {v.detail}" for v in self.violations)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "valence": self.valence,
            "vertices": self.n_vertices,
            "edges": self.n_edges,
            "violations": [{"code": v.code, "detail": v.detail} for v in self.violations],
        }


def _dependent(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


def validate_graph(g: GkmGraph) -> ValidationReport:
    rep = ValidationReport(n_vertices=len(g.vertices), n_edges=len(g.edges))
    bad = rep.violations.append
    names = set(g.vertices)
    if len(names) != len(g.vertices):
        bad(Violation("DuplicateVertex", "vertex names are not unique"))
    for i, e in enumerate(g.edges):
        where = f"edge {i} ({e.source}-{e.target})"
        for end in (e.source, e.target):
            if end not in names:
                bad(Violation("DanglingEndpoint", f"{where}: unknown vertex {end!r}"))
        if e.source == e.target:
            bad(Violation("SelfLoop", where))
        if len(e.label) != g.rank:
            bad(Violation("WrongLabelLength", f"{where}: label {list(e.label)} has length {len(e.label)}"))
            continue
        if not any(e.label):
            bad(Violation("ZeroLabel", where))
        if g.sum_zero and sum(e.label):
            bad(Violation("SumZeroViolation", f"{where}: label {list(e.label)}"))
    if any(v.code in ("DanglingEndpoint", "WrongLabelLength") for v in rep.violations):
        return rep
    degrees = {v: len(g.incident(v)) for v in g.vertices}
    if len(set(degrees.values())) > 1:
        detail = ", ".join(f"{v}:{d}" for v, d in sorted(degrees.items()))
        bad(Violation("InconsistentValence", detail))
    else:
        rep.valence = next(iter(degrees.values()), 0)
    for v in g.vertices:
        inc = g.incident(v)
        for a, b in combinations(inc, 2):
            if any(a.label) and any(b.label) and _dependent(a.label, b.label):
                bad(
                    Violation(
                        "PairwiseDependence",
                        f"at {v}: {list(a.label)} and {list(b.label)} (edges {a.index}, {b.index})",
                    )
                )
    return rep


@dataclass(frozen=True)
class Polarization:
    xi: tuple[int, ...]
    vertex_circles: Mapping[str, tuple[int, ...]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(int(x) for x in self.xi))
        if self.vertex_circles is not None:
            vc = {k: tuple(int(x) for x in v) for k, v in self.vertex_circles.items()}
            object.__setattr__(self, "vertex_circles", vc)

    def __hash__(self):
        vc = None if self.vertex_circles is None else tuple(sorted(self.vertex_circles.items()))
        return hash((self.xi, vc))

    def global_only(self) -> Polarization:
        return Polarization(self.xi)


@dataclass(frozen=True)
class DescendingEdge:
    edge: OrientedEdge
    k: int

    @property
    def target(self) -> str:
        return self.edge.target

    @property
    def label(self) -> tuple[int, ...]:
        return self.edge.label


@dataclass(frozen=True)
class MorseOrientation:
    graph: GkmGraph
    polarization: Polarization
    order: tuple[str, ...]
    ascending: Mapping[str, tuple[OrientedEdge, ...]]
    descending: Mapping[str, tuple[DescendingEdge, ...]]

    def __hash__(self):
        return hash((self.graph, self.polarization))

    def __eq__(self, other):
        return (
            isinstance(other, MorseOrientation)
            and self.graph == other.graph
            and self.polarization == other.polarization
        )

    def xi_at(self, p: str) -> tuple[int, ...]:
        vc = self.polarization.vertex_circles
        if vc is not None and p in vc:
            return vc[p]
        return self.polarization.xi

    def position(self, p: str) -> int:
        return self.order.index(p)

    def descending_labels(self, p: str) -> list[tuple[int, ...]]:
        return [d.label for d in self.descending[p]]

    def reachable(self, p: str) -> set[str]:
        """Vertices reachable from ``p`` along ascending edges (``p`` included)."""
        seen = {p}
        stack = [p]
        while stack:
            v = stack.pop()
            for e in self.ascending[v]:
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return seen

    @property
    def minimum(self) -> str:
        return self.order[0]

    @property
    def maximum(self) -> str:
        return self.order[-1]

    def is_edge_ascending(self, index: int) -> bool:
        """Whether the stored orientation of edge ``index`` is ascending."""
        e = self.graph.edges[index]
        return dot(e.label, self.polarization.xi) > 0

    def to_json(self) -> dict:
        return {
            "order": list(self.order),
            "xi": list(self.polarization.xi),
            "vertices": {
                p: {
                    "xi": list(self.xi_at(p)),
                    "descending": [
                        {"to": d.target, "label": list(d.label), "k": d.k} for d in self.descending[p]
                    ],
                    "ascending": [{"to": e.target, "label": list(e.label)} for e in self.ascending[p]],
                }
                for p in self.order
            },
        }


def orient(g: GkmGraph, pol: Polarization) -> MorseOrientation:
    if len(pol.xi) != g.rank:
        raise GenericityViolation(f"xi has length {len(pol.xi)}, expected {g.rank}")
    asc: dict[str, list[OrientedEdge]] = {v: [] for v in g.vertices}
    desc: dict[str, list[OrientedEdge]] = {v: [] for v in g.vertices}
    for v in g.vertices:
        for e in g.incident(v):
            s = dot(e.label, pol.xi)
            if s == 0:
                raise GenericityViolation(f"label {list(e.label)} at {v} pairs to 0 with xi={list(pol.xi)}")
            (asc if s > 0 else desc)[v].append(e)
    # Kahn's algorithm, ties broken by name
    indeg = {v: len(desc[v]) for v in g.vertices}
    heap = [v for v in g.vertices if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for e in asc[v]:
            indeg[e.target] -= 1
            if indeg[e.target] == 0:
                heapq.heappush(heap, e.target)
    if len(order) != len(g.vertices):
        stuck = sorted(v for v in g.vertices if indeg[v] > 0)
        raise CyclicAscent(f"ascending edges form a cycle through {stuck}")
    vc = pol.vertex_circles or {}
    descending = {}
    for v in g.vertices:
        xi_v = vc.get(v, pol.xi)
        if len(xi_v) != g.rank:
            raise BadVertexCircle(f"circle at {v} has length {len(xi_v)}")
        items = []
        for e in desc[v]:
            k = dot(e.label, xi_v)
            if k >= 0:
                raise BadVertexCircle(
                    f"descending label {list(e.label)} at {v} pairs to {k} with its circle {list(xi_v)}"
                )
            items.append(DescendingEdge(e, k))
        descending[v] = tuple(items)
    return MorseOrientation(
        g, pol, tuple(order), {v: tuple(asc[v]) for v in g.vertices}, descending
    )


# -------------------------------------------------------------------- classes


class KClass(Mapping):
    """An assignment vertex -> character, i.e. a candidate equivariant class."""

    __slots__ = ("_values", "rank")

    def __init__(self, values: Mapping[str, CharacterElement], rank: int | None = None):
        self._values = dict(values)
        if rank is None:
            if not self._values:
                raise ValueError("rank required for an empty class")
            rank = next(iter(self._values.values())).rank
        self.rank = rank
        for v, c in self._values.items():
            if not isinstance(c, CharacterElement) or c.ctx != rank:
                raise TypeError(f"value at {v} is not a rank-{rank} character")

    @classmethod
    def constant(cls, g: GkmGraph, c: CharacterElement | int = 1) -> KClass:
        if isinstance(c, int):
            c = CharacterElement.constant(g.rank, c)
        return cls({v: c for v in g.vertices}, g.rank)

    @classmethod
    def zero(cls, g: GkmGraph) -> KClass:
        return cls.constant(g, 0)

    def __getitem__(self, v):
        return self._values[v]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def _zip(self, other: KClass, op):
        if set(self) != set(other):
            raise ValueError("classes are defined on different vertex sets")
        return KClass({v: op(self[v], other[v]) for v in self}, self.rank)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return KClass({v: -c for v, c in self.items()}, self.rank)

    def __mul__(self, other):
        if isinstance(other, KClass):
            return self._zip(other, lambda a, b: a * b)
        return KClass({v: c * other for v, c in self.items()}, self.rank)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self._values == other._values

    __hash__ = None

    def __repr__(self):
        return "KClass({" + ", ".join(f"{v!r}: {c}" for v, c in self.items()) + "})"


@dataclass(frozen=True)
class ClassCheck:
    ok: bool
    witness: OrientedEdge | None = None

    def __bool__(self):
        return self.ok


def check_class(g: GkmGraph, chi: Mapping[str, CharacterElement]) -> ClassCheck:
    """Edge condition: ``chi_p - chi_q`` vanishes in ``R(G_e)`` for every edge."""
    for i, e in enumerate(g.edges):
        if not divisible_mod_weight(chi[e.source] - chi[e.target], e.label):
            return ClassCheck(False, OrientedEdge(i, e.source, e.target, e.label))
    return ClassCheck(True)


def lambda_minus(g: GkmGraph, o: MorseOrientation, p: str) -> CharacterElement:
    out = CharacterElement.one(g.rank)
    for d in o.descending[p]:
        out = out * one_minus(d.label)
    return out


def ascending_paths(g: GkmGraph, o: MorseOrientation, p: str, q: str, cap: int = 10_000) -> list[tuple[OrientedEdge, ...]]:
    """All ascending paths from ``p`` to ``q`` in depth-first, target-sorted order."""
    if cap < 1:
        raise ValueError("cap must be positive")
    reach_q = _reaching(o, q)
    out: list[tuple[OrientedEdge, ...]] = []
    if p not in reach_q:
        return out

    def walk(v, path):
        if v == q:
            out.append(tuple(path))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} ascending paths from {p} to {q}")
            return
        for e in o.ascending[v]:
            if e.target in reach_q:
                path.append(e)
                walk(e.target, path)
                path.pop()

    walk(p, [])
    return out


def _reaching(o: MorseOrientation, q: str) -> set[str]:
    back: dict[str, list[str]] = {}
    for v, es in o.ascending.items():
        for e in es:
            back.setdefault(e.target, []).append(v)
    seen = {q}
    stack = [q]
    while stack:
        v = stack.pop()
        for u in back.get(v, ()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


# ----------------------------------------------------------------- generators


def gen_cpn(m: int) -> GkmGraph:
    """Projective space ``CP^m``: vertices ``P0..Pm``, rank ``m``.

    At ``P0`` the labels are the coordinate weights ``e_i``; the edge
    ``Pi - Pj`` carries ``e_j - e_i`` at ``Pi``.
    """
    if not isinstance(m, int) or m < 1:
        raise BadParameters(f"m must be a positive integer, got {m!r}")

    def eps(i):
        return tuple(int(j == i - 1) for j in range(m))

    verts = tuple(f"P{i}" for i in range(m + 1))
    edges = [Edge("P0", f"P{i}", eps(i)) for i in range(1, m + 1)]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            edges.append(Edge(f"P{i}", f"P{j}", tuple(a - b for a, b in zip(eps(j), eps(i)))))
    return GkmGraph(m, verts, tuple(edges))


def cpn_polarization(m: int) -> Polarization:
    """The generic circle ``(1, 2, ..., m)``; makes ``P0 < P1 < ... < Pm``."""
    return Polarization(tuple(range(1, m + 1)))


def subset_name(s: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def gen_grassmannian(k: int, n: int) -> tuple[GkmGraph, dict[str, tuple[int, ...]]]:
    """Grassmannian ``Gr(k, n)`` as the Johnson graph, with circles ``1_I``.

    Edge ``I ~ J`` carries ``e_i - e_j`` at ``I`` where ``J = I - {j} + {i}``.
    The global circle ``(0, 1, ..., n-1)`` makes ``{1..k}`` the minimum.
    """
    if not (isinstance(k, int) and isinstance(n, int)) or not 1 <= k < n:
        raise BadParameters(f"need 1 <= k < n, got k={k!r}, n={n!r}")
    subsets = [frozenset(c) for c in combinations(range(1, n + 1), k)]
    names = {s: subset_name(s) for s in subsets}
    edges = []
    for a, b in combinations(subsets, 2):
        if len(a & b) == k - 1:
            (i,) = b - a
            (j,) = a - b
            label = tuple(int(t == i) - int(t == j) for t in range(1, n + 1))
            edges.append(Edge(names[a], names[b], label))
    circles = {names[s]: tuple(int(t in s) for t in range(1, n + 1)) for s in subsets}
    g = GkmGraph(n, tuple(names[s] for s in subsets), tuple(edges), sum_zero=True)
    return g, circles


def grassmannian_polarization(n: int, circles: Mapping[str, tuple[int, ...]] | None = None) -> Polarization:
    """Global circle ``(0, 1, ..., n-1)``, optionally with per-vertex circles."""
    return Polarization(tuple(range(n)), circles)


# ----------------------------------------------------------------------- JSON


def graph_to_json(g: GkmGraph, pol: Polarization | None = None) -> dict:
    doc: dict = {
        "rank": g.rank,
        "vertices": [{"name": v} for v in g.vertices],
        "edges": [{"from": e.source, "to": e.target, "label_at_from": list(e.label)} for e in g.edges],
    }
    if g.sum_zero:
        doc["sum_zero"] = True
    if pol is not None:
        doc["xi"] = list(pol.xi)
        if pol.vertex_circles is not None:
            doc["vertex_circles"] = {k: list(v) for k, v in pol.vertex_circles.items()}
    return doc


def _ints(x, what) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in x):
        raise GraphFormatError(f"{what} must be a list of integers, got {x!r}")
    return tuple(x)


def graph_from_json(doc) -> tuple[GkmGraph, Polarization | None]:
    try:
        rank = doc["rank"]
        if not isinstance(rank, int) or rank < 1:
            raise GraphFormatError(f"rank must be a positive integer, got {rank!r}")
        verts = []
        for v in doc["vertices"]:
            name = v["name"] if isinstance(v, dict) else v
            if not isinstance(name, str):
                raise GraphFormatError(f"vertex name must be a string, got {name!r}")
            verts.append(name)
        edges = [Edge(e["from"], e["to"], _ints(e["label_at_from"], "label_at_from")) for e in doc["edges"]]
        pol = None
        if doc.get("xi") is not None:
            vc = doc.get("vertex_circles")
            if vc is not None:
                vc = {k: _ints(v, f"circle at {k}") for k, v in vc.items()}
            pol = Polarization(_ints(doc["xi"], "xi"), vc)
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"malformed graph document: {exc!r}") from exc
    return GkmGraph(rank, tuple(verts), tuple(edges), bool(doc.get("sum_zero", False))), pol


def load_graph(path) -> tuple[GkmGraph, Polarization | None]:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"{path}: {exc}") from exc
    return graph_from_json(doc)


def class_to_json(chi: Mapping[str, CharacterElement], text: bool = False) -> dict:
    if text:
        return {v: str(c) for v, c in chi.items()}
    return {v: c.to_pairs() for v, c in chi.items()}


def class_from_json(doc, g: GkmGraph) -> KClass:
    """Accepts values as pair lists or as text (``"1 - x^(-1)"``)."""
    if not isinstance(doc, dict):
        raise GraphFormatError("a class document must map vertex names to values")
    missing = set(g.vertices) - set(doc)
    extra = set(doc) - set(g.vertices)
    if missing or extra:
        raise GraphFormatError(f"class vertices mismatch: missing {sorted(missing)}, unknown {sorted(extra)}")
    vals = {}
    for v in g.vertices:
        x = doc[v]
        try:
            if isinstance(x, str):
                vals[v] = parse_element(x, g.rank)
            elif isinstance(x, int) and not isinstance(x, bool):
                vals[v] = CharacterElement.constant(g.rank, x)
            else:
                vals[v] = CharacterElement.from_pairs(g.rank, x)
        except (ValueError, TypeError) as exc:
            raise GraphFormatError(f"bad value at {v}: {exc}") from exc
    return KClass(vals, g.rank)
