"""Weighted projective spaces as local models, and their fixed-point index.

This is an independent route to local indices: the index of a class on the
weighted projective space is computed by Atiyah-Segal localization, with the
orbifold points handled by averaging over their structure groups using
explicit roots of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .charring import CharacterElement, ContextMismatch, DenominatorVanishes, FractionElement, is_character, one_minus
from .lagrange import DependentWeights, IntegralityFailure, ZeroPairing
from .lattice import NotPrimitive, QuotientLattice, content, dot

__all__ = [
    "CutPoint",
    "CutSpace",
    "CyclotomicCoefficient",
    "MixedSigns",
    "build_cut_space",
    "cut_index",
    "cut_restrictions",
    "cyclotomic_polynomial",
    "gamma_average",
    "gysin_invariant_part",
    "index_general",
    "lift_to_point",
    "orbifold_index",
]


class MixedSigns(ValueError):
    """Some weight pairs positively with the circle."""


# ---------------------------------------------------------------- Z[zeta_K]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(K: int) -> tuple[int, ...]:
    """Integer coefficients of the ``K``-th cyclotomic polynomial, lowest first."""
    if K < 1:
        raise ValueError("K must be positive")
    num = [-1] + [0] * (K - 1) + [1]
    for d in range(1, K):
        if K % d == 0:
            num = _int_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _int_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]  # b is monic
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a), "inexact cyclotomic division"
    return q


class CyclotomicCoefficient:
    """Element of ``Z[w]``, ``w`` a primitive ``K``-th root of unity.

    Stored as integer coordinates in the basis ``1, w, ..., w^(phi(K)-1)``.
    """

    __slots__ = ("K", "c")

    def __init__(self, K: int, coeffs: Sequence[int] = ()):
        self.K = K
        phi = cyclotomic_polynomial(K)
        d = len(phi) - 1
        c = [int(x) for x in coeffs]
        for i in range(len(c) - 1, d - 1, -1):
            t = c[i]
            if t:
                for j, y in enumerate(phi):
                    c[i - d + j] -= t * y
        c = c[:d] + [0] * (d - len(c))
        self.c = tuple(c)

    @classmethod
    def root(cls, K: int, j: int) -> CyclotomicCoefficient:
        j %= K
        return cls(K, [0] * j + [1])

    @classmethod
    def integer(cls, K: int, n: int) -> CyclotomicCoefficient:
        return cls(K, [n])

    def _other(self, o):
        if isinstance(o, CyclotomicCoefficient):
            if o.K != self.K:
                raise ContextMismatch(f"roots of unity of orders {self.K} and {o.K}")
            return o
        if isinstance(o, int):
            return CyclotomicCoefficient(self.K, [o])
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return CyclotomicCoefficient(self.K, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicCoefficient(self.K, [-a for a in self.c])

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        prod = [0] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    prod[i + j] += a * b
        return CyclotomicCoefficient(self.K, prod)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash((self.K, self.c))

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.c[0]

    def __repr__(self):
        parts = [f"{a}*w^{i}" if i else str(a) for i, a in enumerate(self.c) if a]
        return "(" + (" + ".join(parts) or "0") + ")"


# ------------------------------------------------------------- cut spaces


@dataclass(frozen=True)
class CutPoint:
    """Fixed point ``p_i`` with isotropy group ``G_i x T'``.

    Characters live in ``Z^(n+1) / Z (alpha_i, k_i)``; the structure group
    has order ``|k_i|``.
    """

    index: int
    lattice: QuotientLattice
    order: int
    isotropy: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CutSpace:
    rank: int
    weights: tuple[tuple[int, ...], ...]
    xi: tuple[int, ...]
    ks: tuple[int, ...]
    points: tuple[CutPoint, ...]

    @property
    def K(self) -> int:
        return lcm(*(abs(k) for k in self.ks)) if self.ks else 1


def build_cut_space(weights: Sequence[Sequence[int]], xi: Sequence[int]) -> CutSpace:
    """Local model on weights that all pair negatively with ``xi``.

    A ``G``-character ``lam`` restricted to ``p_i`` is the class of
    ``(lam, lam(xi))``; the isotropy characters at ``p_i`` are
    ``(alpha_j, k_j)`` for ``j != i`` and the cut character ``(0, -1)``.
    """
    weights = tuple(tuple(int(x) for x in a) for a in weights)
    xi = tuple(int(x) for x in xi)
    n = len(xi)
    if content(xi) != 1:
        raise NotPrimitive(f"xi={list(xi)} is not primitive")
    for a, b in combinations(weights, 2):
        if all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n)):
            raise DependentWeights(f"{list(a)} and {list(b)} are linearly dependent")
    ks = tuple(dot(a, xi) for a in weights)
    if any(k == 0 for k in ks):
        raise ZeroPairing("a weight pairs to zero with xi")
    if any(k > 0 for k in ks):
        raise MixedSigns(f"pairings {list(ks)} are not all negative")
    points = []
    for i, (a, k) in enumerate(zip(weights, ks)):
        lat = QuotientLattice(n + 1, [a + (k,)])
        iso = tuple(weights[j] + (ks[j],) for j in range(len(weights)) if j != i) + ((0,) * n + (-1,),)
        points.append(CutPoint(i, lat, abs(k), iso))
    return CutSpace(n, weights, xi, ks, tuple(points))


def lift_to_point(f: CharacterElement, point: CutPoint, xi: Sequence[int]) -> CharacterElement:
    """Restriction of a ``G``-class to ``p_i``: ``x^lam -> class of (lam, lam(xi))``."""
    return CharacterElement(point.lattice, {e + (dot(e, xi),): c for e, c in f.terms.items()})


def gysin_invariant_part(elem: CharacterElement, n: int) -> CharacterElement:
    """Project to invariants of the structure group and identify with ``R(G)``.

    A class ``(mu, m)`` survives iff ``k_i | m`` and then goes to
    ``x^(mu - (m / k_i) alpha_i)``.
    """
    lat = elem.ctx
    if not isinstance(lat, QuotientLattice) or lat.ambient_rank != n + 1 or len(lat.relations) != 1:
        raise ContextMismatch("expected an element over a single-relation rank n+1 lattice")
    rel = lat.relations[0]
    alpha, k = rel[:n], rel[n]
    terms: dict = {}
    for e, c in elem.terms.items():
        mu, m = e[:n], e[n]
        if m % k:
            continue
        t = m // k
        key = tuple(x - t * a for x, a in zip(mu, alpha))
        terms[key] = terms.get(key, 0) + c
    return CharacterElement(n, terms)


def _twist(elem: CharacterElement, K: int, order: int, j: int) -> CharacterElement:
    """Act by the ``j``-th power of the generator of the structure group.

    The class ``(mu, m)`` is scaled by ``w^(j m)``, ``w`` of order ``order``.
    """
    step = K // order
    out = {}
    for e, c in elem.terms.items():
        if not isinstance(c, CyclotomicCoefficient):
            c = CyclotomicCoefficient.integer(K, c)
        out[e] = c * CyclotomicCoefficient.root(K, step * j * e[-1])
    return CharacterElement._make(elem.ctx, out)


def gamma_average(elem: CharacterElement, point: CutPoint, K: int) -> CharacterElement:
    """Average over the structure group by explicit roots of unity.

    Equals the invariant part; the result must have rational integer
    coefficients.
    """
    total = CharacterElement.zero(elem.ctx)
    for j in range(point.order):
        total = total + _twist(elem, K, point.order, j)
    total = _rationalize(total)
    out = {}
    for e, c in total.terms.items():
        q, r = divmod(c, point.order)
        if r:
            raise IntegralityFailure(f"group average of {elem} is not integral")
        out[e] = q
    return CharacterElement._make(elem.ctx, out)


def _rationalize(elem: CharacterElement) -> CharacterElement:
    terms = {}
    for e, c in elem.terms.items():
        if isinstance(c, CyclotomicCoefficient):
            if not c.is_rational():
                raise IntegralityFailure(f"non-rational coefficient {c} after averaging")
            c = c.to_int()
        if c:
            terms[e] = c
    return CharacterElement._make(elem.ctx, terms)


@dataclass(frozen=True)
class _PointData:
    multiplier: CharacterElement  # product over factors F of the conjugates of F
    denominators: tuple[CharacterElement, ...]  # invariant norms, pushed to R(G)


@lru_cache(maxsize=1024)
def _point_data(cs: CutSpace, i: int) -> _PointData:
    pt = cs.points[i]
    K = cs.K
    lat = pt.lattice
    one = CharacterElement.one(lat)
    mult = one
    dens = []
    for c in pt.isotropy:
        F = one - CharacterElement.monomial(lat, c)
        W = CharacterElement.constant(lat, CyclotomicCoefficient.integer(K, 1))
        for j in range(1, pt.order):
            W = W * _twist(F, K, pt.order, j)
        W = _rationalize(W)
        N = F * W
        dens.append(gysin_invariant_part(N, cs.rank))
        if not dens[-1]:
            raise DenominatorVanishes(f"isotropy factor {c} at p_{i + 1} averages to zero")
        mult = mult * W
    return _PointData(mult, tuple(dens))


def orbifold_index(cs: CutSpace, delta: Sequence[CharacterElement]) -> CharacterElement:
    """Index of the class with restrictions ``delta`` (``m+1`` entries).

    Entries ``i <= m`` may be given over the point lattice or as ``G``-characters
    (then lifted by :func:`lift_to_point`); the last entry is a ``G``-character.
    """
    m = len(cs.weights)
    if len(delta) != m + 1:
        raise ValueError(f"expected {m + 1} restrictions, got {len(delta)}")
    total = FractionElement(delta[m], [one_minus(a) for a in cs.weights]) if m else FractionElement(delta[m])
    for i, pt in enumerate(cs.points):
        d = delta[i]
        if d.ctx == cs.rank:
            d = lift_to_point(d, pt, cs.xi)
        elif d.ctx != pt.lattice:
            raise ContextMismatch(f"restriction {i} lives over the wrong lattice")
        data = _point_data(cs, i)
        num = gysin_invariant_part(d * data.multiplier, cs.rank)
        total = total + FractionElement(num, list(data.denominators))
    out = is_character(total)
    if out is None:
        raise IntegralityFailure("localization sum is not a character")
    return out


def index_general(weights: Sequence[Sequence[int]], xi: Sequence[int], delta: Sequence[CharacterElement]) -> CharacterElement:
    """Index for weights of either sign, by reduction to the negative case.

    Weights pairing positively are negated, the class is twisted by
    ``prod x^-alpha`` over them, and the result carries the sign ``(-1)^r``.
    ``delta`` holds ``G``-characters representing the restrictions.
    """
    weights = [tuple(a) for a in weights]
    ks = [dot(a, xi) for a in weights]
    pos = [i for i, k in enumerate(ks) if k > 0]
    twist = CharacterElement.monomial(len(xi), tuple(-sum(weights[i][t] for i in pos) for t in range(len(xi))))
    flipped = [tuple(-x for x in a) if k > 0 else a for a, k in zip(weights, ks)]
    cs = build_cut_space(flipped, xi)
    out = orbifold_index(cs, [d * twist for d in delta])
    return -out if len(pos) % 2 else out


# ------------------------------------------------------- GKM vertex models


def cut_restrictions(g, o, a, p: str) -> list[CharacterElement]:
    """Restrictions of ``a`` to the local model at ``p``: ``a_{q_i}`` then ``a_p``."""
    return [a[d.target] for d in o.descending[p]] + [a[p]]


def cut_index(g, o, a, p: str) -> CharacterElement:
    """Local index at ``p`` computed on the weighted projective model."""
    cs = build_cut_space(o.descending_labels(p), o.xi_at(p))
    return orbifold_index(cs, cut_restrictions(g, o, a, p))
