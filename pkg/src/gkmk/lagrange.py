"""Lagrange interpolation in one variable and in character rings.

The univariate routines work over the rationals and use extended Euclid.
The representation-ring engine (:class:`PFFrame`) splits ``G = T x H`` along
a circle and divides by products of binomials ``1 - x^alpha`` entirely over
``R(H)``: the binomials are normalized to monic polynomials in ``z`` with
unit constant terms, so the polynomial part is obtained by integral
division, and the proper parts need only one denominator per pair of
weights (a resultant in ``R(H)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Sequence

from . import kernels
from .charring import (
    CharacterElement,
    CohPolynomial,
    FractionElement,
    exact_div,
    is_character,
    one_minus,
    split_basis,
)
from .lattice import IntMatrix, NotPrimitive, QuotientLattice, ZeroVector, content, dot

__all__ = [
    "CohFrame",
    "CommonFactor",
    "DependentWeights",
    "IntegralityFailure",
    "LagrangeDecomposition",
    "LagrangeTerm",
    "PFFrame",
    "RepeatedRoot",
    "UnivariateDecomposition",
    "ZeroPairing",
    "coh_frame",
    "interp_character",
    "interp_classic",
    "interp_power",
    "interp_rg",
    "pf_frame",
    "pi_lattice",
    "pi_root_sum",
]


class RepeatedRoot(ValueError):
    pass


class CommonFactor(ValueError):
    """Two denominator factors share a root."""


class DependentWeights(ValueError):
    pass


class ZeroPairing(ValueError):
    """A weight pairs to zero with the splitting circle."""


class IntegralityFailure(ArithmeticError):
    """A quantity that must be a ring element failed to certify as one."""


# ------------------------------------------------------- univariate over Q
# polynomials are tuples of Fractions, lowest degree first, no trailing zeros


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(Fraction(c) for c in p)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return _trim(q), _trim(a[: len(b) - 1])


def _pmod(a, b):
    return _pdivmod(a, b)[1]


def _peval(p, x):
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def _xgcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1, s0, s1, t0, t1 = a, b, (Fraction(1),), (), (), (Fraction(1),)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1)))
        t0, t1 = t1, _padd(t0, _pneg(_pmul(q, t1)))
    if not r0:
        return (), (), ()
    lc = r0[-1]
    return tuple(c / lc for c in r0), tuple(c / lc for c in s0), tuple(c / lc for c in t0)


def _as_poly(f) -> tuple:
    if isinstance(f, Mapping):
        if any(k < 0 for k in f):
            raise ValueError("negative exponent in a polynomial")
        n = max(f, default=-1) + 1
        return _trim([f.get(i, 0) for i in range(n)])
    return _trim(f)


def _inverse_mod(a, m):
    g, s, _ = _xgcd(_pmod(a, m), m)
    if g != (Fraction(1),):
        raise CommonFactor("factors are not coprime")
    return s


def interp_classic(f, roots: Sequence) -> tuple[tuple, list[Fraction]]:
    """``f / prod(z - a_i) = f0 + sum c_i / (z - a_i)`` over the rationals."""
    f = _as_poly(f)
    roots = [Fraction(a) for a in roots]
    if len(set(roots)) != len(roots):
        raise RepeatedRoot(f"roots are not distinct: {roots}")
    den = (Fraction(1),)
    for a in roots:
        den = _pmul(den, (-a, Fraction(1)))
    f0, _ = _pdivmod(f, den)
    res = []
    for i, a in enumerate(roots):
        d = Fraction(1)
        for j, b in enumerate(roots):
            if j != i:
                d *= a - b
        res.append(_peval(f, a) / d)
    # recombination: f == f0*den + sum c_i * den/(z - a_i)
    total = _pmul(f0, den)
    for c, a in zip(res, roots):
        total = _padd(total, _pmul((c,), _pdivmod(den, (-a, Fraction(1)))[0]))
    assert total == f, "classic interpolation failed to recombine"
    return f0, res


def _eq_new(f, pairs) -> tuple:
    """Polynomial part from the expansion in powers of ``z^-1`` (no division)."""
    k = sum(ki for ki, _ in pairs)
    N = len(f) - 1
    if N < k:
        return ()
    # h[s] = sum over l with sum l_i k_i = s of prod a_i^l_i
    h = [Fraction(0)] * (N - k + 1)
    h[0] = Fraction(1)
    for ki, a in pairs:
        for s in range(ki, N - k + 1):
            h[s] += a * h[s - ki]
    d = [sum((f[i] * h[i - k - j] for i in range(k + j, N + 1)), Fraction(0)) for j in range(N - k + 1)]
    return _trim(d)


def interp_power(f, pairs: Sequence[tuple[int, object]]) -> tuple[tuple, list[tuple]]:
    """``f / prod(z^k_i - a_i) = f0 + sum f_i / (z^k_i - a_i)``, all ``k_i > 0``.

    ``f0`` is computed by division and independently from the expansion in
    ``z^-1``; the two must agree.
    """
    f = _as_poly(f)
    pairs = [(int(k), Fraction(a)) for k, a in pairs]
    if any(k <= 0 for k, _ in pairs):
        raise ValueError("all k_i must be positive")
    polys = [_trim([-a] + [0] * (k - 1) + [1]) for k, a in pairs]
    for (i, p), (j, q) in combinations(enumerate(polys), 2):
        if len(_xgcd(p, q)[0]) > 1:
            raise CommonFactor(f"z^{pairs[i][0]}-{pairs[i][1]} and z^{pairs[j][0]}-{pairs[j][1]} share a root")
    den = (Fraction(1),)
    for p in polys:
        den = _pmul(den, p)
    f0, r = _pdivmod(f, den)
    if f0 != _eq_new(f, pairs):
        raise AssertionError("polynomial part disagrees with the series expansion")
    fi = []
    for i, p in enumerate(polys):
        rest = (Fraction(1),)
        for j, q in enumerate(polys):
            if j != i:
                rest = _pmul(rest, q)
        fi.append(_pmod(_pmul(r, _inverse_mod(rest, p)), p))
    return f0, fi


@dataclass(frozen=True)
class UnivariateDecomposition:
    """``f / prod(1 - a_i z^k_i) = f0 - sum sgn(k_i) f_i / (1 - a_i z^k_i)``.

    Laurent polynomials are dicts ``{exponent: Fraction}``.
    """

    f: Mapping[int, Fraction]
    pairs: tuple[tuple[int, Fraction], ...]
    f0: Mapping[int, Fraction]
    fi: tuple[Mapping[int, Fraction], ...]

    def check(self) -> bool:
        """Exact cross-multiplied reconstruction."""
        factors = [_lmul({0: Fraction(1)}, {0: Fraction(1), k: -a}) for k, a in self.pairs]
        D = {0: Fraction(1)}
        for fac in factors:
            D = _lmul(D, fac)
        rhs = _lmul(self.f0, D)
        for i, (k, _) in enumerate(self.pairs):
            rest = {0: Fraction(1)}
            for j, fac in enumerate(factors):
                if j != i:
                    rest = _lmul(rest, fac)
            s = 1 if k > 0 else -1
            rhs = _ladd(rhs, {e: -s * c for e, c in _lmul(self.fi[i], rest).items()})
        return _lclean(rhs) == _lclean(self.f)


def _lclean(a):
    return {e: Fraction(c) for e, c in a.items() if c}


def _lmul(a, b):
    out: dict = {}
    for e, c in a.items():
        for f, d in b.items():
            out[e + f] = out.get(e + f, 0) + c * d
    return _lclean(out)


def _ladd(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return _lclean(out)


def interp_character(f: Mapping[int, object], pairs: Sequence[tuple[int, object]]) -> UnivariateDecomposition:
    """Partial fractions of a Laurent polynomial over ``prod (1 - a_i z^k_i)``.

    The pole at ``z = 0`` is assigned to ``f0``.  Computed by extended Euclid,
    independently of the integral engine used for representation rings.
    """
    pairs = tuple((int(k), Fraction(a)) for k, a in pairs)
    if any(k == 0 for k, _ in pairs):
        raise ZeroPairing("k_i must be nonzero")
    if any(a == 0 for _, a in pairs):
        raise ValueError("a_i must be nonzero")
    f = _lclean(f)
    # 1 - a z^k = z^k (z^-k - a) for k < 0, = -a (z^k - 1/a) for k > 0
    monic, units = [], []
    for k, a in pairs:
        if k < 0:
            monic.append(_trim([-a] + [0] * (-k - 1) + [1]))
            units.append({k: Fraction(1)})
        else:
            monic.append(_trim([-1 / a] + [0] * (k - 1) + [1]))
            units.append({0: -a})
    for (i, p), (j, q) in combinations(enumerate(monic), 2):
        if len(_xgcd(p, q)[0]) > 1:
            raise CommonFactor(f"factors {i} and {j} share a root")
    U = {0: Fraction(1)}
    for u in units:
        U = _lmul(U, u)
    (ue, uc), = U.items()
    g = {e - ue: c / uc for e, c in f.items()}
    # g = z^-s * h with h a polynomial
    s = max(0, -min(g, default=0))
    h = _as_poly({e + s: c for e, c in g.items()})
    P = (Fraction(1),)
    for p in monic:
        P = _pmul(P, p)
    zs = _trim([0] * s + [1])
    q, r = _pdivmod(h, _pmul(zs, P))
    # r / (z^s P) = A / z^s + B / P
    if s:
        _, u, v = _xgcd(P, zs)  # u P + v z^s = 1
        A = _pmod(_pmul(r, u), zs)
        B = _pmod(_pmul(r, v), P)
    else:
        A, B = (), r
    # g / P = q + A / z^s + B / P
    f0 = {i: c for i, c in enumerate(q) if c}
    for i, c in enumerate(A):
        if c:
            f0[i - s] = f0.get(i - s, 0) + c
    fis = []
    for i, p in enumerate(monic):
        rest = (Fraction(1),)
        for j, pj in enumerate(monic):
            if j != i:
                rest = _pmul(rest, pj)
        Ci = _pmod(_pmul(B, _inverse_mod(rest, p)), p)
        k = pairs[i][0]
        sign = -1 if k > 0 else 1  # -sgn(k)
        fi = _lmul({e: c for e, c in enumerate(Ci) if c}, units[i])
        fis.append({e: sign * c for e, c in fi.items()})
    return UnivariateDecomposition(f, pairs, _lclean(f0), tuple(fis))


# ------------------------------------------- representation-ring engine
# Internal representation: split-coordinate term dicts grouped by z-degree,
# ``{deg: {h_exponent: int}}``.


def _group(terms: Mapping) -> dict:
    out: dict = {}
    for e, c in terms.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return out


def _ungroup(by_deg: Mapping) -> dict:
    return {(d,) + e: c for d, h in by_deg.items() for e, c in h.items()}


def _hshift(h: Mapping, e, coeff=1) -> dict:
    return {tuple([a + b for a, b in zip(k, e)]): coeff * c for k, c in h.items()}


def _acc(target: dict, deg, h: Mapping, coeff):
    cur = target.get(deg)
    if cur is None:
        cur = {}
        target[deg] = cur
    kernels.axpy(cur, h, coeff)
    if not cur:
        del target[deg]


@dataclass(frozen=True)
class _Factor:
    """Monic ``z^m - c`` with ``c = x^gamma`` a monomial of ``H``."""

    m: int
    gamma: tuple[int, ...]

    def poly(self, r: int) -> dict:
        zero = (0,) * r
        return {self.m: {zero: 1}, 0: {self.gamma: -1}}

    def reduce(self, by_deg: Mapping) -> list[dict]:
        """Coefficient vector of ``g mod (z^m - c)``; ``z^e -> c^(e div m) z^(e mod m)``."""
        out = [dict() for _ in range(self.m)]
        for e, h in by_deg.items():
            t, l = divmod(e, self.m)
            kernels.axpy(out[l], h, 1, tuple(t * x for x in self.gamma))
        return out


def _pmul_h(a: Mapping, b: Mapping) -> dict:
    """Product of z-polynomials with ``R(H)`` coefficients."""
    out: dict = {}
    for da, ha in a.items():
        for db, hb in b.items():
            _acc(out, da + db, kernels.mul(ha, hb), 1)
    return out


def _det_adj(M: list[list[CharacterElement]]) -> tuple[CharacterElement, list[list[CharacterElement]] | None]:
    """Determinant and adjugate over ``R(H)``.

    Fraction-free (Bareiss) elimination on ``[M | I]``; every intermediate
    entry is a minor, so all divisions are exact.  Back-substitution then
    solves ``M Y = det * I``, i.e. ``Y = adj(M)``.  The adjugate is ``None``
    when ``det = 0``.
    """
    n = len(M)
    one = M[0][0].one(M[0][0].ctx)
    zero = one * 0
    a = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    sign, prev = 1, one
    for k in range(n):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero, None
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row, top = a[i], a[k]
            for j in range(k + 1, 2 * n):
                row[j] = exact_div(row[j] * piv - aik * top[j], prev)
            row[k] = zero
        prev = piv
    det = a[n - 1][n - 1] * sign
    adj = [[zero] * n for _ in range(n)]
    for c in range(n):
        y = [zero] * n
        for i in range(n - 1, -1, -1):
            acc = det * a[i][n + c]
            for j in range(i + 1, n):
                if a[i][j] and y[j]:
                    acc = acc - a[i][j] * y[j]
            y[i] = exact_div(acc, a[i][i]) if acc else zero
        for i in range(n):
            adj[i][c] = y[i]
    return det, adj


class PFFrame:
    """Partial-fraction data for ``prod_i (1 - x^alpha_i)`` split along ``xi``.

    With ``1 - x^alpha_i = unit_i * P_i`` and ``P_i = z^m_i - c_i`` monic,
    ``prod (1 - x^alpha_i) = U * P``.  For ``f`` in ``R(G)`` the division
    ``f / U = q P + r`` with ``0 <= deg r < deg P`` gives the polynomial part
    ``q``; the proper part at ``P_i`` is ``C_i / P_i`` with
    ``C_i = r * (prod_{j != i} P_j)^-1 mod P_i``.
    """

    def __init__(self, weights: Sequence[Sequence[int]], xi: Sequence[int]):
        self.weights = tuple(tuple(int(x) for x in a) for a in weights)
        self.xi = tuple(int(x) for x in xi)
        n = len(self.xi)
        if any(len(a) != n for a in self.weights):
            raise ValueError("weights and xi have different lengths")
        if content(self.xi) != 1:
            raise NotPrimitive(f"xi={list(self.xi)} is not primitive")
        for a in self.weights:
            if not any(a):
                raise ZeroVector("zero weight")
        for a, b in combinations(self.weights, 2):
            if all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n)):
                raise DependentWeights(f"{list(a)} and {list(b)} are linearly dependent")
        self.n = n
        self.B, self.Binv = split_basis(self.xi)
        self.ks = []
        self.betas = []
        self.factors: list[_Factor] = []
        u = [0] * n
        usign = 1
        for a in self.weights:
            sp = self.split_exponent(a)
            k, beta = sp[0], sp[1:]
            if k == 0:
                raise ZeroPairing(f"weight {list(a)} pairs to 0 with xi={list(self.xi)}")
            self.ks.append(k)
            self.betas.append(beta)
            if k < 0:
                self.factors.append(_Factor(-k, beta))
                u[0] += k
            else:
                self.factors.append(_Factor(k, tuple(-x for x in beta)))
                u = [u[0]] + [x + y for x, y in zip(u[1:], beta)]
                usign = -usign
        self.U_exp = tuple(u)
        self.U_sign = usign
        r = n - 1
        self._zero_h = (0,) * r
        P = {0: {self._zero_h: 1}}
        for fac in self.factors:
            P = _pmul_h(P, fac.poly(r))
        self.P = P
        self.K = sum(fac.m for fac in self.factors)
        self.p0 = P[0]
        (g0, c0), = self.p0.items()
        self.p0_inv = (tuple(-x for x in g0), c0)  # c0 = +-1
        self._inverse = [self._inverse_data(i) for i in range(len(self.factors))]
        self._complements = [self._complement(i) for i in range(len(self.factors))]

    # -- coordinates
    def split_exponent(self, lam: Sequence[int]) -> tuple[int, ...]:
        Bi = self.Binv.rows
        return tuple(sum(lam[i] * Bi[i][j] for i in range(self.n)) for j in range(self.n))

    def to_split(self, f: CharacterElement) -> dict:
        return _group(kernels.linear_map(f.terms, self.Binv.rows))

    def to_ambient(self, by_deg: Mapping) -> CharacterElement:
        terms = _ungroup(by_deg)
        return CharacterElement._make(self.n, kernels.linear_map(terms, self.B.rows) if terms else {})

    def h_to_ambient(self, h: Mapping) -> CharacterElement:
        return self.to_ambient({0: h})

    # -- precomputation
    def _inverse_data(self, i: int):
        """Adjugates and determinants of multiplication by ``P_j`` modulo ``P_i``."""
        fi = self.factors[i]
        r = self.n - 1
        out = []
        for j, fj in enumerate(self.factors):
            if j == i:
                continue
            Mcols = []
            for l in range(fi.m):
                prod = _pmul_h({l: {self._zero_h: 1}}, fj.poly(r))
                Mcols.append(fi.reduce(prod))
            M = [[CharacterElement._make(r, Mcols[l][row]) for l in range(fi.m)] for row in range(fi.m)]
            det, adj = _det_adj(M)
            if adj is None:
                raise CommonFactor(
                    f"factors for {list(self.weights[i])} and {list(self.weights[j])} share a root"
                )
            out.append((det, adj))
        return out

    def _complement(self, i: int) -> dict:
        """``U * prod_{j != i} P_j`` in split coordinates."""
        r = self.n - 1
        out = {self.U_exp[0]: {self.U_exp[1:]: self.U_sign}}
        for j, fj in enumerate(self.factors):
            if j != i:
                out = _pmul_h(out, fj.poly(r))
        return out

    # -- the kernel
    def divide(self, f: CharacterElement) -> tuple[dict, dict]:
        """``(q, r)`` in split coordinates with ``f/U = q P + r``, ``0 <= deg r < K``."""
        g = self.to_split(f)
        ue, us = self.U_exp, self.U_sign
        g = {d - ue[0]: _hshift(h, tuple(-x for x in ue[1:]), us) for d, h in g.items()}
        K, P = self.K, self.P
        q: dict = {}
        while g and max(g) >= K:
            t = max(g)
            c = g.pop(t)
            _acc(q, t - K, c, 1)
            for d, pd in P.items():
                if d != K:
                    _acc(g, t - K + d, kernels.mul(c, pd), -1)
        if g and min(g) < 0:
            ginv, sinv = self.p0_inv
            while g and min(g) < 0:
                s = min(g)
                c = _hshift(g.pop(s), ginv, sinv)
                _acc(q, s, c, 1)
                for d, pd in P.items():
                    if d != 0:
                        _acc(g, s + d, kernels.mul(c, pd), -1)
        return q, g

    def f0(self, f: CharacterElement) -> CharacterElement:
        return self.to_ambient(self.divide(f)[0])

    def proper_numerators(self, r: Mapping) -> list[tuple[dict, list[CharacterElement]]]:
        """For each factor, ``C_i`` as ``(numerator z-poly over R(H), denominator list)``."""
        return [self.proper_numerators_for(r, i) for i in range(len(self.factors))]

    def q_operator(self, f: CharacterElement, i: int, r: Mapping | None = None) -> FractionElement:
        """``Lambda * (proper part at factor i of f / Lambda)`` in ``Q(H)``-coefficients."""
        if r is None:
            r = self.divide(f)[1]
        num, dens = self.proper_numerators_for(r, i)
        total = _pmul_h(self._complements[i], num)
        return FractionElement(self.to_ambient(total), [self.h_to_ambient(d.terms) for d in dens])

    def proper_numerators_for(self, r: Mapping, i: int):
        fac = self.factors[i]
        rk = self.n - 1
        v = [CharacterElement._make(rk, h) for h in fac.reduce(r)]
        dens = []
        for det, adj in self._inverse[i]:
            v = [sum((adj[a][b] * v[b] for b in range(fac.m)), CharacterElement.zero(rk)) for a in range(fac.m)]
            dens.append(det)
        return {l: c.terms for l, c in enumerate(v) if c}, dens

    def q_operators(self, f: CharacterElement) -> list[FractionElement]:
        r = self.divide(f)[1]
        return [self.q_operator(f, i, r) for i in range(len(self.factors))]

    def unit_of(self, i: int) -> dict:
        """``unit_i`` with ``1 - x^alpha_i = unit_i * P_i`` (split coordinates)."""
        k = self.ks[i]
        if k < 0:
            return {k: {self._zero_h: 1}}
        return {0: {self.betas[i]: -1}}


@lru_cache(maxsize=4096)
def _cached_frame(weights: tuple, xi: tuple) -> PFFrame:
    return PFFrame(weights, xi)


def pf_frame(weights: Sequence[Sequence[int]], xi: Sequence[int]) -> PFFrame:
    return _cached_frame(tuple(tuple(int(x) for x in a) for a in weights), tuple(int(x) for x in xi))


@dataclass
class LagrangeTerm:
    weight: tuple[int, ...]
    k: int
    fi: FractionElement

    @property
    def sign(self) -> int:
        return 1 if self.k > 0 else -1


@dataclass
class LagrangeDecomposition:
    """``f / prod(1 - x^alpha_i) = f0 - sum sgn(k_i) f_i / (1 - x^alpha_i)``."""

    f: CharacterElement
    xi: tuple[int, ...]
    f0: CharacterElement
    terms: list[LagrangeTerm]

    def reconstruction_holds(self) -> bool:
        """Cross-multiplied identity, checked exactly."""
        factors = [one_minus(t.weight) for t in self.terms]
        D = CharacterElement.one(self.f.rank)
        for fac in factors:
            D = D * fac
        rhs = FractionElement(self.f0 * D)
        for i, t in enumerate(self.terms):
            rest = CharacterElement.one(self.f.rank)
            for j, fac in enumerate(factors):
                if j != i:
                    rest = rest * fac
            rhs = rhs - t.fi * rest * t.sign
        return rhs == self.f


def interp_rg(f: CharacterElement, weights: Sequence[Sequence[int]], xi: Sequence[int], check: bool = True) -> LagrangeDecomposition:
    """Lagrange decomposition of ``f / prod(1 - x^alpha_i)`` in ``R(G)``."""
    frame = pf_frame(weights, xi)
    if f.rank != frame.n:
        raise ValueError("rank mismatch")
    q, r = frame.divide(f)
    f0 = frame.to_ambient(q)
    # certificate: (f - U r) / prod(1 - x^alpha_i) must be an honest character
    Ur = _pmul_h({frame.U_exp[0]: {frame.U_exp[1:]: frame.U_sign}}, r)
    cert = is_character(FractionElement(f - frame.to_ambient(Ur), [one_minus(a) for a in frame.weights]))
    if cert is None or cert != f0:
        raise IntegralityFailure(f"polynomial part of {f} failed to certify")
    terms = []
    for i, (num, dens) in enumerate(frame.proper_numerators(r)):
        sgn = -1 if frame.ks[i] > 0 else 1
        fi = _pmul_h(frame.unit_of(i), num)
        fr = FractionElement(frame.to_ambient(fi) * sgn, [frame.h_to_ambient(d.terms) for d in dens])
        terms.append(LagrangeTerm(frame.weights[i], frame.ks[i], fr))
    dec = LagrangeDecomposition(f, frame.xi, f0, terms)
    if check and not dec.reconstruction_holds():
        raise IntegralityFailure("reconstruction identity failed")
    return dec


# --------------------------------------------------------- projections pi_i


def pi_root_sum(ki: int, beta_i: Sequence[int], kj: int, beta_j: Sequence[int]):
    """Average of ``a_j w^k_j`` over the roots ``w`` of the normalized factor ``i``.

    Returns the ``H``-exponent of the result, or ``None`` when it vanishes.
    Power sums of the roots of ``z^m - c`` are ``m c^(s/m)`` if ``m | s``
    and zero otherwise.
    """
    m = abs(ki)
    if kj % m:
        return None
    gamma = tuple(beta_i) if ki < 0 else tuple(-x for x in beta_i)
    t = kj // m
    return tuple(b + t * g for b, g in zip(beta_j, gamma))


def pi_lattice(alpha_i: Sequence[int], alpha_j: Sequence[int], xi: Sequence[int]):
    """Same projection computed in ``R(G_i) = Z[Z^n / Z alpha_i]``.

    The class of ``alpha_j`` is kept when its pairing with ``xi`` is
    divisible by ``k_i`` and then moved to pairing zero along ``alpha_i``.
    Returns the ambient exponent (pairing zero with ``xi``) or ``None``.
    """
    q = QuotientLattice(len(alpha_i), [alpha_i])
    lam = q.canonical_form(alpha_j)
    ki = dot(alpha_i, xi)
    m = dot(lam, xi)
    if m % ki:
        return None
    t = m // ki
    return tuple(a - t * b for a, b in zip(lam, alpha_i))


# --------------------------------------------------------------- cohomology


class CohFrame:
    """Cohomological analogue of :class:`PFFrame`: linear forms instead of binomials.

    In split coordinates ``t = B u`` a weight becomes ``k s + beta(t')`` with
    ``s = t_1``; the polynomial part in ``s`` of ``a / prod(alpha_i)`` is the
    cohomological local index and the residues at ``s = -beta_i/k_i`` give
    the proper parts.
    """

    def __init__(self, weights: Sequence[Sequence[int]], xi: Sequence[int]):
        self.weights = tuple(tuple(int(x) for x in a) for a in weights)
        self.xi = tuple(int(x) for x in xi)
        n = self.n = len(self.xi)
        if content(self.xi) != 1:
            raise NotPrimitive(f"xi={list(self.xi)} is not primitive")
        for a, b in combinations(self.weights, 2):
            if all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n)):
                raise DependentWeights(f"{list(a)} and {list(b)} are linearly dependent")
        self.B, self.Binv = split_basis(self.xi)
        # in t-coordinates the linear form alpha has coefficient vector alpha @ B^-1
        self.forms = []
        for a in self.weights:
            c = tuple(sum(a[i] * self.Binv.rows[i][j] for i in range(n)) for j in range(n))
            if c[0] == 0:
                raise ZeroPairing(f"weight {list(a)} pairs to 0 with xi={list(self.xi)}")
            self.forms.append(c)
        self.ks = [c[0] for c in self.forms]
        den = CohPolynomial.one(n)
        for c in self.forms:
            den = den * CohPolynomial.linear_form(c)
        self.den = den

    def to_t(self, a: CohPolynomial) -> CohPolynomial:
        return a.substitute(self.Binv)

    def to_u(self, a: CohPolynomial) -> CohPolynomial:
        return a.substitute(self.B)

    def divide(self, a: CohPolynomial) -> tuple[CohPolynomial, CohPolynomial]:
        """Division in ``s`` by the product of forms; returns ``(q, r)`` in t-coordinates."""
        t = self.to_t(a)
        n = self.n
        D = _group(self.den.terms)
        m = len(self.weights)
        lead = D[m][(0,) * (n - 1)]
        g = _group(t.terms)
        q: dict = {}
        while g and max(g) >= m:
            top = max(g)
            c = {e: v / lead for e, v in g.pop(top).items()}
            _acc(q, top - m, c, 1)
            for d, pd in D.items():
                if d != m:
                    _acc(g, top - m + d, kernels.mul(c, pd), -1)
        return CohPolynomial._make(n, _ungroup(q)), CohPolynomial._make(n, _ungroup(g))

    def local_index(self, a: CohPolynomial) -> CohPolynomial:
        return self.to_u(self.divide(a)[0])

    def q_operator(self, a: CohPolynomial, i: int, r: CohPolynomial | None = None) -> FractionElement:
        """``prod(alpha) * residue part at alpha_i`` of ``a / prod(alpha)`` (u-coordinates)."""
        if r is None:
            r = self.divide(a)[1]
        n = self.n
        ki = self.ks[i]
        bi = self.forms[i][1:]
        # substitute s = -beta_i(t') / k_i
        rows = [(0,) + tuple(Fraction(-b, ki) for b in bi)] + [
            tuple(int(j == l) for j in range(n)) for l in range(1, n)
        ]
        val = _subst_rational(r, rows)
        num = val
        dens = []
        for j, c in enumerate(self.forms):
            if j == i:
                continue
            # k_i * (alpha_j restricted to s = s_i) = k_i beta_j - k_j beta_i, a form in t'
            form = tuple([0] + [ki * c[l] - c[0] * self.forms[i][l] for l in range(1, n)])
            num = num * Fraction(ki)
            dens.append(CohPolynomial.linear_form(form))
        # multiply by prod_{j != i} (k_j s + beta_j)
        for j, c in enumerate(self.forms):
            if j != i:
                num = num * CohPolynomial.linear_form(c)
        return FractionElement(self.to_u(num), [self.to_u(d) for d in dens])


def _subst_rational(p: CohPolynomial, rows) -> CohPolynomial:
    n = p.rank
    images = []
    for r in rows:
        images.append(
            CohPolynomial._make(n, {tuple(int(i == j) for j in range(n)): Fraction(c) for i, c in enumerate(r) if c})
        )
    out = CohPolynomial.zero(n)
    for e, c in p.terms.items():
        t = CohPolynomial.constant(n, c)
        for img, k in zip(images, e):
            if k:
                t = t * img**k
        out = out + t
    return out


@lru_cache(maxsize=1024)
def _cached_coh(weights: tuple, xi: tuple) -> CohFrame:
    return CohFrame(weights, xi)


def coh_frame(weights: Sequence[Sequence[int]], xi: Sequence[int]) -> CohFrame:
    return _cached_coh(tuple(tuple(int(x) for x in a) for a in weights), tuple(int(x) for x in xi))
