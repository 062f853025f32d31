"""Character rings of tori and their fraction fields.

A :class:`CharacterElement` is a finitely supported integer combination of
characters ``x^e`` of a lattice.  The lattice is either ``Z^n`` (given by its
rank) or a :class:`~gkmk.lattice.QuotientLattice`, in which case exponents
are stored as canonical coset representatives.  :class:`FractionElement`
keeps quotients lazily, with the denominator kept as a multiset of
normalized factors so that common denominators stay small.
"""

from __future__ import annotations

import cmath
import re
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import kernels
from .lattice import IntMatrix, NotPrimitive, QuotientLattice, ZeroVector, complete_to_basis, content, dot
from .lattice import inverse_unimodular

__all__ = [
    "CharacterElement",
    "CohPolynomial",
    "ContextMismatch",
    "DenominatorVanishes",
    "FractionElement",
    "NotDivisible",
    "ZSplitForm",
    "divisible_mod_weight",
    "eval_numeric",
    "exact_div",
    "is_character",
    "one_minus",
    "parse_element",
    "restrict",
    "split_basis",
    "z_join",
    "z_split",
]

Context = Union[int, QuotientLattice]


class ContextMismatch(ValueError):
    """Operands live over different lattices."""


class NotDivisible(ArithmeticError):
    """Exact division failed; ``remainder`` is the obstruction found."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class DenominatorVanishes(ZeroDivisionError):
    """A denominator evaluated to zero at the requested point."""


def _rank(ctx: Context) -> int:
    return ctx if isinstance(ctx, int) else ctx.ambient_rank


def _int_quo(c, d):
    if isinstance(c, int) and isinstance(d, int):
        return c // d if c % d == 0 else None
    q = c / d
    if isinstance(q, Fraction) and q.denominator == 1 and isinstance(c, int):
        return int(q)
    return q


class _TermMap:
    """Shared machinery for immutable sparse term maps over a context."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx, terms: Mapping | None = None):
        self.ctx = ctx
        self._hash = None
        n = _rank(ctx)
        out: dict = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            if isinstance(ctx, QuotientLattice):
                e = ctx.canonical_form(e)
            c = self._coerce(c)
            if e in out:
                c = out[e] + c
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        self.terms = out

    @staticmethod
    def _coerce(c):
        return c

    @classmethod
    def _make(cls, ctx, terms: dict):
        # trusted constructor: keys canonical, no zero coefficients
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._make(ctx, {})

    @classmethod
    def one(cls, ctx):
        return cls.constant(ctx, 1)

    @classmethod
    def constant(cls, ctx, c):
        c = cls._coerce(c)
        return cls._make(ctx, {(0,) * _rank(ctx): c} if c else {})

    @classmethod
    def monomial(cls, ctx, e: Sequence[int], c=1):
        return cls(ctx, {tuple(e): c})

    @property
    def rank(self) -> int:
        return _rank(self.ctx)

    def _check(self, other):
        if type(other) is not type(self):
            raise ContextMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ContextMismatch(f"contexts differ: {self.ctx!r} vs {other.ctx!r}")

    def _lift(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.constant(self.ctx, other)
        if isinstance(other, _TermMap):
            self._check(other)
            return other
        return NotImplemented

    def _canon(self, terms):
        if not isinstance(self.ctx, QuotientLattice):
            return terms
        out: dict = {}
        cf = self.ctx.canonical_form
        for e, c in terms.items():
            k = cf(e)
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._make(self.ctx, kernels.axpy(dict(self.terms), other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._make(self.ctx, kernels.axpy(dict(self.terms), other.terms, -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._make(self.ctx, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _TermMap):
            self._check(other)
            if not self.terms or not other.terms:
                return self.zero(self.ctx)
            return self._make(self.ctx, self._canon(kernels.mul(self.terms, other.terms)))
        if isinstance(other, FractionElement):
            return NotImplemented
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other:
            return self.zero(self.ctx)
        return self._make(self.ctx, {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                if c not in (1, -1):
                    raise NotDivisible(f"{self} is not a unit")
                return self._make(self.ctx, self._canon({tuple(x * k for x in e): c ** (-k)}))
            raise NotDivisible(f"{self} is not a unit")
        out = self.one(self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.constant(self.ctx, other)
        if isinstance(other, FractionElement):
            return other == self
        if not isinstance(other, _TermMap) or type(other) is not type(self):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.rank, 0)

    def shift(self, e: Sequence[int]):
        """Multiply by the monomial ``x^e``."""
        e = tuple(e)
        terms = {tuple([a + b for a, b in zip(k, e)]): c for k, c in self.terms.items()}
        return self._make(self.ctx, self._canon(terms))

    def items(self):
        return sorted(self.terms.items(), key=_display_key)

    def map_exponents(self, mat: IntMatrix | Sequence[Sequence[int]], ctx=None):
        """Send each exponent row vector ``e`` to ``e @ mat`` (a lattice map)."""
        rows = mat.rows if isinstance(mat, IntMatrix) else tuple(tuple(r) for r in mat)
        ncols = mat.ncols if isinstance(mat, IntMatrix) else (len(rows[0]) if rows else 0)
        if len(rows) != self.rank:
            raise ContextMismatch("matrix rows must match rank")
        if ctx is None:
            ctx = ncols
        if _rank(ctx) != ncols:
            raise ContextMismatch("target context rank mismatch")
        if ncols == 0:
            total = sum(self.terms.values())
            return type(self)._make(ctx, {(): total} if total else {})
        out = type(self)._make(ctx, kernels.linear_map(self.terms, rows))
        if isinstance(ctx, QuotientLattice):
            out = type(self)._make(ctx, out._canon(out.terms))
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self.ctx!r}, {self!s})"

    def __str__(self):
        return render(self.terms)


class CharacterElement(_TermMap):
    """Element of the integral group ring of a character lattice."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool):
            return int(c)
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise TypeError(f"non-integral coefficient {c}")
            return int(c)
        if isinstance(c, str):
            return int(c)
        # other exact rings (cyclotomic integers) pass through untouched
        if hasattr(c, "__add__") and hasattr(c, "__mul__") and not isinstance(c, float):
            return c
        raise TypeError(f"unsupported coefficient {c!r}")

    def exact_div(self, other: CharacterElement) -> CharacterElement:
        return exact_div(self, other)

    def to_pairs(self) -> list:
        """JSON form: ``[[exponent, "coefficient"], ...]`` in display order."""
        return [[list(e), str(c)] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, ctx, pairs: Iterable) -> CharacterElement:
        terms: dict = {}
        for e, c in pairs:
            e = tuple(int(x) for x in e)
            terms[e] = terms.get(e, 0) + int(c)
        return cls(ctx, terms)

    def evaluate(self, point: Sequence[complex]) -> complex:
        return _evaluate(self.terms, point)


def one_minus(alpha: Sequence[int], ctx: Context | None = None) -> CharacterElement:
    """The binomial ``1 - x^alpha``."""
    alpha = tuple(alpha)
    ctx = len(alpha) if ctx is None else ctx
    return CharacterElement(ctx, {(0,) * len(alpha): 1}) - CharacterElement(ctx, {alpha: 1})


def _display_key(item):
    e = item[0]
    return (sum(abs(x) for x in e), e)


def render(terms: Mapping) -> str:
    """Human-readable text form, e.g. ``1 - x^(-1)`` or ``2*x^(1,0) + 3``."""
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), key=_display_key):
        neg = _is_negative(c)
        a = -c if neg else c
        if not any(e):
            body = _coef_str(a)
        else:
            mono = "x^(" + ",".join(str(x) for x in e) + ")"
            body = mono if a == 1 else f"{_coef_str(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


def _coef_str(c) -> str:
    s = str(c)
    return f"({s})" if any(ch in s for ch in "+ ") else s


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:x\^\((?P<exp>[-\d,\s]*)\))?\s*""",
    re.VERBOSE,
)


def parse_element(text: str, ctx: Context, cls=None):
    """Inverse of :func:`render`."""
    cls = cls or CharacterElement
    s = text.strip()
    if s == "0":
        return cls.zero(ctx)
    n = _rank(ctx)
    terms: dict = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("exp") is None):
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("exp") is not None:
            e = tuple(int(x) for x in m.group("exp").split(",") if x.strip())
        else:
            e = (0,) * n
        if len(e) != n:
            raise ValueError(f"exponent {e} has wrong length in {text!r}")
        terms[e] = terms.get(e, 0) + coef
        pos = m.end()
    return cls(ctx, terms)


def exact_div(f: _TermMap, g: _TermMap):
    """Exact quotient ``q`` with ``q * g == f``; raises :class:`NotDivisible`."""
    f._check(g)
    if isinstance(f.ctx, QuotientLattice):
        raise ContextMismatch("exact division needs a free lattice")
    if not g:
        raise ZeroDivisionError("division by zero")
    if not f:
        return f
    if g.is_monomial():
        (e, c), = g.terms.items()
        q = {}
        for k, v in f.terms.items():
            r = _int_quo(v, c)
            if r is None:
                raise NotDivisible(f"coefficient {v} not divisible by {c}", f)
            q[tuple([a - b for a, b in zip(k, e)])] = r
        return type(f)._make(f.ctx, q)
    q, rem = kernels.divide(f.terms, g.terms, _int_quo)
    if q is None:
        raise NotDivisible(f"{f} is not divisible by {g}", type(f)._make(f.ctx, rem))
    return type(f)._make(f.ctx, q)


def divisible_mod_weight(f: CharacterElement, alpha: Sequence[int]) -> bool:
    """Whether ``f`` lies in the ideal generated by ``x^alpha - 1``.

    Computed directly from coset sums over ``Z alpha``, without going through
    a quotient lattice.
    """
    alpha = tuple(alpha)
    if not any(alpha):
        raise ZeroVector("alpha must be nonzero")
    p = next(i for i, a in enumerate(alpha) if a)
    sums: dict = {}
    for e, c in f.terms.items():
        t = e[p] // alpha[p]
        key = tuple(x - t * a for x, a in zip(e, alpha))
        sums[key] = sums.get(key, 0) + c
    return not any(sums.values())


def restrict(f: CharacterElement, q: QuotientLattice) -> CharacterElement:
    """Image of ``f`` under the restriction ``Z^N -> Z^N / relations``."""
    if f.rank != q.ambient_rank:
        raise ContextMismatch(f"rank {f.rank} does not match lattice rank {q.ambient_rank}")
    if isinstance(f.ctx, QuotientLattice) and f.ctx != q:
        # restriction along a further quotient: relations must contain the old ones
        if not all(q.contains(r) for r in f.ctx.relations):
            raise ContextMismatch("target lattice is not a quotient of the source")
    return type(f)(q, f.terms)


# ----------------------------------------------------------------- z-splitting


def split_basis(xi: Sequence[int]) -> tuple[IntMatrix, IntMatrix]:
    """``(B, B^-1)`` for the splitting ``G = T x H`` along the circle ``xi``.

    Split coordinates of a weight ``lam`` are ``lam @ B^-1``; the first one is
    the pairing ``lam(xi)``.
    """
    xi = tuple(xi)
    if content(xi) != 1:
        raise NotPrimitive(f"{xi} is not primitive")
    B = complete_to_basis(xi)
    return B, inverse_unimodular(B)


class ZSplitForm:
    """``sum_k c_k z^k`` with ``c_k`` in the character ring of ``H``."""

    __slots__ = ("basis", "inverse", "coeffs")

    def __init__(self, basis: IntMatrix, inverse: IntMatrix, coeffs: Mapping[int, CharacterElement]):
        self.basis = basis
        self.inverse = inverse
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def join(self) -> CharacterElement:
        return z_join(self)

    def degrees(self) -> list[int]:
        return sorted(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ZSplitForm)
            and self.basis == other.basis
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"z^{k}: {c}" for k, c in sorted(self.coeffs.items()))
        return f"ZSplitForm({{{body}}})"


def z_split(f: CharacterElement, xi: Sequence[int]) -> ZSplitForm:
    B, Binv = split_basis(xi)
    n = f.rank
    if len(xi) != n:
        raise ContextMismatch("xi length does not match rank")
    coeffs: dict = {}
    for e, c in kernels.linear_map(f.terms, Binv.rows).items():
        coeffs.setdefault(e[0], {})[e[1:]] = c
    return ZSplitForm(B, Binv, {k: CharacterElement._make(n - 1, t) for k, t in coeffs.items()})


def z_join(zs: ZSplitForm) -> CharacterElement:
    n = zs.basis.nrows
    terms: dict = {}
    for k, c in zs.coeffs.items():
        for e, v in c.terms.items():
            terms[(k,) + e] = v
    return CharacterElement._make(n, kernels.linear_map(terms, zs.basis.rows) if terms else {})


# ------------------------------------------------------------------ fractions


def _normalize_factor(d: _TermMap):
    """Split ``d = unit * assoc`` with ``assoc`` canonical; returns both.

    For Laurent rings the unit is ``+-x^e`` with ``e`` the lex-least exponent.
    For polynomial rings with rational coefficients it is the leading scalar.
    """
    e0 = min(d.terms)
    c0 = d.terms[e0]
    if isinstance(d, CohPolynomial):
        return c0, type(d)._make(d.ctx, {e: c / c0 for e, c in d.terms.items()})
    if isinstance(c0, int) and c0 < 0:
        sign = -1
    else:
        sign = 1
    assoc = type(d)._make(
        d.ctx, {tuple([a - b for a, b in zip(e, e0)]): sign * c for e, c in d.terms.items()}
    )
    return (sign, e0), assoc


class FractionElement:
    """Lazy quotient ``numerator / prod(factors)``.

    Factors are stored in a canonical associate form so that equal factors
    from different sources are recognised when forming common denominators.
    """

    __slots__ = ("numerator", "factors")

    def __init__(self, numerator, denominator=None, *, factors: Mapping | None = None):
        self.numerator = numerator
        self.factors: Counter = Counter()
        if factors:
            self.factors.update(factors)
        if denominator is not None:
            if isinstance(denominator, (list, tuple)):
                for d in denominator:
                    self._absorb(d)
            else:
                self._absorb(denominator)

    def _absorb(self, d):
        self.numerator._check(d)
        if not d:
            raise ZeroDivisionError("zero denominator")
        unit, assoc = _normalize_factor(d)
        if isinstance(d, CohPolynomial):
            self.numerator = self.numerator * (Fraction(1) / unit)
        else:
            sign, e0 = unit
            self.numerator = self.numerator.shift(tuple(-x for x in e0)) * sign
        if not assoc.is_constant():
            self.factors[assoc] += 1
        else:
            c = assoc.constant_term()
            if c != 1:
                # non-unit integer constant stays a factor
                self.factors[assoc] += 1

    @classmethod
    def from_ring(cls, a) -> FractionElement:
        return cls(a)

    @property
    def ctx(self):
        return self.numerator.ctx

    def denominator(self):
        out = self.numerator.one(self.numerator.ctx)
        for f, m in self.factors.items():
            out = out * f**m
        return out

    def _scaled_to(self, target: Counter):
        missing = target - self.factors
        num = self.numerator
        for f, m in missing.items():
            num = num * f**m
        return num

    def _coerce(self, other):
        if isinstance(other, FractionElement):
            self.numerator._check(other.numerator)
            return other
        if isinstance(other, _TermMap):
            self.numerator._check(other)
            return FractionElement(other)
        if isinstance(other, (int, Fraction)):
            return FractionElement(self.numerator.constant(self.ctx, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        lcm = self.factors | other.factors
        out = FractionElement(self._scaled_to(lcm) + other._scaled_to(lcm))
        out.factors = lcm
        return out

    __radd__ = __add__

    def __neg__(self):
        out = FractionElement(-self.numerator)
        out.factors = Counter(self.factors)
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = FractionElement(self.numerator * other.numerator)
        out.factors = self.factors + other.factors
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _TermMap):
            out = FractionElement(self.numerator, other)
            out.factors += self.factors
            return out
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        lcm = self.factors | other.factors
        return self._scaled_to(lcm) == other._scaled_to(lcm)

    __hash__ = None

    def __bool__(self):
        return bool(self.numerator)

    def is_character(self):
        return is_character(self)

    def evaluate(self, point):
        return eval_numeric(self, point)

    def __repr__(self):
        dens = " * ".join(
            f"({f})" + (f"^{m}" if m > 1 else "") for f, m in sorted(self.factors.items(), key=lambda t: str(t[0]))
        )
        return f"FractionElement(({self.numerator}) / {dens or '1'})"


def is_character(fr: FractionElement | _TermMap):
    """The ring element represented by ``fr``, or ``None`` if it is not one."""
    if isinstance(fr, _TermMap):
        return fr
    num = fr.numerator
    for f, m in sorted(fr.factors.items(), key=lambda t: len(t[0])):
        for _ in range(m):
            try:
                num = exact_div(num, f)
            except NotDivisible:
                return None
    return num


def _evaluate(terms, point) -> complex:
    total = 0j
    for e, c in terms.items():
        v = complex(c)
        for z, k in zip(point, e):
            if k:
                v *= z**k
        total += v
    return total


def eval_numeric(f, point: Sequence[complex], tol: float = 1e-12) -> complex:
    """Substitute ``x^lam -> prod point_j^lam_j``."""
    if isinstance(f, FractionElement):
        if len(point) != f.numerator.rank:
            raise ContextMismatch("point length does not match rank")
        den = 1 + 0j
        for g, m in f.factors.items():
            den *= _evaluate(g.terms, point) ** m
        if abs(den) < tol:
            raise DenominatorVanishes(f"denominator vanishes at {point}")
        return _evaluate(f.numerator.terms, point) / den
    if len(point) != f.rank:
        raise ContextMismatch("point length does not match rank")
    return _evaluate(f.terms, point)


def random_unit_point(rng, n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * rng.random()) for _ in range(n))


# ------------------------------------------------------------- cohomology ring


class CohPolynomial(_TermMap):
    """Polynomial in ``u_1..u_n`` with rational coefficients.

    Used for equivariant cohomology of a point; a weight ``alpha`` acts as the
    linear form ``sum alpha_j u_j``.
    """

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, bool):
            return Fraction(int(c))
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        if isinstance(c, str):
            return Fraction(c)
        raise TypeError(f"unsupported coefficient {c!r}")

    def __init__(self, ctx, terms=None):
        super().__init__(ctx, terms)
        if any(x < 0 for e in self.terms for x in e):
            raise ValueError("negative exponent in a polynomial")

    @classmethod
    def linear_form(cls, alpha: Sequence[int]) -> CohPolynomial:
        n = len(alpha)
        return cls._make(
            n, {tuple(int(i == j) for j in range(n)): Fraction(a) for i, a in enumerate(alpha) if a}
        )

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def substitute(self, mat: IntMatrix | Sequence[Sequence[int]]) -> CohPolynomial:
        """Linear change of variables ``u_j -> sum_k mat[j][k] t_k``."""
        rows = mat.rows if isinstance(mat, IntMatrix) else tuple(tuple(r) for r in mat)
        m = len(rows[0]) if rows else 0
        images = [CohPolynomial.linear_form(r) if any(r) else CohPolynomial.zero(m) for r in rows]
        out = CohPolynomial.zero(m)
        one = CohPolynomial.one(m)
        for e, c in self.terms.items():
            t = one * c
            for img, k in zip(images, e):
                if k:
                    t = t * img**k
            out = out + t
        return out

    def to_pairs(self) -> list:
        return [[list(e), str(c)] for e, c in self.items()]

    @classmethod
    def from_pairs(cls, ctx, pairs: Iterable) -> CohPolynomial:
        terms: dict = {}
        for e, c in pairs:
            e = tuple(int(x) for x in e)
            terms[e] = terms.get(e, 0) + Fraction(c)
        return cls(ctx, terms)

    def evaluate(self, point: Sequence) -> complex:
        return _evaluate(self.terms, point)
