"""Local indices at fixed points, in K-theory and in cohomology."""

from __future__ import annotations

from typing import Mapping

from .charring import CharacterElement, CohPolynomial, FractionElement, exact_div, is_character, one_minus
from .charring import NotDivisible
from .gkm import GkmGraph, KClass, MorseOrientation, OrientedEdge, ClassCheck
from .lagrange import IntegralityFailure, coh_frame, pf_frame
from .lattice import dot

__all__ = [
    "NotTorsionFree",
    "coh_check_class",
    "coh_lambda",
    "coh_local_index",
    "coh_local_index_torsion_free",
    "coh_total_index",
    "local_index",
    "local_index_torsion_free",
    "total_index",
]


class NotTorsionFree(ValueError):
    """Some descending pairing with the vertex circle differs from -1."""


def _frame(o: MorseOrientation, p: str):
    return pf_frame(o.descending_labels(p), o.xi_at(p))


def local_index(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CharacterElement], p: str) -> CharacterElement:
    """Polynomial part of ``a_p / Lambda_p^-`` along the circle at ``p``."""
    return _frame(o, p).f0(a[p])


def total_index(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CharacterElement]) -> KClass:
    return KClass({p: local_index(g, o, a, p) for p in o.order}, g.rank)


def _phi(f: CharacterElement, alpha, xi) -> CharacterElement:
    """Lift from ``R(G_alpha)`` choosing the representative of pairing zero (``k = -1``)."""
    terms: dict = {}
    for e, c in f.terms.items():
        t = dot(e, xi)
        key = tuple(x + t * a for x, a in zip(e, alpha))
        terms[key] = terms.get(key, 0) + c
    return CharacterElement(f.ctx, terms)


def local_index_torsion_free(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CharacterElement], p: str) -> CharacterElement:
    """Closed sum over the descending edges, valid when every pairing is ``-1``.

    ``sum_i phi_i(a_{q_i}) / ((1 - x^-alpha_i) prod_{j != i} (1 - x^(alpha_j - alpha_i)))
    + a_p / prod_i (1 - x^alpha_i)``, cleared over common factors and
    divided exactly.
    """
    xi = o.xi_at(p)
    desc = o.descending[p]
    if any(d.k != -1 for d in desc):
        raise NotTorsionFree(f"pairings at {p} are {[d.k for d in desc]}")
    n = g.rank
    total = FractionElement(a[p], [one_minus(d.label) for d in desc]) if desc else FractionElement(a[p])
    for i, d in enumerate(desc):
        ai = d.label
        dens = [one_minus(tuple(-x for x in ai))]
        for j, e in enumerate(desc):
            if j != i:
                dens.append(one_minus(tuple(x - y for x, y in zip(e.label, ai))))
        total = total + FractionElement(_phi(a[d.target], ai, xi), dens)
    out = is_character(total)
    if out is None:
        raise IntegralityFailure(f"torsion-free sum at {p} is not a character")
    return out


# ------------------------------------------------------------------ cohomology


def coh_lambda(g: GkmGraph, o: MorseOrientation, p: str) -> CohPolynomial:
    out = CohPolynomial.one(g.rank)
    for d in o.descending[p]:
        out = out * CohPolynomial.linear_form(d.label)
    return out


def coh_check_class(g: GkmGraph, chi: Mapping[str, CohPolynomial]) -> ClassCheck:
    """``chi_p - chi_q`` divisible by the linear form of every edge."""
    for i, e in enumerate(g.edges):
        diff = chi[e.source] - chi[e.target]
        if not diff:
            continue
        try:
            exact_div(diff, CohPolynomial.linear_form(e.label))
        except NotDivisible:
            return ClassCheck(False, OrientedEdge(i, e.source, e.target, e.label))
    return ClassCheck(True)


def coh_local_index(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CohPolynomial], p: str) -> CohPolynomial:
    """Polynomial part in the circle variable of ``a_p / prod alpha_i``."""
    return coh_frame(o.descending_labels(p), o.xi_at(p)).local_index(a[p])


def coh_total_index(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CohPolynomial]) -> dict[str, CohPolynomial]:
    return {p: coh_local_index(g, o, a, p) for p in o.order}


def _psi(f: CohPolynomial, alpha, xi) -> CohPolynomial:
    """``u -> u + alpha(u) xi``: the pullback killing ``alpha`` when ``alpha(xi) = -1``."""
    n = len(alpha)
    rows = [tuple(int(j == l) + xi[j] * alpha[l] for l in range(n)) for j in range(n)]
    return f.substitute(rows)


def coh_local_index_torsion_free(g: GkmGraph, o: MorseOrientation, a: Mapping[str, CohPolynomial], p: str) -> CohPolynomial:
    """Cohomological closed sum: binomials ``1 - x^beta`` replaced by forms ``beta``."""
    xi = o.xi_at(p)
    desc = o.descending[p]
    if any(d.k != -1 for d in desc):
        raise NotTorsionFree(f"pairings at {p} are {[d.k for d in desc]}")
    lin = CohPolynomial.linear_form
    total = FractionElement(a[p], [lin(d.label) for d in desc]) if desc else FractionElement(a[p])
    for i, d in enumerate(desc):
        ai = d.label
        dens = [lin(tuple(-x for x in ai))]
        for j, e in enumerate(desc):
            if j != i:
                dens.append(lin(tuple(x - y for x, y in zip(e.label, ai))))
        total = total + FractionElement(_psi(a[d.target], ai, xi), dens)
    out = is_character(total)
    if out is None:
        raise IntegralityFailure(f"torsion-free cohomological sum at {p} is not a polynomial")
    return out
