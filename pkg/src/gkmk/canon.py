"""The canonical basis ``tau_p``, decomposition in it, and the path formula."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .charring import CharacterElement, CohPolynomial, FractionElement, is_character
from .gkm import (
    GkmGraph,
    KClass,
    MorseOrientation,
    OrientedEdge,
    ascending_paths,
    check_class,
    lambda_minus,
)
from .lagrange import IntegralityFailure, coh_frame, pf_frame
from .localindex import coh_check_class, coh_lambda, coh_local_index, local_index

__all__ = [
    "CanonicalBasis",
    "CohBasis",
    "EdgeConditionFailure",
    "ReconstructionFailure",
    "basis",
    "coh_basis",
    "coh_tau",
    "decompose",
    "q_e",
    "tau",
    "tau_via_paths",
]


class EdgeConditionFailure(ArithmeticError):
    pass


class ReconstructionFailure(ArithmeticError):
    pass


def _frame(o: MorseOrientation, q: str):
    return pf_frame(o.descending_labels(q), o.xi_at(q))


def _solve_vertex(o: MorseOrientation, q: str, lower: Mapping[str, CharacterElement], delta: bool, rank: int) -> CharacterElement:
    """``a_q = delta * Lambda_q + sum_i Q_{e_i}(a_{q_i})``, certified integral."""
    frame = _frame(o, q)
    total = FractionElement(CharacterElement.zero(rank))
    for i, d in enumerate(o.descending[q]):
        h = lower[d.target]
        if h:
            total = total + frame.q_operator(h, i)
    out = is_character(total)
    if out is None:
        raise IntegralityFailure(f"restriction at {q} is not a character")
    if delta:
        lam = CharacterElement.one(rank)
        for d in o.descending[q]:
            lam = lam * (CharacterElement.one(rank) - CharacterElement.monomial(rank, d.label))
        out = out + lam
    return out


def tau(g: GkmGraph, o: MorseOrientation, p: str, verify: bool = True) -> KClass:
    """The class with local indices the indicator of ``p``."""
    if p not in o.order:
        raise KeyError(p)
    vals: dict[str, CharacterElement] = {}
    zero = CharacterElement.zero(g.rank)
    seen_p = False
    for q in o.order:
        seen_p = seen_p or q == p
        if not seen_p:
            vals[q] = zero
            continue
        vals[q] = _solve_vertex(o, q, vals, q == p, g.rank)
    out = KClass(vals, g.rank)
    if verify:
        chk = check_class(g, out)
        if not chk:
            raise EdgeConditionFailure(f"tau_{p} fails the edge condition on {chk.witness}")
        for q in o.order:
            if local_index(g, o, out, q) != int(q == p):
                raise IntegralityFailure(f"tau_{p} has local index {local_index(g, o, out, q)} at {q}")
    return out


@dataclass
class CanonicalBasis:
    orientation: MorseOrientation
    classes: dict[str, KClass]
    order: tuple[str, ...]
    delta: dict[str, dict[str, CharacterElement]] = field(default_factory=dict)

    def __getitem__(self, p: str) -> KClass:
        return self.classes[p]

    def delta_is_identity(self) -> bool:
        return all(self.delta[p][q] == int(p == q) for p in self.order for q in self.order)

    def matrix(self) -> list[list[CharacterElement]]:
        """``[tau_p(q)]`` with rows ``p`` and columns ``q`` in topological order."""
        return [[self.classes[p][q] for q in self.order] for p in self.order]


def basis(g: GkmGraph, o: MorseOrientation) -> CanonicalBasis:
    classes = {p: tau(g, o, p, verify=False) for p in o.order}
    for p, c in classes.items():
        chk = check_class(g, c)
        if not chk:
            raise EdgeConditionFailure(f"tau_{p} fails the edge condition on {chk.witness}")
    delta = {p: {q: local_index(g, o, classes[p], q) for q in o.order} for p in o.order}
    out = CanonicalBasis(o, classes, o.order, delta)
    if not out.delta_is_identity():
        raise IntegralityFailure("local indices of the basis are not the identity matrix")
    return out


def decompose(g: GkmGraph, o: MorseOrientation, b: CanonicalBasis, a: Mapping[str, CharacterElement]) -> dict[str, CharacterElement]:
    """Coefficients ``c_p`` with ``a = sum_p c_p tau_p``, found minimum first."""
    resid = KClass(dict(a), g.rank)
    coeffs: dict[str, CharacterElement] = {}
    for p in o.order:
        c = local_index(g, o, resid, p)
        if resid[p] != c * b[p][p]:
            raise ReconstructionFailure(f"residual at {p} is not a multiple of Lambda_p^-")
        coeffs[p] = c
        if c:
            resid = resid - b[p] * c
    if any(resid[q] for q in o.order):
        raise ReconstructionFailure("nonzero residual after decomposition")
    total = KClass.zero(g)
    for p, c in coeffs.items():
        total = total + b[p] * c
    if total != KClass(dict(a), g.rank):
        raise ReconstructionFailure("coefficients do not reconstruct the class")
    return coeffs


# ------------------------------------------------------------- path formula


def q_e(g: GkmGraph, o: MorseOrientation, e: OrientedEdge, f) -> FractionElement:
    """``Lambda_t * (proper part at the reverse of e of f / Lambda_t)``, ``t`` the head of ``e``.

    ``f`` may be a character or a fraction whose denominator is ``T``-invariant.
    """
    if o.polarization.vertex_circles:
        raise ValueError("edge operators are defined for the global circle only")
    t = e.target
    rev = e.reversed()
    desc = o.descending[t]
    try:
        i = next(j for j, d in enumerate(desc) if d.edge.index == rev.index)
    except StopIteration:
        raise ValueError(f"{e} is not an ascending edge") from None
    frame = _frame(o, t)
    if isinstance(f, FractionElement):
        out = frame.q_operator(f.numerator, i)
        out.factors = out.factors + f.factors
        return out
    return frame.q_operator(f, i)


def tau_via_paths(g: GkmGraph, o: MorseOrientation, p: str, q: str, cap: int = 10_000) -> CharacterElement:
    """``sum over ascending paths gamma from p to q of Q_gamma(Lambda_p^-)``."""
    if o.polarization.vertex_circles:
        raise ValueError("the path formula uses the global circle only")
    paths = ascending_paths(g, o, p, q, cap)
    start = FractionElement(lambda_minus(g, o, p))
    cache: dict[tuple[int, ...], FractionElement] = {(): start}
    total = FractionElement(CharacterElement.zero(g.rank))
    for path in paths:
        val = start
        for s in range(1, len(path) + 1):
            key = tuple(e.index for e in path[:s])
            if key not in cache:
                cache[key] = q_e(g, o, path[s - 1], val)
            val = cache[key]
        total = total + val
    out = is_character(total)
    if out is None:
        raise IntegralityFailure(f"path sum from {p} to {q} is not a character")
    return out


# --------------------------------------------------------------- cohomology


def coh_tau(g: GkmGraph, o: MorseOrientation, p: str) -> dict[str, CohPolynomial]:
    """Cohomological class with indicator local indices, by the same recursion."""
    vals: dict[str, CohPolynomial] = {}
    zero = CohPolynomial.zero(g.rank)
    seen_p = False
    for q in o.order:
        seen_p = seen_p or q == p
        if not seen_p:
            vals[q] = zero
            continue
        frame = coh_frame(o.descending_labels(q), o.xi_at(q))
        total = FractionElement(zero)
        for i, d in enumerate(o.descending[q]):
            h = vals[d.target]
            if h:
                total = total + frame.q_operator(h, i)
        out = is_character(total)
        if out is None:
            raise IntegralityFailure(f"cohomological restriction at {q} is not a polynomial")
        if q == p:
            out = out + coh_lambda(g, o, q)
        vals[q] = out
    chk = coh_check_class(g, vals)
    if not chk:
        raise EdgeConditionFailure(f"coh tau_{p} fails the edge condition on {chk.witness}")
    return vals


@dataclass
class CohBasis:
    classes: dict[str, dict[str, CohPolynomial]]
    order: tuple[str, ...]
    delta: dict[str, dict[str, CohPolynomial]]

    def delta_is_identity(self) -> bool:
        return all(self.delta[p][q] == int(p == q) for p in self.order for q in self.order)


def coh_basis(g: GkmGraph, o: MorseOrientation) -> CohBasis:
    classes = {p: coh_tau(g, o, p) for p in o.order}
    delta = {p: {q: coh_local_index(g, o, classes[p], q) for q in o.order} for p in o.order}
    return CohBasis(classes, o.order, delta)
