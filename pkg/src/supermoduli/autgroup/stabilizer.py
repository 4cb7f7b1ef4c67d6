"""Stabilizer in Aut(A)/Gamma* of an unramified SUSY structure over k.

A bosonic automorphism fixing the structure fixes each of the n_R >= 4 Ramond
points, so its Möbius part is scalar; that is checked by polynomial remainders
rather than by locating roots. What remains is a diagonal element with a = d,
normalized to a = d = 1 by Gamma*, and the form pins down e.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import sympy
from sympy.polys.domains import QQ

from supermoduli.autgroup.action import act_on_susy
from supermoduli.autgroup.element import AutElement
from supermoduli.autgroup.gamma import gamma_as_aut
from supermoduli.errors import MobiusFixerError, RingMismatchError
from supermoduli.logging import get_logger
from supermoduli.superalgebra.linalg import ColumnSpace, nullspace
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import RingContext
from supermoduli.susy.divisor import FramedSusyPoint, ramond_divisor
from supermoduli.susy.form import SusyForm
from supermoduli.susy.gauge import GammaStarElement, gauge_fix

logger = get_logger(__name__)

Z = sympy.Symbol("z")
E = sympy.Symbol("e")

MOBIUS_PARAMETERS = ("a", "b", "c", "d")


def to_sympy(poly: SuperPoly, symbols: dict[str, sympy.Symbol]) -> sympy.Expr:
    """A purely even polynomial as a sympy expression."""
    expr = sympy.Integer(0)
    for mono, coeff in poly.terms.items():
        if mono.odd:
            raise ValueError(f"{poly} has odd terms")
        term = QQ.to_sympy(coeff)
        for name, exp in zip(poly.ctx.even, mono.even, strict=True):
            term *= symbols[name] ** exp
        expr += term
    return expr


@dataclass
class MobiusFixers:
    """Solutions (a, b, c, d) of 'z -> (c + dz)/(a + bz) fixes every root of p'."""

    solutions: list[dict[str, object]]

    @property
    def is_scalar(self) -> bool:
        if len(self.solutions) != 1:
            return False
        (solution,) = self.solutions
        return solution["b"] == 0 and solution["c"] == 0 and solution["a"] == solution["d"] != 0

    @property
    def scale(self) -> Any:
        """The common value a = d of the scalar solution.

        Raises:
            MobiusFixerError: If the fixers are not all scalar
        """
        if not self.is_scalar:
            raise MobiusFixerError(f"{len(self.solutions)} independent Möbius maps fix the Ramond points")
        return self.solutions[0]["a"]


def mobius_fixers(p_chart: SuperPoly, n_r: int) -> MobiusFixers:
    """Solve rem(Q(1, z), p(1, z)) = 0 for Q = c u^2 + (d - a) u v - b v^2.

    Q vanishes exactly at the points fixed by the Möbius map; a root at infinity
    (deg p(1, z) < n_R) adds the condition Q(0, 1) = 0.
    """
    p = sympy.Poly(to_sympy(p_chart, {"z": Z}), Z, domain=sympy.QQ)
    q_columns = {"a": -Z, "b": -(Z**2), "c": sympy.Integer(1), "d": Z}
    cols = ColumnSpace()
    for name in MOBIUS_PARAMETERS:
        remainder = sympy.Poly(q_columns[name], Z, domain=sympy.QQ).rem(p)
        entries: dict[object, object] = {(k,): c for (k,), c in remainder.terms()}
        if p.degree() < n_r and name == "b":
            entries["infinity"] = -1
        cols.add_column({label: QQ.convert(value) for label, value in entries.items()})
    solutions = [{name: vector.get(j, 0) for j, name in enumerate(MOBIUS_PARAMETERS)} for vector in nullspace(cols.matrix())]
    return MobiusFixers(solutions)


@dataclass
class StabilizerResult:
    n_r: int
    elements: list[AutElement]
    mobius: MobiusFixers

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generator(self) -> AutElement | None:
        """The element other than the identity when the group has order 2."""
        rest = [g for g in self.elements if not g.is_identity()]
        return rest[0] if len(rest) == 1 else None


def _character_roots(form: SusyForm, scale: Any) -> list[object]:
    """Rational e with diag(scale, scale, e) fixing ``form``."""
    base = RingContext(even=("e",), laurent=frozenset({"e"}))
    e = base.gen("e")
    lifted = form.lift(base)
    moved = act_on_susy(AutElement.diagonal(form.n_r, scale, scale, e, base), lifted)
    conditions = []
    for name, coeff in moved.coefficients().items():
        difference = coeff - lifted.coefficients()[name]
        if difference:
            low, _ = difference.degree_range("e")
            conditions.append(sympy.expand(to_sympy(difference, {"e": E}) * E ** (-min(low, 0))))
    if not conditions:
        raise ValueError("every diagonal element fixes the form")
    common = sympy.gcd_list(conditions)
    roots = sympy.Poly(common, E, domain=sympy.QQ).ground_roots()
    return sorted(QQ.convert(r) for r in roots if r != 0)


def normalize_scalar(g: AutElement) -> AutElement:
    """diag(s, s, e) times the Gamma* element of 1/s: diag(1, 1, e s^(n/2-1))."""
    return gamma_as_aut(GammaStarElement.build(g.n_r, g.a.inverse(), base=g.base)) @ g


def stabilizer(form: SusyForm) -> StabilizerResult:
    """Stab(s) in Aut(A)/Gamma* for a framed, unramified form over k.

    The Möbius part must fix every Ramond point, which forces b = c = 0 and
    a = d; the character e is then solved with that a and the result is
    normalized to a = d = 1.

    Raises:
        UnframedError: If x1 is not a unit
        RamifiedDivisorError: If the Ramond divisor has a repeated point
        MobiusFixerError: If a non-scalar Möbius map fixes the Ramond points
    """
    if form.base.names:
        raise RingMismatchError("stabilizers are computed for forms over k")
    FramedSusyPoint(form)
    fixed = gauge_fix(form).form
    mobius = mobius_fixers(ramond_divisor(fixed).on_chart_u, form.n_r)
    scale = mobius.scale
    elements = []
    for root in _character_roots(fixed, scale):
        g = AutElement.diagonal(form.n_r, scale, scale, root)
        assert act_on_susy(g, fixed) == fixed, f"diag({scale}, {scale}, {root}) does not fix the form"
        elements.append(normalize_scalar(g))
    logger.info("stabilizer computed", n_r=form.n_r, order=len(elements), scale=str(scale))
    return StabilizerResult(form.n_r, elements, mobius)
