"""Odd distributions of SUSY forms, the Ramond divisor and its discriminant."""

from __future__ import annotations

from dataclasses import dataclass

from supermoduli.errors import (
    DegenerateFormError,
    IntegrableDistributionError,
    NotHomogeneousError,
    RamifiedDivisorError,
    UnframedError,
)
from supermoduli.logging import get_logger
from supermoduli.superalgebra.fields import SuperOneForm, SuperVectorField
from supermoduli.superalgebra.linalg import grassmann_det
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, WeightedDegree
from supermoduli.susy.form import SusyForm, base_of, form_rings

logger = get_logger(__name__)

BINARY_DEGREE = WeightedDegree({"u": 1, "v": 1})


def distribution_from_form(form: SuperOneForm) -> SuperVectorField:
    """Odd generator D = A d/dzeta - B d/dz of the kernel of omega = A dz + B dzeta.

    The chart coordinates are taken from ``form.coords`` as (even, odd).

    Raises:
        DegenerateFormError: If omega is not even or A is not a unit
    """
    even, odd = form.coords
    a, b = form[even], form[odd]
    if form.parity != Parity.EVEN:
        raise DegenerateFormError("the form must be even")
    if not a.is_unit():
        raise DegenerateFormError(f"dz coefficient {a} is not a unit")
    return SuperVectorField(form.ctx, form.coords, {even: -b, odd: a})


@dataclass(frozen=True)
class RamondDivisorModel:
    """The divisor p(u, v) = 0 of degree n_R."""

    n_r: int
    p: SuperPoly

    @property
    def on_chart_u(self) -> SuperPoly:
        """p(1, z)."""
        rings = form_rings(base_of(self.p.ctx))
        return rings.to_chart_u(self.p)


def ramond_divisor(form: SusyForm) -> RamondDivisorModel:
    """The locus where the distribution of ``form`` fails to be maximally nonintegrable.

    With D' = d/dzeta - A^-1 B d/dz, [D', D'] = f d/dz modulo D'; the divisor is
    the zeta-free part of -(A/2) f, which is p(1, z) for a canonical form.

    Raises:
        IntegrableDistributionError: If [D', D'] lies in the span of D'
    """
    omega = form.omega_on_chart_u()
    d = distribution_from_form(omega)
    a = d["zeta"]
    normalized = d.scaled(a.inverse())
    square = normalized.bracket(normalized)
    f = square["z"] - square["zeta"] * normalized["z"]
    on_chart, _ = (-(a * f) / 2).split_odd("zeta")
    if not on_chart:
        raise IntegrableDistributionError("the distribution is integrable on the whole chart")

    rings = form.rings
    u, v = rings.homogeneous.gens("u", "v")
    p = rings.homogeneous.zero()
    for (exp,), coeff in on_chart.collect(["z"]).items():
        if not 0 <= exp <= form.n_r:
            raise DegenerateFormError(f"divisor has a z^{exp} term, outside degree {form.n_r}")
        p = p + coeff.restrict(form.base).lift(rings.homogeneous) * u ** (form.n_r - exp) * v**exp
    logger.debug("ramond divisor", n_r=form.n_r, terms=len(p))
    return RamondDivisorModel(form.n_r, p)


def _binary_coefficients(poly: SuperPoly, degree: int) -> list[SuperPoly]:
    """Coefficients of u^(d-i) v^i, i = 0..d, in the ring of ``poly``."""
    parts = poly.collect(["u", "v"])
    return [parts.get((degree - i, i), poly.ctx.zero()) for i in range(degree + 1)]


def homogeneous_discriminant(p: SuperPoly, n_r: int) -> SuperPoly:
    """Res(dp/du, dp/dv), vanishing exactly when p has a repeated projective root.

    The resultant of the two degree n_R - 1 partials is taken on their Sylvester
    matrix, with entries in the coefficient ring.

    Raises:
        NotHomogeneousError: If p is not a binary form of degree n_R in u, v
    """
    if "theta" in p.ctx.odd_index and p.without(["theta"]) != p:
        raise NotHomogeneousError("the form must not involve theta")
    if p and BINARY_DEGREE.of(p) != n_r:
        raise NotHomogeneousError(f"{p} is not homogeneous of degree {n_r}")
    degree = n_r - 1
    first = _binary_coefficients(p.derivative("u"), degree)
    second = _binary_coefficients(p.derivative("v"), degree)
    size = 2 * degree
    zero = p.ctx.zero()
    rows = []
    for coefficients in (first, second):
        for shift in range(degree):
            row = [zero] * size
            for i, c in enumerate(coefficients):
                row[shift + i] = c
            rows.append(row)
    return grassmann_det(rows)


def discriminant(form: SusyForm) -> SuperPoly:
    """Disc^h of the Ramond divisor of ``form``."""
    return homogeneous_discriminant(ramond_divisor(form).p, form.n_r)


def is_unramified(form: SusyForm) -> bool:
    return discriminant(form).is_unit()


def discriminant_body_is_stable(form: SusyForm) -> bool:
    """Disc^h of the full form agrees with Disc^h of its reduction modulo odd parameters."""
    reduced = SusyForm(
        form.n_r,
        tuple(c.body() for c in form.even),
        tuple(form.base.zero() for _ in form.odd),
        form.base,
    )
    return discriminant(form).body() == discriminant(reduced)


@dataclass(frozen=True)
class FramedSusyPoint:
    """A point of Y: a framed form whose Ramond divisor is unramified."""

    form: SusyForm

    def __post_init__(self) -> None:
        if not self.form.is_framed():
            raise UnframedError(f"x1 = {self.form.x1} is not a unit")
        if not is_unramified(self.form):
            raise RamifiedDivisorError(f"Ramond divisor {ramond_divisor(self.form).p} has a repeated point")

    @property
    def divisor(self) -> RamondDivisorModel:
        return ramond_divisor(self.form)
