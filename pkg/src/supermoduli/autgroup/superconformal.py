"""Global vector fields preserving an odd distribution (superconformal fields)."""

from __future__ import annotations

from dataclasses import dataclass

from supermoduli.errors import RingMismatchError
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import WPSpace
from supermoduli.sheaf.tangent import tangent_cohomology
from supermoduli.superalgebra.fields import SuperVectorField
from supermoduli.superalgebra.linalg import ColumnSpace, nullspace
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, SuperDim
from supermoduli.susy.divisor import FramedSusyPoint, distribution_from_form
from supermoduli.susy.form import SusyForm
from supermoduli.susy.gauge import gauge_fix

logger = get_logger(__name__)


@dataclass
class SuperconformalSections:
    dim: SuperDim
    basis: list[SuperVectorField]


def standard_distribution(space: WPSpace, p: SuperPoly) -> SuperVectorField:
    """D = d/dzeta - p zeta d/dz on U for a polynomial p(z)."""
    zeta = space.chart_u.gen("zeta")
    return space.u_field(dz=-(p * zeta), dzeta=1)


def _defect(distribution: SuperVectorField, field: SuperVectorField) -> SuperPoly:
    """[D, X] modulo D, measured by its d/dz part after removing the D-component."""
    bracket = distribution.bracket(field)
    return bracket["z"] - bracket["zeta"] * distribution["z"]


def superconformal_fields(space: WPSpace, distribution: SuperVectorField) -> SuperconformalSections:
    """Global sections X of T_WP with [D, X] in the span of D.

    ``distribution`` is an odd field on U whose d/dzeta coefficient is a unit;
    the condition is linear in X and is solved parity by parity over the
    computed basis of H^0(T).
    """
    space.chart_u.check_same(distribution.ctx)
    normalized = distribution.scaled(distribution["zeta"].inverse())
    cohomology = tangent_cohomology(space)
    counts = [0, 0]
    basis: list[SuperVectorField] = []
    for parity in Parity:
        fields = [s.on_u for s in cohomology.h0_basis if s.parity == parity]
        if not fields:
            continue
        cols = ColumnSpace()
        for field in fields:
            defect = _defect(normalized, field)
            cols.add_column(defect.terms)
        for vector in nullspace(cols.matrix()):
            combined = space.u_field()
            for j, c in vector.items():
                combined = combined + fields[j].scaled(space.chart_u.const(c))
            basis.append(combined)
            counts[parity] += 1
    dim = SuperDim(*counts)
    logger.debug("superconformal fields", m=space.m, dim=str(dim))
    return SuperconformalSections(dim, basis)


def superconformal_global_sections(form: SusyForm) -> SuperconformalSections:
    """H^0 of the superconformal fields of a framed, unramified form over k.

    Raises:
        UnframedError: If x1 is not a unit
        RamifiedDivisorError: If the Ramond divisor has a repeated point
    """
    if form.base.names:
        raise RingMismatchError("superconformal fields are computed for forms over k")
    FramedSusyPoint(form)
    fixed = gauge_fix(form).form
    space = WPSpace.for_ramond(form.n_r)
    distribution = distribution_from_form(fixed.omega_on_chart_u())
    return superconformal_fields(space, distribution)


def is_superconformal(distribution: SuperVectorField, field: SuperVectorField) -> bool:
    normalized = distribution.scaled(distribution["zeta"].inverse())
    return not _defect(normalized, field)

