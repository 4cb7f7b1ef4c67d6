"""Actions of Aut(A) on the base S of the universal family and on SUSY forms."""

from __future__ import annotations

from collections.abc import Sequence
from functools import lru_cache
from typing import Any

from supermoduli.autgroup.element import AutElement
from supermoduli.errors import DeformationError
from supermoduli.family.classify import classify_deformation, conjugate
from supermoduli.family.universal import build_z, parameter_parts, parameter_product
from supermoduli.logging import get_logger
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.fields import pullback_form
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import RingContext
from supermoduli.susy.form import HOMOGENEOUS_COORDS, SusyForm
from supermoduli.susy.gauge import gauge_fix

logger = get_logger(__name__)

SHIFT_PARAMETERS = ("tau1", "tau2")


def _conjugate_and_classify(g: AutElement, values: list[SuperPoly]) -> list[SuperPoly]:
    """g_U @ psi @ (g^-1)_V for the pullback gluing psi, classified; g must preserve the cover."""
    if g.is_identity():
        return values
    gluing = build_z(g.n_r).pullback(g.base, values)
    moved = conjugate(gluing, g.chart_map_u(), g.inverse().chart_map_v())
    return classify_deformation(moved).values


@lru_cache(maxsize=None)
def shift_field(n_r: int, parameter: str) -> tuple[SuperPoly, ...]:
    """Components xi_i of the vector field on S induced by the shift ``parameter`` (b or c).

    The shift by tau1*tau2 keeps the cover; over k[eta, tau1, tau2] it moves the
    universal point eta to eta + tau1*tau2 * xi(eta).
    """
    etas = tuple(f"eta{i}" for i in range(1, n_r // 2 - 1))
    ring = RingContext(odd=(*etas, *SHIFT_PARAMETERS))
    g = AutElement.build(n_r, ring, **{parameter: parameter_product(ring, SHIFT_PARAMETERS)})
    moved = _conjugate_and_classify(g, list(ring.gens(*etas)))
    target = RingContext(odd=etas)
    field = []
    for name, image in zip(etas, moved, strict=True):
        parts = parameter_parts(image - ring.gen(name), SHIFT_PARAMETERS)
        field.append(parts[SHIFT_PARAMETERS].restrict(target) if SHIFT_PARAMETERS in parts else target.zero())
    logger.debug("shift field on S", n_r=n_r, parameter=parameter, field=[str(x) for x in field])
    return tuple(field)


def _shift_flow(n_r: int, parameter: str, t: Any, points: list[SuperPoly]) -> list[SuperPoly]:
    """exp(t xi) on the coordinates of S, evaluated at ``points``.

    xi is nilpotent on odd polynomials in the eta_i, so the series is finite.
    """
    field = shift_field(n_r, parameter)
    ring = field[0].ctx

    def derive(f: SuperPoly) -> SuperPoly:
        result = ring.zero()
        for name, xi in zip(ring.odd, field, strict=True):
            if xi:
                result = result + xi * f.derivative(name)
        return result

    limit = 2 ** len(ring.odd) + 1
    images = {}
    for name in ring.odd:
        term = total = ring.gen(name)
        for k in range(1, limit + 1):
            term = derive(term) * t / k
            if not term:
                break
            total = total + term
        else:
            raise DeformationError(f"shift {parameter} = {t} does not act by a finite series")
        images[name] = total
    evaluate = ChartMap(ring, points[0].ctx, dict(zip(ring.odd, points, strict=True)))
    return [evaluate(images[name]) for name in ring.odd]


def _act_rational(f: AutElement, points: list[SuperPoly]) -> list[SuperPoly]:
    _, b, c, _ = f.body_matrix()
    if b != 0:
        return _shift_flow(f.n_r, "b", b, points)
    if c != 0:
        return _shift_flow(f.n_r, "c", c, points)
    return _conjugate_and_classify(f, points)


def act_on_s(g: AutElement, values: Sequence[SuperPoly]) -> list[SuperPoly]:
    """Transport an S-point along g and classify the result.

    g is split as f_0 @ ... @ f_k @ rest (``AutElement.split_body``). The part
    rest keeps the two-chart cover: the gluing of Z pulled back along
    eta -> values is conjugated by its chart expressions, g_U @ psi @ (g^-1)_V,
    and classified. The rational shifts among the f_i act through the flow of
    the vector field they induce on S and the diagonal ones by conjugation
    again, so act_on_s(g @ h) == act_on_s(g) applied after act_on_s(h).

    Args:
        g: Automorphism over the Grassmann test ring holding ``values``
        values: One odd element per eta_i

    Raises:
        RingMismatchError: If g and the values live over different rings
    """
    for value in values:
        g.base.check_same(value.ctx)
    points = list(values)
    if not points:
        return points
    factors, rest = g.split_body()
    points = _conjugate_and_classify(rest, points)
    for factor in reversed(factors):
        points = _act_rational(factor, points)
    logger.debug("moved S-point", n_r=g.n_r, parameters=len(g.base.odd), factors=len(factors))
    return points


def act_on_susy(g: AutElement, form: SusyForm) -> SusyForm:
    """Gauge-fixed representative of the pullback g* omega.

    Pullback is contravariant, so ``act_on_susy(g @ h, s)`` equals
    ``act_on_susy(g, act_on_susy(h, s))``.

    Raises:
        RingMismatchError: If g and the form live over different rings
        UnframedError: If the form is not framed
    """
    g.base.check_same(form.base)
    pulled = pullback_form(form.omega(), g.homogeneous_map, HOMOGENEOUS_COORDS)
    moved = SusyForm.from_one_form(pulled, form.n_r, form.base)
    return gauge_fix(moved).form
