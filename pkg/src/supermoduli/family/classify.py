"""Classifying maps of deformations of WP into the universal family.

A deformation over k[eps1..eps_t] is normalized one layer of the eps-degree
filtration at a time. At layer k the difference between the current gluing and
the pullback of Z is a sum of eps_S * X_S with |S| = k and X_S an overlap vector
field on WP; reducing X_S in H^1(T_WP) gives the increment of eta along eps_S and
its coboundary part gives the chart automorphisms removing the rest.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from supermoduli.errors import DeformationError
from supermoduli.family.universal import (
    DeformationGluing,
    FamilyZ,
    ParameterSet,
    parameter_parts,
    parameter_product,
)
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import U_COORDS, V_COORDS, WPSpace
from supermoduli.sheaf.tangent import reduce_cocycle
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.fields import SuperVectorField
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import RingContext

logger = get_logger(__name__)


@dataclass
class Classification:
    """eta_i -> values_i together with chart automorphisms realizing the isomorphism.

    ``on_u @ gluing.transition @ on_v`` equals the pullback of Z along the values.
    """

    gluing: DeformationGluing
    values: list[SuperPoly]
    on_u: ChartMap
    on_v: ChartMap

    def normalized(self) -> DeformationGluing:
        return DeformationGluing.standard(self.gluing.n_r, self.gluing.parameters, self.values)

    def verify(self) -> bool:
        return self.on_u @ self.gluing.transition @ self.on_v == self.normalized().transition

    def first_order(self) -> list[SuperPoly]:
        """Values modulo products of two or more parameters."""
        return [v.filtration_part(self.gluing.parameters, 1) for v in self.values]


def overlap_field(space: WPSpace, components: Mapping[str, SuperPoly]) -> SuperVectorField:
    """U-frame field of a V-frame displacement whose coefficients are written on U."""
    on_v = {y: space.gluing(components[y].restrict(space.chart_u)) if y in components else 0 for y in V_COORDS}
    return space.to_u_frame(space.v_field(dw=on_v["w"], dchi=on_v["chi"]))


def classify_deformation(gluing: DeformationGluing) -> Classification:
    """Find the S-point classifying a deformation of WP and the isomorphism to its pullback.

    Args:
        gluing: A gluing over a Grassmann test ring reducing to the WP gluing

    Returns:
        The classifying values with chart automorphisms over the same ring

    Raises:
        DeformationError: If the bosonic reduction is not the WP gluing
    """
    if not gluing.is_deformation_of_wp():
        raise DeformationError(f"bosonic reduction {gluing.bosonic_reduction()!r} is not the WP gluing")
    space = gluing.space
    params = gluing.parameters
    chart_u, chart_v = gluing.chart_u, gluing.chart_v
    base = RingContext(odd=params)
    values = [base.zero() for _ in range(gluing.n_r // 2 - 2)]
    total_u = ChartMap.identity(chart_u)
    total_v = ChartMap.identity(chart_v)
    current = gluing.transition

    for degree in range(1, len(params) + 1):
        target = DeformationGluing.standard(gluing.n_r, params, values).transition
        layer: dict[ParameterSet, dict[str, SuperPoly]] = {}
        for y in V_COORDS:
            difference = (current[y] - target[y]).filtration_part(params, degree)
            for subset, part in parameter_parts(difference, params).items():
                layer.setdefault(subset, {})[y] = part
        if not layer:
            continue
        shift_u = {x: chart_u.gen(x) for x in U_COORDS}
        shift_v = {y: chart_v.gen(y) for y in V_COORDS}
        for subset, parts in sorted(layer.items()):
            reduction = reduce_cocycle(space, overlap_field(space, parts))
            eps_base = parameter_product(base, subset)
            for i, coeff in enumerate(reduction.coefficients):
                if coeff:
                    values[i] = values[i] + eps_base * coeff
            eps_u = parameter_product(chart_u, subset)
            eps_v = parameter_product(chart_v, subset)
            for x in U_COORDS:
                shift_u[x] = shift_u[x] - eps_u * reduction.on_u[x].lift(chart_u)
            for y in V_COORDS:
                shift_v[y] = shift_v[y] + eps_v * reduction.on_v[y].lift(chart_v)
        h_u = ChartMap(chart_u, chart_u, shift_u)
        h_v = ChartMap(chart_v, chart_v, shift_v)
        current = h_u @ current @ h_v
        total_u = h_u @ total_u
        total_v = total_v @ h_v
        logger.debug("normalized filtration layer", degree=degree, subsets=len(layer))

    result = Classification(gluing, values, total_u, total_v)
    if current != result.normalized().transition:
        raise DeformationError("gluing differs from the pullback of Z after the last filtration layer")
    return result


def classify_pullback(family: FamilyZ, ring: RingContext, values: list[SuperPoly]) -> list[SuperPoly]:
    """classifyDeformation applied to the base change of Z along eta -> values."""
    return classify_deformation(family.pullback(ring, values)).values


def conjugate(gluing: DeformationGluing, on_u: ChartMap, on_v: ChartMap) -> DeformationGluing:
    """The isomorphic gluing on_u @ transition @ on_v."""
    return DeformationGluing(gluing.n_r, gluing.parameters, on_u @ gluing.transition @ on_v)
