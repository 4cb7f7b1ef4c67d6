"""The universal deformation Z of WP(1,1|1-n/2) over S = A^(0|n/2-2)."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from supermoduli.errors import check_ramond_count
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import U_COORDS, V_COORDS, WPSpace
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly, merge_odd
from supermoduli.superalgebra.ring import RingContext, SuperDim

logger = get_logger(__name__)

# Subsets of odd parameters, in ring order
ParameterSet = tuple[str, ...]


def grassmann_ring(t: int, prefix: str = "eps") -> RingContext:
    """Grassmann test ring k[eps1..eps_t]."""
    return RingContext(odd=tuple(f"{prefix}{i}" for i in range(1, t + 1)))


def chart_contexts(parameters: Sequence[str]) -> tuple[RingContext, RingContext]:
    """Chart rings k[z^(±)|zeta, params] and k[w^(±)|chi, params] of a family."""
    params = tuple(parameters)
    return (
        RingContext(even=("z",), odd=("zeta", *params), laurent=frozenset({"z"})),
        RingContext(even=("w",), odd=("chi", *params), laurent=frozenset({"w"})),
    )


def parameter_product(ctx: RingContext, names: ParameterSet) -> SuperPoly:
    """eps_S = eps_s1 * ... * eps_sk for names listed in ring order."""
    result = ctx.one()
    for name in names:
        result = result * ctx.gen(name)
    return result


def parameter_parts(poly: SuperPoly, parameters: Sequence[str]) -> dict[ParameterSet, SuperPoly]:
    """Write poly = sum_S eps_S * part_S with each part free of the parameters."""
    ctx = poly.ctx
    index = {ctx.odd_index[p] for p in parameters}
    grouped: dict[tuple[int, ...], list[tuple[SuperMonomial, Any]]] = {}
    for mono, coeff in poly.terms.items():
        params = tuple(i for i in mono.odd if i in index)
        rest = tuple(i for i in mono.odd if i not in index)
        merged = merge_odd(params, rest)
        assert merged is not None
        sign = merged[0]
        grouped.setdefault(params, []).append((SuperMonomial(mono.even, rest), coeff * sign))
    return {
        tuple(ctx.odd[i] for i in key): SuperPoly.from_terms(ctx, items)
        for key, items in grouped.items()
    }


@dataclass(frozen=True)
class BaseS:
    """S = Spec k[eta1..eta_(n/2-2)], the odd base of the universal deformation."""

    n_r: int

    def __post_init__(self) -> None:
        check_ramond_count(self.n_r)

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(f"eta{i}" for i in range(1, self.n_r // 2 - 1))

    @property
    def dim(self) -> SuperDim:
        return SuperDim(0, len(self.parameters))

    @cached_property
    def ring(self) -> RingContext:
        return RingContext(odd=self.parameters)

    @property
    def space(self) -> WPSpace:
        return WPSpace.for_ramond(self.n_r)


@dataclass(frozen=True)
class DeformationGluing:
    """A gluing of two charts over a parameter ring.

    ``transition`` writes the V coordinates (w, chi) as functions on U:
    w -> psi_w(z, zeta), chi -> psi_chi(z, zeta). It deforms WP when it reduces
    to w -> 1/z, chi -> zeta*z^(n/2-1) once every parameter is set to zero.
    """

    n_r: int
    parameters: tuple[str, ...]
    transition: ChartMap

    @classmethod
    def standard(cls, n_r: int, parameters: Sequence[str], values: Sequence[SuperPoly]) -> DeformationGluing:
        """w -> 1/z, chi -> zeta*z^(n/2-1) + sum_i values_i * z^(n/2-1-i).

        Args:
            n_r: Number of Ramond punctures
            parameters: Odd generators of the parameter ring
            values: Odd elements of k[parameters], one per eta_i

        Returns:
            The pullback of the universal gluing along eta_i -> values_i
        """
        check_ramond_count(n_r)
        if len(values) != n_r // 2 - 2:
            raise ValueError(f"expected {n_r // 2 - 2} parameter values, got {len(values)}")
        chart_u, chart_v = chart_contexts(parameters)
        k = n_r // 2 - 1
        z, zeta = chart_u.gens(*U_COORDS)
        chi_image = zeta * z**k
        for i, value in enumerate(values, start=1):
            chi_image = chi_image + value.lift(chart_u) * z ** (k - i)
        return cls(n_r, tuple(parameters), ChartMap(chart_v, chart_u, {"w": z**-1, "chi": chi_image}))

    @property
    def chart_u(self) -> RingContext:
        return self.transition.target

    @property
    def chart_v(self) -> RingContext:
        return self.transition.source

    @property
    def space(self) -> WPSpace:
        return WPSpace.for_ramond(self.n_r)

    def bosonic_reduction(self) -> ChartMap:
        """The gluing with all parameters set to zero, on the charts of WP."""
        space = self.space
        images = {y: self.transition[y].without(self.parameters).restrict(space.chart_u) for y in V_COORDS}
        return ChartMap(space.chart_v, space.chart_u, images)

    def is_deformation_of_wp(self) -> bool:
        return self.bosonic_reduction() == self.space.inverse_gluing


@dataclass(frozen=True)
class FamilyZ:
    """The supercurve Z/S glued by z = 1/w, zeta = chi*w^(n/2-1) - sum_i eta_i*w^i.

    Equivalently w = 1/z, chi = zeta*z^(n/2-1) + sum_i eta_i*z^(n/2-1-i); the
    second display is the primary one.
    """

    base: BaseS

    @property
    def n_r(self) -> int:
        return self.base.n_r

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.base.parameters

    @cached_property
    def charts(self) -> tuple[RingContext, RingContext]:
        return chart_contexts(self.parameters)

    @property
    def chart_u(self) -> RingContext:
        return self.charts[0]

    @property
    def chart_v(self) -> RingContext:
        return self.charts[1]

    @cached_property
    def deformation(self) -> DeformationGluing:
        etas = list(self.base.ring.gens(*self.parameters))
        return DeformationGluing.standard(self.n_r, self.parameters, etas)

    @property
    def inverse_gluing(self) -> ChartMap:
        """V coordinates on U: w -> 1/z, chi -> zeta*z^(n/2-1) + sum eta_i*z^(n/2-1-i)."""
        return self.deformation.transition

    @cached_property
    def gluing(self) -> ChartMap:
        """U coordinates on V: z -> 1/w, zeta -> chi*w^(n/2-1) - sum eta_i*w^i."""
        w, chi = self.chart_v.gens(*V_COORDS)
        k = self.n_r // 2 - 1
        zeta_image = chi * w**k
        for i, name in enumerate(self.parameters, start=1):
            zeta_image = zeta_image - self.chart_v.gen(name) * w**i
        return ChartMap(self.chart_u, self.chart_v, {"z": w**-1, "zeta": zeta_image})

    def displays_are_inverse(self) -> bool:
        return (self.gluing @ self.inverse_gluing).is_identity() and (self.inverse_gluing @ self.gluing).is_identity()

    def specializes_to_wp(self) -> bool:
        """Setting every eta_i to zero recovers the gluing of WP(1,1|1-n/2)."""
        return self.deformation.is_deformation_of_wp()

    def pullback(self, ring: RingContext, values: Sequence[SuperPoly]) -> DeformationGluing:
        """Base change along eta_i -> values_i in a Grassmann test ring."""
        for value in values:
            ring.check_same(value.ctx)
        return DeformationGluing.standard(self.n_r, ring.odd, values)


def build_z(n_r: int) -> FamilyZ:
    """The universal deformation over S for ``n_r`` Ramond punctures."""
    family = FamilyZ(BaseS(n_r))
    logger.debug("built universal family", n_r=n_r, parameters=len(family.parameters))
    return family


@dataclass
class HypersurfaceCheck:
    """Residuals of the defining relation restricted to both charts."""

    relation: SuperPoly
    residual_u: SuperPoly
    residual_v: SuperPoly

    @property
    def holds(self) -> bool:
        return not self.residual_u and not self.residual_v


def hypersurface_relation(base: BaseS) -> SuperPoly:
    """u^(n/2-1)*chi - v^(n/2-1)*zeta - sum_i eta_i * u^i * v^(n/2-1-i)."""
    ring = RingContext(even=("u", "v"), odd=("zeta", "chi", *base.parameters))
    u, v, zeta, chi = ring.gens("u", "v", "zeta", "chi")
    k = base.n_r // 2 - 1
    relation = u**k * chi - v**k * zeta
    for i, name in enumerate(base.parameters, start=1):
        relation = relation - ring.gen(name) * u**i * v ** (k - i)
    return relation


def hypersurface_check(family: FamilyZ, transition: ChartMap | None = None) -> HypersurfaceCheck:
    """Substitute the chart gluings into the relation cutting out Z.

    On U (u = 1, v = z) chi is replaced by its image under ``transition``, the
    family's primary gluing unless given; on V (u = w, v = 1) zeta is replaced
    through the inverse display.
    """
    transition = transition or family.inverse_gluing
    relation = hypersurface_relation(family.base)
    ring = relation.ctx
    z, zeta = family.chart_u.gens(*U_COORDS)
    w, chi = family.chart_v.gens(*V_COORDS)
    on_u = ChartMap(ring, family.chart_u, {"u": family.chart_u.one(), "v": z, "zeta": zeta, "chi": transition["chi"]})
    on_v = ChartMap(ring, family.chart_v, {"u": w, "v": family.chart_v.one(), "chi": chi, "zeta": family.gluing["zeta"]})
    result = HypersurfaceCheck(relation, on_u(relation), on_v(relation))
    logger.debug("hypersurface relation", n_r=family.n_r, holds=result.holds)
    return result
