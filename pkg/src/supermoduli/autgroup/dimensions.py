"""Dimensions of Aut(A), Gamma* and Aut(WP), and the induced vector fields on WP."""

from __future__ import annotations

from dataclasses import dataclass

from supermoduli.autgroup.element import EVEN_PARAMETERS, AutElement
from supermoduli.errors import check_ramond_count
from supermoduli.family.universal import grassmann_ring, parameter_parts
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import WPSpace
from supermoduli.sheaf.tangent import TangentSheaf, tangent_cohomology
from supermoduli.superalgebra.fields import SuperVectorField
from supermoduli.superalgebra.linalg import ColumnSpace, rank
from supermoduli.superalgebra.ring import Parity, SuperDim
from supermoduli.susy.gauge import GammaStarElement

logger = get_logger(__name__)


@dataclass(frozen=True)
class DimensionTable:
    n_r: int
    aut_a: SuperDim
    gamma_star: SuperDim
    tangent_h0: SuperDim

    @property
    def aut_wp(self) -> SuperDim:
        """Aut(A)/Gamma*."""
        return self.aut_a - self.gamma_star

    @property
    def consistent(self) -> bool:
        return self.aut_wp == self.tangent_h0


def dimension_table(n_r: int) -> DimensionTable:
    """Parameter counts of Aut(A) and Gamma*, with H^0(T_WP) for comparison."""
    check_ramond_count(n_r)
    gamma = GammaStarElement.identity(n_r)
    table = DimensionTable(
        n_r=n_r,
        aut_a=AutElement.parameter_dim(n_r),
        gamma_star=SuperDim(1, len(gamma.beta)),
        tangent_h0=tangent_cohomology(WPSpace.for_ramond(n_r)).h0_dim,
    )
    logger.debug("dimension table", n_r=n_r, aut_a=str(table.aut_a), aut_wp=str(table.aut_wp))
    return table


@dataclass
class LieLinearization:
    """Fields on WP induced by the one-parameter directions of Aut(A)."""

    fields: dict[str, SuperVectorField]
    image: SuperDim
    kernel: SuperDim
    spans_tangent_h0: bool


def induced_field(n_r: int, name: str) -> SuperVectorField:
    """d/dt of g_U at t = 0 along the parameter ``name`` of Aut(A).

    The direction is realized over k[eps1, eps2] by the square-zero value
    eps1*eps2 (even) or eps1 (odd), and read off as the coefficient of that value
    in g_U(z) - z and g_U(zeta) - zeta.
    """
    base = grassmann_ring(2)
    params = base.odd
    even = name in EVEN_PARAMETERS
    subset = params if even else params[:1]
    step = base.gen(params[0]) * base.gen(params[1]) if even else base.gen(params[0])
    identity = AutElement.identity(n_r, base)
    g = identity.with_parameters(**{name: identity.parameters()[name] + step})
    g_u = g.chart_map_u()
    chart_u = g_u.source
    space = WPSpace.for_ramond(n_r)
    components = {}
    for y, target in (("z", "dz"), ("zeta", "dzeta")):
        parts = parameter_parts(g_u[y] - chart_u.gen(y), params)
        components[target] = parts[subset].restrict(space.chart_u) if subset in parts else 0
    return space.u_field(**components)


def lie_linearization(n_r: int) -> LieLinearization:
    """The map Lie(Aut(A)) -> H^0(T_WP): its image, kernel and whether it is onto."""
    check_ramond_count(n_r)
    space = WPSpace.for_ramond(n_r)
    sheaf = TangentSheaf(space)
    names = list(AutElement.identity(n_r).parameters())
    fields = {name: induced_field(n_r, name) for name in names}
    h0 = tangent_cohomology(space).h0_basis
    image, kernel = [0, 0], [0, 0]
    onto = True
    for parity in Parity:
        chosen = [f for name, f in fields.items() if (name in EVEN_PARAMETERS) == (parity == Parity.EVEN)]
        cols = ColumnSpace()
        for f in chosen:
            cols.add_column(sheaf.coordinates(f))
        r_image = rank(cols.matrix())
        expected = [cols.vector(sheaf.coordinates(s.on_u)) for s in h0 if s.parity == parity]
        r_joint = rank(cols.matrix(expected))
        image[parity] = r_image
        kernel[parity] = len(chosen) - r_image
        onto = onto and r_image == r_joint == len(expected)
    result = LieLinearization(fields, SuperDim(*image), SuperDim(*kernel), onto)
    logger.debug("lie linearization", n_r=n_r, image=str(result.image), kernel=str(result.kernel))
    return result
