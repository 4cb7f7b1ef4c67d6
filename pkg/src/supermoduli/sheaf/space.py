"""The two-chart model of the weighted projective superline WP(1,1|m)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.fields import SuperVectorField, pushforward_field
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import RingContext

U_COORDS = ("z", "zeta")
V_COORDS = ("w", "chi")


@dataclass(frozen=True)
class WPSpace:
    """WP(1,1|m) covered by U = {u != 0} and V = {v != 0}.

    On U the coordinates are z = v/u and zeta = theta/u^m, on V they are
    w = u/v and chi = theta/v^m, glued over U ∩ V by z = 1/w, zeta = chi*w^(-m).
    """

    m: int

    @classmethod
    def for_ramond(cls, n_r: int) -> WPSpace:
        """The curve with theta of weight 1 - n_R/2."""
        return cls(1 - n_r // 2)

    @cached_property
    def chart_u(self) -> RingContext:
        return RingContext(even=("z",), odd=("zeta",), laurent=frozenset({"z"}))

    @cached_property
    def chart_v(self) -> RingContext:
        return RingContext(even=("w",), odd=("chi",), laurent=frozenset({"w"}))

    @cached_property
    def gluing(self) -> ChartMap:
        """U-coordinates written on V: z -> 1/w, zeta -> chi*w^(-m)."""
        w, chi = self.chart_v.gens(*V_COORDS)
        return ChartMap(self.chart_u, self.chart_v, {"z": w**-1, "zeta": chi * w ** (-self.m)})

    @cached_property
    def inverse_gluing(self) -> ChartMap:
        """V-coordinates written on U: w -> 1/z, chi -> zeta*z^(-m)."""
        z, zeta = self.chart_u.gens(*U_COORDS)
        return ChartMap(self.chart_v, self.chart_u, {"w": z**-1, "chi": zeta * z ** (-self.m)})

    @property
    def n_r(self) -> int:
        """The puncture count 2 - 2m this weight corresponds to."""
        return 2 - 2 * self.m

    def default_radius(self, d: int = 0) -> int:
        """Window radius N0 = |d| + |m| + |n_R| + 2."""
        return abs(d) + abs(self.m) + abs(self.n_r) + 2

    def to_u_frame(self, field: SuperVectorField) -> SuperVectorField:
        """Rewrite a V-frame field in the coordinates of U."""
        return pushforward_field(field, self.gluing, self.inverse_gluing, U_COORDS)

    def to_v_frame(self, field: SuperVectorField) -> SuperVectorField:
        """Rewrite a U-frame field in the coordinates of V."""
        return pushforward_field(field, self.inverse_gluing, self.gluing, V_COORDS)

    def u_field(self, dz: object = 0, dzeta: object = 0) -> SuperVectorField:
        """Field dz*d/dz + dzeta*d/dzeta on U from polynomials or scalars."""
        return SuperVectorField(
            self.chart_u,
            U_COORDS,
            {"z": self._coerce(self.chart_u, dz), "zeta": self._coerce(self.chart_u, dzeta)},
        )

    def v_field(self, dw: object = 0, dchi: object = 0) -> SuperVectorField:
        return SuperVectorField(
            self.chart_v,
            V_COORDS,
            {"w": self._coerce(self.chart_v, dw), "chi": self._coerce(self.chart_v, dchi)},
        )

    @staticmethod
    def _coerce(ctx: RingContext, value: object) -> SuperPoly:
        return value if isinstance(value, SuperPoly) else ctx.const(value)
