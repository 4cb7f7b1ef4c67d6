"""Graded automorphisms of A = k[u, v|theta] with deg theta = 1 - n/2.

An element acts on generators by

    u     -> a u + b v + theta * sum_i alpha_i u^(n/2-i) v^i
    v     -> c u + d v + theta * sum_j beta_j u^(n/2-j) v^j
    theta -> e theta

with ad - bc and e units. ``g @ h`` is the substitution g(h(x)).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any

from supermoduli.errors import ChartCoverError, NotInvertibleError, check_ramond_count
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import U_COORDS, V_COORDS
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext, SuperDim
from supermoduli.susy.form import HOMOGENEOUS_COORDS, FormRings, form_rings

logger = get_logger(__name__)

EVEN_PARAMETERS = ("a", "b", "c", "d", "e")


@dataclass(frozen=True)
class AutElement:
    """An automorphism of A over a coefficient ring (k or a Grassmann test ring)."""

    n_r: int
    a: SuperPoly
    b: SuperPoly
    c: SuperPoly
    d: SuperPoly
    e: SuperPoly
    alpha: tuple[SuperPoly, ...]
    beta: tuple[SuperPoly, ...]
    base: RingContext = field(default_factory=RingContext)

    def __post_init__(self) -> None:
        check_ramond_count(self.n_r)
        size = self.n_r // 2 + 1
        if len(self.alpha) != size or len(self.beta) != size:
            raise ValueError(f"expected {size} odd coefficients in each image")
        for name, value in self.parameters().items():
            self.base.check_same(value.ctx)
            expected = Parity.EVEN if name in EVEN_PARAMETERS else Parity.ODD
            if not value.has_parity(expected):
                raise ValueError(f"{name} = {value} must be {expected.name.lower()}")
        if not self.determinant.is_unit():
            raise NotInvertibleError(f"ad - bc = {self.determinant} is not a unit")
        if not self.e.is_unit():
            raise NotInvertibleError(f"e = {self.e} is not a unit")

    @classmethod
    def build(cls, n_r: int, base: RingContext | None = None, **values: Any) -> AutElement:
        """Element from named parameters (a, b, c, d, e, alpha0.., beta0..); the rest is the identity."""
        base = base or RingContext()
        size = check_ramond_count(n_r) // 2 + 1
        defaults: dict[str, Any] = {"a": 1, "b": 0, "c": 0, "d": 1, "e": 1}
        params = {k: values.pop(k, v) for k, v in defaults.items()}
        alpha = [values.pop(f"alpha{i}", 0) for i in range(size)]
        beta = [values.pop(f"beta{i}", 0) for i in range(size)]
        if values:
            raise ValueError(f"unknown parameters {sorted(values)}")

        def coerce(value: Any) -> SuperPoly:
            return value if isinstance(value, SuperPoly) else base.const(value)

        return cls(
            n_r,
            *(coerce(params[k]) for k in EVEN_PARAMETERS),
            alpha=tuple(coerce(x) for x in alpha),
            beta=tuple(coerce(x) for x in beta),
            base=base,
        )

    @classmethod
    def identity(cls, n_r: int, base: RingContext | None = None) -> AutElement:
        return cls.build(n_r, base)

    @classmethod
    def diagonal(cls, n_r: int, a: Any, d: Any, e: Any = 1, base: RingContext | None = None) -> AutElement:
        return cls.build(n_r, base, a=a, d=d, e=e)

    def parameters(self) -> dict[str, SuperPoly]:
        values = {k: getattr(self, k) for k in EVEN_PARAMETERS}
        values.update({f"alpha{i}": x for i, x in enumerate(self.alpha)})
        values.update({f"beta{i}": x for i, x in enumerate(self.beta)})
        return values

    def with_parameters(self, **values: SuperPoly) -> AutElement:
        """Copy with some named parameters replaced."""
        alpha, beta = list(self.alpha), list(self.beta)
        scalars = {}
        for name, value in values.items():
            if name.startswith("alpha"):
                alpha[int(name[5:])] = value
            elif name.startswith("beta"):
                beta[int(name[4:])] = value
            else:
                scalars[name] = value
        return replace(self, alpha=tuple(alpha), beta=tuple(beta), **scalars)

    @staticmethod
    def parameter_dim(n_r: int) -> SuperDim:
        """(5 | n_R + 2), counted from the parameters of the identity."""
        counts = [0, 0]
        for name in AutElement.identity(n_r).parameters():
            counts[Parity.EVEN if name in EVEN_PARAMETERS else Parity.ODD] += 1
        return SuperDim(*counts)

    @property
    def determinant(self) -> SuperPoly:
        return self.a * self.d - self.b * self.c

    @property
    def rings(self) -> FormRings:
        return form_rings(self.base)

    @cached_property
    def homogeneous_map(self) -> ChartMap:
        ring = self.rings.homogeneous
        u, v, theta = ring.gens(*HOMOGENEOUS_COORDS)
        half = self.n_r // 2

        def image(x: SuperPoly, y: SuperPoly, odd: tuple[SuperPoly, ...]) -> SuperPoly:
            tail = ring.zero()
            for i, coeff in enumerate(odd):
                if coeff:
                    tail = tail + coeff.lift(ring) * u ** (half - i) * v**i
            return x.lift(ring) * u + y.lift(ring) * v + theta * tail

        return ChartMap(
            ring,
            ring,
            {
                "u": image(self.a, self.b, self.alpha),
                "v": image(self.c, self.d, self.beta),
                "theta": self.e.lift(ring) * theta,
            },
        )

    @classmethod
    def from_homogeneous_map(cls, n_r: int, chart_map: ChartMap, base: RingContext) -> AutElement:
        """Read the parameters back from a substitution of A over ``base``."""
        half = n_r // 2
        zero = base.zero()

        def read(image: SuperPoly) -> tuple[SuperPoly, SuperPoly, tuple[SuperPoly, ...]]:
            rest, tail = image.split_odd("theta")
            linear = rest.collect(["u", "v"])
            odd = tail.collect(["u", "v"])
            return (
                linear[(1, 0)].restrict(base) if (1, 0) in linear else zero,
                linear[(0, 1)].restrict(base) if (0, 1) in linear else zero,
                tuple(odd[(half - i, i)].restrict(base) if (half - i, i) in odd else zero for i in range(half + 1)),
            )

        a, b, alpha = read(chart_map["u"])
        c, d, beta = read(chart_map["v"])
        _, e = chart_map["theta"].split_odd("theta")
        element = cls(n_r, a, b, c, d, e.restrict(base), alpha, beta, base)
        if element.homogeneous_map != chart_map:
            raise ValueError("substitution is not a graded automorphism of the expected shape")
        return element

    def __matmul__(self, other: AutElement) -> AutElement:
        """g @ h = g(h(x))."""
        self.base.check_same(other.base)
        return AutElement.from_homogeneous_map(self.n_r, self.homogeneous_map @ other.homogeneous_map, self.base)

    def is_identity(self) -> bool:
        return self.homogeneous_map.is_identity()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AutElement):
            return NotImplemented
        return self.n_r == other.n_r and self.base == other.base and self.parameters() == other.parameters()

    def __hash__(self) -> int:
        return hash((self.n_r, self.base, tuple(self.parameters().values())))

    def inverse(self) -> AutElement:
        """Invert the linear part exactly, then remove the nilpotent defect.

        With k = g @ h = id + r, replacing h by h @ (id - r) squares the ideal
        holding r, so the loop ends once that ideal is zero.
        """
        det_inv = self.determinant.inverse()
        zeros = tuple(self.base.zero() for _ in self.alpha)
        linear = AutElement(
            self.n_r,
            self.d * det_inv,
            -(self.b * det_inv),
            -(self.c * det_inv),
            self.a * det_inv,
            self.e.inverse(),
            zeros,
            zeros,
            self.base,
        )
        ring = self.rings.homogeneous
        current = linear.homogeneous_map
        for step in range(len(self.base.odd) + 2):
            defect = self.homogeneous_map @ current
            if defect.is_identity():
                logger.debug("inverted automorphism", n_r=self.n_r, corrections=step)
                return AutElement.from_homogeneous_map(self.n_r, current, self.base)
            correction = {y: ring.gen(y) * 2 - defect[y] for y in HOMOGENEOUS_COORDS}
            current = current @ ChartMap(ring, ring, correction)
        raise NotInvertibleError("nilpotent correction did not terminate")

    def _chart_images(self, to_chart: ChartMap, regular: str, other: str) -> dict[str, SuperPoly]:
        images = {y: to_chart(self.homogeneous_map[y]) for y in HOMOGENEOUS_COORDS}
        unit = images[regular]
        if not unit.is_unit():
            raise ChartCoverError(f"{regular} -> {self.homogeneous_map[regular]} does not preserve the chart {regular} != 0")
        return {
            "even": images[other] * unit.inverse(),
            "odd": images["theta"] * unit ** (self.n_r // 2 - 1),
        }

    def chart_map_u(self) -> ChartMap:
        """z -> g(v)/g(u), zeta -> g(theta) g(u)^(n/2-1), restricted to u = 1.

        Raises:
            ChartCoverError: If g(u) does not stay invertible on U
        """
        rings = self.rings
        images = self._chart_images(rings.to_chart_u, "u", "v")
        return ChartMap(rings.chart_u, rings.chart_u, dict(zip(U_COORDS, (images["even"], images["odd"]), strict=True)))

    def chart_map_v(self) -> ChartMap:
        """w -> g(u)/g(v), chi -> g(theta) g(v)^(n/2-1), restricted to v = 1."""
        rings = self.rings
        images = self._chart_images(rings.to_chart_v, "v", "u")
        return ChartMap(rings.chart_v, rings.chart_v, dict(zip(V_COORDS, (images["even"], images["odd"]), strict=True)))

    def body_matrix(self) -> tuple[Any, Any, Any, Any]:
        """Rational (a, b, c, d) with every odd generator of the base set to zero."""
        a, b, c, d = (x.body().scalar() for x in (self.a, self.b, self.c, self.d))
        return a, b, c, d

    def preserves_cover(self) -> bool:
        """Whether g(u) stays a unit on U and g(v) on V."""
        _, b, c, _ = self.body_matrix()
        return b == 0 and c == 0

    def split_body(self) -> tuple[list[AutElement], AutElement]:
        """Factors with g = f_0 @ ... @ f_k @ rest.

        Each f_i is a rational shift (b or c) or a rational diagonal element, and
        rest has identity body, so it preserves the cover. The body matrix of
        x @ y is M_y M_x; M is written as L D U with L lower and U upper
        unitriangular, after splitting off the shift c = 1 when a = 0.
        """
        a, b, c, d = self.body_matrix()
        steps: list[dict[str, Any]] = []
        if a == 0:
            steps.append({"c": 1})
            a, c = a - b, c - d
        steps += [{"b": b / a}, {"a": a, "d": d - b * c / a}, {"c": c / a}]
        unchanged = {"a": 1, "b": 0, "c": 0, "d": 1}
        factors = []
        for step in steps:
            moved = {k: v for k, v in step.items() if v != unchanged[k]}
            if moved:
                factors.append(AutElement.build(self.n_r, self.base, **moved))
        head = AutElement.identity(self.n_r, self.base)
        for factor in factors:
            head = head @ factor
        rest = head.inverse() @ self
        if not rest.preserves_cover():
            raise ChartCoverError(f"body of {rest.body_matrix()} is not the identity")
        return factors, rest

    def respects_gluing(self) -> bool:
        """g_U @ overlap == overlap @ g_V on the charts of WP."""
        overlap = self.rings.overlap(1 - self.n_r // 2)
        return self.chart_map_u() @ overlap == overlap @ self.chart_map_v()

