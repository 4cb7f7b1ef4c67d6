"""Framed pre-SUSY 1-forms on WP(1,1|1-n/2) and their chart restrictions.

A form is stored by its coefficients in the canonical basis of H^0(Omega^1(2)):

    omega = x1 (u dv - v du) + p theta dtheta + q theta (u dv - v du)
            + r (u dtheta - m theta du) + xi_(n+2) v^(n/2) (v dtheta - m theta dv)

where m = 1 - n/2 is the weight of theta, p = sum_i x_(2+i) u^(n-i) v^i,
q = sum_i xi_(1+i) u^(n/2-1-i) v^i and r = sum_i xi_(n/2+1+i) u^(n/2-i) v^i.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any

from supermoduli.errors import (
    MixedParityError,
    NotInKernelError,
    ParseError,
    RingMismatchError,
    check_ramond_count,
)
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import U_COORDS, V_COORDS
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.fields import SuperOneForm, pullback_form
from supermoduli.superalgebra.parser import format_poly, parse_poly, split_headers
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext

logger = get_logger(__name__)

HOMOGENEOUS_COORDS = ("u", "v", "theta")


@dataclass(frozen=True)
class FormRings:
    """Homogeneous and chart rings over a coefficient ring, with the maps between them."""

    base: RingContext
    homogeneous: RingContext
    chart_u: RingContext
    chart_v: RingContext

    @cached_property
    def to_chart_u(self) -> ChartMap:
        """u -> 1, v -> z, theta -> zeta."""
        z, zeta = self.chart_u.gens(*U_COORDS)
        return ChartMap(self.homogeneous, self.chart_u, {"u": self.chart_u.one(), "v": z, "theta": zeta})

    @cached_property
    def to_chart_v(self) -> ChartMap:
        """u -> w, v -> 1, theta -> chi."""
        w, chi = self.chart_v.gens(*V_COORDS)
        return ChartMap(self.homogeneous, self.chart_v, {"u": w, "v": self.chart_v.one(), "theta": chi})

    def overlap(self, m: int) -> ChartMap:
        """V coordinates written on U: w -> 1/z, chi -> zeta*z^(-m)."""
        z, zeta = self.chart_u.gens(*U_COORDS)
        return ChartMap(self.chart_v, self.chart_u, {"w": z**-1, "chi": zeta * z ** (-m)})


@lru_cache(maxsize=64)
def form_rings(base: RingContext) -> FormRings:
    """k[u, v|theta], k[z^(±)|zeta] and k[w^(±)|chi], each tensored with ``base``."""
    return FormRings(
        base,
        RingContext(even=("u", "v", *base.even), odd=("theta", *base.odd), laurent=base.laurent),
        RingContext(even=("z", *base.even), odd=("zeta", *base.odd), laurent=base.laurent | {"z"}),
        RingContext(even=("w", *base.even), odd=("chi", *base.odd), laurent=base.laurent | {"w"}),
    )


def base_of(ring: RingContext) -> RingContext:
    """The coefficient ring of a homogeneous ring built by :func:`form_rings`."""
    return RingContext(
        even=tuple(n for n in ring.even if n not in ("u", "v")),
        odd=tuple(n for n in ring.odd if n != "theta"),
        laurent=ring.laurent,
    )


def _form(ring: RingContext, du: Any = 0, dv: Any = 0, dtheta: Any = 0) -> SuperOneForm:
    values = {"u": du, "v": dv, "theta": dtheta}
    return SuperOneForm(
        ring,
        HOMOGENEOUS_COORDS,
        {y: c if isinstance(c, SuperPoly) else ring.const(c) for y, c in values.items()},
    )


def canonical_basis(
    n_r: int,
    ring: RingContext | None = None,
    weighted: bool = True,
) -> tuple[list[SuperOneForm], list[SuperOneForm]]:
    """Even and odd basis forms of H^0(Omega^1(2)), in coefficient order.

    Args:
        n_r: Number of Ramond punctures
        ring: Homogeneous ring to build the forms in; k[u, v|theta] when omitted
        weighted: Use the weight 1 - n/2 of theta in the odd forms; ``False``
            gives the forms with weight 1, which are not basic

    Returns:
        (even forms for x1..x_(n+2), odd forms for xi1..xi_(n+2))
    """
    check_ramond_count(n_r)
    ring = ring or form_rings(RingContext()).homogeneous
    u, v, theta = ring.gens(*HOMOGENEOUS_COORDS)
    half = n_r // 2
    weight = 1 - half if weighted else 1

    even = [_form(ring, du=-v, dv=u)]
    even += [_form(ring, dtheta=u ** (n_r - i) * v**i * theta) for i in range(n_r + 1)]

    odd = []
    for i in range(half):
        mono = u ** (half - 1 - i) * v**i
        odd.append(_form(ring, du=-(mono * theta * v), dv=mono * theta * u))
    for i in range(half + 1):
        mono = u ** (half - i) * v**i
        odd.append(_form(ring, du=-(mono * theta) * weight, dtheta=mono * u))
    odd.append(_form(ring, dv=-(v**half * theta) * weight, dtheta=v ** (half + 1)))
    return even, odd


def _coefficient(poly: SuperPoly, exponents: tuple[int, int], base: RingContext) -> SuperPoly:
    part = poly.collect(["u", "v"]).get(exponents)
    return base.zero() if part is None else part.restrict(base)


def _coerce(base: RingContext, value: Any) -> SuperPoly:
    return value if isinstance(value, SuperPoly) else base.const(value)


@dataclass(frozen=True)
class SusyForm:
    """Coefficients x1..x_(n+2) (even) and xi1..xi_(n+2) (odd) of a pre-SUSY form."""

    n_r: int
    even: tuple[SuperPoly, ...]
    odd: tuple[SuperPoly, ...]
    base: RingContext = field(default_factory=RingContext)

    def __post_init__(self) -> None:
        check_ramond_count(self.n_r)
        size = self.n_r + 2
        if len(self.even) != size or len(self.odd) != size:
            raise ValueError(f"expected {size} even and {size} odd coefficients")
        for parity, coefficients in ((Parity.EVEN, self.even), (Parity.ODD, self.odd)):
            for c in coefficients:
                self.base.check_same(c.ctx)
                if not c.has_parity(parity):
                    raise MixedParityError(f"coefficient {c} must be {parity.name.lower()}")

    @classmethod
    def build(
        cls,
        n_r: int,
        even: Sequence[Any],
        odd: Sequence[Any] = (),
        base: RingContext | None = None,
    ) -> SusyForm:
        """Form from leading coefficients; missing ones are zero."""
        base = base or RingContext()
        size = check_ramond_count(n_r) + 2
        if len(even) > size or len(odd) > size:
            raise ValueError(f"at most {size} coefficients of each parity")
        x = [_coerce(base, c) for c in even] + [base.zero()] * (size - len(even))
        xi = [_coerce(base, c) for c in odd] + [base.zero()] * (size - len(odd))
        return cls(n_r, tuple(x), tuple(xi), base)

    @classmethod
    def with_divisor(cls, n_r: int, coefficients: Sequence[Any], x1: Any = 1) -> SusyForm:
        """Bosonic form x1 (u dv - v du) + p theta dtheta with p(1, z) = sum_i c_i z^i."""
        return cls.build(n_r, [x1, *coefficients])

    def lift(self, base: RingContext) -> SusyForm:
        """The same form over a larger coefficient ring."""
        return SusyForm(
            self.n_r,
            tuple(c.lift(base) for c in self.even),
            tuple(c.lift(base) for c in self.odd),
            base,
        )

    @property
    def m(self) -> int:
        return 1 - self.n_r // 2

    @property
    def rings(self) -> FormRings:
        return form_rings(self.base)

    @property
    def x1(self) -> SuperPoly:
        return self.even[0]

    def is_framed(self) -> bool:
        return self.x1.is_unit()

    def coefficients(self) -> dict[str, SuperPoly]:
        """Coefficients by name in the fixed order x1.., xi1.."""
        named = {f"x{i}": c for i, c in enumerate(self.even, start=1)}
        named.update({f"xi{i}": c for i, c in enumerate(self.odd, start=1)})
        return named

    def _binary(self, coefficients: Sequence[SuperPoly], degree: int) -> SuperPoly:
        ring = self.rings.homogeneous
        u, v = ring.gens("u", "v")
        total = ring.zero()
        for i, c in enumerate(coefficients):
            if c:
                total = total + c.lift(ring) * u ** (degree - i) * v**i
        return total

    @property
    def p(self) -> SuperPoly:
        """The degree n_R binary form sum_i x_(2+i) u^(n-i) v^i."""
        return self._binary(self.even[1:], self.n_r)

    @property
    def q(self) -> SuperPoly:
        return self._binary(self.odd[: self.n_r // 2], self.n_r // 2 - 1)

    @property
    def r(self) -> SuperPoly:
        return self._binary(self.odd[self.n_r // 2 : self.n_r + 1], self.n_r // 2)

    def omega(self) -> SuperOneForm:
        """The homogeneous 1-form on k[u, v|theta] tensored with the base."""
        ring = self.rings.homogeneous
        even, odd = canonical_basis(self.n_r, ring)
        total = _form(ring)
        for c, basis_form in zip((*self.even, *self.odd), (*even, *odd), strict=True):
            if c:
                total = total + basis_form.scaled(c.lift(ring))
        return total

    def omega_on_chart_u(self) -> SuperOneForm:
        """omega restricted to u = 1: x1 dz + p(1, z) zeta dzeta + (odd terms)."""
        return pullback_form(self.omega(), self.rings.to_chart_u, U_COORDS)

    def omega_on_chart_v(self) -> SuperOneForm:
        return pullback_form(self.omega(), self.rings.to_chart_v, V_COORDS)

    def gluing_identity_holds(self) -> bool:
        """omega_U = z^2 * m*(omega_V) for the overlap map m writing w, chi on U."""
        rings = self.rings
        z = rings.chart_u.gen("z")
        pulled = pullback_form(self.omega_on_chart_v(), rings.overlap(self.m), U_COORDS)
        return self.omega_on_chart_u() == pulled.scaled(z**2)

    @classmethod
    def from_one_form(cls, form: SuperOneForm, n_r: int, base: RingContext | None = None) -> SusyForm:
        """Read the coefficients off a homogeneous degree-2 basic form.

        The dv component is x1 u + (q u - m xi_(n+2) v^(n/2)) theta and the
        dtheta component is r u + xi_(n+2) v^(n/2+1) + p theta; the result is
        checked by rebuilding the form.

        Raises:
            NotInKernelError: If the form is not a combination of the basis forms
        """
        base = base or base_of(form.ctx)
        ring = form_rings(base).homogeneous
        ring.check_same(form.ctx)
        half = n_r // 2
        theta = ring.gen("theta")
        split = {}
        for y in ("v", "theta"):
            right = form[y].derivative("theta", "right")
            split[y] = (form[y] - right * theta, right)
        (a_v, b_v), (a_theta, b_theta) = split["v"], split["theta"]
        try:
            even = [_coefficient(a_v, (1, 0), base)]
            even += [_coefficient(b_theta, (n_r - i, i), base) for i in range(n_r + 1)]
            odd = [_coefficient(b_v, (half - i, i), base) for i in range(half)]
            odd += [_coefficient(a_theta, (half + 1 - i, i), base) for i in range(half + 1)]
            odd.append(_coefficient(a_theta, (0, half + 1), base))
            result = cls(n_r, tuple(even), tuple(odd), base)
        except (RingMismatchError, MixedParityError) as e:
            raise NotInKernelError(f"not a combination of the canonical forms: {e}") from e
        if result.omega() != form:
            raise NotInKernelError("form differs from its projection onto the canonical forms")
        return result


def parse_susy(text: str) -> SusyForm:
    """Read a SUSY form fixture.

    The fixture holds an ``n_r: <int>`` line, optional ``odd:``/``even:`` header
    lines declaring base generators and ``x<i> = <expr>`` / ``xi<i> = <expr>``
    assignments; unassigned coefficients are zero. ``#`` starts a comment.
    """
    n_r: int | None = None
    headers: list[str] = []
    assignments: list[tuple[str, str, int]] = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.split("#", 1)[0].strip()
        if line.startswith("n_r"):
            try:
                n_r = int(line.partition(":")[2])
            except ValueError as e:
                raise ParseError("n_r must be an integer", offset) from e
        elif "=" in line:
            name, _, expr = line.partition("=")
            assignments.append((name.strip(), expr.strip(), offset))
        elif line:
            headers.append(line)
        offset += len(raw)
    if n_r is None:
        raise ParseError("missing 'n_r:' line", 0)

    declared = split_headers("\n".join(headers))
    laurent = declared.even if declared.laurent is None else declared.laurent
    base = RingContext(even=tuple(declared.even), odd=tuple(declared.odd), laurent=frozenset(laurent))
    size = check_ramond_count(n_r) + 2
    even: list[Any] = [0] * size
    odd: list[Any] = [0] * size
    for name, expr, position in assignments:
        target = odd if name.startswith("xi") else even
        index = name[2:] if name.startswith("xi") else name[1:]
        if not name.startswith("x") or not index.isdigit() or not 1 <= int(index) <= size:
            raise ParseError(f"unknown coefficient {name!r}", position)
        target[int(index) - 1] = parse_poly(expr, base)
    form = SusyForm.build(n_r, even, odd, base)
    logger.debug("parsed susy fixture", n_r=n_r, base=base.names)
    return form


def format_susy(form: SusyForm) -> str:
    """Fixture text for a form; ``parse_susy(format_susy(s)) == s``."""
    lines = [f"n_r: {form.n_r}"]
    if form.base.odd:
        lines.append("odd: " + " ".join(form.base.odd))
    if form.base.even:
        lines.append("even: " + " ".join(form.base.even))
    if form.base.laurent != frozenset(form.base.even):
        lines.append("laurent: " + " ".join(n for n in form.base.even if n in form.base.laurent))
    lines += [f"{name} = {format_poly(c)}" for name, c in form.coefficients().items() if c]
    return "\n".join(lines) + "\n"
