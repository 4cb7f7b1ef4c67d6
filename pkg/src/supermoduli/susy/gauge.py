"""The gauge group Gamma* of invertible global functions and its action on SUSY forms."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from supermoduli.errors import MixedParityError, NotInvertibleError, UnframedError, check_ramond_count
from supermoduli.logging import get_logger
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext
from supermoduli.susy.form import SusyForm

logger = get_logger(__name__)


@dataclass(frozen=True)
class GammaStarElement:
    """The function a0 (1 + theta * sum_i beta_i v^i u^(n/2-1-i)), i.e. a0 (1 + zeta sum_i beta_i z^i) on U."""

    n_r: int
    a0: SuperPoly
    beta: tuple[SuperPoly, ...]

    def __post_init__(self) -> None:
        check_ramond_count(self.n_r)
        if len(self.beta) != self.n_r // 2:
            raise ValueError(f"expected {self.n_r // 2} odd parameters, got {len(self.beta)}")
        if not self.a0.has_parity(Parity.EVEN) or not self.a0.is_unit():
            raise NotInvertibleError(f"a0 = {self.a0} must be an even unit")
        for b in self.beta:
            self.a0.ctx.check_same(b.ctx)
            if not b.has_parity(Parity.ODD):
                raise MixedParityError(f"beta coefficient {b} must be odd")

    @classmethod
    def build(cls, n_r: int, a0: Any = 1, beta: Sequence[Any] = (), base: RingContext | None = None) -> GammaStarElement:
        base = base or RingContext()
        coerce = [b if isinstance(b, SuperPoly) else base.const(b) for b in beta]
        coerce += [base.zero()] * (n_r // 2 - len(coerce))
        scalar = a0 if isinstance(a0, SuperPoly) else base.const(a0)
        return cls(n_r, scalar, tuple(coerce))

    @classmethod
    def identity(cls, n_r: int, base: RingContext | None = None) -> GammaStarElement:
        return cls.build(n_r, base=base)

    @property
    def base(self) -> RingContext:
        return self.a0.ctx

    def __mul__(self, other: GammaStarElement) -> GammaStarElement:
        """Scalars multiply and the odd parameters add."""
        return GammaStarElement(
            self.n_r,
            self.a0 * other.a0,
            tuple(b1 + b2 for b1, b2 in zip(self.beta, other.beta, strict=True)),
        )

    def inverse(self) -> GammaStarElement:
        return GammaStarElement(self.n_r, self.a0.inverse(), tuple(-b for b in self.beta))

    def is_identity(self) -> bool:
        return self.a0 == 1 and not any(self.beta)

    def function(self, ring: RingContext) -> SuperPoly:
        """The degree-0 element of the homogeneous ring ``ring``."""
        u, v, theta = ring.gens("u", "v", "theta")
        half = self.n_r // 2
        odd_part = ring.zero()
        for i, b in enumerate(self.beta):
            if b:
                odd_part = odd_part + b.lift(ring) * v**i * u ** (half - 1 - i)
        return self.a0.lift(ring) * (ring.one() + theta * odd_part)

    def on_chart_u(self, chart_u: RingContext) -> SuperPoly:
        z, zeta = chart_u.gens("z", "zeta")
        odd_part = chart_u.zero()
        for i, b in enumerate(self.beta):
            if b:
                odd_part = odd_part + b.lift(chart_u) * z**i
        return self.a0.lift(chart_u) * (chart_u.one() + zeta * odd_part)


def gamma_action(g: GammaStarElement, form: SusyForm) -> SusyForm:
    """The form g * omega, read back in the canonical basis."""
    form.base.check_same(g.base)
    ring = form.rings.homogeneous
    return SusyForm.from_one_form(form.omega().scaled(g.function(ring)), form.n_r, form.base)


@dataclass
class GaugeFixed:
    """The orbit representative with x1 = 1 and q = 0, and the element reaching it."""

    form: SusyForm
    element: GammaStarElement


def gauge_fix(form: SusyForm) -> GaugeFixed:
    """Move a framed form to x1 = 1, q = 0 by a0 = 1/x1 and beta = q/x1.

    Multiplying by a0 (1 + theta B) sends x1 to a0 x1 and q to a0 (q - x1 B);
    every other coefficient only picks up terms that do not feed back into x1 or q.

    Raises:
        UnframedError: If x1 is not a unit
    """
    if not form.is_framed():
        raise UnframedError(f"x1 = {form.x1} is not a unit")
    x1_inv = form.x1.inverse()
    half = form.n_r // 2
    g = GammaStarElement(form.n_r, x1_inv, tuple(x1_inv * xi for xi in form.odd[:half]))
    fixed = gamma_action(g, form)
    assert fixed.x1 == 1 and not any(fixed.odd[:half]), "gauge fixing left x1 or q"
    logger.debug("gauge fixed", n_r=form.n_r, trivial=g.is_identity())
    return GaugeFixed(fixed, g)


def is_gauge_fixed(form: SusyForm) -> bool:
    return form.x1 == 1 and not any(form.odd[: form.n_r // 2])
