"""Gamma* as the kernel of Aut(A) -> Aut(WP), and equality in the quotient."""

from __future__ import annotations

from dataclasses import dataclass

from supermoduli.autgroup.element import AutElement
from supermoduli.logging import get_logger
from supermoduli.superalgebra.ring import RingContext
from supermoduli.susy.form import form_rings
from supermoduli.susy.gauge import GammaStarElement

logger = get_logger(__name__)


def gamma_as_aut(g: GammaStarElement) -> AutElement:
    """Multiplication of u, v by f = a0 (1 + theta B) and of theta by f^(1 - n/2).

    On theta the odd part of f is killed, so theta -> a0^(1 - n/2) theta.
    """
    n_r, a0 = g.n_r, g.a0
    half = n_r // 2
    zero = g.base.zero()
    alpha = [a0 * b for b in g.beta] + [zero]
    beta = [zero] + [a0 * b for b in g.beta]
    return AutElement(n_r, a0, zero, zero, a0, a0 ** (1 - half), tuple(alpha), tuple(beta), g.base)


def gamma_from_aut(element: AutElement) -> GammaStarElement | None:
    """The Gamma* element acting as ``element``, if there is one."""
    a0 = element.a
    if not a0.is_unit():
        return None
    candidate = GammaStarElement(element.n_r, a0, tuple(a0.inverse() * x for x in element.alpha[:-1]))
    return candidate if gamma_as_aut(candidate) == element else None


@dataclass
class QuotientTest:
    equal: bool
    witness: GammaStarElement | None


def quotient_equal(g: AutElement, h: AutElement) -> QuotientTest:
    """Whether g and h agree in Aut(A)/Gamma*, with gamma such that h = gamma @ g."""
    witness = gamma_from_aut(h @ g.inverse())
    logger.debug("quotient comparison", n_r=g.n_r, equal=witness is not None)
    return QuotientTest(witness is not None, witness)


def theta_collapse_holds(n_r: int) -> bool:
    """(1 + theta B)^(1 - n/2) theta == theta for B with generic odd coefficients."""
    half = n_r // 2
    base = RingContext(odd=tuple(f"beta{i}" for i in range(half)))
    ring = form_rings(base).homogeneous
    u, v, theta = ring.gens("u", "v", "theta")
    b = ring.zero()
    for i, name in enumerate(base.odd):
        b = b + ring.gen(name) * v**i * u ** (half - 1 - i)
    return (ring.one() + theta * b) ** (1 - half) * theta == theta
