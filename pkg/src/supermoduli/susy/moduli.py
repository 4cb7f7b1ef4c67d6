"""Dimension count of the moduli of genus-0 SUSY curves with Ramond punctures."""

from __future__ import annotations

from dataclasses import dataclass

from supermoduli.errors import check_ramond_count
from supermoduli.family.sections import h0_on_z
from supermoduli.family.universal import BaseS, build_z
from supermoduli.logging import get_logger
from supermoduli.superalgebra.ring import SuperDim
from supermoduli.susy.euler import h0_omega_twisted

logger = get_logger(__name__)


@dataclass(frozen=True)
class ModuliDimensions:
    """Each summand is computed on its own; only the assembly is arithmetic."""

    n_r: int
    forms: SuperDim  # Y over S, from H^0(Omega^1(2))
    gauge: SuperDim  # Gamma*_Z over S, from H^0(O_Z)
    base: SuperDim  # S
    automorphisms: SuperDim  # Aut(WP)

    @property
    def quotient_relative(self) -> SuperDim:
        """Y / Gamma*_Z over S."""
        return self.forms - self.gauge

    @property
    def quotient(self) -> SuperDim:
        return self.quotient_relative + self.base

    @property
    def moduli(self) -> SuperDim:
        return self.quotient - self.automorphisms


def expected_moduli_dimension(n_r: int) -> SuperDim:
    """(n_R - 3 | n_R/2 - 2)."""
    return SuperDim(n_r - 3, n_r // 2 - 2)


def moduli_dimension_report(n_r: int) -> ModuliDimensions:
    """Assemble dim M from the sizes of Y, Gamma*_Z, S and Aut(WP)."""
    from supermoduli.autgroup.dimensions import dimension_table

    check_ramond_count(n_r)
    report = ModuliDimensions(
        n_r=n_r,
        forms=h0_omega_twisted(n_r).dim,
        gauge=h0_on_z(build_z(n_r), 0).rank,
        base=BaseS(n_r).dim,
        automorphisms=dimension_table(n_r).aut_wp,
    )
    logger.debug("moduli dimensions", n_r=n_r, quotient=str(report.quotient_relative), moduli=str(report.moduli))
    return report
