"""Line bundles O_Z(d) on the universal family and their global sections over B = k[eta]."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any

from supermoduli.family.universal import FamilyZ, parameter_product
from supermoduli.logging import get_logger
from supermoduli.sheaf.cech import GlobalSection
from supermoduli.sheaf.line_bundle import LineBundleModel
from supermoduli.sheaf.space import U_COORDS, V_COORDS
from supermoduli.superalgebra.linalg import ColumnSpace, nullspace, rank, sparse_matrix
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, SuperDim

logger = get_logger(__name__)


@dataclass(frozen=True)
class FamilySection:
    """A section of O_Z(d): chart parts over B with f_U = z^d * f_V on the overlap."""

    on_u: SuperPoly
    on_v: SuperPoly
    parity: Parity


@dataclass
class FreeModuleBasis:
    """H^0(Z, O_Z(d)) as a B-module."""

    basis: list[FamilySection]
    rank: SuperDim
    k_dim: SuperDim  # dimension over k, counted by parity
    family: FamilyZ

    def is_free(self) -> bool:
        """dim_k M = rank * dim_k B, split by parity."""
        count = len(self.family.parameters)
        b_even, b_odd = (1, 0) if count == 0 else (2 ** (count - 1), 2 ** (count - 1))
        expected = SuperDim(
            self.rank.even * b_even + self.rank.odd * b_odd,
            self.rank.even * b_odd + self.rank.odd * b_even,
        )
        return expected == self.k_dim

    def specialize(self) -> list[GlobalSection[SuperPoly]]:
        """The basis at eta = 0, as sections of O(d) on WP."""
        space = self.family.base.space
        params = self.family.parameters
        return [
            GlobalSection(
                s.on_u.without(params).restrict(space.chart_u),
                s.on_v.without(params).restrict(space.chart_v),
                s.parity,
                0,
            )
            for s in self.basis
        ]


def line_bundle_on_z(family: FamilyZ, d: int) -> LineBundleModel:
    """O_Z(d), glued by z^d over the Z-gluing."""
    return LineBundleModel(family, d)


def _coordinates(poly: SuperPoly) -> dict[Any, Any]:
    return {(mono.even, mono.odd): c for mono, c in poly.terms.items()}


def h0_on_z(family: FamilyZ, d: int, bound: int | None = None) -> FreeModuleBasis:
    """Global sections of O_Z(d) and a B-basis lifting a basis of H^0(WP, O(d)).

    Unknowns are the k-coefficients of eta_S * z^a * zeta^e on U and of
    eta_S * w^b * chi^e on V; the transition identity is linear over k.

    Args:
        family: The universal family Z/S
        d: Twist
        bound: Largest chart exponent; defaults to the Cech window radius of WP

    Returns:
        B-basis, its rank and the dimension of the section space over k
    """
    model = line_bundle_on_z(family, d)
    params = family.parameters
    space = family.base.space
    bound = bound if bound is not None else space.default_radius(d)
    subsets = [s for k in range(len(params) + 1) for s in combinations(params, k)]
    z, zeta = family.chart_u.gens(*U_COORDS)
    w, chi = family.chart_v.gens(*V_COORDS)

    basis: list[FamilySection] = []
    rank_counts = [0, 0]
    k_counts = [0, 0]
    for parity in Parity:
        cols = ColumnSpace()
        u_sections: list[SuperPoly] = []
        v_sections: list[SuperPoly] = []
        for subset in subsets:
            for odd in (0, 1):
                if (len(subset) + odd) % 2 != parity:
                    continue
                eps_u = parameter_product(family.chart_u, subset)
                eps_v = parameter_product(family.chart_v, subset)
                for a in range(bound + 1):
                    u_sections.append(eps_u * z**a * (zeta if odd else 1))
                    v_sections.append(eps_v * w**a * (chi if odd else 1))
        for section in u_sections:
            cols.add_column(_coordinates(section))
        for section in v_sections:
            image = model.transition * family.inverse_gluing(section)
            cols.add_column({k: -c for k, c in _coordinates(image).items()})
        kernel = nullspace(cols.matrix())
        k_counts[parity] = len(kernel)

        n_u = len(u_sections)
        found = [
            FamilySection(
                sum((u_sections[j] * c for j, c in vec.items() if j < n_u), family.chart_u.zero()),
                sum((v_sections[j - n_u] * c for j, c in vec.items() if j >= n_u), family.chart_v.zero()),
                parity,
            )
            for vec in kernel
        ]
        # keep sections whose values at eta = 0 are independent
        reductions = ColumnSpace()
        kept: list[dict[int, Any]] = []
        for section in found:
            vector = reductions.vector(_coordinates(section.on_u.without(params)))
            nrows = len(reductions.row_labels)
            if vector and rank(sparse_matrix([*kept, vector], nrows)) > len(kept):
                kept.append(vector)
                basis.append(section)
        rank_counts[parity] = len(kept)

    result = FreeModuleBasis(basis, SuperDim(*rank_counts), SuperDim(*k_counts), family)
    logger.debug("h0 on family", n_r=family.n_r, d=d, rank=str(result.rank), k_dim=str(result.k_dim))
    return result
