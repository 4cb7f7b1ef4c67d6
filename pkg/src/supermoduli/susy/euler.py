"""H^0(Omega^1(2)) of WP(1,1|1-n/2) through the Euler sequence.

    0 -> Omega^1(2) -> O(1) du + O(1) dv + O(n/2+1) dtheta -> O(2) -> 0

The right map contracts with the weighted Euler field u d/du + v d/dv + m theta d/dtheta.
Global sections of O(k) are the degree-k elements of k[u, v|theta], so the kernel
on global sections is a finite linear problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from supermoduli.errors import check_ramond_count
from supermoduli.logging import get_logger
from supermoduli.superalgebra.fields import SuperOneForm, SuperVectorField
from supermoduli.superalgebra.linalg import ColumnSpace, nullspace, rank, sparse_matrix
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext, SuperDim
from supermoduli.susy.form import HOMOGENEOUS_COORDS, canonical_basis, form_rings

logger = get_logger(__name__)


def homogeneous_elements(n_r: int, degree: int, ring: RingContext | None = None) -> list[SuperPoly]:
    """Monomial basis of the degree-``degree`` part of k[u, v|theta], even ones first."""
    ring = ring or form_rings(RingContext()).homogeneous
    u, v, theta = ring.gens(*HOMOGENEOUS_COORDS)
    odd_degree = degree - (1 - n_r // 2)
    even = [u ** (degree - i) * v**i for i in range(degree + 1)] if degree >= 0 else []
    odd = [u ** (odd_degree - i) * v**i * theta for i in range(odd_degree + 1)] if odd_degree >= 0 else []
    return even + odd


def euler_field(n_r: int, ring: RingContext | None = None) -> SuperVectorField:
    """u d/du + v d/dv + (1 - n/2) theta d/dtheta."""
    ring = ring or form_rings(RingContext()).homogeneous
    u, v, theta = ring.gens(*HOMOGENEOUS_COORDS)
    return SuperVectorField(ring, HOMOGENEOUS_COORDS, {"u": u, "v": v, "theta": theta * (1 - n_r // 2)})


def is_basic(form: SuperOneForm, n_r: int) -> bool:
    """The form is annihilated by the Euler contraction."""
    return not form.contract(euler_field(n_r, form.ctx))


def _form_coordinates(form: SuperOneForm) -> dict[Any, Any]:
    return {(y, mono): c for y in form.coords for mono, c in form[y].terms.items()}


@dataclass
class OmegaTwisted:
    """Kernel of H^0(p) and the comparison with the canonical basis forms."""

    n_r: int
    basis: list[SuperOneForm]
    dim: SuperDim
    surjective: bool
    canonical: list[SuperOneForm]
    canonical_in_kernel: bool
    canonical_spans: bool


def h0_omega_twisted(n_r: int) -> OmegaTwisted:
    """Compute H^0(Omega^1(2)) as the kernel of the Euler contraction on global sections.

    Args:
        n_r: Number of Ramond punctures

    Returns:
        A kernel basis by parity, its dimension, whether H^0(p) is onto H^0(O(2)),
        and whether the canonical forms lie in the kernel and span it
    """
    check_ramond_count(n_r)
    ring = form_rings(RingContext()).homogeneous
    euler = euler_field(n_r, ring)
    sources = {
        "u": homogeneous_elements(n_r, 1, ring),
        "v": homogeneous_elements(n_r, 1, ring),
        "theta": homogeneous_elements(n_r, n_r // 2 + 1, ring),
    }
    targets = homogeneous_elements(n_r, 2, ring)
    canonical_even, canonical_odd = canonical_basis(n_r, ring)

    basis: list[SuperOneForm] = []
    counts = [0, 0]
    surjective = True
    spans = True
    for parity, canonical in ((Parity.EVEN, canonical_even), (Parity.ODD, canonical_odd)):
        forms = [
            SuperOneForm(ring, HOMOGENEOUS_COORDS, {y: coeff})
            for y, coefficients in sources.items()
            for coeff in coefficients
            if coeff.require_parity() + ring.parity_of(y) == parity
        ]
        images = ColumnSpace()
        for form in forms:
            images.add_column({mono: c for mono, c in form.contract(euler).terms.items()})
        target_count = sum(1 for t in targets if t.require_parity() == parity)
        nrows = len(images.row_labels)
        surjective = surjective and rank(images.matrix()) == target_count == nrows

        kernel = nullspace(images.matrix())
        found = [
            sum((forms[j].scaled(ring.const(c)) for j, c in vec.items()), SuperOneForm(ring, HOMOGENEOUS_COORDS, {}))
            for vec in kernel
        ]
        basis += found
        counts[parity] = len(found)

        coords = ColumnSpace()
        kernel_vectors = [coords.vector(_form_coordinates(f)) for f in found]
        canonical_vectors = [coords.vector(_form_coordinates(f)) for f in canonical]
        size = len(coords.row_labels)
        together = rank(sparse_matrix(kernel_vectors + canonical_vectors, size))
        spans = spans and together == len(found) == rank(sparse_matrix(canonical_vectors, size))

    canonical_all = canonical_even + canonical_odd
    result = OmegaTwisted(
        n_r,
        basis,
        SuperDim(*counts),
        surjective,
        canonical_all,
        all(is_basic(f, n_r) for f in canonical_all),
        spans,
    )
    logger.debug("h0 of twisted differentials", n_r=n_r, dim=str(result.dim), surjective=surjective)
    return result
