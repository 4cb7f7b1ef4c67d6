"""Cohomology of the tangent sheaf of WP(1,1|m) and cocycle reduction."""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from supermoduli.config import get_settings
from supermoduli.errors import WindowError
from supermoduli.logging import get_logger
from supermoduli.sheaf.cech import (
    CechClass,
    CechWindow,
    ChartSheaf,
    GlobalSection,
    Label,
    TwoChartComplex,
)
from supermoduli.sheaf.space import U_COORDS, WPSpace
from supermoduli.superalgebra.fields import SuperVectorField
from supermoduli.superalgebra.linalg import ColumnSpace, rank, sparse_matrix
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly
from supermoduli.superalgebra.ring import Parity, SuperDim

logger = get_logger(__name__)


class TangentSheaf(ChartSheaf[SuperVectorField]):
    """T_WP with frames (d/dz, d/dzeta) on U and (d/dw, d/dchi) on V.

    Weights: z^a zeta^e d/dz has weight a - 1, z^a zeta^e d/dzeta has weight a.
    """

    def __init__(self, space: WPSpace) -> None:
        self.space = space
        self.twist = 0

    def u_basis(self, bound: int) -> Iterator[SuperVectorField]:
        z, zeta = self.space.chart_u.gens("z", "zeta")
        for a in range(bound + 1):
            yield self.space.u_field(dz=z**a)
            yield self.space.u_field(dz=z**a * zeta)
            yield self.space.u_field(dzeta=z**a)
            yield self.space.u_field(dzeta=z**a * zeta)

    def v_basis(self, bound: int) -> Iterator[SuperVectorField]:
        w, chi = self.space.chart_v.gens("w", "chi")
        for b in range(bound + 1):
            yield self.space.v_field(dw=w**b)
            yield self.space.v_field(dw=w**b * chi)
            yield self.space.v_field(dchi=w**b)
            yield self.space.v_field(dchi=w**b * chi)

    def v_to_overlap(self, section: SuperVectorField) -> SuperVectorField:
        return self.space.to_u_frame(section)

    def coordinates(self, section: SuperVectorField) -> dict[Label, Any]:
        return {(y, mono.even[0], mono.odd): c for y in U_COORDS for mono, c in section[y].terms.items()}

    def from_coordinates(self, coords: Mapping[Label, Any]) -> SuperVectorField:
        parts: dict[str, dict[SuperMonomial, Any]] = {y: {} for y in U_COORDS}
        for (y, a, odd), c in coords.items():
            parts[y][SuperMonomial((a,), odd)] = c
        ctx = self.space.chart_u
        return self.space.u_field(dz=SuperPoly(ctx, parts["z"]), dzeta=SuperPoly(ctx, parts["zeta"]))

    def combine(self, items: Sequence[tuple[Any, SuperVectorField]], frame: str) -> SuperVectorField:
        total = self.space.u_field() if frame == "u" else self.space.v_field()
        for coeff, field in items:
            total = total + field.scaled(field.ctx.const(coeff))
        return total

    def weight(self, label: Label) -> int:
        return label[1] - 1 if label[0] == "z" else label[1]

    def parity(self, label: Label) -> Parity:
        return Parity((len(label[2]) + (label[0] == "zeta")) % 2)

    def labels_of_weight(self, weight: int) -> list[Label]:
        return [
            ("zeta", weight, ()),
            ("zeta", weight, (0,)),
            ("z", weight + 1, ()),
            ("z", weight + 1, (0,)),
        ]

    def preference(self, label: Label) -> tuple[Any, ...]:
        component, a, odd = label
        return (not (component == "zeta" and a < 0), abs(a), component != "zeta", odd)


@dataclass
class TangentCohomology:
    """H^0 and H^1 of the tangent sheaf."""

    h0_basis: list[GlobalSection[SuperVectorField]]
    h0_dim: SuperDim
    h1_basis: list[CechClass[SuperVectorField]]
    h1_dim: SuperDim
    radius: int


@dataclass
class CocycleReduction:
    """v - sum(c_i * basis_i) = on_u - on_v, where on_v is written in the V frame."""

    coefficients: list[Any]
    on_u: SuperVectorField
    on_v: SuperVectorField
    basis: list[CechClass[SuperVectorField]]

    def is_coboundary(self) -> bool:
        return not any(self.coefficients)


def tangent_cohomology(space: WPSpace, radius: int | None = None) -> TangentCohomology:
    """Compute H^0(T) and H^1(T) of WP(1,1|m).

    Args:
        space: The weighted projective superline
        radius: Optional starting window radius

    Returns:
        Bases and dimensions; H^1 representatives are negative-degree d/dzeta terms when possible
    """
    settings = get_settings()
    current = radius or settings.window_radius or space.default_radius()
    for _ in range(settings.max_window_doublings + 1):
        if window_is_stable(space, current):
            result = tangent_complex(space, current).cohomology()
            logger.debug("tangent cohomology", m=space.m, h0=str(result.h0_dim), h1=str(result.h1_dim), radius=current)
            return TangentCohomology(result.h0, result.h0_dim, result.h1, result.h1_dim, current)
        logger.info("window not stable, doubling", radius=current)
        current *= 2
    raise WindowError(f"tangent cohomology did not stabilize up to radius {current}")


@lru_cache(maxsize=128)
def tangent_complex(space: WPSpace, radius: int) -> TwoChartComplex[SuperVectorField]:
    """Truncated Čech complex of T_WP, shared between cocycle reductions."""
    return TwoChartComplex(TangentSheaf(space), CechWindow.of_radius(radius))


def reduce_cocycle(space: WPSpace, field: SuperVectorField, radius: int | None = None) -> CocycleReduction:
    """Coordinates of an overlap vector field in the H^1 basis, with its coboundary part.

    The field is given in the U frame with Laurent coefficients over k. The window
    is doubled until it holds every weight occurring in the field.
    """
    settings = get_settings()
    current = radius or settings.window_radius or space.default_radius()
    for _ in range(settings.max_window_doublings + 1):
        complex_ = tangent_complex(space, current)
        try:
            splitting = complex_.split(field)
        except WindowError as e:
            logger.debug("window too small for cocycle", radius=current, error=str(e))
            current *= 2
            continue
        return CocycleReduction(splitting.coefficients, splitting.on_u, splitting.on_v, complex_.classes())
    raise WindowError(f"cocycle does not fit a window of radius {current}")


def is_global(space: WPSpace, field: SuperVectorField) -> bool:
    """Whether a U-frame field extends to a global vector field."""
    if any(e < 0 for y in U_COORDS for mono in field[y].terms for e in mono.even):
        return False
    on_v = space.to_v_frame(field)
    return all(e >= 0 for y in ("w", "chi") for mono in on_v[y].terms for e in mono.even)


def standard_global_fields(space: WPSpace) -> tuple[list[SuperVectorField], list[SuperVectorField]]:
    """Closed-form basis of H^0(T): even and odd fields on U.

    Even: d/dz, z d/dz, z^2 d/dz + m z zeta d/dzeta, zeta d/dzeta.
    Odd: z^j zeta d/dz for 0 <= j <= 2 - m, and z^j d/dzeta for 0 <= j <= m.
    """
    z, zeta = space.chart_u.gens("z", "zeta")
    m = space.m
    even = [
        space.u_field(dz=1),
        space.u_field(dz=z),
        space.u_field(dz=z**2, dzeta=z * zeta * m),
        space.u_field(dzeta=zeta),
    ]
    odd = [space.u_field(dz=z**j * zeta) for j in range(3 - m)]
    odd += [space.u_field(dzeta=z**j) for j in range(m + 1)]
    return even, odd


def expected_tangent_h1(m: int) -> SuperDim:
    """(0 | -m-1) for m < -1, (0|0) for -1 <= m <= 3, (0 | m-3) for m > 3."""
    return SuperDim(0, max(0, m - 3) + max(0, -m - 1))


def expected_tangent_h0(m: int) -> SuperDim:
    return SuperDim(4, max(0, 3 - m) + max(0, m + 1))


def spans_global_sections(space: WPSpace, cohomology: TangentCohomology) -> bool:
    """The closed-form fields are global and span the computed H^0 (compared on U)."""
    even, odd = standard_global_fields(space)
    candidates = even + odd
    if not all(is_global(space, f) for f in candidates):
        return False
    sheaf = TangentSheaf(space)
    cols = ColumnSpace()
    computed = [cols.vector(sheaf.coordinates(s.on_u)) for s in cohomology.h0_basis]
    closed = [cols.vector(sheaf.coordinates(f)) for f in candidates]
    nrows = len(cols.row_labels)
    r_computed = rank(sparse_matrix(computed, nrows))
    return r_computed == rank(sparse_matrix(closed, nrows)) == rank(sparse_matrix(computed + closed, nrows))


def window_is_stable(space: WPSpace, radius: int) -> bool:
    """Dimensions of H^0(T) and H^1(T) agree at radius N and N+1."""
    at_n = tangent_complex(space, radius).cohomology()
    at_next = tangent_complex(space, radius + 1).cohomology()
    return (at_n.h0_dim, at_n.h1_dim) == (at_next.h0_dim, at_next.h1_dim)
