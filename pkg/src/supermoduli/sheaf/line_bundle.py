"""Line bundles O(d) on WP(1,1|m) and their cohomology."""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from supermoduli.logging import get_logger
from supermoduli.sheaf.cech import CechClass, ChartSheaf, GlobalSection, Label, stable_cohomology
from supermoduli.sheaf.space import WPSpace
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.linalg import ColumnSpace, rank, sparse_matrix
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext, SuperDim, WeightedDegree

logger = get_logger(__name__)

HOMOGENEOUS_RING = RingContext(even=("u", "v"), odd=("theta",))


@dataclass(frozen=True)
class LineBundleModel:
    """O(d) on a two-chart base: sections satisfy f_U = z^d * f_V on the overlap.

    ``base`` is a :class:`WPSpace` or a family over a super base; anything with a
    ``chart_u`` context containing ``z``.
    """

    base: Any
    twist: int

    @property
    def transition(self) -> SuperPoly:
        return self.base.chart_u.gen("z") ** self.twist

    def tensor(self, other: LineBundleModel) -> LineBundleModel:
        if other.base != self.base:
            raise ValueError("line bundles live on different bases")
        return LineBundleModel(self.base, self.twist + other.twist)


class LineBundleSheaf(ChartSheaf[SuperPoly]):
    """O(d) with the monomial frames 1 on U and on V."""

    def __init__(self, space: WPSpace, d: int) -> None:
        self.space = space
        self.twist = d
        self.model = LineBundleModel(space, d)

    def u_basis(self, bound: int) -> Iterator[SuperPoly]:
        z, zeta = self.space.chart_u.gens("z", "zeta")
        for a in range(bound + 1):
            yield z**a
            yield z**a * zeta

    def v_basis(self, bound: int) -> Iterator[SuperPoly]:
        w, chi = self.space.chart_v.gens("w", "chi")
        for b in range(bound + 1):
            yield w**b
            yield w**b * chi

    def v_to_overlap(self, section: SuperPoly) -> SuperPoly:
        return self.model.transition * self.space.inverse_gluing(section)

    def coordinates(self, section: SuperPoly) -> dict[Label, Any]:
        return {("", mono.even[0], mono.odd): c for mono, c in section.terms.items()}

    def from_coordinates(self, coords: Mapping[Label, Any]) -> SuperPoly:
        return SuperPoly(self.space.chart_u, {SuperMonomial((a,), odd): c for (_, a, odd), c in coords.items()})

    def combine(self, items: Sequence[tuple[Any, SuperPoly]], frame: str) -> SuperPoly:
        total = (self.space.chart_u if frame == "u" else self.space.chart_v).zero()
        for coeff, section in items:
            total = total + section * coeff
        return total

    def weight(self, label: Label) -> int:
        return label[1]

    def parity(self, label: Label) -> Parity:
        return Parity(len(label[2]) % 2)

    def labels_of_weight(self, weight: int) -> list[Label]:
        return [("", weight, ()), ("", weight, (0,))]

    def preference(self, label: Label) -> tuple[Any, ...]:
        return (label[1] >= 0, abs(label[1]), label[2])


@dataclass
class LineBundleH0:
    basis: list[GlobalSection[SuperPoly]]
    dim: SuperDim

    def contains(self, section: GlobalSection[SuperPoly]) -> bool:
        """Whether a global section lies in the span (restriction to U is injective)."""
        space = ColumnSpace()
        vectors = [space.vector(_u_coordinates(s.on_u)) for s in self.basis]
        target = space.vector(_u_coordinates(section.on_u))
        nrows = len(space.row_labels)
        return rank(sparse_matrix([*vectors, target], nrows)) == rank(sparse_matrix(vectors, nrows))


@dataclass
class LineBundleH1:
    classes: list[CechClass[SuperPoly]]
    dim: SuperDim


def _u_coordinates(poly: SuperPoly) -> dict[Any, Any]:
    return {(mono.even, mono.odd): c for mono, c in poly.terms.items()}


def h0_line_bundle(space: WPSpace, d: int, radius: int | None = None) -> LineBundleH0:
    """Global sections of O(d).

    Args:
        space: The weighted projective superline
        d: Twist
        radius: Optional starting window radius

    Returns:
        Basis of chart pairs and the (even|odd) dimension
    """
    result = stable_cohomology(LineBundleSheaf(space, d), radius)
    logger.debug("h0 of line bundle", m=space.m, d=d, dim=str(result.h0_dim))
    return LineBundleH0(result.h0, result.h0_dim)


def h1_line_bundle(space: WPSpace, d: int, radius: int | None = None) -> LineBundleH1:
    """First cohomology of O(d), with representatives of negative z-degree."""
    result = stable_cohomology(LineBundleSheaf(space, d), radius)
    logger.debug("h1 of line bundle", m=space.m, d=d, dim=str(result.h1_dim))
    return LineBundleH1(result.h1, result.h1_dim)


def p1_h0(k: int) -> int:
    return max(0, k + 1)


def p1_h1(k: int) -> int:
    return max(0, -k - 1)


def split_oracle(space: WPSpace, d: int) -> tuple[SuperDim, SuperDim]:
    """(h0, h1) of O(d) from the splitting O_P1(d) + Pi O_P1(d - m)."""
    return (
        SuperDim(p1_h0(d), p1_h0(d - space.m)),
        SuperDim(p1_h1(d), p1_h1(d - space.m)),
    )


def serre_dual_twist(space: WPSpace, d: int) -> int:
    """Twist e with H^1(O(d)) dual to H^0(Pi O(e)); the Berezinian is Pi O(m - 2)."""
    return space.m - 2 - d


def serre_duality_holds(space: WPSpace, d: int) -> bool:
    """h1(O(d)) equals the parity-swapped h0(O(m - 2 - d)), both computed by the solver."""
    h1 = h1_line_bundle(space, d).dim
    dual = h0_line_bundle(space, serre_dual_twist(space, d)).dim
    return h1 == dual.swapped()


def dehomogenize(space: WPSpace, form: SuperPoly) -> GlobalSection[SuperPoly]:
    """The section of O(d) given by a homogeneous element of k[u, v|theta].

    On U it is form(1, z, zeta), on V form(w, 1, chi).
    """
    z, zeta = space.chart_u.gens("z", "zeta")
    w, chi = space.chart_v.gens("w", "chi")
    on_u = ChartMap(HOMOGENEOUS_RING, space.chart_u, {"u": space.chart_u.one(), "v": z, "theta": zeta})(form)
    on_v = ChartMap(HOMOGENEOUS_RING, space.chart_v, {"u": w, "v": space.chart_v.one(), "theta": chi})(form)
    return GlobalSection(on_u, on_v, form.require_parity(), WeightedDegree({"z": 1}).of(on_u) or 0)


def is_global_section(space: WPSpace, d: int, section: GlobalSection[SuperPoly]) -> bool:
    """Both chart parts are regular and agree through the transition z^d."""
    sheaf = LineBundleSheaf(space, d)
    regular = all(e >= 0 for p in (section.on_u, section.on_v) for mono in p.terms for e in mono.even)
    return regular and section.on_u == sheaf.v_to_overlap(section.on_v)
