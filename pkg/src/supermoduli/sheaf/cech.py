"""Two-chart Čech cohomology over finite Laurent windows.

Every sheaf handled here has a monomial frame on both charts and a k^*-action
(z of weight 1, zeta of weight 0) for which the gluing is homogeneous. The
Čech differential then splits into finite blocks indexed by (weight, parity),
and truncating to the weights of a window is exact inside the window.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Generic, TypeVar

from supermoduli.config import get_settings
from supermoduli.errors import WindowError
from supermoduli.logging import get_logger
from supermoduli.sheaf.space import WPSpace
from supermoduli.superalgebra.linalg import ColumnSpace, complement_pivots, nullspace, solve
from supermoduli.superalgebra.ring import Parity, SuperDim

logger = get_logger(__name__)

S = TypeVar("S")

# (component, z-exponent, odd indices) of a U-frame overlap monomial
Label = tuple[str, int, tuple[int, ...]]


@dataclass(frozen=True)
class CechWindow:
    """Weights lo..hi kept in the truncated complex."""

    lo: int
    hi: int

    @classmethod
    def of_radius(cls, radius: int) -> CechWindow:
        return cls(-radius, radius)

    @property
    def radius(self) -> int:
        return max(-self.lo, self.hi)

    def contains(self, weight: int) -> bool:
        return self.lo <= weight <= self.hi

    def weights(self) -> range:
        return range(self.lo, self.hi + 1)

    def doubled(self) -> CechWindow:
        return CechWindow.of_radius(2 * max(self.radius, 1))


@dataclass(frozen=True)
class GlobalSection(Generic[S]):
    """A pair of chart sections agreeing on the overlap."""

    on_u: S
    on_v: S
    parity: Parity
    weight: int


@dataclass(frozen=True)
class CechClass(Generic[S]):
    """A class in H^1, stored through a U-frame overlap representative."""

    representative: S
    parity: Parity
    weight: int
    label: Label


@dataclass
class CechCohomology(Generic[S]):
    """H^0 and H^1 of a sheaf computed in a window."""

    h0: list[GlobalSection[S]]
    h1: list[CechClass[S]]
    window: CechWindow

    @property
    def h0_dim(self) -> SuperDim:
        return _count(s.parity for s in self.h0)

    @property
    def h1_dim(self) -> SuperDim:
        return _count(c.parity for c in self.h1)


def _count(parities: Iterable[Parity]) -> SuperDim:
    items = list(parities)
    odd = sum(1 for p in items if p)
    return SuperDim(len(items) - odd, odd)


@dataclass
class CocycleSplitting(Generic[S]):
    """v = sum(c_i * class_i) + on_u - on_v, with on_v given in the V frame."""

    coefficients: list[Any]
    on_u: S
    on_v: S


class ChartSheaf(ABC, Generic[S]):
    """A sheaf on WP(1,1|m) with monomial frames on both charts."""

    space: WPSpace
    twist: int = 0

    @abstractmethod
    def u_basis(self, bound: int) -> Iterator[S]:
        """Monomial sections regular on U with z-exponent at most ``bound``."""

    @abstractmethod
    def v_basis(self, bound: int) -> Iterator[S]:
        """Monomial sections regular on V with w-exponent at most ``bound``."""

    @abstractmethod
    def v_to_overlap(self, section: S) -> S:
        """A V-frame section rewritten in the U frame on the overlap."""

    @abstractmethod
    def coordinates(self, section: S) -> dict[Label, Any]:
        """Coefficients of a U-frame section in the overlap monomial basis."""

    @abstractmethod
    def from_coordinates(self, coords: Mapping[Label, Any]) -> S:
        """Inverse of :meth:`coordinates`."""

    @abstractmethod
    def combine(self, items: Sequence[tuple[Any, S]], frame: str) -> S:
        """Linear combination sum(c * s) in the U or V frame."""

    @abstractmethod
    def weight(self, label: Label) -> int: ...

    @abstractmethod
    def parity(self, label: Label) -> Parity: ...

    @abstractmethod
    def labels_of_weight(self, weight: int) -> list[Label]:
        """All overlap monomials of a weight, in representative preference order."""

    @abstractmethod
    def preference(self, label: Label) -> tuple[Any, ...]:
        """Sort key ordering the H^1 basis."""

    def default_radius(self) -> int:
        return self.space.default_radius(self.twist)

    def slack(self) -> int:
        return abs(self.twist) + abs(self.space.m) + 2


@dataclass
class _Block(Generic[S]):
    weight: int
    parity: Parity
    labels: list[Label]
    u_sections: list[S] = field(default_factory=list)
    v_sections: list[S] = field(default_factory=list)
    images: list[dict[Label, Any]] = field(default_factory=list)


class TwoChartComplex(Generic[S]):
    """The truncated Čech complex C^0(U) + C^0(V) -> C^1(U ∩ V) of a chart sheaf."""

    def __init__(self, sheaf: ChartSheaf[S], window: CechWindow) -> None:
        self.sheaf = sheaf
        self.window = window
        self.blocks: dict[tuple[int, Parity], _Block[S]] = {}
        bound = window.radius + sheaf.slack()
        for section in sheaf.u_basis(bound):
            coords = sheaf.coordinates(section)
            block = self._block_of(coords)
            if block is not None:
                block.u_sections.append(section)
                block.images.append(coords)
        # V columns come after all U columns inside every block
        for section in sheaf.v_basis(bound):
            coords = sheaf.coordinates(sheaf.v_to_overlap(section))
            block = self._block_of(coords)
            if block is not None:
                block.v_sections.append(section)
                block.images.append({k: -c for k, c in coords.items()})
        self._classes: list[CechClass[S]] | None = None
        self._spaces: dict[tuple[int, Parity], ColumnSpace] = {}
        logger.debug("built cech complex", window=window.radius, blocks=len(self.blocks))

    def _block_of(self, coords: Mapping[Label, Any]) -> _Block[S] | None:
        label = next(iter(coords))
        weight, parity = self.sheaf.weight(label), self.sheaf.parity(label)
        if not self.window.contains(weight):
            return None
        return self._get_block(weight, parity)

    def _get_block(self, weight: int, parity: Parity) -> _Block[S]:
        key = (weight, parity)
        block = self.blocks.get(key)
        if block is None:
            labels = [lb for lb in self.sheaf.labels_of_weight(weight) if self.sheaf.parity(lb) == parity]
            block = _Block(weight, parity, labels)
            self.blocks[key] = block
        return block

    def _column_space(self, block: _Block[S]) -> ColumnSpace:
        cached = self._spaces.get((block.weight, block.parity))
        if cached is not None:
            return cached
        space = ColumnSpace()
        for label in block.labels:
            space.row(label)
        for image in block.images:
            space.add_column(image)
        self._spaces[(block.weight, block.parity)] = space
        return space

    def _all_blocks(self) -> list[_Block[S]]:
        for weight in self.window.weights():
            for parity in Parity:
                self._get_block(weight, parity)
        return [self.blocks[k] for k in sorted(self.blocks, key=lambda k: (k[1], k[0]))]

    def global_sections(self) -> list[GlobalSection[S]]:
        sections: list[GlobalSection[S]] = []
        for block in self._all_blocks():
            if not block.images:
                continue
            n_u = len(block.u_sections)
            for vec in nullspace(self._column_space(block).matrix()):
                on_u = self.sheaf.combine([(c, block.u_sections[j]) for j, c in vec.items() if j < n_u], "u")
                on_v = self.sheaf.combine([(c, block.v_sections[j - n_u]) for j, c in vec.items() if j >= n_u], "v")
                sections.append(GlobalSection(on_u, on_v, block.parity, block.weight))
        return sections

    def classes(self) -> list[CechClass[S]]:
        if self._classes is None:
            found: list[CechClass[S]] = []
            for block in self._all_blocks():
                space = self._column_space(block)
                units = [space.vector({label: 1}) for label in block.labels]
                for index in complement_pivots(space, units):
                    label = block.labels[index]
                    found.append(
                        CechClass(self.sheaf.from_coordinates({label: 1}), block.parity, block.weight, label)
                    )
            self._classes = sorted(found, key=lambda c: (c.parity, self.sheaf.preference(c.label)))
        return self._classes

    def cohomology(self) -> CechCohomology[S]:
        return CechCohomology(self.global_sections(), self.classes(), self.window)

    def split(self, section: S) -> CocycleSplitting[S]:
        """Decompose a U-frame overlap section into classes plus a coboundary."""
        coords = self.sheaf.coordinates(section)
        classes = self.classes()
        index = {c.label: i for i, c in enumerate(classes)}
        coefficients: list[Any] = [0] * len(classes)
        u_items: list[tuple[Any, S]] = []
        v_items: list[tuple[Any, S]] = []
        by_block: dict[tuple[int, Parity], dict[Label, Any]] = {}
        for label, coeff in coords.items():
            weight = self.sheaf.weight(label)
            if not self.window.contains(weight):
                raise WindowError(f"weight {weight} outside window {self.window}")
            by_block.setdefault((weight, self.sheaf.parity(label)), {})[label] = coeff
        for (weight, parity), part in sorted(by_block.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            block = self._get_block(weight, parity)
            space = self._column_space(block)
            reps = [c for c in classes if (c.weight, c.parity) == (weight, parity)]
            extra = [space.vector({c.label: 1}) for c in reps]
            target = space.vector(part)
            solution = solve(space.matrix(extra), target)
            if solution is None:
                raise WindowError(f"overlap section not reducible in window {self.window}")
            n_u, n_v = len(block.u_sections), len(block.v_sections)
            for j, c in solution.items():
                if j < n_u:
                    u_items.append((c, block.u_sections[j]))
                elif j < n_u + n_v:
                    v_items.append((c, block.v_sections[j - n_u]))
                else:
                    coefficients[index[reps[j - n_u - n_v].label]] = c
        return CocycleSplitting(coefficients, self.sheaf.combine(u_items, "u"), self.sheaf.combine(v_items, "v"))


def stable_cohomology(sheaf: ChartSheaf[S], radius: int | None = None) -> CechCohomology[S]:
    """Cohomology at the first radius N where the dimensions at N and N+1 agree.

    Args:
        sheaf: Sheaf to compute
        radius: Starting radius; the configured override or the sheaf's N0 when omitted

    Returns:
        The cohomology computed at the stable radius
    """
    settings = get_settings()
    window = CechWindow.of_radius(radius or settings.window_radius or sheaf.default_radius())
    for _ in range(settings.max_window_doublings + 1):
        result = TwoChartComplex(sheaf, window).cohomology()
        wider = TwoChartComplex(sheaf, CechWindow.of_radius(window.radius + 1)).cohomology()
        if (result.h0_dim, result.h1_dim) == (wider.h0_dim, wider.h1_dim):
            return result
        logger.info("window not stable, doubling", radius=window.radius)
        window = window.doubled()
    raise WindowError(f"cohomology did not stabilize up to radius {window.radius}")
