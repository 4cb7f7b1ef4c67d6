"""Ring contexts, parity and weighted degrees."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import TYPE_CHECKING, Any, NamedTuple

from supermoduli.errors import RingMismatchError

if TYPE_CHECKING:
    from supermoduli.superalgebra.poly import SuperPoly


class Parity(IntEnum):
    """Z/2 grading of a homogeneous element."""

    EVEN = 0
    ODD = 1

    def __add__(self, other: Any) -> Parity:  # type: ignore[override]
        return Parity((int(self) + int(other)) % 2)

    @property
    def sign(self) -> int:
        """(-1)^parity."""
        return -1 if self else 1


@dataclass(frozen=True)
class RingContext:
    """Generators of a supercommutative ring k[even^(±)|odd].

    The odd generators are ordered; that order is the canonical order of odd
    factors in every monomial. Only even generators listed in ``laurent`` may
    carry negative exponents.
    """

    even: tuple[str, ...] = ()
    odd: tuple[str, ...] = ()
    laurent: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        names = self.even + self.odd
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        unknown = set(self.laurent) - set(self.even)
        if unknown:
            raise ValueError(f"laurent generators must be even: {sorted(unknown)}")

    @cached_property
    def even_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.even)}

    @cached_property
    def odd_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.odd)}

    @property
    def names(self) -> tuple[str, ...]:
        return self.even + self.odd

    def parity_of(self, name: str) -> Parity:
        """Parity of a generator."""
        if name in self.even_index:
            return Parity.EVEN
        if name in self.odd_index:
            return Parity.ODD
        raise RingMismatchError(f"unknown generator {name!r}")

    def extend(
        self,
        even: tuple[str, ...] = (),
        odd: tuple[str, ...] = (),
        laurent: tuple[str, ...] = (),
    ) -> RingContext:
        """Context with extra generators appended after the existing ones."""
        return RingContext(
            even=self.even + tuple(e for e in even if e not in self.even),
            odd=self.odd + tuple(o for o in odd if o not in self.odd),
            laurent=self.laurent | frozenset(laurent),
        )

    def check_same(self, other: RingContext) -> None:
        if self is not other and self != other:
            raise RingMismatchError(f"ring contexts differ: {self.names} vs {other.names}")

    def gen(self, name: str) -> SuperPoly:
        """The generator ``name`` as a polynomial."""
        from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly

        exps = [0] * len(self.even)
        if name in self.even_index:
            exps[self.even_index[name]] = 1
            return SuperPoly(self, {SuperMonomial(tuple(exps), ()): 1})
        if name in self.odd_index:
            return SuperPoly(self, {SuperMonomial(tuple(exps), (self.odd_index[name],)): 1})
        raise RingMismatchError(f"unknown generator {name!r}")

    def gens(self, *names: str) -> tuple[SuperPoly, ...]:
        return tuple(self.gen(n) for n in names)

    def const(self, value: Any) -> SuperPoly:
        """A scalar as a constant polynomial."""
        from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly

        return SuperPoly(self, {SuperMonomial((0,) * len(self.even), ()): value})

    def zero(self) -> SuperPoly:
        from supermoduli.superalgebra.poly import SuperPoly

        return SuperPoly(self, {})

    def one(self) -> SuperPoly:
        return self.const(1)


@dataclass(frozen=True)
class WeightedDegree:
    """Integer weights of generators; missing generators have weight 0."""

    weights: dict[str, int]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.weights.items())))

    def of(self, poly: SuperPoly) -> int | None:
        """Common weighted degree of all terms, or None when inhomogeneous.

        The zero polynomial is reported with degree 0.
        """
        degrees = {self.monomial_degree(poly.ctx, mono) for mono in poly.terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            return None
        return degrees.pop()

    def monomial_degree(self, ctx: RingContext, mono: Any) -> int:
        total = 0
        for name, exp in zip(ctx.even, mono.even, strict=True):
            total += exp * self.weights.get(name, 0)
        for index in mono.odd:
            total += self.weights.get(ctx.odd[index], 0)
        return total


def homogeneous_weights(n_r: int) -> WeightedDegree:
    """Weights of A = k[u, v | theta]: u, v have degree 1 and theta has degree 1 - n_R/2."""
    return WeightedDegree({"u": 1, "v": 1, "theta": 1 - n_r // 2})


class SuperDim(NamedTuple):
    """Super dimension (even|odd)."""

    even: int
    odd: int

    def __add__(self, other: object) -> SuperDim:  # type: ignore[override]
        assert isinstance(other, SuperDim)
        return SuperDim(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other: SuperDim) -> SuperDim:
        return SuperDim(self.even - other.even, self.odd - other.odd)

    def swapped(self) -> SuperDim:
        """Parity change."""
        return SuperDim(self.odd, self.even)

    def __str__(self) -> str:
        return f"({self.even}|{self.odd})"
