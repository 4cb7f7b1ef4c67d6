"""Parity-preserving substitutions between ring contexts."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any

from supermoduli.errors import MixedParityError, RingMismatchError
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext


class ChartMap:
    """A superalgebra homomorphism given by the images of the source generators.

    Generators of the source that are not listed map to the generator of the same
    name in the target, which is how base parameters (eta, epsilon) pass through.

    Composition follows substitution: ``(m2 @ m1)(x) = substitute(m1(x), m2)``,
    i.e. ``m2 @ m1`` applies ``m1`` first and then substitutes ``m2`` into the result.
    """

    __slots__ = ("_power_cache", "images", "source", "target")

    def __init__(self, source: RingContext, target: RingContext, images: Mapping[str, SuperPoly]) -> None:
        resolved: dict[str, SuperPoly] = {}
        for name in source.names:
            if name in images:
                image = images[name]
                target.check_same(image.ctx)
            elif name in target.names:
                image = target.gen(name)
            else:
                raise RingMismatchError(f"no image for generator {name!r}")
            expected = source.parity_of(name)
            if not image.has_parity(expected):
                raise MixedParityError(f"image of {name!r} must be {expected.name.lower()}, got {image}")
            resolved[name] = image
        extra = set(images) - set(source.names)
        if extra:
            raise RingMismatchError(f"images given for unknown generators {sorted(extra)}")
        self.source = source
        self.target = target
        self.images = resolved
        self._power_cache: dict[tuple[str, int], SuperPoly] = {}

    @classmethod
    def identity(cls, ctx: RingContext) -> ChartMap:
        return cls(ctx, ctx, {})

    def __getitem__(self, name: str) -> SuperPoly:
        return self.images[name]

    def _power(self, name: str, exp: int) -> SuperPoly:
        key = (name, exp)
        cached = self._power_cache.get(key)
        if cached is None:
            cached = self.images[name] ** exp
            self._power_cache[key] = cached
        return cached

    def apply(self, poly: SuperPoly) -> SuperPoly:
        """substitute(p, m): replace every generator by its image."""
        self.source.check_same(poly.ctx)
        result = self.target.zero()
        for mono, coeff in poly.terms.items():
            term = self.target.const(coeff)
            for name, exp in zip(self.source.even, mono.even, strict=True):
                if exp:
                    term = term * self._power(name, exp)
            for index in mono.odd:
                term = term * self.images[self.source.odd[index]]
                if not term:
                    break
            result = result + term
        return result

    def __call__(self, poly: SuperPoly) -> SuperPoly:
        return self.apply(poly)

    def __matmul__(self, first: ChartMap) -> ChartMap:
        """self ∘ first."""
        first.target.check_same(self.source)
        return ChartMap(first.source, self.target, {n: self.apply(img) for n, img in first.images.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChartMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.images.items(), key=lambda kv: kv[0]))))

    def is_identity(self) -> bool:
        return self.source == self.target and all(img == self.target.gen(n) for n, img in self.images.items())

    def parity_of(self, name: str) -> Parity:
        return self.source.parity_of(name)

    def __repr__(self) -> str:
        shown = ", ".join(f"{n} -> {img}" for n, img in self.images.items() if img != _same_gen(self.target, n))
        return f"ChartMap({shown or 'identity'})"


def _same_gen(ctx: RingContext, name: str) -> Any:
    return ctx.gen(name) if name in ctx.names else None
