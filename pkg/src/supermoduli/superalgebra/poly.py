"""Exact supercommutative Laurent polynomials with Koszul signs.

A :class:`SuperPoly` is a finite sum of terms ``c * x^a * o_i1 ... o_ik`` where the
even exponents ``a`` may be negative for Laurent generators, the odd generators
are distinct and sorted by their index in the ring context, and ``c`` is an
element of sympy's exact rational domain ``QQ``. Values are immutable.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import TYPE_CHECKING, Any, NamedTuple

import sympy
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from supermoduli.errors import MixedParityError, NotInvertibleError, RingMismatchError
from supermoduli.superalgebra.ring import Parity, RingContext

if TYPE_CHECKING:
    from supermoduli.superalgebra.chartmap import ChartMap
    from supermoduli.superalgebra.ring import WeightedDegree

Scalar = Any  # QQ element, int, Fraction or sympy Rational


class SuperMonomial(NamedTuple):
    """Even exponent vector and sorted tuple of odd generator indices."""

    even: tuple[int, ...]
    odd: tuple[int, ...]

    @property
    def parity(self) -> Parity:
        return Parity(len(self.odd) % 2)


def to_qq(value: Scalar) -> Any:
    """Convert a scalar to an element of QQ."""
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, sympy.Basic):
        return QQ.from_sympy(value)
    return QQ.convert(value)


def merge_odd(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sort the concatenation of two sorted odd tuples.

    Returns:
        (sign, merged) with sign the Koszul sign of the sorting permutation, or
        None when a generator repeats (the product vanishes).
    """
    if not left:
        return 1, right
    if not right:
        return 1, left
    merged: list[int] = []
    inversions = 0
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] == right[j]:
            return None
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            # right[j] jumps over the remaining left factors
            inversions += len(left) - i
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return (-1 if inversions % 2 else 1), tuple(merged)


def sort_odd(indices: Iterable[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sort an arbitrary sequence of odd indices, tracking the permutation sign."""
    items = list(indices)
    if len(set(items)) != len(items):
        return None
    sign = 1
    # insertion sort keeps the inversion count explicit
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class SuperPoly:
    """Element of k[even^(±) | odd] over the exact rationals."""

    __slots__ = ("ctx", "terms")

    ctx: RingContext
    terms: dict[SuperMonomial, Any]

    def __init__(self, ctx: RingContext, terms: Mapping[SuperMonomial, Scalar]) -> None:
        clean: dict[SuperMonomial, Any] = {}
        for mono, coeff in terms.items():
            c = to_qq(coeff)
            if c:
                clean[mono] = c
        for mono in clean:
            for name, exp in zip(ctx.even, mono.even, strict=True):
                if exp < 0 and name not in ctx.laurent:
                    raise NotInvertibleError(f"negative exponent on non-Laurent generator {name!r}")
        self.ctx = ctx
        self.terms = clean

    @classmethod
    def from_terms(cls, ctx: RingContext, items: Iterable[tuple[SuperMonomial, Scalar]]) -> SuperPoly:
        """Build a polynomial from possibly repeated (monomial, coefficient) pairs."""
        acc: dict[SuperMonomial, Any] = {}
        for mono, coeff in items:
            acc[mono] = acc.get(mono, QQ(0)) + to_qq(coeff)
        return cls(ctx, acc)

    @classmethod
    def monomial(cls, ctx: RingContext, coeff: Scalar = 1, **exponents: int) -> SuperPoly:
        """c * product of generators, e.g. ``SuperPoly.monomial(ctx, 3, z=-1, zeta=1)``."""
        exps = [0] * len(ctx.even)
        odd: list[int] = []
        for name, exp in exponents.items():
            if name in ctx.even_index:
                exps[ctx.even_index[name]] = exp
            elif name in ctx.odd_index:
                if exp not in (0, 1):
                    return ctx.zero()
                if exp:
                    odd.append(ctx.odd_index[name])
            else:
                raise RingMismatchError(f"unknown generator {name!r}")
        # keyword order is the factor order
        sorted_odd = sort_odd(odd)
        if sorted_odd is None:
            return ctx.zero()
        sign, key = sorted_odd
        return cls(ctx, {SuperMonomial(tuple(exps), key): to_qq(coeff) * sign})

    # basic queries

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[SuperMonomial, Any]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def parity(self) -> Parity | None:
        """Common parity of all terms; None when mixed. Zero counts as even."""
        parities = {mono.parity for mono in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else Parity.EVEN

    def has_parity(self, parity: Parity) -> bool:
        """True when every term has the given parity (vacuously for zero)."""
        return all(mono.parity == parity for mono in self.terms)

    def require_parity(self) -> Parity:
        p = self.parity()
        if p is None:
            raise MixedParityError(f"mixed parity element {self}")
        return p

    def is_constant(self) -> bool:
        return all(not any(m.even) and not m.odd for m in self.terms)

    def scalar(self) -> Any:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return next(iter(self.terms.values()), QQ(0))

    def body(self) -> SuperPoly:
        """Part free of every odd generator."""
        return SuperPoly(self.ctx, {m: c for m, c in self.terms.items() if not m.odd})

    def without(self, names: Iterable[str]) -> SuperPoly:
        """Set the given odd generators to zero."""
        drop = {self.ctx.odd_index[n] for n in names}
        return SuperPoly(self.ctx, {m: c for m, c in self.terms.items() if not drop.intersection(m.odd)})

    def filtration_part(self, names: Iterable[str], degree: int) -> SuperPoly:
        """Terms containing exactly ``degree`` factors from the odd generators ``names``."""
        idx = {self.ctx.odd_index[n] for n in names}
        return SuperPoly(self.ctx, {m: c for m, c in self.terms.items() if len(idx.intersection(m.odd)) == degree})

    def degree_range(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of an even generator; (0, 0) for zero."""
        i = self.ctx.even_index[name]
        exps = [m.even[i] for m in self.terms]
        if not exps:
            return 0, 0
        return min(exps), max(exps)

    # arithmetic

    def _coerce(self, other: Any) -> SuperPoly:
        if isinstance(other, SuperPoly):
            self.ctx.check_same(other.ctx)
            return other
        return self.ctx.const(other)

    def __add__(self, other: Any) -> SuperPoly:
        other = self._coerce(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc[mono] = acc.get(mono, QQ(0)) + coeff
        return SuperPoly(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self) -> SuperPoly:
        return SuperPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> SuperPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> SuperPoly:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> SuperPoly:
        if not isinstance(other, SuperPoly):
            c = to_qq(other)
            return SuperPoly(self.ctx, {m: v * c for m, v in self.terms.items()})
        self.ctx.check_same(other.ctx)
        acc: dict[SuperMonomial, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                merged = merge_odd(m1.odd, m2.odd)
                if merged is None:
                    continue
                sign, odd = merged
                key = SuperMonomial(tuple(a + b for a, b in zip(m1.even, m2.even, strict=True)), odd)
                value = c1 * c2 if sign > 0 else -(c1 * c2)
                acc[key] = acc.get(key, QQ(0)) + value
        return SuperPoly(self.ctx, acc)

    def __rmul__(self, other: Any) -> SuperPoly:
        # scalars are even and central
        return self * other

    def __truediv__(self, other: Any) -> SuperPoly:
        if isinstance(other, SuperPoly):
            return self * other.inverse()
        return self * (QQ(1) / to_qq(other))

    def __pow__(self, exponent: int) -> SuperPoly:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.ctx.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SuperPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        try:
            return self.terms == self.ctx.const(other).terms
        except (TypeError, ValueError, CoercionFailed):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    # units

    def is_unit(self) -> bool:
        """A unit iff the body is one nonzero term in Laurent generators only."""
        body = self.body()
        if len(body) != 1:
            return False
        mono = next(iter(body.terms))
        return all(exp == 0 or name in self.ctx.laurent for name, exp in zip(self.ctx.even, mono.even, strict=True))

    def inverse(self) -> SuperPoly:
        """Multiplicative inverse by the finite geometric series of the nilpotent part."""
        if not self.is_unit():
            raise NotInvertibleError(f"{self} is not a unit")
        (mono, coeff), = self.body().terms.items()
        body_inv = SuperPoly(self.ctx, {SuperMonomial(tuple(-e for e in mono.even), ()): QQ(1) / coeff})
        nil = body_inv * (self - self.body())
        result = self.ctx.one()
        power = self.ctx.one()
        while True:
            power = -(power * nil)
            if not power:
                break
            result = result + power
        return result * body_inv

    # calculus

    def derivative(self, name: str, side: str = "left") -> SuperPoly:
        """Partial derivative by a generator.

        For an odd generator the left derivative strips it from the left of the
        sorted monomial (sign = (-1)^(number of odd factors before it)); the right
        derivative strips it from the right.
        """
        if name in self.ctx.even_index:
            i = self.ctx.even_index[name]
            acc: dict[SuperMonomial, Any] = {}
            for mono, coeff in self.terms.items():
                exp = mono.even[i]
                if exp:
                    exps = list(mono.even)
                    exps[i] -= 1
                    acc[SuperMonomial(tuple(exps), mono.odd)] = coeff * exp
            return SuperPoly(self.ctx, acc)
        if name not in self.ctx.odd_index:
            raise RingMismatchError(f"unknown generator {name!r}")
        k = self.ctx.odd_index[name]
        acc = {}
        for mono, coeff in self.terms.items():
            if k not in mono.odd:
                continue
            pos = mono.odd.index(k)
            before = pos if side == "left" else len(mono.odd) - 1 - pos
            rest = mono.odd[:pos] + mono.odd[pos + 1 :]
            acc[SuperMonomial(mono.even, rest)] = -coeff if before % 2 else coeff
        return SuperPoly(self.ctx, acc)

    def split_odd(self, name: str) -> tuple[SuperPoly, SuperPoly]:
        """(a, b) with self = a + name * b and neither a nor b containing ``name``."""
        b = self.derivative(name, "left")
        a = self - self.ctx.gen(name) * b
        return a, b

    # change of rings

    def substitute(self, chart_map: ChartMap) -> SuperPoly:
        """Apply a parity-preserving ring homomorphism given on generators."""
        return chart_map.apply(self)

    def lift(self, ctx: RingContext) -> SuperPoly:
        """Re-express in a context containing all generators of this one, matched by name."""
        if ctx == self.ctx:
            return self
        even_map = [ctx.even_index[name] for name in self.ctx.even]
        odd_map = [ctx.odd_index[name] for name in self.ctx.odd]
        acc: list[tuple[SuperMonomial, Any]] = []
        for mono, coeff in self.terms.items():
            exps = [0] * len(ctx.even)
            for i, exp in enumerate(mono.even):
                exps[even_map[i]] = exp
            ordered = sort_odd(odd_map[i] for i in mono.odd)
            if ordered is None:
                continue
            sign, odd = ordered
            acc.append((SuperMonomial(tuple(exps), odd), coeff * sign))
        return SuperPoly.from_terms(ctx, acc)

    def restrict(self, ctx: RingContext) -> SuperPoly:
        """Inverse of :meth:`lift` for polynomials only using generators of ``ctx``."""
        for mono in self.terms:
            for name, exp in zip(self.ctx.even, mono.even, strict=True):
                if exp and name not in ctx.even_index:
                    raise RingMismatchError(f"{name!r} does not exist in the target context")
            for i in mono.odd:
                if self.ctx.odd[i] not in ctx.odd_index:
                    raise RingMismatchError(f"{self.ctx.odd[i]!r} does not exist in the target context")
        reduced = RingContext(
            even=tuple(n for n in self.ctx.even if n in ctx.even_index),
            odd=tuple(n for n in self.ctx.odd if n in ctx.odd_index),
            laurent=frozenset(n for n in self.ctx.laurent if n in ctx.even_index),
        )
        keep_even = [i for i, n in enumerate(self.ctx.even) if n in ctx.even_index]
        keep_odd = {self.ctx.odd_index[n]: j for j, n in enumerate(reduced.odd)}
        shrunk = SuperPoly(
            reduced,
            {
                SuperMonomial(tuple(m.even[i] for i in keep_even), tuple(keep_odd[i] for i in m.odd)): c
                for m, c in self.terms.items()
            },
        )
        return shrunk.lift(ctx)

    def collect(self, names: Iterable[str]) -> dict[tuple[int, ...], SuperPoly]:
        """Group terms by their exponents in the even generators ``names``.

        Even generators are central, so the coefficient polynomials carry no sign.
        """
        idx = [self.ctx.even_index[n] for n in names]
        groups: dict[tuple[int, ...], dict[SuperMonomial, Any]] = {}
        for mono, coeff in self.terms.items():
            key = tuple(mono.even[i] for i in idx)
            exps = list(mono.even)
            for i in idx:
                exps[i] = 0
            groups.setdefault(key, {})[SuperMonomial(tuple(exps), mono.odd)] = coeff
        return {key: SuperPoly(self.ctx, terms) for key, terms in groups.items()}

    def weighted_degree(self, weights: WeightedDegree) -> int | None:
        return weights.of(self)

    # printing

    def __str__(self) -> str:
        from supermoduli.superalgebra.parser import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"SuperPoly({self})"


def _mono_key(mono: SuperMonomial) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    return (len(mono.odd), mono.odd, tuple(-e for e in mono.even))
