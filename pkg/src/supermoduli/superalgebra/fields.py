"""Chart-local vector fields and 1-forms.

Conventions:
    * a vector field acts by left derivatives, ``X(f) = sum_y X^y * dL_y f``;
    * 1-form coefficients sit to the left of the basis forms, ``w = sum_y w_y dy``;
    * the de Rham differential uses right derivatives, ``df = sum_y dR_y f dy``,
      which makes pullback commute with d;
    * contraction is ``<f dy, X> = f * X^y``.
"""

from __future__ import annotations

from collections.abc import Mapping

from supermoduli.errors import MixedParityError, NotInvertibleError, RingMismatchError
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.poly import SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext


def _infer_parity(ctx: RingContext, components: Mapping[str, SuperPoly], shift: bool) -> Parity | None:
    found: set[Parity] = set()
    for name, coeff in components.items():
        if not coeff:
            continue
        p = coeff.parity()
        if p is None:
            return None
        found.add(p + ctx.parity_of(name) if shift else p)
    if len(found) > 1:
        return None
    return found.pop() if found else Parity.EVEN


class _ChartTensor:
    """Shared storage for fields and forms: one coefficient per coordinate."""

    __slots__ = ("components", "coords", "ctx", "parity")

    def __init__(self, ctx: RingContext, coords: tuple[str, ...], components: Mapping[str, SuperPoly]) -> None:
        unknown = set(components) - set(coords)
        if unknown:
            raise RingMismatchError(f"components for non-coordinates {sorted(unknown)}")
        self.ctx = ctx
        self.coords = tuple(coords)
        self.components: dict[str, SuperPoly] = {}
        for y in self.coords:
            ctx.parity_of(y)
            value = components.get(y, ctx.zero())
            ctx.check_same(value.ctx)
            self.components[y] = value
        self.parity = _infer_parity(ctx, self.components, shift=True)

    def __getitem__(self, name: str) -> SuperPoly:
        return self.components[name]

    def _check_compatible(self, other: _ChartTensor) -> None:
        self.ctx.check_same(other.ctx)
        if self.coords != other.coords:
            raise RingMismatchError(f"coordinates differ: {self.coords} vs {other.coords}")

    def is_zero(self) -> bool:
        return all(not c for c in self.components.values())

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        assert isinstance(other, _ChartTensor)
        return self.ctx == other.ctx and self.coords == other.coords and self.components == other.components

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.ctx, self.coords, tuple(self.components.values())))


class SuperVectorField(_ChartTensor):
    """X = sum_y X^y d/dy on a chart with coordinates ``coords``."""

    __slots__ = ()

    def __add__(self, other: SuperVectorField) -> SuperVectorField:
        self._check_compatible(other)
        return SuperVectorField(self.ctx, self.coords, {y: self[y] + other[y] for y in self.coords})

    def __sub__(self, other: SuperVectorField) -> SuperVectorField:
        self._check_compatible(other)
        return SuperVectorField(self.ctx, self.coords, {y: self[y] - other[y] for y in self.coords})

    def __neg__(self) -> SuperVectorField:
        return SuperVectorField(self.ctx, self.coords, {y: -c for y, c in self.components.items()})

    def scaled(self, f: SuperPoly | int) -> SuperVectorField:
        """Left multiplication f * X."""
        return SuperVectorField(self.ctx, self.coords, {y: _times(f, c) for y, c in self.components.items()})

    def apply(self, f: SuperPoly) -> SuperPoly:
        """X(f) = sum_y X^y * dL_y f."""
        result = self.ctx.zero()
        for y, coeff in self.components.items():
            if coeff:
                result = result + coeff * f.derivative(y, "left")
        return result

    def bracket(self, other: SuperVectorField) -> SuperVectorField:
        """Supercommutator [X, Y] = X∘Y - (-1)^{|X||Y|} Y∘X."""
        self._check_compatible(other)
        if self.parity is None or other.parity is None:
            raise MixedParityError("bracket needs parity-homogeneous vector fields")
        sign = -1 if (self.parity and other.parity) else 1
        return SuperVectorField(
            self.ctx,
            self.coords,
            {y: self.apply(other[y]) - other.apply(self[y]) * sign for y in self.coords},
        )

    def substitute(self, chart_map: ChartMap, coords: tuple[str, ...] | None = None) -> SuperVectorField:
        """Apply a substitution to the coefficients only (no change of frame)."""
        return SuperVectorField(
            chart_map.target,
            coords or self.coords,
            {y: chart_map.apply(c) for y, c in self.components.items()},
        )

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*d/d{y}" for y, c in self.components.items() if c)
        return f"SuperVectorField({shown or '0'})"


class SuperOneForm(_ChartTensor):
    """w = sum_y w_y dy on a chart with coordinates ``coords``."""

    __slots__ = ()

    def __add__(self, other: SuperOneForm) -> SuperOneForm:
        self._check_compatible(other)
        return SuperOneForm(self.ctx, self.coords, {y: self[y] + other[y] for y in self.coords})

    def __sub__(self, other: SuperOneForm) -> SuperOneForm:
        self._check_compatible(other)
        return SuperOneForm(self.ctx, self.coords, {y: self[y] - other[y] for y in self.coords})

    def __neg__(self) -> SuperOneForm:
        return SuperOneForm(self.ctx, self.coords, {y: -c for y, c in self.components.items()})

    def scaled(self, f: SuperPoly | int) -> SuperOneForm:
        """Left multiplication f * w."""
        return SuperOneForm(self.ctx, self.coords, {y: _times(f, c) for y, c in self.components.items()})

    def contract(self, field: SuperVectorField) -> SuperPoly:
        """<w, X> = sum_y w_y * X^y."""
        self._check_compatible(field)
        result = self.ctx.zero()
        for y in self.coords:
            result = result + self[y] * field[y]
        return result

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})*d{y}" for y, c in self.components.items() if c)
        return f"SuperOneForm({shown or '0'})"


def _times(f: SuperPoly | int, g: SuperPoly) -> SuperPoly:
    return f * g if isinstance(f, SuperPoly) else g * f


def differential(f: SuperPoly, coords: tuple[str, ...]) -> SuperOneForm:
    """df = sum_y dR_y f dy."""
    return SuperOneForm(f.ctx, coords, {y: f.derivative(y, "right") for y in coords})


def moving_coordinates(chart_map: ChartMap) -> tuple[str, ...]:
    """Target generators that are not passed through unchanged as parameters."""
    fixed = {n for n, img in chart_map.images.items() if n in chart_map.target.names and img == chart_map.target.gen(n)}
    return tuple(n for n in chart_map.target.names if n not in fixed)


def pullback_form(form: SuperOneForm, chart_map: ChartMap, coords: tuple[str, ...] | None = None) -> SuperOneForm:
    """m*(w) = sum_y m(w_y) d(m(y)), expressed on the target coordinates."""
    chart_map.source.check_same(form.ctx)
    target_coords = coords or moving_coordinates(chart_map) or form.coords
    result = SuperOneForm(chart_map.target, target_coords, {})
    for y, coeff in form.components.items():
        if not coeff:
            continue
        image = chart_map.apply(coeff)
        result = result + differential(chart_map[y], target_coords).scaled(image)
    return result


def pushforward_field(
    field: SuperVectorField,
    chart_map: ChartMap,
    inverse: ChartMap,
    coords: tuple[str, ...] | None = None,
) -> SuperVectorField:
    """Re-express a vector field in the coordinates of ``chart_map.source``.

    ``chart_map`` writes the new coordinates y as functions of the field's
    coordinates, ``inverse`` writes the field's coordinates back in terms of y.
    The new components are ``X(m(y))`` rewritten through ``inverse``.
    """
    chart_map.target.check_same(field.ctx)
    inverse.source.check_same(chart_map.target)
    inverse.target.check_same(chart_map.source)
    if not (inverse @ chart_map).is_identity():
        raise NotInvertibleError("chart map and proposed inverse do not compose to the identity")
    new_coords = coords or moving_coordinates(inverse) or field.coords
    return SuperVectorField(
        chart_map.source,
        new_coords,
        {y: inverse.apply(field.apply(chart_map[y])) for y in new_coords},
    )
