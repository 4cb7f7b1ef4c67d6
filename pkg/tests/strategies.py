"""Hypothesis strategies for super polynomials, chart maps, vector fields, forms and automorphisms."""

from itertools import combinations

from hypothesis import strategies as st

from supermoduli.autgroup.element import AutElement
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.fields import SuperVectorField
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly
from supermoduli.superalgebra.ring import Parity, RingContext
from supermoduli.susy.form import SusyForm
from supermoduli.susy.gauge import GammaStarElement

PROP_CTX = RingContext(even=("z",), odd=("zeta", "e1", "e2"), laurent=frozenset({"z"}))


def _odd_subsets(ctx: RingContext, parity: Parity | None) -> list[tuple[int, ...]]:
    subsets = [c for k in range(len(ctx.odd) + 1) for c in combinations(range(len(ctx.odd)), k)]
    if parity is None:
        return subsets
    return [s for s in subsets if len(s) % 2 == parity]


@st.composite
def super_polys(
    draw: st.DrawFn,
    ctx: RingContext = PROP_CTX,
    parity: Parity | None = None,
    min_exp: int = -2,
    max_exp: int = 2,
    max_terms: int = 4,
) -> SuperPoly:
    subsets = _odd_subsets(ctx, parity)
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(
            draw(st.integers(min_exp if name in ctx.laurent else 0, max_exp)) for name in ctx.even
        )
        terms.append((SuperMonomial(exps, draw(st.sampled_from(subsets))), draw(st.integers(-3, 3))))
    return SuperPoly.from_terms(ctx, terms)


@st.composite
def homogeneous_polys(draw: st.DrawFn, ctx: RingContext = PROP_CTX) -> tuple[Parity, SuperPoly]:
    parity = draw(st.sampled_from(list(Parity)))
    return parity, draw(super_polys(ctx, parity))


@st.composite
def chart_automorphisms(draw: st.DrawFn, ctx: RingContext = PROP_CTX) -> ChartMap:
    """z -> c*z^(+-1) + even nilpotent, odd generators -> random odd elements."""
    scale = draw(st.sampled_from([1, -1, 2, -3]))
    power = draw(st.sampled_from([1, -1]))
    even_part = draw(super_polys(ctx, Parity.EVEN, max_terms=2))
    nilpotent = even_part - even_part.body()
    images = {"z": SuperPoly.monomial(ctx, scale, z=power) + nilpotent}
    for name in ctx.odd:
        images[name] = draw(super_polys(ctx, Parity.ODD, max_terms=3))
    return ChartMap(ctx, ctx, images)


@st.composite
def vector_fields(draw: st.DrawFn, ctx: RingContext = PROP_CTX) -> SuperVectorField:
    """Parity-homogeneous fields on the chart (z|zeta) with polynomial coefficients."""
    parity = draw(st.sampled_from(list(Parity)))
    comp_z = draw(super_polys(ctx, parity, min_exp=0, max_exp=2, max_terms=2))
    comp_zeta = draw(super_polys(ctx, parity + 1, min_exp=0, max_exp=2, max_terms=2))
    return SuperVectorField(ctx, ("z", "zeta"), {"z": comp_z, "zeta": comp_zeta})


@st.composite
def odd_values(draw: st.DrawFn, ring: RingContext, count: int) -> list[SuperPoly]:
    """Random odd elements of a Grassmann ring, one per universal parameter."""
    return [draw(super_polys(ring, Parity.ODD, max_terms=3)) for _ in range(count)]


@st.composite
def near_identity_maps(draw: st.DrawFn, ctx: RingContext, parameters: tuple[str, ...]) -> ChartMap:
    """Chart automorphisms regular on the chart that reduce to the identity when parameters vanish."""
    even_name, odd_name = ctx.even[0], ctx.odd[0]
    shift_even = draw(super_polys(ctx, Parity.EVEN, min_exp=0, max_exp=3, max_terms=3))
    shift_odd = draw(super_polys(ctx, Parity.ODD, min_exp=0, max_exp=3, max_terms=3))
    images = {
        even_name: ctx.gen(even_name) + shift_even - shift_even.without(parameters),
        odd_name: ctx.gen(odd_name) + shift_odd - shift_odd.without(parameters),
    }
    return ChartMap(ctx, ctx, images)


@st.composite
def framed_forms(draw: st.DrawFn, ring: RingContext, n_r: int) -> SusyForm:
    """Pre-SUSY forms over a Grassmann ring with x1 a unit."""
    size = n_r + 2
    x1 = ring.const(draw(st.sampled_from([1, -1, 2, 3]))) + _nilpotent(draw, ring)
    even = [x1] + [ring.const(draw(st.integers(-3, 3))) + _nilpotent(draw, ring) for _ in range(size - 1)]
    odd = [draw(super_polys(ring, Parity.ODD, max_terms=2)) for _ in range(size)]
    return SusyForm(n_r, tuple(even), tuple(odd), ring)


def _nilpotent(draw: st.DrawFn, ring: RingContext) -> SuperPoly:
    even = draw(super_polys(ring, Parity.EVEN, max_terms=2))
    return even - even.body()


@st.composite
def aut_elements(draw: st.DrawFn, ring: RingContext, n_r: int) -> AutElement:
    """Graded automorphisms of k[u, v|theta] over a Grassmann ring."""
    from supermoduli.autgroup.element import AutElement

    matrix = draw(
        st.tuples(*(st.integers(-3, 3) for _ in range(4))).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)
    )
    values = {name: ring.const(x) + _nilpotent(draw, ring) for name, x in zip("abcd", matrix, strict=True)}
    values["e"] = ring.const(draw(st.sampled_from([1, -1, 2, -3]))) + _nilpotent(draw, ring)
    for i in range(n_r // 2 + 1):
        values[f"alpha{i}"] = draw(super_polys(ring, Parity.ODD, max_terms=2))
        values[f"beta{i}"] = draw(super_polys(ring, Parity.ODD, max_terms=2))
    return AutElement.build(n_r, ring, **values)


@st.composite
def gamma_elements(draw: st.DrawFn, ring: RingContext, n_r: int) -> GammaStarElement:
    from supermoduli.susy.gauge import GammaStarElement

    a0 = ring.const(draw(st.sampled_from([1, -1, 2, 5]))) + _nilpotent(draw, ring)
    beta = [draw(super_polys(ring, Parity.ODD, max_terms=2)) for _ in range(n_r // 2)]
    return GammaStarElement.build(n_r, a0, beta, ring)
