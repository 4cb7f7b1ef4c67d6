"""Checks on Aut(A), Gamma*, Aut(WP), stabilizers and superconformal symmetries."""

from supermoduli.autgroup.dimensions import dimension_table, lie_linearization
from supermoduli.autgroup.stabilizer import stabilizer
from supermoduli.autgroup.superconformal import superconformal_global_sections
from supermoduli.models.report import Provenance
from supermoduli.superalgebra.parser import format_poly
from supermoduli.superalgebra.ring import SuperDim
from supermoduli.susy.divisor import ramond_divisor
from supermoduli.susy.form import SusyForm
from supermoduli.verification.checks.susy import divisor_form
from supermoduli.verification.registry import CheckContext, Outcome, suite

# p(1, z) as {exponent: coefficient}
SAMPLE_DIVISORS: dict[int, list[dict[int, int]]] = {
    4: [{0: -1, 4: 1}, {1: -1, 4: 1}],
    6: [{0: -1, 6: 1}, {0: -1, 3: -2, 6: 1}],
}


def sample_forms(ctx: CheckContext) -> list[SusyForm]:
    """The form given on the command line when it matches n_R, otherwise the sample divisors."""
    assert ctx.n_r is not None
    if ctx.susy is not None and ctx.susy.n_r == ctx.n_r:
        return [ctx.susy]
    divisors = SAMPLE_DIVISORS.get(ctx.n_r, [{0: -1, ctx.n_r: 1}, {1: -1, ctx.n_r: 1}])
    return [divisor_form(ctx.n_r, terms) for terms in divisors]


def _label(form: SusyForm) -> str:
    return format_poly(ramond_divisor(form).on_chart_u)


@suite.check(
    "group-dimensions",
    statement='Theorem "rep"',
    quote="dimension (4|n/2+2)",
)
def group_dimensions(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    n = ctx.n_r
    table = dimension_table(n)
    expected = (SuperDim(5, n + 2), SuperDim(1, n // 2), SuperDim(4, n // 2 + 2))
    computed = (table.aut_a, table.gamma_star, table.aut_wp)
    return Outcome(
        computed == expected and table.consistent,
        " ".join(map(str, computed)) + f" h0(T)={table.tangent_h0}",
        " ".join(map(str, expected)) + f" h0(T)={expected[2]}",
    )


@suite.check(
    "lie-linearization",
    statement='Eq. "H0T"',
    quote="extend to a basis of",
    provenance=Provenance.DERIVED,
)
def lie_map(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    n = ctx.n_r
    result = lie_linearization(n)
    image, kernel = SuperDim(4, n // 2 + 2), SuperDim(1, n // 2)
    return Outcome(
        result.image == image and result.kernel == kernel and result.spans_tangent_h0,
        f"image {result.image} kernel {result.kernel} onto={result.spans_tangent_h0}",
        f"image {image} kernel {kernel} onto=True",
    )


@suite.check(
    "stabilizer",
    statement='Theorem "finitestabilizer"',
    quote="z ↦ z and ζ ↦ ±ζ",
)
def stabilizer_is_z2(ctx: CheckContext) -> Outcome:
    computed, expected = {}, {}
    for form in sample_forms(ctx):
        result = stabilizer(form)
        generator = result.generator
        flip = generator is not None and generator.e == -1
        computed[_label(form)] = f"order {result.order} flip={flip} scalar mobius={result.mobius.is_scalar}"
        expected[_label(form)] = "order 2 flip=True scalar mobius=True"
    return Outcome(computed == expected, str(computed), str(expected))


@suite.check(
    "superconformal",
    statement='Theorem "infaut"',
    quote="H⁰(A_Σ)=0",
)
def superconformal_vanishing(ctx: CheckContext) -> Outcome:
    computed = {_label(form): superconformal_global_sections(form).dim for form in sample_forms(ctx)}
    expected = dict.fromkeys(computed, SuperDim(0, 0))
    return Outcome(
        computed == expected,
        str({k: str(v) for k, v in computed.items()}),
        str({k: str(v) for k, v in expected.items()}),
    )
