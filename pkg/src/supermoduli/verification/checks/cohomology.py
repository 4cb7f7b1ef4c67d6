"""Cohomology checks for WP(1,1|m): tangent sheaf tables, bases and line bundles."""

from supermoduli.logging import get_logger
from supermoduli.models.report import Provenance
from supermoduli.sheaf.line_bundle import h0_line_bundle, h1_line_bundle, serre_duality_holds, split_oracle
from supermoduli.sheaf.space import WPSpace
from supermoduli.sheaf.tangent import (
    expected_tangent_h0,
    expected_tangent_h1,
    reduce_cocycle,
    spans_global_sections,
    tangent_cohomology,
    window_is_stable,
)
from supermoduli.verification.registry import CheckContext, Outcome, suite

logger = get_logger(__name__)

TABLE_WEIGHTS = range(-4, 7)
LINE_BUNDLE_WEIGHTS = (-4, -3, -2, -1)
LINE_BUNDLE_TWISTS = (-5, -2, -1, 0, 1, 2, 4)


def format_table(values: dict[int, object]) -> str:
    return " ".join(f"{key}:{value}" for key, value in values.items())


def _space(ctx: CheckContext) -> WPSpace:
    assert ctx.n_r is not None
    return WPSpace.for_ramond(ctx.n_r)


@suite.check(
    "tangent-h1-table",
    statement='Lemma "dimensions"',
    quote="superspaces W(m) are not rigid",
    per_nr=False,
)
def tangent_h1_table(ctx: CheckContext) -> Outcome:
    computed = {m: tangent_cohomology(WPSpace(m), ctx.window).h1_dim for m in TABLE_WEIGHTS}
    expected = {m: expected_tangent_h1(m) for m in TABLE_WEIGHTS}
    return Outcome(computed == expected, format_table(computed), format_table(expected))


@suite.check(
    "line-bundle-table",
    statement='Example "wsp"',
    quote="O_{WP(m)} = S(Π O_{P¹}(−m))",
    provenance=Provenance.DERIVED,
    per_nr=False,
)
def line_bundle_table(ctx: CheckContext) -> Outcome:
    mismatches = []
    for m in LINE_BUNDLE_WEIGHTS:
        space = WPSpace(m)
        for d in LINE_BUNDLE_TWISTS:
            h0, h1 = h0_line_bundle(space, d, ctx.window).dim, h1_line_bundle(space, d, ctx.window).dim
            if (h0, h1) != split_oracle(space, d) or not serre_duality_holds(space, d):
                mismatches.append(f"m={m},d={d}")
    cases = len(LINE_BUNDLE_WEIGHTS) * len(LINE_BUNDLE_TWISTS)
    computed = f"{cases - len(mismatches)}/{cases} agree" + (f" ({', '.join(mismatches)})" if mismatches else "")
    return Outcome(not mismatches, computed, f"{cases}/{cases} agree")


@suite.check(
    "tangent-h0-dim",
    statement='Theorem "rep"',
    quote="dimension (4|n/2+2)",
)
def tangent_h0_dim(ctx: CheckContext) -> Outcome:
    space = _space(ctx)
    cohomology = tangent_cohomology(space, ctx.window)
    expected = expected_tangent_h0(space.m)
    spans = spans_global_sections(space, cohomology)
    return Outcome(
        cohomology.h0_dim == expected and spans,
        f"{cohomology.h0_dim} closed-form basis {'spans' if spans else 'does not span'}",
        f"{expected} closed-form basis spans",
    )


@suite.check(
    "tangent-h1-basis",
    statement='Lemma "infdef"',
    quote="form a basis for",
)
def tangent_h1_basis(ctx: CheckContext) -> Outcome:
    space = _space(ctx)
    count = space.n_r // 2 - 2
    z = space.chart_u.gen("z")
    fields = [space.u_field(dzeta=z**-i) for i in range(1, count + 1)]
    cohomology = tangent_cohomology(space, ctx.window)
    unit_vectors = all(
        list(reduce_cocycle(space, f, ctx.window).coefficients) == [int(j == i) for j in range(count)]
        for i, f in enumerate(fields)
    )
    same = [c.representative for c in cohomology.h1_basis] == fields
    return Outcome(
        unit_vectors and same,
        f"{cohomology.h1_dim} unit coordinates={unit_vectors} representatives match={same}",
        f"(0|{count}) unit coordinates=True representatives match=True",
    )


@suite.check(
    "window-stability",
    statement="truncated Čech window",
    quote="dimensions at radius N and N+1 agree",
    provenance=Provenance.TRIVIAL,
)
def window_stability(ctx: CheckContext) -> Outcome:
    space = _space(ctx)
    radius = tangent_cohomology(space, ctx.window).radius
    stable = [r for r in (radius, radius + 1, 2 * radius) if window_is_stable(space, r)]
    logger.debug("window stability", n_r=ctx.n_r, radius=radius, stable=stable)
    return Outcome(len(stable) == 3, f"stable at {stable}", f"stable at {[radius, radius + 1, 2 * radius]}")
