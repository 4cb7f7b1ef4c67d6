"""Checks on SUSY forms: the Euler sequence, Ramond divisors, gauge fixing and moduli counts."""

import random

from supermoduli.family.universal import grassmann_ring
from supermoduli.models.report import Provenance
from supermoduli.superalgebra.ring import SuperDim
from supermoduli.susy.divisor import discriminant, is_unramified
from supermoduli.susy.euler import h0_omega_twisted
from supermoduli.susy.form import SusyForm
from supermoduli.susy.gauge import gauge_fix, is_gauge_fixed
from supermoduli.susy.moduli import expected_moduli_dimension, moduli_dimension_report
from supermoduli.verification.registry import CheckContext, Outcome, suite

GAUGE_SAMPLES = 20


def divisor_form(n_r: int, terms: dict[int, int]) -> SusyForm:
    """Bosonic gauge-fixed form with p(1, z) = sum of c * z^i over ``terms``."""
    return SusyForm.with_divisor(n_r, [terms.get(i, 0) for i in range(n_r + 1)])


def random_framed_form(rng: random.Random, n_r: int) -> SusyForm:
    """A framed form over k[eps1, eps2] with small integer coefficients."""
    base = grassmann_ring(2)
    eps1, eps2 = base.gens("eps1", "eps2")
    even = [base.const(rng.randint(-3, 3)) + eps1 * eps2 * rng.randint(-3, 3) for _ in range(n_r + 2)]
    even[0] = even[0] + rng.choice([1, -1, 2, 3]) - even[0].body()
    odd = [eps1 * rng.randint(-3, 3) + eps2 * rng.randint(-3, 3) for _ in range(n_r + 2)]
    return SusyForm.build(n_r, even, odd, base)


@suite.check(
    "euler-sequence",
    statement='Eq. "basis"',
    quote="make up a basis",
)
def euler_sequence(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    result = h0_omega_twisted(ctx.n_r)
    flags = (result.surjective, result.canonical_in_kernel, result.canonical_spans)
    expected = SuperDim(ctx.n_r + 2, ctx.n_r + 2)
    return Outcome(
        result.dim == expected and all(flags),
        f"{result.dim} onto={flags[0]} in kernel={flags[1]} spans={flags[2]}",
        f"{expected} onto=True in kernel=True spans=True",
    )


@suite.check(
    "discriminant",
    statement="homogeneous discriminant",
    quote="Disc^h(p)",
    provenance=Provenance.DERIVED,
)
def discriminant_examples(ctx: CheckContext) -> Outcome:
    """z^n - 1 and z^n - z are unramified; z^2 and (z - 1)^2 are ramified (with a root at infinity)."""
    assert ctx.n_r is not None
    n = ctx.n_r
    cases = {
        f"z^{n}-1": (divisor_form(n, {0: -1, n: 1}), True),
        f"z^{n}-z": (divisor_form(n, {1: -1, n: 1}), True),
        "z^2": (divisor_form(n, {2: 1}), False),
        "z^2-2z+1": (divisor_form(n, {0: 1, 1: -2, 2: 1}), False),
    }
    computed = {label: is_unramified(form) for label, (form, _) in cases.items()}
    expected = {label: unramified for label, (_, unramified) in cases.items()}
    nonzero = all(bool(discriminant(form)) == unramified for form, unramified in cases.values())
    return Outcome(computed == expected and nonzero, str(computed), str(expected))


@suite.check(
    "gauge-fix",
    statement='Theorem "quotientequal"',
    quote="free on the element udv−vdu",
    provenance=Provenance.TRIVIAL,
)
def gauge_fix_idempotent(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    rng = random.Random(ctx.n_r)
    good = 0
    for _ in range(GAUGE_SAMPLES):
        fixed = gauge_fix(random_framed_form(rng, ctx.n_r)).form
        if is_gauge_fixed(fixed) and gauge_fix(fixed).form == fixed:
            good += 1
    return Outcome(good == GAUGE_SAMPLES, f"{good}/{GAUGE_SAMPLES} idempotent", f"{GAUGE_SAMPLES}/{GAUGE_SAMPLES} idempotent")


@suite.check(
    "moduli-dimension",
    statement='Corollary "finat"',
    quote="Deligne-Mumford superstack of dimension",
)
def moduli_dimension(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    report = moduli_dimension_report(ctx.n_r)
    quotient = SuperDim(ctx.n_r + 1, ctx.n_r // 2 + 2)
    moduli = expected_moduli_dimension(ctx.n_r)
    return Outcome(
        report.quotient_relative == quotient and report.moduli == moduli,
        f"Y/Gamma*_Z {report.quotient_relative} M {report.moduli}",
        f"Y/Gamma*_Z {quotient} M {moduli}",
    )
