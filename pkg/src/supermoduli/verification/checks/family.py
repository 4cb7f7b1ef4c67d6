"""Checks on the universal deformation Z/S."""

import random
from itertools import combinations

from supermoduli.family.classify import classify_pullback
from supermoduli.family.universal import DeformationGluing, build_z, grassmann_ring, hypersurface_check
from supermoduli.logging import get_logger
from supermoduli.models.report import Provenance
from supermoduli.superalgebra.poly import SuperMonomial, SuperPoly
from supermoduli.superalgebra.ring import RingContext
from supermoduli.verification.registry import CheckContext, Outcome, suite

logger = get_logger(__name__)

ROUND_TRIP_SAMPLES = 20
TEST_RING_PARAMETERS = 3


def random_odd_values(rng: random.Random, ring: RingContext, count: int) -> list[SuperPoly]:
    """``count`` odd elements of a Grassmann ring with small integer coefficients."""
    size = len(ring.odd)
    odd_subsets = [c for k in range(1, size + 1, 2) for c in combinations(range(size), k)]
    return [
        SuperPoly.from_terms(ring, [(SuperMonomial((), subset), rng.randint(-3, 3)) for subset in odd_subsets])
        for _ in range(count)
    ]


@suite.check(
    "family-gluing",
    statement='Eq. "gluingformula1"',
    quote="with local trivialization",
    provenance=Provenance.TRIVIAL,
)
def family_gluing(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    family = build_z(ctx.n_r)
    computed = (family.specializes_to_wp(), family.displays_are_inverse())
    return Outcome(all(computed), f"specializes={computed[0]} inverse={computed[1]}", "specializes=True inverse=True")


@suite.check(
    "deformation-round-trip",
    statement='Theorem "versal"',
    quote="universal deformation",
    provenance=Provenance.DERIVED,
)
def deformation_round_trip(ctx: CheckContext) -> Outcome:
    assert ctx.n_r is not None
    family = build_z(ctx.n_r)
    ring = grassmann_ring(TEST_RING_PARAMETERS)
    rng = random.Random(ctx.n_r)
    failures = 0
    for _ in range(ROUND_TRIP_SAMPLES):
        values = random_odd_values(rng, ring, len(family.parameters))
        if classify_pullback(family, ring, values) != values:
            failures += 1
    logger.debug("round trips", n_r=ctx.n_r, samples=ROUND_TRIP_SAMPLES, failures=failures)
    return Outcome(
        failures == 0,
        f"{ROUND_TRIP_SAMPLES - failures}/{ROUND_TRIP_SAMPLES} round trips",
        f"{ROUND_TRIP_SAMPLES}/{ROUND_TRIP_SAMPLES} round trips",
    )


@suite.check(
    "hypersurface",
    statement='Prop. "zisprojective"',
    quote="The supercurve Z/S is",
)
def hypersurface(ctx: CheckContext) -> Outcome:
    """The relation holds on both charts; doubling eta1 on one side breaks it."""
    assert ctx.n_r is not None
    family = build_z(ctx.n_r)
    check = hypersurface_check(family)
    computed = f"residual_u={check.residual_u} residual_v={check.residual_v}"
    if not family.parameters:
        return Outcome(check.holds, computed, "residual_u=0 residual_v=0")
    etas = list(family.base.ring.gens(*family.parameters))
    etas[0] = etas[0] * 2
    perturbed = DeformationGluing.standard(ctx.n_r, family.parameters, etas).transition
    control = hypersurface_check(family, perturbed)
    return Outcome(
        check.holds and not control.holds,
        f"{computed} perturbed residual nonzero={not control.holds}",
        "residual_u=0 residual_v=0 perturbed residual nonzero=True",
    )
