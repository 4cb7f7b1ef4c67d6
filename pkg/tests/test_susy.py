"""Tests for SUSY forms, Ramond divisors and the gauge group."""

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from supermoduli.errors import (
    DegenerateFormError,
    IntegrableDistributionError,
    NotHomogeneousError,
    NotInKernelError,
    ParseError,
    RamifiedDivisorError,
    UnframedError,
)
from supermoduli.family.universal import grassmann_ring
from supermoduli.superalgebra.fields import SuperOneForm
from supermoduli.superalgebra.ring import RingContext, SuperDim
from supermoduli.susy.divisor import (
    FramedSusyPoint,
    discriminant,
    discriminant_body_is_stable,
    distribution_from_form,
    homogeneous_discriminant,
    is_unramified,
    ramond_divisor,
)
from supermoduli.susy.euler import euler_field, h0_omega_twisted, is_basic
from supermoduli.susy.form import SusyForm, canonical_basis, form_rings, format_susy, parse_susy
from supermoduli.susy.gauge import GammaStarElement, gamma_action, gauge_fix, is_gauge_fixed
from supermoduli.susy.moduli import expected_moduli_dimension, moduli_dimension_report
from tests.strategies import framed_forms

Z4_MINUS_ONE = [-1, 0, 0, 0, 1]


class TestSusyForm:
    """Tests for forms and their chart restrictions."""

    def test_chart_restriction(self) -> None:
        """x1 = 1, p = v^4 - u^4 gives dz + (z^4 - 1) zeta dzeta."""
        s = SusyForm.with_divisor(4, Z4_MINUS_ONE)
        z, zeta = s.rings.chart_u.gens("z", "zeta")
        omega = s.omega_on_chart_u()
        assert omega["z"] == 1
        assert omega["zeta"] == (z**4 - 1) * zeta

    def test_trivial_form(self) -> None:
        s = SusyForm.build(4, [3])
        omega = s.omega_on_chart_u()
        assert omega["z"] == 3
        assert not omega["zeta"]

    def test_last_odd_term(self) -> None:
        """xi_(n+2) contributes z^2 (z dzeta + zeta dz) for n_R = 4."""
        ring = grassmann_ring(1)
        s = SusyForm.build(4, [1], [0, 0, 0, 0, 0, ring.gen("eps1")], base=ring)
        z, zeta, eps = s.rings.chart_u.gens("z", "zeta", "eps1")
        omega = s.omega_on_chart_u()
        assert omega["z"] == 1 + eps * z**2 * zeta
        assert omega["zeta"] == eps * z**3

    @pytest.mark.parametrize("n_r", [4, 6, 8])
    def test_gluing_identity(self, n_r: int) -> None:
        """The chart expressions agree up to the factor z^2 on the overlap."""
        ring = grassmann_ring(2)
        eps1, eps2 = ring.gens("eps1", "eps2")
        s = SusyForm.build(n_r, [2, 1, 0, -1, 3], [eps1, 0, eps2, eps1 + eps2], base=ring)
        assert s.gluing_identity_holds()

    def test_from_one_form_round_trip(self) -> None:
        ring = grassmann_ring(2)
        eps1, eps2 = ring.gens("eps1", "eps2")
        s = SusyForm.build(6, [2, 1, 0, 3, 0, 0, 0, -1], [eps1, 0, eps2, 0, eps1, 0, 0, eps2], base=ring)
        assert SusyForm.from_one_form(s.omega(), 6) == s

    def test_unweighted_odd_form_rejected(self) -> None:
        """u dtheta - theta du is not basic when theta has weight 1 - n/2."""
        ring = form_rings(grassmann_ring(1)).homogeneous
        eps = ring.gen("eps1")
        _, weighted = canonical_basis(4, ring)
        _, unweighted = canonical_basis(4, ring, weighted=False)
        assert is_basic(weighted[2], 4)
        assert not is_basic(unweighted[2], 4)
        assert SusyForm.from_one_form(weighted[2].scaled(eps), 4).odd[2] == eps
        with pytest.raises(NotInKernelError):
            SusyForm.from_one_form(unweighted[2].scaled(eps), 4)

    def test_euler_field(self) -> None:
        field = euler_field(6)
        theta = field.ctx.gen("theta")
        assert field["theta"] == -2 * theta


class TestEulerSequence:
    """Tests for H^0(Omega^1(2))."""

    @pytest.mark.parametrize(("n_r", "expected"), [(4, SuperDim(6, 6)), (8, SuperDim(10, 10))])
    def test_dimension(self, n_r: int, expected: SuperDim) -> None:
        assert h0_omega_twisted(n_r).dim == expected

    @pytest.mark.parametrize("n_r", [4, 6, 8, 10])
    def test_canonical_basis(self, n_r: int) -> None:
        """H^0(p) is onto and the canonical forms are a basis of the kernel."""
        result = h0_omega_twisted(n_r)
        assert result.dim == SuperDim(n_r + 2, n_r + 2)
        assert result.surjective
        assert result.canonical_in_kernel
        assert result.canonical_spans


class TestDistribution:
    """Tests for the odd distribution and the Ramond divisor."""

    def test_distribution(self) -> None:
        s = SusyForm.with_divisor(4, Z4_MINUS_ONE)
        z, zeta = s.rings.chart_u.gens("z", "zeta")
        d = distribution_from_form(s.omega_on_chart_u())
        assert d["zeta"] == 1
        assert d["z"] == -((z**4 - 1) * zeta)

    def test_square(self, chart_u: RingContext) -> None:
        """For dz + zeta dzeta, [D, D] / 2 = -d/dz."""
        zeta = chart_u.gen("zeta")
        d = distribution_from_form(SuperOneForm(chart_u, ("z", "zeta"), {"z": chart_u.one(), "zeta": zeta}))
        square = d.bracket(d)
        assert square["z"] == -2
        assert not square["zeta"]

    def test_degenerate(self, chart_u: RingContext) -> None:
        z, zeta = chart_u.gens("z", "zeta")
        with pytest.raises(DegenerateFormError):
            distribution_from_form(SuperOneForm(chart_u, ("z", "zeta"), {"z": z + 1, "zeta": zeta}))

    @pytest.mark.parametrize("x1", [1, 2, -3])
    def test_divisor_round_trip(self, x1: int) -> None:
        """The divisor of a bosonic form is its p, whatever the framing."""
        s = SusyForm.with_divisor(6, [1, 2, 0, -1, 0, 0, 3], x1=x1)
        divisor = ramond_divisor(s)
        assert divisor.p == s.p
        z = s.rings.chart_u.gen("z")
        assert divisor.on_chart_u == 1 + 2 * z - z**3 + 3 * z**6

    def test_integrable(self) -> None:
        with pytest.raises(IntegrableDistributionError):
            ramond_divisor(SusyForm.build(4, [1]))


class TestDiscriminant:
    """Tests for Disc^h."""

    def test_distinct_roots(self) -> None:
        s = SusyForm.with_divisor(4, Z4_MINUS_ONE)
        assert discriminant(s).is_unit()
        assert is_unramified(s)

    @pytest.mark.parametrize("coefficients", [[0, 0, 1], [1], [1, -2, 1]])
    def test_repeated_roots(self, coefficients: list[int]) -> None:
        """u^2 v^2, u^4 and (v - u)^2 u^2 have repeated points."""
        s = SusyForm.with_divisor(4, coefficients)
        assert not discriminant(s)
        assert not is_unramified(s)

    @pytest.mark.parametrize(
        "coefficients",
        [[-1, 0, 0, 0, 1], [0, -1, 0, 0, 1], [1, 0, -2, 0, 1], [2, -3, 0, 1, 1], [-1, 0, 0, -2, 0, 0, 1]],
    )
    def test_sympy_oracle(self, coefficients: list[int]) -> None:
        """Disc^h vanishes exactly when the discriminant of p(1, z) does."""
        n_r = len(coefficients) - 1
        s = SusyForm.with_divisor(n_r, coefficients)
        z = sympy.Symbol("z")
        oracle = sympy.discriminant(sum(c * z**i for i, c in enumerate(coefficients)), z)
        assert bool(discriminant(s)) == (oracle != 0)

    def test_not_homogeneous(self) -> None:
        ring = form_rings(RingContext()).homogeneous
        u, v = ring.gens("u", "v")
        with pytest.raises(NotHomogeneousError):
            homogeneous_discriminant(u**3 * v + v**2, 4)

    def test_body_is_stable(self) -> None:
        ring = grassmann_ring(2)
        eps1, eps2 = ring.gens("eps1", "eps2")
        s = SusyForm.build(
            4,
            [1, -1 + eps1 * eps2, 0, 0, 0, 1],
            [0, 0, eps1, 0, eps2, 0],
            base=ring,
        )
        assert discriminant_body_is_stable(s)
        assert discriminant(s).is_unit()

    def test_framed_point(self) -> None:
        point = FramedSusyPoint(SusyForm.with_divisor(4, Z4_MINUS_ONE))
        assert point.divisor.p == point.form.p
        with pytest.raises(RamifiedDivisorError):
            FramedSusyPoint(SusyForm.with_divisor(4, [1]))
        with pytest.raises(UnframedError):
            FramedSusyPoint(SusyForm.with_divisor(4, Z4_MINUS_ONE, x1=0))


class TestGammaStar:
    """Tests for the gauge group and gauge fixing."""

    def test_group_law(self) -> None:
        ring = grassmann_ring(2)
        eps1, eps2 = ring.gens("eps1", "eps2")
        g1 = GammaStarElement.build(4, 2, [eps1, 0], ring)
        g2 = GammaStarElement.build(4, 3, [0, eps2], ring)
        product = g1 * g2
        assert product.a0 == 6
        assert product.beta == (eps1, eps2)
        homogeneous = form_rings(ring).homogeneous
        assert product.function(homogeneous) == g1.function(homogeneous) * g2.function(homogeneous)
        assert (g1 * g1.inverse()).is_identity()

    def test_scalar_action(self) -> None:
        ring = grassmann_ring(1)
        eps = ring.gen("eps1")
        s = SusyForm.build(4, [1, -1, 0, 0, 0, 1], [0, 0, eps], base=ring)
        moved = gamma_action(GammaStarElement.build(4, 2, base=ring), s)
        assert moved.even == tuple(2 * c for c in s.even)
        assert moved.odd == tuple(2 * c for c in s.odd)

    def test_odd_action(self) -> None:
        """1 + theta*beta0*u shifts q by -x1 beta0 and leaves the rest."""
        ring = grassmann_ring(1)
        eps = ring.gen("eps1")
        s = SusyForm.with_divisor(4, Z4_MINUS_ONE).lift(ring)
        moved = gamma_action(GammaStarElement.build(4, 1, [eps, 0], ring), s)
        assert moved.even == s.even
        assert moved.odd[0] == -eps
        assert not any(moved.odd[1:])

    def test_gauge_fix(self) -> None:
        ring = grassmann_ring(1)
        eps = ring.gen("eps1")
        s = SusyForm.build(4, [2, -2, 0, 0, 0, 2], [eps], base=ring)
        fixed = gauge_fix(s)
        assert is_gauge_fixed(fixed.form)
        assert fixed.form.even == SusyForm.with_divisor(4, Z4_MINUS_ONE).lift(ring).even
        assert fixed.element.a0 * 2 == 1

    @settings(max_examples=200, deadline=None)
    @given(data=st.data())
    def test_gauge_fix_idempotent(self, data: st.DataObject) -> None:
        ring = grassmann_ring(2)
        s = data.draw(framed_forms(ring, 4))
        fixed = gauge_fix(s)
        assert is_gauge_fixed(fixed.form)
        again = gauge_fix(fixed.form)
        assert again.form == fixed.form
        assert again.element.is_identity()

    def test_unframed(self) -> None:
        with pytest.raises(UnframedError):
            gauge_fix(SusyForm.build(4, [0, 1]))


class TestModuliDimension:
    """Tests for the assembled dimension count."""

    @pytest.mark.parametrize(
        ("n_r", "expected"), [(4, SuperDim(1, 0)), (6, SuperDim(3, 1)), (10, SuperDim(7, 3))]
    )
    def test_moduli(self, n_r: int, expected: SuperDim) -> None:
        report = moduli_dimension_report(n_r)
        assert report.moduli == expected
        assert expected_moduli_dimension(n_r) == expected

    @pytest.mark.parametrize("n_r", [4, 6, 8])
    def test_relative_quotient(self, n_r: int) -> None:
        """Y / Gamma*_Z has relative dimension (n + 1 | n/2 + 2)."""
        report = moduli_dimension_report(n_r)
        assert report.quotient_relative == SuperDim(n_r + 1, n_r // 2 + 2)
        assert report.gauge == SuperDim(1, n_r // 2)


class TestFixtureFormat:
    """Tests for the SUSY fixture text format."""

    def test_parse(self) -> None:
        s = parse_susy("# z^4 - 1\nn_r: 4\nx1 = 1\nx2 = -1\nx6 = 1\n")
        assert s == SusyForm.with_divisor(4, Z4_MINUS_ONE)

    def test_round_trip(self) -> None:
        ring = grassmann_ring(1)
        s = SusyForm.build(4, [1, 2], [ring.gen("eps1")], base=ring)
        assert parse_susy(format_susy(s)) == s

    def test_missing_count(self) -> None:
        with pytest.raises(ParseError):
            parse_susy("x1 = 1\n")

    def test_unknown_coefficient(self) -> None:
        with pytest.raises(ParseError):
            parse_susy("n_r: 4\ny3 = 1\n")
