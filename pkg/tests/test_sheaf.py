"""Tests for the two-chart model of WP(1,1|m) and its Čech cohomology."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supermoduli.sheaf.cech import CechWindow, TwoChartComplex
from supermoduli.sheaf.line_bundle import (
    HOMOGENEOUS_RING,
    LineBundleModel,
    LineBundleSheaf,
    dehomogenize,
    h0_line_bundle,
    h1_line_bundle,
    is_global_section,
    p1_h0,
    serre_duality_holds,
    split_oracle,
)
from supermoduli.sheaf.space import WPSpace
from supermoduli.sheaf.tangent import (
    expected_tangent_h0,
    expected_tangent_h1,
    is_global,
    reduce_cocycle,
    spans_global_sections,
    tangent_cohomology,
    window_is_stable,
)
from supermoduli.superalgebra.ring import SuperDim

RAMOND_COUNTS = [4, 6, 8, 10]


class TestWPSpace:
    """Tests for the chart model."""

    @pytest.mark.parametrize("m", [-4, -1, 0, 3])
    def test_gluing_involutive(self, m: int) -> None:
        """Gluing composed with its inverse is the identity."""
        space = WPSpace(m)
        assert (space.inverse_gluing @ space.gluing).is_identity()
        assert (space.gluing @ space.inverse_gluing).is_identity()

    def test_for_ramond(self) -> None:
        """theta has weight 1 - n_R/2."""
        assert WPSpace.for_ramond(6).m == -2
        assert WPSpace.for_ramond(6).n_r == 6

    def test_frame_change_round_trip(self) -> None:
        """U frame to V frame and back."""
        space = WPSpace(-2)
        z, zeta = space.chart_u.gens("z", "zeta")
        field = space.u_field(dz=z**3 * zeta, dzeta=z**-2 + 5)
        assert space.to_u_frame(space.to_v_frame(field)) == field

    def test_d_w_in_u_frame(self) -> None:
        """d/dw = -z^2 d/dz - m z zeta d/dzeta."""
        space = WPSpace(-3)
        z, zeta = space.chart_u.gens("z", "zeta")
        d_w = space.v_field(dw=1)
        assert space.to_u_frame(d_w) == space.u_field(dz=-(z**2), dzeta=z * zeta * 3)


class TestLineBundles:
    """Tests for O(d)."""

    def test_transition_product(self) -> None:
        """O(d1) x O(d2) has transition z^(d1+d2)."""
        space = WPSpace(-1)
        product = LineBundleModel(space, 2).tensor(LineBundleModel(space, -5))
        assert product.transition == LineBundleModel(space, -3).transition

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_h0_of_o1(self, n_r: int) -> None:
        """H^0(O(1)) has dimension (2 | n_R/2 + 1)."""
        h0 = h0_line_bundle(WPSpace.for_ramond(n_r), 1)
        assert h0.dim == SuperDim(2, n_r // 2 + 1)

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_h0_of_o0(self, n_r: int) -> None:
        """H^0(O) has dimension (1 | n_R/2)."""
        assert h0_line_bundle(WPSpace.for_ramond(n_r), 0).dim == SuperDim(1, n_r // 2)

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_h0_of_o_minus_one(self, n_r: int) -> None:
        """H^0(O(-1)) has no even part; the odd part is h0 of O_P1(-1-m)."""
        space = WPSpace.for_ramond(n_r)
        dim = h0_line_bundle(space, -1).dim
        assert dim.even == 0
        assert dim.odd == p1_h0(-1 - space.m)

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    @pytest.mark.parametrize("d", [1, 2])
    def test_h1_vanishes(self, n_r: int, d: int) -> None:
        """H^1(O(1)) = H^1(O(2)) = 0."""
        assert h1_line_bundle(WPSpace.for_ramond(n_r), d).dim == SuperDim(0, 0)

    @pytest.mark.parametrize("m", [-1, -2, -3, -4])
    @pytest.mark.parametrize("d", [-7, -4, -3, -1, 0, 2])
    def test_serre_duality(self, m: int, d: int) -> None:
        """h1(O(d)) equals the parity swap of h0(O(m - 2 - d))."""
        assert serre_duality_holds(WPSpace(m), d)

    @pytest.mark.parametrize("m", [-3, -1, 0, 2, 5])
    @pytest.mark.parametrize("d", [-5, -2, 0, 1, 4])
    def test_split_oracle(self, m: int, d: int) -> None:
        """Dimensions agree with O_P1(d) + Pi O_P1(d - m)."""
        space = WPSpace(m)
        h0, h1 = split_oracle(space, d)
        assert h0_line_bundle(space, d).dim == h0
        assert h1_line_bundle(space, d).dim == h1

    @pytest.mark.parametrize("n_r", [4, 6, 8])
    def test_homogeneous_basis_of_o1(self, n_r: int) -> None:
        """u, v and u^(n/2-i) v^i theta are global sections spanning H^0(O(1))."""
        space = WPSpace.for_ramond(n_r)
        u, v, theta = HOMOGENEOUS_RING.gens("u", "v", "theta")
        forms = [u, v] + [u ** (n_r // 2 - i) * v**i * theta for i in range(n_r // 2 + 1)]
        h0 = h0_line_bundle(space, 1)
        for form in forms:
            section = dehomogenize(space, form)
            assert is_global_section(space, 1, section)
            assert h0.contains(section)
        assert len(forms) == sum(h0.dim)

    def test_negative_degree_representatives(self) -> None:
        """H^1 representatives are monomials of negative z-degree."""
        h1 = h1_line_bundle(WPSpace(-1), -3)
        assert h1.dim == SuperDim(2, 1)
        assert all(cls.label[1] < 0 for cls in h1.classes)

    def test_global_sections_glue(self) -> None:
        """Every computed H^0 element maps to zero in C^1."""
        space = WPSpace(-2)
        sheaf = LineBundleSheaf(space, 3)
        for section in h0_line_bundle(space, 3).basis:
            assert section.on_u == sheaf.v_to_overlap(section.on_v)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(-5, 5), st.integers(-6, 6), st.integers(0, 3))
    def test_window_stabilization(self, m: int, d: int, extra: int) -> None:
        """Dimensions at radius N and N+1 agree for N >= N0."""
        space = WPSpace(m)
        sheaf = LineBundleSheaf(space, d)
        radius = space.default_radius(d) + extra
        at_n = TwoChartComplex(sheaf, CechWindow.of_radius(radius)).cohomology()
        at_next = TwoChartComplex(sheaf, CechWindow.of_radius(radius + 1)).cohomology()
        assert (at_n.h0_dim, at_n.h1_dim) == (at_next.h0_dim, at_next.h1_dim)


class TestTangentCohomology:
    """Tests for H^0(T) and H^1(T)."""

    @pytest.mark.parametrize("m", [-4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6])
    def test_h1_dimension_table(self, m: int) -> None:
        """h1(T) is (0|-m-1), (0|0) or (0|m-3) depending on m."""
        assert tangent_cohomology(WPSpace(m)).h1_dim == expected_tangent_h1(m)

    def test_h1_examples(self) -> None:
        assert tangent_cohomology(WPSpace(-2)).h1_dim == SuperDim(0, 1)
        assert tangent_cohomology(WPSpace(0)).h1_dim == SuperDim(0, 0)
        assert tangent_cohomology(WPSpace(5)).h1_dim == SuperDim(0, 2)

    @pytest.mark.parametrize("n_r", [4, 6, 8, 10, 12])
    def test_h0_dimension(self, n_r: int) -> None:
        """h0(T) = (4 | n_R/2 + 2), spanned by the closed-form fields."""
        space = WPSpace.for_ramond(n_r)
        cohomology = tangent_cohomology(space)
        assert cohomology.h0_dim == SuperDim(4, n_r // 2 + 2)
        assert cohomology.h0_dim == expected_tangent_h0(space.m)
        assert spans_global_sections(space, cohomology)

    @pytest.mark.parametrize("m", [-1, 0, 2, 5])
    def test_h0_other_weights(self, m: int) -> None:
        space = WPSpace(m)
        cohomology = tangent_cohomology(space)
        assert cohomology.h0_dim == expected_tangent_h0(m)
        assert spans_global_sections(space, cohomology)

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_h1_basis(self, n_r: int) -> None:
        """The H^1 basis is z^-i d/dzeta for i = 1..n_R/2 - 2."""
        space = WPSpace.for_ramond(n_r)
        basis = tangent_cohomology(space).h1_basis
        z = space.chart_u.gen("z")
        assert [cls.representative for cls in basis] == [
            space.u_field(dzeta=z**-i) for i in range(1, n_r // 2 - 1)
        ]

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_basis_reduces_to_unit_vectors(self, n_r: int) -> None:
        """Each basis field has coordinates e_i, so the basis is independent."""
        space = WPSpace.for_ramond(n_r)
        z = space.chart_u.gen("z")
        k = n_r // 2 - 2
        for i in range(1, k + 1):
            reduction = reduce_cocycle(space, space.u_field(dzeta=z**-i))
            assert reduction.coefficients == [1 if j == i - 1 else 0 for j in range(k)]

    @pytest.mark.parametrize("n_r", RAMOND_COUNTS)
    def test_coboundaries(self, n_r: int) -> None:
        """d/dzeta and z^(n/2+1) zeta d/dz are coboundaries."""
        space = WPSpace.for_ramond(n_r)
        z, zeta = space.chart_u.gens("z", "zeta")
        assert reduce_cocycle(space, space.u_field(dzeta=1)).is_coboundary()
        assert reduce_cocycle(space, space.u_field(dz=z ** (n_r // 2 + 1) * zeta)).is_coboundary()

    @pytest.mark.parametrize("n_r", [6, 8, 10])
    def test_decomposition_identity(self, n_r: int) -> None:
        """v - sum c_i b_i = X_U - X_V exactly."""
        space = WPSpace.for_ramond(n_r)
        z, zeta = space.chart_u.gens("z", "zeta")
        field = space.u_field(dz=3 * z**-4 * zeta - z**2 * zeta, dzeta=2 * z**-1 - z**-3 + z**5)
        reduction = reduce_cocycle(space, field)
        remainder = field
        for coeff, cls in zip(reduction.coefficients, reduction.basis, strict=True):
            remainder = remainder - cls.representative.scaled(space.chart_u.const(coeff))
        assert remainder == reduction.on_u - space.to_u_frame(reduction.on_v)

    def test_window_doubling(self) -> None:
        """Fields with weights beyond N0 are reduced after doubling the window."""
        space = WPSpace.for_ramond(6)
        z = space.chart_u.gen("z")
        reduction = reduce_cocycle(space, space.u_field(dzeta=z**-40 + z**-1))
        assert reduction.coefficients == [1]

    def test_global_fields(self) -> None:
        """z^-1 d/dzeta does not extend; d/dz does."""
        space = WPSpace.for_ramond(6)
        z = space.chart_u.gen("z")
        assert is_global(space, space.u_field(dz=1))
        assert not is_global(space, space.u_field(dzeta=z**-1))

    @pytest.mark.parametrize("m", [-4, -2, 0, 4])
    def test_cech_exactness(self, m: int) -> None:
        """Every H^0 element has zero overlap difference."""
        space = WPSpace(m)
        for section in tangent_cohomology(space).h0_basis:
            assert section.on_u == space.to_u_frame(section.on_v)

    @pytest.mark.parametrize("m", [-4, -1, 3, 5])
    @pytest.mark.parametrize("extra", [0, 2])
    def test_window_stabilization(self, m: int, extra: int) -> None:
        space = WPSpace(m)
        assert window_is_stable(space, space.default_radius() + extra)
