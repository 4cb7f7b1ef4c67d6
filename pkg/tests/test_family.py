"""Tests for the universal deformation Z/S."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supermoduli.errors import DeformationError, InvalidRamondCountError
from supermoduli.family.classify import classify_deformation, classify_pullback, conjugate
from supermoduli.family.sections import h0_on_z, line_bundle_on_z
from supermoduli.family.universal import (
    BaseS,
    DeformationGluing,
    build_z,
    chart_contexts,
    grassmann_ring,
    hypersurface_check,
    parameter_parts,
)
from supermoduli.sheaf.line_bundle import h0_line_bundle
from supermoduli.superalgebra.chartmap import ChartMap
from supermoduli.superalgebra.ring import SuperDim
from tests.strategies import near_identity_maps, odd_values


class TestBuildZ:
    """Tests for the universal family."""

    def test_point_base(self) -> None:
        """n_R = 4: no parameters and chi -> zeta*z."""
        family = build_z(4)
        assert family.parameters == ()
        z, zeta = family.chart_u.gens("z", "zeta")
        assert family.inverse_gluing["chi"] == zeta * z

    def test_one_parameter(self) -> None:
        family = build_z(6)
        z, zeta, eta1 = family.chart_u.gens("z", "zeta", "eta1")
        assert family.inverse_gluing["chi"] == zeta * z**2 + eta1 * z

    def test_two_parameters(self) -> None:
        family = build_z(8)
        z, zeta, eta1, eta2 = family.chart_u.gens("z", "zeta", "eta1", "eta2")
        assert family.inverse_gluing["chi"] == zeta * z**3 + eta1 * z**2 + eta2 * z

    @pytest.mark.parametrize("n_r", [4, 6, 8, 10, 12])
    def test_displays_are_inverse(self, n_r: int) -> None:
        """Both gluing displays compose to the identity."""
        assert build_z(n_r).displays_are_inverse()

    @pytest.mark.parametrize("n_r", [4, 6, 8, 10])
    def test_specializes_to_wp(self, n_r: int) -> None:
        assert build_z(n_r).specializes_to_wp()

    @pytest.mark.parametrize("n_r", [4, 6, 10])
    def test_base_dimension(self, n_r: int) -> None:
        assert BaseS(n_r).dim == SuperDim(0, n_r // 2 - 2)

    @pytest.mark.parametrize("n_r", [2, 5, 7, 0])
    def test_invalid_count(self, n_r: int) -> None:
        with pytest.raises(InvalidRamondCountError):
            build_z(n_r)

    def test_parameter_parts(self) -> None:
        """zeta*eps1 = eps1 * (-zeta)."""
        chart_u, _ = chart_contexts(("eps1", "eps2"))
        zeta, eps1, eps2 = chart_u.gens("zeta", "eps1", "eps2")
        poly = zeta * eps1 + eps1 * eps2 * zeta + 3
        parts = parameter_parts(poly, ("eps1", "eps2"))
        assert parts[("eps1",)] == -zeta
        assert parts[("eps1", "eps2")] == zeta
        assert parts[()] == 3


class TestClassifyDeformation:
    """Tests for the classifying map into S."""

    def test_trivial_deformation(self) -> None:
        ring = grassmann_ring(1)
        gluing = DeformationGluing.standard(6, ring.odd, [ring.zero()])
        result = classify_deformation(gluing)
        assert result.values == [0]
        assert result.verify()

    def test_first_order_parameter(self) -> None:
        """chi -> zeta*z^2 + c*z gives eta1 -> c."""
        ring = grassmann_ring(1)
        c = ring.gen("eps1")
        result = classify_deformation(DeformationGluing.standard(6, ring.odd, [c]))
        assert result.values == [c]

    def test_coboundary_direction(self) -> None:
        """chi -> zeta*z^2 + c*z^3 is trivial, absorbed by a chart change."""
        ring = grassmann_ring(1)
        chart_u, chart_v = chart_contexts(ring.odd)
        z, zeta, eps1 = chart_u.gens("z", "zeta", "eps1")
        transition = ChartMap(chart_v, chart_u, {"w": z**-1, "chi": zeta * z**2 + eps1 * z**3})
        result = classify_deformation(DeformationGluing(6, ring.odd, transition))
        assert result.values == [0]
        assert result.verify()
        assert not (result.on_u.is_identity() and result.on_v.is_identity())

    def test_not_a_deformation(self) -> None:
        ring = grassmann_ring(1)
        chart_u, chart_v = chart_contexts(ring.odd)
        z, zeta = chart_u.gens("z", "zeta")
        transition = ChartMap(chart_v, chart_u, {"w": z**-1 * 2, "chi": zeta * z**2})
        with pytest.raises(DeformationError):
            classify_deformation(DeformationGluing(6, ring.odd, transition))

    def test_point_base(self) -> None:
        """For n_R = 4 every deformation is trivial."""
        ring = grassmann_ring(2)
        chart_u, chart_v = chart_contexts(ring.odd)
        z, zeta, eps1, eps2 = chart_u.gens("z", "zeta", "eps1", "eps2")
        transition = ChartMap(chart_v, chart_u, {"w": z**-1 + eps1 * eps2 * z**-2, "chi": zeta * z + eps1})
        result = classify_deformation(DeformationGluing(4, ring.odd, transition))
        assert result.values == []
        assert result.verify()

    @pytest.mark.parametrize("n_r", [6, 8, 10])
    @settings(max_examples=20, deadline=None)
    @given(data=st.data())
    def test_pullback_round_trip(self, n_r: int, data: st.DataObject) -> None:
        """Classifying the pullback of Z along f returns f."""
        ring = grassmann_ring(3)
        values = data.draw(odd_values(ring, n_r // 2 - 2))
        assert classify_pullback(build_z(n_r), ring, values) == values

    @pytest.mark.parametrize("n_r", [6, 8])
    @settings(max_examples=20, deadline=None)
    @given(data=st.data())
    def test_conjugation_invariance(self, n_r: int, data: st.DataObject) -> None:
        """Isomorphic gluings over k[eps1, eps2] have the same classifying map."""
        ring = grassmann_ring(2)
        chart_u, chart_v = chart_contexts(ring.odd)
        values = data.draw(odd_values(ring, n_r // 2 - 2))
        on_u = data.draw(near_identity_maps(chart_u, ring.odd))
        on_v = data.draw(near_identity_maps(chart_v, ring.odd))
        gluing = conjugate(build_z(n_r).pullback(ring, values), on_u, on_v)
        result = classify_deformation(gluing)
        assert result.values == values
        assert result.verify()

    @pytest.mark.parametrize("n_r", [6, 8, 10])
    @settings(max_examples=20, deadline=None)
    @given(data=st.data())
    def test_conjugated_pullback(self, n_r: int, data: st.DataObject) -> None:
        """Over k[eps1..eps3] the isomorphism is certified and first-order values agree."""
        ring = grassmann_ring(3)
        chart_u, chart_v = chart_contexts(ring.odd)
        values = data.draw(odd_values(ring, n_r // 2 - 2))
        on_u = data.draw(near_identity_maps(chart_u, ring.odd))
        on_v = data.draw(near_identity_maps(chart_v, ring.odd))
        result = classify_deformation(conjugate(build_z(n_r).pullback(ring, values), on_u, on_v))
        assert result.verify()
        assert result.first_order() == [v.filtration_part(ring.odd, 1) for v in values]


class TestHypersurface:
    """Tests for the hypersurface relation cutting out Z."""

    @pytest.mark.parametrize("n_r", [4, 6, 8, 10])
    def test_relation_vanishes(self, n_r: int) -> None:
        check = hypersurface_check(build_z(n_r))
        assert check.holds

    @pytest.mark.parametrize("n_r", [6, 8, 10])
    def test_perturbed_gluing(self, n_r: int) -> None:
        """Doubling eta1 on the U side leaves eta1*z^(n/2-2)."""
        family = build_z(n_r)
        etas = list(family.base.ring.gens(*family.parameters))
        etas[0] = etas[0] * 2
        perturbed = DeformationGluing.standard(n_r, family.parameters, etas).transition
        check = hypersurface_check(family, perturbed)
        assert not check.holds
        z, eta1 = family.chart_u.gens("z", "eta1")
        assert check.residual_u == eta1 * z ** (n_r // 2 - 2)
        assert not check.residual_v


class TestSectionsOnZ:
    """Tests for O_Z(d)."""

    def test_transition(self) -> None:
        family = build_z(6)
        assert line_bundle_on_z(family, 3).transition == family.chart_u.gen("z") ** 3

    @pytest.mark.parametrize("n_r", [6, 8])
    def test_o1_is_free(self, n_r: int) -> None:
        """H^0(O_Z(1)) is free of rank (2 | n_R/2 + 1)."""
        result = h0_on_z(build_z(n_r), 1)
        assert result.rank == SuperDim(2, n_r // 2 + 1)
        assert result.is_free()

    @pytest.mark.parametrize("n_r", [6, 8])
    def test_structure_sheaf(self, n_r: int) -> None:
        result = h0_on_z(build_z(n_r), 0)
        assert result.rank == SuperDim(1, n_r // 2)
        assert result.is_free()

    def test_specialization(self) -> None:
        """At eta = 0 the basis reduces to a basis of H^0(WP, O(1))."""
        family = build_z(6)
        result = h0_on_z(family, 1)
        wp = h0_line_bundle(family.base.space, 1)
        specialized = result.specialize()
        assert all(wp.contains(section) for section in specialized)
        assert len(specialized) == sum(wp.dim)

    def test_point_base_matches_wp(self) -> None:
        family = build_z(4)
        assert h0_on_z(family, 2).rank == h0_line_bundle(family.base.space, 2).dim
