"""Catalogue checks: exact systole bookkeeping over the certified core.

Three flavours of assertion here.  Identities that must hold exactly are
checked with surd or field arithmetic and no tolerance at all.  Enclosures
are intersected against the independently recorded reference values.  And
quantities that admit two unrelated computation routes (closed form against
the marked-sphere pipeline, descending against ascending modulus) are
required to agree as intervals.
"""

import math
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elsys.agm import REFERENCE_ENCLOSURES, Interval, named_constant, sqrt3_interval
from elsys.catalog import (
    CURVE_KINDS,
    Surd,
    classic_constants,
    el_antiprism_face,
    el_octahedron,
    el_octahedron_detail,
    el_prism_face,
    el_prism_face_marked,
    elsys_bolza,
    face_times_dual,
    lift_to_bolza,
    prism_face_inverse,
)
from elsys.conformal import INF, MarkedSphere, pillowcase_normalization
from elsys.exact import ONE, ZERO, ExactNum
from elsys.flatgeo import torus_systolic_ratio

HALF = Fraction(1, 2)


def reference_interval(name: str, scale: Fraction = Fraction(1)) -> Interval:
    mid, rad = REFERENCE_ENCLOSURES[name]
    return Interval((mid - rad) * scale, (mid + rad) * scale)


class TestSurd:
    def test_zero_normalises(self):
        z = Surd(0, 3)
        assert z.radicand == 1
        assert z == Surd(0) == 0

    def test_bad_radicand(self):
        with pytest.raises(ValueError):
            Surd(1, 5)
        with pytest.raises(ValueError):
            Surd(1, 4)

    def test_float_coefficient_rejected(self):
        with pytest.raises(TypeError):
            Surd(1.5)

    def test_float_value(self):
        assert abs(float(Surd(2, 3)) - 2 * math.sqrt(3)) < 1e-15
        assert float(Surd(Fraction(-1, 2), 2)) == pytest.approx(-math.sqrt(2) / 2)

    def test_exact_ordering(self):
        assert Surd(1, 2) < Surd(1, 3) < Surd(2, 2)
        assert 1 < Surd(1, 2) < 2
        assert Surd(-1, 2) < 0 < Surd(1, 3)
        assert Surd(3) == 3 == Fraction(3)
        assert Surd(2, 2) != Surd(2, 3)
        assert not Surd(1, 2) < Surd(1, 2)
        assert Surd(1, 2) <= Surd(1, 2)
        assert Surd(-2, 2) < Surd(2, 2)

    def test_products(self):
        assert Surd(1, 2) * Surd(1, 2) == 2
        assert Surd(2, 2) * Surd(2, 2) == 8
        assert 2 * Surd(1, 2) == Surd(2, 2)
        assert Surd(1, 2) * Fraction(1, 2) == Surd(HALF, 2)
        assert Surd(5) * Surd(1, 3) == Surd(5, 3)
        with pytest.raises(ValueError):
            Surd(1, 2) * Surd(1, 3)

    def test_quotients(self):
        assert Surd(2, 2) / 2 == Surd(1, 2)
        assert Surd(9) / Surd(HALF, 3) == Surd(6, 3)
        assert Surd(1, 3) / Surd(1, 3) == 1
        assert Surd(1, 2) / Surd(2) == Surd(HALF, 2)
        with pytest.raises(ValueError):
            Surd(1, 2) / Surd(1, 3)
        with pytest.raises(ZeroDivisionError):
            Surd(1, 2) / Surd(0)

    def test_to_interval_encloses_value(self):
        s = Surd(Fraction(7, 3), 2)
        iv = s.to_interval()
        assert iv.lo > 0
        assert iv.lo ** 2 <= s.squared() <= iv.hi ** 2
        assert iv.width < Fraction(1, 10**60)

    surds = st.builds(
        Surd,
        st.fractions(min_value=-10, max_value=10, max_denominator=50),
        st.sampled_from((1, 2, 3)),
    )

    @given(surds, surds)
    @settings(max_examples=150, deadline=None)
    def test_ordering_matches_float(self, a, b):
        fa, fb = float(a), float(b)
        if abs(fa - fb) > 1e-9:
            assert (a < b) == (fa < fb)
        if a == b:
            assert hash(a) == hash(b)
            assert abs(fa - fb) < 1e-12


class TestOctahedronCatalog:
    def test_baseball_exact(self):
        d = el_octahedron_detail("baseball")
        assert d.el_exact == Surd(4) == 4
        assert d.degree == 2
        assert d.separation == (2, 4)
        assert d.assumptions == ()
        assert d.pillowcase.lambda0_exact == ExactNum(2)
        # the modulus coincides with its own complement, which is what
        # forces the exact value
        assert d.pillowcase.kstar_exact == ExactNum(0, HALF)
        assert not d.pillowcase.swapped
        assert d.certificate is None

    def test_edge_exact(self):
        d = el_octahedron_detail("edge")
        assert d.el_exact == Surd(2, 2)
        assert d.degree == 2
        assert d.separation == (2, 4)
        assert len(d.assumptions) == 1  # the dropped-puncture step is declared
        assert d.pillowcase.lambda0_exact == ExactNum(3, 2)
        assert d.pillowcase.kstar_exact == ExactNum(-1, 1)
        assert d.certificate is not None
        # the certificate pins K'/K at the singular modulus to sqrt2
        assert d.certificate.lo ** 2 <= 2 <= d.certificate.hi ** 2
        assert d.certificate.width <= Fraction(1, 10**12)

    def test_altitude_enclosure(self):
        d = el_octahedron_detail("altitude")
        assert d.el_exact is None
        assert isinstance(d.el, Interval)
        assert d.pillowcase.swapped
        assert len(d.assumptions) == 1
        assert d.pillowcase.lambda0_exact == ExactNum(4, -2)
        assert d.pillowcase.kstar_sq_exact == ExactNum(HALF, Fraction(1, 4))
        assert d.pillowcase.kstar_exact is None
        assert d.el.width <= Fraction(1, 10**12)
        # catalogue route is 8 kratio(k); the named constant uses
        # 4 kratio(k*) instead, so agreement crosses the ascending identity
        assert d.el.intersects(named_constant("altitude"))
        assert d.el.intersects(reference_interval("altitude"))

    def test_face_enclosure(self):
        d = el_octahedron_detail("face")
        assert d.el_exact is None
        assert d.degree == 3
        assert d.separation == (3, 3)
        assert d.assumptions == ()
        assert d.pillowcase.lambda0_exact is None
        assert not d.pillowcase.swapped
        assert d.el.width <= Fraction(1, 10**12)
        assert d.el.intersects(named_constant("face"))
        assert d.el.intersects(reference_interval("face"))

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown curve kind"):
            el_octahedron("pentagon")

    def test_el_matches_detail(self):
        for kind in CURVE_KINDS:
            d = el_octahedron_detail(kind)
            v = el_octahedron(kind)
            if d.el_exact is not None:
                assert v == d.el_exact
            else:
                assert v.lo == d.el_interval.lo and v.hi == d.el_interval.hi

    def test_exact_values_sit_in_enclosures(self):
        for kind in ("baseball", "edge"):
            d = el_octahedron_detail(kind)
            assert d.el_exact.to_interval().intersects(d.el_interval)

    def test_octahedron_ordering(self):
        face = el_octahedron_detail("face").el_interval
        altitude = el_octahedron_detail("altitude").el_interval
        # face < edge < baseball < altitude on the quotient sphere
        assert Surd(2, 2) > face.hi
        assert Surd(2, 2) < Surd(4)
        assert Surd(4) < altitude.lo


class TestBolzaLift:
    def test_lift_rules(self):
        assert lift_to_bolza("baseball") == Surd(2)
        assert lift_to_bolza("edge") == Surd(1, 2)
        lifted = lift_to_bolza("altitude")
        assert (lifted * 2).intersects(el_octahedron("altitude"))
        lifted = lift_to_bolza("face")
        assert lifted.intersects(el_octahedron("face") * 2)

    def test_lift_accepts_detail_record(self):
        d = el_octahedron_detail("edge")
        assert lift_to_bolza(d) == Surd(1, 2)

    def test_report_value_and_winner(self):
        r = elsys_bolza()
        assert r.value == Surd(1, 2)
        assert r.winner == "edge"
        assert r.lifted_value("edge") == r.value
        assert tuple(c.kind for c in r.curves) == CURVE_KINDS
        assert {name for name, _ in r.lifted} == set(CURVE_KINDS)

    def test_report_exclusion_floor(self):
        r = elsys_bolza()
        assert r.exclusion_floor == Surd(1, 3)
        assert r.value < r.exclusion_floor
        # the floor argument needs exactly the two short flat chains
        totals = [c.total for c in r.flat_classification.chains]
        assert totals == [2.0, 3.0]

    def test_report_comparisons_verified(self):
        r = elsys_bolza()
        assert len(r.comparisons) >= 8
        assert all(isinstance(c, str) and c for c in r.comparisons)
        assert len(r.assumptions) >= 4

    def test_face_lift_lower_bound(self):
        r = elsys_bolza()
        assert r.lifted_value("face").lo > Fraction("5.599148")

    def test_altitude_lift_reference(self):
        r = elsys_bolza()
        assert r.lifted_value("altitude").intersects(
            reference_interval("altitude", HALF)
        )

    def test_lifted_value_missing(self):
        r = elsys_bolza()
        with pytest.raises(KeyError):
            r.lifted_value("pentagon")


PRISM_SHAPES = (
    Fraction(101, 100),
    Fraction(9, 8),
    Fraction(5, 4),
    Fraction(11, 8),
    Fraction(3, 2),
    Fraction(13, 8),
    Fraction(7, 4),
    Fraction(2),
    Fraction(9, 4),
    Fraction(5, 2),
    Fraction(3),
    Fraction(7, 2),
    Fraction(4),
    Fraction(5),
    Fraction(13, 2),
    Fraction(8),
    Fraction(10),
    Fraction(25, 2),
    Fraction(20),
    Fraction(50),
)


class TestPrismFamily:
    def test_closed_form_agrees_with_marked_route(self):
        # the closed form works with v = r^(-3/2) directly, the pipeline
        # descends to k and multiplies up; agreement at every shape checks
        # the ascending identity along independent code paths
        start = time.monotonic()
        for r in PRISM_SHAPES:
            a = el_prism_face(r)
            b = el_prism_face_marked(r)
            assert a.intersects(b), f"routes disagree at r = {r}"
            assert a.width <= Fraction(1, 10**10)
            assert b.width <= Fraction(1, 10**10)
        assert time.monotonic() - start < 30.0

    def test_monotone_decreasing(self):
        a = el_prism_face(Fraction(3, 2))
        b = el_prism_face(Fraction(2))
        c = el_prism_face(Fraction(3))
        assert b.hi < a.lo
        assert c.hi < b.lo

    def test_degenerate_shapes_rejected(self):
        for bad in (1, Fraction(1, 2), 0):
            with pytest.raises(ValueError):
                el_prism_face(bad)
            with pytest.raises(ValueError):
                el_prism_face_marked(bad)
        with pytest.raises(ValueError):
            el_prism_face(Interval(Fraction(9, 10), Fraction(11, 10)))

    def test_inverse_round_trip(self):
        r0 = Fraction(7, 2)
        target = el_prism_face(r0).mid
        r = prism_face_inverse(target)
        assert abs(r - r0) < Fraction(1, 10**8)
        assert abs(el_prism_face(r).mid - target) < Fraction(1, 10**6)

    def test_inverse_target_out_of_range(self):
        with pytest.raises(ValueError):
            prism_face_inverse(1000)
        with pytest.raises(ValueError):
            prism_face_inverse(Fraction(1, 2))

    def test_inverse_empty_bracket(self):
        with pytest.raises(ValueError):
            prism_face_inverse(2, lo=Fraction(3), hi=Fraction(3))


class TestAntiprismFamily:
    def test_octahedral_specialisations(self):
        s3 = sqrt3_interval()
        face = el_antiprism_face(2 + s3)
        assert face.intersects(named_constant("face"))
        assert face.intersects(el_octahedron("face"))
        dual = el_antiprism_face(2 - s3)
        assert dual.intersects(named_constant("face_dual"))
        assert dual.intersects(reference_interval("face_dual"))

    @pytest.mark.parametrize("r", [Fraction(3, 2), Fraction(2), Fraction(5, 2)])
    def test_marked_route_agreement(self, r):
        closed = el_antiprism_face(r)
        pts = (ZERO, ONE, ExactNum(-(r**3)), INF)
        res = pillowcase_normalization(MarkedSphere(pts, (0, 1), (2, 3)))
        assert not res.swapped
        piped = 3 * res.extremal_length()
        assert closed.intersects(piped)

    def test_domain(self):
        with pytest.raises(ValueError):
            el_antiprism_face(0)
        with pytest.raises(ValueError):
            el_antiprism_face(-1)

    def test_face_times_dual_is_36(self):
        p = face_times_dual()
        assert p.contains(36)
        assert p.width <= Fraction(1, 10**10)


class TestClassicConstants:
    def test_catalogue_complete(self):
        cc = classic_constants()
        assert set(cc) == {
            "figure-eight",
            "sausage",
            "trefoil",
            "round-sphere",
            "thrice-punctured-sphere",
            "hexagonal-torus",
            "tetrahedron",
        }
        assert all(c.note for c in cc.values())

    def test_derivations_exact(self):
        for c in classic_constants().values():
            if c.length is not None:
                assert c.value == c.length * c.length / c.area, c.name

    def test_specific_values(self):
        cc = classic_constants()
        assert cc["figure-eight"].value == 4
        assert cc["sausage"].value == 8
        assert cc["trefoil"].value == Surd(6, 3)
        assert cc["round-sphere"].value == Surd(2, 3)
        assert cc["thrice-punctured-sphere"].value == 4
        assert cc["hexagonal-torus"].value == Surd(Fraction(2, 3), 3)
        assert cc["tetrahedron"].value == Surd(Fraction(4, 3), 3)
        assert cc["tetrahedron"].value == 2 * cc["hexagonal-torus"].value

    def test_hexagonal_torus_cross_module(self):
        # same constant out of the lattice-reduction route
        tau = complex(0.5, math.sqrt(3) / 2)
        cc = classic_constants()
        assert abs(float(cc["hexagonal-torus"].value) - torus_systolic_ratio(tau)) < 1e-12

    def test_ordering(self):
        cc = classic_constants()
        assert cc["round-sphere"].value < cc["figure-eight"].value
        assert cc["figure-eight"].value < cc["sausage"].value
        assert cc["hexagonal-torus"].value < cc["tetrahedron"].value
