import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discphase import (
    Circle,
    CircleNotInsideDisc,
    IdenticalCircles,
    Line,
    MoebiusMap,
    NotIntersecting,
    PairKind,
    PoleAtInput,
    PresumedIrrational,
    RationalMultipleOfPi,
    circle_as_automorphism_image,
    classify_angle,
    classify_pair,
    disc_automorphism,
    intersection_angle,
    inverse_point,
    is_point_at_infinity,
    map_circle,
    moebius_apply,
)

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------- Moebius maps


def test_disc_automorphism_reduces_to_negation():
    m = disc_automorphism(1.0, 0.0)
    assert m(0.3) == pytest.approx(-0.3)


def test_disc_automorphism_sends_alpha_to_zero():
    m = disc_automorphism(1.0, 0.5)
    assert abs(m(0.5)) < 1e-15


def test_disc_automorphism_preserves_boundary():
    m = disc_automorphism(1j, 0.5)
    assert abs(abs(m(np.exp(1j * np.pi / 3))) - 1.0) < 1e-12


def test_disc_automorphism_rejects_bad_arguments():
    with pytest.raises(ValueError):
        disc_automorphism(1.0, 1.2)
    with pytest.raises(ValueError):
        disc_automorphism(0.5, 0.1)


def test_moebius_apply_identity():
    m = MoebiusMap(1, 0, 0, 1)
    assert moebius_apply(m, 0.7j) == pytest.approx(0.7j)


def test_moebius_composition_law():
    rng = np.random.default_rng(11)
    for _ in range(25):
        coeffs = rng.standard_normal(8)
        m1 = MoebiusMap(
            complex(coeffs[0], coeffs[1]), complex(coeffs[2], coeffs[3]), 0.2j, 1.0
        )
        m2 = MoebiusMap(
            complex(coeffs[4], coeffs[5]), complex(coeffs[6], coeffs[7]), 0.0, 1.0
        )
        z = complex(rng.standard_normal(), rng.standard_normal())
        assert m1.compose(m2)(z) == pytest.approx(m1(m2(z)), abs=1e-11)


def test_cayley_type_map_kills_numerator():
    a = 1j / (3 * SQRT2)
    m = MoebiusMap(1.0, a, 1.0, -a)  # (z + a) / (z - a)
    assert m(-a) == pytest.approx(0.0)


def test_moebius_pole_raises():
    m = MoebiusMap(1.0, 0.0, 1.0, -0.5)  # pole at z = 0.5
    with pytest.raises(PoleAtInput):
        m(0.5)


def test_group_law_invert_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(100):
        alpha = 0.7 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        omega = np.exp(2j * np.pi * rng.uniform())
        m = disc_automorphism(complex(omega), complex(alpha))
        z = 0.95 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        assert m(m.invert()(complex(z))) == pytest.approx(complex(z), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.complex_numbers(max_magnitude=0.8, allow_infinity=False, allow_nan=False),
    st.floats(0.0, 2.0 * math.pi),
    st.complex_numbers(max_magnitude=0.95, allow_infinity=False, allow_nan=False),
)
def test_automorphism_maps_disc_into_disc(alpha, phase, z):
    m = disc_automorphism(complex(math.cos(phase), math.sin(phase)), alpha)
    assert abs(m(z)) < 1.0 + 1e-12


# ----------------------------------------------------------------- map_circle


def test_negation_fixes_centred_circle():
    image = map_circle(disc_automorphism(1.0, 0.0), Circle(0.0, 0.5))
    assert isinstance(image, Circle)
    assert image.center == pytest.approx(0.0)
    assert image.radius == pytest.approx(0.5)


def test_right_angle_circle_straightens_to_line_through_origin():
    a = 1j / (3 * SQRT2)
    m = MoebiusMap(1.0, a, 1.0, -a)
    image = map_circle(m, Circle(1.0 / (3 * SQRT2), 1.0 / 3.0))
    assert isinstance(image, Line)
    assert image.distance_to(0.0) < 1e-12


def test_map_circle_point_mapping_oracle():
    # independent check: 64 directly mapped points satisfy the image equation
    rng = np.random.default_rng(5)
    for _ in range(20):
        alpha = 0.6 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        omega = np.exp(2j * np.pi * rng.uniform())
        m = disc_automorphism(complex(omega), complex(alpha))
        r = rng.uniform(0.2, 0.8)
        image = map_circle(m, Circle(0.0, r))
        assert isinstance(image, Circle)
        assert abs(image.center) + image.radius < 1.0 + 1e-12
        pts = m(r * np.exp(2j * np.pi * np.arange(64) / 64))
        assert np.abs(np.abs(pts - image.center) - image.radius).max() < 1e-10


def test_map_line_to_circle_and_back():
    # an automorphism with a finite pole bends a segment-line into a circle
    m = disc_automorphism(1.0, 0.4 + 0.2j)
    line = Line(0.1, np.exp(0.3j))
    image = map_circle(m, line)
    assert isinstance(image, Circle)
    pts = m(line.sample_points(32, half_width=0.5))
    assert np.abs(np.abs(pts - image.center) - image.radius).max() < 1e-10


# ------------------------------------------- circle as an automorphism image


def test_automorphism_image_centred_circle():
    omega, alpha, r = circle_as_automorphism_image(Circle(0.0, 0.4))
    assert omega == pytest.approx(1.0)
    assert alpha == pytest.approx(0.0)
    assert r == pytest.approx(0.4)


def test_automorphism_image_forward_oracle():
    rng = np.random.default_rng(17)
    for _ in range(25):
        center = 0.5 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        radius = rng.uniform(0.05, 0.95 - abs(center) - 0.05)
        c = Circle(complex(center), radius)
        omega, alpha, r = circle_as_automorphism_image(c)
        assert 0.0 < r < 1.0
        phi = disc_automorphism(omega, alpha)
        mapped = phi(r * np.exp(2j * np.pi * np.arange(64) / 64))
        assert np.abs(np.abs(mapped - c.center) - c.radius).max() < 1e-10


def test_automorphism_image_rejects_outside_circle():
    with pytest.raises(CircleNotInsideDisc):
        circle_as_automorphism_image(Circle(0.9, 0.2))


# ------------------------------------------------------------- classification


def test_classify_concentric():
    cfg = classify_pair(Circle(0.0, 0.8), Circle(0.0, 0.2))
    assert cfg.kind is PairKind.INTERNALLY_DISJOINT


def test_classify_inverse_point_circles():
    cfg = classify_pair(Circle(3 / 5, 1 / 5), Circle(-3 / 5, 1 / 5))
    assert cfg.kind is PairKind.EXTERNALLY_DISJOINT


def test_classify_right_angle_pair():
    cfg = classify_pair(
        Circle(1 / (3 * SQRT2), 1 / 3), Circle(-1 / (3 * SQRT2), 1 / 3)
    )
    assert cfg.kind is PairKind.INTERSECTING
    assert cfg.angle == pytest.approx(math.pi / 2, abs=1e-12)


def test_classify_tangencies():
    ext = classify_pair(Circle(-0.3, 0.2), Circle(0.2, 0.3))
    assert ext.kind is PairKind.EXTERNALLY_TANGENT
    internal = classify_pair(Circle(0.0, 0.5), Circle(0.2, 0.3))
    assert internal.kind is PairKind.INTERNALLY_TANGENT


def test_classify_identical_circles():
    with pytest.raises(IdenticalCircles):
        classify_pair(Circle(0.1, 0.3), Circle(0.1, 0.3))


def test_intersection_angle_orthogonal_by_construction():
    # d^2 = r1^2 + r2^2 forces a right angle
    r1, r2 = 0.3, 0.25
    d = math.hypot(r1, r2)
    c1 = Circle(0.1, r1)
    c2 = Circle(0.1 + d * np.exp(1j * np.pi / 5), r2)
    assert intersection_angle(c1, c2) == pytest.approx(math.pi / 2, abs=1e-12)


def test_intersection_angle_monotone_to_zero_as_circles_separate():
    # numeric sweep on the obtuse branch (d past the orthogonal distance
    # sqrt(r1^2 + r2^2)): as d -> r1 + r2 the folded angle decreases to 0
    r1, r2 = 0.3, 0.2
    angles = []
    for d in np.linspace(0.37, 0.4999, 40):
        angles.append(intersection_angle(Circle(0.0, r1), Circle(d, r2)))
    assert all(a2 < a1 for a1, a2 in zip(angles, angles[1:]))
    assert angles[-1] < 0.05


def test_intersection_angle_requires_intersection():
    with pytest.raises(NotIntersecting):
        intersection_angle(Circle(0.0, 0.8), Circle(0.0, 0.2))


# ------------------------------------------------------------- angle classes


def test_classify_angle_half_pi():
    ac = classify_angle(math.pi / 2)
    assert isinstance(ac, RationalMultipleOfPi)
    assert (ac.p, ac.q) == (1, 2)


def test_classify_angle_presumed_irrational_with_bruteforce_oracle():
    theta = math.pi * (SQRT2 - 1.0)
    x = theta / math.pi
    # oracle: no fraction with denominator <= 64 approximates within 1e-9
    best = min(abs(x - round(x * q) / q) for q in range(1, 65))
    assert best > 1e-9
    ac = classify_angle(theta)
    assert isinstance(ac, PresumedIrrational)
    assert ac.best_residual > 1e-9


def test_classify_angle_near_rational_within_tolerance():
    ac = classify_angle(math.pi * (1.0 / 3.0 + 1e-15))
    assert isinstance(ac, RationalMultipleOfPi)
    assert (ac.p, ac.q) == (1, 3)


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (2, 5), (3, 7), (5, 64), (1, 1)])
def test_classify_angle_rational_soundness(p, q):
    ac = classify_angle(math.pi * p / q)
    assert isinstance(ac, RationalMultipleOfPi)
    assert math.gcd(ac.p, ac.q) == 1
    assert abs(math.pi * p / q * ac.q - ac.p * math.pi) <= 1e-9 * ac.q * math.pi


def test_classify_angle_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify_angle(0.0)
    with pytest.raises(ValueError):
        classify_angle(4.0)


# -------------------------------------------------------------- inverse points


def test_inverse_point_shared_by_mirrored_circles():
    z = math.sqrt(8.0) / 5.0
    assert inverse_point(z, Circle(3 / 5, 1 / 5)) == pytest.approx(-z)
    assert inverse_point(z, Circle(-3 / 5, 1 / 5)) == pytest.approx(-z)


def test_inverse_point_fixes_circle_points():
    c = Circle(0.2 + 0.1j, 0.35)
    for theta in (0.0, 1.1, 2.7, 4.4):
        z = c.point(theta)
        assert inverse_point(z, c) == pytest.approx(z)


def test_inverse_point_center_gives_infinity():
    assert is_point_at_infinity(inverse_point(0.3, Circle(0.3, 0.1)))


def test_inverse_point_involution_and_defining_relation():
    rng = np.random.default_rng(23)
    c = Circle(0.1 - 0.2j, 0.4)
    for _ in range(50):
        z = complex(rng.standard_normal(), rng.standard_normal())
        if abs(z - c.center) < 1e-3:
            continue
        w = inverse_point(z, c)
        assert inverse_point(w, c) == pytest.approx(z, abs=1e-10)
        relation = (z - c.center) * (w - c.center).conjugate()
        assert relation == pytest.approx(c.radius**2, abs=1e-10)


# -------------------------------------------------- conformal transport check


def test_classification_is_conformally_invariant():
    rng = np.random.default_rng(41)
    pairs = [
        (Circle(0.0, 0.6), Circle(0.05, 0.2)),  # internally disjoint
        (Circle(-0.4, 0.15), Circle(0.4, 0.2)),  # externally disjoint
        (Circle(0.0, 0.5), Circle(0.2, 0.3)),  # internally tangent
        (Circle(-0.3, 0.2), Circle(0.2, 0.3)),  # externally tangent
        (Circle(1 / (3 * SQRT2), 1 / 3), Circle(-1 / (3 * SQRT2), 1 / 3)),
    ]
    for c1, c2 in pairs:
        reference = classify_pair(c1, c2)
        for _ in range(20):
            alpha = 0.5 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            omega = np.exp(2j * np.pi * rng.uniform())
            m = disc_automorphism(complex(omega), complex(alpha))
            mapped = classify_pair(map_circle(m, c1), map_circle(m, c2))
            assert mapped.kind is reference.kind
            if reference.kind is PairKind.INTERSECTING:
                assert mapped.angle == pytest.approx(reference.angle, abs=1e-9)
