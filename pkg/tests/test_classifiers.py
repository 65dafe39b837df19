import math
import random

import pytest

from borderwalk import (
    InvalidPointError,
    SUBJECT_NAMES,
    UnknownSubjectError,
    class_mass,
    constant_executor,
    make_subject,
    random_point,
    subject_schema,
)

TWO_PI = 2 * math.pi
DOMAIN_AREA = TWO_PI * 2.0


def sin2_oracle(x, y):
    s = math.sin(x)
    if y > s + 0.3:
        return "blue"
    if y < s - 0.3:
        return "red"
    return "black"


def test_sin2_examples():
    e = make_subject("sin2")
    assert e.classify((math.pi, 0.9)) == "blue" == sin2_oracle(math.pi, 0.9)
    assert e.classify((math.pi, 0.0)) == "black" == sin2_oracle(math.pi, 0.0)
    assert e.classify((math.pi, -0.9)) == "red" == sin2_oracle(math.pi, -0.9)


def test_sin2_matches_oracle_everywhere():
    e = make_subject("sin2")
    rng = random.Random(88)
    for _ in range(3000):
        p = random_point(e.schema, rng)
        assert e.classify(p) == sin2_oracle(float(p[0]), float(p[1]))


def test_execution_counter():
    e = make_subject("box1")
    before = e.executions
    e.classify((0.1, -0.9))
    e.classify((0.1, -0.9))
    assert e.executions == before + 2


def test_invalid_point_rejected_without_counting():
    e = make_subject("box1")
    with pytest.raises(InvalidPointError):
        e.classify((99.0, 0.0))
    assert e.executions == 0


def test_box1_point_in_rectangle():
    e = make_subject("box1")
    assert e.classify((0.1, -0.9)) == "outside"
    assert e.classify((math.pi, 0.0)) == "inside"


def test_circle1_center_inside():
    e = make_subject("circle1")
    assert e.classify((math.pi, 0.0)) == "inside"


def test_line1_sides_differ():
    e = make_subject("line1")
    # sign of y - 0.3*(x - pi) decides the side
    for x in (0.5, math.pi, 5.0):
        lo = e.classify((x, max(-1.0, 0.3 * (x - math.pi) - 0.5)))
        hi = e.classify((x, min(1.0, 0.3 * (x - math.pi) + 0.5)))
        assert lo != hi


def test_unknown_subject():
    with pytest.raises(UnknownSubjectError):
        make_subject("pentagon")
    with pytest.raises(UnknownSubjectError):
        class_mass("pentagon", 10, random.Random(0))


def test_determinism_all_subjects():
    rng = random.Random(555)
    for name in SUBJECT_NAMES:
        e = make_subject(name)
        pts = [random_point(e.schema, rng) for _ in range(1000)]
        first = [e.classify(p) for p in pts]
        again = [e.classify(p) for p in pts]
        assert first == again


def test_every_point_gets_exactly_one_label():
    rng = random.Random(556)
    for name in SUBJECT_NAMES:
        e = make_subject(name)
        for _ in range(300):
            label = e.classify(random_point(e.schema, rng))
            assert isinstance(label, str) and label


def test_class_mass_sums_to_one():
    for name in SUBJECT_NAMES:
        masses = class_mass(name, 20_000, random.Random(9))
        assert sum(masses.values()) == pytest.approx(1.0, abs=1e-9)


def test_class_mass_deterministic():
    assert class_mass("circle2", 5000, random.Random(4)) == class_mass(
        "circle2", 5000, random.Random(4)
    )


def test_box1_mass_matches_area_ratio():
    # default rectangle [pi/2, 3pi/2] x [-0.5, 0.5]
    exact = (math.pi * 1.0) / DOMAIN_AREA
    n = 1_000_000
    masses = class_mass("box1", n, random.Random(42))
    sigma = math.sqrt(exact * (1 - exact) / n)
    assert abs(masses["inside"] - exact) <= 3 * sigma


def test_sin1_masses_symmetric():
    n = 1_000_000
    masses = class_mass("sin1", n, random.Random(43))
    sigma = math.sqrt(0.25 / n)
    assert abs(masses["above"] - 0.5) <= 3 * sigma
    assert abs(masses["below"] - 0.5) <= 3 * sigma


def test_geometry_override():
    wide = make_subject("circle1")
    tight = make_subject("circle1", r=0.5)
    probe = (math.pi + 0.6, 0.0)
    assert wide.classify(probe) == "inside"
    assert tight.classify(probe) == "outside"


def test_constant_executor():
    e = constant_executor(subject_schema(), "same")
    rng = random.Random(2)
    assert {e.classify(random_point(e.schema, rng)) for _ in range(50)} == {"same"}


def test_subject_schema_shape():
    schema = subject_schema()
    assert len(schema.features) == 2
    assert schema.features[0].hi == pytest.approx(TWO_PI)
    assert schema.features[1].lo == -1.0
    assert schema.features[0].step == 0.2
