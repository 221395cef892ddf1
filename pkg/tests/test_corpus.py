import itertools

import pytest

from permchar import corpus
from permchar.group import is_subgroup
from permchar.perm import parse_permutation


@pytest.mark.parametrize("family,order,degree", [
    ("c1", 1, 1), ("c6", 6, 6), ("d10", 10, 5), ("d24", 24, 12),
    ("q8", 8, 8), ("q16", 16, 16), ("q48", 48, 48),
    ("s4", 24, 4), ("s6", 720, 6), ("a5", 60, 5), ("a6", 360, 6),
    ("f7_3", 21, 7), ("f13_3", 39, 13), ("f11_5", 55, 11),
    ("agl1_8", 56, 8), ("agl1_27", 702, 27), ("agl1_32", 992, 32),
    ("psl2_7", 168, 8), ("psl2_11", 660, 12), ("psl2_13", 1092, 14),
    ("psl3_2", 168, 7), ("psl3_3", 5616, 13),
    ("sl23", 24, 8), ("c3q16", 48, 19), ("a4c4", 48, 8),
    ("m11", 7920, 11), ("m22", 443520, 22), ("m23", 10200960, 23),
])
def test_family_orders_match_formulas(family, order, degree):
    cg = corpus.build(family)
    assert cg.group.order() == order
    assert cg.group.degree == degree


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        corpus.build("agl1_6")  # not a prime power
    with pytest.raises(ValueError):
        corpus.build("q10")  # not a multiple of 4
    with pytest.raises(ValueError):
        corpus.build("d9")  # odd order
    with pytest.raises(ValueError):
        corpus.build("frobnitz")
    with pytest.raises(ValueError):
        corpus.build("f7_4")  # 4 does not divide 6


def test_unknown_selector_message():
    cg = corpus.build("s4")
    with pytest.raises(ValueError) as err:
        cg.subgroup("nonsense")
    assert "sylow2" in str(err.value)


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49])
def test_field_arithmetic(q):
    F = corpus.GF(q)
    els = range(q)
    # multiplicative order of the generator
    o, y = 1, F.generator
    while y != F.one:
        y = F.mul(y, F.generator)
        o += 1
    assert o == q - 1
    # sampled associativity and distributivity
    import random

    rng = random.Random(0)
    for _ in range(60):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    # inverses exist for nonzero elements
    for a in range(q):
        if a == F.zero:
            continue
        assert any(F.mul(a, b) == F.one for b in els)


def test_field_size_bound():
    with pytest.raises(ValueError):
        corpus.GF(256)


def test_agl_subgroup_selectors():
    agl = corpus.build("agl1_27")
    G = agl.group
    h = agl.subgroup("h2p")
    assert h.order() == 6
    assert G.order() // h.order() == 117  # odd index
    f = agl.subgroup("f")
    assert f.order() == 27
    assert is_subgroup(h, G) and is_subgroup(f, G)
    # H meets the translation subgroup in order 3
    both = sum(1 for x in h.element_images_iter() if f.contains_images(x))
    assert both == 3
    assert agl.subgroup("fc13").order() == 351
    assert agl.subgroup("c13").order() == 13


def test_mathieu_selectors():
    m22 = corpus.build("m22")
    assert m22.subgroup("hexad").order() == 5760
    assert m22.subgroup("pair").order() == 1920
    m23 = corpus.build("m23")
    assert m23.subgroup("m22").order() == 443520
    assert m23.subgroup("pair").order() == 40320
    assert m23.subgroup("heptad").order() == 40320
    assert m23.subgroup("triad").order() == 5760
    assert corpus.build("m11").subgroup("s5").order() == 120


def test_group_file_round_trip(tmp_path):
    cg = corpus.build("s4")
    path = tmp_path / "s4.grp"
    corpus.save_group_file(path, cg.group, "s4")
    G = corpus.load_group_file(path)
    assert G.order() == 24 and G.degree == 4


def test_group_file_errors(tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("degree 4\n(1,2\n")
    with pytest.raises(ValueError) as err:
        corpus.load_group_file(bad)
    assert ":2:" in str(err.value)
    worse = tmp_path / "worse.grp"
    worse.write_text("# order: 999\ndegree 4\n(1,2)\n")
    with pytest.raises(AssertionError):
        corpus.load_group_file(worse)
    nodeg = tmp_path / "nodeg.grp"
    nodeg.write_text("(1,2)\n")
    with pytest.raises(ValueError):
        corpus.load_group_file(nodeg)


def test_generic_selectors():
    cg = corpus.build("a5")
    assert cg.subgroup("trivial").order() == 1
    assert cg.subgroup("whole").order() == 60
    assert cg.subgroup("point0").order() == 12
    assert cg.subgroup("sylow2").order() == 4
    assert "sylow2" in cg.subgroup_names()
