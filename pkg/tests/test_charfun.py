from fractions import Fraction

import pytest

from permchar import corpus
from permchar.charfun import (
    ClassFunction,
    atlas_string,
    decompose,
    fs_indicator,
    fs_indicator_brute,
    inner_product,
    perm_character,
    regular_character,
    trivial_character,
)
from permchar.classes import conjugacy_classes
from permchar.dixon import character_table
from permchar.group import sylow_2


def _ctx(family):
    G = corpus.build(family).group
    C = conjugacy_classes(G)
    T = character_table(G, C, name=family)
    return G, C, T


def test_perm_character_spec_examples():
    G, C, T = _ctx("s3")
    # H = G: all-ones
    pi = perm_character(G, G, C.reps)
    assert all(v == 1 for v in pi.values)
    # H = A3: values (2, 0, 2) on classes (1A, 2A, 3A)
    a3 = corpus.build("c3").group
    from permchar.group import PermGroup
    from permchar.perm import parse_permutation

    H = PermGroup([parse_permutation("(1,2,3)", 3)], 3)
    pi = perm_character(G, H, C.reps)
    assert [int(v.as_rational()) for v in pi.values] == [2, 0, 2]
    # permutation characters are rational, hence conjugation-fixed
    assert pi.is_rational_valued() and pi.is_real_valued()


def test_inner_product_and_row_norms():
    G, C, T = _ctx("s4")
    for row in T.rows:
        assert inner_product(row, row, T.sizes, T.order) == 1
    # transitive action: <pi, 1> = 1
    H = sylow_2(G)
    pi = perm_character(G, H, C.reps)
    assert inner_product(pi, trivial_character(T), T.sizes, T.order) == 1


def test_inner_product_length_mismatch():
    with pytest.raises(ValueError):
        inner_product(ClassFunction([1, 2]), ClassFunction([1]), [1], 1)


def test_decompose_regular_character():
    G, C, T = _ctx("s3")
    mults = decompose(regular_character(T), T)
    assert mults == T.degrees


def test_decompose_errors_on_non_character():
    G, C, T = _ctx("s3")
    bogus = ClassFunction([Fraction(1), Fraction(1), Fraction(0)])
    with pytest.raises(ValueError):
        decompose(bogus, T)


def test_column_reconstruction():
    G, C, T = _ctx("a5")
    H = G.pointwise_stabilizer([0])
    pi = perm_character(G, H, C.reps)
    mults = decompose(pi, T)  # recomposition is checked inside decompose
    assert sum(m * d for m, d in zip(mults, T.degrees)) == 5


def test_atlas_rendering():
    G, C, T = _ctx("s4")
    H = sylow_2(G)
    pi = perm_character(G, H, C.reps)
    assert atlas_string(decompose(pi, T), T) == "1a+2a"
    reg = decompose(regular_character(T), T)
    # multiplicity-2 renders with a doubled letter, 3 with tripled
    assert atlas_string(reg, T) == "1a+1b+2aa+3aaa+3bbb"


def test_fs_indicator_spec_examples():
    _, _, Tq8 = _ctx("q8")
    assert Tq8.fs_indicators() == [1, 1, 1, 1, -1]
    _, _, Ts3 = _ctx("s3")
    assert Ts3.fs_indicators() == [1, 1, 1]
    assert fs_indicator(trivial_character(Ts3), Ts3) == 1


@pytest.mark.parametrize("family", ["s3", "s4", "d10", "q8", "q16", "sl23", "a5",
                                    "c3q16", "f7_3", "f13_3", "c12", "agl1_27"])
def test_fs_indicator_brute_force_oracle(family):
    """Power-map formula equals the literal |G|^-1 sum chi(g^2)."""
    G = corpus.build(family).group
    assert G.order() <= 5000
    C = conjugacy_classes(G)
    T = character_table(G, C, name=family)
    emap = C.element_class_map()
    for i, row in enumerate(T.rows):
        nu = fs_indicator(row, T)
        assert nu == fs_indicator_brute(row, G, emap.__getitem__), (family, i)


@pytest.mark.parametrize("family", ["c3", "c15", "c21", "f7_3", "f13_3"])
def test_burnside_odd_order(family):
    G = corpus.build(family).group
    assert G.order() % 2 == 1
    C = conjugacy_classes(G)
    T = character_table(G, C)
    real_rows = [i for i, r in enumerate(T.rows) if r.is_real_valued()]
    assert real_rows == [0]
    assert all(nu == 0 for nu in T.fs_indicators()[1:])


def test_real_classes_spec_examples():
    # AGL(1,27): exactly 3 real classes
    G = corpus.build("agl1_27").group
    C = conjugacy_classes(G)
    T = character_table(G, C)
    real = T.real_class_indices()
    assert len(real) == 3
    assert real == C.real_class_indices()
    orders = sorted(T.orders[k] for k in real)
    assert orders == [1, 2, 3]  # identity, involutions, translations
    # D10: all 4 classes real
    G, C, T = _ctx("d10")
    assert T.real_class_indices() == [0, 1, 2, 3]
    assert C.real_class_indices() == [0, 1, 2, 3]


def test_real_classes_brute_force_inverse_conjugacy():
    """The table criterion agrees with literal g ~ g^-1 over all elements."""
    G = corpus.build("agl1_27").group
    C = conjugacy_classes(G)
    emap = C.element_class_map()
    from permchar.perm import inv_images

    real = set()
    for images, k in emap.items():
        if emap[inv_images(images)] == k:
            real.add(k)
        else:
            assert k not in C.real_class_indices()
    # classes where EVERY member's inverse stays inside
    assert sorted(k for k in real if C.inverse_map[k] == k) == C.real_class_indices()
