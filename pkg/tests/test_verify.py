import pytest

from permchar import corpus, verify
from permchar.group import PermGroup
from permchar.perm import parse_permutation


@pytest.fixture(scope="module", autouse=True)
def _fresh_cache():
    verify.clear_context_cache()
    yield


def test_theorem_A_odd_order_frobenius():
    ctx = verify.context("f7_3")
    H = PermGroup([ctx.group.generators[1]], ctx.group.degree)
    assert H.order() == 3
    r = verify.check_theorem_A(ctx, H, "c3")
    assert r.passed
    assert r.hypotheses["index_of_core_odd"] is True
    assert r.conclusion["unique"] is True
    assert r.conclusion["plus_type_real_constituents"] == ["1a"]


def test_theorem_A_s4_d8():
    ctx = verify.context("s4")
    r = verify.check_theorem_A(ctx, ctx.subgroup("sylow2"), "d8")
    assert r.passed
    assert r.conclusion["core_index"] == 6
    assert r.conclusion["plus_type_real_constituents"] == ["1a", "2a"]


def test_theorem_A_d10_sylow():
    ctx = verify.context("d10")
    r = verify.check_theorem_A(ctx, ctx.subgroup("sylow2"), "syl2")
    assert r.passed
    assert len(r.conclusion["plus_type_real_constituents"]) == 3


def test_theorem_B_psl32_s4():
    ctx = verify.context("psl3_2")
    r = verify.check_theorem_B(ctx, ctx.subgroup("point"), "s4")
    assert r.passed
    assert all(r.hypotheses.values())
    assert r.conclusion["nontrivial_real_odd_multiplicity_exists"]
    assert any(w["constituent"] == "6a" and w["multiplicity"] == 1 for w in r.witnesses)


def test_theorem_B_s4_d8():
    ctx = verify.context("s4")
    r = verify.check_theorem_B(ctx, ctx.subgroup("sylow2"), "d8")
    assert r.passed and r.conclusion["nontrivial_real_odd_multiplicity_exists"]


def test_theorem_B_agl_counterexample():
    """Hypothesis failure: conclusion false, theta multiplicity exactly 4
    (even) and theta rational-valued."""
    ctx = verify.context("agl1_27")
    H = ctx.subgroup("h2p")
    r = verify.check_theorem_B(ctx, H, "h2p")
    assert r.passed
    assert r.hypotheses["o2prime_times_H_covers_G"] is False
    assert r.conclusion["nontrivial_real_odd_multiplicity_exists"] is False
    pi, mults = ctx.decompose_perm_character(H)
    theta_rows = [i for i, d in enumerate(ctx.table.degrees) if d == 26]
    assert len(theta_rows) == 1
    theta = theta_rows[0]
    assert mults[theta] == 4
    assert ctx.table.rows[theta].is_rational_valued()
    # a closed form in q would give (27^2-1)/2 = 364, which exceeds the
    # character degree; the honest value is (3^2-1)/2 = 4 (closed form in p)
    assert mults[theta] != 364


@pytest.mark.parametrize("family", ["c6", "s4", "a5", "psl3_2", "agl1_27", "q8", "sl23",
                                    "d10", "q16", "a4", "c3q16", "f7_3", "f13_3", "a4c4"])
def test_theorem_D_equivalence(family):
    r = verify.check_theorem_D(verify.context(family))
    assert r.passed, r.render()


def test_theorem_D_witness_details():
    r = verify.check_theorem_D(verify.context("s4"))
    c = r.conclusion
    assert c["i_sylow2_normal"] is False
    assert c["ii_no_nontrivial_real_odd_order"] is False
    assert c["iv_every_real_odd_normalizes_some_sylow2"] is False
    assert c["iii_2brauer"] == "out of scope"
    # 3-cycles permute the three Sylow 2-subgroups without fixing any
    assert [w["normalized_sylow_count"] for w in r.witnesses] == [0]
    r5 = verify.check_theorem_D(verify.context("a5"))
    counts = {w["real_odd_class_order"]: w["normalized_sylow_count"] for w in r5.witnesses}
    assert counts[5] == 0  # 5-cycles normalize no Sylow 2-subgroup
    assert counts[3] % 2 == 0  # parity from the Brauer-character argument


def test_simple_sylow_avoidance():
    for fam in ["a5", "psl3_2", "m11"]:
        r = verify.check_simple_sylow_avoidance(verify.context(fam))
        assert r.passed, fam


def test_real_coverage_lemma():
    ctx = verify.context("s4")
    # H = <(1,2,3,4)>: several odd-multiplicity real constituents, vacuous
    H = PermGroup([parse_permutation("(1,2,3,4)", 4)], 4)
    r = verify.check_real_coverage(ctx, H, "c4")
    assert r.passed
    assert r.hypotheses["unique_odd_multiplicity_real_constituent"] is False
    # H = G: trivially covered
    r2 = verify.check_real_coverage(ctx, ctx.group, "whole")
    assert r2.passed
    assert r2.conclusion["real_classes_missed_by_H"] == []


def test_lemma_bob_small_sweep():
    for fam in ["s4", "a5", "d12", "sl23"]:
        ctx = verify.context(fam)
        for name, H in verify.sample_subgroups(ctx.group, seed=3, budget=8):
            r = verify.check_lemma_bob(ctx, H, name)
            assert r.passed, r.render()


def test_lemma_bob_regular_character_case():
    """Trivial H: odd-degree real rows must be orthogonal type."""
    for fam in ["s4", "q8", "sl23", "a5"]:
        ctx = verify.context(fam)
        from permchar.group import trivial_group

        r = verify.check_lemma_bob(ctx, trivial_group(ctx.group.degree), "trivial")
        assert r.passed, r.render()


def test_theorem_4_6_named_instances():
    ctx = verify.context("s4")
    r = verify.check_theorem_4_6(ctx, ctx.subgroup("sylow2"), "d8", maximal=True)
    assert r.passed
    assert r.hypotheses["i_even_index"] is False  # index 3
    assert r.hypotheses["iv_maximal_with_even_core_quotient"] is True
    assert r.conclusion["nontrivial_real_odd_multiplicity_exists"]


def test_burnside_checker():
    assert verify.check_burnside(verify.context("c15")).passed
    assert verify.check_burnside(verify.context("f13_3")).passed
    r = verify.check_burnside(verify.context("s3"))
    assert r.passed  # vacuous: even order
    assert r.hypotheses["odd_order"] is False


def test_c3q16_phenomenon():
    r = verify.check_c3q16_phenomenon()
    assert r.passed
    assert r.conclusion["per_candidate"]["c3q16"]["exhibits"] is False
    assert r.conclusion["per_candidate"]["a4c4"]["exhibits"] is True
    assert r.conclusion["per_candidate"]["a4c4"]["index"] == 3


def test_sweep_runner_small():
    result = verify.theorem_a_sweep(families=["s3", "s4", "d10"], seed=0,
                                    min_pairs=5, per_group=4)
    assert result["pairs"] >= 5
    assert not result["failures"]
    statements = {r.statement for r in result["reports"]}
    assert "theorem-A" in statements and "lemma-plus-type" in statements


def test_report_json_shape():
    r = verify.check_burnside(verify.context("c15"))
    js = r.to_json()
    assert set(js) == {"statement", "group", "subgroup", "hypotheses",
                       "conclusion", "witnesses", "pass", "notes"}
    assert js["pass"] is True


def test_lemma_4_2_restriction_property():
    """G/N odd: real chi restricts to real constituents; real theta below
    has a unique real chi above it."""
    from permchar.charfun import inner_product, restriction_values
    from permchar.classes import conjugacy_classes
    from permchar.dixon import character_table
    from permchar.group import o_2prime

    for fam in ["c6", "f7_3", "agl1_27", "c21"]:
        ctx = verify.context(fam)
        G = ctx.group
        N = o_2prime(G)
        if N.order() in (1, G.order()):
            N = None
        if fam == "f7_3":
            N = PermGroup([G.generators[0]], G.degree)  # C7 normal
        if fam == "c21":
            N = PermGroup([G.generators[0] ** 3], G.degree)
        if N is None or N.order() in (1, G.order()):
            continue
        assert (G.order() // N.order()) % 2 == 1
        NC = conjugacy_classes(N)
        NT = character_table(N)
        fusion = [ctx.classes.class_of(r) for r in NC.reps]
        for chi in ctx.table.rows:
            rest = restriction_values(chi, fusion)
            mults = [
                inner_product(rest, theta, NT.sizes, NT.order) for theta in NT.rows
            ]
            if chi.is_real_valued():
                for m, theta in zip(mults, NT.rows):
                    if m != 0:
                        assert theta.is_real_valued()
        for j, theta in enumerate(NT.rows):
            if not theta.is_real_valued():
                continue
            above_real = [
                i
                for i, chi in enumerate(ctx.table.rows)
                if chi.is_real_valued()
                and inner_product(restriction_values(chi, fusion), theta, NT.sizes, NT.order) != 0
            ]
            assert len(above_real) == 1, (fam, j)
