import pytest

from fusionkit.catalog import DEFAULT_PAIRS, build_group, build_pair, example_weakly_normal
from fusionkit.fusion import (
    Morphism,
    NormalPair,
    center_of_fusion_system,
    centralizer_subgroup_direct,
    is_fully_normalized,
)
from fusionkit.groups import center, centralizer, generate_subgroup, join, sylow_subgroup
from fusionkit.local import (
    PreconditionError,
    admissible_subgroups,
    centralizer_subgroup_local,
    chain_invariants,
    local_datum,
    local_k_groups,
    local_model,
    run_conjecture_52,
    run_conjecture_53,
    strongly_normalized_chain,
    verify_gross,
    verify_op_containment,
    verify_prop_hyp_containment,
    verify_theorem_b,
)


@pytest.fixture(scope="module")
def s4a4():
    return build_pair("pair:(sym:4, alt:4, 2)")


@pytest.fixture(scope="module")
def a4c2():
    return build_pair("pair:(product:(alt:4,cyclic:2), alt:4, 2)")


@pytest.fixture(scope="module")
def d8d8():
    return build_pair("pair:(dihedral:4, dihedral:4, 2)")


# -- local data ----------------------------------------------------------------------


def test_datum_at_top(a4c2):
    pr = a4c2
    d = local_datum(pr, pr.T)
    assert d.U_X is join(pr.T, centralizer(pr.S, pr.T))
    inner = {Morphism.conjugation(d.U_X, int(s)).images for s in pr.S}
    assert inner <= {k.images for k in d.K}
    assert d.D.S is pr.S


def test_datum_s4_a4(s4a4):
    d = local_datum(s4a4, s4a4.T)
    assert d.U_X is s4a4.T and d.U_X.order == 4
    assert d.D.S is s4a4.S and d.D.S.order == 8


def test_datum_with_centralizing_x(a4c2):
    pr = a4c2
    X = center(pr.G)
    assert X <= centralizer(pr.S, pr.T)
    d = local_datum(pr, pr.T, X)
    assert d.U_X.order == 8 and d.UX.order == 8


def test_datum_preconditions(s4a4):
    pr = s4a4
    G = pr.S.parent
    small = next(U for U in pr.E.subgroups() if U.order == 2)
    with pytest.raises(PreconditionError):
        local_datum(pr, small)
    outside = next(int(s) for s in pr.S if s not in centralizer(pr.S, pr.T))
    with pytest.raises(PreconditionError):
        local_datum(pr, pr.T, generate_subgroup(G, [outside]))


# -- local models ------------------------------------------------------------------------


def test_model_s4_a4(s4a4):
    m = local_model(s4a4, local_datum(s4a4, s4a4.T))
    assert m.Gmodel.order == 24 and m.Hmodel.order == 12
    assert center(m.Gmodel.whole).order == 1
    assert all(m.verification.values())


def test_model_degenerate_pair(d8d8):
    pr = d8d8
    m = local_model(pr, local_datum(pr, pr.S))
    assert m.Hmodel is m.Gmodel.whole
    assert m.Gmodel.order == 8


def test_model_a4c2(a4c2):
    m = local_model(a4c2, local_datum(a4c2, a4c2.T))
    assert m.Gmodel.order == 24 and m.Hmodel.order == 12
    assert center(m.Gmodel.whole).order == 2


# -- C and K --------------------------------------------------------------------------------


def test_k_groups_s4_a4(s4a4):
    m = local_model(s4a4, local_datum(s4a4, s4a4.T))
    kg = local_k_groups(s4a4, m)
    assert kg.C.order == 4 and kg.K.order == 1
    assert kg.identity_checked and kg.identity_holds


def test_k_groups_a4c2(a4c2):
    m = local_model(a4c2, local_datum(a4c2, a4c2.T))
    kg = local_k_groups(a4c2, m)
    assert kg.C.order == 8 and kg.K.order == 1
    assert kg.identity_holds


# -- chains ----------------------------------------------------------------------------------


def test_chain_at_top(s4a4):
    chain, bad = strongly_normalized_chain(s4a4, s4a4.T)
    assert bad is None and chain.subgroups == [s4a4.T] and chain.alpha is None


def test_chain_precondition(s4a4):
    U = next(P for P in s4a4.E.subgroups() if P.order == 2)
    with pytest.raises(PreconditionError):
        strongly_normalized_chain(s4a4, U)


def test_chain_in_s6():
    pr = build_pair("pair:(sym:6, alt:6, 2)")
    found = 0
    for U in admissible_subgroups(pr):
        chain, bad = strongly_normalized_chain(pr, U)
        assert bad is None
        assert chain.subgroups[-1] is pr.T
        assert chain_invariants(pr, chain)["constant"]
        found += 1
    assert found >= 2


def test_chain_for_weakly_normal_example():
    ex = example_weakly_normal()
    pr = NormalPair(ex.F, ex.E, "weakly-normal")
    assert is_fully_normalized(ex.F, ex.E.S)
    chain, bad = strongly_normalized_chain(pr, ex.E.S)
    assert bad is None and chain.subgroups == [ex.E.S]


# -- the intersection formula ------------------------------------------------------------------


def test_local_s4_a4(s4a4):
    res = centralizer_subgroup_local(s4a4)
    assert res["subgroup"].order == 1 and res["agree"]


def test_local_whole_system(d8d8):
    res = centralizer_subgroup_local(d8d8)
    assert res["subgroup"] is center_of_fusion_system(d8d8.F) and res["agree"]


def test_local_a4c2(a4c2):
    res = centralizer_subgroup_local(a4c2)
    assert res["subgroup"] is center(a4c2.G) and res["agree"]


@pytest.mark.parametrize("spec", DEFAULT_PAIRS)
def test_local_agrees_with_direct(spec):
    pr = build_pair(spec)
    direct = centralizer_subgroup_direct(pr.F, pr.E)
    res = centralizer_subgroup_local(pr, direct=direct)
    assert res["agree"]
    assert res["subgroup"].as_list() == direct.members


def test_admissible_family_lives_in_t(s4a4):
    fam = admissible_subgroups(s4a4)
    assert fam == [s4a4.T]
    wide = admissible_subgroups(s4a4, widen=True)
    assert s4a4.T in wide and s4a4.S in wide


def test_widened_family_is_reported_not_used(s4a4):
    res = centralizer_subgroup_local(s4a4, widen=True)
    assert res["agree"] and res["subgroup"].order == 1
    assert res["widened"] and all("error" in w for w in res["widened"])
    assert "widened" not in centralizer_subgroup_local(s4a4)


# -- verification suites -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "spec",
    ["pair:(sym:4, alt:4, 2)", "pair:(product:(alt:4,cyclic:2), alt:4, 2)", "pair:(sym:6, alt:6, 2)"],
)
def test_hyp_containment(spec):
    rep = verify_prop_hyp_containment(build_pair(spec))
    assert rep["ok"] and rep["hyp(C_F(T))"] == [0]


def test_gross_examples():
    rep = verify_gross(build_group("sym:4").whole, 2)
    # C_Aut(S4)(D8) is conjugation by Z(D8), a 2-group
    assert rep["applicable"] and rep["ok"] and rep["|C|"] == 2
    rep = verify_gross(build_group("dihedral:4").whole, 2)
    assert rep["applicable"] and rep["ok"]
    rep = verify_gross(build_group("sym:3").whole, 3)
    assert rep["applicable"] and rep["ok"] and rep["|C|"] == 3


def test_gross_not_applicable():
    rep = verify_gross(build_group("alt:5").whole, 2)
    assert rep == {"applicable": False, "ok": True, "order": 60}


def test_op_containment(s4a4):
    rep = verify_op_containment(s4a4)
    assert rep["applicable"] and rep["ok"]


def test_centralizer_bounds_examples(s4a4, a4c2, d8d8):
    rep = verify_theorem_b(s4a4)
    assert rep["ok"] and rep["C_S(E)"] == [0]
    rep = verify_theorem_b(a4c2)
    assert rep["ok"] and len(rep["C_S(E)"]) == 2 and rep["hyp(C_F(T))"] == [0]
    rep = verify_theorem_b(d8d8)
    assert rep["ok"] and rep["C_S(E)"] == center(d8d8.S).as_list()


# -- conjectures -----------------------------------------------------------------------------------


def test_conjectures_small(s4a4, a4c2):
    assert run_conjecture_52(s4a4)["verdict"] == "HOLDS"
    assert run_conjecture_52(a4c2)["verdict"] == "HOLDS"
    rep = run_conjecture_53(a4c2)
    assert rep["verdict"] == "HOLDS" and rep["p_power_index"]


def test_conjecture_on_whole_group_is_z_star():
    pr = build_pair("pair:(sym:4, sym:4, 2)")
    rep = run_conjecture_52(pr)
    assert rep["verdict"] == "HOLDS"
    assert rep["C_G(H)&S"] == center(pr.G).as_list()


def test_conjecture_skipped_with_p_prime_core():
    pr = build_pair("pair:(product:(sym:3,cyclic:3), sym:3, 2)")
    assert run_conjecture_52(pr)["verdict"] == "SKIPPED"


def test_sylow_fixture_consistency(s4a4):
    assert s4a4.S is sylow_subgroup(s4a4.G, 2)
