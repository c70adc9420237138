import pytest

import brute
from conftest import cyc, perms
from fusionkit.catalog import DEFAULT_GROUPS, DEFAULT_PAIRS, build_group, build_pair
from fusionkit.fusion import (
    CentralizerSystem,
    FullSubsystem,
    FusionError,
    GeneratedFusionSystem,
    Morphism,
    RealizedFusionSystem,
    TableFusionSystem,
    center_of_fusion_system,
    centralizer_subgroup_direct,
    centralizer_system,
    check_fusion_axioms,
    classify_pair,
    classify_subgroup,
    fusion_to_json,
    hyperfocal,
    hyperfocal_realized,
    intersect_fusion_systems,
    invariance_and_normality,
    is_fully_centralized,
    is_fully_normalized,
    is_saturated,
    is_strongly_closed,
    k_normalizer_system,
    normalizer_system,
    p_power_index_subsystem,
    same_system,
)
from fusionkit.groups import (
    center,
    centralizer,
    generate_subgroup,
    intersection,
    normalizer,
    residual_subgroup,
    sylow_subgroup,
)

# Brute-force values over all subgroups of S (tests/brute.py, frozen):
# |C_S(E)|, |C_G(H) & S|, |C_S(T)|, |Sub(S)|, sum_P |Hom_F(P, S)|, |O^p(C_G(T)) & S|
FROZEN = {
    "pair:(sym:4, alt:4, 2)": (1, 1, 4, 10, 28, 1),
    "pair:(product:(alt:4,cyclic:2), alt:4, 2)": (2, 2, 8, 16, 44, 1),
    "pair:(product:(sym:3,cyclic:3), sym:3, 3)": (3, 3, 9, 6, 10, 1),
    "pair:(sym:3, alt:3, 3)": (3, 3, 3, 2, 3, 1),
    "pair:(sym:4, sym:4, 2)": (1, 1, 2, 10, 28, 1),
    "pair:(dihedral:4, dihedral:4, 2)": (2, 2, 2, 10, 20, 1),
    "pair:(sym:5, alt:5, 2)": (1, 1, 4, 10, 28, 1),
    "pair:(sym:6, alt:6, 2)": (1, 1, 4, 35, 155, 1),
}


@pytest.fixture(scope="module")
def fs4():
    G = build_group("sym:4")
    S = sylow_subgroup(G, 2)
    return RealizedFusionSystem(G, S, 2)


@pytest.fixture(scope="module")
def fa4():
    G = build_group("alt:4")
    return RealizedFusionSystem(G, sylow_subgroup(G, 2), 2)


def klein_of(F):
    return residual_subgroup(F.parent, 2, "O_p")


def _pairs():
    return sorted(FROZEN)


@pytest.fixture(scope="module")
def pairs():
    return {spec: build_pair(spec) for spec in FROZEN}


# -- hom sets ----------------------------------------------------------------------


def test_aut_klein_in_s4(fs4):
    V = klein_of(fs4)
    assert V <= fs4.S
    assert len(fs4.hom_set(V, V)) == 6
    assert len(fs4.aut(V)) == 6


def test_trivial_source_has_one_hom(fs4):
    assert len(fs4.hom_set(fs4.parent.trivial, fs4.S)) == 1
    assert len(fs4.hom_set(fs4.parent.trivial, fs4.parent.trivial)) == 1


def test_aut_klein_in_a4(fa4):
    V = fa4.S
    assert V.order == 4
    assert len(fa4.aut(V)) == 3


def test_realized_witness(fs4):
    V = klein_of(fs4)
    for phi in fs4.aut(V):
        g = fs4.witness(phi)
        assert Morphism.conjugation(V, g).images == phi.images
        assert all(h >= g for h in fs4.G if Morphism.conjugation(V, h).images == phi.images)


@pytest.mark.parametrize("spec", _pairs())
def test_hom_totals_frozen(pairs, spec):
    F = pairs[spec].F
    subs = F.subgroups()
    assert len(subs) == FROZEN[spec][3]
    assert sum(len(F.homs(P)) for P in subs) == FROZEN[spec][4]


@pytest.mark.parametrize("spec", ["pair:(sym:4, alt:4, 2)", "pair:(product:(sym:3,cyclic:3), sym:3, 3)"])
def test_hom_sets_match_brute(pairs, spec):
    pr = pairs[spec]
    F = pr.F
    G, S = perms(pr.G), perms(pr.S)
    for P in F.subgroups():
        keys = sorted(perms(P))
        got = {
            tuple(F.parent.perm_of(phi.table[F.parent.index_of_perm(k)]) for k in keys)
            for phi in F.homs(P)
        }
        assert got == brute.homs(G, perms(P), S)


@pytest.mark.parametrize("spec", _pairs())
def test_aut_order_is_normalizer_quotient(pairs, spec):
    F = pairs[spec].F
    G = pairs[spec].G
    for P in F.subgroups():
        n = normalizer(G, P).order // centralizer(G, P).order
        assert len(F.aut(P)) == n
        # Aut_S(P) is a subgroup of Aut_F(P)
        assert len(F.aut(P)) % (normalizer(F.S, P).order // centralizer(F.S, P).order) == 0


def test_check_axioms_accepts_realized(fs4):
    assert check_fusion_axioms(fs4) == (True, None)


def test_check_axioms_rejects_missing_inner(fs4):
    table = {P.mask: {tuple(P.members.tolist())} for P in fs4.subgroups()}
    ok, why = check_fusion_axioms(TableFusionSystem(fs4.S, 2, table))
    assert not ok and "missing_inner" in why


def test_fusion_system_needs_p_group(s4):
    with pytest.raises(FusionError):
        RealizedFusionSystem(s4, s4.whole, 2)


def test_realized_needs_sylow(s4):
    V = residual_subgroup(s4, 2, "O_p")
    with pytest.raises(FusionError):
        RealizedFusionSystem(s4, V, 2)


# -- subgroup classification ---------------------------------------------------------


def test_classify_klein(fs4):
    st = classify_subgroup(fs4, klein_of(fs4))
    assert st.fully_normalized and st.fully_automized and st.receptive and st.F_centric


def test_classify_whole_s(fs4):
    st = classify_subgroup(fs4, fs4.S)
    assert st.fully_normalized and st.fully_centralized


def test_t_centric_in_a4(fa4):
    V = fa4.S
    assert classify_subgroup(fa4, V, T=V).T_centric


def test_non_fully_normalized_transposition(fs4):
    G = fs4.parent
    t = generate_subgroup(G, [G.index_of_perm(cyc(4, (1, 2)))])
    if t <= fs4.S:
        conj = fs4.conjugates(t)
        flags = [classify_subgroup(fs4, Q).fully_normalized for Q in conj]
        best = max(normalizer(fs4.S, Q).order for Q in conj)
        assert flags == [normalizer(fs4.S, Q).order == best for Q in conj]


# -- saturation ------------------------------------------------------------------------


def test_saturated_s4(fs4):
    ok, cert = is_saturated(fs4)
    assert ok and cert["classes"]


def test_inner_system_saturated(fs4):
    S = fs4.S
    assert is_saturated(RealizedFusionSystem(S, S, 2))[0]


@pytest.mark.parametrize("entry", DEFAULT_GROUPS, ids=lambda e: f"{e.spec}@{e.p}")
def test_every_catalog_system_saturated(entry):
    G = build_group(entry.spec)
    F = RealizedFusionSystem(G, sylow_subgroup(G, entry.p), entry.p)
    assert is_saturated(F)[0]


def test_unsaturated_system_detected(klein):
    # V4 with an involutory automorphism: Aut_S(S) = 1 is not Sylow in Aut_F(S)
    S = klein.whole
    a, b, c = S.members.tolist()[1:]
    swap = {0: 0, a: b, b: a, c: c}
    phi = Morphism(S, tuple(swap[m] for m in S.members.tolist()))
    F = GeneratedFusionSystem(S, 2, [phi])
    ok, cert = is_saturated(F)
    assert not ok and cert["failing_class"] == [S.as_list()]


# -- strong closure -----------------------------------------------------------------------


def test_strongly_closed_examples(fs4):
    G = fs4.parent
    V = klein_of(fs4)
    assert is_strongly_closed(fs4, V)
    assert is_strongly_closed(fs4, fs4.S)
    t = generate_subgroup(G, [G.index_of_perm(cyc(4, (1, 3)))])
    if not t <= fs4.S:
        t = generate_subgroup(G, [G.index_of_perm(cyc(4, (1, 2)))])
    assert t <= fs4.S
    assert not is_strongly_closed(fs4, t)


# -- normality --------------------------------------------------------------------------


def test_pair_levels(pair_s4a4):
    assert pair_s4a4.level == "normal"
    F = pair_s4a4.F
    assert invariance_and_normality(F, F) == ("normal", None)


def test_non_invariant_subsystem(fs4):
    V = klein_of(fs4)
    S = fs4.S
    other = next(P for P in fs4.subgroups() if P.order == 4 and P is not V and P is not centralizer(S, S))
    E = RealizedFusionSystem(other, other, 2)
    level, why = invariance_and_normality(fs4, E)
    assert level == "none" and why["reason"] == "T not strongly closed"


def test_inner_subsystem_of_normal_sylow_is_normal():
    # V is normal in A4, so F_V(V) is normal in F_V(A4)
    G = build_group("alt:4")
    V = sylow_subgroup(G, 2)
    F = RealizedFusionSystem(G, V, 2)
    E = RealizedFusionSystem(V, V, 2)
    assert invariance_and_normality(F, E)[0] == "normal"


def test_inner_system_of_d8_not_invariant_in_s4(fs4):
    S = fs4.S
    E = RealizedFusionSystem(S, S, 2)
    level, why = invariance_and_normality(fs4, E)
    assert level == "none" and why["reason"] == "twist not in E"


# -- centralizer systems -------------------------------------------------------------------


def test_centralizer_of_center_s4(fs4):
    Z = center(fs4.S)
    C = centralizer_system(fs4, Z)
    assert C.S is fs4.S
    assert same_system(C, RealizedFusionSystem(fs4.S, fs4.S, 2))


def test_centralizer_of_trivial_is_f(fs4):
    assert same_system(centralizer_system(fs4, fs4.parent.trivial), fs4)


def _centralizer_cases():
    out = []
    for spec, p in [("sym:4", 2), ("product:(alt:4,cyclic:2)", 2), ("sym:6", 2), ("product:(sym:3,sym:3)", 3), ("sym:5", 2)]:
        G = build_group(spec)
        S = sylow_subgroup(G, p)
        F = RealizedFusionSystem(G, S, p)
        xs = [P for P in F.subgroups() if P.order in (p, p * p)][:4]
        out.extend((F, X) for X in xs)
    return out


def test_centralizer_system_matches_realized():
    """Extension definition vs C_F(X) = F_{C_S(X)}(C_G(X)) for fully centralized X."""
    checked = set()
    for F, X in _centralizer_cases():
        C = CentralizerSystem(F, X)
        Y = C.X
        R = RealizedFusionSystem(centralizer(F.G, Y), centralizer(F.S, Y), F.p)
        assert same_system(C, R), (F, X)
        checked.add(id(F))
    assert len(checked) >= 5


def test_centralizer_system_substitutes(fs4):
    G = fs4.parent
    S = fs4.S
    for P in fs4.subgroups():
        C = CentralizerSystem(fs4, P)
        if C.substituted is not None:
            X, Y = C.substituted
            assert X is P and Y in fs4.conjugates(P)
            assert centralizer(S, Y).order > centralizer(S, X).order
            break
    else:
        pytest.fail("expected a subgroup that is not fully centralized")
    assert G is fs4.parent


# -- K-normalizers ------------------------------------------------------------------------


@pytest.mark.parametrize("spec,p", [("sym:4", 2), ("product:(sym:3,sym:3)", 3), ("sym:5", 2)])
def test_k_normalizer_specializations(spec, p):
    G = build_group(spec)
    F = RealizedFusionSystem(G, sylow_subgroup(G, p), p)
    n_full = n_ident = 0
    for R in F.subgroups():
        if is_fully_normalized(F, R):
            full = k_normalizer_system(F, R, F.aut(R))
            NR = RealizedFusionSystem(normalizer(G.whole, R), normalizer(F.S, R), p)
            assert same_system(full, NR)
            n_full += 1
        if is_fully_centralized(F, R):
            ident = k_normalizer_system(F, R, [Morphism.identity(R)])
            assert same_system(ident, CentralizerSystem(F, R))
            n_ident += 1
    assert n_full and n_ident


def test_normalizer_of_klein_in_s4(fs4):
    V = klein_of(fs4)
    N = normalizer_system(fs4, V)
    assert N.S is fs4.S
    assert same_system(N, fs4)


def test_k_must_be_closed(fs4):
    V = klein_of(fs4)
    non_id = [a for a in fs4.aut(V) if a.order() == 3][:1]
    with pytest.raises(FusionError):
        k_normalizer_system(fs4, V, non_id)


# -- intersections ----------------------------------------------------------------------


def test_intersections(fs4):
    assert same_system(intersect_fusion_systems(fs4, fs4), fs4)
    inner = RealizedFusionSystem(fs4.S, fs4.S, 2)
    assert same_system(intersect_fusion_systems(inner, fs4), inner)


# -- direct centralizer and center -----------------------------------------------------------


@pytest.mark.parametrize("spec", _pairs())
def test_direct_centralizer_frozen(pairs, spec):
    pr = pairs[spec]
    d = centralizer_subgroup_direct(pr.F, pr.E)
    assert d.is_subgroup
    assert len(d.members) == FROZEN[spec][0]
    assert centralizer(pr.S, pr.T).order == FROZEN[spec][2]
    assert d.subgroup is intersection(centralizer(pr.G, pr.H), pr.S)
    assert d.subgroup.order == FROZEN[spec][1]


@pytest.mark.parametrize("spec", ["pair:(sym:4, alt:4, 2)", "pair:(product:(alt:4,cyclic:2), alt:4, 2)"])
def test_direct_centralizer_matches_brute_live(pairs, spec):
    pr = pairs[spec]
    d = centralizer_subgroup_direct(pr.F, pr.E)
    want = brute.direct_centralizer_set(perms(pr.G), perms(pr.S), perms(pr.H), perms(pr.T), pr.p)
    assert perms(d.subgroup) == want


def test_direct_centralizer_self_is_center(pairs):
    for spec in ("pair:(sym:4, sym:4, 2)", "pair:(dihedral:4, dihedral:4, 2)"):
        pr = pairs[spec]
        assert centralizer_subgroup_direct(pr.F, pr.F).subgroup is center_of_fusion_system(pr.F)


def test_inner_normal_subsystem_centralizer():
    G = build_group("dihedral:4")
    S = G.whole
    F = RealizedFusionSystem(S, S, 2)
    for T in F.subgroups():
        if not is_strongly_closed(F, T) or T.order < 2:
            continue
        E = RealizedFusionSystem(T, T, 2)
        d = centralizer_subgroup_direct(F, E)
        assert d.subgroup is centralizer(S, T)


def test_center_examples(fs4):
    assert center_of_fusion_system(fs4).order == 1
    inner = RealizedFusionSystem(fs4.S, fs4.S, 2)
    assert center_of_fusion_system(inner) is center(fs4.S)
    G = build_group("product:(alt:4,cyclic:2)")
    F = RealizedFusionSystem(G, sylow_subgroup(G, 2), 2)
    Z = center_of_fusion_system(F)
    assert Z.order == 2 and Z is center(G.whole)


# -- hyperfocal -------------------------------------------------------------------------


def test_hyperfocal_examples(fs4, fa4):
    assert hyperfocal(fs4) is klein_of(fs4)
    assert hyperfocal(RealizedFusionSystem(fs4.S, fs4.S, 2)).order == 1
    assert hyperfocal(fa4) is fa4.S


@pytest.mark.parametrize("entry", DEFAULT_GROUPS, ids=lambda e: f"{e.spec}@{e.p}")
def test_hyperfocal_oracle(entry):
    G = build_group(entry.spec)
    S = sylow_subgroup(G, entry.p)
    F = RealizedFusionSystem(G, S, entry.p)
    assert hyperfocal(F) is hyperfocal_realized(G, S, entry.p)


# -- p-power index --------------------------------------------------------------------------


def test_p_power_index_top(fs4):
    FR = p_power_index_subsystem(fs4, fs4.S)
    assert same_system(FR, fs4)
    assert FR.report["saturated"] and FR.report["index_property"]


def test_p_power_index_hyperfocal(fs4):
    V = hyperfocal(fs4)
    FR = p_power_index_subsystem(fs4, V)
    A4 = residual_subgroup(fs4.parent, 2, "O^p")
    assert same_system(FR, RealizedFusionSystem(A4, V, 2))


def test_p_power_index_inner(fs4):
    S = fs4.S
    inner = RealizedFusionSystem(S, S, 2)
    for R in inner.subgroups():
        FR = p_power_index_subsystem(inner, R, verify=False)
        assert same_system(FR, RealizedFusionSystem(R, R, 2))


def test_p_power_index_requires_hyperfocal(fs4):
    with pytest.raises(FusionError):
        p_power_index_subsystem(fs4, center(fs4.S))


# -- misc -------------------------------------------------------------------------------------


def test_restriction_and_json(fs4):
    V = klein_of(fs4)
    R = FullSubsystem(fs4, V)
    assert len(R.aut(V)) == 6
    data = fusion_to_json(fs4)
    assert data["p"] == 2 and len(data["objects"]) == 10
    assert len(data["homs"]) == 28


def test_classify_pair_round_trip(pair_a4c2):
    pr = classify_pair(pair_a4c2.F, pair_a4c2.E)
    assert pr.level == "normal" and pr.witness is None


def test_default_pairs_are_normal():
    assert len(DEFAULT_PAIRS) >= 6
    for spec in DEFAULT_PAIRS:
        assert build_pair(spec).level == "normal"
