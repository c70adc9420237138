import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from conftest import cyc, perms
from fusionkit.caps import CapError, Caps, set_caps
from fusionkit.catalog import build_group
from fusionkit.groups import (
    GroupError,
    GroupTable,
    automorphism_group,
    center,
    centralizer,
    generate_subgroup,
    is_normal,
    local_subgroup,
    normalizer,
    quotient_group,
    residual_subgroup,
    structure_predicates,
    subgroups_of_p_group,
    sylow_subgroup,
)


def idx(G, *cycles):
    return G.index_of_perm(cyc(len(G.perm_of(0)), *cycles))


# -- generate_subgroup ----------------------------------------------------------


def test_generate_dihedral_in_s4(s4):
    D = generate_subgroup(s4, [idx(s4, (1, 2, 3, 4)), idx(s4, (1, 3))])
    assert D.order == 8
    oracle = brute.closure([cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3))], 4)
    assert perms(D) == oracle


def test_generate_empty_is_trivial(s4, a4):
    assert generate_subgroup(s4, []).order == 1
    assert generate_subgroup(a4, []) is a4.trivial


def test_generate_klein_in_a4(a4):
    V = generate_subgroup(a4, [idx(a4, (1, 2), (3, 4)), idx(a4, (1, 3), (2, 4))])
    assert V.order == 4


def test_subgroups_are_interned(s4):
    a = generate_subgroup(s4, [idx(s4, (1, 2))])
    b = s4.subgroup(list(a.members))
    assert a is b


# -- local subgroups ---------------------------------------------------------------


def test_centralizer_of_a3_in_s3(s3):
    A3 = residual_subgroup(s3, 3, "O_p")
    C = local_subgroup(s3, s3.whole, A3, "centralizer")
    assert C is A3 and C.order == 3


def test_centralizer_of_trivial_is_ambient(s4):
    D = sylow_subgroup(s4, 2)
    assert local_subgroup(s4, D, s4.trivial, "centralizer") is D


def test_centralizer_of_klein_in_d8(s4):
    D = sylow_subgroup(s4, 2)
    V = residual_subgroup(s4, 2, "O_p")
    assert V.order == 4 and V <= D
    assert local_subgroup(s4, D, V, "centralizer") is V


def test_local_subgroup_rejects_bad_kind(s4):
    with pytest.raises(ValueError):
        local_subgroup(s4, s4.whole, s4.trivial, "core")


# -- Sylow ----------------------------------------------------------------------


def test_sylow_orders(s4):
    assert sylow_subgroup(s4, 2).order == 8
    assert sylow_subgroup(build_group("cyclic:5"), 2).order == 1
    assert sylow_subgroup(build_group("alt:6"), 2).order == 8


@pytest.mark.parametrize("spec,p", [("sym:4", 3), ("sym:5", 2), ("alt:5", 5), ("dihedral:6", 3)])
def test_sylow_is_p_group_of_full_order(spec, p):
    G = build_group(spec)
    P = sylow_subgroup(G, p)
    assert P.is_p_group(p)
    assert P.order == brute.p_part(G.order, p)


# -- residuals --------------------------------------------------------------------


def test_residual_examples(s4, s3):
    A4 = residual_subgroup(s4, 2, "O^p")
    assert A4.order == 12
    assert all(sum(1 for i, x in enumerate(p) if i != x) in (0, 3, 4) for p in perms(A4))
    assert residual_subgroup(s3, 2, "O_p'").order == 3
    assert residual_subgroup(build_group("cyclic:5"), 2, "O_p").order == 1


@pytest.mark.parametrize(
    "spec,p",
    [("sym:4", 2), ("sym:4", 3), ("alt:4", 2), ("dihedral:6", 2), ("product:(sym:3,cyclic:3)", 3)],
)
def test_residuals_match_brute(spec, p):
    G = build_group(spec)
    n = len(G.perm_of(0))
    elems = perms(G.whole)
    assert perms(residual_subgroup(G, p, "O^p")) == brute.o_p(elems, p, n)
    assert perms(residual_subgroup(G, p, "O_p'")) == brute.o_p_prime_core(elems, p, n)


def test_residual_rejects_unknown_kind(s4):
    with pytest.raises(ValueError):
        residual_subgroup(s4, 2, "O_q")


# -- quotients -------------------------------------------------------------------


def test_quotient_s4_by_klein_is_s3(s4):
    V = residual_subgroup(s4, 2, "O_p")
    Q, proj = quotient_group(s4, V)
    assert Q.order == 6
    assert center(Q.whole).order == 1  # nonabelian of order 6
    assert proj[0] == 0


def test_quotient_by_trivial_is_copy(s3):
    Q, _ = quotient_group(s3, s3.trivial)
    assert Q.order == 6
    assert sorted(Q.element_orders.tolist()) == sorted(s3.element_orders.tolist())


def test_quotient_a4_by_klein_is_c3(a4):
    Q, _ = quotient_group(a4, residual_subgroup(a4, 2, "O_p"))
    assert Q.order == 3


def test_quotient_rejects_non_normal(s4):
    with pytest.raises(GroupError):
        quotient_group(s4, generate_subgroup(s4, [idx(s4, (1, 2))]))


# -- automorphisms ---------------------------------------------------------------


def test_automorphism_group_examples(klein, s3):
    assert automorphism_group(klein).order == 6
    assert automorphism_group(build_group("cyclic:2")).order == 1
    assert automorphism_group(s3).order == 6


def test_automorphism_cap(s4):
    with pytest.raises(CapError):
        automorphism_group(s4, cap=10)


def test_aut_d8_is_d8():
    D8 = build_group("dihedral:4")
    A = automorphism_group(D8)
    assert A.order == 8


# -- structure --------------------------------------------------------------------


def test_structure_predicates_examples(s3, s4):
    r = structure_predicates(s3, 2)
    assert r.has_normal_p_complement
    r = structure_predicates(s4, 2)
    assert r.is_p_constrained and r.O_p_prime_trivial
    D8 = build_group("dihedral:4")
    r = structure_predicates(D8, 2)
    assert r.has_normal_p_complement and r.is_p_constrained and r.O_p_prime_trivial


def test_a5_not_constrained():
    r = structure_predicates(build_group("alt:5"), 2)
    assert r.O_p_prime_trivial and r.is_p_constrained is False


# -- p-group subgroup lattice ------------------------------------------------------


@pytest.mark.parametrize(
    "spec,p,count",
    [("sym:4", 2, 10), ("product:(alt:4,cyclic:2)", 2, 16), ("product:(sym:3,cyclic:3)", 3, 6)],
)
def test_subgroup_counts_match_brute(spec, p, count):
    G = build_group(spec)
    S = sylow_subgroup(G, p)
    subs = subgroups_of_p_group(S, p)
    n = len(G.perm_of(0))
    assert len(subs) == count
    assert {perms(P) for P in subs} == brute.all_subgroups(perms(S), n)


def test_subgroup_enumeration_rejects_non_p_group(s4):
    with pytest.raises(GroupError):
        subgroups_of_p_group(s4.whole, 2)


# -- constructors and caps -----------------------------------------------------------


def test_from_table_relabels_identity():
    # C_3 with the identity stored at position 2
    rows = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = GroupTable.from_table(rows)
    assert G.order == 3 and G.verify()


def test_bad_tables_rejected():
    with pytest.raises(GroupError):
        GroupTable(np.array([[0, 1], [1, 1]]))
    with pytest.raises(GroupError):
        GroupTable.from_permutations([(0, 0, 1)], 3)
    with pytest.raises(GroupError):
        GroupTable.from_permutation_set([(0, 1, 2), (1, 2, 0)])


def test_order_cap():
    old = set_caps(Caps(max_group_order=100))
    try:
        with pytest.raises(CapError):
            build_group("sym:5")
    finally:
        set_caps(old)


def test_element_orders_match_brute(s4):
    for x in range(s4.order):
        assert s4.element_orders[x] == brute.order_of(s4.perm_of(x))


# -- properties --------------------------------------------------------------------


S5 = build_group("sym:5")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 119), max_size=3))
def test_generated_subgroup_matches_closure(gens):
    H = generate_subgroup(S5, gens)
    assert perms(H) == brute.closure([S5.perm_of(g) for g in gens], 5)
    assert S5.order % H.order == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 119), min_size=1, max_size=2))
def test_centralizer_normalizer_match_brute(gens):
    H = generate_subgroup(S5, gens)
    G = perms(S5.whole)
    X = perms(H)
    assert perms(centralizer(S5.whole, H)) == brute.centralizer(G, X)
    N = normalizer(S5.whole, H)
    assert perms(N) == brute.normalizer(G, X)
    assert is_normal(H, N)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 119), st.integers(0, 119))
def test_multiplication_is_left_to_right(a, b):
    assert S5.perm_of(int(S5.mult[a, b])) == brute.mul(S5.perm_of(a), S5.perm_of(b))
