"""Local analysis of a normal pair: U_X, K, D(U,X), local models, chains,
and the intersection formula for ``C_S(E)``.

Everything here is for pairs realized by groups ``H <= G``.  A local model
is built as ``N / O_{p'}(N)`` with ``N = N_G(U_X) & N_G(UX)`` (the elements
whose conjugation on ``U_X`` lies in K) and then checked axiom by axiom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fusion import (
    FusionError,
    Morphism,
    RealizedFusionSystem,
    centralizer_subgroup_direct,
    centralizer_system,
    hyperfocal,
    is_fully_normalized,
    is_subsystem,
    is_T_centric,
    k_normalizer_system,
    normalizer_system,
    p_power_index_subsystem,
    p_prime_automorphisms,
    same_system,
)
from .groups import (
    GroupError,
    automorphism_group,
    centralizer,
    generate_subgroup,
    intersection,
    is_normal,
    join,
    normalizer,
    p_part,
    quotient_group,
    residual_subgroup,
    structure_predicates,
    subgroups_of_p_group,
)


class ModelError(RuntimeError):
    """A candidate local model failed verification."""

    def __init__(self, axiom, witness=None):
        super().__init__(f"local model fails: {axiom}")
        self.axiom = axiom
        self.witness = witness


class PreconditionError(ValueError):
    pass


# -- the family of U --------------------------------------------------------------


def admissible_subgroups(pair, widen=False):
    """Fully F-normalized, T-centric subgroups of T (of S with ``widen``)."""
    F, T = pair.F, pair.T
    pool = subgroups_of_p_group(pair.S if widen else T, pair.p)
    return [U for U in pool if is_fully_normalized(F, U) and is_T_centric(F, U, T)]


# -- local data ------------------------------------------------------------------------


@dataclass
class LocalDatum:
    U: object
    X: object
    UX: object
    U_X: object
    K: list
    D: object
    replaced: dict | None = None


def _fully_normalized_replacement(pair, U, X):
    """``(X', alpha)`` with ``U X'`` fully ``N_F(U)``-normalized, ``X' <= C_S(T)``."""
    NFU = normalizer_system(pair.F, U)
    UX = join(U, X)
    if is_fully_normalized(NFU, UX):
        return X, None
    CST = centralizer(pair.S, pair.T)
    best = max(normalizer(NFU.S, Q).order for Q in NFU.conjugates(UX))
    for alpha in NFU.homs(UX):
        img = alpha.image
        if normalizer(NFU.S, img).order != best:
            continue
        Xa = alpha.table[X.members]
        X2 = pair.S.parent.subgroup(Xa)
        if X2 <= CST:
            return X2, alpha
    return None, None


def local_datum(pair, U, X=None, check=True):
    """``U_X = U X C_S(UX)``, K and ``D(U,X) = N_F^K(U_X)``."""
    F, S, T = pair.F, pair.S, pair.T
    X = X if X is not None else S.parent.trivial
    if check:
        if not U <= T and not U <= S:
            raise PreconditionError("U is not a subgroup of S")
        if not is_T_centric(F, U, T):
            raise PreconditionError("U is not T-centric")
        if not is_fully_normalized(F, U):
            raise PreconditionError("U is not fully F-normalized")
    if not X <= centralizer(S, T):
        raise PreconditionError("X is not contained in C_S(T)")
    replaced = None
    X2, alpha = _fully_normalized_replacement(pair, U, X)
    if X2 is None:
        raise PreconditionError("no F-conjugate of UX is fully N_F(U)-normalized inside C_S(T)")
    if alpha is not None:
        replaced = {"X": X.as_list(), "X_new": X2.as_list(), "alpha": list(alpha.images)}
        X = X2
    UX = join(U, X)
    U_X = join(UX, centralizer(S, UX))
    K = [phi for phi in F.aut(U_X) if phi.restrict(UX).image is UX]
    D = k_normalizer_system(F, U_X, K)
    return LocalDatum(U, X, UX, U_X, K, D, replaced)


# -- local models -------------------------------------------------------------------


@dataclass
class LocalModel:
    datum: LocalDatum
    N: object  # N° in G
    core: object  # O_p'(N°)
    Gmodel: object  # GroupTable
    Hmodel: object  # Subgroup of Gmodel
    label: np.ndarray  # projection G -> Gmodel (-1 off N°)
    sylow: object  # embedded Sylow of D
    sylow_H: object  # embedded N_T(U)
    verification: dict = field(default_factory=dict)

    def embed(self, A):
        if not A <= self.N:
            raise GroupError("subgroup is not inside the model's domain")
        return self.Gmodel.subgroup(self.label[A.members])


def _transport(F, P, label, target_parent):
    """Hom images of F on P, transported along ``label``."""
    Pm = target_parent.subgroup(label[P.members])
    pos = {int(label[x]): i for i, x in enumerate(P.members)}
    order = [pos[int(y)] for y in Pm.members]
    return Pm, {tuple(int(label[phi.images[i]]) for i in order) for phi in F.homs(P)}


def _compare_fusion(F, FM, label):
    """Hom-set equality of F with the model system FM (along ``label``)."""
    Gm = FM.parent
    for P in F.subgroups():
        Pm, imgs = _transport(F, P, label, Gm)
        if imgs != FM.hom_images(Pm):
            return {"P": P.as_list()}
    return None


def local_model(pair, datum):
    """Candidate ``(G(U,X), H(U,X))`` with every axiom checked.

    Raises :class:`ModelError` naming the first failing axiom.
    """
    G, H, p = pair.G, pair.H, pair.p
    parent = G.parent
    d = datum
    N = intersection(normalizer(G, d.U_X), normalizer(G, d.UX))
    core = residual_subgroup(parent, p, "O_p'", N)
    Gm, label = quotient_group(parent, core, within=N)
    NH = intersection(N, H)
    Hm = Gm.subgroup(np.unique(label[NH.members]))
    SD = d.D.S
    if not SD <= N:
        raise ModelError("Sylow of D is not inside N", SD.as_list())
    Sm = Gm.subgroup(label[SD.members])
    NTU = normalizer(pair.T, d.U)
    Tm = Gm.subgroup(label[NTU.members])
    ver = {}
    whole = Gm.whole
    ver["O_p'_trivial"] = residual_subgroup(Gm, p, "O_p'", whole).order == 1
    Op = residual_subgroup(Gm, p, "O_p", whole)
    ver["constrained"] = centralizer(whole, Op) <= Op
    ver["sylow"] = Sm.order == p_part(Gm.order, p) and Sm.order == SD.order
    ver["H_normal"] = is_normal(Hm, whole)
    ver["H_sylow"] = Tm <= Hm and Tm.order == p_part(Hm.order, p) and Tm.order == NTU.order
    model = LocalModel(d, N, core, Gm, Hm, label, Sm, Tm, ver)
    for axiom in ("O_p'_trivial", "constrained", "sylow", "H_normal", "H_sylow"):
        if not ver[axiom]:
            raise ModelError(axiom, {"U": d.U.as_list(), "X": d.X.as_list()})
    FM = RealizedFusionSystem(whole, Sm, p)
    bad = _compare_fusion(d.D, FM, label)
    ver["fusion_G"] = bad is None
    if bad is not None:
        raise ModelError("fusion of G(U,X) differs from D(U,X)", bad)
    NEU = normalizer_system(pair.E, d.U)
    if NEU.S is not NTU:
        raise ModelError("N_E(U) does not live on N_T(U)")
    EM = RealizedFusionSystem(Hm, Tm, p)
    bad = _compare_fusion(NEU, EM, label)
    ver["fusion_H"] = bad is None
    if bad is not None:
        raise ModelError("fusion of H(U,X) differs from N_E(U)", bad)
    return model


def centralizer_of_model_h(model):
    """``C_S(H(U))``: elements of the Sylow of D whose image centralizes Hmodel."""
    SD = model.datum.D.S
    Cm = centralizer(model.sylow, model.Hmodel)
    keep = [int(s) for s in SD if model.label[s] in Cm]
    return generate_subgroup(SD.parent, keep)


@dataclass
class KGroups:
    C: object
    K: object
    identity_checked: bool = False
    identity_holds: bool | None = None


def _aut_closure(tables, X):
    """Automorphism group of X generated by the given image arrays."""
    idn = tuple(X.members.tolist())
    seen = {idn}
    frontier = [idn]
    while frontier:
        nxt = []
        for t in frontier:
            for g in tables:
                new = tuple(g[list(t)].tolist())
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return seen


def local_k_groups(pair, model):
    """``C(U,X) = C_{G(U,X)}(N_T(U))`` and ``K(U,X) = O^p(C(U,X))``.

    For ``U = T`` also checks ``O^p(Aut_{C_F(T)}(X)) = Aut_{K(T,X)}(X)``.
    """
    Gm = model.Gmodel
    C = centralizer(Gm.whole, model.sylow_H)
    K = residual_subgroup(Gm, pair.p, "O^p", C)
    out = KGroups(C, K)
    d = model.datum
    if d.U is pair.T:
        X = d.X
        CFT = centralizer_system(pair.F, pair.T)
        lhs = _aut_closure([a.table for a in p_prime_automorphisms(CFT, X)], X)
        Xm = model.embed(X)
        NK = normalizer(K, Xm)
        back = {int(model.label[x]): int(x) for x in X.members}
        rhs = set()
        for k in NK:
            phi = Morphism.conjugation(Xm, int(k))
            rhs.add(tuple(back[int(phi.table[model.label[x]])] for x in X.members))
        out.identity_checked = True
        out.identity_holds = lhs == rhs
    return out


# -- chains -----------------------------------------------------------------------


@dataclass
class Chain:
    subgroups: list
    X: object
    alpha: Morphism | None

    def as_dict(self):
        return {
            "subgroups": [U.as_list() for U in self.subgroups],
            "X": self.X.as_list(),
            "alpha": None if self.alpha is None else list(self.alpha.images),
        }


def _chain_from(pair, U, X):
    F, T = pair.F, pair.T
    chain = [U]
    while chain[-1] is not T:
        nxt = normalizer(T, chain[-1])
        if nxt is chain[-1]:
            return None
        chain.append(nxt)
    for Ui in chain:
        if not is_fully_normalized(F, Ui):
            return None
        if not is_fully_normalized(normalizer_system(F, Ui), join(Ui, X)):
            return None
    return chain


def strongly_normalized_chain(pair, U, X=None):
    """Chain ``U = U_0 < ... < U_n = T`` with ``U_{i+1} = N_T(U_i)``.

    Tries F-conjugates ``(U alpha, X alpha)`` for ``alpha`` in
    ``Hom_F(UX, S)`` (identity first).  Returns ``(chain, None)`` or
    ``(None, violation)`` when no conjugate works.
    """
    F, T, S = pair.F, pair.T, pair.S
    X = X if X is not None else S.parent.trivial
    if not (is_T_centric(F, U, T) and is_fully_normalized(F, U)):
        raise PreconditionError("U must be fully F-normalized and T-centric")
    if not is_fully_normalized(normalizer_system(F, U), join(U, X)):
        raise PreconditionError("UX must be fully N_F(U)-normalized")
    UX = join(U, X)
    homs = sorted(F.homs(UX), key=lambda a: (not a.is_identity(), a.images))
    for alpha in homs:
        Ua = S.parent.subgroup(alpha.table[U.members])
        Xa = S.parent.subgroup(alpha.table[X.members])
        if not Ua <= T:
            continue
        chain = _chain_from(pair, Ua, Xa)
        if chain is not None:
            return Chain(chain, Xa, None if alpha.is_identity() else alpha), None
    return None, {"kind": "no-chain", "U": U.as_list(), "X": X.as_list()}


def chain_invariants(pair, chain):
    """Orders ``|C(U_j,X)|`` and ``|K(U_j,X)|`` along a chain."""
    rows = []
    for Uj in chain.subgroups:
        d = local_datum(pair, Uj, chain.X, check=False)
        m = local_model(pair, d)
        kg = local_k_groups(pair, m)
        rows.append((kg.C.order, kg.K.order))
    return {"orders": rows, "constant": len(set(rows)) <= 1}


# -- the intersection formula ------------------------------------------------------------


def centralizer_subgroup_local(pair, direct=None, widen=False):
    """``C_S(E)`` from local models, cross-checked with the direct method.

    Intersects ``C_S(H(U))`` over admissible U (at X = 1), then over the
    ``Aut_F(T C_S(T))``-translates.  With ``widen`` the U outside T are
    also tried; they never enter the intersection, and whatever happens to
    them is reported under ``"widened"``.
    """
    F, S, T = pair.F, pair.S, pair.T
    G = S.parent
    per_u = []
    widened = []
    if widen:
        for U in admissible_subgroups(pair, widen=True):
            if U <= T:
                continue
            try:
                m = local_model(pair, local_datum(pair, U))
                widened.append({"U": U.as_list(), "C_S(H(U))": centralizer_of_model_h(m).as_list()})
            except (FusionError, ModelError, PreconditionError) as exc:
                widened.append({"U": U.as_list(), "error": f"{type(exc).__name__}: {exc}"})
    acc = S
    for U in admissible_subgroups(pair):
        d = local_datum(pair, U)
        m = local_model(pair, d)
        C = centralizer_of_model_h(m)
        per_u.append({"U": U.as_list(), "C_S(H(U))": C.as_list(), "model_order": m.Gmodel.order})
        acc = intersection(acc, C)
    TC = join(T, centralizer(S, T))
    if not acc <= TC:
        raise FusionError("intersection is not inside T C_S(T)")
    result = acc
    for phi in F.aut(TC):
        result = intersection(result, G.subgroup(phi.table[acc.members]))
    if direct is None:
        direct = centralizer_subgroup_direct(F, E=pair.E)
    agree = direct.is_subgroup and direct.subgroup is result
    out = {
        "subgroup": result,
        "per_U": per_u,
        "direct": direct.members,
        "agree": agree,
        "note": "C_S(H(U)) read through the projection N -> G(U,X)",
    }
    if widen:
        out["widened"] = widened
    return out


# -- verification suites ----------------------------------------------------------------


def verify_prop_hyp_containment(pair):
    """``hyp(C_F(T)) <= C_{N_S(U)}(H(U))`` for each U, plus the group-level
    containment ``O^p(C_G(T)) & S <= C_G(H)`` when G qualifies."""
    S, T, G, H, p = pair.S, pair.T, pair.G, pair.H, pair.p
    CGT = centralizer(G, T)
    CFT = RealizedFusionSystem(CGT, centralizer(S, T), p)
    hyp = hyperfocal(CFT)
    rows = []
    ok = True
    for U in admissible_subgroups(pair):
        m = local_model(pair, local_datum(pair, U))
        C = centralizer_of_model_h(m)
        good = hyp <= C
        ok &= good
        rows.append({"U": U.as_list(), "holds": good})
    st = structure_predicates(G.parent, p, within=G)
    gross = None
    if st.O_p_prime_trivial and st.is_p_constrained:
        lhs = intersection(residual_subgroup(G.parent, p, "O^p", CGT), S)
        gross = lhs <= centralizer(G, H)
        ok &= gross
    return {"hyp(C_F(T))": hyp.as_list(), "per_U": rows, "gross_corollary": gross, "ok": ok}


def verify_op_containment(pair):
    """Only the group-level containment; None when G does not qualify."""
    G, S, T, H, p = pair.G, pair.S, pair.T, pair.H, pair.p
    st = structure_predicates(G.parent, p, within=G)
    if not (st.O_p_prime_trivial and st.is_p_constrained):
        return {"applicable": False, "ok": True}
    CGT = centralizer(G, T)
    lhs = intersection(residual_subgroup(G.parent, p, "O^p", CGT), S)
    ok = lhs <= centralizer(G, H)
    return {"applicable": True, "ok": ok, "lhs": lhs.as_list()}


def verify_gross(G, p, cap=256):
    """``C = C_{Aut(G)}(S)`` has a normal p-complement.

    Returns a report; ``applicable`` is False when G is not p-constrained
    with trivial ``O_p'``.
    """
    from .groups import as_subgroup, sylow_subgroup

    G = as_subgroup(G)
    st = structure_predicates(G.parent, p, within=G)
    if not (st.O_p_prime_trivial and st.is_p_constrained):
        return {"applicable": False, "ok": True, "order": G.order}
    S = sylow_subgroup(G, p)
    A = automorphism_group(G, cap=cap, fix=S)
    rep = structure_predicates(A, p)
    return {
        "applicable": True,
        "ok": rep.has_normal_p_complement,
        "order": G.order,
        "|C|": A.order,
    }


def verify_theorem_b(pair, direct=None):
    """``hyp(C_F(T)) <= C_S(E) <= C_S(T)`` and the subsystem ``C_F(E)``."""
    F, S, T = pair.F, pair.S, pair.T
    CFT = centralizer_system(F, T)
    hyp = hyperfocal(CFT)
    direct = direct or centralizer_subgroup_direct(F, pair.E)
    out = {"hyp(C_F(T))": hyp.as_list(), "C_S(E)": direct.members}
    if not direct.is_subgroup:
        out.update(ok=False, reason="C_S(E) is not a subgroup")
        return out
    CSE = direct.subgroup
    CST = centralizer(S, T)
    out["hyp<=C_S(E)"] = hyp <= CSE
    out["C_S(E)<=C_S(T)"] = CSE <= CST
    CFE = p_power_index_subsystem(CFT, CSE)
    out["C_F(E)_saturated"] = CFE.report["saturated"]
    out["C_F(E)_contained"] = CFE.report["contained"]
    out["C_F(E)_index"] = CFE.report["index_property"]
    out["ok"] = all(
        out[k]
        for k in ("hyp<=C_S(E)", "C_S(E)<=C_S(T)", "C_F(E)_saturated", "C_F(E)_contained", "C_F(E)_index")
    )
    return out


# -- conjectures ----------------------------------------------------------------------


def _qualifies(pair):
    return residual_subgroup(pair.H.parent, pair.p, "O_p'", pair.H).order == 1


def run_conjecture_52(pair, direct=None):
    """Compare ``C_S(E)`` with ``C_G(H) & S``."""
    if not _qualifies(pair):
        return {"verdict": "SKIPPED", "reason": "O_p'(H) is not trivial"}
    direct = direct or centralizer_subgroup_direct(pair.F, pair.E)
    rhs = intersection(centralizer(pair.G, pair.H), pair.S)
    holds = direct.is_subgroup and direct.subgroup is rhs
    out = {"verdict": "HOLDS" if holds else "FAILS", "C_S(E)": direct.members, "C_G(H)&S": rhs.as_list()}
    return out


def run_conjecture_53(pair, direct=None):
    """Compare ``C_F(E)`` with ``F_{C_S(H)}(C_G(H))``.

    Also reports whether the latter has p-power index in ``C_F(T)``.
    """
    if not _qualifies(pair):
        return {"verdict": "SKIPPED", "reason": "O_p'(H) is not trivial"}
    F, S, T, G, H, p = pair.F, pair.S, pair.T, pair.G, pair.H, pair.p
    direct = direct or centralizer_subgroup_direct(F, pair.E)
    if not direct.is_subgroup:
        return {"verdict": "FAILS", "reason": "C_S(E) is not a subgroup"}
    CGH = centralizer(G, H)
    CSH = intersection(S, CGH)
    out = {"C_S(E)": direct.members, "C_S(H)": CSH.as_list()}
    if CSH.order != p_part(CGH.order, p):
        out.update(verdict="FAILS", reason="C_S(H) is not Sylow in C_G(H)")
        return out
    CFT = centralizer_system(F, T)
    CFE = p_power_index_subsystem(CFT, direct.subgroup)
    R = RealizedFusionSystem(CGH, CSH, p)
    holds = CSH is direct.subgroup and same_system(CFE, R)
    out["verdict"] = "HOLDS" if holds else "FAILS"
    # p-power index route: contained in C_F(T) with O^p(Aut) covered
    contained = is_subsystem(R, CFT)
    index_ok = contained and all(
        a.images in R.hom_images(P)
        for P in R.subgroups()
        for a in p_prime_automorphisms(CFT, P)
    )
    hyp_ok = hyperfocal(CFT) <= CSH
    out["p_power_index"] = bool(index_ok and hyp_ok)
    return out


__all__ = [
    "Chain",
    "KGroups",
    "LocalDatum",
    "LocalModel",
    "ModelError",
    "PreconditionError",
    "admissible_subgroups",
    "centralizer_of_model_h",
    "centralizer_subgroup_local",
    "chain_invariants",
    "local_datum",
    "local_k_groups",
    "local_model",
    "run_conjecture_52",
    "run_conjecture_53",
    "strongly_normalized_chain",
    "verify_gross",
    "verify_op_containment",
    "verify_prop_hyp_containment",
    "verify_theorem_b",
]
