"""Fusion systems on finite p-groups.

A fusion system is queried through :meth:`FusionSystem.homs`, which returns
every morphism ``P -> S`` (as a :class:`Morphism`, sorted by image tuple);
``Hom(P, Q)`` is the subset with image inside ``Q``.  Concrete flavors:

* :class:`RealizedFusionSystem` -- conjugation by elements of an ambient G;
* :class:`GeneratedFusionSystem` -- closure of a set of isomorphisms;
* :class:`TableFusionSystem` -- explicit hom tables;
* :class:`CentralizerSystem`, :class:`KNormalizerSystem`,
  :class:`FullSubsystem` -- derived systems, computed lazily from a base.

Morphisms act on the right and compose left to right: ``phi.then(psi)`` is
"phi, then psi".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .groups import (
    GroupError,
    Subgroup,
    as_subgroup,
    centralizer,
    center,
    generate_subgroup,
    intersection,
    join,
    lcm_list,
    normal_closure,
    normalizer,
    p_part,
    residual_subgroup,
    sort_subgroups,
    subgroups_of_p_group,
    sylow_subgroup,
)


class FusionError(ValueError):
    """Invalid fusion-system input."""


@dataclass(frozen=True, eq=False)
class Morphism:
    """Injective map ``source -> S`` stored as images of ``source.members``."""

    source: Subgroup
    images: tuple

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.source is other.source and self.images == other.images

    def __hash__(self):
        return hash((self.source.mask, self.images))

    def __repr__(self):
        return f"Morphism({self.source.as_list()} -> {list(self.images)})"

    @cached_property
    def image(self):
        return self.source.parent.subgroup(self.images)

    @cached_property
    def table(self):
        arr = np.full(self.source.parent.order, -1, dtype=np.int64)
        arr[self.source.members] = self.images
        return arr

    def __call__(self, x):
        return int(self.table[x])

    def then(self, other):
        if not self.image <= other.source:
            raise FusionError("composition of non-composable morphisms")
        return Morphism(self.source, tuple(other.table[list(self.images)].tolist()))

    def restrict(self, P):
        if not P <= self.source:
            raise FusionError("restriction to a non-subgroup of the source")
        return Morphism(P, tuple(self.table[P.members].tolist()))

    def inverse(self):
        Q = self.image
        inv = np.full(self.source.parent.order, -1, dtype=np.int64)
        inv[list(self.images)] = self.source.members
        return Morphism(Q, tuple(inv[Q.members].tolist()))

    def is_identity(self):
        return self.images == tuple(self.source.members.tolist())

    def is_automorphism(self):
        return self.image is self.source

    def order(self):
        """Order as a permutation of the source (automorphisms only)."""
        if not self.is_automorphism():
            raise FusionError("order of a non-automorphism")
        pos = self.source.position
        perm = [pos[y] for y in self.images]
        seen = [False] * len(perm)
        lengths = []
        for i in range(len(perm)):
            if seen[i]:
                continue
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            lengths.append(n)
        return lcm_list(lengths)

    @staticmethod
    def identity(P):
        return Morphism(P, tuple(P.members.tolist()))

    @staticmethod
    def conjugation(P, g):
        """``c_g|_P``."""
        G = P.parent
        img = kernels.conj_images(G.mult, G.inverse, np.array([g], dtype=np.int32), P.members)
        return Morphism(P, tuple(img[0].tolist()))


def conjugation_images(elements, P, target):
    """Distinct ``c_g|_P`` for ``g`` in ``elements`` with ``P^g <= target``.

    Returns ``{image tuple: least witness}``.
    """
    G = P.parent
    elements = np.asarray(elements, dtype=np.int32)
    if len(elements) == 0:
        return {}
    imgs = kernels.conj_images(G.mult, G.inverse, elements, P.members)
    ok = kernels.rows_inside(imgs, target.bitmap).astype(bool)
    rows, first = imgs[ok], elements[ok]
    if len(rows) == 0:
        return {}
    uniq, idx = np.unique(rows, axis=0, return_index=True)
    return {tuple(r.tolist()): int(first[i]) for r, i in zip(uniq, idx)}


class FusionSystem:
    """Base class; subclasses implement :meth:`_compute`."""

    flavor = "abstract"

    def __init__(self, S, p, name=None):
        if not S.is_p_group(p):
            raise FusionError("underlying group must be a p-group")
        self.S = S
        self.p = p
        self.parent = S.parent
        self.name = name
        self._homs = {}
        self._images = {}

    def __repr__(self):
        label = self.name or type(self).__name__
        return f"<{label} on |S|={self.S.order}, p={self.p}>"

    def _compute(self, P):
        raise NotImplementedError

    def _check(self, P):
        if not P <= self.S:
            raise FusionError("subgroup is not contained in the underlying p-group")

    def homs(self, P):
        """All morphisms ``P -> S`` of the system, sorted by image tuple."""
        hit = self._homs.get(P.mask)
        if hit is None:
            self._check(P)
            imgs = sorted(set(self._compute(P)))
            hit = tuple(Morphism(P, t) for t in imgs)
            self._homs[P.mask] = hit
            self._images[P.mask] = frozenset(imgs)
        return hit

    def hom_images(self, P):
        self.homs(P)
        return self._images[P.mask]

    def hom_set(self, P, Q):
        return [phi for phi in self.homs(P) if phi.image <= Q]

    def aut(self, P):
        return [phi for phi in self.homs(P) if phi.image is P]

    def contains(self, phi):
        return phi.source <= self.S and phi.images in self.hom_images(phi.source)

    def conjugates(self, P):
        return sort_subgroups({phi.image for phi in self.homs(P)})

    def subgroups(self):
        return subgroups_of_p_group(self.S, self.p)

    @cached_property
    def classes(self):
        """F-conjugacy classes of ``Sub(S)``, each sorted, ordered by first member."""
        seen = set()
        out = []
        for P in self.subgroups():
            if P.mask in seen:
                continue
            cls = self.conjugates(P)
            seen.update(Q.mask for Q in cls)
            out.append(cls)
        return out

    def extensions_fixing(self, P, A):
        """Restrictions to P of morphisms on ``<P, A>`` that fix ``A`` pointwise."""
        PA = join(P, A)
        fixed = tuple(A.members.tolist())
        out = set()
        for psi in self.homs(PA):
            if tuple(psi.table[A.members].tolist()) == fixed:
                out.add(tuple(psi.table[P.members].tolist()))
        return out

    def materialize(self):
        """Complete hom table over ``Sub(S)`` as a :class:`TableFusionSystem`."""
        table = {P.mask: self.hom_images(P) for P in self.subgroups()}
        return TableFusionSystem(self.S, self.p, table, name=self.name)


class RealizedFusionSystem(FusionSystem):
    """``F_S(G)``: morphisms are restrictions of conjugation by G."""

    flavor = "realized"

    def __init__(self, G, S, p, name=None, check_sylow=True):
        G = as_subgroup(G)
        super().__init__(S, p, name=name)
        if not S <= G:
            raise FusionError("S is not a subgroup of G")
        if check_sylow and S.order != p_part(G.order, p):
            raise FusionError("S is not a Sylow p-subgroup of G")
        self.G = G
        self._witness = {}

    def _compute(self, P):
        found = conjugation_images(self.G.members, P, self.S)
        self._witness[P.mask] = found
        return found.keys()

    def witness(self, phi):
        """Least ``g`` in G with ``c_g|_P = phi``."""
        self.homs(phi.source)
        return self._witness[phi.source.mask][phi.images]

    def extensions_fixing(self, P, A):
        C = centralizer(self.G, A)
        return set(conjugation_images(C.members, P, self.S))


class TableFusionSystem(FusionSystem):
    """Explicit hom tables keyed by subgroup mask."""

    def __init__(self, S, p, table, name=None):
        super().__init__(S, p, name=name)
        self.table = {k: frozenset(v) for k, v in table.items()}

    def _compute(self, P):
        return self.table.get(P.mask, ())


class GeneratedFusionSystem(FusionSystem):
    """Smallest fusion system on S containing ``generators`` (and Inn(S)).

    ``homs(P)`` is a breadth-first closure: starting from ``id_P``, apply the
    restriction of any generator whose domain contains the current image.
    """

    def __init__(self, S, p, generators, inner=True, name=None):
        super().__init__(S, p, name=name)
        gens = []
        if inner:
            for s in S.generators:
                gens.append(Morphism.conjugation(S, s))
        for g in generators:
            if not (g.source <= S and g.image <= S):
                raise FusionError("generator does not map within S")
            gens.append(g)
            if not g.is_automorphism():
                gens.append(g.inverse())
        uniq = {}
        for g in gens:
            uniq.setdefault((g.source.mask, g.images), g)
        self.generators = list(uniq.values())

    def _compute(self, P):
        gens = [(g.source.mask, g.table) for g in self.generators]
        start = tuple(P.members.tolist())
        seen = {start}
        frontier = [start]
        parent = self.parent
        while frontier:
            fresh = []
            for t in frontier:
                tmask = parent.subgroup(t).mask
                arr = list(t)
                for dmask, table in gens:
                    if tmask & ~dmask == 0:
                        new = tuple(table[arr].tolist())
                        if new not in seen:
                            seen.add(new)
                            fresh.append(new)
            frontier = fresh
        return seen


class FullSubsystem(FusionSystem):
    """Morphisms of ``base`` between subgroups of ``T``."""

    def __init__(self, base, T, name=None):
        super().__init__(T, base.p, name=name)
        if not T <= base.S:
            raise FusionError("T is not contained in the base's p-group")
        self.base = base

    def _compute(self, P):
        return [phi.images for phi in self.base.homs(P) if phi.image <= self.S]


def _is_fully(F, P, measure):
    own = measure(P).order
    return all(measure(Q).order <= own for Q in F.conjugates(P))


def is_fully_centralized(F, P):
    return _is_fully(F, P, lambda Q: centralizer(F.S, Q))


def is_fully_normalized(F, P):
    return _is_fully(F, P, lambda Q: normalizer(F.S, Q))


def fully_centralized_conjugate(F, P):
    """Least (by member list) conjugate maximizing ``|C_S|``."""
    cls = F.conjugates(P)
    best = max(centralizer(F.S, Q).order for Q in cls)
    return next(Q for Q in cls if centralizer(F.S, Q).order == best)


def fully_normalized_conjugate(F, P):
    cls = F.conjugates(P)
    best = max(normalizer(F.S, Q).order for Q in cls)
    return next(Q for Q in cls if normalizer(F.S, Q).order == best)


class CentralizerSystem(FusionSystem):
    """``C_F(X)`` on ``C_S(X)``: maps extending to ``PX`` fixing X pointwise.

    If X is not fully centralized, a fully centralized F-conjugate is used
    instead and recorded in ``substituted``.
    """

    def __init__(self, base, X, name=None):
        if not X <= base.S:
            raise FusionError("X is not a subgroup of S")
        self.substituted = None
        if not is_fully_centralized(base, X):
            Y = fully_centralized_conjugate(base, X)
            self.substituted = (X, Y)
            X = Y
        super().__init__(centralizer(base.S, X), base.p, name=name)
        self.base = base
        self.X = X

    def _compute(self, P):
        return self.base.extensions_fixing(P, self.X)


def _closed_under_composition(K):
    tables = [m.table for m in K]
    keys = {m.images for m in K}
    for m in K:
        arr = list(m.images)
        for t in tables:
            if tuple(t[arr].tolist()) not in keys:
                return False
    return True


class KNormalizerSystem(FusionSystem):
    """``N_F^K(R)`` on ``N_S^K(R) = {s in N_S(R) : c_s|_R in K}``.

    A map on P is included iff it extends to ``PR`` normalizing R with
    restriction to R in K.
    """

    def __init__(self, base, R, K, name=None):
        K = list(K)
        for k in K:
            if k.source is not R or not k.is_automorphism():
                raise FusionError("K must consist of automorphisms of R")
        if not K or not _closed_under_composition(K):
            raise FusionError("K is not closed under composition")
        self.base = base
        self.R = R
        self.K = frozenset(k.images for k in K)
        NS = normalizer(base.S, R)
        keep = [s for s in NS if Morphism.conjugation(R, s).images in self.K]
        super().__init__(generate_subgroup(base.parent, keep), base.p, name=name)

    def _compute(self, P):
        PR = join(P, self.R)
        R = self.R
        out = []
        for psi in self.base.homs(PR):
            imgR = tuple(psi.table[R.members].tolist())
            if imgR in self.K:
                out.append(tuple(psi.table[P.members].tolist()))
        return out


def normalizer_system(F, R):
    return KNormalizerSystem(F, R, F.aut(R), name="N_F(R)")


def k_normalizer_system(F, R, K):
    return KNormalizerSystem(F, R, K)


def centralizer_system(F, X):
    return CentralizerSystem(F, X, name="C_F(X)")


def restrict_system(F, T):
    return FullSubsystem(F, T, name="restriction")


def intersect_fusion_systems(F1, F2):
    """Hom-set-wise intersection of two systems on the same p-group."""
    if F1.S is not F2.S:
        raise FusionError("intersection needs systems on the same subgroup")
    table = {}
    for P in F1.subgroups():
        table[P.mask] = F1.hom_images(P) & F2.hom_images(P)
    out = TableFusionSystem(F1.S, F1.p, table, name="intersection")
    ok, why = check_fusion_axioms(out)
    if not ok:
        raise FusionError(f"intersection is not a fusion system: {why}")
    return out


def check_fusion_axioms(F):
    """Inner maps present, identity present, closed under restriction/composition."""
    S = F.S
    subs = F.subgroups()
    for P in subs:
        have = F.hom_images(P)
        if tuple(P.members.tolist()) not in have:
            return False, {"missing_identity": P.as_list()}
        for s in S.generators:
            c = Morphism.conjugation(P, s)
            if c.images not in have:
                return False, {"missing_inner": P.as_list(), "by": int(s)}
        for phi in F.homs(P):
            for psi in F.homs(phi.image):
                if phi.then(psi).images not in have:
                    return False, {"not_composition_closed": P.as_list()}
    for P in subs:
        for phi in F.homs(P):
            for Q in subs:
                if Q < P and phi.restrict(Q).images not in F.hom_images(Q):
                    return False, {"not_restriction_closed": P.as_list(), "sub": Q.as_list()}
    return True, None


def is_subsystem(E, F):
    """Every morphism of E (between subgroups of E's p-group) lies in F."""
    if not E.S <= F.S:
        return False
    return all(E.hom_images(P) <= F.hom_images(P) for P in E.subgroups())


def same_system(E, F):
    if E.S is not F.S:
        return False
    return all(E.hom_images(P) == F.hom_images(P) for P in E.subgroups())


# -- subgroup classification -------------------------------------------------


def aut_s_images(F, P):
    N = normalizer(F.S, P)
    return set(conjugation_images(N.members, P, P))


def is_fully_automized(F, P):
    autF = len(F.aut(P))
    return len(aut_s_images(F, P)) == p_part(autF, F.p)


def _n_phi(F, phi, autS_Q):
    """``N_phi`` for an isomorphism ``phi: P' -> Q``."""
    Pp = phi.source
    N = normalizer(F.S, Pp)
    inv = phi.inverse()
    pre = np.asarray(inv.images, dtype=np.int32)  # phi^-1 of Q.members, in Q order
    G = F.parent
    rows = kernels.conj_images(G.mult, G.inverse, N.members, pre)
    mapped = phi.table[rows]
    keep = [int(g) for g, r in zip(N.members, mapped) if tuple(r.tolist()) in autS_Q]
    return generate_subgroup(G, keep)


def receptive_failure(F, Q):
    """First isomorphism onto Q that does not extend to its ``N_phi``, or None."""
    autS_Q = aut_s_images(F, Q)
    for Pp in F.conjugates(Q):
        for phi in F.homs(Pp):
            if phi.image is not Q:
                continue
            Nphi = _n_phi(F, phi, autS_Q)
            if Nphi is Pp:
                continue
            if not any(psi.restrict(Pp).images == phi.images for psi in F.homs(Nphi)):
                return {"phi": phi, "N_phi": Nphi}
    return None


def is_receptive(F, Q):
    return receptive_failure(F, Q) is None


def is_F_centric(F, P):
    return all(centralizer(F.S, Q) <= Q for Q in F.conjugates(P))


def is_T_centric(F, P, T):
    """``C_T(Q) <= Q`` for every F-conjugate Q of P lying in T."""
    return all(centralizer(T, Q) <= Q for Q in F.conjugates(P) if Q <= T)


@dataclass(frozen=True)
class SubgroupStatus:
    fully_normalized: bool
    fully_centralized: bool
    fully_automized: bool
    receptive: bool
    F_centric: bool
    T_centric: bool | None = None


def classify_subgroup(F, P, T=None):
    return SubgroupStatus(
        fully_normalized=is_fully_normalized(F, P),
        fully_centralized=is_fully_centralized(F, P),
        fully_automized=is_fully_automized(F, P),
        receptive=is_receptive(F, P),
        F_centric=is_F_centric(F, P),
        T_centric=None if T is None else is_T_centric(F, P, T),
    )


def is_saturated(F):
    """Each F-class needs a fully automized, receptive member.

    Returns ``(ok, certificate)``; the certificate lists the witness of
    every class, or the first class without one.
    """
    witnesses = []
    for cls in F.classes:
        ranked = sorted(cls, key=lambda Q: (-normalizer(F.S, Q).order, Q.sort_key))
        found = None
        for Q in ranked:
            if is_fully_automized(F, Q) and is_receptive(F, Q):
                found = Q
                break
        if found is None:
            return False, {"failing_class": [Q.as_list() for Q in cls]}
        witnesses.append({"class_size": len(cls), "witness": found.as_list()})
    return True, {"classes": witnesses}


def is_strongly_closed(F, X):
    """No element of X has an F-image outside X."""
    if not X <= F.S:
        return False
    done = np.zeros(F.parent.order, dtype=bool)
    for x in X:
        if done[x]:
            continue
        C = generate_subgroup(F.parent, [x])
        done[C.members] = True
        pos = C.position[x]
        for phi in F.homs(C):
            if phi.images[pos] not in X:
                return False
    return True


# -- normal pairs -------------------------------------------------------------

LEVELS = ("none", "invariant", "weakly-normal", "normal")


def _twist(phi, psi):
    """``(psi|_P)^-1 phi psi`` as a map ``P psi -> Q psi``."""
    src = phi.source.parent.subgroup(psi.table[phi.source.members])
    # x psi  ->  (x phi) psi
    arr = np.full(phi.source.parent.order, -1, dtype=np.int64)
    arr[psi.table[phi.source.members]] = psi.table[np.asarray(phi.images)]
    return Morphism(src, tuple(arr[src.members].tolist()))


def strong_invariance_failure(F, E):
    T = E.S
    subs = E.subgroups()
    for Q in subs:
        for psi in F.homs(Q):
            if not psi.image <= T:
                return {"reason": "psi leaves T", "Q": Q.as_list(), "psi": list(psi.images)}
            for P in subs:
                if not P <= Q:
                    continue
                for phi in E.hom_set(P, Q):
                    tw = _twist(phi, psi)
                    if not E.contains(tw):
                        return {
                            "reason": "twist not in E",
                            "P": P.as_list(),
                            "Q": Q.as_list(),
                            "phi": list(phi.images),
                            "psi": list(psi.images),
                        }
    return None


def extension_condition_failure(F, E):
    """Each alpha in Aut_E(T) must extend to Aut_F(T C_S(T)) acting trivially
    on ``C_S(T)`` modulo ``Z(T)``.  Returns the first alpha without such an
    extension, together with the extensions that were tried."""
    T = E.S
    S = F.S
    CST = centralizer(S, T)
    TC = join(T, CST)
    ZT = center(T)
    G = F.parent
    tried = {}
    for alpha in E.aut(T):
        ok = False
        tried_here = []
        for beta in F.aut(TC):
            if beta.restrict(T).images != alpha.images:
                continue
            comm = G.mult[G.inverse[CST.members], beta.table[CST.members]]
            good = bool(ZT.bitmap[comm].all())
            tried_here.append({"extension": list(beta.images), "trivial_mod_Z(T)": good})
            if good:
                ok = True
                break
        if not ok:
            return {"alpha": list(alpha.images), "extensions": tried_here}
        tried[alpha.images] = True
    return None


def invariance_and_normality(F, E):
    """Level of E in F: 'none', 'invariant', 'weakly-normal' or 'normal'.

    Invariance is checked in its strong form (twists of E-maps by F-maps on
    overgroups stay in E).  Returns ``(level, witness)`` where the witness
    describes the first failing condition.
    """
    T = E.S
    if not T <= F.S:
        return "none", {"reason": "T not contained in S"}
    if not is_strongly_closed(F, T):
        return "none", {"reason": "T not strongly closed"}
    fail = strong_invariance_failure(F, E)
    if fail is not None:
        return "none", fail
    sat, cert = is_saturated(E)
    if not sat:
        return "invariant", {"reason": "E not saturated", **cert}
    fail = extension_condition_failure(F, E)
    if fail is not None:
        return "weakly-normal", {"reason": "extension condition", **fail}
    return "normal", None


@dataclass
class NormalPair:
    """A pair (F on S, E on T) with its verified level.

    ``G``/``H`` are set when the pair is realized by groups with
    ``F = F_S(G)`` and ``E = F_T(H)``.
    """

    F: FusionSystem
    E: FusionSystem
    level: str
    witness: dict | None = None
    G: Subgroup | None = None
    H: Subgroup | None = None
    name: str | None = None

    @property
    def S(self):
        return self.F.S

    @property
    def T(self):
        return self.E.S

    @property
    def p(self):
        return self.F.p

    @property
    def realized(self):
        return self.G is not None


def classify_pair(F, E, G=None, H=None, name=None):
    level, witness = invariance_and_normality(F, E)
    return NormalPair(F, E, level, witness, G=G, H=H, name=name)


def realized_pair(G, H, p, name=None, classify=True):
    """Pair ``(F_S(G), F_T(H))`` with S Sylow in G and ``T = S & H``."""
    G, H = as_subgroup(G), as_subgroup(H)
    if not H <= G:
        raise GroupError("H is not a subgroup of G")
    from .groups import is_normal

    if not is_normal(H, G):
        raise GroupError("H is not normal in G")
    S = sylow_subgroup(G, p)
    T = intersection(S, H)
    if T.order != p_part(H.order, p):
        raise GroupError("S & H is not Sylow in H")
    F = RealizedFusionSystem(G, S, p, name="F_S(G)")
    E = RealizedFusionSystem(H, T, p, name="F_T(H)")
    if classify:
        return classify_pair(F, E, G=G, H=H, name=name)
    return NormalPair(F, E, "unverified", None, G=G, H=H, name=name)


# -- centralizer subgroups ------------------------------------------------------


@dataclass
class DirectCentralizer:
    members: list
    is_subgroup: bool
    subgroup: Subgroup | None
    not_fully_centralized: list = field(default_factory=list)


def centralizer_subgroup_direct(F, E):
    """``{g in C_S(T) : E <= C_F(<g>)}`` by extension search.

    g qualifies iff every E-map ``phi: P -> T`` has an F-extension to
    ``P<g>`` that fixes g.  Elements outside ``C_S(T)`` are excluded since
    ``C_F(<g>)`` lives on ``C_S(g)``.  Elements whose cyclic group is not
    fully centralized are listed in ``not_fully_centralized``.
    """
    T = E.S
    G = F.parent
    CST = centralizer(F.S, T)
    subs = E.subgroups()
    members = []
    flagged = []
    for g in CST:
        A = generate_subgroup(G, [g])
        ok = True
        for P in subs:
            need = E.hom_images(P)
            if len(need) == 1:
                continue  # only the identity map, which always extends
            have = F.extensions_fixing(P, A)
            if not need <= have:
                ok = False
                break
        if ok:
            members.append(g)
            if not is_fully_centralized(F, A):
                flagged.append(g)
    closure = generate_subgroup(G, members)
    is_sub = closure.order == len(members)
    return DirectCentralizer(members, is_sub, closure if is_sub else None, flagged)


def center_of_fusion_system(F):
    """``Z(F)``: the direct centralizer of F in itself."""
    res = centralizer_subgroup_direct(F, F)
    if not res.is_subgroup:
        raise FusionError("Z(F) computation returned a non-subgroup")
    return res.subgroup


# -- hyperfocal and p-power index -------------------------------------------------


def s_class_representatives(S, subs):
    seen = set()
    reps = []
    for P in subs:
        if P.mask in seen:
            continue
        reps.append(P)
        G = S.parent
        img = kernels.conj_images(G.mult, G.inverse, S.members, P.members)
        for row in np.unique(img, axis=0):
            seen.add(G.subgroup(row).mask)
    return reps


def p_prime_automorphisms(F, P):
    return [a for a in F.aut(P) if a.order() % F.p != 0]


def hyperfocal(F):
    """Subgroup generated by ``g^-1 (g alpha)`` for ``alpha`` in ``O^p(Aut_F(P))``.

    ``O^p`` is generated by the p'-elements, and commutators with a product
    are products of commutators, so p'-elements suffice; S-conjugate
    subgroups contribute S-conjugate generators, handled by a normal closure.
    """
    G = F.parent
    gens = set()
    for P in s_class_representatives(F.S, F.subgroups()):
        for a in p_prime_automorphisms(F, P):
            vals = G.mult[G.inverse[P.members], np.asarray(a.images)]
            gens.update(int(v) for v in vals if v != 0)
    base = generate_subgroup(G, sorted(gens))
    return normal_closure(F.S, base)


def hyperfocal_realized(G, S, p):
    """``S & O^p(G)``."""
    return intersection(S, residual_subgroup(G, p, "O^p", as_subgroup(G)))


def p_power_index_subsystem(F, R, verify=True):
    """Subsystem on R generated by Inn(R) and ``O^p(Aut_F(P))``, ``P <= R``.

    Requires ``hyp(F) <= R``.  When ``verify`` is set, the result carries a
    ``report`` with its saturation status and the index property
    ``O^p(Aut_F(P)) <= Aut_{F_R}(P)`` for every ``P <= R``.
    """
    hyp = hyperfocal(F)
    if not hyp <= R:
        raise FusionError("R does not contain hyp(F)")
    if not R <= F.S:
        raise FusionError("R is not a subgroup of S")
    subs = subgroups_of_p_group(R, F.p)
    gens = []
    for P in s_class_representatives(R, subs):
        gens.extend(p_prime_automorphisms(F, P))
    FR = GeneratedFusionSystem(R, F.p, gens, inner=True, name="F_R")
    if verify:
        sat, cert = is_saturated(FR)
        index_ok = all(
            a.images in FR.hom_images(P) for P in subs for a in p_prime_automorphisms(F, P)
        )
        contained = all(FR.hom_images(P) <= F.hom_images(P) for P in subs)
        FR.report = {
            "saturated": sat,
            "index_property": index_ok,
            "contained": contained,
            "certificate": cert,
        }
    return FR


# -- serialization -----------------------------------------------------------------


def fusion_to_json(F, subgroups=None):
    """Object list plus hom tables (maps grouped by source; target = image)."""
    subs = list(subgroups) if subgroups is not None else list(F.subgroups())
    index = {P.mask: i for i, P in enumerate(subs)}
    homs = []
    for i, P in enumerate(subs):
        for phi in F.homs(P):
            homs.append(
                {"source": i, "image": index.get(phi.image.mask), "map": list(phi.images)}
            )
    return {
        "p": F.p,
        "S": F.S.as_list(),
        "objects": [P.as_list() for P in subs],
        "homs": homs,
    }
