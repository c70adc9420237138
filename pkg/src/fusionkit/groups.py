"""Finite groups as multiplication tables.

A :class:`GroupTable` holds a total multiplication table over element
indices ``0..n-1`` with ``0`` the identity.  Permutation groups are
enumerated and their elements sorted lexicographically by image tuple, so
every index (and every set built from indices) is reproducible.

Actions are on the right: ``mult[a, b]`` is "a then b", and conjugation of
``x`` by ``g`` is ``x^g = g^-1 x g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from . import caps as _caps
from .caps import CapError


class GroupError(ValueError):
    """Malformed group data or a violated precondition."""


def prime_factors(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p):
    return p >= 2 and prime_factors(p) == {p: 1}


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_p_power(n, p):
    return p_part(n, p) == n


def _bits_to_mask(bitmap):
    return int.from_bytes(np.packbits(bitmap, bitorder="little").tobytes(), "little")


class GroupTable:
    """A finite group given by its full multiplication table."""

    def __init__(self, mult, perms=None, name=None):
        mult = np.ascontiguousarray(mult, dtype=np.int32)
        n = mult.shape[0]
        if mult.ndim != 2 or mult.shape != (n, n) or n == 0:
            raise GroupError("multiplication table must be square and non-empty")
        if n > _caps.CAPS.max_group_order:
            raise CapError(f"group order {n} exceeds cap {_caps.CAPS.max_group_order}")
        ar = np.arange(n, dtype=np.int32)
        if not (np.array_equal(mult[0], ar) and np.array_equal(mult[:, 0], ar)):
            raise GroupError("element 0 must be the identity")
        inv = np.argmax(mult == 0, axis=1).astype(np.int32)
        if not np.all(mult[ar, inv] == 0):
            raise GroupError("some element has no inverse")
        self.mult = mult
        self.inverse = inv
        self.order = n
        self.identity = 0
        self.perms = None if perms is None else np.asarray(perms, dtype=np.int64)
        self.name = name
        self._subgroups = {}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<GroupTable{label} order={self.order}>"

    def __len__(self):
        return self.order

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_permutations(cls, generators, degree, name=None):
        """Enumerate the permutation group generated by ``generators``.

        Each generator is an image tuple on points ``0..degree-1``.
        """
        ident = tuple(range(degree))
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if sorted(g) != list(ident):
                raise GroupError(f"not a permutation of {degree} points: {g}")
        seen = {ident}
        frontier = [ident]
        while frontier:
            fresh = []
            for a in frontier:
                for g in gens:
                    c = tuple(g[i] for i in a)
                    if c not in seen:
                        seen.add(c)
                        fresh.append(c)
                        if len(seen) > _caps.CAPS.max_group_order:
                            raise CapError(
                                f"group order exceeds cap {_caps.CAPS.max_group_order}"
                            )
            frontier = fresh
        return cls.from_permutation_set(seen, name=name)

    @classmethod
    def from_permutation_set(cls, perms, name=None):
        """Build the table of a set of permutations already closed under products."""
        P = np.array(sorted(tuple(p) for p in perms), dtype=np.int64)
        n, d = P.shape
        if n > _caps.CAPS.max_group_order:
            raise CapError(f"group order {n} exceeds cap {_caps.CAPS.max_group_order}")
        mult = np.empty((n, n), dtype=np.int32)
        if d > 15:
            # base-d keys would overflow int64; fall back to row lookups
            index = {row.tobytes(): i for i, row in enumerate(P)}
            for a in range(n):
                comp = P[:, P[a]]
                try:
                    mult[a] = [index[row.tobytes()] for row in comp]
                except KeyError:
                    raise GroupError("permutation set is not closed under composition")
            return cls(mult, perms=P, name=name)
        weights = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
        keys = P @ weights
        chunk = max(1, 2_000_000 // max(1, n * d))
        for start in range(0, n, chunk):
            A = P[start : start + chunk]
            comp = P[:, A] @ weights  # comp[b, a] = key of (A[a] then P[b])
            idx = np.searchsorted(keys, comp)
            idx[idx >= n] = 0
            if not np.array_equal(keys[idx], comp):
                raise GroupError("permutation set is not closed under composition")
            mult[start : start + len(A)] = idx.T
        return cls(mult, perms=P, name=name)

    @classmethod
    def from_table(cls, rows, name=None):
        mult = np.asarray(rows, dtype=np.int64)
        n = mult.shape[0]
        ar = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(mult[e], ar)]
        if not ids:
            raise GroupError("table has no identity row")
        e = ids[0]
        if e != 0:
            relabel = ar.copy()
            relabel[0], relabel[e] = e, 0
            # relabel is an involution, so it is its own inverse
            mult = relabel[mult[np.ix_(relabel, relabel)]]
        return cls(mult, name=name)

    # -- element data ---------------------------------------------------------

    @cached_property
    def element_orders(self):
        n = self.order
        ar = np.arange(n, dtype=np.int32)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.mult[cur, ar]
            k += 1

    def power(self, x, k):
        y = 0
        for _ in range(k % int(self.element_orders[x])):
            y = int(self.mult[y, x])
        return y

    def perm_of(self, x):
        """Image tuple of ``x`` (1-based points are *not* used internally)."""
        if self.perms is None:
            raise GroupError("group has no permutation realization")
        return tuple(int(v) for v in self.perms[x])

    def index_of_perm(self, perm):
        if self.perms is None:
            raise GroupError("group has no permutation realization")
        index = self.__dict__.get("_perm_index")
        if index is None:
            index = {tuple(row.tolist()): i for i, row in enumerate(self.perms)}
            self._perm_index = index
        try:
            return index[tuple(int(v) for v in perm)]
        except KeyError:
            raise GroupError(f"permutation {tuple(perm)} is not in the group") from None

    def verify(self, cap=256):
        """Full associativity / faithfulness scan; skipped above ``cap``."""
        n = self.order
        if n > cap:
            return False
        M = self.mult
        for a in range(n):
            if not np.array_equal(M[M[a]], M[a][M]):
                raise GroupError(f"multiplication is not associative at {a}")
        if self.perms is not None:
            P = self.perms
            for a in range(n):
                # perm(a*b) == perm(a) then perm(b)
                if not np.array_equal(P[M[a]], P[:, P[a]]):
                    raise GroupError(f"permutation realization not faithful at {a}")
        return True

    # -- subgroups ---------------------------------------------------------

    def subgroup(self, members):
        """Canonical :class:`Subgroup` object for a member list (not checked)."""
        bitmap = np.zeros(self.order, dtype=np.uint8)
        bitmap[np.asarray(members, dtype=np.int64)] = 1
        return self._from_bitmap(bitmap)

    def _from_bitmap(self, bitmap):
        mask = _bits_to_mask(bitmap)
        sub = self._subgroups.get(mask)
        if sub is None:
            sub = Subgroup(self, np.flatnonzero(bitmap).astype(np.int32), mask)
            self._subgroups[mask] = sub
        return sub

    def from_mask(self, mask):
        sub = self._subgroups.get(mask)
        if sub is not None:
            return sub
        raw = mask.to_bytes((self.order + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return self._from_bitmap(bits[: self.order].copy())

    @cached_property
    def whole(self):
        return self.subgroup(np.arange(self.order))

    @cached_property
    def trivial(self):
        return self.subgroup([0])


class Subgroup:
    """A set of element indices of a fixed :class:`GroupTable`.

    Instances are interned per parent (one object per member set), so ``is``
    and ``==`` agree.  Closure is the caller's responsibility; the
    constructors in this module only ever build closed sets.
    """

    def __init__(self, parent, members, mask):
        self.parent = parent
        self.members = members
        self.members.flags.writeable = False
        self.mask = mask
        self.order = len(members)

    def __repr__(self):
        shown = self.members.tolist()
        if len(shown) > 12:
            shown = shown[:12] + ["..."]
        return f"Subgroup(order={self.order}, members={shown})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.members.tolist())

    def __contains__(self, x):
        return bool(self.bitmap[x])

    def __hash__(self):
        return hash(self.mask)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.mask == other.mask

    def __le__(self, other):
        return self.parent is other.parent and self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    @cached_property
    def bitmap(self):
        b = np.zeros(self.parent.order, dtype=np.uint8)
        b[self.members] = 1
        b.flags.writeable = False
        return b

    @cached_property
    def position(self):
        """Map element index -> position within ``members``."""
        return {int(x): i for i, x in enumerate(self.members)}

    @cached_property
    def sort_key(self):
        return (self.order, tuple(self.members.tolist()))

    @cached_property
    def generators(self):
        """A small generating set, chosen greedily by element index."""
        gens = []
        cur = self.parent.trivial
        for x in self.members:
            x = int(x)
            if x not in cur:
                gens.append(x)
                cur = generate_subgroup(self.parent, gens)
                if cur.order == self.order:
                    break
        return tuple(gens)

    def is_p_group(self, p):
        return is_p_power(self.order, p)

    def as_list(self):
        return self.members.tolist()


def as_subgroup(G):
    return G.whole if isinstance(G, GroupTable) else G


def sort_subgroups(subs):
    return sorted(subs, key=lambda s: s.sort_key)


# -- basic subgroup constructions --------------------------------------------


def generate_subgroup(parent, generators):
    """Closure of ``generators`` under multiplication."""
    parent = parent.parent if isinstance(parent, Subgroup) else parent
    gens = [int(g) for g in generators]
    if not gens:
        return parent.trivial
    return parent.subgroup(kernels.closure(parent.mult, np.asarray(gens, dtype=np.int32)))


def join(*subs):
    parent = subs[0].parent
    gens = [g for s in subs for g in s.generators]
    return generate_subgroup(parent, gens)


def intersection(A, B):
    return A.parent._from_bitmap(A.bitmap & B.bitmap)


def conjugate(P, g):
    """``P^g``."""
    G = P.parent
    img = kernels.conj_images(G.mult, G.inverse, np.array([g], dtype=np.int32), P.members)
    return G.subgroup(img[0])


def conjugate_element(G, x, g):
    return int(G.mult[G.mult[G.inverse[g], x], g])


def commutator(G, x, y):
    """``x^-1 y^-1 x y``."""
    inv = G.inverse
    return int(G.mult[G.mult[inv[x], inv[y]], G.mult[x, y]])


def centralizer(ambient, target):
    """``C_ambient(target)``."""
    G = ambient.parent
    gens = np.asarray(target.generators, dtype=np.int32)
    if len(gens) == 0:
        return ambient
    keep = kernels.commute_mask(G.mult, ambient.members, gens)
    return G.subgroup(ambient.members[keep.astype(bool)])


def normalizer(ambient, target):
    """``N_ambient(target)``."""
    G = ambient.parent
    gens = np.asarray(target.generators, dtype=np.int32)
    if len(gens) == 0:
        return ambient
    img = kernels.conj_images(G.mult, G.inverse, ambient.members, gens)
    keep = kernels.rows_inside(img, target.bitmap)
    return G.subgroup(ambient.members[keep.astype(bool)])


def local_subgroup(parent, ambient, target, kind):
    """``C_ambient(target)`` or ``N_ambient(target)`` by ``kind``."""
    ambient, target = as_subgroup(ambient), as_subgroup(target)
    if kind == "centralizer":
        return centralizer(ambient, target)
    if kind == "normalizer":
        return normalizer(ambient, target)
    raise ValueError(f"unknown kind {kind!r}")


def center(A):
    return centralizer(A, A)


def transporter(ambient, P, Q):
    """Elements ``g`` of ``ambient`` with ``P^g <= Q``, as an array."""
    G = ambient.parent
    gens = np.asarray(P.generators, dtype=np.int32)
    if len(gens) == 0:
        return ambient.members.copy()
    img = kernels.conj_images(G.mult, G.inverse, ambient.members, gens)
    keep = kernels.rows_inside(img, Q.bitmap)
    return ambient.members[keep.astype(bool)]


def is_normal(N, H):
    """Whether ``N`` is normalized by ``H`` (``N`` need not lie in ``H``)."""
    G = H.parent
    if not len(N.generators) or not len(H.generators):
        return True
    img = kernels.conj_images(
        G.mult, G.inverse, np.asarray(H.generators, dtype=np.int32), N.members
    )
    return bool(kernels.rows_inside(img, N.bitmap).all())


def normal_closure(H, X):
    """Smallest subgroup normalized by ``H`` and containing ``X``."""
    G = H.parent
    N = X if isinstance(X, Subgroup) else generate_subgroup(G, X)
    hg = np.asarray(H.generators, dtype=np.int32)
    while True:
        if len(hg) == 0 or len(N.generators) == 0:
            return N
        img = kernels.conj_images(G.mult, G.inverse, hg, np.asarray(N.generators, dtype=np.int32))
        extra = [int(x) for x in np.unique(img) if x not in N]
        if not extra:
            return N
        N = generate_subgroup(G, list(N.generators) + extra)


def conjugacy_classes(H):
    """H-classes of elements of H, each a sorted array; ordered by least element."""
    G = H.parent
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in H.members:
        if seen[x]:
            continue
        cls = np.unique(
            kernels.conj_images(G.mult, G.inverse, H.members, np.array([x], dtype=np.int32))
        )
        seen[cls] = True
        classes.append(cls)
    return classes


# -- Sylow and residual subgroups --------------------------------------------


def sylow_subgroup(G, p, start=None):
    """A Sylow ``p``-subgroup by normalizer climbing.

    Starting from ``start`` (trivial by default, so the first step yields a
    cyclic group), each step adjoins the least element ``x`` of ``N_G(P)``
    outside ``P`` with ``x^p`` in ``P``.
    """
    H = as_subgroup(G)
    parent = H.parent
    target = p_part(H.order, p)
    P = parent.trivial if start is None else start
    if not P.is_p_group(p) or not P <= H:
        raise GroupError("start must be a p-subgroup of G")
    while P.order < target:
        N = normalizer(H, P)
        xs = N.members
        y = np.zeros(len(xs), dtype=np.int32)
        for _ in range(p):
            y = parent.mult[y, xs]
        ok = (P.bitmap[xs] == 0) & (P.bitmap[y] == 1)
        cand = xs[ok]
        if len(cand) == 0:
            raise GroupError("normalizer climbing stalled; table is inconsistent")
        P = generate_subgroup(parent, list(P.generators) + [int(cand[0])])
    return P


def _coprime_elements(H, p):
    orders = H.parent.element_orders[H.members]
    return H.members[orders % p != 0]


def _p_elements(H, p):
    orders = H.parent.element_orders[H.members]
    return H.members[np.array([is_p_power(int(o), p) for o in orders], dtype=bool)]


def residual_subgroup(G, p, kind, within=None):
    """``O_p``, ``O_p'``, ``O^p`` or ``O^p'`` of ``within`` (default all of G)."""
    parent = G.parent if isinstance(G, Subgroup) else G
    H = as_subgroup(within if within is not None else G)
    if kind == "O^p":
        return generate_subgroup(parent, _coprime_elements(H, p))
    if kind == "O^p'":
        return generate_subgroup(parent, _p_elements(H, p))
    if kind == "O_p":
        core = sylow_subgroup(H, p).bitmap.copy()
        hg = np.asarray(H.generators, dtype=np.int32)
        while True:
            xs = np.flatnonzero(core).astype(np.int32)
            if len(hg) == 0:
                break
            img = kernels.conj_images(parent.mult, parent.inverse, hg, xs)
            bad = ~core[img].all(axis=0).astype(bool)
            if not bad.any():
                break
            core[xs[bad]] = 0
        return parent._from_bitmap(core)
    if kind == "O_p'":
        pieces = []
        acc = parent.trivial
        for cls in conjugacy_classes(H):
            x = int(cls[0])
            if x in acc or parent.element_orders[x] % p == 0:
                continue
            N = normal_closure(H, generate_subgroup(parent, cls))
            if N.order % p != 0:
                pieces.append(N)
                acc = join(acc, N)
        return acc
    raise ValueError(f"unknown residual kind {kind!r}")


def op(G, p, within=None):
    return residual_subgroup(G, p, "O_p", within)


def op_prime(G, p, within=None):
    return residual_subgroup(G, p, "O_p'", within)


def hyp_residual(G, p, within=None):
    return residual_subgroup(G, p, "O^p", within)


# -- quotients ----------------------------------------------------------------


def quotient_group(parent, normal, within=None):
    """``within / normal`` as a new table plus the projection.

    Returns ``(Q, proj)`` where ``proj`` is an int array over the parent's
    elements, ``-1`` outside ``within``.  Cosets are numbered by their least
    element, so the identity coset is ``0``.
    """
    parent = parent.parent if isinstance(parent, Subgroup) else parent
    H = as_subgroup(within if within is not None else parent)
    if not normal <= H or not is_normal(normal, H):
        raise GroupError("quotient by a subgroup that is not normal")
    label = np.full(parent.order, -1, dtype=np.int64)
    reps = []
    for x in H.members:
        if label[x] >= 0:
            continue
        label[parent.mult[normal.members, x]] = len(reps)
        reps.append(int(x))
    reps = np.asarray(reps, dtype=np.int64)
    qmult = label[parent.mult[np.ix_(reps, reps)]]
    Q = GroupTable(qmult)
    return Q, label


# -- automorphisms --------------------------------------------------------------


def _extend_images(G, gens, imgs, order):
    """Map defined by ``gens[i] -> imgs[i]`` on the subgroup they generate.

    Returns the image array (-1 off the subgroup) or ``None`` if the
    assignment is not a well-defined injective homomorphism.
    """
    f = np.full(G.order, -1, dtype=np.int64)
    f[0] = 0
    queue = [0]
    mult = G.mult
    head = 0
    while head < len(queue):
        h = queue[head]
        head += 1
        fh = f[h]
        for g, y in zip(gens, imgs):
            hg = int(mult[h, g])
            v = int(mult[fh, y])
            if f[hg] == -1:
                f[hg] = v
                queue.append(hg)
            elif f[hg] != v:
                return None
    vals = f[f >= 0]
    if len(np.unique(vals)) != len(vals):
        return None
    return f


def automorphisms(G, fix=None, cap=None):
    """All automorphisms of ``G`` (optionally fixing ``fix`` pointwise).

    Backtracks over generator images, pruning by element order and by
    consistency on the partial subgroup.  Each automorphism is returned as an
    int array ``f`` over the parent's indices with ``f[x]`` the image of x.
    """
    H = as_subgroup(G)
    parent = H.parent
    cap = _caps.CAPS.max_aut_order if cap is None else cap
    if H.order > cap:
        raise CapError(f"automorphism search on order {H.order} exceeds cap {cap}")
    fixed_gens = list(fix.generators) if fix is not None else []
    gens = list(fixed_gens)
    cur = generate_subgroup(parent, gens) if gens else parent.trivial
    for x in H.members:
        x = int(x)
        if x not in cur:
            gens.append(x)
            cur = generate_subgroup(parent, gens)
    free = gens[len(fixed_gens):]
    orders = parent.element_orders
    out = []

    def search(k, imgs):
        if k == len(free):
            f = _extend_images(parent, gens, fixed_gens + imgs, H.order)
            if f is not None and (f >= 0).sum() == H.order:
                out.append(f)
            return
        g = free[k]
        for y in H.members:
            y = int(y)
            if orders[y] != orders[g]:
                continue
            trial = imgs + [y]
            f = _extend_images(parent, gens[: len(fixed_gens) + k + 1], fixed_gens + trial, H.order)
            if f is not None:
                search(k + 1, trial)

    search(0, [])
    return out


def automorphism_group(G, cap=None, fix=None):
    """``Aut(G)`` (or the automorphisms fixing ``fix``) as a permutation group.

    The result acts on positions ``0..|G|-1`` of ``G.members``; the attribute
    ``acting_on`` records ``G``.
    """
    H = as_subgroup(G)
    autos = automorphisms(H, fix=fix, cap=cap)
    pos = np.full(H.parent.order, -1, dtype=np.int64)
    pos[H.members] = np.arange(H.order)
    perms = [tuple(pos[f[H.members]].tolist()) for f in autos]
    A = GroupTable.from_permutation_set(perms, name="Aut")
    A.acting_on = H
    return A


# -- structure -------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    has_normal_p_complement: bool
    is_p_constrained: bool | None
    O_p_prime_trivial: bool


def structure_predicates(G, p, within=None):
    """Normal p-complement, p-constraint, and triviality of ``O_p'``.

    p-constraint is only evaluated when ``O_p'`` is trivial, otherwise it is
    reported as ``None``.
    """
    H = as_subgroup(within if within is not None else G)
    parent = H.parent
    opp = residual_subgroup(parent, p, "O_p'", H)
    upper = residual_subgroup(parent, p, "O^p", H)
    constrained = None
    if opp.order == 1:
        Op = residual_subgroup(parent, p, "O_p", H)
        constrained = centralizer(H, Op) <= Op
    return StructureReport(
        has_normal_p_complement=upper == opp,
        is_p_constrained=constrained,
        O_p_prime_trivial=opp.order == 1,
    )


# -- subgroups of p-groups ----------------------------------------------------


def subgroups_of_p_group(S, p, cap=None):
    """All subgroups of the p-group ``S``, sorted by (order, members).

    Layered: each subgroup of order p^(k+1) is ``<P, x>`` for some P of order
    p^k normal in it, so extending every P by elements of ``N_S(P)`` whose
    p-th power lies in P reaches them all.
    """
    cap = _caps.CAPS.max_sylow_order if cap is None else cap
    if S.order > cap:
        raise CapError(f"|S| = {S.order} exceeds subgroup-enumeration cap {cap}")
    if not S.is_p_group(p):
        raise GroupError("subgroup enumeration is only supported for p-groups")
    cache = S.parent.__dict__.setdefault("_psub_cache", {})
    hit = cache.get(S.mask)
    if hit is not None:
        return hit
    G = S.parent
    layer = [G.trivial]
    found = [G.trivial]
    while layer and layer[0].order < S.order:
        nxt = {}
        for P in layer:
            N = normalizer(S, P)
            covered = P.bitmap.copy()
            xs = N.members
            y = np.zeros(len(xs), dtype=np.int32)
            for _ in range(p):
                y = G.mult[y, xs]
            for x, xp in zip(xs.tolist(), y.tolist()):
                if covered[x] or not P.bitmap[xp]:
                    continue
                members = [P.members]
                z = x
                for _ in range(p - 1):
                    members.append(G.mult[P.members, z])
                    z = int(G.mult[z, x])
                Q = G.subgroup(np.concatenate(members))
                covered[Q.members] = 1
                nxt[Q.mask] = Q
        layer = sort_subgroups(nxt.values())
        found.extend(layer)
    result = tuple(found)
    cache[S.mask] = result
    return result


def is_isomorphic_fingerprint(A, B):
    """Cheap invariant comparison: order and element-order histogram."""
    oa = np.bincount(A.parent.element_orders[A.members])
    ob = np.bincount(B.parent.element_orders[B.members])
    n = max(len(oa), len(ob))
    return A.order == B.order and np.array_equal(np.pad(oa, (0, n - len(oa))), np.pad(ob, (0, n - len(ob))))


@dataclass(frozen=True)
class GroupMorphism:
    """A map between subgroups given by images of ``source.members``.

    ``target`` defaults to a subgroup of the source's parent; a morphism into
    another table (e.g. a quotient projection) names its target explicitly.
    """

    source: Subgroup
    images: tuple
    target: Subgroup | None = None

    def __call__(self, x):
        return self.images[self.source.position[int(x)]]

    def is_homomorphism(self):
        src = self.source
        tgt_parent = (self.target or src).parent
        M = src.parent.mult
        pos = src.position
        im = self.images
        for a in src:
            for b in src:
                if im[pos[int(M[a, b])]] != int(tgt_parent.mult[im[pos[a]], im[pos[b]]]):
                    return False
        return True

    def is_injective(self):
        return len(set(self.images)) == len(self.images)


def lcm_list(xs):
    out = 1
    for x in xs:
        out = out * int(x) // math.gcd(out, int(x))
    return out
