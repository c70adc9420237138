"""Deterministic example groups and normal pairs.

Spec grammar::

    sym:n | alt:n | cyclic:n | dihedral:n        (dihedral:n has order 2n)
    product:(spec, spec, ...)                    (disjoint blocks of points)
    file:path.json
    pair:(G-spec, H-spec, p)                     (H padded into G's points)
    example:weakly-normal

Group files are JSON: ``{"degree": n, "generators": [[cycle, ...], ...]}``
with 1-based cycles, or ``{"table": [[...], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .fusion import (
    FullSubsystem,
    RealizedFusionSystem,
    centralizer_subgroup_direct,
    centralizer_system,
    intersect_fusion_systems,
    invariance_and_normality,
    is_saturated,
    is_subsystem,
    realized_pair,
    same_system,
)
from .groups import (
    GroupError,
    GroupTable,
    centralizer,
    generate_subgroup,
    join,
)


class SpecError(ValueError):
    """Unparseable or unresolvable catalog spec."""


# -- parsing -----------------------------------------------------------------


def _split_top(s):
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {s!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecError(f"unbalanced parentheses in {s!r}")
    parts.append("".join(cur).strip())
    return parts


def parse_spec(spec):
    """Return ``(kind, args)``; args are strings or nested specs."""
    spec = spec.strip()
    if ":" not in spec:
        raise SpecError(f"spec {spec!r} has no kind prefix")
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    rest = rest.strip()
    if kind in ("product", "pair"):
        if not (rest.startswith("(") and rest.endswith(")")):
            raise SpecError(f"{kind} needs a parenthesized argument list")
        return kind, _split_top(rest[1:-1])
    return kind, [rest]


def _int_arg(kind, arg):
    try:
        n = int(arg)
    except ValueError:
        raise SpecError(f"{kind} needs an integer, got {arg!r}") from None
    if n < 1:
        raise SpecError(f"{kind} needs a positive integer")
    return n


# -- permutation generators (0-based image tuples) -------------------------------


def _cycle(degree, pts):
    img = list(range(degree))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a] = b
    return tuple(img)


def _sym_gens(n):
    if n == 1:
        return [tuple([0])]
    if n == 2:
        return [(1, 0)]
    return [_cycle(n, list(range(n))), _cycle(n, [0, 1])]


def _alt_gens(n):
    if n < 3:
        return [tuple(range(n))]
    return [_cycle(n, [0, 1, k]) for k in range(2, n)]


def _cyclic_gens(n):
    return [_cycle(n, list(range(n)))] if n > 1 else [(0,)]


def _dihedral_gens(n):
    if n == 1:
        return 2, [(1, 0)]
    if n == 2:
        return 4, [(1, 0, 3, 2), (2, 3, 0, 1)]
    refl = tuple((-i) % n for i in range(n))
    return n, [_cycle(n, list(range(n))), refl]


def cycles_to_perm(degree, cycles):
    """1-based cycle list to a 0-based image tuple."""
    img = list(range(degree))
    for c in cycles:
        pts = [int(x) - 1 for x in c]
        if any(not 0 <= x < degree for x in pts):
            raise SpecError(f"cycle {c} leaves the point set")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


@dataclass
class PermSpec:
    """Generators on ``degree`` points; realized lazily as a GroupTable."""

    degree: int
    generators: list
    name: str
    table: GroupTable | None = None

    def group(self):
        if self.table is None:
            self.table = GroupTable.from_permutations(self.generators, self.degree, name=self.name)
        return self.table


def _pad(gen, degree):
    return tuple(gen) + tuple(range(len(gen), degree))


def _shift(gen, offset, degree):
    img = list(range(degree))
    for i, x in enumerate(gen):
        img[i + offset] = x + offset
    return tuple(img)


def perm_spec(spec):
    kind, args = parse_spec(spec)
    if kind == "sym":
        n = _int_arg(kind, args[0])
        return PermSpec(n, _sym_gens(n), spec)
    if kind == "alt":
        n = _int_arg(kind, args[0])
        return PermSpec(n, _alt_gens(n), spec)
    if kind == "cyclic":
        n = _int_arg(kind, args[0])
        return PermSpec(n, _cyclic_gens(n), spec)
    if kind == "dihedral":
        n = _int_arg(kind, args[0])
        d, gens = _dihedral_gens(n)
        return PermSpec(d, gens, spec)
    if kind == "product":
        parts = [perm_spec(a) for a in args]
        degree = sum(p.degree for p in parts)
        gens, off = [], 0
        for part in parts:
            gens.extend(_shift(g, off, degree) for g in part.generators)
            off += part.degree
        return PermSpec(degree, gens, spec)
    if kind == "file":
        return _load_file(args[0], spec)
    if kind == "example":
        if args[0] == "weakly-normal":
            G = weakly_normal_generators()
            return PermSpec(12, G, spec)
        raise SpecError(f"unknown example {args[0]!r}")
    raise SpecError(f"unknown spec kind {kind!r}")


def _load_file(path, spec):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read group file {path}: {exc}") from None
    if "table" in data:
        ps = PermSpec(0, [], spec)
        ps.table = GroupTable.from_table(data["table"], name=spec)
        ps.table.verify(cap=ps.table.order)
        return ps
    if "degree" in data and "generators" in data:
        d = int(data["degree"])
        gens = [cycles_to_perm(d, g) for g in data["generators"]]
        return PermSpec(d, gens or [tuple(range(d))], spec)
    raise SpecError(f"group file {path} needs 'table' or 'degree'+'generators'")


def build_group(spec):
    return perm_spec(spec).group()


# -- pairs ---------------------------------------------------------------------


@dataclass
class PairSpec:
    spec: str
    G: object
    H: object
    p: int


def build_pair_groups(spec):
    """Resolve ``pair:(G, H, p)`` to subgroups ``H <= G`` of one table."""
    kind, args = parse_spec(spec)
    if kind != "pair" or len(args) != 3:
        raise SpecError("pair spec must be pair:(G-spec, H-spec, p)")
    gs, hs = perm_spec(args[0]), perm_spec(args[1])
    p = _int_arg("pair", args[2])
    if hs.degree > gs.degree:
        raise SpecError("H needs at most as many points as G")
    table = gs.group()
    if table.perms is None:
        raise SpecError("pairs need permutation groups")
    try:
        hidx = [table.index_of_perm(_pad(g, gs.degree)) for g in hs.generators]
    except GroupError as exc:
        raise SpecError(f"H is not inside G: {exc}") from None
    return PairSpec(spec, table.whole, generate_subgroup(table, hidx), p)


def build_pair(spec, classify=True):
    """Normal pair for ``pair:(G, H, p)``; H must be normal and ``S & H`` Sylow."""
    ps = build_pair_groups(spec)
    return realized_pair(ps.G, ps.H, ps.p, name=spec, classify=classify)


def build(spec):
    kind, _ = parse_spec(spec)
    if kind == "pair":
        return build_pair(spec)
    if spec.strip() == "example:weakly-normal":
        return example_weakly_normal()
    return build_group(spec)


# -- the weakly normal, non-normal example -----------------------------------------------


def weakly_normal_generators():
    """Generators of ``G = S<x1x2, x1x3>`` on points 1..12 (0-based here)."""
    block = [(0, 1), (2, 3)], [(0, 2), (1, 3)]
    gens = []
    for b in range(3):
        off = 4 * b
        for pairs in block:
            gens.append(_cycles0(12, [[off + a for a in c] for c in pairs]))
    x = [_cycles0(12, [[4 * b, 4 * b + 1, 4 * b + 2]]) for b in range(3)]
    gens.append(_mul(x[0], x[1]))
    gens.append(_mul(x[0], x[2]))
    return gens


def _cycles0(degree, cycles):
    img = list(range(degree))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def _mul(a, b):
    """a then b."""
    return tuple(b[i] for i in a)


@dataclass
class WeaklyNormalExample:
    G: object
    S: object
    blocks_S: list
    blocks_H: list
    x: list
    F: object
    F1: object
    F2: object
    E: object
    timings: dict = field(default_factory=dict)


def example_weakly_normal():
    """Systems ``F = F_S(G)``, ``F1``, ``F2`` and ``E = F1 & F2`` on ``S_1``.

    The ambient table is ``A_4 x A_4 x A_4`` on 12 points; ``H_i`` acts on
    block i and ``x_i`` is the 3-cycle on the first three points of block i.
    """
    gens = []
    for b in range(3):
        gens.extend(_shift(g, 4 * b, 12) for g in _alt_gens(4))
    U = GroupTable.from_permutations(gens, 12, name="A4^3")
    idx = U.index_of_perm
    x = [idx(_cycles0(12, [[4 * b, 4 * b + 1, 4 * b + 2]])) for b in range(3)]
    Hs, Ss = [], []
    for b in range(3):
        off = 4 * b
        v = [_cycles0(12, [[off, off + 1], [off + 2, off + 3]]),
             _cycles0(12, [[off, off + 2], [off + 1, off + 3]])]
        Sb = generate_subgroup(U, [idx(g) for g in v])
        Ss.append(Sb)
        Hs.append(generate_subgroup(U, [*Sb.generators, x[b]]))
    S = join(*Ss)
    m = U.mult
    x12, x13 = int(m[x[0], x[1]]), int(m[x[0], x[2]])
    G = generate_subgroup(U, [*S.generators, x12, x13])
    F = RealizedFusionSystem(G, S, 2, name="F")
    S12, S13 = join(Ss[0], Ss[1]), join(Ss[0], Ss[2])
    F1 = RealizedFusionSystem(generate_subgroup(U, [*S12.generators, x12]), S12, 2, name="F1")
    F2 = RealizedFusionSystem(generate_subgroup(U, [*S13.generators, x13]), S13, 2, name="F2")
    E = intersect_fusion_systems(FullSubsystem(F1, Ss[0]), FullSubsystem(F2, Ss[0]))
    return WeaklyNormalExample(G, S, Ss, Hs, x, F, F1, F2, E)


def regression_example_weakly_normal(ex=None):
    """Verdicts of the weakly-normal example, in a fixed order."""
    ex = ex or example_weakly_normal()
    S1, S2, S3 = ex.blocks_S
    H1 = ex.blocks_H[0]
    out = {}
    out["E_equals_F_S1(H1)"] = same_system(ex.E, RealizedFusionSystem(H1, S1, 2))
    sat, _ = is_saturated(ex.E)
    out["E_saturated"] = sat
    level, witness = invariance_and_normality(ex.F, ex.E)
    out["level"] = level
    out["E_invariant"] = level in ("invariant", "weakly-normal", "normal")
    out["E_normal"] = level == "normal"
    out["normality_witness"] = witness
    G = ex.G.parent
    x12 = int(G.mult[ex.x[0], ex.x[1]])
    out["witness_c_x1x2_fails"] = _extension_fails(ex, x12)
    out["E_in_C_F(S2)"] = is_subsystem(ex.E, centralizer_system(ex.F, S2))
    out["E_in_C_F(S3)"] = is_subsystem(ex.E, centralizer_system(ex.F, S3))
    out["E_in_C_F(S2S3)"] = is_subsystem(ex.E, centralizer_system(ex.F, join(S2, S3)))
    direct = centralizer_subgroup_direct(ex.F, ex.E)
    out["direct_set"] = direct.members
    out["direct_set_size"] = len(direct.members)
    out["direct_is_subgroup"] = direct.is_subgroup
    return out


def _extension_fails(ex, g):
    """c_g on S restricts into Aut_E(S_1) but acts nontrivially on S/S_1."""
    from .fusion import Morphism
    from .groups import center

    G = ex.G.parent
    S1 = ex.blocks_S[0]
    S = ex.S
    phi = Morphism.conjugation(S, g)
    in_E = phi.restrict(S1).images in ex.E.hom_images(S1)
    CST = centralizer(S, S1)
    Z = center(S1)
    comm = G.mult[G.inverse[CST.members], phi.table[CST.members]]
    return bool(in_E and not Z.bitmap[comm].all())


# -- default catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupEntry:
    spec: str
    p: int


DEFAULT_GROUPS = [
    GroupEntry("sym:3", 2),
    GroupEntry("sym:3", 3),
    GroupEntry("sym:4", 2),
    GroupEntry("sym:4", 3),
    GroupEntry("alt:4", 2),
    GroupEntry("dihedral:4", 2),
    GroupEntry("dihedral:6", 2),
    GroupEntry("cyclic:4", 2),
    GroupEntry("product:(alt:4,cyclic:2)", 2),
    GroupEntry("product:(sym:3,cyclic:3)", 3),
    GroupEntry("product:(sym:3,sym:3)", 3),
    GroupEntry("alt:5", 2),
    GroupEntry("sym:5", 2),
    GroupEntry("alt:6", 2),
    GroupEntry("sym:6", 2),
]

DEFAULT_PAIRS = [
    "pair:(sym:4, alt:4, 2)",
    "pair:(product:(alt:4,cyclic:2), alt:4, 2)",
    "pair:(sym:6, alt:6, 2)",
    "pair:(product:(sym:3,cyclic:3), sym:3, 3)",
    "pair:(sym:3, alt:3, 3)",
    "pair:(sym:4, sym:4, 2)",
    "pair:(dihedral:4, dihedral:4, 2)",
    "pair:(sym:5, alt:5, 2)",
]

CONJECTURE_PAIRS = ["pair:(sym:6, alt:6, 2)", "pair:(sym:7, alt:7, 2)"]


def sn_an_pairs(lo, hi, p=2):
    return [f"pair:(sym:{n}, alt:{n}, {p})" for n in range(lo, hi + 1)]

