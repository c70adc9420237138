"""Naive oracles on permutation tuples, independent of fusionkit internals.

Permutations are 0-based image tuples; products read left to right
(``mul(a, b)`` is "a, then b"), and ``x^g = g^-1 x g``.
"""


def mul(a, b):
    return tuple(b[i] for i in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(x, g):
    return mul(mul(inv(g), x), g)


def identity(n):
    return tuple(range(n))


def closure(gens, n):
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mul(a, g)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def order_of(x):
    e = identity(len(x))
    k, y = 1, x
    while y != e:
        y = mul(y, x)
        k += 1
    return k


def centralizer(G, X):
    return frozenset(g for g in G if all(mul(g, x) == mul(x, g) for x in X))


def normalizer(G, X):
    return frozenset(g for g in G if all(conj(x, g) in X for x in X))


def center(G):
    return centralizer(G, G)


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def all_subgroups(G, n):
    """Every subgroup of G, by repeatedly joining cyclic subgroups."""
    cyclic = {closure([g], n) for g in G}
    subs = set(cyclic) | {frozenset([identity(n)])}
    frontier = set(subs)
    while frontier:
        nxt = set()
        for A in frontier:
            for C in cyclic:
                if not C <= A:
                    J = closure(list(A | C), n)
                    if J not in subs:
                        subs.add(J)
                        nxt.add(J)
        frontier = nxt
    return subs


def homs(G, P, Q):
    """Distinct maps ``x -> x^g`` on P (as sorted-key dicts) with ``P^g <= Q``."""
    keys = sorted(P)
    out = set()
    for g in G:
        img = tuple(conj(x, g) for x in keys)
        if all(y in Q for y in img):
            out.add(img)
    return out


def o_p(G, p, n):
    """``O^p(G)``: generated by the elements of order prime to p."""
    return closure([g for g in G if order_of(g) % p], n)


def o_p_prime_core(G, p, n):
    """Largest normal p'-subgroup, by scanning all normal subgroups of G
    generated by conjugacy classes of p'-elements."""
    best = frozenset([identity(n)])
    elems = [g for g in G if order_of(g) % p]
    for g in elems:
        N = closure([conj(g, h) for h in G], n)
        if len(N) % p and all(order_of(x) % p for x in N):
            best = closure(list(best | N), n)
    return best


def direct_centralizer_set(G, S, H, T, p):
    """``{a in C_S(T) : every H-map P -> T is c_h|_P with h in C_G(a)}``."""
    n = len(next(iter(G)))
    CST = centralizer(S, T)
    subs = all_subgroups(T, n)
    out = []
    for a in CST:
        Ca = centralizer(G, [a])
        if all(homs(H, P, T) <= homs(Ca, P, S) for P in subs):
            out.append(a)
    return frozenset(out)


def is_closed(X, n):
    return closure(list(X), n) == X
