"""Brute-force reference computations, written against raw tuples and tables.

Nothing here calls the constructions it is used to check: maps of finite
sets are image tuples, groups are multiplication functions, and every
universal property is tested by enumerating all candidate arrows.
"""

from __future__ import annotations

import itertools


def _maps(n: int, m: int):
    return itertools.product(range(m), repeat=n)


def _after(g, f):
    """g o f for image tuples."""
    return tuple(g[i] for i in f)


# ---------------------------------------------------------------- squares of finite sets

def set_square_oracle(sizes, top, left, right, bottom, bound: int) -> dict:
    """Classify A' -top-> A, A' -left-> B', A -right-> B, B' -bottom-> B among sets of size <= bound.

    ``sizes`` is (|A'|, |A|, |B'|, |B|); maps are image tuples.
    """
    a1, a, b1, b = sizes
    out = {"commutes": _after(bottom, left) == _after(right, top)}
    if not out["commutes"]:
        return dict(out, ipb=False, spb=False, gpb=False, s_exact=False, pullback=False)
    pairs = [(left[k], top[k]) for k in range(a1)]
    out["ipb"] = len(set(pairs)) == len(pairs)
    # universal property against every cone with apex of size <= bound
    unique = True
    for x in range(bound + 1):
        for u in _maps(x, b1):
            for v in _maps(x, a):
                if _after(bottom, u) != _after(right, v):
                    continue
                n = sum(1 for m in _maps(x, a1) if _after(left, m) == u and _after(top, m) == v)
                if n != 1:
                    unique = False
                    break
            if not unique:
                break
        if not unique:
            break
    out["pullback"] = unique
    out["gpb"] = unique and out["ipb"]
    fibre = {(p, q) for p in range(b1) for q in range(a) if bottom[p] == right[q]}
    out["spb"] = len(fibre) <= bound and fibre <= set(pairs)
    onto = all(len(set(f)) == n for f, n in ((top, a), (left, b1), (right, b), (bottom, b)))
    pushout = True
    if out["gpb"] and onto:
        for y in range(bound + 1):
            for p in _maps(b1, y):
                for q in _maps(a, y):
                    if _after(p, left) != _after(q, top):
                        continue
                    n = sum(1 for m in _maps(b, y) if _after(m, bottom) == p and _after(m, right) == q)
                    if n != 1:
                        pushout = False
                        break
                if not pushout:
                    break
            if not pushout:
                break
    out["s_exact"] = out["gpb"] and onto and pushout
    return out


# ---------------------------------------------------------------- groupoid axioms

def groupoid_axioms_hold(arrows: dict, identity: dict, comp, inverse) -> bool:
    """Associativity, units and inverses by direct enumeration of the tables."""
    def c(g, f):
        return comp.get((g, f))

    for f, (s, t) in arrows.items():
        if c(f, identity[s]) != f or c(identity[t], f) != f:
            return False
        g = inverse.get(f)
        if g is None or arrows.get(g) != (t, s):
            return False
        if c(g, f) != identity[s] or c(f, g) != identity[t]:
            return False
    for f, (s, t) in arrows.items():
        for g, (s2, t2) in arrows.items():
            if s2 != t:
                continue
            gf = c(g, f)
            if gf is None or arrows.get(gf) != (s, t2):
                return False
            for h, (s3, t3) in arrows.items():
                if s3 == t2 and c(h, gf) != c(c(h, g), f):
                    return False
    return True


# ---------------------------------------------------------------- activation by cosets

class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)

    def classes(self):
        return {self.find(x) for x in self.parent}


def activation_counts(g_arrows: dict, g_comp, g_inv, h_arrows: dict, f0: dict, f1: dict):
    """(|points|, |arrows|) of the free activation G x_H B_H of f: H -> G.

    Points are pairs (g, x) with g leaving f(x), glued by (g, x) ~ (g f(h)^-1, y)
    for h: x -> y; the action groupoid has one arrow per point and per arrow of
    G leaving its moment.
    """
    pts = [(g, x) for x in f0 for g, (s, _) in g_arrows.items() if s == f0[x]]
    uf = _UnionFind(pts)
    for h, (x, y) in h_arrows.items():
        fh_inv = g_inv[f1[h]]
        for g, (s, _) in g_arrows.items():
            if s == f0[x]:
                uf.union((g, x), (g_comp(g, fh_inv), y))
    points = uf.classes()
    out_deg = {}
    for g, (s, _) in g_arrows.items():
        out_deg[s] = out_deg.get(s, 0) + 1
    moment = {uf.find(p): g_arrows[p[0]][1] for p in pts}
    return len(points), sum(out_deg[moment[p]] for p in points)


# ---------------------------------------------------------------- cocycles and torsors

def torsor_counts(pieces, table: dict, elements, mult) -> tuple:
    """(|P|, |(P x P)/H|) for the torsor glued from pieces x H along ``table[(j, i, x)]``."""
    pts = [(i, x, h) for i, p in enumerate(pieces) for x in p for h in elements]
    uf = _UnionFind(pts)
    for (j, i, x), g in table.items():
        for h in elements:
            uf.union((i, x, h), (j, x, mult(g, h)))
    classes = sorted(uf.classes())
    rep = {p: uf.find(p) for p in pts}
    act = {(k, c): rep[(c[0], c[1], mult(c[2], k))] for k in elements for c in classes}
    pairs = [(y, x) for y in classes for x in classes]
    uf2 = _UnionFind(pairs)
    for k in elements:
        for y, x in pairs:
            uf2.union((y, x), (act[(k, y)], act[(k, x)]))
    return len(classes), len(uf2.classes())


def cocycles_related(pieces, t1: dict, t2: dict, elements, mult, inv) -> bool:
    """Is there c: pieces -> H with t2[j,i,x] = c_j t1[j,i,x] c_i^-1 everywhere?"""
    for c in itertools.product(elements, repeat=len(pieces)):
        if all(t2[(j, i, x)] == mult(mult(c[j], t1[(j, i, x)]), inv(c[i])) for (j, i, x) in t1):
            return True
    return False


def free_orbit_counts(elements, action: dict, points) -> dict:
    """Counts for a free action: orbits of P, orbits of P x P, |H x banal(P)|."""
    orbit = {}
    for p in points:
        orbit.setdefault(frozenset(action[(g, p)] for g in elements), None)
    pair_orbits = {frozenset((action[(g, y)], action[(g, x)]) for g in elements)
                   for y in points for x in points}
    return {"base": len(orbit), "gauge_arrows": len(pair_orbits),
            "middle_arrows": len(elements) * len(points) ** 2}
