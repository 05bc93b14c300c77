"""Finite groupoids, their morphisms, degenerate classes and isomorphism search.

Arrow ids are arbitrary hashables.  Constructors for the degenerate
classes use pairs ``(y, x)`` for the arrow x -> y, so that a principal
groupoid is literally a set of pairs.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional

from .fincat import (
    CategoryError, FinCategory, FinFunctor, LazyComposition, ValidationReport,
    check_functor, opposite, validate_category,
)


class GroupoidError(CategoryError):
    pass


class EmptyBaseError(GroupoidError):
    pass


class UpsilonError(GroupoidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FinGroupoid:
    """A finite category together with an inverse table."""

    def __init__(self, cat: FinCategory, inverse: Mapping, name: str = ""):
        if not cat.objects:
            raise EmptyBaseError("groupoids must have a nonempty base")
        self.cat = cat
        self.inverse = inverse
        self.name = name or cat.name

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinGroupoid{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    @property
    def objects(self):
        return self.cat.objects

    @property
    def arrows(self):
        return self.cat.arrows

    def src(self, a):
        return self.cat.src(a)

    def tgt(self, a):
        return self.cat.tgt(a)

    def unit(self, b):
        return self.cat.identity[b]

    def compose(self, g, f):
        """g o f (f first)."""
        return self.cat.comp[(g, f)]

    def inv(self, a):
        return self.inverse[a]

    def divide(self, y, x):
        """y x^-1, defined when y and x share their source."""
        return self.compose(y, self.inv(x))

    def hom(self, x, y):
        return self.cat.hom(x, y)

    def out_arrows(self, x):
        return self.cat.out_arrows(x)

    def in_arrows(self, y):
        return self.cat.in_arrows(y)

    def loops(self, b):
        return self.cat.hom(b, b)

    def materialized(self) -> "FinGroupoid":
        cat = FinCategory(self.cat.objects, self.cat.arrows, self.cat.identity,
                          dict(self.cat.comp.items()), self.cat.name)
        return FinGroupoid(cat, dict(self.inverse), self.name)

    def with_tables(self, comp=None, inverse=None) -> "FinGroupoid":
        """Copy with replaced (e.g. mutated) composition or inverse tables."""
        cat = FinCategory(self.cat.objects, self.cat.arrows, self.cat.identity,
                          comp if comp is not None else dict(self.cat.comp.items()), self.cat.name)
        return FinGroupoid(cat, inverse if inverse is not None else dict(self.inverse), self.name)


def groupoid_from_law(objects: Iterable, arrows: Mapping, unit: Callable, compose: Callable,
                      inverse: Callable, name: str = "", materialize: bool = False) -> FinGroupoid:
    """Groupoid from an arrow list and laws; ``compose(g, f)`` is g o f."""
    arrows = dict(arrows)
    objects = list(objects)
    comp = LazyComposition(arrows, compose)
    if materialize:
        comp = dict(comp.items())
    cat = FinCategory(objects, arrows, {b: unit(b) for b in objects}, comp, name)
    return FinGroupoid(cat, {a: inverse(a) for a in arrows}, name)


def check_groupoid(g: FinGroupoid) -> ValidationReport:
    """Category axioms plus the inverse axioms."""
    rep = validate_category(g.cat)
    for a, (s, t) in g.arrows.items():
        b = g.inverse.get(a) if isinstance(g.inverse, dict) else (g.inverse[a] if a in g.inverse else None)
        if b is None:
            rep.add("missing inverse", [a])
            continue
        if b not in g.arrows or g.arrows[b] != (t, s):
            rep.add("inverse typing", [a, b])
            continue
        if g.cat.comp.get((b, a)) != g.cat.identity.get(s) or g.cat.comp.get((a, b)) != g.cat.identity.get(t):
            rep.add("inverse law", [a, b])
    return rep


# ---------------------------------------------------------------- morphisms

@dataclass(eq=False)
class GroupoidMorphism:
    source: FinGroupoid
    target: FinGroupoid
    f0: Mapping
    f1: Mapping
    name: str = ""

    def __call__(self, a):
        return self.f1[a]

    def __repr__(self):
        return f"<GroupoidMorphism {self.name or ''}: {self.source!r} -> {self.target!r}>"

    def __eq__(self, other):
        if not isinstance(other, GroupoidMorphism):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and all(self.f0[x] == other.f0[x] for x in self.source.objects)
                and all(self.f1[a] == other.f1[a] for a in self.source.arrows))

    __hash__ = object.__hash__

    def as_functor(self) -> FinFunctor:
        return FinFunctor(self.source.cat, self.target.cat, self.f0, self.f1, self.name)

    def check(self) -> ValidationReport:
        # morphisms are treated as immutable once built, so the verdict is kept
        rep = self.__dict__.get("_report")
        if rep is None:
            rep = check_functor(self.as_functor())
            self.__dict__["_report"] = rep
        return rep

    def compose(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """self o other."""
        if other.target is not self.source:
            raise GroupoidError("cannot compose: target of the right factor is not the source of the left")
        return GroupoidMorphism(
            other.source, self.target,
            {x: self.f0[other.f0[x]] for x in other.source.objects},
            {a: self.f1[other.f1[a]] for a in other.source.arrows},
            f"{self.name}.{other.name}" if self.name and other.name else "")

    def injective_on_arrows(self) -> bool:
        return len({self.f1[a] for a in self.source.arrows}) == len(self.source.arrows)

    def injective_on_objects(self) -> bool:
        return len({self.f0[x] for x in self.source.objects}) == len(self.source.objects)

    def surjective_on_objects(self) -> bool:
        return {self.f0[x] for x in self.source.objects} == set(self.target.objects)

    def surjective_on_arrows(self) -> bool:
        return {self.f1[a] for a in self.source.arrows} == set(self.target.arrows)

    def is_iso(self) -> bool:
        return (self.check().ok and self.injective_on_arrows() and self.surjective_on_arrows()
                and self.injective_on_objects() and self.surjective_on_objects())

    def inverse_morphism(self) -> "GroupoidMorphism":
        if not self.is_iso():
            raise GroupoidError("morphism is not an isomorphism")
        return GroupoidMorphism(self.target, self.source,
                                {v: k for k, v in self.f0.items()},
                                {v: k for k, v in self.f1.items()},
                                f"{self.name}^-1" if self.name else "")


def identity_morphism(g: FinGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(g, g, {x: x for x in g.objects}, {a: a for a in g.arrows}, "id")


# ---------------------------------------------------------------- constructors

def group_groupoid(elements: Iterable, mult: Callable, unit, inverse: Optional[Callable] = None,
                   name: str = "", obj: Any = "*") -> FinGroupoid:
    """One-object groupoid; ``mult(g, f)`` is g o f."""
    elements = list(elements)
    if inverse is None:
        table = {}
        for g in elements:
            table[g] = next(h for h in elements if mult(h, g) == unit)
        inverse = table.__getitem__
    return groupoid_from_law([obj], {e: (obj, obj) for e in elements}, lambda b: unit,
                             mult, inverse, name, materialize=True)


def cyclic_group(n: int) -> FinGroupoid:
    if n < 1:
        raise GroupoidError("cyclic groups need n >= 1")
    return group_groupoid(range(n), lambda g, f: (g + f) % n, 0, lambda g: (-g) % n, f"Z{n}")


def permutation_group(generators: Iterable, name: str = "") -> FinGroupoid:
    """Closure of permutations (tuples); composition (g o f)[i] = g[f[i]]."""
    gens = [tuple(p) for p in generators]
    n = len(gens[0]) if gens else 0
    e = tuple(range(n))
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(s[i] for i in x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)

    def mult(g, f):
        return tuple(g[i] for i in f)

    def inv(g):
        out = [0] * len(g)
        for i, v in enumerate(g):
            out[v] = i
        return tuple(out)

    return group_groupoid(order, mult, e, inv, name)


def symmetric_group(n: int) -> FinGroupoid:
    if n == 1:
        return permutation_group([(0,)], "S1")
    return permutation_group([tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])], f"S{n}")


def dihedral_group(n: int) -> FinGroupoid:
    """Symmetries of an n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], f"D{n}")


def klein_group() -> FinGroupoid:
    els = [(a, b) for a in range(2) for b in range(2)]
    return group_groupoid(els, lambda g, f: ((g[0] + f[0]) % 2, (g[1] + f[1]) % 2), (0, 0),
                          lambda g: g, "V4")


def quaternion_group() -> FinGroupoid:
    """Q8 with elements (sign, unit), unit in 'eijk'."""
    table = {
        ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
        ("i", "e"): (1, "i"), ("i", "i"): (-1, "e"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "e"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "e"), ("j", "k"): (1, "i"),
        ("k", "e"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "e"),
    }
    els = [(s, u) for s in (1, -1) for u in "eijk"]

    def mult(g, f):
        s, u = table[(g[1], f[1])]
        return (g[0] * f[0] * s, u)

    return group_groupoid(els, mult, (1, "e"), name="Q8")


def product_groupoid(g: FinGroupoid, h: FinGroupoid, name: str = "") -> FinGroupoid:
    objects = [(x, y) for x in g.objects for y in h.objects]
    arrows = {(a, b): ((g.src(a), h.src(b)), (g.tgt(a), h.tgt(b))) for a in g.arrows for b in h.arrows}
    return groupoid_from_law(
        objects, arrows, lambda o: (g.unit(o[0]), h.unit(o[1])),
        lambda p, q: (g.compose(p[0], q[0]), h.compose(p[1], q[1])),
        lambda p: (g.inv(p[0]), h.inv(p[1])),
        name or (f"{g.name}x{h.name}" if g.name and h.name else ""))


def disjoint_union(parts: Iterable[FinGroupoid], name: str = "") -> FinGroupoid:
    """Tag objects and arrows with the index of their part."""
    parts = list(parts)
    objects = [(k, x) for k, p in enumerate(parts) for x in p.objects]
    arrows = {(k, a): ((k, p.src(a)), (k, p.tgt(a))) for k, p in enumerate(parts) for a in p.arrows}
    return groupoid_from_law(
        objects, arrows, lambda o: (o[0], parts[o[0]].unit(o[1])),
        lambda q, p: (p[0], parts[p[0]].compose(q[1], p[1])),
        lambda p: (p[0], parts[p[0]].inv(p[1])), name)


def principal_groupoid(q: Mapping, name: str = "", base: Optional[Iterable] = None,
                       quotient: Optional[Iterable] = None) -> FinGroupoid:
    """Kernel-pair groupoid B x_Q B of a surjection q: B -> Q; arrows (y, x)."""
    base = list(base) if base is not None else list(q)
    if quotient is not None and set(quotient) != {q[b] for b in base}:
        raise GroupoidError("q is not surjective onto the given quotient")
    arrows = {(y, x): (x, y) for x in base for y in base if q[x] == q[y]}
    return groupoid_from_law(base, arrows, lambda b: (b, b), lambda g, f: (g[0], f[1]),
                             lambda a: (a[1], a[0]), name)


def banal(base: Iterable, name: str = "") -> FinGroupoid:
    base = list(base)
    return principal_groupoid({b: 0 for b in base}, name or f"banal{len(base)}", base)


def null(base: Iterable, name: str = "") -> FinGroupoid:
    base = list(base)
    return principal_groupoid({b: b for b in base}, name or f"null{len(base)}", base)


def make_degenerate(kind: str, base: Optional[Iterable] = None, q: Optional[Mapping] = None,
                    quotient: Optional[Iterable] = None) -> FinGroupoid:
    if kind == "null":
        return null(base)
    if kind == "banal":
        return banal(base)
    if kind == "principal":
        if q is None:
            raise GroupoidError("principal groupoids need the map q")
        return principal_groupoid(q, "principal", base, quotient)
    raise GroupoidError(f"unknown degenerate kind {kind!r}")


def is_plurigroup(g: FinGroupoid) -> bool:
    return all(s == t for s, t in g.arrows.values())


# ---------------------------------------------------------------- structure

def orbits(g: FinGroupoid) -> list:
    """Connected components, each a tuple in object order."""
    parent = {x: x for x in g.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in g.arrows.values():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rt] = rs
    groups = {}
    for x in g.objects:
        groups.setdefault(find(x), []).append(x)
    return [tuple(v) for v in groups.values()]


def orbit_map(g: FinGroupoid) -> dict:
    """Object -> first object of its orbit."""
    return {x: orb[0] for orb in orbits(g) for x in orb}


def isotropy(g: FinGroupoid, b) -> FinGroupoid:
    if b not in set(g.objects):
        raise GroupoidError(f"unknown object {b!r}")
    loops = g.loops(b)
    return groupoid_from_law([b], {a: (b, b) for a in loops}, lambda _: g.unit(b),
                             g.compose, g.inv, f"Iso({b})", materialize=True)


def opposite_groupoid(g: FinGroupoid):
    """(g^op, x -> x^-1)."""
    gop = FinGroupoid(opposite(g.cat), g.inverse, f"{g.name}^op" if g.name else "")
    sigma = GroupoidMorphism(g, gop, {x: x for x in g.objects}, {a: g.inv(a) for a in g.arrows}, "varsigma")
    return gop, sigma


def transitor(g: FinGroupoid) -> GroupoidMorphism:
    """(beta, alpha): g -> banal(B)."""
    target = banal(g.objects)
    return GroupoidMorphism(g, target, {x: x for x in g.objects},
                            {a: (g.tgt(a), g.src(a)) for a in g.arrows}, "transitor")


def is_principal(g: FinGroupoid) -> bool:
    """Injective transitor."""
    return len({(g.tgt(a), g.src(a)) for a in g.arrows}) == len(g.arrows)


def godement_realize(g: FinGroupoid):
    """(Q, iso onto B x_Q B) when the transitor is injective, else None."""
    if not is_principal(g):
        return None
    q = orbit_map(g)
    Q = tuple(orb[0] for orb in orbits(g))
    target = principal_groupoid(q, "BxQB", g.objects)
    iso = GroupoidMorphism(g, target, {x: x for x in g.objects},
                           {a: (g.tgt(a), g.src(a)) for a in g.arrows}, "godement")
    if not iso.is_iso():
        raise GroupoidError("kernel-pair comparison is not an isomorphism")
    return Q, iso


# ---------------------------------------------------------------- Upsilon data

@dataclass
class UpsilonData:
    DeltaG: tuple     # pairs (y, x) sharing their source; projections pr1 = y, pr2 = x
    G: tuple
    B: tuple
    delta: Mapping
    alpha: Mapping
    omega: Mapping


def extract_upsilon(g: FinGroupoid) -> UpsilonData:
    pairs = tuple((y, x) for x in g.arrows for y in g.out_arrows(g.src(x)))
    return UpsilonData(pairs, tuple(g.arrows), tuple(g.objects),
                       {(y, x): g.divide(y, x) for y, x in pairs},
                       {a: g.src(a) for a in g.arrows},
                       {b: g.unit(b) for b in g.objects})


def groupoid_from_upsilon(u: UpsilonData, name: str = "") -> FinGroupoid:
    """Rebuild target, inverse and composition from source, unit and division."""
    G, B = list(u.G), list(u.B)
    for b in B:
        if u.alpha.get(u.omega.get(b)) != b:
            raise UpsilonError("alpha o omega is not the identity", b)
    expected = {(y, x) for x in G for y in G if u.alpha[y] == u.alpha[x]}
    if set(u.DeltaG) != expected:
        extra = next(iter(set(u.DeltaG) ^ expected))
        raise UpsilonError("DeltaG is not the fibre product of alpha with itself", extra)
    for p in u.DeltaG:
        if u.delta.get(p) not in set(G):
            raise UpsilonError("division leaves G", p)
    beta = {x: u.alpha[u.delta[(x, x)]] for x in G}
    inv = {x: u.delta[(u.omega[u.alpha[x]], x)] for x in G}
    arrows = {x: (u.alpha[x], beta[x]) for x in G}
    comp = {}
    for x in G:
        for y in G:
            if u.alpha[y] == beta[x]:
                if (y, inv[x]) not in u.delta:
                    raise UpsilonError("inverse does not share the source of its composite", (y, x))
                comp[(y, x)] = u.delta[(y, inv[x])]
    cat = FinCategory(B, arrows, dict(u.omega), comp, name)
    g = FinGroupoid(cat, inv, name)
    rep = check_groupoid(g)
    if not rep.ok:
        v = rep.violations[0]
        raise UpsilonError(f"reconstructed data is not a groupoid ({v.kind})", v.arrows)
    for y, x in u.DeltaG:
        if u.delta[(y, x)] != g.compose(y, inv[x]):
            raise UpsilonError("division is not y x^-1", (y, x))
    return g


# ---------------------------------------------------------------- isomorphism search

def _spanning_tree(g: FinGroupoid, root, allowed: Optional[set] = None):
    """BFS order of a component and a tree arrow root -> x for each x."""
    tree = {root: g.unit(root)}
    order = [root]
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for a in g.out_arrows(x):
            y = g.tgt(a)
            if y not in tree and (allowed is None or y in allowed):
                tree[y] = g.compose(a, tree[x])
                order.append(y)
                queue.append(y)
    return order, tree


def _generators(g: FinGroupoid, b) -> list:
    loops = g.loops(b)
    gens, span = [], {g.unit(b)}
    for a in loops:
        if a in span:
            continue
        gens.append(a)
        span = _closure(g, b, gens)
    return gens


def _closure(g, b, gens):
    seen = {g.unit(b)}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.compose(s, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _order(g, a):
    b = g.src(a)
    k, x = 1, a
    while x != g.unit(b):
        x = g.compose(a, x)
        k += 1
    return k


def iter_group_isomorphisms(g: FinGroupoid, b, h: FinGroupoid, c, arrow_ok=None):
    """All isomorphisms of isotropy groups g(b) -> h(c), as dicts."""
    loops_g, loops_h = g.loops(b), h.loops(c)
    if len(loops_g) != len(loops_h):
        return
    gens = _generators(g, b)
    cands = []
    for s in gens:
        o = _order(g, s)
        opts = [t for t in loops_h if _order(h, t) == o and (arrow_ok is None or arrow_ok(s, t))]
        cands.append(opts)
    for images in itertools.product(*cands):
        phi = {g.unit(b): h.unit(c)}
        queue = deque([g.unit(b)])
        ok = True
        while queue and ok:
            x = queue.popleft()
            for s, t in zip(gens, images):
                y = g.compose(s, x)
                v = h.compose(t, phi[x])
                if y in phi:
                    if phi[y] != v:
                        ok = False
                        break
                else:
                    phi[y] = v
                    queue.append(y)
        if not ok or len(phi) != len(loops_g) or len(set(phi.values())) != len(loops_h):
            continue
        if all(phi[g.compose(p, q)] == h.compose(phi[p], phi[q]) for p in loops_g for q in loops_g):
            if arrow_ok is None or all(arrow_ok(k, v) for k, v in phi.items()):
                yield phi


def _component_isos(g, comp_g, h, comp_h, arrow_ok=None, object_ok=None):
    """Yield (f0, f1) restricted to one component pair."""
    comp_g_set, comp_h_set = set(comp_g), set(comp_h)
    root = comp_g[0]
    order, tree = _spanning_tree(g, root, comp_g_set)
    arrows_g = [a for a in g.arrows if g.src(a) in comp_g_set]
    for s in comp_h:
        if object_ok is not None and not object_ok(root, s):
            continue
        for psi in iter_group_isomorphisms(g, root, h, s, arrow_ok):
            # choose tree images one object at a time
            def extend(k, f0, tree_img):
                if k == len(order):
                    yield dict(f0), dict(tree_img)
                    return
                x = order[k]
                used = set(f0.values())
                for t in h.out_arrows(s):
                    y = h.tgt(t)
                    if y in used or y not in comp_h_set:
                        continue
                    if object_ok is not None and not object_ok(x, y):
                        continue
                    if arrow_ok is not None and not arrow_ok(tree[x], t):
                        continue
                    f0[x] = y
                    tree_img[x] = t
                    yield from extend(k + 1, f0, tree_img)
                    del f0[x]
                    del tree_img[x]

            for f0, timg in extend(1, {root: s}, {root: h.unit(s)}):
                f1 = {}
                good = True
                for a in arrows_g:
                    x, y = g.src(a), g.tgt(a)
                    k = g.compose(g.inv(tree[y]), g.compose(a, tree[x]))
                    v = h.compose(timg[y], h.compose(psi[k], h.inv(timg[x])))
                    if arrow_ok is not None and not arrow_ok(a, v):
                        good = False
                        break
                    f1[a] = v
                if good:
                    yield f0, f1


def _component_signature(g, comp):
    b = comp[0]
    return len(comp), len(g.loops(b))


def iter_isomorphisms(g: FinGroupoid, h: FinGroupoid, arrow_ok=None, object_ok=None):
    """Isomorphisms g -> h, optionally subject to per-arrow / per-object constraints."""
    if len(g.objects) != len(h.objects) or len(g.arrows) != len(h.arrows):
        return
    comps_g, comps_h = orbits(g), orbits(h)
    if sorted(map(lambda c: _component_signature(g, c), comps_g)) != \
            sorted(map(lambda c: _component_signature(h, c), comps_h)):
        return

    def match(k, used, f0, f1):
        if k == len(comps_g):
            yield GroupoidMorphism(g, h, dict(f0), dict(f1), "iso")
            return
        cg = comps_g[k]
        for j, ch in enumerate(comps_h):
            if j in used or _component_signature(h, ch) != _component_signature(g, cg):
                continue
            for c0, c1 in _component_isos(g, cg, h, ch, arrow_ok, object_ok):
                f0.update(c0)
                f1.update(c1)
                yield from match(k + 1, used | {j}, f0, f1)
                for x in c0:
                    del f0[x]
                for a in c1:
                    del f1[a]
                if arrow_ok is None and object_ok is None:
                    break   # any component iso will do when unconstrained

    yield from match(0, frozenset(), {}, {})


def find_isomorphism(g: FinGroupoid, h: FinGroupoid, arrow_ok=None, object_ok=None) -> Optional[GroupoidMorphism]:
    for iso in iter_isomorphisms(g, h, arrow_ok, object_ok):
        if iso.is_iso():
            return iso
    return None


def find_isomorphism_over(f: GroupoidMorphism, g: GroupoidMorphism) -> Optional[GroupoidMorphism]:
    """An isomorphism phi: source(f) -> source(g) with g o phi = f (common target)."""
    if f.target is not g.target:
        raise GroupoidError("morphisms must share their target")
    return find_isomorphism(f.source, g.source,
                            arrow_ok=lambda a, b: g.f1[b] == f.f1[a],
                            object_ok=lambda x, y: g.f0[y] == f.f0[x])


def are_isomorphic(g: FinGroupoid, h: FinGroupoid) -> bool:
    return find_isomorphism(g, h) is not None
