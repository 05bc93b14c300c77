"""Deterministic corpus of small groupoids and morphisms used by the sweeps.

Every finite connected groupoid is a group times a banal groupoid, so the
corpus is built from disjoint unions of such pieces, kept within 5 objects
and 24 arrows.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .canonical import delta_groupoid
from .groupoid import (
    FinGroupoid, GroupoidMorphism, banal, check_groupoid, cyclic_group, dihedral_group,
    disjoint_union, identity_morphism, klein_group, null, principal_groupoid,
    product_groupoid, quaternion_group, symmetric_group, transitor,
)
from .morphism import ActionLaw, action_groupoid

MAX_OBJECTS = 5
MAX_ARROWS = 24


def _groups() -> dict:
    return {
        "1": cyclic_group(1), "Z2": cyclic_group(2), "Z3": cyclic_group(3), "Z4": cyclic_group(4),
        "V4": klein_group(), "Z5": cyclic_group(5), "Z6": cyclic_group(6), "S3": symmetric_group(3),
        "Z8": cyclic_group(8), "D4": dihedral_group(4), "Q8": quaternion_group(),
    }


def _piece(group: FinGroupoid, k: int, gname: str) -> FinGroupoid:
    if k == 1:
        return group
    return product_groupoid(group, banal(range(k)), f"{gname}x{k}")


def corpus_groupoids(seed: int | None = None, limit: int | None = None) -> list:
    """All unions of pieces group x banal(k) within the size bounds, smallest first.

    With a seed, a random subsample of size ``limit`` is drawn instead of the
    first ``limit`` entries.
    """
    groups = _groups()
    kinds = [(name, k) for name, g in groups.items() for k in range(1, MAX_OBJECTS + 1)
             if len(g.arrows) * k * k <= MAX_ARROWS]
    combos = []
    for r in range(1, MAX_OBJECTS + 1):
        for combo in itertools.combinations_with_replacement(kinds, r):
            objs = sum(k for _, k in combo)
            arrows = sum(len(groups[n].arrows) * k * k for n, k in combo)
            if objs <= MAX_OBJECTS and arrows <= MAX_ARROWS:
                combos.append((arrows, objs, combo))
    combos.sort(key=lambda t: (t[0], t[1], [(n, k) for n, k in t[2]]))
    if seed is not None:
        rng = random.Random(seed)
        combos = rng.sample(combos, min(limit or len(combos), len(combos)))
    elif limit is not None:
        combos = combos[:limit]
    out = []
    for _, _, combo in combos:
        parts = [_piece(groups[n], k, n) for n, k in combo]
        label = "+".join(f"{n}x{k}" if k > 1 else n for n, k in combo)
        g = parts[0] if len(parts) == 1 else disjoint_union(parts, label)
        g.name = label
        out.append(g)
    return out


STANDARD_SIZE = 60


def standard_corpus(seed: int = 0, size: int = STANDARD_SIZE) -> list:
    """A reproducible sample of the corpus, spread evenly over arrow counts."""
    rng = random.Random(seed)
    by_size = {}
    for g in corpus_groupoids():
        by_size.setdefault(len(g.arrows), []).append(g)
    for bucket in by_size.values():
        rng.shuffle(bucket)
    out, depth = [], 0
    while len(out) < size and any(len(b) > depth for b in by_size.values()):
        for n in sorted(by_size):
            if len(by_size[n]) > depth and len(out) < size:
                out.append(by_size[n][depth])
        depth += 1
    return sorted(out, key=lambda g: (len(g.arrows), g.name))


def table_mutations(g: FinGroupoid, seed: int = 0, limit: int | None = None):
    """Single-entry changes of the composition or inverse table that break an axiom."""
    g = g.materialized()
    comp, inv = dict(g.cat.comp), dict(g.inverse)
    cands = [("comp", k, w) for k, v in comp.items() for w in g.arrows if w != v]
    cands += [("inverse", k, w) for k, v in inv.items() for w in g.arrows if w != v]
    random.Random(seed).shuffle(cands)
    found = 0
    for table, key, value in cands:
        if table == "comp":
            c2 = dict(comp)
            c2[key] = value
            h = g.with_tables(comp=c2)
        else:
            i2 = dict(inv)
            i2[key] = value
            h = g.with_tables(inverse=i2)
        if check_groupoid(h).ok:
            continue
        yield (table, key, value), h
        found += 1
        if limit is not None and found >= limit:
            return


# ---------------------------------------------------------------- morphisms

@dataclass
class NamedMorphism:
    name: str
    morphism: GroupoidMorphism


def _hom(source, target, f1, name, f0=None):
    if f0 is None:
        f0 = {x: target.objects[0] for x in source.objects}
    return GroupoidMorphism(source, target, f0, f1, name)


def _group_inclusion(sub_gens, sub: FinGroupoid, big: FinGroupoid, name: str):
    """Embed a cyclic group by sending its generator 1 to ``sub_gens``."""
    n = len(sub.arrows)
    img = {0: big.unit(big.objects[0])}
    x = img[0]
    for k in range(1, n):
        x = big.compose(sub_gens, x)
        img[k] = x
    return _hom(sub, big, img, name)


def _action(G: FinGroupoid, points, rule, name):
    star = G.objects[0]
    law = ActionLaw(G, tuple(points), {p: star for p in points},
                    {(g, p): rule(g, p) for g in G.arrows for p in points})
    H, f = action_groupoid(law)
    f.name = name
    return f


def corpus_morphisms() -> list:
    """Named morphisms covering actors, hypo/hyper-actors and plain i-faithful maps."""
    Z1, Z2, Z3, Z4 = (cyclic_group(n) for n in (1, 2, 3, 4))
    Z6 = cyclic_group(6)
    S3, V4, D4, Q8 = symmetric_group(3), klein_group(), dihedral_group(4), quaternion_group()
    out = []
    add = lambda name, m: out.append(NamedMorphism(name, m))  # noqa: E731

    add("Z1->Z2", _hom(Z1, Z2, {0: 0}, "Z1->Z2"))
    add("Z1->S3", _hom(Z1, S3, {0: S3.unit("*")}, "Z1->S3"))
    add("Z2->Z4", _group_inclusion(2, Z2, Z4, "Z2->Z4"))
    add("Z2->Z6", _group_inclusion(3, Z2, Z6, "Z2->Z6"))
    add("Z3->Z6", _group_inclusion(2, Z3, Z6, "Z3->Z6"))
    add("Z2->S3", _group_inclusion((1, 0, 2), Z2, S3, "Z2->S3"))
    add("Z3->S3", _group_inclusion((1, 2, 0), Z3, S3, "Z3->S3"))
    add("Z2->V4", _group_inclusion((1, 0), Z2, V4, "Z2->V4"))
    rot = next(a for a in D4.arrows if _order(D4, a) == 4)
    add("Z4->D4", _group_inclusion(rot, Z4, D4, "Z4->D4"))
    i_unit = next(a for a in Q8.arrows if _order(Q8, a) == 4)
    add("Z4->Q8", _group_inclusion(i_unit, Z4, Q8, "Z4->Q8"))
    for gname, G in (("Z2", Z2), ("Z3", Z3), ("S3", S3), ("b2", banal([0, 1]))):
        B = null(G.objects)
        add(f"omega_{gname}", GroupoidMorphism(B, G, {x: x for x in G.objects},
                                               {a: G.unit(B.src(a)) for a in B.arrows}, f"omega_{gname}"))
    for gname, G in (("Z2", Z2), ("Z3", Z3), ("b2", banal([0, 1]))):
        add(f"id_{gname}", identity_morphism(G))
        D, d = delta_groupoid(G)
        add(f"delta_{gname}", d)
    b1, b2, b3 = banal([0]), banal([0, 1]), banal([0, 1, 2])
    add("b1->b2", GroupoidMorphism(b1, b2, {0: 0}, {(0, 0): (0, 0)}, "b1->b2"))
    add("b2->b3", GroupoidMorphism(b2, b3, {0: 0, 1: 1}, {a: a for a in b2.arrows}, "b2->b3"))
    Z2b2 = product_groupoid(Z2, b2)
    add("Z2->Z2xb2", GroupoidMorphism(Z2, Z2b2, {"*": ("*", 0)}, {a: (a, (0, 0)) for a in Z2.arrows},
                                      "Z2->Z2xb2"))
    for gname, G in (("Z1", Z1), ("Z2", Z2), ("Z3", Z3)):
        P = product_groupoid(G, b2)
        add(f"pr_{gname}xb2", GroupoidMorphism(P, G, {o: o[0] for o in P.objects},
                                               {a: a[0] for a in P.arrows}, f"pr_{gname}xb2"))
    R = principal_groupoid({0: "a", 1: "a", 2: "b"}, "R3")
    add("transitor_R3", transitor(R))
    add("swap_Z2", _action(Z2, [0, 1], lambda g, p: (p + g) % 2, "swap_Z2"))
    add("rot_Z3", _action(Z3, [0, 1, 2], lambda g, p: (p + g) % 3, "rot_Z3"))
    add("fix_Z2", _action(Z2, [0, 1, 2], lambda g, p: p if p == 0 else 1 + (p - 1 + g) % 2, "fix_Z2"))
    add("Z2->V4diag", _hom(Z2, V4, {0: V4.unit("*"), 1: (1, 1)}, "Z2->V4diag"))
    return out


def _order(g, a):
    x, n = a, 1
    u = g.unit(g.src(a))
    while x != u:
        x = g.compose(a, x)
        n += 1
    return n


def corpus_principal_actors(max_arrows: int = 8) -> list:
    """Principal s-actors: δ_G of small corpus groupoids and free action groupoids."""
    out = []
    for g in standard_corpus():
        if len(g.arrows) <= max_arrows:
            D, d = delta_groupoid(g)
            d.name = f"delta_{g.name}"
            out.append(NamedMorphism(d.name, d))
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    out.append(NamedMorphism("swap_Z2", _action(Z2, [0, 1], lambda g, p: (p + g) % 2, "swap_Z2")))
    out.append(NamedMorphism("free_Z2x2", _action(Z2, [0, 1, 2, 3], lambda g, p: (p + 2 * g) % 4, "free_Z2x2")))
    out.append(NamedMorphism("rot_Z3", _action(Z3, [0, 1, 2], lambda g, p: (p + g) % 3, "rot_Z3")))
    N = null([0, 1, 2])
    out.append(NamedMorphism("id_null3", identity_morphism(N)))
    return out


# ---------------------------------------------------------------- worked examples

def gauge_example():
    """Z/2 acting freely on four points with two orbits: (group, action, points)."""
    h = cyclic_group(2)
    points = (0, 1, 2, 3)
    return h, {(g, p): p ^ g for g in h.arrows for p in points}, points


def cycle_cover():
    """B = {0, 1, 2} covered by the three 2-point pieces of a triangle."""
    from .conjugation import Cover
    return Cover((0, 1, 2), ((0, 1), (1, 2), (2, 0)))


def cycle_cocycle(twisted: bool = True):
    """Z/2 cocycle on the triangle cover; ``twisted`` flips the overlap over the point 0."""
    from .conjugation import cocycle_from_table
    cover = cycle_cover()
    h = cyclic_group(2)
    table = {}
    for (i, x) in cover.U:
        for (j, y) in cover.U:
            if x == y and i != j:
                table[(j, i, x)] = 1 if (twisted and x == 0) else 0
    return cocycle_from_table(cover, h, table)
