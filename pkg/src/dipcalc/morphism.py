"""Taxonomy of groupoid morphisms in the finite Set diptych.

Squares are classified concretely: in Set an ipb square is one whose
comparison into the fibre product is injective, spb surjective and gpb
bijective.  The two squares attached to ``f: H -> G`` are

* a(f): f over the source maps, comparison H -> E x_B G, h -> (alpha h, f h);
* t(f): f over the transitors, comparison H -> (E x E) x_(B x B) G.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .fincat import NatTransformation, ValidationReport
from .groupoid import (
    EmptyBaseError, FinGroupoid, GroupoidError, GroupoidMorphism, groupoid_from_law,
)

FLAG_NAMES = (
    "actor", "equivalence", "essentially_s", "extensor", "hyper_actor", "hypo_actor",
    "i_equivalence", "i_faithful", "i_morphism", "inductor", "s_equivalence", "s_full",
    "s_morphism",
)


class FlagError(GroupoidError):
    """A required classification flag is absent."""


class NotNormalError(GroupoidError):
    pass


@dataclass(frozen=True)
class MorphismClass:
    i_morphism: bool
    s_morphism: bool
    i_faithful: bool
    s_full: bool
    actor: bool
    hypo_actor: bool
    hyper_actor: bool
    inductor: bool
    essentially_s: bool
    equivalence: bool
    s_equivalence: bool
    extensor: bool
    i_equivalence: bool

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in FLAG_NAMES}

    def lines(self) -> list:
        return [f"{k}={'true' if v else 'false'}" for k, v in self.flags().items()]


def _injective(values) -> bool:
    values = list(values)
    return len(set(values)) == len(values)


def action_comparison(f: GroupoidMorphism) -> dict:
    """h -> (alpha_H h, f h), the comparison of the square a(f)."""
    H = f.source
    return {h: (H.src(h), f.f1[h]) for h in H.arrows}


def action_fibre_product(f: GroupoidMorphism) -> set:
    H, G = f.source, f.target
    return {(x, g) for x in H.objects for g in G.out_arrows(f.f0[x])}


def transitor_comparison(f: GroupoidMorphism) -> dict:
    H = f.source
    return {h: ((H.tgt(h), H.src(h)), f.f1[h]) for h in H.arrows}


def transitor_fibre_product(f: GroupoidMorphism) -> set:
    H, G = f.source, f.target
    out = set()
    for x in H.objects:
        for y in H.objects:
            for g in G.hom(f.f0[x], f.f0[y]):
                out.add(((y, x), g))
    return out


def _square_flags(comparison: dict, fibre: set):
    image = set(comparison.values())
    inj = len(image) == len(comparison)
    surj = image == fibre
    return inj, surj, inj and surj


def nerve_level_surjective(f: GroupoidMorphism, level: int) -> bool:
    """Is the induced map on nerve level ``level`` (0..3) surjective?

    A level-n element of G is pinned down by n arrows leaving a common
    object; it lifts iff those arrows all lift from one object of H.
    """
    H, G = f.source, f.target
    fibres = {b: [] for b in G.objects}
    for e in H.objects:
        fibres[f.f0[e]].append(e)
    for b in G.objects:
        if not fibres[b]:
            return False
        if level == 0:
            continue
        outs = G.out_arrows(b)
        full = set(outs)
        lifts = [frozenset(f.f1[a] for a in H.out_arrows(e)) for e in fibres[b]]
        if any(L == full for L in lifts):
            continue
        for k in range(1, level + 1):
            for combo in itertools.combinations(outs, k):
                if not any(L.issuperset(combo) for L in lifts):
                    return False
    return True


def classify_morphism(f: GroupoidMorphism) -> MorphismClass:
    H, G = f.source, f.target
    hypo, hyper, actor = _square_flags(action_comparison(f), action_fibre_product(f))
    i_faithful, s_full, inductor = _square_flags(transitor_comparison(f), transitor_fibre_product(f))
    f0_surj = f.surjective_on_objects()
    i_morphism = f.injective_on_arrows()
    s_morphism = all(nerve_level_surjective(f, n) for n in range(4))
    ess = {G.tgt(g) for x in H.objects for g in G.out_arrows(f.f0[x])} == set(G.objects)
    equivalence = False
    if ess:
        K, _ = induced_groupoid(G, f.f0)
        h = GroupoidMorphism(H, K, {x: x for x in H.objects},
                             {a: (H.tgt(a), f.f1[a], H.src(a)) for a in H.arrows}, "h")
        equivalence = h.is_iso()
    return MorphismClass(
        i_morphism=i_morphism, s_morphism=s_morphism, i_faithful=i_faithful, s_full=s_full,
        actor=actor, hypo_actor=hypo, hyper_actor=hyper, inductor=inductor,
        essentially_s=ess, equivalence=equivalence, s_equivalence=inductor and f0_surj,
        extensor=s_full and f0_surj, i_equivalence=equivalence and i_morphism)


# ---------------------------------------------------------------- action laws

@dataclass
class ActionLaw:
    G: FinGroupoid
    E: tuple
    moment: dict
    lam: dict   # (g, x) -> g.x, defined when moment(x) = source of g

    def act(self, g, x):
        return self.lam[(g, x)]

    def __eq__(self, other):
        if not isinstance(other, ActionLaw):
            return NotImplemented
        return (self.G is other.G and set(self.E) == set(other.E)
                and self.moment == other.moment and self.lam == other.lam)


def check_action_law(a: ActionLaw) -> ValidationReport:
    rep = ValidationReport()
    G = a.G
    for x in a.E:
        if a.moment.get(x) not in set(G.objects):
            rep.add("moment", [x])
    if not rep.ok:
        return rep
    for x in a.E:
        for g in G.out_arrows(a.moment[x]):
            y = a.lam.get((g, x))
            if y is None or y not in a.moment:
                rep.add("action undefined", [g, x])
                continue
            if a.moment[y] != G.tgt(g):
                rep.add("action moment", [g, x])
        if a.lam.get((G.unit(a.moment[x]), x)) != x:
            rep.add("action unit", [x])
    if not rep.ok:
        return rep
    for x in a.E:
        for g in G.out_arrows(a.moment[x]):
            y = a.lam[(g, x)]
            for g2 in G.out_arrows(G.tgt(g)):
                if a.lam[(g2, y)] != a.lam[(G.compose(g2, g), x)]:
                    rep.add("action compatibility", [g2, g, x])
    return rep


def action_law_of_actor(f: GroupoidMorphism, check: bool = True) -> ActionLaw:
    """lambda(g, x) = beta of the unique h over g leaving x."""
    phi = action_comparison(f)
    if check and not classify_morphism(f).actor:
        raise FlagError("morphism is not an actor")
    if len(set(phi.values())) != len(phi) or set(phi.values()) != action_fibre_product(f):
        raise FlagError("morphism is not an actor")
    H = f.source
    lam = {(g, x): H.tgt(h) for h, (x, g) in phi.items()}
    return ActionLaw(f.target, tuple(H.objects), {x: f.f0[x] for x in H.objects}, lam)


def action_groupoid(a: ActionLaw, check: bool = True):
    """(H, f): arrows (g, x) from x to g.x; f forgets x."""
    if check:
        rep = check_action_law(a)
        if not rep.ok:
            raise GroupoidError(f"invalid action law: {rep.violations[0]}")
    G = a.G
    arrows = {}
    for x in a.E:
        for g in G.out_arrows(a.moment[x]):
            arrows[(g, x)] = (x, a.lam[(g, x)])
    H = groupoid_from_law(
        a.E, arrows, lambda x: (G.unit(a.moment[x]), x),
        lambda q, p: (G.compose(q[0], p[0]), p[1]),
        lambda p: (G.inv(p[0]), a.lam[p]), f"{G.name}|x|E" if G.name else "")
    f = GroupoidMorphism(H, G, dict(a.moment), {p: p[0] for p in arrows}, "action")
    return H, f


# ---------------------------------------------------------------- induced groupoids

def induced_groupoid(g: FinGroupoid, p: Mapping, name: str = ""):
    """(H, j): arrows (y, a, x) with a: p(x) -> p(y); j projects to a."""
    E = list(p)
    if not E:
        raise EmptyBaseError("induced groupoid over an empty base")
    base = set(g.objects)
    for x in E:
        if p[x] not in base:
            raise GroupoidError(f"p({x!r}) = {p[x]!r} is not an object")
    arrows = {}
    for x in E:
        for y in E:
            for a in g.hom(p[x], p[y]):
                arrows[(y, a, x)] = (x, y)
    H = groupoid_from_law(
        E, arrows, lambda x: (x, g.unit(p[x]), x),
        lambda t, s: (t[0], g.compose(t[1], s[1]), s[2]),
        lambda s: (s[2], g.inv(s[1]), s[0]), name or "induced")
    j = GroupoidMorphism(H, g, dict(p), {t: t[1] for t in arrows}, "j")
    return H, j


# ---------------------------------------------------------------- subgroupoids, kernels, quotients

def subgroupoid(g: FinGroupoid, arrows, name: str = "", objects=None) -> FinGroupoid:
    """Wide (or on ``objects``) subgroupoid with the given arrows plus units."""
    objects = list(g.objects) if objects is None else list(objects)
    keep = {a for a in arrows} | {g.unit(b) for b in objects}
    table = {a: g.arrows[a] for a in g.arrows if a in keep}
    return groupoid_from_law(objects, table, g.unit, g.compose, g.inv, name)


def is_normal(k: FinGroupoid, n_arrows: set):
    """Isotropy of n is stable under conjugation by k; returns (ok, witness)."""
    for a in k.arrows:
        x = k.src(a)
        ainv = k.inv(a)
        for m in k.loops(x):
            if m in n_arrows:
                c = k.compose(a, k.compose(m, ainv))
                if c not in n_arrows:
                    return False, (a, m)
    return True, None


@dataclass
class KernelResult:
    N: FinGroupoid
    inclusion: GroupoidMorphism
    pullback: bool
    pushout: bool
    normal: bool
    square: dict = field(default_factory=dict)


def kernel(f: GroupoidMorphism, require_extensor: bool = True) -> KernelResult:
    """Arrows sent to units, with its defining square against the unit map."""
    if require_extensor and not classify_morphism(f).extensor:
        raise FlagError("kernel needs an extensor")
    H, G = f.source, f.target
    units = {G.unit(b) for b in G.objects}
    n_arrows = [a for a in H.arrows if f.f1[a] in units]
    N = subgroupoid(H, n_arrows, f"Ker({f.name})" if f.name else "Ker")
    incl = GroupoidMorphism(N, H, {x: x for x in N.objects}, {a: a for a in N.arrows}, "incl")
    # pullback against omega_G: arrows of H over units <-> pairs (h, b) with f h = 1_b
    over_units = {(h, G.src(f.f1[h])) for h in H.arrows if f.f1[h] in units}
    pullback = len(over_units) == len(N.arrows) and set(N.arrows) == {h for h, _ in over_units}
    pullback = pullback and set(N.objects) == set(H.objects)
    normal, _ = is_normal(H, set(N.arrows))
    pushout = False
    if normal:
        Q, proj = two_sided_quotient(H, N)
        pushout = quotient_comparison(proj, f).is_iso()
    return KernelResult(N, incl, pullback, pushout, normal,
                        {"top": incl, "bottom": "omega", "right": f})


def two_sided_quotient(k: FinGroupoid, n: FinGroupoid, name: str = ""):
    """(G, proj): objects are n-orbits, arrows the double cosets N a N."""
    n_arrows = set(n.arrows)
    stray = [a for a in n_arrows if a not in k.arrows]
    if stray:
        raise GroupoidError(f"{stray[0]!r} is not an arrow of k")
    missing = [b for b in k.objects if k.unit(b) not in n_arrows]
    if missing:
        raise GroupoidError(f"n is not wide: no unit at {missing[0]!r}")
    ok, witness = is_normal(k, n_arrows)
    if not ok:
        raise NotNormalError(f"n is not normal in k (witness {witness!r})")
    pos = {a: i for i, a in enumerate(k.arrows)}
    obj_pos = {x: i for i, x in enumerate(k.objects)}
    n_in, n_out = {}, {}
    for a in n_arrows:
        n_in.setdefault(k.tgt(a), []).append(a)
        n_out.setdefault(k.src(a), []).append(a)
    # orbit representative = first object in k's order
    root = {}
    for x in k.objects:
        if x in root:
            continue
        seen, queue = {x}, deque([x])
        while queue:
            y = queue.popleft()
            for a in n_out.get(y, ()):
                z = k.tgt(a)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        rep = min(seen, key=obj_pos.__getitem__)
        for y in seen:
            root[y] = rep
    cls = {}
    classes = {}
    for a in k.arrows:
        if a in cls:
            continue
        x, y = k.src(a), k.tgt(a)
        members = {k.compose(n2, k.compose(a, n1)) for n1 in n_in.get(x, ()) for n2 in n_out.get(y, ())}
        rep = min(members, key=pos.__getitem__)
        for m in members:
            cls[m] = rep
        classes[rep] = members
    # a connecting n-arrow between any two objects of an orbit
    connector = {}
    for a in n_arrows:
        connector.setdefault((k.src(a), k.tgt(a)), a)
    objects = [x for x in k.objects if root[x] == x]
    arrows = {r: (root[k.src(r)], root[k.tgt(r)]) for r in classes}

    def compose(c, a):
        m = connector[(k.tgt(a), k.src(c))]
        return cls[k.compose(c, k.compose(m, a))]

    G = groupoid_from_law(objects, arrows, lambda b: cls[k.unit(b)], compose,
                          lambda r: cls[k.inv(r)], name or "K//N", materialize=True)
    proj = GroupoidMorphism(k, G, {x: root[x] for x in k.objects}, {a: cls[a] for a in k.arrows}, "proj")
    return G, proj


def quotient_comparison(proj: GroupoidMorphism, f: GroupoidMorphism) -> GroupoidMorphism:
    """The map K//N -> G induced by f, for f constant on double cosets."""
    Q = proj.target
    f0 = {}
    f1 = {}
    for x in proj.source.objects:
        f0.setdefault(proj.f0[x], f.f0[x])
    for a in proj.source.arrows:
        f1.setdefault(proj.f1[a], f.f1[a])
    return GroupoidMorphism(Q, f.target, f0, f1, "comparison")


# ---------------------------------------------------------------- exact sequences

@dataclass
class ShortExactSequence:
    N: FinGroupoid
    K: FinGroupoid
    G: FinGroupoid
    incl: GroupoidMorphism
    proj: GroupoidMorphism


def short_exact_sequence(proj: GroupoidMorphism) -> ShortExactSequence:
    ker = kernel(proj)
    return ShortExactSequence(ker.N, proj.source, proj.target, ker.inclusion, proj)


def check_short_exact(s: ShortExactSequence) -> ValidationReport:
    rep = ValidationReport()
    cls = classify_morphism(s.proj)
    if not cls.extensor:
        rep.add("projection not an extensor")
    units = {s.G.unit(b) for b in s.G.objects}
    ker_arrows = {a for a in s.K.arrows if s.proj.f1[a] in units}
    if {s.incl.f1[a] for a in s.N.arrows} != ker_arrows or not s.incl.injective_on_arrows():
        rep.add("N is not the kernel")
    if {s.incl.f0[x] for x in s.N.objects} != set(s.K.objects):
        rep.add("base of N is not the base of K")
    comp = s.proj.compose(s.incl)
    if any(comp.f1[a] not in units for a in s.N.arrows):
        rep.add("sequence does not compose to a null morphism")
    return rep


# ---------------------------------------------------------------- natural isomorphisms

def natural_iso_exists(f: GroupoidMorphism, g: GroupoidMorphism,
                       constant_on: Optional[list] = None) -> Optional[NatTransformation]:
    """An invertible natural transformation f => g, searched in deterministic order.

    ``constant_on`` optionally lists blocks of source objects on which the
    components must agree (used for coboundaries that are constant on pieces).
    """
    if f.source is not g.source or f.target is not g.target:
        raise GroupoidError("natural_iso_exists needs parallel morphisms")
    H, G = f.source, f.target
    edges = {x: [] for x in H.objects}
    for a in H.arrows:
        edges[H.src(a)].append(("arrow", a, H.tgt(a)))
        edges[H.tgt(a)].append(("arrow_inv", a, H.src(a)))
    for block in constant_on or ():
        block = list(block)
        for x, y in zip(block, block[1:]):
            edges[x].append(("same", None, y))
            edges[y].append(("same", None, x))

    def propagate(kind, a, theta_x):
        if kind == "same":
            return theta_x
        if kind == "arrow":   # theta_y = g(a) theta_x f(a)^-1
            return G.compose(g.f1[a], G.compose(theta_x, G.inv(f.f1[a])))
        # x = tgt(a), y = src(a): theta_y = g(a)^-1 theta_x f(a)
        return G.compose(G.inv(g.f1[a]), G.compose(theta_x, f.f1[a]))

    comps = {}
    done = set()
    for r in H.objects:
        if r in done:
            continue
        found = None
        for cand in G.hom(f.f0[r], g.f0[r]):
            theta = {r: cand}
            queue = deque([r])
            ok = True
            while queue and ok:
                x = queue.popleft()
                for kind, a, y in edges[x]:
                    v = propagate(kind, a, theta[x])
                    if y in theta:
                        if theta[y] != v:
                            ok = False
                            break
                    else:
                        if G.src(v) != f.f0[y] or G.tgt(v) != g.f0[y]:
                            ok = False
                            break
                        theta[y] = v
                        queue.append(y)
            if ok:
                found = theta
                break
        if found is None:
            return None
        comps.update(found)
        done |= set(found)
    return NatTransformation(f.as_functor(), g.as_functor(), comps, "theta")


# ---------------------------------------------------------------- pullbacks of groupoids

def pullback_groupoid(f: GroupoidMorphism, r: GroupoidMorphism, name: str = ""):
    """(S, s, u) with S = H x_G R; s: S -> H and u: S -> R the projections."""
    if f.target is not r.target:
        raise GroupoidError("pullback needs a common target")
    H, R = f.source, r.source
    objects = [(e, p) for e in H.objects for p in R.objects if f.f0[e] == r.f0[p]]
    if not objects:
        raise EmptyBaseError("pullback has an empty base")
    over = {}
    for rho in R.arrows:
        over.setdefault(r.f1[rho], []).append(rho)
    arrows = {}
    for h in H.arrows:
        for rho in over.get(f.f1[h], ()):
            arrows[(h, rho)] = ((H.src(h), R.src(rho)), (H.tgt(h), R.tgt(rho)))
    S = groupoid_from_law(
        objects, arrows, lambda o: (H.unit(o[0]), R.unit(o[1])),
        lambda b, a: (H.compose(b[0], a[0]), R.compose(b[1], a[1])),
        lambda a: (H.inv(a[0]), R.inv(a[1])), name or "pullback")
    s = GroupoidMorphism(S, H, {o: o[0] for o in objects}, {a: a[0] for a in arrows}, "s")
    u = GroupoidMorphism(S, R, {o: o[1] for o in objects}, {a: a[1] for a in arrows}, "u")
    return S, s, u


def square_commutes(top, left, right, bottom) -> bool:
    """right . top == bottom . left, checked on objects and arrows."""
    S = top.source
    return (all(right.f0[top.f0[x]] == bottom.f0[left.f0[x]] for x in S.objects)
            and all(right.f1[top.f1[a]] == bottom.f1[left.f1[a]] for a in S.arrows))


def is_pullback_square(top, left, right, bottom) -> bool:
    """Levelwise bijectivity of S -> H x_G R on objects and arrows."""
    if not square_commutes(top, left, right, bottom):
        return False
    H, G, R = left.target, right.target, top.target
    S = top.source
    obj_img = [(left.f0[x], top.f0[x]) for x in S.objects]
    obj_fp = {(e, p) for e in H.objects for p in R.objects if bottom.f0[e] == right.f0[p]}
    if len(set(obj_img)) != len(obj_img) or set(obj_img) != obj_fp:
        return False
    arr_img = [(left.f1[a], top.f1[a]) for a in S.arrows]
    over = {}
    for rho in R.arrows:
        over.setdefault(right.f1[rho], []).append(rho)
    size = sum(len(over.get(bottom.f1[h], ())) for h in H.arrows)
    return len(set(arr_img)) == len(arr_img) == size
