"""Conjugation of principal morphisms and its applications in the finite Set diptych.

A principal morphism r: R -> G (R principal on P, r0 onto B) sits in a
butterfly with K = G x_banal(B) banal(P), q the projection onto G,
Gp = K // i(R) and Rp = Ker q.  Squares between such morphisms are mirrored
through their butterflies; universal activation is assembled from mirrors
and pullbacks, and the classical gauge groupoid and cocycle torsors follow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .butterfly import (
    ButterflyDiagram, PregroupoidLaws, check_butterfly, check_transversality, pregroupoid_laws,
)
from .canonical import delta_groupoid
from .groupoid import (
    EmptyBaseError, FinGroupoid, GroupoidError, GroupoidMorphism, banal, groupoid_from_law,
    _generators, _spanning_tree, identity_morphism, is_principal, orbit_map, orbits,
    principal_groupoid, product_groupoid,
)
from .morphism import (
    ActionLaw, FlagError, action_groupoid, action_law_of_actor, check_action_law,
    classify_morphism, induced_groupoid, is_pullback_square, kernel, natural_iso_exists,
    pullback_groupoid, quotient_comparison, square_commutes, subgroupoid, two_sided_quotient,
)

__all__ = [
    "Activation", "ButterflyDiagram", "Cocycle", "Cover", "GaugeResult", "GroupoidSquare",
    "MirrorResult", "PregroupoidLaws", "TorsorResult", "associate_action",
    "build_cover_groupoid", "certify_universality", "check_butterfly", "check_transversality",
    "cocycle_from_table", "cocycle_of_sections", "cohomologous", "conjugate_principal",
    "double_conjugation_isos", "enumerate_actors", "gauge_groupoid", "homogeneous_space",
    "mirror_square", "pregroupoid_laws", "torsor_from_cocycle", "universal_activation",
]


class NotPrincipalError(GroupoidError):
    pass


class CocycleError(GroupoidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _require_s_principal(r: GroupoidMorphism, label: str = "r"):
    if not is_principal(r.source):
        raise NotPrincipalError(f"source of {label} is not principal")
    if not r.surjective_on_objects():
        raise NotPrincipalError(f"{label} is not surjective on objects")


def conjugate_principal(r: GroupoidMorphism, verify: bool = True) -> ButterflyDiagram:
    """The conjugation butterfly of an s-principal morphism r: R -> G."""
    _require_s_principal(r)
    R, G = r.source, r.target
    K, q = induced_groupoid(G, r.f0, "K")
    i = GroupoidMorphism(R, K, {x: x for x in R.objects},
                         {a: (R.tgt(a), r.f1[a], R.src(a)) for a in R.arrows}, "i")
    image = subgroupoid(K, {i.f1[a] for a in R.arrows}, "iR")
    Gp, qp = two_sided_quotient(K, image, "Gp")
    ker = kernel(q, require_extensor=False)
    Rp = ker.N
    ip = GroupoidMorphism(Rp, K, {x: x for x in Rp.objects}, {a: a for a in Rp.arrows}, "ip")
    rp = qp.compose(ip)
    rp.name = "rp"
    b = ButterflyDiagram(R, Rp, K, G, Gp, i, ip, q, qp, r, rp)
    if verify:
        rep = check_butterfly(b)
        if not rep.ok:
            raise GroupoidError(f"conjugation butterfly failed: {rep.violations[0]}")
    b.flags = {"r_actor": classify_morphism(r).actor, "rp_actor": classify_morphism(rp).actor,
               "transverse": check_transversality(K, i, ip)}
    return b


# ---------------------------------------------------------------- mirror images

class GroupoidSquare(NamedTuple):
    """top: S -> R, left: S -> H, right: R -> G, bottom: H -> G."""
    top: GroupoidMorphism
    left: GroupoidMorphism
    right: GroupoidMorphism
    bottom: GroupoidMorphism

    def commutes(self) -> bool:
        return square_commutes(*self)

    def is_pullback(self) -> bool:
        return is_pullback_square(*self)


@dataclass
class MirrorResult:
    square: GroupoidSquare
    left_butterfly: ButterflyDiagram
    right_butterfly: ButterflyDiagram
    kappa: dict
    properties: dict = field(default_factory=dict)


def _induced_chart(b: ButterflyDiagram) -> dict:
    """Inverse of k -> (beta k, q k, alpha k), which is bijective for an s-equivalence q."""
    K = b.K
    chart = {(K.tgt(k), b.q.f1[k], K.src(k)): k for k in K.arrows}
    if len(chart) != len(K.arrows):
        raise GroupoidError("q is not an inductor")
    return chart


def mirror_square(sq: GroupoidSquare, left_butterfly: Optional[ButterflyDiagram] = None,
                  right_butterfly: Optional[ButterflyDiagram] = None,
                  check_properties: bool = True) -> MirrorResult:
    top, left, right, bottom = sq
    _require_s_principal(left, "left")
    _require_s_principal(right, "right")
    if top.source is not left.source or top.target is not right.source or bottom.source is not left.target \
            or bottom.target is not right.target:
        raise GroupoidError("square morphisms do not connect")
    if not sq.commutes():
        raise GroupoidError("square does not commute")
    bl = left_butterfly or conjugate_principal(left)
    br = right_butterfly or conjugate_principal(right)
    if bl.r is not left and bl.r != left:
        raise GroupoidError("left butterfly does not belong to the left morphism")
    if br.r is not right and br.r != right:
        raise GroupoidError("right butterfly does not belong to the right morphism")
    chart = _induced_chart(br)
    Kl = bl.K
    u0 = top.f0
    kappa = {}
    for k in Kl.arrows:
        key = (u0[Kl.tgt(k)], bottom.f1[bl.q.f1[k]], u0[Kl.src(k)])
        kappa[k] = chart[key]
    # bottom': Gp_left -> Gp_right
    f0, f1 = {}, {}
    for x in Kl.objects:
        y = bl.qp.f0[x]
        v = br.qp.f0[u0[x]]
        if f0.setdefault(y, v) != v:
            raise GroupoidError("mirror is not well defined on objects")
    for k in Kl.arrows:
        c = bl.qp.f1[k]
        v = br.qp.f1[kappa[k]]
        if f1.setdefault(c, v) != v:
            raise GroupoidError("mirror is not well defined on arrows")
    bottom_m = GroupoidMorphism(bl.Gp, br.Gp, f0, f1, f"{bottom.name}'")
    ip_inv = {br.ip.f1[a]: a for a in br.Rp.arrows}
    top_m = GroupoidMorphism(bl.Rp, br.Rp, {x: u0[bl.ip.f0[x]] for x in bl.Rp.objects},
                             {a: ip_inv[kappa[bl.ip.f1[a]]] for a in bl.Rp.arrows}, f"{top.name}'")
    mirrored = GroupoidSquare(top_m, bl.rp, br.rp, bottom_m)
    if not mirrored.commutes():
        raise GroupoidError("mirror square does not commute")
    res = MirrorResult(mirrored, bl, br, kappa)
    if check_properties:
        res.properties = mirror_properties(sq, mirrored)
    return res


def mirror_properties(sq: GroupoidSquare, mirrored: GroupoidSquare) -> dict:
    """Properties (a), (b), (c): None when the hypothesis fails, else whether the conclusion holds."""
    cls = {name: classify_morphism(m) for name, m in zip(("top", "left", "right", "bottom"), sq)}
    mcls = {name: classify_morphism(m) for name, m in zip(("top", "left", "right", "bottom"), mirrored)}
    vertical_actors = cls["left"].actor and cls["right"].actor
    pb = sq.is_pullback()
    out = {}
    out["a"] = (mcls["top"].actor and mcls["bottom"].actor) if (vertical_actors and pb) else None
    all_actors = vertical_actors and cls["top"].actor and cls["bottom"].actor
    out["b"] = (all(c.actor for c in mcls.values()) and mirrored.is_pullback()) if (all_actors and pb) else None
    equiv_rows = vertical_actors and cls["top"].s_equivalence and cls["bottom"].s_equivalence
    out["c"] = (mcls["top"].actor and mirrored.bottom.is_iso()) if equiv_rows else None
    return out


@dataclass
class DoubleConjugation:
    butterfly: ButterflyDiagram        # conjugate of b.rp
    phi: GroupoidMorphism              # b.K -> butterfly.K
    psi_G: GroupoidMorphism            # butterfly.Gp -> b.G
    psi_R: GroupoidMorphism            # butterfly.Rp -> b.R


def double_conjugation_isos(b: ButterflyDiagram, b2: Optional[ButterflyDiagram] = None) -> DoubleConjugation:
    """Identify the conjugate of rp with the original wing: Phi(k) = (beta k, qp k, alpha k)."""
    b2 = b2 or conjugate_principal(b.rp)
    K, K2 = b.K, b2.K
    phi = GroupoidMorphism(K, K2, {x: x for x in K.objects},
                           {k: (K.tgt(k), b.qp.f1[k], K.src(k)) for k in K.arrows}, "Phi")
    if not phi.is_iso():
        raise GroupoidError("Phi is not an isomorphism")
    phi_inv = phi.inverse_morphism()
    g0, g1 = {}, {}
    for x in K2.objects:
        g0.setdefault(b2.qp.f0[x], b.q.f0[phi_inv.f0[x]])
    for k2 in K2.arrows:
        v = b.q.f1[phi_inv.f1[k2]]
        if g1.setdefault(b2.qp.f1[k2], v) != v:
            raise GroupoidError("double conjugate does not descend to G")
    psi_G = GroupoidMorphism(b2.Gp, b.G, g0, g1, "psi_G")
    i_inv = {b.i.f1[a]: a for a in b.R.arrows}
    psi_R = GroupoidMorphism(b2.Rp, b.R, {x: phi_inv.f0[b2.ip.f0[x]] for x in b2.Rp.objects},
                             {a: i_inv[phi_inv.f1[b2.ip.f1[a]]] for a in b2.Rp.arrows}, "psi_R")
    if not (psi_G.is_iso() and psi_R.is_iso()):
        raise GroupoidError("double conjugation comparison is not an isomorphism")
    if b.r.compose(psi_R) != psi_G.compose(b2.rp):
        raise GroupoidError("double conjugation comparison does not commute")
    return DoubleConjugation(b2, phi, psi_G, psi_R)


# ---------------------------------------------------------------- universal activation

@dataclass
class Activation:
    H1: FinGroupoid
    h1: GroupoidMorphism
    f1: GroupoidMorphism
    steps: dict = field(default_factory=dict)


def universal_activation(f: GroupoidMorphism, verify: bool = True) -> Activation:
    """f = f_hat . h_hat with f_hat an actor, built by pulling back delta_G and mirroring twice."""
    cls = classify_morphism(f)
    if not cls.i_faithful:
        raise FlagError("universal activation needs an i-faithful morphism")
    G = f.target
    D, delta = delta_groupoid(G)
    S, s, u = pullback_groupoid(f, delta, "S")
    big = GroupoidSquare(u, s, delta, f)
    bs = conjugate_principal(s, verify=verify)
    bd = conjugate_principal(delta, verify=verify)
    m1 = mirror_square(big, bs, bd, check_properties=False)
    u_m, s_m, r_m, f_m = m1.square
    # factor the mirror through the pullback of r' along f'
    S2, s2, t = pullback_groupoid(f_m, r_m, "S2")
    c = GroupoidMorphism(s_m.source, S2, {x: (s_m.f0[x], u_m.f0[x]) for x in s_m.source.objects},
                         {a: (s_m.f1[a], u_m.f1[a]) for a in s_m.source.arrows}, "c")
    left_sq = GroupoidSquare(c, s_m, s2, identity_morphism(s_m.target))
    right_sq = GroupoidSquare(t, s2, r_m, f_m)
    b_left = conjugate_principal(s_m, verify=verify)
    b_mid = conjugate_principal(s2, verify=verify)
    b_right = conjugate_principal(r_m, verify=verify)
    back_left = mirror_square(left_sq, b_left, b_mid, check_properties=False)
    back_right = mirror_square(right_sq, b_mid, b_right, check_properties=False)
    dc_h = double_conjugation_isos(bs, b_left)
    dc_g = double_conjugation_isos(bd, b_right)
    h_hat = back_left.square.bottom.compose(dc_h.psi_G.inverse_morphism())
    f_hat = dc_g.psi_G.compose(back_right.square.bottom)
    h_hat.name, f_hat.name = "h_hat", "f_hat"
    H1 = b_mid.Gp
    if f_hat.compose(h_hat) != f:
        raise GroupoidError("activation does not factor f")
    if verify:
        if not classify_morphism(f_hat).actor:
            raise GroupoidError("f_hat is not an actor")
        if not classify_morphism(h_hat).equivalence:
            raise GroupoidError("h_hat is not an equivalence")
    return Activation(H1, h_hat, f_hat, {
        "S": S, "mirror": m1, "S2": S2, "mediator": c, "left": back_left, "right": back_right})


def _hom_to_sym(G: FinGroupoid, root, n: int):
    """All homomorphisms from the isotropy group at root into permutations of range(n)."""
    unit = G.unit(root)
    gens = _generators(G, root)
    perms = list(itertools.permutations(range(n)))
    for choice in itertools.product(perms, repeat=len(gens)):
        img = {unit: tuple(range(n))}
        queue = [unit]
        ok = True
        while queue and ok:
            x = queue.pop()
            for s, ps in zip(gens, choice):
                y = G.compose(s, x)
                v = tuple(ps[img[x][k]] for k in range(n))
                if y in img:
                    if img[y] != v:
                        ok = False
                        break
                else:
                    img[y] = v
                    queue.append(y)
        if ok:
            yield img


def enumerate_actors(G: FinGroupoid, max_size: int = 3):
    """Action groupoids of G on sets of size <= max_size, one per isomorphism pattern of fibres.

    Fibres over one orbit are identified along a spanning tree by the order
    of their elements; the isotropy at each root acts by every homomorphism.
    """
    comps = orbits(G)
    trees = []
    for comp in comps:
        root = comp[0]
        _, tree = _spanning_tree(G, root)
        trees.append((root, comp, tree))
    for n in range(1, max_size + 1):
        for sizes in itertools.product(range(n + 1), repeat=len(comps)):
            if sum(len(c) * k for c, k in zip(comps, sizes)) != n:
                continue
            per_comp = []
            for (root, comp, tree), k in zip(trees, sizes):
                per_comp.append(list(_hom_to_sym(G, root, k)) if k else [None])
            for homs in itertools.product(*per_comp):
                E, moment, lam = [], {}, {}
                for (root, comp, tree), k, hom in zip(trees, sizes, homs):
                    if not k:
                        continue
                    for b in comp:
                        for j in range(k):
                            E.append((b, j))
                            moment[(b, j)] = b
                    for a in G.arrows:
                        x, y = G.src(a), G.tgt(a)
                        if x not in tree:
                            continue
                        loop = G.compose(G.inv(tree[y]), G.compose(a, tree[x]))
                        perm = hom[loop]
                        for j in range(k):
                            lam[(a, (x, j))] = (y, perm[j])
                law = ActionLaw(G, tuple(E), moment, lam)
                yield law


def _activations_into(f: GroupoidMorphism, law: ActionLaw, H1: FinGroupoid):
    H = f.source
    choices = [[e1 for e1 in law.E if law.moment[e1] == f.f0[x]] for x in H.objects]
    for pick in itertools.product(*choices):
        h0 = dict(zip(H.objects, pick))
        ok = all(law.lam[(f.f1[a], h0[H.src(a)])] == h0[H.tgt(a)] for a in H.arrows)
        if ok:
            yield GroupoidMorphism(H, H1, h0, {a: (f.f1[a], h0[H.src(a)]) for a in H.arrows}, "h1")


def count_mediators(act: Activation, law: ActionLaw, H1: FinGroupoid, h1: GroupoidMorphism) -> int:
    Hh = act.H1
    count = 0
    choices = [[e1 for e1 in law.E if law.moment[e1] == act.f1.f0[x]] for x in Hh.objects]
    for pick in itertools.product(*choices):
        m0 = dict(zip(Hh.objects, pick))
        if not all(law.lam[(act.f1.f1[a], m0[Hh.src(a)])] == m0[Hh.tgt(a)] for a in Hh.arrows):
            continue
        m1 = {a: (act.f1.f1[a], m0[Hh.src(a)]) for a in Hh.arrows}
        if all(m0[act.h1.f0[x]] == h1.f0[x] for x in h1.source.objects) and \
                all(m1[act.h1.f1[a]] == h1.f1[a] for a in h1.source.arrows):
            count += 1
    return count


def certify_universality(f: GroupoidMorphism, act: Optional[Activation] = None, max_size: int = 3):
    """(number of activations checked, True iff each factors through act exactly once)."""
    act = act or universal_activation(f)
    checked = 0
    for law in enumerate_actors(f.target, max_size):
        H1, _ = action_groupoid(law, check=False)
        for h1 in _activations_into(f, law, H1):
            checked += 1
            if count_mediators(act, law, H1, h1) != 1:
                return checked, False
    return checked, True


def homogeneous_space(g: FinGroupoid, sub: GroupoidMorphism) -> ActionLaw:
    """Action of g on one-sided cosets of an embedded subgroupoid."""
    if sub.target is not g:
        raise GroupoidError("subgroupoid does not embed into g")
    if not (sub.injective_on_arrows() and sub.injective_on_objects()):
        raise GroupoidError("not a subgroupoid embedding")
    act = universal_activation(sub)
    return action_law_of_actor(act.f1)


def associate_action(b: ButterflyDiagram, f: GroupoidMorphism):
    """Mirror the pullback of r along the actor f; returns (H', f') with f' into Gp."""
    if f.target is not b.G:
        raise GroupoidError("actor target is not the butterfly's G")
    if not classify_morphism(f).actor:
        raise FlagError("associate_action needs an actor")
    S, s, u = pullback_groupoid(f, b.r, "S")
    res = mirror_square(GroupoidSquare(u, s, b.r, f), None, b, check_properties=False)
    fp = res.square.bottom
    return fp.source, fp


# ---------------------------------------------------------------- gauge groupoids

@dataclass
class GaugeResult:
    G: FinGroupoid
    butterfly: ButterflyDiagram
    S: FinGroupoid
    B: tuple
    comparison: GroupoidMorphism      # K -> G x_banal(B) banal(P)
    wings: dict


def gauge_groupoid(h: FinGroupoid, action: dict, points=None) -> GaugeResult:
    """Gauge groupoid (P x P)/h of a free action ``action[(g, p)] = g.p`` of a group h."""
    if len(h.objects) != 1:
        raise GroupoidError("structure group must have one object")
    star = h.objects[0]
    P = list(points) if points is not None else sorted({p for (_, p) in action}, key=repr)
    law = ActionLaw(h, tuple(P), {p: star for p in P}, dict(action))
    rep = check_action_law(law)
    if not rep.ok:
        raise GroupoidError(f"invalid action: {rep.violations[0]}")
    for p in P:
        for g in h.arrows:
            if g != h.unit(star) and action[(g, p)] == p:
                raise GroupoidError(f"action is not free: {g!r} fixes {p!r}")
    orbit_of = {}
    for p in P:
        if p not in orbit_of:
            orb = [action[(g, p)] for g in h.arrows]
            rep_pt = min(orb, key=P.index)
            for x in orb:
                orbit_of[x] = rep_pt
    B = tuple(x for x in P if orbit_of[x] == x)
    S = principal_groupoid(orbit_of, "S", P)
    carry = {(action[(g, x)], x): g for g in h.arrows for x in P}
    q_s = GroupoidMorphism(S, h, {x: star for x in P}, {a: carry[a] for a in S.arrows}, "q")
    # G = (P x P)/h with arrows named by their representative with smallest source index
    cls = {}
    for y in P:
        for x in P:
            orbit = [(action[(g, y)], action[(g, x)]) for g in h.arrows]
            cls[(y, x)] = min(orbit, key=lambda yx: (P.index(yx[1]), P.index(yx[0])))
    reps = sorted(set(cls.values()), key=lambda yx: (P.index(yx[1]), P.index(yx[0])))
    arrows = {c: (orbit_of[c[1]], orbit_of[c[0]]) for c in reps}

    def comp(b, a):
        # a = [(y, x)], b = [(z, w)]; move b so that its source is y
        y, x = a
        z, w = b
        k = next(g for g in h.arrows if action[(g, w)] == y)
        return cls[(action[(k, z)], x)]

    G = groupoid_from_law(B, arrows, lambda o: cls[(o, o)], comp, lambda a: cls[(a[1], a[0])],
                          "Gauge", materialize=True)
    bP = banal(P, "banalP")
    p_m = GroupoidMorphism(bP, G, dict(orbit_of), {a: cls[a] for a in bP.arrows}, "p")
    K = product_groupoid(h, bP, "K")
    # product ids are (g, (y, x)) on objects (star, x); rename objects to P
    K = _relabel_objects(K, {(star, x): x for x in P})
    q = GroupoidMorphism(K, h, {x: star for x in P}, {a: a[0] for a in K.arrows}, "q_K")
    qp = GroupoidMorphism(K, G, dict(orbit_of), {a: cls[(a[1][0], action[(a[0], a[1][1])])] for a in K.arrows}, "qp_K")
    i = GroupoidMorphism(S, K, {x: x for x in P}, {a: (carry[a], a) for a in S.arrows}, "i")
    ip = GroupoidMorphism(bP, K, {x: x for x in P}, {a: (h.unit(star), a) for a in bP.arrows}, "ip")
    b = ButterflyDiagram(S, bP, K, h, G, i, ip, q, qp, q.compose(i), qp.compose(ip))
    # the wings are the ones named above
    b.r, b.rp = _same_as(b.r, q_s), _same_as(b.rp, p_m)
    rep = check_butterfly(b)
    if not rep.ok:
        raise GroupoidError(f"gauge butterfly failed: {rep.violations[0]}")
    Ind, _ = induced_groupoid(G, orbit_of, "GxP")
    comparison = GroupoidMorphism(K, Ind, {x: x for x in P},
                                  {a: (a[1][0], qp.f1[a], a[1][1]) for a in K.arrows}, "K=K'")
    if not comparison.is_iso():
        raise GroupoidError("K is not the induced groupoid of G")
    wings = {}
    for name, emb, proj in (("S", i, qp), ("banalP", ip, q)):
        N = subgroupoid(K, {emb.f1[a] for a in emb.source.arrows})
        Q, pr = two_sided_quotient(K, N)
        wings[name] = quotient_comparison(pr, proj).is_iso()
    b.flags = {"transverse": check_transversality(K, i, ip), "wings": all(wings.values())}
    return GaugeResult(G, b, S, B, comparison, wings)


def _same_as(computed: GroupoidMorphism, named: GroupoidMorphism) -> GroupoidMorphism:
    if computed != named:
        raise GroupoidError(f"{named.name} does not match the butterfly composite")
    return named


def _relabel_objects(g: FinGroupoid, rename: dict) -> FinGroupoid:
    arrows = {a: (rename[g.src(a)], rename[g.tgt(a)]) for a in g.arrows}
    back = {v: k for k, v in rename.items()}
    return groupoid_from_law([rename[x] for x in g.objects], arrows, lambda o: g.unit(back[o]),
                             g.compose, g.inv, g.name)


# ---------------------------------------------------------------- covers and cocycles

@dataclass
class Cover:
    B: tuple
    pieces: tuple

    def __post_init__(self):
        self.B = tuple(self.B)
        self.pieces = tuple(tuple(p) for p in self.pieces)
        covered = {x for p in self.pieces for x in p}
        if not self.B:
            raise EmptyBaseError("cover of an empty set")
        if covered != set(self.B):
            raise GroupoidError("pieces do not cover B exactly")

    @property
    def U(self) -> tuple:
        return tuple((i, x) for i, p in enumerate(self.pieces) for x in p)

    def blocks(self) -> list:
        return [[(i, x) for x in p] for i, p in enumerate(self.pieces)]


def build_cover_groupoid(c: Cover) -> FinGroupoid:
    """U x_B U: one arrow ((j, x), (i, x)) for every pair of pieces containing x."""
    return principal_groupoid({u: u[1] for u in c.U}, "UxBU", c.U)


@dataclass
class Cocycle:
    cover: Cover
    target: FinGroupoid
    g: GroupoidMorphism


def cocycle_from_table(c: Cover, target: FinGroupoid, table: dict) -> Cocycle:
    """``table[(j, i, x)]`` is g_ji(x) for x in U_i and U_j; diagonal entries default to units."""
    R = build_cover_groupoid(c)
    f0 = {}
    for (j, i, x), a in table.items():
        if a not in target.arrows:
            raise CocycleError(f"{a!r} is not an arrow of the target", (j, i, x))
        for u, v in (((i, x), target.src(a)), ((j, x), target.tgt(a))):
            if f0.setdefault(u, v) != v:
                raise CocycleError("table is inconsistent on objects", (j, i, x))
    if len(target.objects) == 1:
        for u in c.U:
            f0.setdefault(u, target.objects[0])
    f1 = {}
    for a in R.arrows:
        (j, y), (i, x) = a
        if i == j:
            f1[a] = table.get((j, i, x), target.unit(f0[(i, x)]) if (i, x) in f0 else None)
        else:
            f1[a] = table.get((j, i, x))
        if f1[a] is None:
            raise CocycleError("missing table entry", (j, i, x))
    missing = [u for u in c.U if u not in f0]
    if missing:
        raise CocycleError("no object for a cover point", missing[0])
    for x in c.B:
        idx = [i for i, p in enumerate(c.pieces) if x in p]
        for i, j, k in itertools.product(idx, repeat=3):
            first, second = f1[((j, x), (i, x))], f1[((k, x), (j, x))]
            if target.cat.comp.get((second, first)) != f1[((k, x), (i, x))]:
                raise CocycleError("cocycle identity fails", (k, j, i, x))
    g = GroupoidMorphism(R, target, f0, f1, "cocycle")
    rep = g.check()
    if not rep.ok:
        raise CocycleError(f"cocycle is not a morphism: {rep.violations[0]}")
    return Cocycle(c, target, g)


def _same_tables(g: FinGroupoid, h: FinGroupoid) -> bool:
    if g is h:
        return True
    return (dict(g.arrows) == dict(h.arrows) and g.cat.identity == h.cat.identity
            and all(g.compose(b, a) == h.compose(b, a) for b, a in g.cat.composable_pairs()))


def cohomologous(c1: Cocycle, c2: Cocycle) -> bool:
    """Related by a coboundary that is constant on each piece."""
    if c1.cover != c2.cover or not _same_tables(c1.target, c2.target):
        raise GroupoidError("cocycles live on different covers or targets")
    g2 = c2.g
    if g2.source is not c1.g.source or g2.target is not c1.g.target:
        g2 = GroupoidMorphism(c1.g.source, c1.g.target, g2.f0, g2.f1, g2.name)
    return natural_iso_exists(c1.g, g2, constant_on=c1.cover.blocks()) is not None


@dataclass
class TorsorResult:
    P: tuple
    action: ActionLaw
    actor: GroupoidMorphism
    chart: GroupoidMorphism          # cover groupoid -> action groupoid
    projection: dict                 # P -> B
    gauge: GaugeResult
    activation: Activation
    split: bool


def torsor_from_cocycle(c: Cocycle) -> TorsorResult:
    """Universal activation of the cocycle: the principal bundle P with its structure-group action."""
    if len(c.target.objects) != 1:
        raise GroupoidError("torsor_from_cocycle expects a group target")
    act = universal_activation(c.g)
    law = action_law_of_actor(act.f1)
    P = tuple(act.H1.objects)
    om = orbit_map(act.H1)
    projection = {}
    for u in c.cover.U:
        projection.setdefault(act.h1.f0[u], u[1])
    for p in P:
        if p not in projection:
            rep = next(x for x in P if x in projection and om[x] == om[p])
            projection[p] = projection[rep]
    action = {(g, p): law.lam[(g, p)] for g in c.target.arrows for p in P}
    gauge = gauge_groupoid(c.target, action, P)
    trivial = GroupoidMorphism(c.g.source, c.target, dict(c.g.f0),
                               {a: c.target.unit(c.g.f0[c.g.source.src(a)]) for a in c.g.source.arrows})
    split = natural_iso_exists(c.g, trivial, constant_on=c.cover.blocks()) is not None
    return TorsorResult(P, law, act.f1, act.h1, projection, gauge, act, split)


def cocycle_of_sections(h: FinGroupoid, action: dict, cover: Cover, section: dict) -> Cocycle:
    """Transition functions of local sections: s_j(x) = g_ji(x) . s_i(x).

    ``section[(i, x)]`` is a point of P over x; points over x must lie in one orbit.
    """
    table = {}
    for (i, x) in cover.U:
        for (j, y) in cover.U:
            if y != x:
                continue
            a, b = section[(i, x)], section[(j, x)]
            g = [t for t in h.arrows if action[(t, a)] == b]
            if len(g) != 1:
                raise CocycleError("sections are not related by a unique group element", (j, i, x))
            table[(j, i, x)] = g[0]
    return cocycle_from_table(cover, h, table)
