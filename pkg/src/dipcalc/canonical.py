"""The canonical butterfly of a groupoid G.

ΔG and ∇G are the principal groupoids on the arrow set of G over the
source and target maps.  □G has the arrows of G as objects; an arrow
x -> x' is a commutative square (h_top, h_bot) with h_bot x = x' h_top.
"""

from __future__ import annotations

from dataclasses import dataclass

from .butterfly import ButterflyDiagram, check_butterfly
from .fincat import ValidationReport
from .groupoid import FinGroupoid, GroupoidMorphism, groupoid_from_law, principal_groupoid
from .morphism import FlagError, action_law_of_actor, classify_morphism, kernel


@dataclass
class CanonicalButterfly:
    G: FinGroupoid
    DeltaG: FinGroupoid
    NablaG: FinGroupoid
    SquareG: FinGroupoid
    delta: GroupoidMorphism
    delta_bar: GroupoidMorphism
    iota_bot: GroupoidMorphism
    iota_top: GroupoidMorphism
    pi_bot: GroupoidMorphism
    pi_top: GroupoidMorphism

    def as_butterfly(self) -> ButterflyDiagram:
        return ButterflyDiagram(self.DeltaG, self.NablaG, self.SquareG, self.G, self.G,
                                self.iota_bot, self.iota_top, self.pi_bot, self.pi_top,
                                self.delta, self.delta_bar)


def delta_groupoid(g: FinGroupoid):
    """(ΔG, δ_G) with δ_G(y, x) = y x^-1 over the target map."""
    D = principal_groupoid({x: g.src(x) for x in g.arrows}, "DeltaG", g.arrows)
    d = GroupoidMorphism(D, g, {x: g.tgt(x) for x in g.arrows},
                         {a: g.divide(*a) for a in D.arrows}, "delta")
    return D, d


def nabla_groupoid(g: FinGroupoid):
    """(∇G, δ̄_G) with δ̄_G(y, x) = y^-1 x over the source map."""
    N = principal_groupoid({x: g.tgt(x) for x in g.arrows}, "NablaG", g.arrows)
    d = GroupoidMorphism(N, g, {x: g.src(x) for x in g.arrows},
                         {(y, x): g.compose(g.inv(y), x) for (y, x) in N.arrows}, "delta_bar")
    return N, d


def square_groupoid(g: FinGroupoid) -> FinGroupoid:
    """□G: arrows (x', h_top, h_bot, x) from x to x'."""
    arrows = {}
    for x in g.arrows:
        for xp in g.arrows:
            for ht in g.hom(g.src(x), g.src(xp)):
                hb = g.compose(xp, g.compose(ht, g.inv(x)))
                arrows[(xp, ht, hb, x)] = (x, xp)
    return groupoid_from_law(
        g.arrows, arrows, lambda x: (x, g.unit(g.src(x)), g.unit(g.tgt(x)), x),
        lambda b, a: (b[0], g.compose(b[1], a[1]), g.compose(b[2], a[2]), a[3]),
        lambda a: (a[3], g.inv(a[1]), g.inv(a[2]), a[0]), "SquareG")


def canonical_butterfly(g: FinGroupoid, verify: bool = True) -> CanonicalButterfly:
    D, delta = delta_groupoid(g)
    N, delta_bar = nabla_groupoid(g)
    S = square_groupoid(g)
    ident = {x: x for x in g.arrows}
    pi_top = GroupoidMorphism(S, g, {x: g.src(x) for x in g.arrows}, {a: a[1] for a in S.arrows}, "pi_top")
    pi_bot = GroupoidMorphism(S, g, {x: g.tgt(x) for x in g.arrows}, {a: a[2] for a in S.arrows}, "pi_bot")
    iota_bot = GroupoidMorphism(D, S, ident, {
        (y, x): (y, g.unit(g.src(x)), g.divide(y, x), x) for (y, x) in D.arrows}, "iota_bot")
    iota_top = GroupoidMorphism(N, S, ident, {
        (y, x): (y, g.compose(g.inv(y), x), g.unit(g.tgt(x)), x) for (y, x) in N.arrows}, "iota_top")
    cb = CanonicalButterfly(g, D, N, S, delta, delta_bar, iota_bot, iota_top, pi_bot, pi_top)
    if verify:
        rep = check_canonical_butterfly(cb)
        if not rep.ok:
            raise FlagError(f"canonical butterfly check failed: {rep.violations[0]}")
    return cb


def check_canonical_butterfly(cb: CanonicalButterfly) -> ValidationReport:
    rep = check_butterfly(cb.as_butterfly())
    if not rep.ok:
        return rep
    for name, m in (("delta", cb.delta), ("delta_bar", cb.delta_bar)):
        if not classify_morphism(m).actor:
            rep.add("not an actor", [name])
    for name, proj, emb in (("pi_top", cb.pi_top, cb.iota_bot), ("pi_bot", cb.pi_bot, cb.iota_top)):
        ker = kernel(proj)
        if set(ker.N.arrows) != {emb.f1[a] for a in emb.source.arrows}:
            rep.add("kernel mismatch", [name])
    if not left_translation_matches(cb):
        rep.add("action law of delta is not left translation", [])
    return rep


def left_translation_matches(cb: CanonicalButterfly) -> bool:
    """λ(g, x) = g x for every composable pair."""
    g = cb.G
    law = action_law_of_actor(cb.delta, check=False)
    expected = {(a, x): g.compose(a, x) for x in g.arrows for a in g.out_arrows(g.tgt(x))}
    return law.lam == expected
