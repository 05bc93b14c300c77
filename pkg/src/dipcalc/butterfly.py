"""Butterfly diagrams: two s-equivalences out of a common groupoid K with crossed kernels.

Naming follows the left/right wings::

    R            Rp
      i        ip
         K
      q        qp
    G            Gp

with r = q . i, rp = qp . ip, R = Ker qp and Rp = Ker q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .fincat import ValidationReport
from .groupoid import FinGroupoid, GroupoidError, GroupoidMorphism
from .morphism import classify_morphism


@dataclass
class ButterflyDiagram:
    R: FinGroupoid
    Rp: FinGroupoid
    K: FinGroupoid
    G: FinGroupoid
    Gp: FinGroupoid
    i: GroupoidMorphism
    ip: GroupoidMorphism
    q: GroupoidMorphism
    qp: GroupoidMorphism
    r: GroupoidMorphism
    rp: GroupoidMorphism
    flags: dict = field(default_factory=dict)

    def inverse(self) -> "ButterflyDiagram":
        """The same diagram read from the other wing."""
        return ButterflyDiagram(self.Rp, self.R, self.K, self.Gp, self.G, self.ip, self.i,
                                self.qp, self.q, self.rp, self.r, dict(self.flags))

    def nodes(self) -> dict:
        return {"R": self.R, "Rp": self.Rp, "K": self.K, "G": self.G, "Gp": self.Gp}

    def edges(self) -> dict:
        return {"i": self.i, "ip": self.ip, "q": self.q, "qp": self.qp, "r": self.r, "rp": self.rp}


def _units(g: FinGroupoid) -> set:
    return {g.unit(b) for b in g.objects}


def _kernel_arrows(q: GroupoidMorphism) -> set:
    units = _units(q.target)
    return {k for k in q.source.arrows if q.f1[k] in units}


def check_butterfly(b: ButterflyDiagram) -> ValidationReport:
    rep = ValidationReport()
    for name, m in b.edges().items():
        sub = m.check()
        if not sub.ok:
            rep.extend(sub, f"{name}: ")
    if not rep.ok:
        return rep
    if b.i.target is not b.K or b.ip.target is not b.K:
        rep.add("embedding target", [])
    if b.q.source is not b.K or b.qp.source is not b.K:
        rep.add("projection source", [])
    if not rep.ok:
        return rep
    for name, m in (("q", b.q), ("qp", b.qp)):
        if not classify_morphism(m).s_equivalence:
            rep.add("not an s-equivalence", [name])
    for name, m, other in (("i", b.i, b.qp), ("ip", b.ip, b.q)):
        if not m.injective_on_arrows():
            rep.add("embedding not injective", [name])
        if {m.f1[a] for a in m.source.arrows} != _kernel_arrows(other):
            rep.add("kernel mismatch", [name])
        if sorted(map(repr, (m.f0[x] for x in m.source.objects))) != sorted(map(repr, b.K.objects)):
            rep.add("embedding not wide", [name])
    if b.r != b.q.compose(b.i):
        rep.add("left wing does not commute", ["r"])
    if b.rp != b.qp.compose(b.ip):
        rep.add("right wing does not commute", ["rp"])
    return rep


def _embedded(K: FinGroupoid, X) -> set:
    if isinstance(X, GroupoidMorphism):
        if X.target is not K:
            raise GroupoidError("embedding does not land in K")
        arrows = {X.f1[a] for a in X.source.arrows}
    else:
        arrows = set(X.arrows)
    stray = arrows - set(K.arrows)
    if stray:
        raise GroupoidError(f"{next(iter(stray))!r} is not an arrow of K")
    return arrows


def check_transversality(K: FinGroupoid, R, Rp) -> bool:
    """Division restricts to a bijection R x_alpha Rp -> K."""
    r_arrows, rp_arrows = _embedded(K, R), _embedded(K, Rp)
    by_source = {}
    for a in rp_arrows:
        by_source.setdefault(K.src(a), []).append(a)
    image = []
    for a in r_arrows:
        for c in by_source.get(K.src(a), ()):
            image.append(K.divide(a, c))
    return len(image) == len(K.arrows) and set(image) == set(K.arrows)


@dataclass
class PregroupoidLaws:
    lhd: dict       # (g, x) -> g <| x, g in G, x in the shared base
    nabla: dict     # (g', x) -> g' \/ x, g' in Gp
    exchange: bool
    decomposition: bool


def _law(K, emb: GroupoidMorphism, proj: GroupoidMorphism) -> dict:
    law = {}
    for a in emb.source.arrows:
        k = emb.f1[a]
        key = (proj.f1[k], K.src(k))
        if key in law and law[key] != K.tgt(k):
            raise GroupoidError(f"wing is not an actor at {key!r}")
        law[key] = K.tgt(k)
    return law


def pregroupoid_laws(b: ButterflyDiagram) -> Optional[PregroupoidLaws]:
    """The two partial action laws on the base of K, or None when not transverse."""
    if not check_transversality(b.K, b.i, b.ip):
        return None
    K = b.K
    lhd = _law(K, b.i, b.q)
    nabla = _law(K, b.ip, b.qp)
    exchange = True
    for (g, x), y in lhd.items():
        for (gp, x2), xp in nabla.items():
            if x2 != x:
                continue
            left = lhd.get((g, xp))
            right = nabla.get((gp, y))
            if left is None or right is None or left != right:
                exchange = False
    decomposition = all(
        lhd.get((b.q.f1[k], nabla.get((b.qp.f1[k], K.src(k))))) == K.tgt(k) for k in K.arrows)
    return PregroupoidLaws(lhd, nabla, exchange, decomposition)
