"""Prediptychs, the diptych axiom checker, square classes and square diptychs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .fincat import (
    PRODUCT, PULLBACK, PUSHOUT, CategoryError, FinCategory, LazyComposition,
    LimitWitness, Square, ValidationReport, check_square_shape, classify_arrow,
    find_limit, injective, iter_limits, ordinal, set_skeleton, square_commutes,
    subcategory, surjective, verify_square_universal, certify_limit,
)


class MissingProductError(CategoryError):
    """A product exists in the category but no witness was supplied."""


class FlavorError(CategoryError):
    pass


@dataclass(eq=False)
class Prediptych:
    cat: FinCategory
    good_monos: frozenset
    good_epis: frozenset
    name: str = ""

    def __post_init__(self):
        self.good_monos = frozenset(self.good_monos)
        self.good_epis = frozenset(self.good_epis)

    @property
    def Di(self):
        return self.good_monos

    @property
    def Ds(self):
        return self.good_epis

    @cached_property
    def isos(self) -> frozenset:
        return frozenset(a for a in self.cat.arrows if classify_arrow(self.cat, a).iso)

    @cached_property
    def standard(self) -> bool:
        """Good monos/epis are exactly all monos/epis."""
        c = self.cat
        return all((a in self.Di) == classify_arrow(c, a).mono and
                   (a in self.Ds) == classify_arrow(c, a).epi for a in c.arrows)

    def dual(self) -> "Prediptych":
        from .fincat import opposite
        return Prediptych(opposite(self.cat), self.good_epis, self.good_monos,
                          self.name + "^op" if self.name else "")


@dataclass(eq=False)
class Diptych:
    pre: Prediptych
    products: dict = field(default_factory=dict)

    @property
    def cat(self):
        return self.pre.cat

    @property
    def Di(self):
        return self.pre.good_monos

    @property
    def Ds(self):
        return self.pre.good_epis

    @property
    def name(self):
        return self.pre.name

    @classmethod
    def with_products(cls, pre: Prediptych) -> "Diptych":
        """Attach a certified product witness for every pair that has one."""
        c = pre.cat
        prods = {}
        for x, y in itertools.product(c.objects, repeat=2):
            w = find_limit(c, PRODUCT, (x, y))
            if w is not None:
                prods[(x, y)] = w
        return cls(pre, prods)

    def product(self, x, y) -> Optional[LimitWitness]:
        return self.products.get((x, y))


# ---------------------------------------------------------------- checks

def check_prediptych(p: Prediptych) -> ValidationReport:
    """Subcategory closure of Di, Ds and axiom (i)."""
    rep = ValidationReport()
    c = p.cat
    for label, sub in (("Di", p.Di), ("Ds", p.Ds)):
        stray = [a for a in sub if a not in c.arrows]
        if stray:
            rep.add(f"{label} unknown arrow", stray[:1])
            continue
        for x in c.objects:
            if c.identity[x] not in sub:
                rep.add(f"{label} identity", [c.identity[x]])
        for g, f in c.composable_pairs():
            if g in sub and f in sub and c.compose(g, f) not in sub:
                rep.add(f"{label} closure", [g, f])
    if any(v.kind.endswith("unknown arrow") for v in rep):
        return rep
    isos = p.isos
    for a in c.arrows:
        both = a in p.Di and a in p.Ds
        if both and a not in isos:
            rep.add("axiom (i)", [a], "in Di and Ds but not invertible")
        elif a in isos and not both:
            rep.add("axiom (i)", [a], "invertible but missing from Di or Ds")
    return rep


def _require_products(d: Diptych):
    c = d.cat
    for x, y in itertools.product(c.objects, repeat=2):
        if (x, y) not in d.products and find_limit(c, PRODUCT, (x, y), comparison=False) is not None:
            raise MissingProductError(f"product of {x!r} and {y!r} exists but has no witness")


def product_arrow(d: Diptych, f, g):
    """f x g, when both products are supplied; else None."""
    c = d.cat
    dom = d.products.get((c.src(f), c.src(g)))
    cod = d.products.get((c.tgt(f), c.tgt(g)))
    if dom is None or cod is None:
        return None
    p1, p2 = dom.legs
    return cod.mediator(dom.apex, (c.compose(f, p1), c.compose(g, p2)))


def check_diptych(d: Diptych) -> ValidationReport:
    """Axioms (i)-(vi) by exhaustion; each failure names its witness arrows."""
    rep = check_prediptych(d.pre)
    if not rep.ok:
        return rep
    _require_products(d)
    c, Di, Ds = d.cat, d.Di, d.Ds

    # (ii)
    for label, sub in (("Di", Di), ("Ds", Ds)):
        members = [a for a in c.arrows if a in sub]
        for f, g in itertools.product(members, repeat=2):
            fg = product_arrow(d, f, g)
            if fg is not None and fg not in sub:
                rep.add("axiom (ii)", [f, g], f"product not in {label}")
    # (iii)
    for a in c.arrows:
        if a in Di and not classify_arrow(c, a).mono:
            rep.add("axiom (iii)(a)", [a], "good mono is not mono")
        if a in Ds and not classify_arrow(c, a).epi:
            rep.add("axiom (iii)(b)", [a], "good epi is not epi")
    # (iv)
    for g, f in c.composable_pairs():
        h = c.compose(g, f)
        if h in Di and f not in Di:
            rep.add("axiom (iv)(a)", [g, f])
        if h in Ds and f in Ds and g not in Ds:
            rep.add("axiom (iv)(b)", [g, f])
    # (v)
    for s in c.arrows:
        if s not in Ds:
            continue
        for i in c.in_arrows(c.tgt(s)):
            if i in Di:
                # existential: any pullback with s' in Ds and i' in Di will do
                ok = any(w.legs[0] in Ds and w.legs[1] in Di
                         for w in iter_limits(c, PULLBACK, (i, s)))
                if not ok:
                    rep.add("axiom (v)(a)", [s, i], "no pullback with s' in Ds, i' in Di")
            else:
                # Di and Ds contain the isos, so the first witness is representative
                w = find_limit(c, PULLBACK, (i, s), comparison=False)
                if w is not None and w.legs[0] in Ds and w.legs[1] in Di:
                    rep.add("axiom (v)(b)", [s, i], "descent fails: i not in Di")
    # (vi)
    for a in c.arrows:
        if a not in Ds:
            continue
        for b in c.in_arrows(c.tgt(a)):
            if b not in Ds:
                continue
            w = find_limit(c, PULLBACK, (a, b), comparison=False)
            if w is None or w.legs[0] not in Ds or w.legs[1] not in Ds:
                continue
            sq = Square(top=w.legs[1], left=w.legs[0], right=b, bottom=a)
            if not verify_square_universal(c, sq, PUSHOUT):
                rep.add("axiom (vi)", list(sq), "s-exact candidate is not a pushout")
    return rep


# ---------------------------------------------------------------- squares

@dataclass(frozen=True)
class SquareClassification:
    commutes: bool
    ipb: bool
    spb: bool
    gpb: bool
    s_exact: bool
    hi: bool
    hs: bool
    vi: bool
    vs: bool
    pullback: bool = False

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in
                ("commutes", "gpb", "hi", "hs", "ipb", "pullback", "s_exact", "spb", "vi", "vs")}


def _jointly_monic(c, a, b):
    x = c.src(a)
    for y in c.objects:
        seen = set()
        for m in c.hom(y, x):
            key = (c.compose(a, m), c.compose(b, m))
            if key in seen:
                return False
            seen.add(key)
    return True


def _ipb(d: Diptych, left, top) -> bool:
    """Is the comparison (left, top) into the product a good mono?"""
    c = d.cat
    prod = d.products.get((c.tgt(left), c.tgt(top)))
    if prod is not None:
        return prod.mediator(c.src(left), (left, top)) in d.Di
    if d.pre.standard:
        # good monos are the monos, so ask for the pair to be jointly monic
        return _jointly_monic(c, left, top)
    raise MissingProductError(
        f"no product of {c.tgt(left)!r} and {c.tgt(top)!r} for the ipb comparison")


def classify_square(d: Diptych, square) -> SquareClassification:
    c = d.cat
    sq = check_square_shape(c, square)
    top, left, right, bottom = sq
    Di, Ds = d.Di, d.Ds
    hi, hs = top in Di and bottom in Di, top in Ds and bottom in Ds
    vi, vs = left in Di and right in Di, left in Ds and right in Ds
    if not square_commutes(c, sq):
        return SquareClassification(False, False, False, False, False, hi, hs, vi, vs)
    ipb = _ipb(d, left, top)
    pb = verify_square_universal(c, sq, PULLBACK)
    spb = False
    w = find_limit(c, PULLBACK, (bottom, right), comparison=False)
    if w is not None and _ipb(d, w.legs[0], w.legs[1]):
        spb = w.mediator(c.src(top), (left, top)) in Ds
    gpb = ipb and pb
    s_exact = (gpb and hs and vs and verify_square_universal(c, sq, PUSHOUT))
    return SquareClassification(True, ipb, spb, gpb, s_exact, hi, hs, vi, vs, pb)


# ---------------------------------------------------------------- square category

FLAVORS = ("naive", "main", "maiN", "MaiN", "can_spb", "can_gpb")


def square_category(c: FinCategory) -> FinCategory:
    """Objects: arrows of c.  Arrows: commuting squares, composed horizontally."""
    objects = list(c.arrows)
    arrows = {}
    for fl in objects:
        for fr in objects:
            for u in c.hom(c.src(fl), c.src(fr)):
                ru = c.compose(fr, u)
                for v in c.hom(c.tgt(fl), c.tgt(fr)):
                    if c.compose(v, fl) == ru:
                        arrows[Square(u, fl, fr, v)] = (fl, fr)
    identity = {f: Square(c.identity[c.src(f)], f, f, c.identity[c.tgt(f)]) for f in objects}

    def rule(g, f):
        return Square(c.compose(g.top, f.top), f.left, g.right, c.compose(g.bottom, f.bottom))

    return FinCategory(objects, arrows, identity, LazyComposition(arrows, rule),
                       f"sq({c.name})" if c.name else "sq")


def _square_products(d: Diptych, sqcat: FinCategory, pre: Prediptych) -> dict:
    """Componentwise products of squares, each certified in the square category."""
    c = d.cat
    out = {}
    for f, g in itertools.product(sqcat.objects, repeat=2):
        fg = product_arrow(d, f, g)
        if fg is None:
            raise MissingProductError(f"no componentwise product for {f!r}, {g!r}")
        top_w = d.products[(c.src(f), c.src(g))]
        bot_w = d.products[(c.tgt(f), c.tgt(g))]
        legs = (Square(top_w.legs[0], fg, f, bot_w.legs[0]),
                Square(top_w.legs[1], fg, g, bot_w.legs[1]))
        if fg not in sqcat.arrows and fg not in set(sqcat.objects):
            raise MissingProductError(f"product arrow {fg!r} missing")
        w = certify_limit(pre.cat, PRODUCT, (f, g), fg, legs)
        if w is None:
            raise MissingProductError(f"componentwise product of {f!r}, {g!r} is not a product")
        out[(f, g)] = w
    return out


def build_square_diptych(d: Diptych, flavor: str, as_diptych: bool = False):
    """Square category of d with the good monos/epis of the chosen flavor."""
    if flavor not in FLAVORS:
        raise FlavorError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    sqcat = square_category(d.cat)
    cls = {sq: classify_square(d, sq) for sq in sqcat.arrows}
    hi = {s for s, k in cls.items() if k.hi}
    hs = {s for s, k in cls.items() if k.hs}
    spb = {s for s, k in cls.items() if k.spb}
    gpb = {s for s, k in cls.items() if k.gpb}
    cat = sqcat
    if flavor == "naive":
        di, ds = hi, hs
    elif flavor == "main":
        di, ds = hi, hs & spb
    elif flavor == "maiN":
        di, ds = hi, hs & gpb
    elif flavor == "MaiN":
        di, ds = hi & gpb, hs & gpb
    else:
        keep = spb if flavor == "can_spb" else gpb
        cat = subcategory(sqcat, keep, f"{sqcat.name}[{flavor}]")
        di, ds = hi & gpb, hs & keep
    pre = Prediptych(cat, di, ds, f"{flavor} squares of {d.name}")
    if not as_diptych:
        return pre
    return Diptych(pre, _square_products(d, cat, pre))


# ---------------------------------------------------------------- ready-made structures

def trivial_prediptych(c: FinCategory, name="") -> Prediptych:
    isos = {a for a in c.arrows if classify_arrow(c, a).iso}
    return Prediptych(c, isos, isos, name or c.name)


def i_prediptych(c: FinCategory, name="") -> Prediptych:
    isos = {a for a in c.arrows if classify_arrow(c, a).iso}
    return Prediptych(c, set(c.arrows), isos, name or f"[{c.name}]_i")


def s_prediptych(c: FinCategory, name="") -> Prediptych:
    isos = {a for a in c.arrows if classify_arrow(c, a).iso}
    return Prediptych(c, isos, set(c.arrows), name or f"[{c.name}]_s")


def ordinal_prediptych(n: int, variant: str = "trivial") -> Prediptych:
    c = ordinal(n)
    if variant in ("trivial", "t", ""):
        return trivial_prediptych(c, f"[{n}]")
    if variant == "i":
        return i_prediptych(c, f"[{n}]_i")
    if variant == "s":
        return s_prediptych(c, f"[{n}]_s")
    raise CategoryError(f"unknown ordinal variant {variant!r}")


def set_prediptych(bound: int = 4, variant: str = "standard") -> Prediptych:
    """Injections / surjections on the Set-skeleton.

    ``variant``: "standard", "split" (split surjections, which in Set are
    all surjections), or "corrupt" (Di = all arrows, for negative tests).
    """
    c = set_skeleton(bound)
    inj = {a for a in c.arrows if injective(a)}
    surj = {a for a in c.arrows if surjective(a)}
    if variant == "standard":
        return Prediptych(c, inj, surj, f"Set<={bound}")
    if variant == "split":
        split = {a for a in surj if classify_arrow(c, a).split_epi}
        return Prediptych(c, inj, split, f"Set<={bound} split")
    if variant == "corrupt":
        return Prediptych(c, set(c.arrows), surj, f"Set<={bound} corrupt")
    raise CategoryError(f"unknown Set variant {variant!r}")


def set_diptych(bound: int = 4, variant: str = "standard") -> Diptych:
    return Diptych.with_products(set_prediptych(bound, variant))
