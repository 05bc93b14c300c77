"""Finite categories given by explicit tables.

Everything here is decided by enumeration: mono/epi tests run over whole
hom-sets and every limit witness is certified against every competing
cone.  Composition may be a plain dict or a :class:`LazyComposition`,
which computes ``g o f`` on demand; the latter keeps categories with a
few hundred arrows (Set-skeletons, F-inv truncations) cheap to build.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Optional

PRODUCT = "product"
PULLBACK = "pullback"
PUSHOUT = "pushout"
LIMIT_KINDS = (PRODUCT, PULLBACK, PUSHOUT)


class CategoryError(ValueError):
    """Malformed input to a category operation."""


class UnknownArrowError(CategoryError, KeyError):
    pass


class ShapeError(CategoryError):
    """A diagram or square does not have the required shape."""


class NonCommutingError(CategoryError):
    pass


class FunctorMismatchError(CategoryError):
    pass


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class Violation:
    kind: str
    arrows: tuple = ()
    detail: str = ""

    def __str__(self):
        ids = ", ".join(map(str, self.arrows))
        out = f"{self.kind}: [{ids}]"
        return f"{out} {self.detail}" if self.detail else out


@dataclass
class ValidationReport:
    """A list of violations; empty means the structure passed."""

    violations: list = field(default_factory=list)

    def add(self, kind, arrows=(), detail=""):
        self.violations.append(Violation(kind, tuple(arrows), detail))

    def extend(self, other: "ValidationReport", prefix=""):
        for v in other.violations:
            kind = f"{prefix}{v.kind}" if prefix else v.kind
            self.violations.append(Violation(kind, v.arrows, v.detail))

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


# ---------------------------------------------------------------- lazy maps

class LazyComposition(Mapping):
    """Composition table computed by a function.

    ``rule(g, f)`` must return ``g o f`` for a composable pair.  Keys are
    the composable pairs of ``arrows`` (a dict id -> (src, tgt)).
    """

    def __init__(self, arrows: Mapping, rule: Callable[[Any, Any], Any]):
        self._arrows = arrows
        self._rule = rule

    def __getitem__(self, key):
        g, f = key
        try:
            gs = self._arrows[g][0]
            ft = self._arrows[f][1]
        except KeyError:
            raise KeyError(key) from None
        if gs != ft:
            raise KeyError(key)
        return self._rule(g, f)

    def __contains__(self, key):
        try:
            g, f = key
            return self._arrows[g][0] == self._arrows[f][1]
        except (KeyError, TypeError, ValueError):
            return False

    def _by_source(self):
        out = defaultdict(list)
        for a, (s, _) in self._arrows.items():
            out[s].append(a)
        return out

    def __iter__(self):
        by_src = self._by_source()
        for f, (_, t) in self._arrows.items():
            for g in by_src.get(t, ()):
                yield (g, f)

    def __len__(self):
        by_src = self._by_source()
        return sum(len(by_src.get(t, ())) for _, t in self._arrows.values())


class LazyMap(Mapping):
    """Read-only mapping over a fixed key set, values from a function."""

    def __init__(self, keys: Iterable, rule: Callable[[Any], Any]):
        self._keys = tuple(keys)
        self._keyset = frozenset(self._keys)
        self._rule = rule

    def __getitem__(self, key):
        if key not in self._keyset:
            raise KeyError(key)
        return self._rule(key)

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, key):
        return key in self._keyset


# ---------------------------------------------------------------- categories

class FinCategory:
    """A finite category.

    ``arrows`` maps arrow id -> (src, tgt) and its insertion order is the
    canonical arrow order; ``comp[(g, f)]`` is ``g o f``.
    """

    def __init__(self, objects: Iterable, arrows: Mapping, identity: Mapping,
                 comp: Mapping, name: str = ""):
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.identity = dict(identity)
        self.comp = comp
        self.name = name
        self._classes = {}

    # structural equality; comp is materialized, so keep it for small cases
    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        if self is other:
            return True
        return (self.objects == other.objects and self.arrows == other.arrows
                and self.identity == other.identity
                and dict(self.comp.items()) == dict(other.comp.items()))

    def __hash__(self):
        return hash((self.objects, len(self.arrows)))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.arrows)} arrows>"

    def src(self, a):
        try:
            return self.arrows[a][0]
        except KeyError:
            raise UnknownArrowError(f"unknown arrow {a!r}") from None

    def tgt(self, a):
        try:
            return self.arrows[a][1]
        except KeyError:
            raise UnknownArrowError(f"unknown arrow {a!r}") from None

    def compose(self, g, f):
        """g o f."""
        return self.comp[(g, f)]

    def compose_path(self, *arrows):
        """Compose right to left: compose_path(h, g, f) = h o g o f."""
        out = arrows[-1]
        for a in reversed(arrows[:-1]):
            out = self.compose(a, out)
        return out

    @cached_property
    def _hom(self):
        table = defaultdict(list)
        for a, (s, t) in self.arrows.items():
            table[(s, t)].append(a)
        return table

    @cached_property
    def _out(self):
        table = defaultdict(list)
        for a, (s, _) in self.arrows.items():
            table[s].append(a)
        return table

    @cached_property
    def _in(self):
        table = defaultdict(list)
        for a, (_, t) in self.arrows.items():
            table[t].append(a)
        return table

    def hom(self, x, y) -> list:
        return self._hom.get((x, y), [])

    def out_arrows(self, x) -> list:
        return self._out.get(x, [])

    def in_arrows(self, y) -> list:
        return self._in.get(y, [])

    def is_identity(self, a) -> bool:
        s, t = self.arrows[a]
        return s == t and self.identity.get(s) == a

    def composable_pairs(self) -> Iterator:
        for f, (_, t) in self.arrows.items():
            for g in self.out_arrows(t):
                yield g, f


def validate_category(c: FinCategory) -> ValidationReport:
    """List every violated category axiom with the offending arrow ids."""
    rep = ValidationReport()
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        rep.add("duplicate object", [o for o, n in Counter(c.objects).items() if n > 1])
    for a, (s, t) in c.arrows.items():
        if s not in objs or t not in objs:
            rep.add("endpoint", [a], f"{s!r}->{t!r} not among objects")
    for x in c.objects:
        e = c.identity.get(x)
        if e is None:
            rep.add("missing identity", [x])
        elif e not in c.arrows or c.arrows[e] != (x, x):
            rep.add("identity typing", [e], f"identity of {x!r}")

    def typed(a):
        return a in c.arrows

    # every stored entry must be well typed
    if isinstance(c.comp, LazyComposition):
        entries = None
    else:
        entries = c.comp.items()
    if entries is not None:
        for key, h in entries:
            try:
                g, f = key
            except (TypeError, ValueError):
                rep.add("composition domain", [key], "key is not a pair")
                continue
            if not (typed(g) and typed(f)) or c.arrows[g][0] != c.arrows[f][1]:
                rep.add("composition domain", [g, f], "pair is not composable")
                continue
            if not typed(h) or c.arrows[h] != (c.arrows[f][0], c.arrows[g][1]):
                rep.add("composition typing", [g, f, h])

    good = {}
    for g, f in c.composable_pairs():
        try:
            h = c.comp[(g, f)]
        except KeyError:
            rep.add("missing composition", [g, f])
            continue
        if not typed(h) or c.arrows[h] != (c.arrows[f][0], c.arrows[g][1]):
            if entries is None:
                rep.add("composition typing", [g, f, h])
            continue
        good[(g, f)] = h

    for a, (s, t) in c.arrows.items():
        es, et = c.identity.get(s), c.identity.get(t)
        if good.get((a, es), a) != a or good.get((et, a), a) != a:
            rep.add("identity law", [a])

    for f, (_, t) in c.arrows.items():
        for g in c.out_arrows(t):
            gf = good.get((g, f))
            if gf is None:
                continue
            for h in c.out_arrows(c.arrows[g][1]):
                hg = good.get((h, g))
                if hg is None:
                    continue
                left, right = good.get((h, gf)), good.get((hg, f))
                if left is not None and right is not None and left != right:
                    rep.add("associativity", [h, g, f])
    return rep


# ---------------------------------------------------------------- arrows

@dataclass(frozen=True)
class ArrowClass:
    mono: bool
    epi: bool
    iso: bool
    split_mono: bool
    split_epi: bool
    inverse: Optional[Hashable] = None


def classify_arrow(c: FinCategory, f) -> ArrowClass:
    """Brute-force mono/epi/iso/split tests for the arrow ``f``."""
    cached = c._classes.get(f)
    if cached is not None:
        return cached
    s, t = c.src(f), c.tgt(f)
    mono = all(
        len({c.compose(f, m) for m in c.hom(x, s)}) == len(c.hom(x, s))
        for x in c.objects)
    epi = all(
        len({c.compose(m, f) for m in c.hom(t, y)}) == len(c.hom(t, y))
        for y in c.objects)
    back = c.hom(t, s)
    lefts = [r for r in back if c.compose(r, f) == c.identity[s]]
    rights = [r for r in back if c.compose(f, r) == c.identity[t]]
    inverse = next((r for r in lefts if r in rights), None)
    out = ArrowClass(mono, epi, inverse is not None, bool(lefts), bool(rights), inverse)
    c._classes[f] = out
    return out


def isomorphisms(c: FinCategory) -> set:
    return {a for a in c.arrows if classify_arrow(c, a).iso}


# ---------------------------------------------------------------- limits

class Square(NamedTuple):
    """A square A' -top-> A, A' -left-> B', A -right-> B, B' -bottom-> B."""

    top: Any
    left: Any
    right: Any
    bottom: Any


@dataclass
class LimitWitness:
    kind: str
    diagram: tuple
    apex: Any
    legs: tuple
    cone_factorizations: dict
    comparison_mono: Optional[bool] = None

    def mediator(self, y, cone):
        """The unique arrow y -> apex (or apex -> y) factoring ``cone``."""
        return self.cone_factorizations[(y, tuple(cone))]


def _check_shape(c, kind, diagram):
    if kind not in LIMIT_KINDS:
        raise ShapeError(f"unknown limit kind {kind!r}")
    if len(diagram) != 2:
        raise ShapeError(f"{kind} diagram needs two entries")
    if kind == PRODUCT:
        for x in diagram:
            if x not in set(c.objects):
                raise ShapeError(f"unknown object {x!r}")
        return
    a, b = diagram
    if kind == PULLBACK and c.tgt(a) != c.tgt(b):
        raise ShapeError("pullback needs a cospan (common target)")
    if kind == PUSHOUT and c.src(a) != c.src(b):
        raise ShapeError("pushout needs a span (common source)")


def _feet(c, kind, diagram):
    if kind == PRODUCT:
        return tuple(diagram)
    if kind == PULLBACK:
        return c.src(diagram[0]), c.src(diagram[1])
    return c.tgt(diagram[0]), c.tgt(diagram[1])


def _count_cones(c, kind, diagram, y):
    """Number of cones with vertex y (cocones for pushouts)."""
    p1, p2 = _feet(c, kind, diagram)
    if kind == PRODUCT:
        return len(c.hom(y, p1)) * len(c.hom(y, p2))
    a, b = diagram
    if kind == PULLBACK:
        seen = Counter(c.compose(b, m) for m in c.hom(y, p2))
        return sum(seen[c.compose(a, m)] for m in c.hom(y, p1))
    seen = Counter(c.compose(m, b) for m in c.hom(p2, y))
    return sum(seen[c.compose(m, a)] for m in c.hom(p1, y))


def _is_cone(c, kind, diagram, legs):
    if kind == PRODUCT:
        return True
    a, b = diagram
    l1, l2 = legs
    if kind == PULLBACK:
        return c.compose(a, l1) == c.compose(b, l2)
    return c.compose(l1, a) == c.compose(l2, b)


def _factor_table(c, kind, diagram, apex, legs, counts=None):
    """Map every cone to its mediator, or None if (apex, legs) is not universal."""
    l1, l2 = legs
    table = {}
    for y in c.objects:
        if kind == PUSHOUT:
            homs = c.hom(apex, y)
            images = [(c.compose(m, l1), c.compose(m, l2)) for m in homs]
        else:
            homs = c.hom(y, apex)
            images = [(c.compose(l1, m), c.compose(l2, m)) for m in homs]
        n = counts[y] if counts is not None else _count_cones(c, kind, diagram, y)
        if len(homs) != n or len(set(images)) != n:
            return None
        for m, im in zip(homs, images):
            table[(y, im)] = m
    return table


def _candidate_legs(c, kind, diagram, x):
    p1, p2 = _feet(c, kind, diagram)
    if kind == PUSHOUT:
        pairs = itertools.product(c.hom(p1, x), c.hom(p2, x))
    else:
        pairs = itertools.product(c.hom(x, p1), c.hom(x, p2))
    for legs in pairs:
        if _is_cone(c, kind, diagram, legs):
            yield legs


def iter_limits(c: FinCategory, kind: str, diagram, comparison: bool = False):
    """Yield every certified witness, apexes in object order."""
    _check_shape(c, kind, diagram)
    diagram = tuple(diagram)
    counts = {y: _count_cones(c, kind, diagram, y) for y in c.objects}
    for x in c.objects:
        if kind == PUSHOUT:
            sizes = (len(c.hom(x, y)) for y in c.objects)
        else:
            sizes = (len(c.hom(y, x)) for y in c.objects)
        if any(s != counts[y] for s, y in zip(sizes, c.objects)):
            continue
        for legs in _candidate_legs(c, kind, diagram, x):
            table = _factor_table(c, kind, diagram, x, legs, counts)
            if table is not None:
                w = LimitWitness(kind, diagram, x, legs, table)
                if comparison and kind == PULLBACK:
                    w.comparison_mono = _comparison_mono(c, w)
                yield w


def find_limit(c: FinCategory, kind: str, diagram, comparison: bool = True) -> Optional[LimitWitness]:
    """First certified product/pullback/pushout witness, or None."""
    return next(iter_limits(c, kind, diagram, comparison), None)


def _comparison_mono(c, w: LimitWitness):
    feet = _feet(c, PULLBACK, w.diagram)
    prod = find_limit(c, PRODUCT, feet)
    if prod is None:
        return None
    m = prod.mediator(w.apex, w.legs)
    return classify_arrow(c, m).mono


def certify_limit(c: FinCategory, kind: str, diagram, apex, legs) -> Optional[LimitWitness]:
    """Certify a proposed witness; None if it is not universal."""
    _check_shape(c, kind, diagram)
    if not _is_cone(c, kind, diagram, legs):
        return None
    table = _factor_table(c, kind, tuple(diagram), apex, tuple(legs))
    if table is None:
        return None
    return LimitWitness(kind, tuple(diagram), apex, tuple(legs), table)


def check_square_shape(c: FinCategory, sq) -> Square:
    sq = Square(*sq)
    for a in sq:
        if a not in c.arrows:
            raise UnknownArrowError(f"unknown arrow {a!r}")
    top, left, right, bottom = sq
    if not (c.src(top) == c.src(left) and c.tgt(top) == c.src(right)
            and c.tgt(left) == c.src(bottom) and c.tgt(right) == c.tgt(bottom)):
        raise ShapeError(f"arrows {tuple(sq)!r} do not form a square")
    return sq


def square_commutes(c: FinCategory, sq) -> bool:
    top, left, right, bottom = check_square_shape(c, sq)
    return c.compose(right, top) == c.compose(bottom, left)


def verify_square_universal(c: FinCategory, square, kind: str) -> bool:
    """Is the commuting square a pullback (or pushout)?  Exhaustive."""
    sq = check_square_shape(c, square)
    if not square_commutes(c, sq):
        raise NonCommutingError(f"square {tuple(sq)!r} does not commute")
    if kind == PULLBACK:
        w = certify_limit(c, PULLBACK, (sq.bottom, sq.right), c.src(sq.top), (sq.left, sq.top))
    elif kind == PUSHOUT:
        w = certify_limit(c, PUSHOUT, (sq.left, sq.top), c.tgt(sq.right), (sq.bottom, sq.right))
    else:
        raise ShapeError(f"squares are pullbacks or pushouts, not {kind!r}")
    return w is not None


# ---------------------------------------------------------------- functors

@dataclass(eq=False)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    obj_map: Mapping
    arr_map: Mapping
    name: str = ""

    def __call__(self, a):
        return self.arr_map[a]

    def on_object(self, x):
        return self.obj_map[x]

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.source is other.source or self.source == other.source) and \
            (self.target is other.target or self.target == other.target) and \
            all(self.obj_map[x] == other.obj_map[x] for x in self.source.objects) and \
            all(self.arr_map[a] == other.arr_map[a] for a in self.source.arrows)

    __hash__ = object.__hash__


def check_functor(f: FinFunctor) -> ValidationReport:
    rep = ValidationReport()
    s, t = f.source, f.target
    tobjs = set(t.objects)
    for x in s.objects:
        if f.obj_map.get(x) not in tobjs:
            rep.add("object image", [x])
    for a, (x, y) in s.arrows.items():
        fa = f.arr_map.get(a)
        if fa not in t.arrows:
            rep.add("arrow image", [a])
            continue
        if t.arrows[fa] != (f.obj_map.get(x), f.obj_map.get(y)):
            rep.add("functor typing", [a, fa])
    if not rep.ok:
        return rep
    for x in s.objects:
        if f.arr_map[s.identity[x]] != t.identity[f.obj_map[x]]:
            rep.add("identity preservation", [s.identity[x]])
    for g, h in s.composable_pairs():
        if f.arr_map[s.compose(g, h)] != t.compose(f.arr_map[g], f.arr_map[h]):
            rep.add("composition preservation", [g, h])
    return rep


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {a: a for a in c.arrows}, "id")


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """g o f."""
    if not (f.target is g.source or f.target == g.source):
        raise FunctorMismatchError("target of f differs from source of g")
    return FinFunctor(
        f.source, g.target,
        {x: g.obj_map[f.obj_map[x]] for x in f.source.objects},
        {a: g.arr_map[f.arr_map[a]] for a in f.source.arrows},
        f"{g.name}.{f.name}" if g.name and f.name else "")


@dataclass(eq=False)
class NatTransformation:
    source: FinFunctor
    target: FinFunctor
    components: Mapping
    name: str = ""


def identity_transformation(f: FinFunctor) -> NatTransformation:
    return NatTransformation(f, f, {x: f.target.identity[f.obj_map[x]] for x in f.source.objects}, "1")


def check_natural(t: NatTransformation) -> ValidationReport:
    rep = ValidationReport()
    F, G = t.source, t.target
    if not (F.source is G.source or F.source == G.source) or not (F.target is G.target or F.target == G.target):
        rep.add("parallel functors", [], "source and target functors are not parallel")
        return rep
    c, d = F.source, F.target
    for x in c.objects:
        comp = t.components.get(x)
        if comp not in d.arrows or d.arrows[comp] != (F.obj_map[x], G.obj_map[x]):
            rep.add("component typing", [x])
    if not rep.ok:
        return rep
    for a, (x, y) in c.arrows.items():
        if d.compose(G.arr_map[a], t.components[x]) != d.compose(t.components[y], F.arr_map[a]):
            rep.add("naturality", [a])
    return rep


# ---------------------------------------------------------------- constructions

def opposite(c: FinCategory) -> FinCategory:
    arrows = {a: (t, s) for a, (s, t) in c.arrows.items()}
    if isinstance(c.comp, LazyComposition):
        comp = LazyComposition(arrows, lambda g, f: c.compose(f, g))
    else:
        comp = {(f, g): h for (g, f), h in c.comp.items()}
    name = c.name[:-3] if c.name.endswith("^op") else (c.name + "^op" if c.name else "")
    return FinCategory(c.objects, arrows, c.identity, comp, name)


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    objects = [(x, y) for x in c.objects for y in d.objects]
    arrows = {(a, b): ((sa, sb), (ta, tb))
              for a, (sa, ta) in c.arrows.items() for b, (sb, tb) in d.arrows.items()}
    identity = {(x, y): (c.identity[x], d.identity[y]) for x, y in objects}
    comp = LazyComposition(arrows, lambda g, f: (c.compose(g[0], f[0]), d.compose(g[1], f[1])))
    name = f"{c.name}x{d.name}" if c.name and d.name else ""
    return FinCategory(objects, arrows, identity, comp, name)


def subcategory(c: FinCategory, arrows: Iterable, name: str = "") -> FinCategory:
    """Restrict c to the given arrows (identities are always kept)."""
    keep = set(arrows) | set(c.identity.values())
    table = {a: c.arrows[a] for a in c.arrows if a in keep}

    def rule(g, f):
        h = c.compose(g, f)
        if h not in keep:
            raise KeyError((g, f))
        return h

    return FinCategory(c.objects, table, c.identity, LazyComposition(table, rule), name)


def materialize(c: FinCategory) -> FinCategory:
    """Same category with a plain dict composition table."""
    return FinCategory(c.objects, c.arrows, c.identity, dict(c.comp.items()), c.name)


def ordinal(n: int) -> FinCategory:
    """The poset 0 < 1 < ... < n-1; the arrow i -> j is the pair (i, j)."""
    if n < 1:
        raise CategoryError("ordinals start at 1")
    objects = list(range(n))
    arrows = {(i, j): (i, j) for i in objects for j in objects if i <= j}
    comp = {((j, k), (i, j)): (i, k) for (i, j) in arrows for k in objects if j <= k}
    return FinCategory(objects, arrows, {i: (i, i) for i in objects}, comp, f"[{n}]")


class FnArrow(NamedTuple):
    """A map {0..src-1} -> {0..tgt-1}, images listed in order."""

    src: int
    tgt: int
    images: tuple


def set_skeleton(bound: int = 4) -> FinCategory:
    """All maps between the sets {0..n-1}, 0 <= n <= bound."""
    if bound < 0:
        raise CategoryError("bound must be non-negative")
    objects = list(range(bound + 1))
    arrows = {}
    for a in objects:
        for b in objects:
            for images in itertools.product(range(b), repeat=a):
                arrows[FnArrow(a, b, images)] = (a, b)
    identity = {n: FnArrow(n, n, tuple(range(n))) for n in objects}

    def rule(g, f):
        return FnArrow(f.src, g.tgt, tuple(g.images[i] for i in f.images))

    return FinCategory(objects, arrows, identity, LazyComposition(arrows, rule), f"Set<={bound}")


def injective(f: FnArrow) -> bool:
    return len(set(f.images)) == len(f.images)


def surjective(f: FnArrow) -> bool:
    return len(set(f.images)) == f.tgt


def monoid_category(elements: Iterable, mult: Callable[[Any, Any], Any], unit, obj="*", name="") -> FinCategory:
    """One-object category from a monoid; ``mult(g, f)`` is g o f."""
    elements = list(elements)
    arrows = {e: (obj, obj) for e in elements}
    comp = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCategory([obj], arrows, {obj: unit}, comp, name)
