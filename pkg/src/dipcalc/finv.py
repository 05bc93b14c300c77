"""Finite truncations of the dual symmetric simplicial category.

Object ``k`` stands for the banal groupoid on k+1 points (cardinal k+1).
An arrow ``k -> m`` is the dual of a map of cardinals m+1 -> k+1, stored
as the tuple of its values (``fmap``).  Composition is therefore
contravariant on the stored maps: ``(g o f).fmap[i] = f.fmap[g.fmap[i]]``.

Good monos are duals of surjections, good epis duals of injections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, NamedTuple

from .diptych import Prediptych
from .fincat import (
    CategoryError, FinCategory, FinFunctor, LazyComposition, NatTransformation,
    compose_functors, ordinal,
)

DEFAULT_BOUND = 4


class TruncationError(CategoryError):
    pass


class FinvArrow(NamedTuple):
    src: Any
    tgt: Any
    fmap: tuple


def _card(obj) -> int:
    return obj + 1


def _is_monotone(t):
    return all(a <= b for a, b in zip(t, t[1:]))


def _compose_fmaps(g, f):
    return tuple(f.fmap[i] for i in g.fmap)


def _check_trunc(n, bound):
    if not isinstance(n, int) or n < 1:
        raise TruncationError(f"truncation must be a positive integer, got {n!r}")
    if n > bound:
        raise TruncationError(f"truncation {n} exceeds the bound {bound}")


@lru_cache(maxsize=None)
def _truncation(n: int, monotone: bool) -> FinCategory:
    objects = list(range(n))
    arrows = {}
    for a in objects:
        for b in objects:
            for fmap in itertools.product(range(_card(a)), repeat=_card(b)):
                if monotone and not _is_monotone(fmap):
                    continue
                arrows[FinvArrow(a, b, fmap)] = (a, b)
    identity = {k: FinvArrow(k, k, tuple(range(_card(k)))) for k in objects}

    def rule(g, f):
        return FinvArrow(f.src, g.tgt, _compose_fmaps(g, f))

    name = f"nabla[{n}]" if monotone else f"Finv[{n}]"
    return FinCategory(objects, arrows, identity, LazyComposition(arrows, rule), name)


def _finv_prediptych(c: FinCategory, name: str) -> Prediptych:
    di = {a for a in c.arrows if len(set(a.fmap)) == _card(a.src)}
    ds = {a for a in c.arrows if len(set(a.fmap)) == len(a.fmap)}
    return Prediptych(c, di, ds, name)


def finv_category(n: int = DEFAULT_BOUND, bound: int = DEFAULT_BOUND) -> FinCategory:
    _check_trunc(n, bound)
    return _truncation(n, False)


def finv_trunc(n: int = DEFAULT_BOUND, bound: int = DEFAULT_BOUND) -> Prediptych:
    """Objects 0..n-1; all maps of cardinals."""
    return _finv_prediptych(finv_category(n, bound), f"Finv[{n}]")


def nabla_trunc(n: int = DEFAULT_BOUND, bound: int = DEFAULT_BOUND) -> Prediptych:
    """Same as finv_trunc, restricted to monotone maps."""
    _check_trunc(n, bound)
    return _finv_prediptych(_truncation(n, True), f"nabla[{n}]")


# ---------------------------------------------------------------- named small types

def _generated(objects: dict, generators: dict, name: str) -> tuple:
    """Close labelled generators under composition.

    ``objects`` maps label -> cardinal; a generator is (src, tgt, fmap)
    with fmap a map from card(tgt) to card(src).
    """
    ids = {x: FinvArrow(x, x, tuple(range(k))) for x, k in objects.items()}
    arrows = dict.fromkeys(ids.values())
    names = {}
    for label, (s, t, fmap) in generators.items():
        a = FinvArrow(s, t, tuple(fmap))
        arrows.setdefault(a)
        names[label] = a
    changed = True
    while changed:
        changed = False
        for f, g in list(itertools.product(list(arrows), repeat=2)):
            if f.tgt == g.src:
                h = FinvArrow(f.src, g.tgt, _compose_fmaps(g, f))
                if h not in arrows:
                    arrows[h] = None
                    changed = True
    table = {a: (a.src, a.tgt) for a in arrows}

    def rule(g, f):
        return FinvArrow(f.src, g.tgt, _compose_fmaps(g, f))

    cat = FinCategory(list(objects), table, ids, LazyComposition(table, rule), name)
    di = {a for a in table if len(set(a.fmap)) == objects[a.src]}
    ds = {a for a in table if len(set(a.fmap)) == len(a.fmap)}
    return Prediptych(cat, di, ds, name), names


@lru_cache(maxsize=None)
def _upsilon():
    objects = {"2": 3, "1": 2, "0": 1}
    gens = {
        "delta": ("2", "1", (1, 2)),   # dual of the face 2 -> 3, i -> i+1
        "alpha": ("1", "0", (0,)),     # dual of 1 -> 2, 0 -> 0
        "omega": ("0", "1", (0, 0)),   # dual of the degeneracy 2 -> 1
    }
    return _generated(objects, gens, "Upsilon")


def upsilon() -> Prediptych:
    return _upsilon()[0]


def upsilon_generators() -> dict:
    return dict(_upsilon()[1])


@lru_cache(maxsize=None)
def _butterfly_type():
    objects = {"3": 3, "3bar": 3, "4": 4, "2": 2, "2bar": 2}
    gens = {
        "iota_bot": ("3", "4", (0, 0, 1, 2)),      # dual of sigma^3_0
        "iota_top": ("3bar", "4", (0, 1, 2, 2)),   # dual of sigma^3_2
        "varpi_bot": ("4", "2", (2, 3)),           # dual of the second injection
        "varpi_top": ("4", "2bar", (0, 1)),        # dual of the first injection
        "delta": ("3", "2", (1, 2)),
        "delta_bar": ("3bar", "2bar", (0, 1)),
    }
    return _generated(objects, gens, "butterfly")


def butterfly_type() -> Prediptych:
    return _butterfly_type()[0]


def butterfly_generators() -> dict:
    return dict(_butterfly_type()[1])


def catalog_prediptych(name: str, n: int | None = None, variant: str | None = None,
                       bound: int = DEFAULT_BOUND) -> Prediptych:
    """Small named prediptychs: ordinal, upsilon, nabla_trunc, finv_trunc, butterfly_type."""
    from .diptych import ordinal_prediptych
    if name == "ordinal":
        return ordinal_prediptych(2 if n is None else n, variant or "trivial")
    if name == "upsilon":
        return upsilon()
    if name == "butterfly_type":
        return butterfly_type()
    if name == "finv_trunc":
        return finv_trunc(bound if n is None else n, bound)
    if name == "nabla_trunc":
        return nabla_trunc(bound if n is None else n, bound)
    raise CategoryError(f"unknown catalog entry {name!r}")


# ---------------------------------------------------------------- endofunctors

@dataclass
class EndofunctorPackage:
    name: str
    functor: FinFunctor
    transformations: dict = field(default_factory=dict)
    identity: FinFunctor | None = None   # inclusion Id into the target truncation


def inclusion_functor(n: int, m: int, bound: int = DEFAULT_BOUND) -> FinFunctor:
    """finv_trunc(n) into finv_trunc(m), m >= n."""
    src, tgt = finv_category(n, bound), finv_category(m, max(bound, m))
    return FinFunctor(src, tgt, {x: x for x in src.objects}, {a: a for a in src.arrows}, "Id")


def _fmap_functor(src, tgt, on_obj, on_fmap, name):
    obj_map = {x: on_obj(x) for x in src.objects}
    arr_map = {a: FinvArrow(obj_map[a.src], obj_map[a.tgt], on_fmap(a)) for a in src.arrows}
    return FinFunctor(src, tgt, obj_map, arr_map, name)


def _mirror(a: FinvArrow) -> tuple:
    p, q = _card(a.src), _card(a.tgt)
    return tuple(p - 1 - a.fmap[q - 1 - i] for i in range(q))


def _delta_shift(a):
    return (0,) + tuple(v + 1 for v in a.fmap)


def _nabla_shift(a):
    return a.fmap + (_card(a.src),)


def _doubling(a):
    p = _card(a.src)
    return a.fmap + tuple(p + v for v in a.fmap)


def canonical_endofunctor(name: str, trunc: int = DEFAULT_BOUND, bound: int | None = None) -> EndofunctorPackage:
    """Sigma, Delta, Nabla or Square on finv_trunc(trunc), with its transformations."""
    if bound is None:
        bound = max(DEFAULT_BOUND, {"Sigma": trunc, "Delta": trunc + 1,
                                    "Nabla": trunc + 1, "Square": 2 * trunc}.get(name, trunc))
    src = finv_category(trunc, max(bound, trunc))
    if name == "Sigma":
        F = _fmap_functor(src, src, lambda x: x, _mirror, "Sigma")
        ident = inclusion_functor(trunc, trunc, bound)
        sigma = {k: FinvArrow(k, k, tuple(reversed(range(_card(k))))) for k in src.objects}
        return EndofunctorPackage(name, F, {"varsigma": NatTransformation(ident, F, sigma, "varsigma")}, ident)
    if name in ("Delta", "Nabla"):
        m = trunc + 1
        if m > bound:
            raise TruncationError(f"{name} on truncation {trunc} needs {m} > bound {bound}")
        tgt = finv_category(m, bound)
        ident = inclusion_functor(trunc, m, bound)
        if name == "Delta":
            F = _fmap_functor(src, tgt, lambda x: x + 1, _delta_shift, "Delta")
            comps = {k: FinvArrow(k + 1, k, tuple(range(1, _card(k) + 1))) for k in src.objects}
            return EndofunctorPackage(name, F, {"delta": NatTransformation(F, ident, comps, "delta")}, ident)
        F = _fmap_functor(src, tgt, lambda x: x + 1, _nabla_shift, "Nabla")
        comps = {k: FinvArrow(k + 1, k, tuple(range(_card(k)))) for k in src.objects}
        return EndofunctorPackage(name, F, {"delta_bar": NatTransformation(F, ident, comps, "delta_bar")}, ident)
    if name == "Square":
        m = 2 * trunc
        if m > bound:
            raise TruncationError(f"Square on truncation {trunc} needs {m} > bound {bound}")
        tgt = finv_category(m, bound)
        ident = inclusion_functor(trunc, m, bound)
        F = _fmap_functor(src, tgt, lambda x: 2 * x + 1, _doubling, "Square")
        iota, bot, top = {}, {}, {}
        for k in src.objects:
            c = _card(k)
            iota[k] = FinvArrow(k, 2 * k + 1, tuple(i % c for i in range(2 * c)))
            bot[k] = FinvArrow(2 * k + 1, k, tuple(c + i for i in range(c)))
            top[k] = FinvArrow(2 * k + 1, k, tuple(range(c)))
        trans = {
            "iota": NatTransformation(ident, F, iota, "iota"),
            "varpi_bot": NatTransformation(F, ident, bot, "varpi_bot"),
            "varpi_top": NatTransformation(F, ident, top, "varpi_top"),
        }
        if trunc + 1 <= bound:
            delta = canonical_endofunctor("Delta", trunc, bound).functor
            nabla = canonical_endofunctor("Nabla", trunc, bound).functor
            widen = inclusion_functor(trunc + 1, m, bound)
            d_in = compose_functors(widen, delta)
            n_in = compose_functors(widen, nabla)
            ib, it = {}, {}
            for k in src.objects:
                c = _card(k)
                ib[k] = FinvArrow(k + 1, 2 * k + 1, (0,) * c + tuple(range(1, c + 1)))
                it[k] = FinvArrow(k + 1, 2 * k + 1, tuple(range(c)) + (c,) * c)
            trans["iota_bot"] = NatTransformation(d_in, F, ib, "iota_bot")
            trans["iota_top"] = NatTransformation(n_in, F, it, "iota_top")
        return EndofunctorPackage(name, F, trans, ident)
    raise CategoryError(f"unknown endofunctor {name!r}")


# ---------------------------------------------------------------- power sets

def _subsets(n):
    return [frozenset(s) for r in range(n + 1) for s in itertools.combinations(range(n), r)]


def powerset_representation(arrow) -> dict:
    """Inverse image along the underlying map: A -> {i : fmap[i] in A}."""
    if not isinstance(arrow, FinvArrow) or not isinstance(arrow.src, int) or not isinstance(arrow.tgt, int):
        raise CategoryError(f"{arrow!r} is not an arrow of a finv truncation")
    p, q = _card(arrow.src), _card(arrow.tgt)
    if len(arrow.fmap) != q or any(not (0 <= v < p) for v in arrow.fmap):
        raise CategoryError(f"{arrow!r} is not an arrow of a finv truncation")
    return {A: frozenset(i for i in range(q) if arrow.fmap[i] in A) for A in _subsets(p)}


def check_powerset_functor(n: int = DEFAULT_BOUND):
    """Return (faithful, functorial) for the power-set representation on finv_trunc(n)."""
    c = finv_category(n, max(n, DEFAULT_BOUND))
    images = {}
    for a in c.arrows:
        key = (a.src, a.tgt, tuple(sorted(powerset_representation(a).items(), key=lambda kv: sorted(kv[0]))))
        images.setdefault(key, []).append(a)
    faithful = all(len(v) == 1 for v in images.values())
    functorial = True
    for g, f in c.composable_pairs():
        pf, pg, pgf = powerset_representation(f), powerset_representation(g), powerset_representation(c.compose(g, f))
        if any(pg[pf[A]] != pgf[A] for A in pf):
            functorial = False
            break
    return faithful, functorial
