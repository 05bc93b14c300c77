"""Symmetric nerve of a finite groupoid, truncated at squares, and its exactness test.

A level-k element is a pair (objs, mat) with objs of length k+1 and
mat[i][j] an arrow objs[j] -> objs[i], commuting in the composition table.
Elements are generated from their first column using the division y x^-1 and
kept when the filled matrix commutes, so a nerve can be built from broken
tables too; the exactness test then decides whether the data is a groupoid.

A map of finite sets f: m -> n (an arrow n -> m of the truncation) acts by
reindexing: objs'[i] = objs[f(i)], mat'[i][j] = mat[f(i)][f(j)].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from .groupoid import FinGroupoid, GroupoidError, check_groupoid

TOP_LEVEL = 3


class TruncationMismatch(GroupoidError):
    pass


def _column_element(g: FinGroupoid, objs, column):
    """Fill the matrix from the first column using the tables of g."""
    cols = (g.unit(objs[0]),) + tuple(column)
    inv = [g.inverse.get(c) for c in cols]
    mat = []
    for i in range(len(cols)):
        row = []
        for j in range(len(cols)):
            if inv[j] is None:
                return None
            v = g.cat.comp.get((cols[i], inv[j]))
            if v is None:
                return None
            row.append(v)
        mat.append(tuple(row))
    return tuple(objs), tuple(mat)


def _functorial(g: FinGroupoid, elem) -> bool:
    """Units on the diagonal and mat[i][j] mat[j][l] = mat[i][l] in the table of g."""
    objs, mat = elem
    comp = g.cat.comp
    n = len(objs)
    for i in range(n):
        if mat[i][i] != g.unit(objs[i]):
            return False
        for j in range(n):
            for l in range(n):
                if comp.get((mat[i][j], mat[j][l])) != mat[i][l]:
                    return False
    return True


def _well_formed(g: FinGroupoid, elem) -> bool:
    objs, mat = elem
    for i, row in enumerate(mat):
        for j, a in enumerate(row):
            if a not in g.arrows or g.src(a) != objs[j] or g.tgt(a) != objs[i]:
                return False
    return True


@dataclass
class Nerve:
    groupoid: FinGroupoid
    levels: dict                      # k -> tuple of elements
    overrides: dict = field(default_factory=dict)   # (fmap, element) -> element
    members: dict = field(default_factory=dict)

    def __post_init__(self):
        self.members = {k: set(v) for k, v in self.levels.items()}

    def sizes(self) -> tuple:
        return tuple(len(self.levels[k]) for k in sorted(self.levels))

    def apply(self, fmap: tuple, elem):
        """Structural map of the truncation arrow whose set map is ``fmap``."""
        key = (tuple(fmap), elem)
        if key in self.overrides:
            return self.overrides[key]
        objs, mat = elem
        if any(i >= len(objs) for i in fmap):
            raise TruncationMismatch(f"map {fmap} does not fit level {len(objs) - 1}")
        out = (tuple(objs[i] for i in fmap), tuple(tuple(mat[i][j] for j in fmap) for i in fmap))
        return out

    def structural_map(self, fmap: tuple, level: int) -> dict:
        return {e: self.apply(fmap, e) for e in self.levels[level]}

    def corrupted(self, fmap: tuple, elem, value) -> "Nerve":
        ov = dict(self.overrides)
        ov[(tuple(fmap), elem)] = value
        return Nerve(self.groupoid, self.levels, ov)


def symmetric_nerve(g: FinGroupoid, validate: bool = True, top: int = TOP_LEVEL) -> Nerve:
    if validate:
        rep = check_groupoid(g)
        if not rep.ok:
            raise GroupoidError(f"not a groupoid: {rep.violations[0]}")
    levels = {0: tuple(((b,), ((g.unit(b),),)) for b in g.objects)}
    for k in range(1, top + 1):
        elems = []
        for b in g.objects:
            outs = g.out_arrows(b)
            for column in itertools.product(outs, repeat=k):
                objs = (b,) + tuple(g.tgt(c) for c in column)
                e = _column_element(g, objs, column)
                if e is not None and _functorial(g, e):
                    elems.append(e)
        levels[k] = tuple(elems)
    return Nerve(g, levels)


# ---------------------------------------------------------------- special pullbacks

def _restricted_growth(r: int, p: int):
    """Maps r -> p up to relabelling the image in order of first appearance."""
    def rec(prefix, used):
        if len(prefix) == r:
            yield tuple(prefix)
            return
        for v in range(min(used + 1, p)):
            yield from rec(prefix + [v], max(used, v + 1))
    yield from rec([], 0)


@dataclass(frozen=True)
class SpecialSquare:
    """Pushout of sets r -> q (inclusion) and r -> p (``glue``); read in the truncation as a pullback."""
    r: int
    q: int
    p: int
    glue: tuple
    to_q: tuple       # map q -> m
    to_p: tuple       # map p -> m

    @property
    def m(self) -> int:
        return self.p + self.q - self.r


def special_squares(limit: int = TOP_LEVEL + 1) -> list:
    out = []
    for r in range(1, limit):
        for q in range(r + 1, limit + 1):
            for p in range(1, limit + 1):
                if p + q - r > limit:
                    continue
                for glue in _restricted_growth(r, p):
                    to_p = tuple(range(p))
                    to_q = tuple(glue[i] if i < r else p + i - r for i in range(q))
                    out.append(SpecialSquare(r, q, p, glue, to_q, to_p))
    return out


def _check_square(n: Nerve, sq: SpecialSquare) -> bool:
    incl = tuple(range(sq.r))
    top = sq.m - 1
    Nm = n.levels[top]
    left = {}
    for u in n.levels[sq.q - 1]:
        ru = n.apply(incl, u)
        if ru not in n.members[sq.r - 1]:
            return False
        left.setdefault(ru, []).append(u)
    fibre = 0
    for v in n.levels[sq.p - 1]:
        rv = n.apply(sq.glue, v)
        if rv not in n.members[sq.r - 1]:
            return False
        fibre += len(left.get(rv, ()))
    image = set()
    for e in Nm:
        u, v = n.apply(sq.to_q, e), n.apply(sq.to_p, e)
        if u not in n.members[sq.q - 1] or v not in n.members[sq.p - 1]:
            return False
        if n.apply(incl, u) != n.apply(sq.glue, v):
            return False
        image.add((u, v))
    return len(image) == len(Nm) == fibre


def all_maps(limit: int = TOP_LEVEL + 1):
    for a in range(1, limit + 1):
        for b in range(1, limit + 1):
            yield from ((a, b, f) for f in itertools.product(range(a), repeat=b))


def nerve_exactness_check(n: Nerve, d=None, exhaustive: bool = False) -> bool:
    """Do the special pullbacks of the truncation go to pullbacks of finite sets?

    ``d`` is accepted for symmetry with other diptychs; the levels are compared
    by bijectivity of the comparison map, which is the good-pullback test of
    the standard Set diptych.
    """
    if max(n.levels) != TOP_LEVEL:
        raise TruncationMismatch(f"nerve must reach level {TOP_LEVEL}")
    g = n.groupoid
    for k in range(TOP_LEVEL + 1):
        if not all(_well_formed(g, e) for e in n.levels[k]):
            return False
        if len(n.members[k]) != len(n.levels[k]):
            return False
    # level 0 is B, level 1 is G, level 2 sits inside pairs
    if len(n.levels[0]) != len(g.objects):
        return False
    ones = [e[1][1][0] for e in n.levels[1]]
    if len(set(ones)) != len(ones) or set(ones) != set(g.arrows):
        return False
    pairs = [(n.apply((0, 2), e), n.apply((0, 1), e)) for e in n.levels[2]]
    if len(set(pairs)) != len(pairs):
        return False
    for sq in special_squares():
        if not _check_square(n, sq):
            return False
    touched = {}
    for (fmap, elem) in n.overrides:
        touched.setdefault(len(elem[0]), set()).add(fmap)
    if exhaustive or touched:
        for a, b, f in all_maps():
            if not exhaustive and f not in touched.get(a, ()):
                continue
            for e in n.levels[a - 1]:
                if n.apply(f, e) not in n.members[b - 1]:
                    return False
            # functoriality against every composable second map
            for c in range(1, TOP_LEVEL + 2):
                for h in itertools.product(range(b), repeat=c):
                    fh = tuple(f[i] for i in h)
                    for e in n.levels[a - 1]:
                        if n.apply(h, n.apply(f, e)) != n.apply(fh, e):
                            return False
    return True
