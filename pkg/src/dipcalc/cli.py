"""Command-line front end: ``dipcalc <command> [--input FILE ...] [options]``.

Exit codes: 0 when the command succeeds and whatever it checks holds, 1 when
a check was carried out and came back false, 2 when the input could not be
read or does not fit the command.
"""

from __future__ import annotations

import argparse
import sys

from . import textformat as tf
from .acceptance import run_all
from .canonical import canonical_butterfly, check_canonical_butterfly, delta_groupoid
from .conjugation import (
    certify_universality, cohomologous, conjugate_principal, gauge_groupoid, torsor_from_cocycle,
    universal_activation,
)
from .corpus import cycle_cocycle, gauge_example
from .diptych import Diptych, Prediptych, check_diptych, check_prediptych, classify_square, set_prediptych
from .fincat import CategoryError, FinCategory, Square, validate_category
from .finv import catalog_prediptych
from .groupoid import (
    FinGroupoid, GroupoidMorphism, banal, check_groupoid, cyclic_group, null, symmetric_group,
)
from .morphism import (
    ActionLaw, check_action_law, classify_morphism, induced_groupoid, kernel,
    subgroupoid, two_sided_quotient,
)
from .nerve import TOP_LEVEL, nerve_exactness_check, symmetric_nerve

OK, FALSE, INPUT_ERROR = 0, 1, 2

COMMANDS = ("validate", "classify-square", "classify-morphism", "nerve", "butterfly", "conjugate",
            "activate", "quotient", "kernel", "induce", "cocycle", "gauge", "catalog", "sweep")


class InputError(Exception):
    pass


def _flag(v: bool) -> str:
    return "true" if v else "false"


def _catalog(bound: int, trunc: int) -> dict:
    """Stable names for built-in documents."""
    entries = {
        "set": lambda: set_prediptych(bound),
        "set-split": lambda: set_prediptych(bound, "split"),
        "set-corrupt": lambda: set_prediptych(bound, "corrupt"),
        "ordinal": lambda: catalog_prediptych("ordinal", trunc),
        "upsilon": lambda: catalog_prediptych("upsilon"),
        "butterfly-type": lambda: catalog_prediptych("butterfly_type"),
        "finv-trunc": lambda: catalog_prediptych("finv_trunc", trunc, bound=trunc),
        "nabla-trunc": lambda: catalog_prediptych("nabla_trunc", trunc, bound=trunc),
        "Z2": lambda: cyclic_group(2),
        "Z3": lambda: cyclic_group(3),
        "S3": lambda: symmetric_group(3),
        "banal3": lambda: banal([0, 1, 2], "banal3"),
        "null3": lambda: null([0, 1, 2], "null3"),
        "delta-Z2": lambda: delta_groupoid(cyclic_group(2))[1],
        "gauge-Z2": _gauge_action,
        "cocycle-twisted": lambda: cycle_cocycle(True),
        "cocycle-flat": lambda: cycle_cocycle(False),
    }
    return entries


def _gauge_action():
    h, action, points = gauge_example()
    return ActionLaw(h, points, {p: h.objects[0] for p in points}, action)


# ---------------------------------------------------------------- input handling

def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        doc = tf.parse(text)
        return doc.kind, tf.from_document(doc)
    except tf.ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc
    except (tf.ConversionError, CategoryError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _inputs(args, kinds, count=1):
    paths = args.input or []
    if len(paths) < count:
        raise InputError(f"{args.command} needs {count} --input document(s) of kind {'/'.join(kinds)}")
    out = []
    for p in paths:
        kind, obj = _load(p)
        if kind not in kinds:
            raise InputError(f"{p}: expected a {'/'.join(kinds)} document, got {kind}")
        out.append(obj)
    return out


def _emit(args, obj, name=""):
    if args.emit:
        text = tf.serialize(tf.to_document(obj, name))
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _sizes(label, g: FinGroupoid) -> str:
    return f"objects({label})={len(g.objects)} arrows({label})={len(g.arrows)}"


# ---------------------------------------------------------------- commands

def cmd_validate(args, out):
    (obj,) = _inputs(args, ("category", "groupoid", "diptych", "morphism", "action", "cocycle"))[:1]
    if isinstance(obj, Prediptych):
        rep = check_prediptych(obj)
        if rep.ok:
            rep = check_diptych(Diptych.with_products(obj))
    elif isinstance(obj, FinGroupoid):
        rep = check_groupoid(obj)
    elif isinstance(obj, FinCategory):
        rep = validate_category(obj)
    elif isinstance(obj, GroupoidMorphism):
        rep = obj.check()
    elif isinstance(obj, ActionLaw):
        rep = check_action_law(obj)
    else:
        out("valid=true")          # cocycles are validated while loading
        return OK
    out(f"valid={_flag(rep.ok)}")
    for v in rep:
        out(f"violation {v}")
    return OK if rep.ok else FALSE


def _arrow_token(text: str):
    try:
        return tf.decode(text)
    except tf.ParseError as exc:
        raise InputError(f"bad arrow token {text!r}: {exc.message}") from exc


def cmd_classify_square(args, out):
    if args.input:
        (pre,) = _inputs(args, ("diptych",))[:1]
    else:
        pre = set_prediptych(args.bound)
    d = Diptych.with_products(pre)
    if not args.square:
        raise InputError("classify-square needs --square TOP LEFT RIGHT BOTTOM")
    # decoded tokens are plain tuples; use the category's own arrow objects
    canon = {a: a for a in d.cat.arrows}
    arrows = []
    for t in args.square:
        a = _arrow_token(t)
        if a not in canon:
            raise InputError(f"unknown arrow {t}")
        arrows.append(canon[a])
    try:
        res = classify_square(d, Square(*arrows))
    except CategoryError as exc:
        raise InputError(str(exc)) from exc
    for k, v in sorted(res.flags().items()):
        out(f"{k}={_flag(v)}")
    return OK


def cmd_classify_morphism(args, out):
    if args.canonical:
        (g,) = _inputs(args, ("groupoid",))[:1]
        f = delta_groupoid(g)[1]
    else:
        (f,) = _inputs(args, ("morphism",))[:1]
    rep = f.check()
    if not rep.ok:
        raise InputError(f"not a morphism: {rep.violations[0]}")
    for line in sorted(classify_morphism(f).lines()):
        out(line)
    return OK


def cmd_nerve(args, out):
    (g,) = _inputs(args, ("groupoid",))[:1]
    rep = check_groupoid(g)
    n = symmetric_nerve(g, validate=False, top=args.trunc)
    for k, size in enumerate(n.sizes()):
        out(f"level{k}={size}")
    if args.trunc != TOP_LEVEL:
        out(f"exact=unchecked (exactness is decided at truncation {TOP_LEVEL})")
        return OK
    exact = nerve_exactness_check(n)
    out(f"exact={_flag(exact)}")
    out(f"groupoid={_flag(rep.ok)}")
    return OK if exact else FALSE


def cmd_butterfly(args, out):
    (g,) = _inputs(args, ("groupoid",))[:1]
    cb = canonical_butterfly(g, verify=False)
    rep = check_canonical_butterfly(cb)
    b = cb.as_butterfly()
    for label, node in b.nodes().items():
        out(f"{label}: {_sizes(label, node)}")
    out(f"verified={_flag(rep.ok)}")
    for v in rep:
        out(f"violation {v}")
    _emit(args, b, f"canonical({g.name})")
    return OK if rep.ok else FALSE


def cmd_conjugate(args, out):
    (r,) = _inputs(args, ("morphism",))[:1]
    b = conjugate_principal(r)
    for label, node in b.nodes().items():
        out(f"{label}: {_sizes(label, node)}")
    for k, v in sorted(b.flags.items()):
        if isinstance(v, bool):
            out(f"{k}={_flag(v)}")
    _emit(args, b, "conjugation")
    return OK


def cmd_activate(args, out):
    (f,) = _inputs(args, ("morphism",))[:1]
    act = universal_activation(f)
    out(_sizes("H1", act.H1))
    n, unique = certify_universality(f, act)
    out(f"activations_checked={n}")
    out(f"universal={_flag(unique)}")
    out(f"h_hat_iso={_flag(act.h1.is_iso())}")
    _emit(args, act.f1, "f_hat")
    return OK if unique else FALSE


def cmd_quotient(args, out):
    (emb,) = _inputs(args, ("morphism",))[:1]
    K = emb.target
    N = subgroupoid(K, {emb.f1[a] for a in emb.source.arrows}, "N")
    Q, proj = two_sided_quotient(K, N, "Q")
    out(_sizes("Q", Q))
    _emit(args, proj, "projection")
    return OK


def cmd_kernel(args, out):
    (f,) = _inputs(args, ("morphism",))[:1]
    res = kernel(f, require_extensor=False)
    out(_sizes("N", res.N))
    out(f"normal={_flag(res.normal)}")
    _emit(args, res.N, "kernel")
    return OK


def cmd_induce(args, out):
    (g,) = _inputs(args, ("groupoid",))[:1]
    if not args.along:
        raise InputError("induce needs at least one --along POINT OBJECT")
    p = {}
    for point, obj in args.along:
        b = _arrow_token(obj)
        if b not in g.objects:
            raise InputError(f"unknown object {obj}")
        p[_arrow_token(point)] = b
    H, j = induced_groupoid(g, p, "induced")
    out(_sizes("H", H))
    _emit(args, j, "induced")
    return OK


def cmd_cocycle(args, out):
    cocycles = _inputs(args, ("cocycle",))
    t = torsor_from_cocycle(cocycles[0])
    out(f"points={len(t.P)}")
    out(f"arrows(gauge)={len(t.gauge.G.arrows)}")
    out(f"split={_flag(t.split)}")
    if len(cocycles) > 1:
        out(f"cohomologous={_flag(cohomologous(cocycles[0], cocycles[1]))}")
    _emit(args, t.action, "torsor")
    return OK


def cmd_gauge(args, out):
    (law,) = _inputs(args, ("action",))[:1]
    res = gauge_groupoid(law.G, law.lam, law.E)
    out(_sizes("G", res.G))
    out(f"arrows(K)={len(res.butterfly.K.arrows)}")
    out("isotropy=" + ",".join(str(len([a for a in res.G.arrows if res.G.arrows[a] == (b, b)]))
                               for b in res.G.objects))
    out(f"transverse={_flag(res.butterfly.flags['transverse'])}")
    out(f"wings={_flag(res.butterfly.flags['wings'])}")
    _emit(args, res.butterfly, "gauge")
    return OK


def cmd_catalog(args, out):
    entries = _catalog(args.bound, args.trunc)
    if not args.name:
        for name in sorted(entries):
            out(name)
        return OK
    if args.name not in entries:
        raise InputError(f"unknown catalog entry {args.name!r}")
    obj = entries[args.name]()
    text = tf.serialize(tf.to_document(obj, args.name))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        out(f"wrote {args.name} to {args.emit}")
    else:
        out(text.rstrip("\n"))
    return OK


def cmd_sweep(args, out):
    results = run_all(seed=args.seed)
    for r in results:
        out(r.line())
    passed = sum(r.ok for r in results)
    out(f"passed={passed} failed={len(results) - passed}")
    return OK if passed == len(results) else FALSE


HANDLERS = {
    "validate": cmd_validate, "classify-square": cmd_classify_square,
    "classify-morphism": cmd_classify_morphism, "nerve": cmd_nerve, "butterfly": cmd_butterfly,
    "conjugate": cmd_conjugate, "activate": cmd_activate, "quotient": cmd_quotient,
    "kernel": cmd_kernel, "induce": cmd_induce, "cocycle": cmd_cocycle, "gauge": cmd_gauge,
    "catalog": cmd_catalog, "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dipcalc", description="Finite diptych and groupoid calculus.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("name", nargs="?", help="catalog entry (catalog only)")
    p.add_argument("--input", action="append", help="input document; repeatable")
    p.add_argument("--trunc", type=int, default=3, help="nerve truncation (default 3)")
    p.add_argument("--bound", type=int, default=4, help="Set-skeleton size bound (default 4)")
    p.add_argument("--emit", help="write the result document here")
    p.add_argument("--seed", type=int, default=0, help="corpus generator seed")
    p.add_argument("--square", nargs=4, metavar=("TOP", "LEFT", "RIGHT", "BOTTOM"))
    p.add_argument("--canonical", action="store_true", help="classify δ_G of the input groupoid")
    p.add_argument("--along", nargs=2, action="append", metavar=("POINT", "OBJECT"))
    return p


def main(argv=None, stdout=None) -> int:
    stream = stdout or sys.stdout

    def out(line):
        stream.write(line + "\n")

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    if args.trunc < 0 or args.bound < 0:
        print("dipcalc: --trunc and --bound must be non-negative", file=sys.stderr)
        return INPUT_ERROR
    try:
        return HANDLERS[args.command](args, out)
    except InputError as exc:
        print(f"dipcalc: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (CategoryError, ValueError) as exc:
        # structural errors from the library mean the input does not fit the command
        print(f"dipcalc: {args.command}: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
