"""Command-line interface: ``semitop <verb> ...``.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
A <spec> is a JSON file, ``-`` for standard input, or a catalog reference
such as ``fig-012-tl`` or ``supermajority(5)``.
"""

import argparse
import json
import os
import sys

from . import antisep as A
from . import logic3 as L
from . import semiframe as SF
from . import solvers
from .core import (SemitopologyError, catalog, closure, from_json, interior,
                   parse_catalog_ref)
from .figures import check_figures, quoted_discrepancies
from .witness import WitnessFunction, from_semitopology, witness_opens


class Spec:
    """A loaded space together with a witness function generating it."""

    def __init__(self, space, witness):
        self.space = space
        self.witness = witness


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_spec(ref):
    if ref != "-" and not os.path.exists(ref):
        cat = parse_catalog_ref(ref)
        if cat is None:
            raise SemitopologyError(f"no such file or catalog space: {ref!r}")
        S = catalog(*cat)
        return Spec(S, from_semitopology(S))
    try:
        data = json.loads(_read(ref))
    except json.JSONDecodeError as exc:
        raise SemitopologyError(f"{ref}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise SemitopologyError(f"{ref}: expected a JSON object")
    if "witness" in data:
        W = WitnessFunction.from_json(data)
        return Spec(witness_opens(W), W)
    S = from_json(data)
    return Spec(S, from_semitopology(S))


def _setarg(text):
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _fmt(labels, S):
    return "{" + ",".join(S.sorted_labels(S.mask(labels))) + "}"


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


# ---------------------------------------------------------------- verbs


def cmd_classify(args):
    sp = load_spec(args.spec)
    S = sp.space
    pts = [args.point] if args.point is not None else list(S.points)
    rows = {p: A.classify_point(S, p).as_dict() for p in pts}
    if args.json:
        _emit(rows[pts[0]] if args.point is not None else rows)
        return 0
    flags = list(next(iter(rows.values()))) if rows else []
    print("point  " + "  ".join(flags))
    for p, r in rows.items():
        print(f"{p:<6} " + "  ".join(("yes" if r[f] else "no").ljust(len(f)) for f in flags))
    return 0


def cmd_partition(args):
    S = load_spec(args.spec).space
    part = A.topen_partition(S)
    tops = [S.sorted_labels(S.mask(t)) for t in part.maximal_topens]
    irr = S.sorted_labels(S.mask(part.irregular_points))
    if args.json:
        _emit({"maximal_topens": tops, "irregular_points": irr})
        return 0
    for t in tops:
        print("topen     {" + ",".join(t) + "}")
    print("irregular {" + ",".join(irr) + "}")
    return 0


def _set_op(fn):
    def run(args):
        S = load_spec(args.spec).space
        out = fn(S, _setarg(args.set))
        if args.json:
            _emit(S.sorted_labels(S.mask(out)))
        else:
            print(_fmt(out, S))
        return 0
    return run


def cmd_intertwined(args):
    sp = load_spec(args.spec)
    p, q = args.p, args.q
    for x in (p, q):
        sp.space.point_bit(x)
    if args.method == "brute":
        result = A.intertwined(sp.space, p, q)
    elif args.method == "sat":
        result = solvers.intertwined_sat(sp.witness, p, q)
    else:
        phi = L.intertwined_w(sp.witness, p, q)
        f = {x: L.B for x in sp.space.points}
        result = L.Evaluator(sp.space.points)(phi, f) in L.DESIGNATED
    print("true" if result else "false")
    return 0


def cmd_soberify(args):
    S = load_spec(args.spec).space
    T, nb = SF.soberify(S)
    out = {"space": json.loads(T.to_json()), "nbhd": nb,
           "sober": SF.is_sober(S), "added": sorted(set(T.points) - set(nb.values()))}
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_extremal(args):
    S = load_spec(args.spec).space
    vals = A.extremal_valuations(S)
    if args.json:
        _emit([{p: str(v[p]) for p in S.points} for v in vals])
        return 0
    print("  ".join(S.points))
    for v in vals:
        print("  ".join(str(v[p]).ljust(len(p)) for p in S.points))
    print(f"{len(vals)} extremal valuations")
    return 0


def _atoms_outside_modalities(phi):
    if isinstance(phi, L.Atom):
        return True
    if isinstance(phi, (L.Const, L.Var, L.Modal)):
        return False
    if isinstance(phi, L.Un):
        return _atoms_outside_modalities(phi.arg)
    if isinstance(phi, L.Bin):
        return _atoms_outside_modalities(phi.left) or _atoms_outside_modalities(phi.right)
    return _atoms_outside_modalities(phi.body)


def cmd_eval(args):
    sp = load_spec(args.spec)
    phi = L.parse(args.pred, sp.witness)
    if args.valuation:
        try:
            raw = json.loads(_read(args.valuation))
        except json.JSONDecodeError as exc:
            raise SemitopologyError(f"valuation: invalid JSON ({exc})") from None
        f = {str(k): L.to_three(v) for k, v in raw.items()}
        missing = set(sp.space.points) - set(f)
        if missing:
            raise SemitopologyError(f"valuation has no value for {sorted(missing)[0]!r}")
    else:
        if _atoms_outside_modalities(phi):
            raise SemitopologyError("predicate mentions points; pass --valuation")
        f = {p: L.B for p in sp.space.points}
    print(L.Evaluator(sp.space.points)(phi, f))
    return 0


def cmd_derive(args):
    sp = load_spec(args.spec)
    sigma = L.parse_sequent(_read(args.sequent), sp.witness)
    ok = L.derive(sigma, sp.space.points)
    print("derivable" if ok else "not derivable")
    return 0


def cmd_sat(args):
    psi = solvers.read_dimacs(_read(args.file))
    print("SAT" if solvers.sat_check(psi, args.method) else "UNSAT")
    return 0


def cmd_hornsat3(args):
    theory = solvers.parse_horn3(_read(args.file))
    f = solvers.hornsat3(theory)
    if f is None:
        print("UNSAT")
    else:
        print("SAT")
        for a in sorted(f):
            print(f"{a} {f[a]}")
    return 0


def cmd_catalog(args):
    S = catalog(args.name, args.n)
    text = S.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_graph(args):
    S = load_spec(args.spec).space
    g = A.intersection_graph(S)
    if args.dot:
        sys.stdout.write(g.to_dot(flanks=args.flanks))
        return 0
    for a, b in g.edges:
        print(f"{_fmt(S.labels(a), S)} -- {_fmt(S.labels(b), S)}")
    return 0


def cmd_check_figures(args):
    results = check_figures()
    for c in results:
        print(("PASS " if c.ok else "FAIL ") + c.name)
        if not c.ok:
            print(f"     expected {c.expected!r}, got {c.actual!r}")
    for c in quoted_discrepancies():
        print(f"NOTE {c.name}: quoted {c.expected!r}, computed {c.actual!r}")
    bad = sum(not c.ok for c in results)
    print(f"{len(results) - bad}/{len(results)} figure checks passed")
    return 1 if bad else 0


# ---------------------------------------------------------------- parser


def build_parser():
    ap = argparse.ArgumentParser(prog="semitop", description="Finite semitopology toolkit.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("classify", help="point classification flags")
    p.add_argument("spec")
    p.add_argument("--point")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("partition", help="maximal topens and irregular points")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_partition)

    for name, fn in (("closure", closure), ("interior", interior)):
        p = sub.add_parser(name, help=f"{name} of a set")
        p.add_argument("spec")
        p.add_argument("--set", default="", help="comma-separated labels")
        p.add_argument("--json", action="store_true")
        p.set_defaults(fn=_set_op(fn))

    p = sub.add_parser("intertwined", help="are two points intertwined")
    p.add_argument("spec")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--method", choices=("brute", "sat", "logic"), default="brute")
    p.set_defaults(fn=cmd_intertwined)

    p = sub.add_parser("soberify", help="soberification as JSON")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_soberify)

    p = sub.add_parser("extremal", help="list the extremal valuations")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("eval", help="evaluate a predicate")
    p.add_argument("spec")
    p.add_argument("--pred", required=True)
    p.add_argument("--valuation", help="JSON file mapping labels to T/B/F")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("derive", help="search for a sequent derivation")
    p.add_argument("spec")
    p.add_argument("--sequent", required=True, help="file of 'tag: predicate' lines")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("sat", help="satisfiability of a DIMACS CNF")
    p.add_argument("file")
    p.add_argument("--method", choices=("reduction", "dpll"), default="reduction")
    p.set_defaults(fn=cmd_sat)

    p = sub.add_parser("hornsat3", help="three-valued HORNSAT")
    p.add_argument("file")
    p.set_defaults(fn=cmd_hornsat3)

    p = sub.add_parser("catalog", help="print a named space as JSON")
    p.add_argument("name")
    p.add_argument("-n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("graph", help="intersection graph")
    p.add_argument("spec")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--flanks", action="store_true")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("check-figures", help="run the figure regression suite")
    p.set_defaults(fn=cmd_check_figures)
    return ap


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SemitopologyError as exc:
        print(f"semitop: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"semitop: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
