"""Command line front end.

Subcommands expose the pipeline stages: root system tables, commutator
constants, normal forms, coset families, character values by fixed-point
counting (symbolic or matrix engine), and a self test.  Output is
line-oriented text; --records switches to one JSON object per line.  All
numbers are exact integers.

Exit codes: 0 success, 2 malformed input, 3 feasibility guard tripped.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .rootsys import build_root_system
from .chevalley import build_structure_constants
from .gfq import GF, field_for_order
from .unipotent import FieldCoeffs, normal_form, parse_x_word, format_x_word
from .cosets import coset_families, parabolic_index
from .permchar import perm_char_report
from .oracle import perm_char_value_matrix, FeasibilityError

EXIT_INPUT = 2
EXIT_GUARD = 3


class InputError(Exception):
    pass


def _root_system(label: str):
    try:
        return build_root_system(label)
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc))


def _parse_j(text: str, rs) -> tuple:
    """J as comma separated 1-based simple root indices; "" is empty; the
    d4-standard preset names the D4 subset of E8."""
    if text == "d4-standard":
        if rs.name != "E8":
            raise InputError("d4-standard applies to type E8 only")
        return (1, 2, 3, 4)
    if not text:
        return ()
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece.isdigit():
            raise InputError("J entries are 1-based simple root indices, got %r" % piece)
        k = int(piece) - 1
        if not 0 <= k < rs.rank:
            raise InputError("J index %s out of range for %s" % (piece, rs.name))
        out.append(k)
    if len(set(out)) != len(out):
        raise InputError("J contains a repeated index")
    return tuple(sorted(out))


def _data_text(name: str) -> str:
    try:
        return resources.files("chevcount.data").joinpath(name).read_text()
    except OSError as exc:
        raise InputError("packaged data file %s is unavailable: %s" % (name, exc))


def _parse_signs_text(text: str, rs) -> dict:
    signs = {}
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("1", "+1", "-1"):
            raise InputError("signs line %d: expected 'index sign'" % ln)
        r = int(parts[0]) - 1
        if not rs.rank <= r < rs.n_pos:
            raise InputError("signs line %d: index %s is not a non-simple positive root"
                             % (ln, parts[0]))
        signs[r] = 1 if parts[1] in ("1", "+1") else -1
    return signs


def _structure_constants(rs, signs_arg: str):
    if signs_arg == "plus":
        return build_structure_constants(rs, signs="plus")
    if signs_arg == "mizuno-e8":
        if rs.name != "E8":
            raise InputError("the mizuno-e8 sign table applies to type E8 only")
        text = _data_text("signs_mizuno_e8.txt")
    else:
        try:
            with open(signs_arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read signs file: %s" % exc)
    return build_structure_constants(rs, signs=_parse_signs_text(text, rs))


def _load_elements(path: str | None) -> dict:
    if path is None:
        text = _data_text("mizuno_e8.elts")
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read element file: %s" % exc)
    out = {}
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise InputError("element file line %d: expected 'name word'" % ln)
        out[parts[0]] = parts[1].strip()
    return out


def _element(text: str, rs, field, elt_file: str | None):
    if text.startswith("@"):
        table = _load_elements(elt_file)
        name = text[1:]
        if name not in table:
            raise InputError("element %r not in the data file" % name)
        text = table[name]
    try:
        return parse_x_word(text, rs, field)
    except ValueError as exc:
        raise InputError(str(exc))


def _field(args) -> object:
    q = getattr(args, "q", None)
    p = getattr(args, "p", None)
    if q is None and p is None:
        raise InputError("a field is required: pass --q (or --p)")
    if q is not None and p is not None and q != p:
        raise InputError("pass only one of --q and --p")
    try:
        return field_for_order(q if q is not None else p)
    except ValueError as exc:
        raise InputError(str(exc))


# -- subcommands --------------------------------------------------------------

def _cmd_roots(args) -> int:
    rs = _root_system(args.type)
    for i in range(rs.n_pos):
        coeffs = ",".join(str(c) for c in rs.roots[i])
        if args.records:
            print(json.dumps({"index": i + 1, "height": rs.heights[i],
                              "coeffs": list(rs.roots[i])}))
        else:
            print("root %d height %d coeffs %s" % (i + 1, rs.heights[i], coeffs))
    if not args.records:
        print("total %d positive roots" % rs.n_pos)
    return 0


def _cmd_constants(args) -> int:
    rs = _root_system(args.type)
    sc = _structure_constants(rs, args.signs)
    if (args.r is None) != (args.s is None):
        raise InputError("pass both --r and --s, or neither")
    if args.r is not None:
        pairs = [(args.r - 1, args.s - 1)]
        for r, s in pairs:
            if not (0 <= r < rs.n_pos and 0 <= s < rs.n_pos) or r == s:
                raise InputError("need two distinct positive root indices")
    else:
        pairs = [(r, s) for r in range(rs.n_pos) for s in range(r + 1, rs.n_pos)]
    for r, s in pairs:
        terms = sc.commutator_terms(r, s)
        if args.records:
            print(json.dumps({"r": r + 1, "s": s + 1,
                              "terms": [{"i": i, "j": j, "root": t + 1, "c": c}
                                        for i, j, t, c in terms]}))
        elif terms:
            body = "; ".join("i=%d j=%d root=%d C=%d" % (i, j, t + 1, c)
                             for i, j, t, c in terms)
            print("comm %d %d : %s" % (r + 1, s + 1, body))
        elif args.r is not None:
            print("comm %d %d : commute" % (r + 1, s + 1))
    return 0


def _cmd_normalform(args) -> int:
    rs = _root_system(args.type)
    sc = _structure_constants(rs, args.signs)
    field = _field(args)
    word = _element(args.word, rs, field, args.elt_file)
    nf = normal_form(sc, FieldCoeffs(field), word, strategy=args.strategy)
    if args.records:
        print(json.dumps({"word": format_x_word(nf),
                          "factors": [[r + 1, c] for r, c in nf]}))
    else:
        print(format_x_word(nf))
    return 0


def _cmd_cosets(args) -> int:
    rs = _root_system(args.type)
    J = _parse_j(args.J, rs)
    if args.count:
        q = getattr(args, "q", None)
        if q is None:
            raise InputError("--count needs --q")
        try:
            field_for_order(q)
        except ValueError as exc:
            raise InputError(str(exc))
        print(parabolic_index(rs, J, q))
        return 0
    for fam in coset_families(rs, J):
        word = ",".join(str(s + 1) for s in fam.word)
        invs = ",".join(str(r + 1) for r in fam.inversion_roots)
        if args.records:
            print(json.dumps({"word": [s + 1 for s in fam.word],
                              "length": fam.length,
                              "inversions": [r + 1 for r in fam.inversion_roots]}))
        else:
            print("family length %d word %s inversions %s"
                  % (fam.length, word or "-", invs or "-"))
    return 0


def _cmd_permchar(args) -> int:
    rs = _root_system(args.type)
    sc = _structure_constants(rs, args.signs)
    J = _parse_j(args.J, rs)
    field = _field(args)
    v = _element(args.elt, rs, field, args.elt_file)
    v = normal_form(sc, FieldCoeffs(field), v)
    rep = perm_char_report(rs, sc, J, v, field.q, strategy=args.strategy,
                           workers=args.workers, audit=args.audit,
                           term_budget=args.term_budget)
    if args.records:
        out = {"value": rep.value, "families_total": rep.families_total,
               "families_pruned": rep.families_pruned,
               "families_counted": rep.families_counted}
        if args.audit:
            out["records"] = [{"word": [s + 1 for s in r.word],
                               "vars": r.n_vars, "count": r.count}
                              for r in rep.records]
        print(json.dumps(out))
        return 0
    if args.audit:
        for r in rep.records:
            word = ",".join(str(s + 1) for s in r.word)
            print("family word %s vars %d count %d" % (word or "-", r.n_vars, r.count))
        print("families total %d pruned %d counted %d"
              % (rep.families_total, rep.families_pruned, rep.families_counted))
    print(rep.value)
    return 0


def _cmd_oracle(args) -> int:
    rs = _root_system(args.type)
    sc = _structure_constants(rs, args.signs)
    J = _parse_j(args.J, rs)
    field = _field(args)
    if field.k != 1:
        raise InputError("matrix referee handles prime q only")
    v = _element(args.elt, rs, field, args.elt_file)
    v = normal_form(sc, FieldCoeffs(field), v)
    value = perm_char_value_matrix(rs, sc, J, v, field.q, guard=args.guard)
    if args.records:
        print(json.dumps({"value": value}))
    else:
        print(value)
    return 0


def _cmd_selftest(args) -> int:
    import itertools
    import random

    import numpy as np

    rng = random.Random(args.seed)
    failures = 0

    def report(label, ok):
        nonlocal failures
        print("%s %s" % ("ok  " if ok else "FAIL", label))
        if not ok:
            failures += 1

    def word_matrix(sc, factors, p):
        m = np.eye(sc.dim, dtype=np.int64)
        for r, a in factors:
            m = (m @ sc.x_matrix(r, a, p)) % p
        return m

    for name in ("A2", "B2", "G2"):
        rs = build_root_system(name)
        sc = build_structure_constants(rs)
        n = rs.n_pos
        for p in (2, 3):
            field = GF(p)
            dom = FieldCoeffs(field)
            ok_nf = ok_uni = True
            for _ in range(60):
                word = [(rng.randrange(n), rng.randrange(p)) for _ in range(6)]
                g = normal_form(sc, dom, word)
                if g != normal_form(sc, dom, word, strategy="naive"):
                    ok_uni = False
                if not (word_matrix(sc, g, p) == word_matrix(sc, word, p)).all():
                    ok_nf = False
            report("normal form vs adjoint matrices %s p=%d" % (name, p), ok_nf)
            report("normal form strategy independence %s p=%d" % (name, p), ok_uni)

            from .permchar import perm_char_value
            ok_cross = True
            ok_id = True
            elts = [[]] + [normal_form(sc, dom,
                                       [(rng.randrange(n), rng.randrange(p)) for _ in range(4)])
                           for _ in range(4)]
            for m in range(rs.rank + 1):
                for J in itertools.combinations(range(rs.rank), m):
                    for v in elts:
                        a = perm_char_value(rs, sc, J, v, p)
                        b = perm_char_value_matrix(rs, sc, J, v, p)
                        if a != b:
                            ok_cross = False
                        if not v and a != parabolic_index(rs, J, p):
                            ok_id = False
            report("cross-engine values %s q=%d" % (name, p), ok_cross)
            report("identity value is the index %s q=%d" % (name, p), ok_id)

    print("selftest %s" % ("passed" if not failures else "FAILED"))
    return 0 if not failures else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="chevcount", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_type(p):
        p.add_argument("--type", required=True, help="root system label, e.g. A2, B3, E8")

    def add_signs(p):
        p.add_argument("--signs", default="plus",
                       help="structure constant sign table: plus, mizuno-e8, or a file path")

    def add_records(p):
        p.add_argument("--records", action="store_true",
                       help="machine readable output, one JSON object per line")

    p = sub.add_parser("roots", help="positive roots with heights and coefficients")
    add_type(p)
    add_records(p)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("constants", help="commutator constants")
    add_type(p)
    add_signs(p)
    add_records(p)
    p.add_argument("--r", type=int, help="first root, 1-based")
    p.add_argument("--s", type=int, help="second root, 1-based")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("normalform", help="normal form of an x-word")
    add_type(p)
    add_signs(p)
    add_records(p)
    p.add_argument("--word", required=True, help='x-word, e.g. "x2(1)*x1(1)"')
    p.add_argument("--p", type=int, help="field order (alias of --q)")
    p.add_argument("--q", type=int, help="field order, a prime power")
    p.add_argument("--strategy", default="greedy", choices=("greedy", "naive"))
    p.add_argument("--elt-file", help="element table for @name words")
    p.set_defaults(func=_cmd_normalform)

    p = sub.add_parser("cosets", help="coset families of a parabolic subgroup")
    add_type(p)
    add_records(p)
    p.add_argument("--J", default="", help='comma separated 1-based simple roots, "" for the Borel;'
                                           ' d4-standard names the D4 subset of E8')
    p.add_argument("--q", type=int, help="field order for --count")
    p.add_argument("--count", action="store_true", help="print the coset count only")
    p.set_defaults(func=_cmd_cosets)

    p = sub.add_parser("permchar", help="permutation character value by coset counting")
    add_type(p)
    add_signs(p)
    add_records(p)
    p.add_argument("--J", default="", help="as in cosets")
    p.add_argument("--q", type=int, required=True, help="field order, a prime power")
    p.add_argument("--elt", required=True, help="x-word or @name from the element data file")
    p.add_argument("--elt-file", help="element table for @name (default: packaged table)")
    p.add_argument("--strategy", default="heuristic", choices=("heuristic", "bruteforce"))
    p.add_argument("--workers", type=int, help="parallel worker processes")
    p.add_argument("--audit", action="store_true", help="print per-family records")
    p.add_argument("--term-budget", type=int, default=200000,
                   help="substitution size cap before backtracking")
    p.set_defaults(func=_cmd_permchar)

    p = sub.add_parser("oracle", help="matrix referee for small inputs")
    add_type(p)
    add_signs(p)
    add_records(p)
    p.add_argument("--J", default="", help="as in cosets")
    p.add_argument("--q", type=int, required=True, help="prime field order")
    p.add_argument("--elt", required=True, help="x-word or @name")
    p.add_argument("--elt-file", help="element table for @name")
    p.add_argument("--guard", type=int, default=10 ** 6,
                   help="refuse when the coset count exceeds this")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("selftest", help="rank <= 3 cross-engine test suite")
    p.add_argument("--seed", type=int, default=20240)
    p.set_defaults(func=_cmd_selftest)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except FeasibilityError as exc:
        print("feasibility: %s" % exc, file=sys.stderr)
        return EXIT_GUARD
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
