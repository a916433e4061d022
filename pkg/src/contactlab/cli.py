"""Command line front end.

Exit codes: 0 pass, 1 semantic failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import corpus
from .classify import ClassificationError, classify, solve_s
from .conformal import ConformalChange, NonPolynomialSigma, PreconditionError, rescale, transform_pair
from .corpus import Candidates
from .expr import ParseError, parse
from .fileio import (SchemaError, classification_to_dict, dumps, entry_to_dict, load_structure,
                     render_classification, render_validation, structure_to_dict, validation_to_dict)
from .forms import KForm
from .structure import fundamental_form, validate
from .symplin import contraction_sweep, lefschetz_matrix, volume_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path):
    try:
        return load_structure(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except SchemaError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _parse_expr(text, chart, what):
    try:
        return parse(text, chart)
    except ParseError as exc:
        pointer = " " * exc.pos + "^"
        raise InputError(f"{what}: {exc.message} at position {exc.pos}\n  {text}\n  {pointer}") from exc


def _parse_omega(text, chart):
    comps = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise InputError(f"--omega: expected coord=EXPR, got {part!r}")
        name, expr = part.split("=", 1)
        name = name.strip()
        if name not in chart.coords:
            raise InputError(f"--omega: unknown coordinate {name!r}")
        comps[name] = _parse_expr(expr.strip(), chart, f"--omega {name}")
    return KForm.one_form(chart, comps)


def cmd_validate(args, out) -> int:
    s, _, _ = _load(args.file)
    rep = validate(s)
    if args.json:
        out.write(dumps(validation_to_dict(rep)))
    else:
        out.write(render_validation(rep) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_classify(args, out) -> int:
    s, cand, _ = _load(args.file)
    v = validate(s)
    if not v.ok:
        out.write("structure does not validate:\n" + render_validation(v) + "\n")
        return EXIT_FAIL
    f = _parse_expr(args.f, s.chart, "--f") if args.f is not None else None
    omega = _parse_omega(args.omega, s.chart) if args.omega is not None else None
    gauge = args.gauge
    if gauge == "candidate" and f is None and omega is None:
        f, omega = cand.f, cand.omega
        if f is None and omega is None:
            raise InputError("--gauge candidate needs --f/--omega or candidates in the file")
    if gauge is None:
        gauge = "candidate" if (f is not None or omega is not None) else "h0"
    rep = classify(s, f=f, omega=omega, gauge=gauge)
    if args.json:
        out.write(dumps(classification_to_dict(rep)))
    else:
        out.write(render_classification(rep) + "\n")
    return EXIT_OK if rep.classified else EXIT_FAIL


def cmd_rescale(args, out) -> int:
    s, cand, name = _load(args.file)
    sigma = _parse_expr(args.sigma, s.chart, "--sigma")
    try:
        c = ConformalChange(sigma)
    except NonPolynomialSigma as exc:
        raise InputError(f"--sigma: {exc}") from exc
    try:
        s2 = rescale(s, c)
    except PreconditionError as exc:
        out.write(f"{exc}\n")
        return EXIT_FAIL
    new = Candidates()
    if cand.f is not None and cand.omega is not None:
        f2, om2 = transform_pair(cand.f, cand.omega, c)
        new = Candidates(f2, om2, None if cand.sigma is None else cand.sigma - sigma)
        out.write(f"f' = f exp(sigma) = {f2}\nomega' = omega - d sigma = {om2}\n")
    elif cand.sigma is not None:
        new = Candidates(sigma=cand.sigma - sigma)
    doc = structure_to_dict(s2, new, name)
    with open(args.out, "w") as fh:
        fh.write(dumps(doc))
    out.write(f"wrote {args.out}\n")
    return EXIT_OK


def cmd_lefschetz(args, out) -> int:
    n = args.n
    try:
        L = lefschetz_matrix(n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    labels = ["^".join(L.cols[k] + "*" for k in idx) for idx in L.rows]
    lw = max(len(s) for s in labels)
    width = max(len(str(v)) for row in L.entries for v in row + L.cols) + 1
    out.write(" " * lw + " " + "".join((c + "*").rjust(width + 1) for c in L.cols) + "\n")
    for label, row in zip(labels, L.entries):
        out.write(label.ljust(lw) + " " + "".join(str(v).rjust(width + 1) for v in row) + "\n")
    rank = L.rank
    vol = volume_identities(n)
    vol_ok = all(v.sign == 1 for v in vol)
    contr = contraction_sweep(n)
    out.write(f"rank {rank} / {2 * n}, injective: {'yes' if L.injective else 'no'}, "
              f"factor (n-1)! = {math.factorial(n - 1)}\n")
    out.write(f"omitted-volume identities: {'hold' if vol_ok else 'FAIL'}\n")
    out.write(f"contraction identity i_X(Omega^n) = n (i_X Omega)^Omega^(n-1): {'holds' if contr else 'FAILS'}\n")
    return EXIT_OK if (L.injective and vol_ok and contr) else EXIT_FAIL


def cmd_examples(args, out) -> int:
    if args.dump:
        try:
            entry = corpus.get(args.dump)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from exc
        text = dumps(entry_to_dict(entry))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            out.write(f"wrote {args.out}\n")
        else:
            out.write(text)
        return EXIT_OK
    for entry in corpus.all_entries():
        out.write(f"{entry.name:<24} dim {entry.structure.dim}  {', '.join(entry.expected.get('tags', []))}\n")
    return EXIT_OK


def cmd_eval(args, out) -> int:
    s, cand, _ = _load(args.file)
    try:
        pt = [float(v) for v in args.at.split(",")]
    except ValueError as exc:
        raise InputError(f"--at: {exc}") from exc
    if len(pt) != s.dim:
        raise InputError(f"--at: expected {s.dim} values, got {len(pt)}")
    out.write("point = " + json.dumps(dict(zip(s.chart.coords, pt))) + "\n")
    out.write("eta = " + json.dumps([c.eval(pt) for c in s.eta.components()]) + "\n")
    out.write("xi = " + json.dumps(s.xi.eval(pt)) + "\n")
    out.write("phi = " + json.dumps([[c.eval(pt) for c in row] for row in s.phi]) + "\n")
    out.write("g = " + json.dumps([[c.eval(pt) for c in row] for row in s.g]) + "\n")
    Phi = fundamental_form(s)
    names = s.chart.coords
    out.write("Phi = " + json.dumps({"^".join("d" + names[i] for i in idx): c.eval(pt)
                                     for idx, c in Phi.sorted_items()}) + "\n")
    if cand.f is not None:
        out.write(f"f = {cand.f.eval(pt)}\n")
    else:
        try:
            out.write(f"s = {solve_s(s, Phi).eval(pt)}\n")
        except ClassificationError:
            pass
    if cand.omega is not None:
        out.write("omega = " + json.dumps([c.eval(pt) for c in cand.omega.components()]) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contactlab", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check the almost contact metric axioms")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("classify", help="classify and extract f and the Lee form")
    c.add_argument("file")
    c.add_argument("--f", help="candidate f expression")
    c.add_argument("--omega", help="candidate Lee form as coord=EXPR,...")
    c.add_argument("--gauge", choices=["h0", "candidate"])
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("rescale", help="conformal rescaling by exp(sigma)")
    r.add_argument("file")
    r.add_argument("--sigma", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_rescale)

    lf = sub.add_parser("lefschetz", help="matrix and identities of alpha -> alpha ^ Omega^(n-1)")
    lf.add_argument("--n", type=int, required=True)
    lf.set_defaults(func=cmd_lefschetz)

    e = sub.add_parser("examples", help="list or dump built-in structures")
    e.add_argument("--dump", metavar="NAME")
    e.add_argument("--out")
    e.set_defaults(func=cmd_examples)

    ev = sub.add_parser("eval", help="evaluate all tensor fields at a point")
    ev.add_argument("file")
    ev.add_argument("--at", required=True)
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
