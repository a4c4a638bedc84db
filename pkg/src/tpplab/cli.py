"""Command line interface.

Exit codes: 0 success/PASS, 1 property FAIL, 2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, bounds
from .algebra import matmul_via_group, schoolbook
from .chars import degree_set
from .groups import GroupError, GroupTooLarge, UnsupportedGroup, build_group, parse_group_spec
from .tpp import (
    SearchError,
    family_from_json,
    family_to_json,
    is_family_doc,
    find_stpp_violation,
    find_tpp_violation,
    search_triples,
    triple_from_json,
    triple_to_json,
    cyc_stpp_triples,
    triangle_subgroup_triple,
    wreath_triple,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(args, command: str, params: dict, results: list, table_lines: list) -> None:
    if args.json:
        doc = {"tool_version": __version__, "command": command, "params": params, "results": results}
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        for line in table_lines:
            print(line)


def _group(text: str):
    return build_group(parse_group_spec(text))


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_number(text: str, mode: str):
    text = text.strip()
    if mode == "exact":
        try:
            return int(text)
        except ValueError:
            return Fraction(text)
    return float(text)


def read_matrix(path: str, mode: str) -> np.ndarray:
    """Matrix from a JSON array of rows or a CSV file."""
    p = Path(path)
    try:
        raw = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        if p.suffix.lower() == ".csv":
            rows = [[_parse_number(x, mode) for x in row] for row in csv.reader(raw.splitlines()) if row]
        else:
            data = json.loads(raw)
            rows = [[_parse_number(str(x), mode) for x in row] for row in data]
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad matrix in {path}: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InputError(f"matrix in {path} is empty or ragged")
    return np.array(rows, dtype=object if mode == "exact" else float)


def _matrix_json(M: np.ndarray) -> list:
    out = []
    for row in M:
        cells = []
        for v in row:
            if isinstance(v, Fraction):
                cells.append(str(v) if v.denominator != 1 else int(v))
            elif isinstance(v, (complex, np.complexfloating)):
                cells.append(float(v.real) if abs(v.imag) == 0 else str(v))
            elif isinstance(v, (np.floating, float)):
                cells.append(float(v))
            else:
                cells.append(int(v))
        out.append(cells)
    return out


def write_matrix(path: str, M: np.ndarray) -> None:
    p = Path(path)
    rows = _matrix_json(M)
    if p.suffix.lower() == ".csv":
        with p.open("w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    else:
        p.write_text(json.dumps(rows))


def _check_doc_group(doc, group) -> None:
    if isinstance(doc, dict) and "group" in doc and parse_group_spec(doc["group"]) != group.spec:
        raise InputError(f"file group {doc['group']!r} differs from {group.spec}")


def _load_triple(doc, group):
    if is_family_doc(doc):
        raise InputError("expected a single triple, got a family")
    _check_doc_group(doc, group)
    try:
        return triple_from_json(doc, group)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_family(doc, group):
    _check_doc_group(doc, group)
    try:
        return family_from_json(doc, group)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# --------------------------------------------------------------------------
# commands


def cmd_group_info(args) -> int:
    g = _group(args.spec)
    info = {"spec": str(g.spec), "order": g.order, "family": type(g.spec).__name__,
            "abelian": g.is_abelian}
    try:
        ds = degree_set(g.spec)
        info["class_number"] = ds.class_number
        info["max_degree"] = ds.max_degree
        info["degrees"] = [[d, c] for d, c in ds.multiplicities]
    except UnsupportedGroup:
        info["degrees"] = None
    lines = [f"group   {info['spec']}", f"family  {info['family']}", f"order   {info['order']}",
             f"abelian {info['abelian']}"]
    if info["degrees"] is not None:
        lines.append("degrees " + ", ".join(f"{d} x{c}" for d, c in info["degrees"]))
    _emit(args, "group info", {"spec": args.spec}, [info], lines)
    return EXIT_OK


def cmd_tpp_check(args) -> int:
    g = _group(args.spec)
    doc = _read_json(args.triple_file)
    if is_family_doc(doc):
        fam = _load_family(doc, g)
        bad = find_stpp_violation(fam, workers=args.workers)
        kind, tensors = "STPP", [list(t.tensor) for t in fam]
    else:
        t = _load_triple(doc, g)
        bad = find_tpp_violation(t, workers=args.workers)
        kind, tensors = "TPP", [list(t.tensor)]
    result = {"property": kind, "pass": bad is None, "tensors": tensors}
    lines = [f"{kind} {'PASS' if bad is None else 'FAIL'}  tensors {tensors}"]
    if bad is not None:
        fmt = g.format_element
        result["witness"] = {"q1": fmt(bad.q1), "q2": fmt(bad.q2), "q3": fmt(bad.q3),
                             "indices": list(bad.indices) if bad.indices else None}
        lines.append(f"witness q1={fmt(bad.q1)} q2={fmt(bad.q2)} q3={fmt(bad.q3)}"
                     + (f" indices={bad.indices}" if bad.indices else ""))
    _emit(args, "tpp check", {"spec": args.spec, "triple_file": args.triple_file}, [result], lines)
    return EXIT_OK if bad is None else EXIT_FAIL


def cmd_tpp_make(args) -> int:
    if args.construction == "cyc-stpp":
        doc = family_to_json(cyc_stpp_triples(args.n))
    elif args.construction == "triangle":
        doc = triple_to_json(triangle_subgroup_triple(args.n))
    elif args.construction == "wreath-cyc":
        doc = triple_to_json(wreath_triple(cyc_stpp_triples(args.n)))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(args.construction)
    if args.index is not None:
        if "triples" not in doc:
            raise InputError("--index only applies to families")
        doc = doc["triples"][args.index]
    text = json.dumps(doc, indent=2)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text)
    return EXIT_OK


def cmd_matmul(args) -> int:
    g = _group(args.spec)
    doc = _read_json(args.triple_file)
    A = read_matrix(args.a, args.mode)
    B = read_matrix(args.b, args.mode)
    t = _load_triple(doc, g)
    try:
        C = matmul_via_group(t, A, B, mode=args.mode, path=args.path)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if args.mode == "exact":
        ok = bool((C == schoolbook(A, B)).all())
        err = 0.0
    else:
        ref = A.astype(float) @ B.astype(float)
        err = float(np.abs(C - ref).max())
        ok = err <= args.tolerance
    if args.output:
        write_matrix(args.output, C)
    result = {"verified": ok, "max_error": err, "shape": list(C.shape), "C": _matrix_json(C)}
    lines = [f"matmul {'PASS' if ok else 'FAIL'} shape {C.shape} max error {err:.3e}"]
    if not args.output:
        lines += [" ".join(str(x) for x in row) for row in _matrix_json(C)]
    _emit(args, "matmul", {"spec": args.spec, "mode": args.mode, "path": args.path}, [result], lines)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_range(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise InputError(f"bad range {text!r}, expected LO..HI") from exc


def cmd_bounds(args) -> int:
    if args.bounds_cmd == "minimize":
        lo, hi = _parse_range(args.range)
        params = {"k": args.k} if args.formula == "wreath2" else {}
        try:
            n, v = bounds.minimize_formula(args.formula, lo, hi, **params)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        res = {"formula": args.formula, "expression": bounds.FORMULAS[args.formula][1],
               "argmin": n, "min": v, "range": [lo, hi], **params}
        _emit(args, "bounds minimize", {"formula": args.formula, "range": args.range, **params},
              [res], [f"{args.formula}: min {v:.8f} at n={n}"])
        return EXIT_OK
    if args.bounds_cmd == "table":
        results, lines = [], []
        if args.triangle_alpha:
            lo, hi = _parse_range(args.triangle_alpha)
            lines.append(f"{'n':>3} {'|Sym(Delta_n)|':>16} {'leading':>9} {'exact':>9}")
            for n in range(lo, hi + 1):
                row = {"n": n, "leading": bounds.triangle_alpha_leading(n),
                       "exact": bounds.triangle_alpha_exact(n)}
                results.append(row)
                order = math.factorial(n * (n + 1) // 2)
                lines.append(f"{n:>3} {order:>16.6g} {row['leading']:>9.5f} {row['exact']:>9.5f}")
        if args.k2 or not args.triangle_alpha:
            lines.append(f"{'k2':>3} {'n':>4} {'bound':>8}")
            for k, n, v in bounds.k2_table():
                results.append({"k2": k, "argmin": n, "min": v})
                lines.append(f"{k:>3} {n:>4} {v:>8.4f}")
        _emit(args, "bounds table", {"triangle_alpha": args.triangle_alpha, "k2": args.k2}, results, lines)
        return EXIT_OK
    reports = bounds.chapter6_report(verify=not args.no_verify)
    best = bounds.headline(reports)
    lines = [f"{r.formula.value:<20} {r.value:10.6f}  {r.provenance.value:<16} {r.params.get('group', '')}"
             for r in reports]
    lines.append("summary:")
    for r in bounds.summary_rows(reports):
        lines.append(f"  omega < {math.ceil(r.value * 100) / 100:.2f}  ({r.value:.8f}, {r.params['group']}, "
                     f"{r.provenance.value})")
    lines.append(f"headline omega <= {best.value:.5f} ({best.params.get('group')})")
    _emit(args, "bounds chapter6", {"verify": not args.no_verify},
          [r.to_dict() for r in reports], lines)
    return EXIT_OK


def cmd_search(args) -> int:
    g = _group(args.spec)
    res = search_triples(g, args.budget, args.seed, cap=args.cap)
    doc = triple_to_json(res.triple)
    doc.update({"exhaustive": res.exhaustive, "examined": res.examined})
    tensor = res.triple.tensor
    lines = [f"best {tensor} size {tensor.size} ({'exhaustive' if res.exhaustive else 'seeded search'}, "
             f"{res.examined} candidates)",
             "S: " + " ".join(doc["S"]), "T: " + " ".join(doc["T"]), "U: " + " ".join(doc["U"])]
    _emit(args, "search", {"spec": args.spec, "budget": args.budget, "seed": args.seed}, [doc], lines)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    checks = run_all(full=args.full, seed=args.seed)
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<22} {c.seconds:7.2f}s  {c.detail}" for c in checks]
    ok = all(c.passed for c in checks)
    lines.append(f"summary: {sum(c.passed for c in checks)}/{len(checks)} passed")
    _emit(args, "reproduce chapter6", {"full": args.full, "seed": args.seed},
          [c.to_dict() for c in checks], lines)
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--cap", type=int, default=10**6, help="enumeration cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=None, help="overrides TPPLAB_THREADS")

    p = argparse.ArgumentParser(prog="tpplab", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="cmd", required=True)

    grp = sub.add_parser("group", parents=[common]).add_subparsers(dest="group_cmd", required=True)
    gi = grp.add_parser("info", parents=[common])
    gi.add_argument("spec")
    gi.set_defaults(func=cmd_group_info)

    tpp = sub.add_parser("tpp", parents=[common]).add_subparsers(dest="tpp_cmd", required=True)
    tc = tpp.add_parser("check", parents=[common], help="check TPP (triple) or STPP (family file)")
    tc.add_argument("spec")
    tc.add_argument("triple_file")
    tc.set_defaults(func=cmd_tpp_check)
    tm = tpp.add_parser("make", parents=[common], help="write a known construction as JSON")
    tm.add_argument("construction", choices=("cyc-stpp", "triangle", "wreath-cyc"))
    tm.add_argument("n", type=int)
    tm.add_argument("--index", type=int, default=None, help="pick one triple of a family")
    tm.add_argument("-o", "--output")
    tm.set_defaults(func=cmd_tpp_make)

    mm = sub.add_parser("matmul", parents=[common])
    mm.add_argument("spec")
    mm.add_argument("triple_file")
    mm.add_argument("a")
    mm.add_argument("b")
    mm.add_argument("-o", "--output")
    mm.add_argument("--path", choices=("naive", "dft"), default="naive")
    mm.set_defaults(func=cmd_matmul)

    bd = sub.add_parser("bounds", parents=[common]).add_subparsers(dest="bounds_cmd", required=True)
    bm = bd.add_parser("minimize", parents=[common])
    bm.add_argument("--formula", required=True, choices=sorted(bounds.FORMULAS))
    bm.add_argument("--range", required=True, help="LO..HI")
    bm.add_argument("--k", type=int, default=1, help="k2 for the wreath2 formula")
    bt = bd.add_parser("table", parents=[common])
    bt.add_argument("--triangle-alpha", metavar="LO..HI")
    bt.add_argument("--k2", action="store_true", help="include the k2 table")
    bc = bd.add_parser("chapter6", parents=[common])
    bc.add_argument("--no-verify", action="store_true")
    for b in (bm, bt, bc):
        b.set_defaults(func=cmd_bounds)

    sr = sub.add_parser("search", parents=[common])
    sr.add_argument("spec")
    sr.add_argument("--budget", type=int, default=1000)
    sr.set_defaults(func=cmd_search)

    rp = sub.add_parser("reproduce", parents=[common])
    rp.add_argument("target", choices=("chapter6",))
    rp.add_argument("--full", action="store_true", help="include the Sym(Delta_4) triple")
    rp.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, GroupError, UnsupportedGroup, SearchError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
