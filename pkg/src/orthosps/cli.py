"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 validation or verification failure,
3 I/O error.  Every subcommand accepts ``--json`` for a machine-readable
report on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import errors
from .classical import classify, verify_classical_theorems
from .decomposition import decomposition_morphism, direct_union, lemma_suite, verify_morphism
from .generators import MUTATIONS, build, compose_shuffled, gen_boolean, gen_mo, mutate
from .io import load, serialize, serialize_raw
from .ortho import symmetry_report

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_IO = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, payload=None, message=""):
        self.code = code
        self.payload = payload
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path):
    try:
        raw = load(path)
    except OSError as exc:
        raise _Exit(EXIT_IO, {"error": {"kind": "IOError", "message": str(exc)}},
                    f"error: cannot read {path}: {exc.strerror or exc}")
    except errors.FormatError as exc:
        raise _Exit(EXIT_FAIL, {"error": exc.to_dict()}, f"{path}: {exc}")
    try:
        return build(raw)
    except errors.SPSError as exc:
        raise _Exit(EXIT_FAIL, {"error": exc.to_dict()}, f"{path}: {exc}")


def _write(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Exit(EXIT_IO, {"error": {"kind": "IOError", "message": str(exc)}},
                    f"error: cannot write {path}: {exc.strerror or exc}")


def _emit_instance(text, out):
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------

def cmd_verify(args):
    osps = _load(args.file)
    payload = {"passed": True, "states": osps.sps.n_states, "properties": len(osps.sets)}
    return payload, [f"OK: {payload['states']} states, {payload['properties']} properties; Eqs. 1-7 hold"]


def _classify_payload(osps):
    sps = osps.sps
    data = classify(osps)
    return {
        "states": sps.n_states,
        "properties": len(sps.sets),
        "classical_count": len(data.classical),
        "omega_count": len(data.omega),
        "classical_properties": [sps.label(a) for a in data.classical],
        "partition": [
            {"omega": sps.label(w), "states": sps.set_labels(sps.sets[w])} for w in data.omega
        ],
    }


def cmd_classify(args):
    osps = _load(args.file)
    p = _classify_payload(osps)
    lines = [
        f"|C| = {p['classical_count']}",
        f"|Omega| = {p['omega_count']}",
        "classical properties:",
        *(f"  {c}" for c in p["classical_properties"]),
        "state partition:",
        *(f"  w{i}: {', '.join(b['states'])}" for i, b in enumerate(p["partition"])),
    ]
    return p, lines


def cmd_decompose(args):
    osps = _load(args.file)
    sps = osps.sps
    du, pair, comps = decomposition_morphism(osps)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _Exit(EXIT_IO, {"error": {"kind": "IOError", "message": str(exc)}},
                    f"error: cannot create {out}: {exc.strerror or exc}")
    files = []
    for i, c in enumerate(comps):
        name = f"component_{i}.json"
        _write(out / name, serialize(c.osps))
        files.append({
            "file": name,
            "omega": sps.label(c.omega),
            "states": list(c.osps.states),
            "properties": len(c.osps.sets),
        })
    tsps = du.osps.sps
    manifest = {
        "format_version": "1",
        "source": str(args.file),
        "components": files,
        "m": [[sps.states[p], tsps.states[q]] for p, q in enumerate(pair.m)],
        "n": [
            {"tuple": list(du.prop_tuple[a]), "property": pair.n[a], "kappa": sps.set_labels(sps.sets[pair.n[a]])}
            for a in range(len(tsps.sets))
        ],
    }
    _write(out / "manifest.json", json.dumps(manifest, indent=2, ensure_ascii=False) + "\n")
    payload = {"components": files, "out": str(out)}
    lines = [f"{len(comps)} components written to {out}"]
    lines += [f"  {f['file']}: {len(f['states'])} states, {f['properties']} properties"
              for f in files]
    return payload, lines


def cmd_compose(args):
    parts = [_load(f) for f in args.files]
    try:
        du = direct_union(parts)
    except errors.ProductTooLarge as exc:
        raise _Exit(EXIT_FAIL, {"error": exc.to_dict()}, str(exc))
    _write(args.out, serialize(du.osps))
    payload = {"states": du.osps.sps.n_states, "properties": len(du.osps.sets), "out": args.out}
    return payload, [f"wrote {args.out}: {payload['states']} states, {payload['properties']} properties"]


def cmd_check(args):
    osps = _load(args.file)
    reports = [symmetry_report(osps), verify_classical_theorems(osps), lemma_suite(osps)]
    du, pair, comps = decomposition_morphism(osps)
    reports.append(verify_morphism(pair, osps, du.osps))
    summary = _classify_payload(osps)
    summary["components"] = len(comps)
    passed = all(r.passed for r in reports)
    payload = {"passed": passed, "summary": summary, "reports": [r.to_dict() for r in reports]}
    lines = [
        f"|C| = {summary['classical_count']}, |Omega| = {summary['omega_count']}, "
        f"{len(comps)} components",
    ]
    for r in reports:
        lines += r.lines()
    lines.append("PASS" if passed else "FAIL")
    if not passed:
        raise _Exit(EXIT_FAIL, payload, "\n".join(lines))
    return payload, lines


def cmd_gen(args):
    try:
        if args.kind == "boolean":
            osps = gen_boolean(args.n)
        elif args.kind == "mo":
            osps = gen_mo(args.k)
        elif args.kind == "shuffle":
            osps = compose_shuffled([_load(f) for f in args.files], args.seed)
        else:
            raw = mutate(_load(args.file), args.mutation, args.seed)
            _emit_instance(serialize_raw(raw), args.out)
            return {"out": args.out, "mutation": args.mutation}, []
    except errors.SPSError as exc:
        raise _Exit(EXIT_FAIL, {"error": exc.to_dict()}, str(exc))
    except ValueError as exc:
        raise _Exit(EXIT_USAGE, {"error": {"kind": "UsageError", "message": str(exc)}}, str(exc))
    _emit_instance(serialize(osps), args.out)
    return {"out": args.out, "states": osps.sps.n_states, "properties": len(osps.sets)}, []


# -- parser ------------------------------------------------------------------

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    p = _Parser(prog="orthosps", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", parents=[common], help="validate an instance file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", parents=[common], help="classical properties and states")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("decompose", parents=[common], help="write nonclassical components")
    s.add_argument("file")
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("compose", parents=[common], help="direct union of instance files")
    s.add_argument("files", nargs="+")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("check", parents=[common], help="run every verification")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", help="generate an instance")
    gsub = g.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    gb = gsub.add_parser("boolean", parents=[common])
    gb.add_argument("n", type=int)
    gm = gsub.add_parser("mo", parents=[common])
    gm.add_argument("k", type=int)
    gs = gsub.add_parser("shuffle", parents=[common])
    gs.add_argument("files", nargs="+")
    gs.add_argument("--seed", type=int, required=True)
    gx = gsub.add_parser("mutate", parents=[common])
    gx.add_argument("mutation", choices=MUTATIONS)
    gx.add_argument("file")
    gx.add_argument("--seed", type=int, default=0)
    for sp in (gb, gm, gs, gx):
        sp.add_argument("--out", help="output file (default: stdout)")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        payload, lines = args.func(args)
        code = EXIT_OK
    except _Exit as exc:
        payload, code = exc.payload or {}, exc.code
        if args.json:
            print(json.dumps({"command": args.command, "exit": code, **payload},
                             indent=2, ensure_ascii=False))
        else:
            print(exc.message, file=sys.stderr)
        return code
    if args.json:
        print(json.dumps({"command": args.command, "exit": code, **payload},
                         indent=2, ensure_ascii=False))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
