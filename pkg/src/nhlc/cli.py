"""Command-line interface: validation, spaces, checks, and theorem verification.

Every subcommand prints a report (machine JSON with --json, readable text
otherwise) and exits 0 on success, 1 when violations were found or an input
is unusable, 2 on usage errors.  Hypothesis-gated verifiers that do not
apply to the given algebra are skipped with a notice and do not fail the
run.  The NHLC_THREADS variable caps internal parallelism; results never
depend on it.
"""

import argparse
import json
import os
import sys

from . import delta as delta_mod
from . import io_json, oracle, triple
from . import spaces as spaces_mod
from .algebra import HomMap, validate_algebra
from .builders import BUILTIN_BUILDERS, build_simple_nlie
from .errors import (AlgebraValidationError, ArityError, FormatError,
                     HypothesisError, InvertibilityError, NhlcError,
                     TruncationError)
from .grading import validate_bicharacter
from .report import ValidationReport


def _threads():
    raw = os.environ.get("NHLC_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise FormatError(f"NHLC_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise FormatError("NHLC_THREADS must be at least 1")
    return n


def _report(command, algebra, parameters, results, violations, notices):
    return {
        "command": command,
        "algebra": algebra,
        "parameters": parameters,
        "results": results,
        "violations": violations,
        "notices": notices,
    }


def _emit(doc, as_json, out=None):
    if out is None:
        out = sys.stdout
    if as_json:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    out.write(f"command: {doc['command']}\n")
    if doc.get("algebra"):
        out.write(f"algebra: {doc['algebra']}\n")
    params = doc.get("parameters") or {}
    if params:
        rendered = ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
        out.write(f"parameters: {rendered}\n")
    _render_results(doc.get("results"), out)
    for notice in doc.get("notices", []):
        out.write(f"notice: {notice}\n")
    violations = doc.get("violations", [])
    if violations:
        out.write(f"violations ({len(violations)}):\n")
        for v in violations:
            out.write(f"  - {json.dumps(v, sort_keys=True)}\n")
    else:
        out.write("violations: none\n")


def _render_results(results, out, indent="  "):
    if results is None:
        return
    if isinstance(results, dict):
        for k in results:
            v = results[k]
            if _is_flat_list(v):
                out.write(f"{indent}{k}: {json.dumps(v)}\n")
            elif isinstance(v, (dict, list)):
                out.write(f"{indent}{k}:\n")
                _render_results(v, out, indent + "  ")
            else:
                out.write(f"{indent}{k}: {v}\n")
    elif isinstance(results, list):
        for v in results:
            if _is_flat_list(v):
                out.write(f"{indent}- {json.dumps(v)}\n")
            elif isinstance(v, (dict, list)):
                _render_results(v, out, indent)
                out.write(f"{indent}--\n")
            else:
                out.write(f"{indent}- {v}\n")
    else:
        out.write(f"{indent}{results}\n")


def _is_flat_list(v):
    return isinstance(v, list) and all(
        x is None or isinstance(x, (bool, int, str)) for x in v)


def _space_blocks_json(space, with_basis=True):
    blocks = []
    for b in space.blocks:
        entry = {
            "kind": space.kind,
            "k": b.k,
            "degree": list(b.degree.free + b.degree.torsion),
            "dim": len(b.basis),
        }
        if with_basis:
            entry["basis"] = [io_json.matrix_to_grid(m.matrix) for m in b.basis]
        blocks.append(entry)
    return blocks


def _load_map(A, path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise FormatError(f"map file is not valid JSON: {exc}")
    degree = doc.get("degree")
    if degree is None:
        deg = A.group.zero()
    else:
        deg = A.group.from_vector(degree)
    matrix = io_json.parse_matrix(doc["matrix"])
    return HomMap(deg, matrix)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_example(args):
    name = args.name
    if name == "simple-n":
        A = build_simple_nlie(args.n)
    else:
        A = BUILTIN_BUILDERS[name]()
    text = io_json.dumps(A)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_validate(args):
    violations = []
    notices = []
    results = {"valid": False}
    algebra_name = None
    try:
        A = io_json.load(args.file, validate=False)
        algebra_name = A.name
        report = validate_bicharacter(A.eps)
        report.merge(validate_algebra(A))
        violations = [v.to_json() for v in report.violations]
        notices = list(report.notices)
        results = {"valid": report.ok, "dimension": A.dim, "arity": A.arity}
    except (FormatError, NhlcError) as exc:
        violations = [{"check": "load", "witness": None,
                       "expected": "loadable algebra file", "actual": str(exc)}]
    doc = _report("validate", algebra_name, {"file": args.file},
                  results, violations, notices)
    _emit(doc, args.json)
    return 0 if not violations else 1


def _cmd_spaces(args):
    A = io_json.load(args.file)
    kind = args.kind
    if kind == "der":
        space = spaces_mod.derivation_space(A, args.k)
    elif kind == "dder":
        space = spaces_mod.double_derivation_space(A, args.k)
    else:
        space = spaces_mod.inner_space(A, args.k)
    results = {"blocks": _space_blocks_json(space),
               "dimension": space.dimension()}
    doc = _report("spaces", A.name, {"kind": kind, "k": args.k},
                  results, [], [])
    _emit(doc, args.json)
    return 0


def _cmd_center(args):
    A = io_json.load(args.file)
    basis = spaces_mod.center(A)
    results = {"dimension": len(basis),
               "basis": [io_json.vector_to_list(v) for v in basis],
               "perfect": spaces_mod.is_perfect(A)}
    doc = _report("center", A.name, {}, results, [], [])
    _emit(doc, args.json)
    return 0


def _cmd_centralizer(args):
    A = io_json.load(args.file)
    if args.span:
        with open(args.span, "r", encoding="utf-8") as fh:
            doc_in = json.load(fh)
        vectors = [io_json.parse_vector(v) for v in doc_in["vectors"]]
    else:
        vectors = [A.basis_vector(i) for i in range(A.dim)]
    basis = spaces_mod.centralizer(A, vectors)
    results = {"dimension": len(basis),
               "basis": [io_json.vector_to_list(v) for v in basis]}
    doc = _report("centralizer", A.name,
                  {"span": args.span or "(whole algebra)"}, results, [], [])
    _emit(doc, args.json)
    return 0


def _cmd_check(args):
    A = io_json.load(args.file)
    D = _load_map(A, args.map)
    if args.kind == "der":
        ok, wit = oracle.is_derivation(A, D, args.k)
    elif args.kind == "dder":
        ok, wit = oracle.is_double_derivation(A, D, args.k)
    else:
        ok, wit = oracle.is_triple_derivation(A, D, args.k)
    violations = []
    if not ok:
        violations.append({"check": f"oracle-{args.kind}",
                           "witness": repr(wit),
                           "expected": "identity holds pointwise",
                           "actual": "counterexample found"})
    results = {"kind": args.kind, "k": args.k, "ok": ok,
               "witness": repr(wit) if wit else None}
    doc = _report("check", A.name, {"kind": args.kind, "k": args.k,
                                    "map": args.map},
                  results, violations, [])
    _emit(doc, args.json)
    return 0 if ok else 1


def _cmd_delta(args):
    A = io_json.load(args.file)
    D = _load_map(A, args.map)
    dmap = delta_mod.delta_of(A, D, args.k)
    wd = delta_mod.verify_delta_well_defined(A, D, args.k)
    violations = [v.to_json() for v in wd.violations]
    results = {
        "delta_matrix": io_json.matrix_to_grid(dmap.matrix),
        "degree": list(dmap.degree.free + dmap.degree.torsion),
        "well_defined": wd.ok,
        "equal_to_input": dmap.matrix == D.matrix,
    }
    doc = _report("delta", A.name, {"k": args.k, "map": args.map},
                  results, violations, list(wd.notices))
    _emit(doc, args.json)
    return 0 if not violations else 1


def _build_map_algebra(A, source, k_max):
    """Binary algebra of a computed map space (inn/der/dder union)."""
    if source == "inn":
        blocks = [b for k in range(k_max + 1)
                  for b in spaces_mod.inner_space(A, k).blocks]
        kind = "inner"
    elif source == "der":
        blocks = [b for k in range(k_max + 1)
                  for b in spaces_mod.derivation_space(A, k).blocks]
        kind = "der"
    else:
        blocks = [b for k in range(k_max + 1)
                  for b in spaces_mod.double_derivation_space(A, k).blocks]
        kind = "dder"
    space = spaces_mod.GradedMapSpace(A, kind, blocks)
    return spaces_mod.maps_as_color_algebra(space)


def _cmd_tder(args):
    A = io_json.load(args.file)
    source = args.source
    if source == "self" or (source is None and A.arity == 2):
        A2 = A
        if A2.arity != 2:
            raise ArityError("tder on the algebra itself needs arity 2")
    else:
        A2 = _build_map_algebra(A, source or "der", args.k_max)
    blocks = []
    seen = set()
    for k in range(args.k_max + 1):
        key = A2.alpha_power(k).data
        if key in seen:
            continue
        seen.add(key)
        space = triple.triple_derivation_space(A2, k)
        blocks.extend(_space_blocks_json(space))
    results = {"algebra2": A2.name, "blocks": blocks}
    doc = _report("tder", A.name,
                  {"source": source or ("self" if A2 is A else "der"),
                   "k_max": args.k_max},
                  results, [], [])
    _emit(doc, args.json)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _gate(conditions):
    for ok, reason in conditions:
        if not ok:
            return reason
    return None


def _run_verify(A, k_max, triple_only):
    """Run every applicable verifier; returns (results, violations, notices)."""
    results = []
    violations = []
    notices = []

    def record(name, fn, skip_reason=None):
        entry = {"check": name}
        if skip_reason is not None:
            entry["status"] = "skipped"
            entry["reason"] = skip_reason
            notices.append(f"{name}: skipped ({skip_reason})")
            results.append(entry)
            return
        try:
            report = fn()
        except (TruncationError, AlgebraValidationError, HypothesisError,
                InvertibilityError) as exc:
            entry["status"] = "skipped"
            entry["reason"] = str(exc)
            notices.append(f"{name}: skipped ({exc})")
            results.append(entry)
            return
        entry["status"] = "passed" if report.ok else "violated"
        entry["violations"] = [v.to_json() for v in report.violations]
        entry["notices"] = list(report.notices)
        if report.details:
            entry["details"] = json.loads(json.dumps(
                report.details, default=str, sort_keys=True))
        for v in report.violations:
            doc = v.to_json()
            doc["check"] = f"{name}:{doc['check']}"
            violations.append(doc)
        notices.extend(f"{name}: {n}" for n in report.notices)
        results.append(entry)

    axioms = validate_bicharacter(A.eps)
    axioms.merge(validate_algebra(A))
    if not triple_only:
        record("axioms", lambda: axioms)
    if not axioms.ok:
        notices.append("axioms failed; remaining checks skipped")
        return results, violations, notices

    n_ok = A.arity >= 3
    perfect = spaces_mod.is_perfect(A)
    centerless = not spaces_mod.center(A)
    has_inner = any(spaces_mod.inner_space(A, k).dimension() > 0
                    for k in range(k_max + 1))

    arity_gate = None if n_ok else "arity < 3"
    perfect_gate = None if perfect else "algebra is not perfect"
    centerless_gate = None if centerless else "algebra has nonzero center"
    inner_gate = None if has_inner else "no nonzero inner maps (no twist-fixed points)"

    if not triple_only:
        record("double-derivation-closure",
               lambda: spaces_mod.verify_double_derivation_closure(A, k_max),
               skip_reason=arity_gate)
        record("inner-ideal",
               lambda: spaces_mod.verify_inner_ideal(A, k_max),
               skip_reason=arity_gate or perfect_gate)

        delta_gate = arity_gate or perfect_gate or centerless_gate

        def well_defined_all():
            rep = ValidationReport()
            seen = set()
            for k in range(k_max + 1):
                key = A.alpha_power(k).data
                if key in seen:
                    continue
                seen.add(key)
                for D in spaces_mod.double_derivation_space(A, k).maps():
                    rep.merge(delta_mod.verify_delta_well_defined(A, D, k))
            return rep

        record("delta-well-defined", well_defined_all, skip_reason=delta_gate)
        record("delta-residual-laws",
               lambda: delta_mod.verify_delta_residual_laws(A, k_max),
               skip_reason=delta_gate)
        record("delta-derivation-criterion",
               lambda: delta_mod.verify_delta_derivation_criterion(A, k_max),
               skip_reason=delta_gate)
        record("delta-commutator-homomorphism",
               lambda: delta_mod.verify_delta_homomorphism(A, k_max),
               skip_reason=delta_gate)

        def centralizer_check():
            space = delta_mod.inner_centralizer_in_double_derivations(A, k_max)
            rep = ValidationReport()
            if space.dimension() > 0:
                rep.add("inner-centralizer-trivial",
                        witness=tuple((b.k, repr(b.degree), len(b.basis))
                                      for b in space.blocks),
                        expected="zero space",
                        actual=f"dimension {space.dimension()}")
            rep.details["dimension"] = space.dimension()
            return rep

        record("inner-centralizer-trivial", centralizer_check,
               skip_reason=arity_gate or perfect_gate or inner_gate)

    triple_gate = perfect_gate or centerless_gate
    record("triple-invariance",
           lambda: triple.verify_triple_invariance(A, k_max),
           skip_reason=arity_gate or triple_gate or inner_gate)

    def tder_equals(source):
        A2 = _build_map_algebra(A, source, k_max)
        return triple.verify_triple_equals_derivations(A2, k_max)

    record("triple-equals-derivations[Inn]",
           lambda: tder_equals("inn"),
           skip_reason=triple_gate or inner_gate)
    record("triple-equals-derivations[Der]",
           lambda: tder_equals("der"),
           skip_reason=triple_gate)
    return results, violations, notices


def _cmd_verify(args):
    A = io_json.load(args.file)
    triple_only = args.triple and not args.all
    results, violations, notices = _run_verify(A, args.k_max, triple_only)
    doc = _report("verify", A.name,
                  {"k_max": args.k_max,
                   "mode": "triple" if triple_only else "all"},
                  {"checks": results}, violations, notices)
    if args.json:
        _emit(doc, True)
    else:
        out = sys.stdout
        out.write(f"command: verify\nalgebra: {A.name}\nk_max: {args.k_max}\n")
        for entry in results:
            status = entry["status"]
            name = entry["check"]
            if status == "skipped":
                out.write(f"  SKIP {name}: {entry['reason']}\n")
            elif status == "passed":
                out.write(f"  PASS {name}\n")
            else:
                out.write(f"  FAIL {name} "
                          f"({len(entry['violations'])} violations)\n")
        out.write("violations: "
                  f"{len(violations) if violations else 'none'}\n")
    return 0 if not violations else 1


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="nhlc",
        description="exact computations with n-ary Hom-Lie color algebras")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("example", help="emit a builtin algebra file")
    sp.add_argument("name", choices=sorted(BUILTIN_BUILDERS))
    sp.add_argument("--n", type=int, default=2,
                    help="arity for simple-n (default 2)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(fn=_cmd_example)

    sp = sub.add_parser("validate", help="validate an algebra file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_validate)

    sp = sub.add_parser("spaces", help="derivation-type spaces")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=["der", "dder", "inner"], required=True)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_spaces)

    sp = sub.add_parser("center", help="center of the algebra")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_center)

    sp = sub.add_parser("centralizer", help="centralizer of a subspace")
    sp.add_argument("file")
    sp.add_argument("--span", help="JSON file {\"vectors\": [[...]]}")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_centralizer)

    sp = sub.add_parser("check", help="pointwise oracle check of a map")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=["der", "dder", "tder"], required=True)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--map", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_check)

    sp = sub.add_parser("delta", help="induced double derivation of a map")
    sp.add_argument("file")
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--map", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_delta)

    sp = sub.add_parser("tder", help="triple derivations of a map algebra")
    sp.add_argument("file")
    sp.add_argument("--source", choices=["self", "inn", "der", "dder"])
    sp.add_argument("--k-max", type=int, default=2, dest="k_max")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_tder)

    sp = sub.add_parser("verify", help="run the applicable theorem verifiers")
    sp.add_argument("file")
    sp.add_argument("--all", action="store_true", default=False)
    sp.add_argument("--triple", action="store_true", default=False)
    sp.add_argument("--k-max", type=int, default=2, dest="k_max")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_verify)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads()
        return args.fn(args)
    except AlgebraValidationError as exc:
        doc = _report(args.command, None, {},
                      {"error": str(exc)},
                      [v.to_json() for v in exc.report.violations], [])
        _emit(doc, getattr(args, "json", False))
        return 1
    except NhlcError as exc:
        doc = _report(args.command, None, {},
                      {"error": str(exc)},
                      [{"check": "error", "witness": None,
                        "expected": None, "actual": str(exc)}], [])
        _emit(doc, getattr(args, "json", False))
        return 1


if __name__ == "__main__":
    sys.exit(main())
