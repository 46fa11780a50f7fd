"""Command-line front end: parse instance files, dispatch engine operations,
emit canonical JSON reports, return meaningful exit codes.

Exit codes: 0 verdict reached (or subcommand succeeded), 1 usage/schema
error, 2 internal inconsistency, 3 inconclusive verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from importlib import resources

from . import elliptic
from .localsymbols import Place, hilbert_symbol, local_invariant, \
    reciprocity_defect
from .multipoly import MultiPoly
from .obstruction import (INCONCLUSIVE, InternalInconsistencyError,
                          ObstructionInstance, PadicWitnessSpec,
                          QuaternionAlgebraSpec, SamplingConfig,
                          class_invariant_table, integer_search,
                          obstruction_verdict, point_invariant_profile,
                          residue_sieve)
from .padicsolve import padic_solutions_exist

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_INCONCLUSIVE = 3


class SchemaError(ValueError):
    pass


def _expect_keys(obj, required, optional=(), where="instance"):
    if not isinstance(obj, dict):
        raise SchemaError("%s: expected an object" % where)
    for key in obj:
        if key not in required and key not in optional:
            raise SchemaError("%s: unknown key %r" % (where, key))
    for key in required:
        if key not in obj:
            raise SchemaError("%s: missing key %r" % (where, key))


def _term_list(data, where):
    if not isinstance(data, list) or not all(
            isinstance(q, list) and len(q) == 4 and
            all(isinstance(c, int) for c in q) for q in data):
        raise SchemaError("%s: expected a list of [coeff, ex, ey, ez]" % where)
    return MultiPoly.from_term_list(data)


def parse_instance(doc):
    """Validate an instance document (strict schema) and build the engine
    ObstructionInstance."""
    _expect_keys(doc, ["name", "poly", "targets", "algebra", "sieve_modulus",
                       "rational_witness", "padic_witnesses", "search_bound",
                       "sampling"])
    _expect_keys(doc["algebra"], ["first", "second"], where="algebra")
    _expect_keys(doc["sampling"], ["seed", "trials", "prime_min", "prime_max"],
                 where="sampling")
    witness = doc["rational_witness"]
    if witness is not None:
        if (not isinstance(witness, list) or len(witness) != 3 or not all(
                isinstance(c, list) and len(c) == 2 and
                all(isinstance(n, int) for n in c) for c in witness)):
            raise SchemaError("rational_witness: expected three [num, den] pairs")
        witness = tuple(Fraction(n, d) for n, d in witness)
    specs = []
    for i, w in enumerate(doc["padic_witnesses"]):
        _expect_keys(w, ["p", "kind"], optional=["poly", "start"],
                     where="padic_witnesses[%d]" % i)
        if w["kind"] not in ("search", "onevar"):
            raise SchemaError("padic_witnesses[%d]: unknown kind %r"
                              % (i, w["kind"]))
        if w["kind"] == "onevar" and ("poly" not in w or "start" not in w):
            raise SchemaError("padic_witnesses[%d]: onevar needs poly and start" % i)
        specs.append(PadicWitnessSpec(w["p"], w["kind"],
                                      tuple(w.get("poly", ()) or ()) or None,
                                      w.get("start")))
    try:
        return ObstructionInstance(
            name=doc["name"],
            f=_term_list(doc["poly"], "poly"),
            targets=tuple(doc["targets"]),
            algebra=QuaternionAlgebraSpec(
                _term_list(doc["algebra"]["first"], "algebra.first"),
                _term_list(doc["algebra"]["second"], "algebra.second")),
            sieve_modulus=doc["sieve_modulus"],
            rational_witness=witness,
            padic_witnesses=tuple(specs),
            search_bound=doc["search_bound"],
            sampling=SamplingConfig(**doc["sampling"]),
        )
    except ValueError as exc:
        raise SchemaError(str(exc))


def load_instance(path):
    """Load an instance from a file path, or from the bundled instances when
    the bare name of one is given (e.g. 'quartic')."""
    if not os.path.exists(path):
        name = path[:-5] if path.endswith(".json") else path
        res = resources.files("obstruction_lab").joinpath(
            "instances/%s.json" % name)
        if res.is_file():
            return parse_instance(json.loads(res.read_text()))
        raise SchemaError("no such instance file: %s" % path)
    with open(path) as fh:
        return parse_instance(json.load(fh))


def _parse_number(text):
    """Decimal integer or fraction 'n/d'."""
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _parse_place(text):
    if text == "real":
        return Place.real()
    return Place.finite(int(text))


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_doc(report):
    return {"name": report.name, "verdict": report.verdict,
            "flags": report.flags, "steps": report.steps}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="obstruction-lab",
        description="Verify Brauer-Manin obstructions to integral points on "
                    "plane-curve complements over Q.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the full pipeline on an instance")
    v.add_argument("instance")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--depth", type=int, default=None)
    v.add_argument("--bound", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1,
                   help="worker count (output is identical for any value)")
    v.add_argument("--target", type=int, default=None,
                   help="override the instance target list with one value")
    v.add_argument("--out", default=None)

    hb = sub.add_parser("hilbert", help="Hilbert symbol at one place")
    hb.add_argument("a")
    hb.add_argument("b")
    hb.add_argument("place", help="a prime, or 'real'")
    # let "-22/5" parse as a positional, not an unknown flag
    hb._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    rc = sub.add_parser("reciprocity", help="sum of local invariants")
    rc.add_argument("a")
    rc.add_argument("b")
    rc._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")

    lc = sub.add_parser("local", help="p-adic solubility search")
    lc.add_argument("instance")
    lc.add_argument("-p", type=int, required=True)
    lc.add_argument("--depth", type=int, default=None)

    sv = sub.add_parser("sieve", help="residue classes hitting the target")
    sv.add_argument("instance")
    sv.add_argument("-m", type=int, default=None)

    tb = sub.add_parser("table", help="2-adic invariant table on sieve classes")
    tb.add_argument("instance")

    pf = sub.add_parser("profile", help="local invariants at a point")
    pf.add_argument("instance")
    pf.add_argument("-P", required=True, help="X,Y,Z")

    sr = sub.add_parser("search", help="bounded primitive integer search")
    sr.add_argument("instance")
    sr.add_argument("-B", type=int, default=None)

    tr = sub.add_parser("torsion", help="torsion subgroup of a plane cubic")
    tr.add_argument("c3", type=int)
    tr.add_argument("c2", type=int)
    tr.add_argument("c1", type=int)
    tr.add_argument("c0", type=int)
    return parser


def _default_seed():
    env = os.environ.get("OBSTRUCTION_LAB_SEED")
    return int(env) if env else None


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _dispatch(args)
    except SchemaError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistencyError as exc:
        print("internal inconsistency: %s" % exc, file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args):
    cmd = args.command
    if cmd == "verify":
        instance = load_instance(args.instance)
        if args.target is not None:
            instance = ObstructionInstance(
                instance.name, instance.f, (args.target,), instance.algebra,
                instance.sieve_modulus, instance.rational_witness,
                instance.padic_witnesses, instance.search_bound,
                instance.sampling)
        seed = args.seed if args.seed is not None else _default_seed()
        report = obstruction_verdict(instance, seed=seed, depth=args.depth,
                                     bound=args.bound)
        _emit(_report_doc(report), args.out)
        return EXIT_INCONCLUSIVE if report.verdict == INCONCLUSIVE else EXIT_OK

    if cmd == "hilbert":
        a, b = _parse_number(args.a), _parse_number(args.b)
        place = _parse_place(args.place)
        sym = hilbert_symbol(a, b, place)
        _emit({"symbol": sym, "invariant": str(local_invariant(a, b, place))},
              None)
        return EXIT_OK

    if cmd == "reciprocity":
        a, b = _parse_number(args.a), _parse_number(args.b)
        defect = reciprocity_defect(a, b)
        _emit({"defect": str(defect)}, None)
        if defect != 0:
            print("internal inconsistency: nonzero reciprocity defect",
                  file=sys.stderr)
            return EXIT_INCONSISTENT
        return EXIT_OK

    if cmd == "local":
        instance = load_instance(args.instance)
        ans = padic_solutions_exist(instance.f, instance.targets[0], args.p,
                                    args.depth)
        _emit({"verdict": ans.verdict, "p": ans.p, "depth": ans.depth,
               "witness": list(ans.witness) if ans.witness else None,
               "value_valuation": ans.value_valuation,
               "derivative_valuation": ans.derivative_valuation}, None)
        return EXIT_OK if ans.verdict != "inconclusive" else EXIT_INCONCLUSIVE

    if cmd == "sieve":
        instance = load_instance(args.instance)
        m = args.m if args.m is not None else instance.sieve_modulus
        classes = residue_sieve(instance.f, m, instance.targets[0])
        _emit({"modulus": m, "target": instance.targets[0],
               "count": len(classes),
               "classes": [list(c.residues) for c in classes]}, None)
        return EXIT_OK

    if cmd == "table":
        instance = load_instance(args.instance)
        classes = residue_sieve(instance.f, instance.sieve_modulus,
                                instance.targets[0])
        table = class_invariant_table(instance.algebra, classes)
        _emit({"modulus": instance.sieve_modulus,
               "entries": [{"class": list(c.residues),
                            "invariant": None if inv is None else str(inv),
                            "depth": d}
                           for c, inv, d in table.entries]}, None)
        return EXIT_OK

    if cmd == "profile":
        instance = load_instance(args.instance)
        point = tuple(int(c) for c in args.P.split(","))
        prof = point_invariant_profile(instance.algebra, point)
        doc = {"point": list(prof.point),
               "values": list(prof.values),
               "invariants": {str(pl): str(iv) for pl, iv in prof.invariants},
               "sum": str(prof.total)}
        _emit(doc, None)
        if prof.total != 0:
            print("internal inconsistency: nonzero invariant sum",
                  file=sys.stderr)
            return EXIT_INCONSISTENT
        return EXIT_OK

    if cmd == "search":
        instance = load_instance(args.instance)
        bound = args.B if args.B is not None else instance.search_bound
        out = {}
        for t in instance.targets:
            out[str(t)] = [list(s) for s in
                           integer_search(instance.f, t, bound)]
        _emit({"bound": bound, "solutions": out}, None)
        return EXIT_OK

    if cmd == "torsion":
        curve = elliptic.to_weierstrass(args.c3, args.c2, args.c1, args.c0)
        group = elliptic.torsion_subgroup(curve)
        _emit({"group": group.structure,
               "points": [[_frac_str(P.u), _frac_str(P.v)]
                          for P in group.points],
               "generators": [[_frac_str(P.u), _frac_str(P.v)]
                              for P in group.generators]}, None)
        return EXIT_OK

    raise SchemaError("unknown command %r" % (cmd,))


def _frac_str(q):
    q = Fraction(q)
    return int(q) if q.denominator == 1 else str(q)


if __name__ == "__main__":
    sys.exit(main())
