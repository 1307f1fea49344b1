"""Command line interface: ``toric-ehrhart {ehrhart,count,calibrate,cone-info,verify}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 engine
invariant violation. All rationals are written as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__, oracle
from . import ehrhart as eh
from . import simplex as sx
from .conegrp import cone_group
from .corpus import SimplexFileError, load_corpus, load_simplex, random_unimodular, shipped_corpus_dir
from .errors import ENGINE_ERRORS, CalibrationError, DilationPositive, FaceDependence

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3
THREADS_ENV = "TORIC_EHRHART_THREADS"


class InputError(Exception):
    pass


def _dump(obj, out=None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _stamp(obj):
    return {"version": f"toric-ehrhart {__version__}", **obj}


def parse_profile(text):
    """'calibrated', 'printed', or comma-separated key=value knobs over the printed defaults."""
    if text in (None, "calibrated"):
        return eh.CALIBRATED
    if text == "printed":
        return eh.PRINTED
    knobs = eh.PRINTED.to_dict()
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or key.strip() not in knobs:
            raise InputError(f"bad profile knob {item!r}; expected one of {sorted(knobs)}")
        knobs[key.strip()] = value.strip()
    try:
        return eh.ConventionProfile.from_dict(knobs)
    except ValueError as exc:
        raise InputError(f"bad profile: {exc}") from exc


def _load(path):
    try:
        return load_simplex(path)
    except SimplexFileError as exc:
        raise InputError(str(exc)) from exc


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    threads = _threads()
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, items))


# commands -----------------------------------------------------------------------


def cmd_ehrhart(args):
    name, S = _load(args.path)
    profile = parse_profile(args.profile)
    poly = eh.ehrhart_polynomial(S, profile, args.backend)
    face_ok = all(len({v for _, v in vals}) == 1 for vals in eh.b_candidates(S, profile).values())
    top = S.dim + 1 if args.oracle_max is None else args.oracle_max
    counts = {str(mu): oracle.count_points(S, mu) for mu in range(1, top + 1)}
    checks = {
        "rationality": True,
        "face_independence": face_ok,
        "oracle": counts,
        "oracle_match": all(poly(int(mu)) == c for mu, c in counts.items()),
    }
    _dump(_stamp({"name": name, **poly.to_dict(), "checks": checks}), args.out)
    return EXIT_OK


def cmd_count(args):
    name, S = _load(args.path)
    if args.dilation < 1:
        raise DilationPositive(f"DilationPositive: dilation must be >= 1, got {args.dilation}")
    out = {"name": name, "dilation": args.dilation}
    if args.mode in ("formula", "both"):
        out["formula"] = str(eh.ehrhart_polynomial(S, parse_profile(args.profile))(args.dilation))
    if args.mode in ("oracle", "both"):
        out["oracle"] = str(oracle.count_points(S, args.dilation))
    status = EXIT_OK
    if args.mode == "both":
        out["agree"] = out["formula"] == out["oracle"]
        status = EXIT_OK if out["agree"] else EXIT_FAILED
    _dump(_stamp(out))
    return status


def cmd_calibrate(args):
    try:
        entries = load_corpus(args.corpus)
    except SimplexFileError as exc:
        raise InputError(str(exc)) from exc
    try:
        report = eh.run_calibration(entries, backend=args.backend)
        status = EXIT_OK
    except CalibrationError as exc:
        report = exc.report
        print(str(exc), file=sys.stderr)
        status = EXIT_FAILED
    print(report.table(), file=sys.stderr)
    if args.report:
        _dump(_stamp(report.to_dict()), args.report)
    if status == EXIT_OK:
        artifact = {
            "profile": report.chosen.to_dict(),
            "equivalent_profiles": [p.to_dict() for p in report.matching],
            "corpus": report.names,
        }
        _dump(artifact, args.out)
    return status


def _parse_face(S, text):
    try:
        idx = tuple(sorted({int(x) for x in text.split(",")}))
    except ValueError as exc:
        raise InputError(f"bad face {text!r}: expected comma-separated vertex indices") from exc
    if not idx or idx[0] < 0 or idx[-1] > S.dim:
        raise InputError(f"unknown face {text!r} for a {S.dim}-simplex")
    return sx.Face(idx)


def cmd_cone_info(args):
    name, S = _load(args.path)
    E = _parse_face(S, args.face)
    G = cone_group(sx.dual_cone(S, E))
    interior = set(G.interior) if G.k else set()
    out = {
        "name": name,
        "face": list(E.vertices),
        "generators": [list(v) for v in G.cone.generators],
        "m": [list(v) for v in G.dual.m],
        "q": list(G.dual.q),
        "multiplicity": G.order,
        "invariants": list(G.invariants),
        "elements": [
            {"rep": list(rep), "gamma": [str(x) for x in gam], "interior": i in interior}
            for i, (rep, gam) in enumerate(zip(G.reps, G.gamma))
        ],
    }
    _dump(_stamp(out))
    return EXIT_OK


def _verify_one(entry, profile, max_dilation, seed):
    name, S = entry
    res = {"name": name}
    poly = eh.ehrhart_polynomial(S, profile)
    counts = {mu: oracle.count_points(S, mu) for mu in range(1, max_dilation + 1)}
    res["formula_vs_oracle"] = {
        "ok": all(poly(mu) == c for mu, c in counts.items()),
        "formula": {str(mu): str(poly(mu)) for mu in counts},
        "oracle": {str(mu): c for mu, c in counts.items()},
    }
    recip = oracle.reciprocity_check(S, min(max_dilation, 3))
    res["reciprocity"] = {"ok": recip["ok"]}
    try:
        eh.b_coefficients(S, profile)
        res["face_independence"] = {"ok": True}
    except FaceDependence as exc:
        res["face_independence"] = {"ok": False, "error": str(exc)}
    rng = random.Random(f"{seed}:{name}")
    transforms = []
    for _ in range(2):
        T = random_unimodular(S.dim, rng)
        t = [rng.randint(-3, 3) for _ in range(S.dim)]
        image = eh.ehrhart_polynomial(S.transformed(T, t), profile)
        transforms.append(image.coeffs == poly.coeffs)
    res["unimodular_invariance"] = {"ok": all(transforms)}
    res["ok"] = all(v["ok"] for k, v in res.items() if isinstance(v, dict))
    return res


def cmd_verify(args):
    if args.path:
        entries = [_load(args.path)]
    else:
        try:
            entries = load_corpus(args.corpus or shipped_corpus_dir())
        except SimplexFileError as exc:
            raise InputError(str(exc)) from exc
    if args.max_dilation < 1:
        raise DilationPositive(f"DilationPositive: max dilation must be >= 1, got {args.max_dilation}")
    profile = parse_profile(args.profile)
    results = _ordered_map(lambda e: _verify_one(e, profile, args.max_dilation, args.seed), entries)
    ok = all(r["ok"] for r in results)
    _dump(_stamp({"profile": profile.to_dict(), "ok": ok, "results": results}), args.out)
    return EXIT_OK if ok else EXIT_FAILED


# entry point ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="toric-ehrhart", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"toric-ehrhart {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    profile_help = "calibrated (default), printed, or knobs like 'u_scale=1/2,b_power=none'"

    q = sub.add_parser("ehrhart", help="Ehrhart polynomial of a SimplexFile")
    q.add_argument("path")
    q.add_argument("--profile", default="calibrated", help=profile_help)
    q.add_argument("--out")
    q.add_argument("--backend", choices=("auto", "cyclotomic", "modular"), default="auto")
    q.add_argument("--oracle-max", type=int, default=None, help="brute-force counts for mu = 1..M (default n+1)")
    q.set_defaults(func=cmd_ehrhart)

    q = sub.add_parser("count", help="lattice points in a dilation")
    q.add_argument("path")
    q.add_argument("--dilation", type=int, required=True)
    q.add_argument("--mode", choices=("formula", "oracle", "both"), default="both")
    q.add_argument("--profile", default="calibrated", help=profile_help)
    q.set_defaults(func=cmd_count)

    q = sub.add_parser("calibrate", help="select the profile that reproduces brute-force counts")
    q.add_argument("--corpus", default=str(shipped_corpus_dir()))
    q.add_argument("--out")
    q.add_argument("--report", help="write the full discrepancy table as JSON")
    q.add_argument("--backend", choices=("auto", "cyclotomic", "modular"), default="auto")
    q.set_defaults(func=cmd_calibrate)

    q = sub.add_parser("cone-info", help="normal cone data of a face")
    q.add_argument("path")
    q.add_argument("--face", required=True, help="comma-separated vertex indices, e.g. 0 or 0,2")
    q.set_defaults(func=cmd_cone_info)

    q = sub.add_parser("verify", help="formula vs oracle, reciprocity, face independence, invariance")
    q.add_argument("path", nargs="?")
    q.add_argument("--corpus")
    q.add_argument("--max-dilation", type=int, default=4)
    q.add_argument("--profile", default="calibrated", help=profile_help)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, DilationPositive) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ENGINE_ERRORS as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
