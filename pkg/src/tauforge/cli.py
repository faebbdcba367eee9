"""Command-line surface: parse datum/module files, dispatch operations, emit
human tables and machine JSON.

Exit codes: 0 = success/pass, 1 = mathematical failure (violation, non-root
where a root was expected, failing check), 2 = usage or parse error.  All
numeric output is exact (integers or "p/q" strings).  Headers and error
diagnostics go to stderr; stdout carries only the requested payload.
"""

import argparse
import json
import re
import sys

from .artrans import classify_module, tau, tau_inverse, tau_orbit
from .cartan import DatumError, datum_from_json, delta
from .linalg import Field
from .modrep import check_relations, rank_vector, rep_from_json, rep_to_json
from .reflect import NotASink, NotASource, reflect_minus, reflect_plus
from .rootsys import classify_positive_root, coxeter_data, enumerate_positive_roots
from .zoo import (
    BadParams,
    UnknownCheck,
    UnknownId,
    UnknownType,
    all_check_ids,
    build_named,
    named_datum,
    named_module_ids,
    run_suite,
    theorem_a_spotcheck,
    verify_proposition,
)


class UsageError(Exception):
    pass


class MathFailure(Exception):
    pass


def _parse_field(text):
    if text is None or text == "rational":
        return Field.rational()
    m = re.fullmatch(r"p:(\d+)", text)
    if not m:
        raise UsageError("--field expects 'rational' or 'p:PRIME', got %r" % text)
    try:
        return Field.prime(int(m.group(1)))
    except ValueError as exc:
        raise UsageError(str(exc))


_NAME_RE = re.compile(r"(A11|A12|BC|BD|CD|B|C|F41|F42|G21|G22|At)(\d+)?(?:m(\d+))?\Z")

_NAME_FAMILIES = {
    "B": "Bn", "C": "Cn", "BC": "BCn", "BD": "BDn", "CD": "CDn", "At": "Atilde",
    "A11": "A11", "A12": "A12", "F41": "F41", "F42": "F42", "G21": "G21", "G22": "G22",
}


def _resolve_datum_name(name):
    """Rebuild a catalogued datum from its canonical name (e.g. B3, CD4m2)."""
    m = _NAME_RE.fullmatch(name)
    if not m:
        raise UsageError("module file names datum %r, which is not in the catalogue; "
                         "embed the datum object instead" % name)
    family = _NAME_FAMILIES[m.group(1)]
    n = int(m.group(2)) if m.group(2) else None
    mult = int(m.group(3)) if m.group(3) else 1
    return named_datum(family, n=n, m=mult)


def _load_datum(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        if _NAME_RE.fullmatch(path):
            try:
                return _resolve_datum_name(path)
            except (UnknownId, BadParams) as err:
                raise UsageError(str(err))
        raise UsageError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise UsageError("%s: invalid JSON (%s)" % (path, exc))
    if isinstance(obj, str):
        return _resolve_datum_name(obj)
    try:
        return datum_from_json(obj)
    except DatumError as exc:
        raise MathFailure("%s: %s" % (path, exc))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError("%s: malformed datum file (%s)" % (path, exc))


def _load_module(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise UsageError("%s: invalid JSON (%s)" % (path, exc))
    try:
        M = rep_from_json(obj, datum_resolver=_resolve_datum_name)
    except DatumError as exc:
        raise MathFailure("%s: %s" % (path, exc))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError("%s: malformed module file (%s)" % (path, exc))
    bad = check_relations(M)
    if bad:
        raise MathFailure("%s: module violates the algebra relations (%s)" % (path, bad[0]))
    return M


def _csv(vec):
    return ",".join(str(x) for x in vec)


def _header(verb, name=None, field=None):
    parts = ["#", verb]
    if name is not None:
        parts.append("datum=%s" % (name or "custom"))
    if field is not None:
        parts.append("field=%s" % ("rational" if field.kind == "rational" else "p:%d" % field.p))
    print(" ".join(parts), file=sys.stderr)


def _dump_json(obj, path):
    if path is None:
        return
    text = json.dumps(obj, sort_keys=True, indent=2)
    if path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _emit_module(M, path):
    _dump_json(rep_to_json(M, embed_datum=True), path)


def _cmd_check_cartan(args):
    datum = _load_datum(args.datum)
    _header("check-cartan", datum.name)
    print("ok name=%s vertices=%d delta=%s" % (datum.name or "custom", datum.n, _csv(delta(datum))))
    return 0


def _cmd_delta(args):
    datum = _load_datum(args.datum)
    _header("delta", datum.name)
    print(_csv(delta(datum)))
    return 0


def _cmd_roots(args):
    if args.height < 0:
        raise UsageError("--height must be non-negative, got %d" % args.height)
    datum = _load_datum(args.datum)
    _header("roots", datum.name)
    for root in enumerate_positive_roots(datum, args.height):
        line = "%s height=%d" % (_csv(root), sum(root))
        if args.classify:
            cls = classify_positive_root(datum, root)
            line += " kind=%s" % cls.kind
            if cls.kind in ("preprojective", "preinjective"):
                line += " r=%d vertex=%d" % (cls.r, cls.vertex)
            elif cls.kind == "regular":
                line += " period=%d" % cls.period
        print(line)
    return 0


def _parse_vector(text, size):
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("--vector expects comma-separated integers, got %r" % text)
    if len(vec) != size:
        raise UsageError("--vector has %d entries; the datum has %d vertices" % (len(vec), size))
    return vec


def _cmd_coxeter(args):
    datum = _load_datum(args.datum)
    _header("coxeter", datum.name)
    cd = coxeter_data(datum)
    if args.apply is not None or args.vector is not None:
        if args.apply is None or args.vector is None:
            raise UsageError("--apply and --vector must be given together")
        vec = _parse_vector(args.vector, datum.n)
        print(_csv(cd.c_apply(vec, args.apply)))
        return 0
    print("sequence=%s" % _csv(cd.sequence))
    print("N=%d" % cd.N)
    print("nu=%s" % _csv(cd.nu))
    for k, beta in enumerate(cd.beta, start=1):
        print("beta[%d]=%s" % (k, _csv(beta)))
    for k, gamma in enumerate(cd.gamma, start=1):
        print("gamma[%d]=%s" % (k, _csv(gamma)))
    return 0


def _cmd_mod(args):
    M = _load_module(args.file)
    _header("mod %s" % args.op, M.datum.name, M.field)
    rk = rank_vector(M)
    print("rank=%s" % (_csv(rk) if rk is not None else "not-locally-free"))
    exit_code = 0
    if args.classify:
        cls = classify_module(M)
        line = "classification=%s" % cls.kind
        if cls.kind in ("preprojective", "preinjective"):
            line += " r=%d vertex=%d" % (cls.r, cls.vertex)
        elif cls.kind == "regular":
            line += " period=%d" % cls.period
        print(line)
        if cls.kind == "not_root":
            exit_code = 1
    if args.orbit is not None:
        if args.orbit < 1:
            raise UsageError("--orbit window must be positive")
        orbit = tau_orbit(M, window=args.orbit)
        for entry in orbit.entries:
            print("tau^%d rank=%s" % (entry.k, _csv(entry.rank) if entry.rank is not None else "not-locally-free"))
        print("period=%s" % (orbit.period if orbit.period is not None else "none"))
        if args.json is not None and orbit.period is not None:
            witness = orbit.member(orbit.period)
            _emit_module(witness.module, args.json)
        return exit_code
    moved = (tau_inverse(M) if args.inverse else tau(M)).module
    mrk = rank_vector(moved)
    print("translate-rank=%s" % (_csv(mrk) if mrk is not None else "not-locally-free"))
    _emit_module(moved, args.json)
    return exit_code


def _cmd_reflect(args):
    if args.dir not in ("+", "-"):
        raise UsageError("--dir must be '+' or '-'")
    M = _load_module(args.file)
    _header("reflect", M.datum.name, M.field)
    try:
        out = (reflect_plus if args.dir == "+" else reflect_minus)(M.datum, args.vertex, M)
    except (NotASink, NotASource) as exc:
        raise UsageError(str(exc))
    print("datum=%s" % (out.datum.name or "custom"))
    rk = rank_vector(out)
    print("rank=%s" % (_csv(rk) if rk is not None else "not-locally-free"))
    _emit_module(out, args.json)
    return 0


def _cmd_zoo(args):
    field = _parse_field(args.field)
    if args.list:
        _header("zoo list")
        for mid in named_module_ids():
            print("module %s" % mid)
        for cid in all_check_ids():
            print("check %s" % cid)
        return 0
    if args.spotcheck is not None:
        report = theorem_a_spotcheck(args.spotcheck, n=args.n, height_bound=args.height, field=field)
        _header("zoo spotcheck", report.evidence.get("datum"), field)
        print("%s %s" % (report.check_id, report.status))
        _dump_json(report.to_json(), args.json)
        return 0 if report.passed else 1
    if args.build is None:
        raise UsageError("zoo needs one of --list, --build ID, --spotcheck TYPE")
    params = {}
    for name in ("n", "m", "i", "j"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    if args.lam is not None:
        params["lam"] = args.lam
    datum, M = build_named(args.build, field=field, **params)
    _header("zoo build", datum.name, field)
    rk = rank_vector(M)
    print("rank=%s" % (_csv(rk) if rk is not None else "not-locally-free"))
    _emit_module(M, args.json)
    return 0


def _cmd_verify(args):
    field = _parse_field(args.field)
    _header("verify suite=%s" % args.suite, None, field)
    if args.filter and not any(args.filter in cid for cid in all_check_ids()):
        raise UsageError("--filter %r matches no check id" % args.filter)
    reports = run_suite(filter_id=args.filter, field=field, n=args.n)
    for report in reports:
        print("%-10s %s" % (report.check_id, report.status))
    if args.json is not None:
        _dump_json([r.to_json() for r in reports], args.json)
    return 0 if all(r.passed for r in reports) else 1


def _build_parser():
    parser = argparse.ArgumentParser(prog="tauforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check-cartan", help="validate a datum file")
    p.add_argument("--datum", required=True)
    p.set_defaults(run=_cmd_check_cartan)

    p = sub.add_parser("delta", help="print the radical generator of the form")
    p.add_argument("--datum", required=True)
    p.set_defaults(run=_cmd_delta)

    p = sub.add_parser("roots", help="enumerate positive roots up to a height")
    p.add_argument("--datum", required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--classify", action="store_true")
    p.set_defaults(run=_cmd_roots)

    p = sub.add_parser("coxeter", help="Coxeter transformation data")
    p.add_argument("--datum", required=True)
    p.add_argument("--apply", type=int)
    p.add_argument("--vector")
    p.set_defaults(run=_cmd_coxeter)

    p = sub.add_parser("mod", help="module operations")
    p.add_argument("op", choices=["tau"])
    p.add_argument("file")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--orbit", type=int)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--json")
    p.set_defaults(run=_cmd_mod)

    p = sub.add_parser("reflect", help="apply a reflection functor")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--dir", required=True)
    p.add_argument("--json")
    p.set_defaults(run=_cmd_reflect)

    p = sub.add_parser("zoo", help="catalogued data, modules, and spot-checks")
    p.add_argument("--list", action="store_true")
    p.add_argument("--build", metavar="ID")
    p.add_argument("--spotcheck", metavar="TYPE")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--lam")
    p.add_argument("--height", type=int, default=25)
    p.add_argument("--field")
    p.add_argument("--json")
    p.set_defaults(run=_cmd_zoo)

    p = sub.add_parser("verify", help="run the named verification scenarios")
    p.add_argument("--suite", choices=["paper"], required=True)
    p.add_argument("--filter")
    p.add_argument("--n", type=int)
    p.add_argument("--field")
    p.add_argument("--json")
    p.set_defaults(run=_cmd_verify)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.run(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (UnknownId, UnknownCheck, UnknownType, BadParams) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except MathFailure as exc:
        print("fail: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
