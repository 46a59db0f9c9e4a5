"""Command-line front end.

Every verb wraps exactly one library operation; no computation lives
here.  Exit codes: 0 success, 2 precondition or parse error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .elliptic import (
    EllipticSurface,
    basic_classes,
    canonical_class,
    min_genus,
    parse_surface,
)
from .errors import BudgetExceeded, LatticeError, ParseError
from .isometry import canonical_frame, spinor_norm, verify_isometry
from .lattice import HClass, Lattice, lattice_from_spec
from .oracle import DEFAULT_BUDGET, default_generators, enumerate_vectors, orbit_bfs
from .reduction import reduce_in_elliptic

_BUDGET_ENV = "GENUS_LATTICE_BUDGET"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="genlat", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("info", "surface invariants and basic classes")
    p.add_argument("surface_pos", nargs="?", metavar="SURFACE")
    p.add_argument("--surface")

    p = add("basic", "basic classes of a surface")
    p.add_argument("--surface", required=True)

    p = add("class", "square, divisibility and pairings of a class")
    p.add_argument("--surface", required=True)
    p.add_argument("--class", dest="class_input", required=True)

    p = add("genus", "minimal-genus verdict for a class")
    p.add_argument("--surface", required=True)
    p.add_argument("--class", dest="class_input", required=True)

    p = add("reduce", "reduce a class to its canonical representative")
    p.add_argument("--surface", required=True)
    p.add_argument("--class", dest="class_input", required=True)

    p = add("spinor", "spinor norm of a matrix certificate")
    p.add_argument("--surface")
    p.add_argument("--lattice")
    p.add_argument("--matrix", required=True)

    p = add("verify", "check a matrix certificate")
    p.add_argument("--surface")
    p.add_argument("--lattice")
    p.add_argument("--matrix", required=True)

    p = add("oracle", "brute-force orbit report")
    p.add_argument("mode", choices=["orbit"])
    p.add_argument("--surface")
    p.add_argument("--lattice")
    p.add_argument("--square", type=int, required=True)
    p.add_argument("--div", type=int, default=1)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--witnesses", action="store_true")
    return parser


def _emit_json(doc, out) -> None:
    out.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _load_surface(args) -> EllipticSurface:
    spec = getattr(args, "surface_pos", None) or args.surface
    if not spec:
        raise ParseError("a surface spec such as E(2;2,3) is required")
    return parse_surface(spec)


def _load_lattice(args) -> tuple[Lattice, EllipticSurface | None]:
    if getattr(args, "surface", None) and getattr(args, "lattice", None):
        raise ParseError("give either --surface or --lattice, not both")
    if getattr(args, "surface", None):
        surf = parse_surface(args.surface)
        return surf.lattice, surf
    if getattr(args, "lattice", None):
        return lattice_from_spec(args.lattice), None
    raise ParseError("either --surface or --lattice is required")


def _load_matrix(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read matrix file {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix file {path!r} is not valid JSON: {exc}") from None
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise ParseError(f"matrix file {path!r} must be a JSON array of integer rows")
    for row in doc:
        for x in row:
            if not isinstance(x, int):
                raise ParseError(f"non-integer entry {x!r} in matrix file {path!r}")
    return doc


def _class_summary(surface: EllipticSurface, a: HClass) -> dict:
    big_k = canonical_class(surface)
    return {
        "coords": list(a.coords),
        "square": a.square(),
        "divisibility": a.divisibility(),
        "characteristic": a.is_characteristic(),
        "k_dot": a.dot(surface.k),
        "K_dot": a.dot(big_k),
    }


def _surface_summary(surface: EllipticSurface) -> dict:
    return {
        "surface": surface.spec,
        "n": surface.n,
        "p": surface.p,
        "q": surface.q,
        "d": surface.d,
        "spin": surface.spin,
        "l": surface.l,
        "m": surface.m,
        "lattice": surface.lattice.spec,
        "rank": surface.lattice.rank,
        "sig_pos": surface.lattice.sig_pos,
        "sig_neg": surface.lattice.sig_neg,
        "basic_classes": [_k_coeff(surface, b) for b in basic_classes(surface)],
    }


def _k_coeff(surface: EllipticSurface, b: HClass) -> int:
    return b.coords[0]


def _fmt_basic(rs) -> str:
    return " ".join("0" if r == 0 else f"{r}k" for r in rs)


def _cmd_info(args, out) -> int:
    surface = _load_surface(args)
    doc = _surface_summary(surface)
    if args.json:
        _emit_json(doc, out)
        return 0
    out.write(f"surface: {doc['surface']}\n")
    out.write(f"n: {doc['n']}\np: {doc['p']}\nq: {doc['q']}\n")
    out.write(f"d: {doc['d']}\nspin: {_bool(doc['spin'])}\n")
    out.write(f"l: {doc['l']}\nm: {doc['m']}\n")
    out.write(f"lattice: {doc['lattice']}\n")
    out.write(f"rank: {doc['rank']}\n")
    out.write(f"signature: ({doc['sig_pos']},{doc['sig_neg']})\n")
    rs = doc["basic_classes"]
    out.write(f"basic classes ({len(rs)}): {_fmt_basic(rs)}\n")
    return 0


def _cmd_basic(args, out) -> int:
    surface = _load_surface(args)
    rs = [_k_coeff(surface, b) for b in basic_classes(surface)]
    if args.json:
        _emit_json({"surface": surface.spec, "basic_classes": rs}, out)
        return 0
    out.write(f"basic classes ({len(rs)}): {_fmt_basic(rs)}\n")
    return 0


def _cmd_class(args, out) -> int:
    surface = _load_surface(args)
    a = surface.parse_class(args.class_input)
    doc = _class_summary(surface, a)
    if args.json:
        _emit_json(doc, out)
        return 0
    out.write(f"class: {a.pretty()}\n")
    out.write(f"square: {doc['square']}\n")
    out.write(f"divisibility: {doc['divisibility']}\n")
    out.write(f"characteristic: {_bool(doc['characteristic'])}\n")
    out.write(f"k.A: {doc['k_dot']}\n")
    out.write(f"K.A: {doc['K_dot']}\n")
    return 0


def _cmd_genus(args, out) -> int:
    surface = _load_surface(args)
    a = surface.parse_class(args.class_input)
    verdict = min_genus(surface, a)
    if args.json:
        _emit_json(verdict.to_json_dict(), out)
        return 0
    out.write(f"status: {verdict.status.value}\n")
    out.write(f"rule: {verdict.rule.value}\n")
    out.write(f"lower_bound: {verdict.lower_bound}\n")
    out.write(f"realized: {verdict.realized if verdict.realized is not None else '-'}\n")
    if verdict.negative_square_note:
        out.write(f"note: {verdict.negative_square_note}\n")
    if verdict.certificate:
        c = verdict.certificate
        out.write(
            f"certificate: canonical={c.canonical.pretty()} spinor={c.spinor:+d} "
            f"fixes_k={_bool(c.fixes_k)} fixes_W={_bool(c.fixes_W)}\n"
        )
    return 0


def _cmd_reduce(args, out) -> int:
    surface = _load_surface(args)
    a = surface.parse_class(args.class_input)
    res = reduce_in_elliptic(surface, a)
    if args.json:
        _emit_json(res.to_json_dict(), out)
        return 0
    out.write(f"input: {res.input.pretty()}\n")
    out.write(f"canonical: {res.canonical.pretty()}\n")
    out.write(f"spinor: {res.spinor:+d}\n")
    out.write(f"fixes_k: {_bool(res.fixes_k)}\n")
    out.write(f"fixes_W: {_bool(res.fixes_W)}\n")
    return 0


def _cmd_spinor(args, out) -> int:
    lattice, _ = _load_lattice(args)
    iso = verify_isometry(lattice, _load_matrix(args.matrix))
    nu = spinor_norm(canonical_frame(lattice), iso)
    if args.json:
        _emit_json({"spinor": nu}, out)
        return 0
    out.write(f"{nu:+d}\n")
    return 0


def _cmd_verify(args, out) -> int:
    lattice, _ = _load_lattice(args)
    verify_isometry(lattice, _load_matrix(args.matrix))
    if args.json:
        _emit_json({"ok": True}, out)
        return 0
    out.write("ok\n")
    return 0


def _cmd_oracle(args, out, err) -> int:
    lattice, _ = _load_lattice(args)
    budget = args.budget
    if budget is None:
        env = os.environ.get(_BUDGET_ENV)
        budget = int(env) if env else DEFAULT_BUDGET
    seeds = enumerate_vectors(lattice, args.square, args.div, args.bound, max_states=budget)
    gens = default_generators(lattice)
    report = orbit_bfs(
        lattice,
        seeds,
        gens,
        args.bound,
        max_states=budget,
        include_witnesses=args.witnesses,
        progress=err,
    )
    if args.json:
        _emit_json(report.to_json_dict(), out)
        return 0
    doc = report.to_json_dict()
    for key in (
        "lattice",
        "square",
        "divisibility",
        "coord_bound",
        "vectors_found",
        "orbit_count_full",
        "orbit_count_spinor1",
    ):
        out.write(f"{key}: {doc[key]}\n")
    if report.witnesses is not None:
        out.write(f"witnesses: {len(report.witnesses)}\n")
    return 0


def run(argv=None, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        if args.verb == "info":
            return _cmd_info(args, out)
        if args.verb == "basic":
            return _cmd_basic(args, out)
        if args.verb == "class":
            return _cmd_class(args, out)
        if args.verb == "genus":
            return _cmd_genus(args, out)
        if args.verb == "reduce":
            return _cmd_reduce(args, out)
        if args.verb == "spinor":
            return _cmd_spinor(args, out)
        if args.verb == "verify":
            return _cmd_verify(args, out)
        if args.verb == "oracle":
            return _cmd_oracle(args, out, err)
        raise ParseError(f"unknown verb {args.verb!r}")
    except BudgetExceeded as exc:
        err.write(f"error: {exc}\n")
        return 3
    except LatticeError as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
