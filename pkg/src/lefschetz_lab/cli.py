"""Command-line front end: ``lefschetz-lab <command> [options] [source]``.

Every command prints one JSON envelope::

    {"command", "input", "basis", "result", "version", "seed"}

with rationals as ``"p/q"`` strings and keys sorted, so output is
byte-stable for fixed input and seed.  ``--table`` prints a plain text
rendering instead.  Exit status: 2 for bad input, 1 when a mathematical
check fails (theorem discrepancy, conjecture inconsistency), else 0.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .errors import LefschetzLabError
from .ideal import (gorenstein_from_form, hilbert_vector, inverse_system_piece,
                    is_artinian, quotient_basis)
from .lefschetz import mult_matrix, pair_rank, slp_report, wlp_report
from .linalg import ExactMatrix, PolyMatrix, kernel_basis, rank
from .osculating import (hessian_nonvanishing, laplace_report, minimal_laplace_order,
                         mixed_hessian, theorem_trials, verify_main_theorem)
from .parse import parse_ideal_text, parse_polynomial
from .poly import LinearForm, Polynomial, default_names, format_polynomial
from .sampling import random_linear_form, random_point
from .togliatti import (conjecture_probe, family_2n_plus_1, generator_bound, is_togliatti,
                        minimal_order_via_polytope)

ORDER = "graded lexicographic, x0 > x1 > ... > xn"


class InputError(LefschetzLabError):
    pass


# ---------------------------------------------------------------- serialisation

def rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Encoder:
    """Turns results into JSON-ready values using fixed variable names."""

    def __init__(self, names):
        self.names = list(names)

    def __call__(self, obj):
        if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
            return obj
        if isinstance(obj, Fraction):
            return rational(obj)
        if isinstance(obj, Polynomial):
            return format_polynomial(obj, self.names)
        if isinstance(obj, LinearForm):
            return [rational(c) for c in obj.coeffs]
        if isinstance(obj, ExactMatrix):
            return [[rational(x) for x in row] for row in obj.entries]
        if isinstance(obj, PolyMatrix):
            return [[format_polynomial(x, self.names) for x in row] for row in obj.entries]
        if isinstance(obj, dict):
            return {str(k): self(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self(v) for v in obj]
        raise TypeError(f"cannot serialise {type(obj).__name__}")

    def monomial(self, m) -> str:
        return format_polynomial(Polynomial.monomial(m), self.names)

    def monomials(self, ms) -> list:
        return [self.monomial(m) for m in ms]


def dumps(envelope: dict) -> str:
    return json.dumps(envelope, indent=2, sort_keys=True, ensure_ascii=False)


# ---------------------------------------------------------------- tables

def _cell(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_cell(x)}" for k, x in v.items()) + "}"
    return "-" if v is None else str(v)


def _is_matrix(v) -> bool:
    return isinstance(v, list) and v and all(isinstance(r, list) for r in v) and \
        all(not isinstance(x, (list, dict)) for r in v for x in r)


def render_table(env: dict) -> str:
    out = [f"{env['command']}  (lefschetz-lab {env['version']}, seed {env['seed']})"]
    inp = env["input"]
    if inp.get("generators"):
        out.append("ideal: (" + ", ".join(inp["generators"]) + ")")
    if inp.get("form"):
        out.append(f"Ann of: {inp['form']}")
    for key, val in env["result"].items():
        if _is_matrix(val):
            out.append(f"{key}:")
            cells = [[_cell(x) for x in r] for r in val]
            w = max((len(c) for r in cells for c in r), default=1)
            out.extend("  " + " ".join(c.rjust(w) for c in r) for r in cells)
        elif isinstance(val, list) and val and all(isinstance(x, dict) for x in val):
            out.append(f"{key}:")
            cols = list(val[0].keys())
            rows = [[_cell(r.get(c)) for c in cols] for r in val]
            ws = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            out.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, ws)))
            out.extend("  " + "  ".join(x.ljust(w) for x, w in zip(r, ws)) for r in rows)
        else:
            out.append(f"{key}: {_cell(val)}")
    return "\n".join(out)


# ---------------------------------------------------------------- input

def _parse_list(text: str, what: str) -> list:
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be comma-separated rationals, got {text!r}") from None


def _parse_range(text: str) -> list:
    for sep in (":", "-", ".."):
        if sep in text:
            a, b = text.split(sep, 1)
            break
    else:
        a = b = text
    try:
        lo, hi = int(a), int(b)
    except ValueError:
        raise InputError(f"bad range {text!r}; use LO:HI") from None
    if lo > hi:
        raise InputError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def load_ideal(args) -> tuple:
    """``(names, ideal, echo)`` from ``--form`` or the source file."""
    if getattr(args, "form", None):
        f = parse_polynomial(args.form)
        names = default_names(f.nvars)
        if f.is_zero() or not f.is_homogeneous():
            raise InputError("--form must be a nonzero homogeneous polynomial")
        return names, gorenstein_from_form(f), {"form": format_polynomial(f, names)}
    src = getattr(args, "source", None)
    if not src:
        raise InputError("give an .ideal file (or '-' for stdin) or --form")
    text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    names, I = parse_ideal_text(text)
    return names, I, {"variables": names,
                      "generators": [format_polynomial(g, names) for g in I.generators]}


def _top_degree(I, max_degree) -> int:
    if max_degree is not None:
        return max_degree
    v = is_artinian(I)
    if v.status != "yes":
        raise InputError(f"ideal not known to be Artinian ({v.reason}); pass --max-degree")
    return v.degree


# ---------------------------------------------------------------- commands

def _pair_record(enc, p) -> dict:
    return {"s": p.s, "k": p.k, "h_s": p.h_s, "h_k": p.h_k, "rank": p.rank,
            "maximal": p.maximal, "method": p.method,
            "L": enc(list(p.L)) if p.L is not None else None,
            "kernel": enc(p.witness)}


def cmd_hilbert(args, names, I, enc):
    top = _top_degree(I, args.max_degree)
    v = is_artinian(I)
    return {"hilbert": hilbert_vector(I, top), "artinian": v.status,
            "socle_degree": v.degree - 1 if v.status == "yes" else None}, {}


def cmd_inverse_system(args, names, I, enc):
    degs = [args.k] if args.k is not None else range(_top_degree(I, args.max_degree) + 1)
    pieces = []
    for k in degs:
        forms = inverse_system_piece(I, k)
        pieces.append({"k": k, "dim": len(forms), "forms": enc(forms)})
    return {"pieces": pieces}, {}


def cmd_mult_rank(args, names, I, enc):
    basis = {"domain": enc.monomials(quotient_basis(I, args.s).monomials),
             "codomain": enc.monomials(quotient_basis(I, args.k).monomials)}
    if args.L:
        coeffs = _parse_list(args.L, "--L")
        if len(coeffs) != I.n_vars:
            raise InputError(f"--L needs {I.n_vars} coefficients")
        L = LinearForm(tuple(coeffs))
        M = mult_matrix(I, L, args.s, args.k)
        r = rank(M.matrix)
        h_s, h_k = len(M.domain_basis), len(M.codomain_basis)
        wit = []
        for v in kernel_basis(M.matrix):
            wit.append(sum((Polynomial.monomial(m).scale(c) for m, c in zip(M.domain_basis, v)
                            if c), Polynomial.zero(I.n_vars)))
        return {"s": args.s, "k": args.k, "L": enc(L), "matrix": enc(M.matrix), "rank": r,
                "h_s": h_s, "h_k": h_k, "maximal": r == min(h_s, h_k),
                "kernel": enc(wit), "method": "given"}, basis
    p = pair_rank(I, args.s, args.k, args.method, random.Random(args.seed))
    return _pair_record(enc, p), basis


def _report(enc, rep) -> dict:
    return {"property": rep.kind, "holds": rep.holds, "hilbert": rep.hilbert,
            "pairs": [_pair_record(enc, p) for p in rep.pairs],
            "failures": [[p.s, p.k] for p in rep.failures],
            "narrow": rep.narrow, "methods": rep.methods}


def cmd_wlp(args, names, I, enc):
    return _report(enc, wlp_report(I, args.max_degree, args.method, args.seed)), {}


def cmd_slp(args, names, I, enc):
    narrow = True if args.narrow else None
    return _report(enc, slp_report(I, args.max_degree, args.method, args.seed, narrow)), {}


def cmd_laplace(args, names, I, enc):
    point = None
    if args.point:
        point = _parse_list(args.point, "--point")
        if len(point) != I.n_vars:
            raise InputError(f"--point needs {I.n_vars} coordinates")
    r = laplace_report(I, args.k, args.s, point, args.seed, args.confirm)
    return {"k": args.k, "s": args.s, "expected_dim": r.expected_dim, "rank": r.rank,
            "osculating_dim": r.osculating_dim, "delta": r.delta,
            "delta_trivial": r.delta_trivial, "delta_nontrivial": r.delta_nontrivial,
            "trivial_possible": r.trivial_possible, "method": r.method,
            "point": enc(list(r.point)) if r.point is not None else None,
            "witnesses": enc(r.witnesses)}, {"operators": enc(list(r.row_labels))}


def cmd_min_laplace_order(args, names, I, enc):
    return {"k": args.k, "order": minimal_laplace_order(I, args.k, args.seed, args.confirm)}, {}


def cmd_hessian(args, names, I, enc):
    f = parse_polynomial(args.f)
    names = default_names(f.nvars)
    enc.names = names
    G = gorenstein_from_form(f)
    H = mixed_hessian(f, args.a, args.b, G)
    rng = random.Random(args.seed)
    size = min(H.shape)
    if size == 0:
        g = 0
    else:
        g = H.rank_at(random_point(rng, f.nvars))
        if g < size:
            g = H.generic_rank()
    res = {"a": args.a, "b": args.b, "shape": list(H.shape), "matrix": enc(H.entries),
           "generic_rank": g}
    if args.a == args.b:
        res["determinant_nonzero"] = hessian_nonvanishing(f, args.a, args.seed, G)
    basis = {"rows": enc(list(H.row_labels)), "cols": enc(list(H.col_labels))}
    return res, basis, {"form": format_polynomial(f, names), "variables": names}


def cmd_verify_theorem(args, names, I, enc):
    failures, total = [], 0
    if I is None:
        for J, chk in theorem_trials(args.trials, args.seed):
            total += 1
            if not chk.holds:
                failures.append(_theorem_failure(J, chk))
        return {"trials": total, "passed": total - len(failures), "failures": failures}, {}
    rng = random.Random(args.seed)
    top = min(_top_degree(I, args.max_degree), args.max_k)
    for k in range(1, top + 1):
        if not inverse_system_piece(I, k):
            continue
        for s in range(0, k):
            for _ in range(args.trials):
                chk = verify_main_theorem(I, random_linear_form(rng, I.n_vars, small=True), s, k)
                total += 1
                if not chk.holds:
                    failures.append(_theorem_failure(I, chk))
    return {"trials": total, "passed": total - len(failures), "failures": failures}, {}


def _theorem_failure(I, chk) -> dict:
    enc = Encoder(default_names(I.n_vars))
    return {"generators": enc(list(I.generators)), "s": chk.s, "k": chk.k, "L": enc(chk.L),
            "difference": enc(chk.difference)}


def cmd_togliatti(args, names, I, enc):
    v = is_togliatti(I, minimality=args.minimality, laplace=args.laplace, seed=args.seed,
                     subset_limit=args.subset_limit)
    res = {"togliatti": v.is_togliatti, "d": v.d, "mu": v.mu, "bound": v.bound,
           "fails_wlp_at_d_minus_1": v.fails_wlp_at_d_minus_1, "kernel_dim": v.kernel_dim}
    if args.minimality:
        res["minimal"] = v.minimal
        c = v.minimality
        res["minimality"] = None if c is None else {
            "subsets_checked": c.subsets_checked, "witness": enc(c.witness),
            "witness_ignoring_bound": enc(c.witness_ignoring_bound)}
    if args.laplace:
        res["laplace_nontrivial_delta"] = {str(s): d for s, d in sorted(v.laplace_orders.items())}
    if I.is_monomial and v.mu <= v.bound:
        res["polytope_order"] = minimal_order_via_polytope(I, v.d)
    return res, {}


def _probe_family(job):
    n, d, seed, limit = job
    F = family_2n_plus_1(n, d)
    rec = conjecture_probe(F, seed, limit).to_record(default_names(n + 1))
    rec["bound"] = generator_bound(n, d)
    return rec


def cmd_conjecture_scan(args, names, I, enc):
    if args.family != "2n+1":
        raise InputError(f"unknown family {args.family!r}; available: 2n+1")
    jobs = [(n, d, args.seed, args.subset_limit)
            for n in _parse_range(args.n_range) for d in _parse_range(args.d_range)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            records = list(ex.map(_probe_family, jobs))
    else:
        records = [_probe_family(j) for j in jobs]
    bad = [r for r in records if r["conjecture_consistent"] is False]
    return {"family": args.family, "records": records, "inconsistent": len(bad)}, {}


# ---------------------------------------------------------------- driver

COMMANDS = {
    "hilbert": cmd_hilbert,
    "inverse-system": cmd_inverse_system,
    "mult-rank": cmd_mult_rank,
    "wlp": cmd_wlp,
    "slp": cmd_slp,
    "laplace": cmd_laplace,
    "min-laplace-order": cmd_min_laplace_order,
    "hessian": cmd_hessian,
    "verify-theorem": cmd_verify_theorem,
    "togliatti": cmd_togliatti,
    "conjecture-scan": cmd_conjecture_scan,
}

# commands that take no ideal, or decide for themselves
_NO_IDEAL = {"hessian", "conjecture-scan"}

METHODS = ["auto", "ones", "random", "random+symbolic", "symbolic"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lefschetz-lab",
                                 description="Lefschetz properties, inverse systems and "
                                             "Laplace equations, computed exactly.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="human-readable output")
    common.add_argument("--seed", type=int, default=0)
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("source", nargs="?", help=".ideal file, or - for stdin")
    src.add_argument("--form", help="use Ann(F) for this homogeneous form F")
    src.add_argument("--max-degree", type=int, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("hilbert", parents=[common, src], help="Hilbert function")
    p = sub.add_parser("inverse-system", parents=[common, src], help="inverse system pieces")
    p.add_argument("--k", type=int)
    p = sub.add_parser("mult-rank", parents=[common, src], help="rank of x L^(k-s)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--L", help="coefficients a,b,c of L")
    g.add_argument("--generic", action="store_true", help="general L (default)")
    p.add_argument("--method", choices=METHODS, default="auto")
    for name in ("wlp", "slp"):
        p = sub.add_parser(name, parents=[common, src], help=f"{name.upper()} report")
        p.add_argument("--method", choices=METHODS, default="auto")
        if name == "slp":
            p.add_argument("--narrow", action="store_true",
                           help="complementary maps only (Ann(f) input)")
    p = sub.add_parser("laplace", parents=[common, src], help="Laplace equations of X_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--point", help="coordinates a,b,c (default: generic)")
    p.add_argument("--confirm", action="store_true", help="confirm deficiencies symbolically")
    p = sub.add_parser("min-laplace-order", parents=[common, src],
                       help="least order with a nontrivial Laplace equation")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--confirm", action="store_true")
    p = sub.add_parser("hessian", parents=[common], help="mixed Hessian of a form")
    p.add_argument("--f", required=True, help="homogeneous form")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = sub.add_parser("verify-theorem", parents=[common, src],
                       help="check [x L^(k-s)]^T = (k-s)! Jac^s(L)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-k", type=int, default=5)
    p = sub.add_parser("togliatti", parents=[common, src], help="Togliatti system verdict")
    p.add_argument("--minimality", action="store_true")
    p.add_argument("--laplace", action="store_true", help="nontrivial delta at every order")
    p.add_argument("--subset-limit", type=int, default=20)
    p = sub.add_parser("conjecture-scan", parents=[common], help="probe a family of systems")
    p.add_argument("--family", default="2n+1")
    p.add_argument("--n-range", default="2:4")
    p.add_argument("--d-range", default="3:5")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--subset-limit", type=int, default=20)
    return ap


def run(argv=None) -> tuple:
    """Parse ``argv`` and run the command; returns ``(envelope, exit code, table flag)``."""
    args = build_parser().parse_args(argv)
    names, I, echo = [], None, {}
    if args.command == "verify-theorem" and args.source == "random" and not args.form:
        echo = {"source": "random"}
    elif args.command not in _NO_IDEAL:
        names, I, echo = load_ideal(args)
    enc = Encoder(names)
    out = COMMANDS[args.command](args, names, I, enc)
    result, basis = out[0], out[1]
    if len(out) > 2:
        echo = out[2]
        names = echo.get("variables", names)
    opts = {k: v for k, v in sorted(vars(args).items())
            if k not in ("command", "table", "seed", "source", "form") and v not in (None, False)}
    echo["options"] = opts
    basis = {"monomial_order": ORDER, "variables": list(enc.names), **basis}
    env = {"command": args.command, "input": echo, "basis": basis, "result": result,
           "version": __version__, "seed": args.seed}
    code = 0
    if args.command == "verify-theorem" and result["failures"]:
        code = 1
    if args.command == "conjecture-scan" and result["inconsistent"]:
        code = 1
    return env, code, args.table


def main(argv=None) -> int:
    try:
        env, code, table = run(argv)
    except (LefschetzLabError, ValueError, OSError) as e:
        print(f"lefschetz-lab: error: {e}", file=sys.stderr)
        return 2
    print(render_table(env) if table else dumps(env))
    return code


if __name__ == "__main__":
    sys.exit(main())
