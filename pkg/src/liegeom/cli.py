"""Command-line front end.

Every subcommand loads an algebra (``--input file.json`` or ``--catalog
name``), runs one pipeline and prints a report: ``key: value`` lines by
default, a ``report_v1`` JSON document with ``--json``.

Exit status: 0 when every verdict passes, 1 when a verdict fails, 2 on bad
input (malformed file, invalid structure constants, indefinite metric, ...).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .algebra import (
    InvalidAlgebra,
    LieAlgebra,
    NotADerivation,
    bracket_array,
    catalog,
    catalog_names,
    derivation_basis,
    derivation_residual,
    is_unimodular,
    validate_algebra,
)
from .exact import Surd, format_exact, is_zero, parse_exact, rational, zeros
from .extension import extend, extension_invariants
from .geometry import (
    InvariantMetric,
    NotPositiveDefinite,
    bianchi_residual,
    covariant_divergence,
    curvature,
    divergence_closed_form,
    is_conformally_flat,
    lower,
    metric_adjoint_split,
    metric_residual,
    torsion_residual,
)
from .search import MetricParametrization, find_div_free_family
from .soliton import (
    detect_algebraic_soliton,
    necessary_conditions,
    solve_abelian_extension,
    solve_soliton_extension,
    trace_identities,
    verify_quasi_einstein,
)

SCHEMA = "report_v1"
SUBCOMMANDS = (
    "validate", "curvature", "soliton", "extend", "qe-solve",
    "qe-verify", "div-free", "conformal-flat", "search", "catalog",
)


class InputError(Exception):
    """Bad input; ``invariant`` names what was violated."""

    def __init__(self, invariant: str, message: str, details=None):
        super().__init__(message)
        self.invariant = invariant
        self.details = details or []


# ---------------------------------------------------------------- loading


@dataclass
class Problem:
    algebra: LieAlgebra
    metric: InvariantMetric
    derivation: Optional[np.ndarray]
    name: str

    def echo(self) -> dict:
        """Canonical input document; feeding it back reproduces the run."""
        c = self.algebra.c
        n = self.algebra.dim
        brackets = [
            {"i": i + 1, "j": j + 1, "k": k + 1, "c": format_exact(c[i, j, k])}
            for i in range(n) for j in range(i + 1, n) for k in range(n)
            if c[i, j, k] != 0
        ]
        doc = {"dim": n, "brackets": brackets, "metric": _matrix(self.metric.g)}
        if self.derivation is not None:
            doc["derivation"] = _matrix(self.derivation)
        if self.name:
            doc["name"] = self.name
        return doc


def _reject_float(text):
    raise InputError("exact input", f"float literal {text} rejected; write rationals as \"p/q\" strings")


def _matrix_from(doc, n: int, key: str, symmetric: bool) -> np.ndarray:
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError("shape", f"{key} must have {n} rows")
    M = zeros((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError("shape", f"{key} row {i + 1} is not a list")
        # upper triangle rows may be given without their leading zeros
        offset = n - len(row) if symmetric and len(row) == n - i else 0
        if len(row) != n and not offset:
            raise InputError("shape", f"{key} row {i + 1} has {len(row)} entries")
        for j, v in enumerate(row):
            M[i, j + offset] = _number(v, f"{key}[{i + 1}][{j + offset + 1}]")
    if symmetric:
        upper_only = all(M[j, i] == 0 for i in range(n) for j in range(i + 1, n))
        if upper_only:
            for i in range(n):
                for j in range(i + 1, n):
                    M[j, i] = M[i, j]
    return M


def _number(v, where: str):
    try:
        return rational(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("exact input", f"{where}: {exc}") from None


def load_document(doc) -> Problem:
    if not isinstance(doc, dict):
        raise InputError("format", "top level must be an object")
    for key in ("dim", "brackets"):
        if key not in doc:
            raise InputError("format", f"missing field {key!r}")
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("format", "dim must be a positive integer")
    entries = []
    for t, b in enumerate(doc["brackets"]):
        try:
            entries.append((int(b["i"]), int(b["j"]), int(b["k"]), _number(b["c"], f"brackets[{t}].c")))
        except (KeyError, TypeError) as exc:
            raise InputError("format", f"brackets[{t}] needs integer i, j, k and c ({exc})") from None
    try:
        c = bracket_array(n, entries)
    except ValueError as exc:
        raise InputError("format", str(exc)) from None
    violations = validate_algebra(c)
    if violations:
        raise InputError(
            "Lie algebra axioms",
            "structure constants violate antisymmetry or Jacobi",
            [{"identity": v.identity, "indices": list(v.indices), "value": format_exact(v.value)} for v in violations],
        )
    name = str(doc.get("name", ""))
    alg = LieAlgebra(c, name=name)
    g = _matrix_from(doc, n, "metric", True) if "metric" in doc else None
    try:
        metric = InvariantMetric(g) if g is not None else InvariantMetric.identity(n)
    except NotPositiveDefinite as exc:
        raise InputError("positive definite metric", str(exc)) from None
    except ValueError as exc:
        raise InputError("symmetric metric", str(exc)) from None
    D = _matrix_from(doc, n, "derivation", False) if "derivation" in doc else None
    return Problem(alg, metric, D, name)


def load_problem(args) -> Problem:
    if args.input and args.catalog:
        raise InputError("arguments", "give either --input or --catalog, not both")
    if args.catalog:
        try:
            entry = catalog(args.catalog)
        except KeyError as exc:
            raise InputError("catalog", exc.args[0]) from None
        return Problem(entry.algebra, InvariantMetric(entry.metric), entry.derivation, entry.algebra.name)
    if not args.input:
        raise InputError("arguments", "one of --input or --catalog is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh, parse_float=_reject_float)
    except OSError as exc:
        raise InputError("input file", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("input file", f"invalid JSON: {exc}") from None
    return load_document(doc)


# ---------------------------------------------------------------- formatting


def _value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, np.ndarray):
        return [_value(v) for v in x]
    if isinstance(x, (list, tuple)):
        return [_value(v) for v in x]
    if isinstance(x, dict):
        return {k: _value(v) for k, v in x.items()}
    if x is None or isinstance(x, str):
        return x
    return format_exact(x)


def _matrix(M) -> list:
    return [[format_exact(v) for v in row] for row in M]


class Report:
    def __init__(self, subcommand: str, options: dict, problem: Optional[Problem]):
        self.subcommand = subcommand
        self.options = options
        self.input = problem.echo() if problem else None
        self.results: dict = {}
        self.verdicts: list = []
        self.notes: list = []

    def add(self, key, value):
        self.results[key] = _value(value)

    def check(self, name: str, identity: str, passed: bool):
        self.verdicts.append({"name": name, "identity": identity, "pass": bool(passed)})

    @property
    def ok(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def document(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "command": {"subcommand": self.subcommand, **self.options},
            "input": self.input,
            "input_sha256": _digest(self.input) if self.input is not None else None,
            "results": self.results,
            "verdicts": self.verdicts,
            "notes": self.notes,
        }
        return doc

    def text(self) -> str:
        lines = [f"{self.subcommand} ({SCHEMA})"]
        if self.input is not None:
            lines.append(f"input: {self.input.get('name') or 'file'} sha256={_digest(self.input)[:16]}")
        for key, value in self.results.items():
            lines.append(f"{key}: {_render(value)}")
        for note in self.notes:
            lines.append(f"note: {note}")
        for v in self.verdicts:
            lines.append(f"{v['name']}: {'PASS' if v['pass'] else 'FAIL'}  [{v['identity']}]")
        return "\n".join(lines)


def _render(value) -> str:
    flat = lambda row: all(not isinstance(x, (list, dict)) for x in row)  # noqa: E731
    if isinstance(value, list) and value and all(isinstance(r, list) and flat(r) for r in value):
        return "[" + "; ".join(" ".join(str(x) for x in r) for r in value) + "]"
    if isinstance(value, list) and flat(value):
        return "[" + " ".join(str(x) for x in value) + "]"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _digest(doc) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _diag_or_matrix(M):
    n = M.shape[0]
    if all(M[i, j] == 0 for i in range(n) for j in range(n) if i != j):
        return {"diag": [format_exact(M[i, i]) for i in range(n)]}
    return _matrix(M)


# ---------------------------------------------------------------- subcommands


def _need_derivation(p: Problem, what: str) -> np.ndarray:
    if p.derivation is None:
        raise InputError("derivation", f"{what} needs a derivation (field 'derivation' in the input)")
    res = derivation_residual(p.algebra, p.derivation)
    if not is_zero(res):
        raise InputError("Leibniz rule", str(NotADerivation(res)))
    return p.derivation


def _need(args, flag: str):
    value = getattr(args, flag)
    if value is None:
        raise InputError("arguments", f"--{flag} is required for {args.command}")
    return value


def cmd_validate(args, p: Problem, r: Report):
    alg = p.algebra
    r.add("dim", alg.dim)
    r.add("abelian", alg.is_abelian)
    r.add("unimodular", is_unimodular(alg))
    r.add("derivation_algebra_dim", len(derivation_basis(alg)))
    r.check("structure constants", "antisymmetry and Jacobi", not validate_algebra(alg.c))
    r.check("metric", "symmetric positive definite", True)
    if p.derivation is not None:
        res = derivation_residual(alg, p.derivation)
        bad = [[int(x) + 1 for x in idx] for idx in zip(*np.nonzero(res != 0))]
        r.add("derivation_violations", bad)
        r.check("derivation", "Leibniz rule", not bad)


def cmd_curvature(args, p: Problem, r: Report):
    alg, g = p.algebra, p.metric
    data = curvature(alg, g)
    r.add("ricci", _matrix(data.ricci))
    r.add("scal", data.scal)
    r.add("connection", [_matrix(data.gamma[i]) for i in range(alg.dim)])
    if data.weyl is not None:
        r.add("weyl_zero", is_zero(data.weyl))
    if data.cotton is not None:
        r.add("cotton_zero", is_zero(data.cotton))
    r.check("torsion", "torsion-free connection", is_zero(torsion_residual(alg, data.gamma)))
    r.check("metric compatibility", "nabla g = 0", is_zero(metric_residual(g, data.gamma)))
    r.check("bianchi", "first Bianchi identity", is_zero(bianchi_residual(data.riemann)))
    r.check("ricci symmetry", "Ric symmetric", bool(np.all(data.ricci == data.ricci.T)))


def cmd_soliton(args, p: Problem, r: Report):
    cert = detect_algebraic_soliton(p.algebra, p.metric)
    if not cert:
        r.add("soliton", False)
        r.notes.append(cert.reason)
        r.check("soliton", "Ric = lam Id + D with D a derivation", False)
        return
    n = p.algebra.dim
    r.add("soliton", True)
    r.add("lam", cert.lam)
    r.add("D", _diag_or_matrix(cert.D))
    r.add("scal", cert.scal)
    r.add("trace_D", cert.trace_D)
    r.add("trace_D2", cert.trace_D2)
    if cert.lam != 0:
        r.add("scal_over_lam", cert.scal / cert.lam)
    if cert.note:
        r.notes.append(cert.note)
    r.check("derivation", "Ric - lam Id satisfies the Leibniz rule", is_zero(cert.residual))
    r.check("scalar curvature", "scal = n lam + tr D", cert.scal == n * cert.lam + cert.trace_D)


def cmd_extend(args, p: Problem, r: Report):
    D = _need_derivation(p, "extend")
    alpha = args.alpha if args.alpha is not None else 1
    ext = extend(p.algebra, p.metric, D, alpha)
    inv = extension_invariants(ext)
    r.add("alpha", ext.alpha)
    r.add("dim", ext.dim)
    r.add("S", _matrix(ext.S))
    r.add("ricci", _matrix(inv.ric_direct))
    r.add("ric_xi_xi", inv.ric_xi_xi)
    r.add("hess_r_norm_sq", inv.hess_norm_sq)
    r.add("div_hess_r", inv.div_hess)
    r.check("ricci formula", "extension Ricci from base data equals direct Ricci", inv.formula_matches)
    r.check("bochner norm", "Ric(xi,xi) = -|Hess r|^2", inv.bochner_norm)
    r.check("sign", "Ric(xi,xi) <= 0", inv.nonpositive)
    r.check("rigidity", "Ric(xi,xi) = 0 iff S = 0", inv.zero_iff_symmetric_part_vanishes)
    r.check("bochner divergence", "div Hess r = Ric(xi, .)", inv.bochner_divergence)


def cmd_qe_solve(args, p: Problem, r: Report):
    m = _need(args, "m")
    if args.abelian:
        D = _need_derivation(p, "qe-solve --abelian")
        out = solve_abelian_extension(p.algebra, p.metric, D, m)
        r.add("construction", "abelian base, lam = 0")
        r.add("m", out.m)
        r.add("defect", out.defect)
        r.add("normal", out.normal)
        r.add("exists", out.ok)
        if not out.ok:
            r.notes.append("tr(S^2) + tr(S)^2/m != 0: no extension with lam = 0")
            return
        r.add("a", out.a)
        qe = verify_quasi_einstein(extend(p.algebra, p.metric, D, 1), m, out.a)
        r.add("lam", qe.lam)
        r.check("quasi-Einstein", "Ric - m q = lam g", qe.ok)
        r.check("lam", "lam = 0", qe.lam == 0)
        return
    cert = detect_algebraic_soliton(p.algebra, p.metric)
    if not cert:
        r.add("soliton", False)
        r.notes.append(cert.reason)
        r.check("soliton", "Ric = lam Id + D with D a derivation", False)
        return
    out = solve_soliton_extension(cert, m)
    r.add("m", m)
    r.add("lam", cert.lam)
    r.add("trace_D", cert.trace_D)
    r.add("exists", bool(out))
    if not out:
        r.add("defect", out.defect)
        r.notes.append(
            "boundary: tr D - m lam = 0" if out.boundary else "tr D - m lam < 0: no extension"
        )
        return
    r.add("alpha_sq", out.alpha_sq)
    r.add("alpha", out.alpha)
    r.add("a", out.a)
    qe = verify_quasi_einstein(out.extension(), m, out.a)
    r.add("extension_lam", qe.lam)
    r.check("quasi-Einstein", "Ric - m q = lam g", qe.ok)
    r.check("scale", "alpha^2 (tr D - m lam) = 1", out.alpha_sq * (cert.trace_D - out.m * cert.lam) == 1)


def cmd_qe_verify(args, p: Problem, r: Report):
    m, a = _need(args, "m"), _need(args, "a")
    D = _need_derivation(p, "qe-verify")
    alpha = args.alpha if args.alpha is not None else 1
    ext = extend(p.algebra, p.metric, D, alpha)
    data = curvature(ext.total, ext.g_total)
    qe = verify_quasi_einstein(ext, m, a, data)
    r.add("m", qe.m)
    r.add("a", qe.a)
    r.add("alpha", qe.alpha)
    r.add("lam", qe.lam)
    r.add("residual_zero", qe.ok)
    r.check("quasi-Einstein", "Ric - m q = lam g", qe.ok)
    if not qe.ok:
        return
    nc = necessary_conditions(ext, qe.a)
    r.add("branch", nc.branch)
    r.check("divergence", "div S = 0", nc.div_free)
    r.check("trace condition", "tr(S^2) = -a tr(S) for S of ad_xi", nc.trace_ok)
    if nc.branch is not None:
        r.check("normal branch", "normal D forces a flat or soliton base", nc.branch != "violation")
    ti = trace_identities(ext, qe.a, data)
    r.add("laplacian_r", ti.laplacian)
    r.add("hess_r_norm_sq", ti.hess_norm_sq)
    r.add("orientation_flipped", ti.flipped)
    r.add("endpoint", ti.endpoint)
    r.check("div q", "div q = 0", ti.div_free)
    r.check("trace identity", "tr(q^2) = a^2 tr(q)", ti.trace_identity)
    r.check("hessian identity", "|Hess r|^2 = a Lap r", ti.hessian_identity)
    r.check("window", "0 <= Lap r <= (n-1) a", ti.window)


def cmd_div_free(args, p: Problem, r: Report):
    D = p.derivation
    if D is None:
        raise InputError("derivation", "div-free needs an endomorphism (field 'derivation')")
    alg, g = p.algebra, p.metric
    terms = divergence_closed_form(alg, g, D)
    S, _ = metric_adjoint_split(g, D)
    gamma = curvature(alg, g).gamma
    direct = covariant_divergence(alg, g, gamma, lower(g, S))
    r.add("is_derivation", terms.derivation)
    r.add("trace", terms.trace)
    r.add("pairing", terms.pairing)
    r.add("ad_trace", terms.ad_trace)
    r.add("div_S", terms.covector)
    r.check("oracle", "closed trace formula equals covariant divergence", bool(np.all(direct == terms.covector)))
    r.check("divergence", "div S = 0", is_zero(terms.covector))


def cmd_conformal_flat(args, p: Problem, r: Report):
    alg, g = p.algebra, p.metric
    n = alg.dim
    r.add("conformally_flat", is_conformally_flat(alg, g))
    if n < 3:
        r.notes.append("dimension <= 2: always conformally flat")
        return
    data = curvature(alg, g)
    if n == 3:
        C = data.cotton
        r.add("cotton_zero", is_zero(C))
        r.check("cotton trace", "g^{jk} C_ijk = 0", is_zero(np.einsum("jk,ijk->i", g.inv, C)))
        r.check("cotton cyclic", "C_ijk + C_jki + C_kij = 0",
                is_zero(C + C.transpose(1, 2, 0) + C.transpose(2, 0, 1)))
    else:
        W = data.weyl
        r.add("weyl_zero", is_zero(W))
        r.check("weyl trace", "g^{il} W_ijkl = 0", is_zero(np.einsum("il,ijkl->jk", g.inv, W)))


def cmd_search(args, p: Problem, r: Report):
    D = _need_derivation(p, "search")
    param = MetricParametrization.full(p.algebra.dim)
    tol = args.tol if args.tol is not None else 1e-10
    seed = args.seed if args.seed is not None else 0
    res = find_div_free_family(p.algebra, D, param, args.count, tol, seed=seed, workers=args.workers)
    r.add("parameters", [f"g{i}{j}" for i, j in param.free])
    r.add("seeds", res.seeds)
    r.add("converged", res.converged)
    r.add("distinct", len(res.solutions))
    r.add("trivial", res.trivial)
    r.add("all_exact", res.all_verified)
    r.add("solutions", [
        {
            "params": list(s.params),
            "residual": s.residual,
            "rational": [format_exact(parse_exact(f"{q.numerator}/{q.denominator}")) for q in s.rational or ()],
            "status": s.status,
            "seed_index": s.seed_index,
            "iterations": s.iterations,
        }
        for s in res.solutions
    ])
    failures: dict = {}
    for f in res.failures:
        failures[f.reason] = failures.get(f.reason, 0) + 1
    r.add("failures", dict(sorted(failures.items())))
    r.check("tolerance", "every solution has residual below tol", all(s.residual <= tol for s in res.solutions))


def cmd_catalog(args, p: Optional[Problem], r: Report):
    if p is None:
        r.add("entries", catalog_names())
        return
    entry = catalog(args.catalog)
    r.add("description", entry.description)
    r.add("unimodular", is_unimodular(entry.algebra))


HANDLERS = {
    "validate": cmd_validate,
    "curvature": cmd_curvature,
    "soliton": cmd_soliton,
    "extend": cmd_extend,
    "qe-solve": cmd_qe_solve,
    "qe-verify": cmd_qe_verify,
    "div-free": cmd_div_free,
    "conformal-flat": cmd_conformal_flat,
    "search": cmd_search,
    "catalog": cmd_catalog,
}


# ---------------------------------------------------------------- entry point


def _exact_flag(text: str):
    try:
        return parse_exact(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError("arguments", message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="liegeom", description="Exact curvature checks on Lie algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--input", help="algebra description file (JSON)")
    parser.add_argument("--catalog", help="built-in algebra, e.g. heis3 or abelian(4)")
    parser.add_argument("--m", type=_exact_flag, help="quasi-Einstein parameter (rational)")
    parser.add_argument("--alpha", type=_exact_flag, help="extension scale (default 1)")
    parser.add_argument("--a", type=_exact_flag, help="exponent of w = e^{a r}")
    parser.add_argument("--abelian", action="store_true", help="qe-solve: lam = 0 construction over an abelian base")
    parser.add_argument("--json", action="store_true", help="emit a report_v1 JSON document")
    parser.add_argument("--seed", type=int, help="search: seed of the low-discrepancy sequence (default 0)")
    parser.add_argument("--tol", type=_positive_float, help="search: residual tolerance (default 1e-10)")
    parser.add_argument("--count", type=int, default=100, help="search: number of seeds (default 100)")
    parser.add_argument("--workers", type=int, default=1, help="search: worker processes (default 1)")
    return parser


_VALUE_FLAGS = ("--m", "--alpha", "--a", "--seed", "--tol")


def _glue_negative_values(argv):
    """``--m -2`` would read ``-2`` as an option; rewrite as ``--m=-2``."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _options(args) -> dict:
    opts = {}
    for key in ("m", "alpha", "a"):
        value = getattr(args, key)
        if value is not None:
            opts[key] = format_exact(value)
    if args.abelian:
        opts["abelian"] = True
    if args.command == "search":
        opts.update(seed=args.seed or 0, tol=format(args.tol or 1e-10, ".17g"), count=args.count)
    return opts


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        if args.m is not None and (isinstance(args.m, Surd) or args.m == 0):
            raise InputError("arguments", "--m must be a nonzero rational")
        if args.command == "catalog" and not args.input and not args.catalog:
            problem = None
        else:
            problem = load_problem(args)
        report = Report(args.command, _options(args), problem)
        try:
            HANDLERS[args.command](args, problem, report)
        except (InvalidAlgebra, NotPositiveDefinite, NotADerivation, ValueError) as exc:
            raise InputError(type(exc).__name__, str(exc)) from None
    except InputError as exc:
        error = {"invariant": exc.invariant, "message": str(exc), "details": exc.details}
        if want_json:
            print(json.dumps({"schema": SCHEMA, "error": error}, indent=2, sort_keys=True), file=stdout)
        print(f"error [{exc.invariant}]: {exc}", file=stderr)
        for d in exc.details[:20]:
            print(f"  {d['identity']} at (i,j,k{',l' if len(d['indices']) == 4 else ''}) = "
                  f"{tuple(d['indices'])}: {d['value']}", file=stderr)
        return 2
    if args.json:
        print(json.dumps(report.document(), indent=2, sort_keys=True), file=stdout)
    else:
        print(report.text(), file=stdout)
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())
