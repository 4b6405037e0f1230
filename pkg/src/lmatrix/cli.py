"""Command-line front end.

Every subcommand prints an :class:`OutputRecord` (or a table of rows) as
plain text, ``--json`` or ``--csv``.  Exit status is 0 on success, 2 for
domain errors and 3 for convergence or quadrature failures.

Environment: ``HLX_TOL`` overrides the default tolerance and
``HLX_THREADS`` the number of worker processes used by ``figures``;
command-line flags take precedence over both.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import hilbert, loperator, oracle, orthopoly
from .errors import ConvergenceError, DivergentError, DomainError, LMatrixError
from .specfun import hahn_exton_series

__all__ = ["OUTPUT_SCHEMA", "OutputRecord", "build_parser", "dumps", "main"]

PROVENANCES = ("formula", "oracle", "both")

OUTPUT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "OutputRecord",
    "type": "object",
    "required": ["command", "inputs", "outputs", "provenance", "residuals"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "outputs": {"type": "object"},
        "provenance": {"enum": list(PROVENANCES)},
        "residuals": {
            "type": "object",
            "additionalProperties": {"type": ["number", "null"]},
        },
    },
}


@dataclass
class OutputRecord:
    """Result of one CLI command."""

    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)
    provenance: str = "formula"
    residuals: dict[str, float | None] = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")

    def to_dict(self) -> dict[str, Any]:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls(**json.loads(text))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        if obj.imag == 0:
            return _jsonable(obj.real)
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (np.floating, float)):
        obj = float(obj)
        return obj if math.isfinite(obj) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _float_text(x: float) -> str:
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, float) and math.isfinite(obj):
        return _float_text(obj)
    return json.dumps(obj)


def _fmt(value) -> str:
    if isinstance(value, float):
        return _float_text(value)
    if value is None:
        return ""
    return str(value)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            yield prefix, f"{_fmt(obj['re'])}{'+' if obj['im'] >= 0 else '-'}{_fmt(abs(obj['im']))}j"
            return
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        if not obj:
            yield prefix, ""
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, _fmt(obj)


def _write_csv(rows, header, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _emit_record(rec: OutputRecord, args, stream=None):
    stream = stream or sys.stdout
    data = rec.to_dict()
    if args.output == "json":
        stream.write(dumps(data) + "\n")
    elif args.output == "csv":
        _write_csv(list(_flatten(data)), ["field", "value"], stream)
    else:
        for key, value in _flatten(data):
            stream.write(f"{key} = {value}\n")


def _emit_table(command, header, rows, args, stream=None):
    stream = stream or sys.stdout
    if args.output == "json":
        records = [dict(zip(header, _jsonable(list(r)))) for r in rows]
        stream.write(dumps(records) + "\n")
    else:
        _write_csv(rows, header, stream)


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"{name} must be a number, got {raw!r}") from None


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{name} must be an integer, got {raw!r}") from None


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        raise DomainError(f"range must look like LO:HI, got {text!r}") from None
    if not lo < hi:
        raise DomainError("range needs LO < HI")
    return lo, hi


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise DomainError(f"cannot parse complex number {text!r}") from None


def _root_dict(r: hilbert.RootResult) -> dict:
    return {"location": r.location, "bracket": list(r.bracket), "residual": r.residual,
            "iterations": r.iterations}


# -- commands ---------------------------------------------------------------

def cmd_nu0(args) -> OutputRecord:
    r = hilbert.find_nu0()
    rec = OutputRecord("nu0", {}, {"nu0": r.location, "bracket": list(r.bracket),
                                   "iterations": r.iterations},
                       residuals={"nu0": r.residual})
    if args.all_roots:
        lo, hi = _parse_range(args.range)
        roots = hilbert.find_negative_nu_roots(lo, hi)
        rec.inputs["range"] = [lo, hi]
        rec.outputs["roots"] = [_root_dict(x) for x in roots]
    return rec


def cmd_norm(args) -> OutputRecord:
    if not args.nu > 0:
        raise DomainError("norm needs nu > 0; for nu <= 0 use the 'spectrum' command")
    nu = hilbert.check_nu(args.nu)
    value = hilbert.operator_norm(nu)
    rec = OutputRecord("norm", {"nu": nu}, {"norm": value})
    nu0 = hilbert.find_nu0().location
    rec.outputs["nu0"] = nu0
    if nu < nu0:
        x = hilbert.x0(nu)
        rec.outputs["x0"] = x.location
        rec.residuals["x0"] = x.residual
        asym = hilbert.norm_asymptotic(nu)
        rec.outputs["norm_asymptotic"] = asym
        rec.outputs["asymptotic_relative_gap"] = abs(value - asym) / value
    if args.check:
        tol = args.tol if args.tol is not None else _env_float("HLX_TOL", 1e-10)
        ora = oracle.finite_section_norm_L(nu, args.n, tol=tol)
        rec.inputs["n"] = args.n
        rec.outputs["oracle_norm"] = ora
        rec.residuals["relative_difference"] = abs(ora - value) / value
        rec.provenance = "both"
    return rec


def cmd_spectrum(args) -> OutputRecord:
    nu = hilbert.check_nu(args.nu)
    zeros = hilbert.positive_zeros_chi(nu, args.x_max)
    evs_j = [0.25 - r.location**2 for r in zeros]
    evs_l = [4.0 / (1.0 - 4.0 * r.location**2) for r in zeros]
    norm = max([4.0] + [abs(v) for v in evs_l])
    rec = OutputRecord(
        "spectrum",
        {"nu": nu, "x_max": args.x_max},
        {
            "ac_spectrum_L": [0.0, 4.0],
            "ac_spectrum_J": [0.25, None],
            "zeros": [_root_dict(r) for r in zeros],
            "eigenvalues_J": evs_j,
            "eigenvalues_L": evs_l,
            "norm_L": norm,
            "window_incomplete": zeros.window_incomplete,
        },
        residuals={f"zero_{i}": r.residual for i, r in enumerate(zeros)},
    )
    if args.check:
        below = _oracle_eigs_below_quarter(nu, args.n, len(evs_j))
        rec.inputs["n"] = args.n
        rec.outputs["oracle_eigenvalues_J"] = below
        rec.provenance = "both"
    return rec


def _oracle_eigs_below_quarter(nu: float, n: int, expected: int) -> list[float]:
    small, _ = oracle.finite_section_spectrum_J(nu, n, max(expected, 1) + 2)
    return [v for v in small if v < 0.25]


def cmd_density(args):
    nu = hilbert.check_nu(args.nu)
    if args.samples < 2:
        raise DomainError("samples must be >= 2")
    if not args.t_max > 0:
        raise DomainError("t-max must be positive")
    ts = np.linspace(0.0, args.t_max, args.samples)
    rows = []
    for t in ts:
        dens = hilbert.ac_density(t, nu) if t > 0 else 0.0
        rows.append((float(t), 0.25 + float(t) ** 2, dens))
    return "density", ["t", "x", "density"], rows


def _figure_row(nu: float):
    """Zeros x0 (below 1/2) and x1 (above 1/2) of chi for one nu."""
    zeros = [r.location for r in hilbert.positive_zeros_chi(nu, grid=256)]
    small = [x for x in zeros if x < 0.5]
    large = [x for x in zeros if x > 0.5]
    x0 = small[0] if small else None
    x1 = large[0] if large else None
    return nu, x0, x1


def _nu_grid(lo: float, hi: float, points: int) -> list[float]:
    # nu = 1/2 is the reference point where the norm reaches 4
    grid = np.union1d(np.linspace(lo, hi, points), [0.5])
    return [float(v) for v in grid if abs(v - round(v)) > 1e-3 or v > 0.5]


def cmd_figures(args):
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    points = args.points
    workers = args.threads if args.threads is not None else _env_int("HLX_THREADS", 1)

    def pool_map(fn, items):
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(fn, items))
        return [fn(v) for v in items]

    nu0 = hilbert.find_nu0().location

    # fig1: inf sigma(J_nu) against its bounds on 0 < nu < 0.4
    fig1 = []
    for nu in np.linspace(0.4 / points, 0.4, points):
        nu = float(nu)
        inf = 0.25 - hilbert.x0(nu).location ** 2 if nu < nu0 else 0.25
        lower, upper = hilbert.inf_spec_bounds(nu)
        fig1.append((nu, inf, lower, upper))

    # fig2: the rootnu curve with its zeros
    fig2 = [("curve", float(v), hilbert.rootnu_function(float(v)))
            for v in np.linspace(-2.0, 0.5, 2 * points)]
    fig2 += [("zero", r.location, 0.0) for r in hilbert.find_negative_nu_roots(-2.0, 0.5)]

    # fig3-6 share one zero scan per nu
    rows = pool_map(_figure_row, _nu_grid(-2.0, 1.0, points))
    fig3 = [(nu, x0, x1) for nu, x0, x1 in rows]
    fig4 = [(nu, None if x0 is None else 0.25 - x0**2, None if x1 is None else 0.25 - x1**2)
            for nu, x0, x1 in rows]
    fig5, fig6 = [], []
    for nu, x0, x1 in rows:
        lam_plus = None if x0 is None else 4.0 / (1.0 - 4.0 * x0**2)
        lam_minus = None if x1 is None else 4.0 / (1.0 - 4.0 * x1**2)
        fig5.append((nu, lam_plus, lam_minus))
        fig6.append((nu, max(4.0, lam_plus or 4.0, -(lam_minus or 0.0))))

    tables = {
        "fig1_inf_spectrum_bounds.csv": (["nu", "inf_sigma_J", "lower", "upper"], fig1),
        "fig2_rootnu.csv": (["kind", "nu", "value"], fig2),
        "fig3_zeros_chi.csv": (["nu", "x0", "x1"], fig3),
        "fig4_eigenvalues_J.csv": (["nu", "mu_plus", "mu_minus"], fig4),
        "fig5_eigenvalues_L.csv": (["nu", "lambda_plus", "lambda_minus"], fig5),
        "fig6_norm_L.csv": (["nu", "norm"], fig6),
    }
    written = []
    for name, (header, data) in tables.items():
        path = outdir / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            _write_csv(data, header, fh)
        written.append(str(path))
    return OutputRecord("figures", {"outdir": str(outdir), "points": points},
                        {"files": written})


TRACE_CLASS_HINT = "fredholm needs a trace-class sequence: exponential:q (0<q<1), power:a (a>1) or explicit:..."


def cmd_fredholm(args) -> OutputRecord:
    a = loperator.ParameterSequence.parse(args.kind)
    if a.kind in ("hilbert", "linear") or (a.kind == "power" and a.param <= 1) or (
        a.kind == "exponential" and not 0 < a.param < 1
    ):
        raise DomainError(TRACE_CLASS_HINT)
    z = _parse_complex(args.z)
    n = args.n
    value = loperator.fredholm_det(a, z, n)
    rec = OutputRecord("fredholm", {"kind": str(a), "z": z, "n": n}, {"det": value})
    if a.kind == "exponential":
        tol = args.tol if args.tol is not None else _env_float("HLX_TOL", 1e-15)
        closed = hahn_exton_series(a.param, (1.0 - a.param) * z, tol=tol)
        rec.outputs["closed_form"] = closed
        rec.residuals["closed_form_gap"] = abs(closed - value)
    if args.check:
        if n > 500:
            raise DomainError("--check supports n <= 500")
        brute = oracle.brute_det(a, z, n)
        rec.outputs["oracle_det"] = brute
        rec.residuals["oracle_gap"] = abs(brute - value)
        rec.provenance = "both"
    return rec


def cmd_ortho(args) -> OutputRecord:
    nu = hilbert.check_nu(args.nu)
    tol = args.quad_tol if args.quad_tol is not None else _env_float("HLX_TOL", 1e-10)
    k = args.max_degree
    gram = orthopoly.gram_matrix(nu, k, quad_tol=tol)
    target = np.array([orthopoly.gram_target(nu, n) for n in range(k + 1)])
    scaled = gram / np.sqrt(np.outer(target, target))
    off = scaled - np.diag(np.diag(scaled))
    zeros = hilbert.positive_zeros_chi(nu)
    return OutputRecord(
        "ortho",
        {"nu": nu, "max_degree": k, "quad_tol": tol},
        {
            "gram": gram,
            "expected_diagonal": target,
            "atoms": [list(x) for x in hilbert.spectral_measure(nu).atoms],
            "window_incomplete": zeros.window_incomplete,
        },
        residuals={
            "max_relative_deviation": float(np.max(np.abs(scaled - np.eye(k + 1)))),
            "max_off_diagonal": float(np.max(np.abs(off))),
        },
    )


def cmd_oracle(args) -> OutputRecord:
    if args.neumann is not None:
        res = oracle.neumann_fixture_residual(args.neumann, args.n)
        return OutputRecord("oracle", {"lambda": args.neumann, "n": args.n},
                            {"neumann_residual": res}, "oracle", {"neumann": res})
    nu = hilbert.check_nu(args.nu)
    small, large = oracle.finite_section_spectrum_J(nu, args.n, args.k)
    lower, upper = hilbert.inf_spec_bounds(nu)
    out = {"smallest_J": small, "largest_J": large, "inf_bounds": [lower, upper]}
    if not args.skip_norm:
        out["norm_L"] = oracle.finite_section_norm_L(nu, args.n)
    return OutputRecord("oracle", {"nu": nu, "n": args.n, "k": args.k}, out, "oracle")


def cmd_asymptotics(args) -> OutputRecord:
    nu = hilbert.check_nu(args.nu)
    rec = OutputRecord("asymptotics", {"nu": nu},
                       {"x0_asymptotic": hilbert.x0_asymptotic(nu),
                        "norm_asymptotic": hilbert.norm_asymptotic(nu)})
    if 0 < nu < hilbert.find_nu0().location:
        x = hilbert.x0(nu).location
        norm = hilbert.operator_norm(nu)
        rec.outputs.update({"x0": x, "norm": norm})
        rec.residuals.update({"x0_gap": abs(x - rec.outputs["x0_asymptotic"]),
                              "norm_gap": abs(norm - rec.outputs["norm_asymptotic"])})
    return rec


# -- parser -----------------------------------------------------------------

def _add_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="output", action="store_const", const="json", help="JSON output")
    g.add_argument("--csv", dest="output", action="store_const", const="csv", help="CSV output")
    p.set_defaults(output="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lmatrix", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nu0", help="threshold nu_0 and the other zeros of chi(0; nu)")
    p.add_argument("--all-roots", action="store_true", help="also scan a nu range for zeros")
    p.add_argument("--range", default="-2:0.5", help="LO:HI for --all-roots (write --range=-2:0.5)")
    _add_format(p)
    p.set_defaults(func=cmd_nu0)

    p = sub.add_parser("norm", help="operator norm of L_nu for nu > 0")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--check", action="store_true", help="compare with the finite-section oracle")
    p.add_argument("--n", type=int, default=5000, help="oracle section size")
    p.add_argument("--tol", type=float, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("spectrum", help="point spectrum of J_nu and L_nu")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--check", action="store_true", help="add oracle eigenvalues below 1/4")
    p.add_argument("--n", type=int, default=5000)
    _add_format(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("density", help="absolutely continuous spectral density samples")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--format", dest="output", choices=["csv", "json"], default="csv")
    p.add_argument("--json", dest="output", action="store_const", const="json")
    p.add_argument("--csv", dest="output", action="store_const", const="csv")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("figures", help="write the six figure tables as CSV")
    p.add_argument("--outdir", required=True)
    p.add_argument("--points", type=int, default=121, help="grid points per nu range")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default HLX_THREADS or 1)")
    _add_format(p)
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("fredholm", help="det(1 - z L_n) for a trace-class sequence")
    p.add_argument("--kind", required=True, help="exponential:q, power:alpha or explicit:a0,a1,...")
    p.add_argument("--z", default="1")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--check", action="store_true", help="compare with a dense LU determinant")
    p.add_argument("--tol", type=float, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_fredholm)

    p = sub.add_parser("ortho", help="Gram matrix of the orthogonal polynomials")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--quad-tol", type=float, default=None)
    _add_format(p)
    p.set_defaults(func=cmd_ortho)

    p = sub.add_parser("oracle", help="finite-section brute force")
    p.add_argument("--nu", type=float, default=1.0)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--skip-norm", action="store_true")
    p.add_argument("--neumann", type=float, default=None, metavar="LAMBDA",
                   help="run the Chebyshev Laplacian fixture instead")
    _add_format(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("asymptotics", help="small-nu expansions of x0 and the norm")
    p.add_argument("--nu", type=float, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        if isinstance(result, OutputRecord):
            _emit_record(result, args)
        else:
            _emit_table(*result, args)
    except (ConvergenceError, DivergentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
