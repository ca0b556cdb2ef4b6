"""Command-line surface: decompose, simulate, report, grid, catalog.

Documents are JSON with a fixed key schema or CSV with '.' decimals, ','
separators and '\\n' line endings; floats are serialized with shortest
round-trip precision so parse(emit(x)) == x. All outputs are deterministic
for identical arguments.

Exit codes: 0 success, 1 usage or input error, 2 inconsistent decomposition
request, 3 numerical blow-up.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Iterable

from . import catalog, dissipation, dynamics, field, linear
from .core import DiffusionParams, Matrix2, Point2, SystemSpec
from .errors import (
    AodecompError,
    AsymmetricU,
    EquilibriumPoint,
    MissingPotential,
    NonFinite,
    SingularMatrix,
    UnknownSystem,
)
from .tolerances import LYAPUNOV_RESIDUAL_TOL, master_tol

# Flags whose value is a comma list that may begin with a negative number;
# their values are folded into --flag=value before argparse sees them.
_COMMA_FLAGS = {"--matrix", "--d", "--at", "--x0", "--grid", "--q"}

QUANTITIES = (
    "potential",
    "vector_field",
    "divergence",
    "dissipation_power",
    "phi_rate",
    "criteria_agreement",
)


class _UsageError(Exception):
    """Invalid arguments or input values; mapped to exit code 1."""


class _InconsistentRequest(Exception):
    """Decomposition request with no valid gyration; mapped to exit code 2."""


@dataclass(frozen=True)
class GridRequest:
    """Validated rectangular sampling request; rows run y-outer, x-inner."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int
    ny: int
    quantity: str | None = None

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise _UsageError(
                f"grid bounds must satisfy xmin < xmax and ymin < ymax, got "
                f"{self.xmin},{self.xmax},{self.ymin},{self.ymax}"
            )
        if self.nx < 2 or self.ny < 2:
            raise _UsageError(f"grid needs nx, ny >= 2, got nx={self.nx}, ny={self.ny}")

    def points(self) -> list[Point2]:
        xs = [self.xmin + (self.xmax - self.xmin) * i / (self.nx - 1) for i in range(self.nx)]
        ys = [self.ymin + (self.ymax - self.ymin) * j / (self.ny - 1) for j in range(self.ny)]
        return [Point2(x, y) for y in ys for x in xs]


def _parse_floats(text: str, n: int, what: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise _UsageError(f"{what} expects {n} comma-separated values, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise _UsageError(f"could not parse {what} {text!r}: {exc}") from None


def _parse_matrix(text: str) -> Matrix2:
    a11, a12, a21, a22 = _parse_floats(text, 4, "--matrix")
    try:
        return Matrix2(a11, a12, a21, a22)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _parse_point(text: str, what: str) -> Point2:
    x1, x2 = _parse_floats(text, 2, what)
    try:
        return Point2(x1, x2)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _parse_diffusion(text: str) -> DiffusionParams:
    d11, d12, d22 = _parse_floats(text, 3, "--d")
    try:
        return DiffusionParams(d11, d12, d22)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _parse_grid(text: str, quantity: str | None = None) -> GridRequest:
    parts = text.split(",")
    if len(parts) != 6:
        raise _UsageError(f"--grid expects xmin,xmax,ymin,ymax,nx,ny, got {text!r}")
    try:
        xmin, xmax, ymin, ymax = (float(p) for p in parts[:4])
        nx, ny = int(parts[4]), int(parts[5])
    except ValueError as exc:
        raise _UsageError(f"could not parse --grid {text!r}: {exc}") from None
    return GridRequest(xmin, xmax, ymin, ymax, nx, ny, quantity)


def _fold_comma_values(argv: list[str]) -> list[str]:
    """Rewrite ['--matrix', '-1,0,0,-2'] as ['--matrix=-1,0,0,-2'].

    argparse would otherwise read a value starting with '-' as an option.
    """
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in _COMMA_FLAGS:
            value = next(it, None)
            if value is None:
                out.append(token)
            else:
                out.append(f"{token}={value}")
        else:
            out.append(token)
    return out


def _matrix_doc(m: Matrix2) -> list[list[float]]:
    return m.rows()


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _emit_json(doc: dict, out: str | None) -> None:
    _write_output(json.dumps(doc, indent=2) + "\n", out)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        # plain-float repr is the shortest round-trip form (numpy scalars
        # would otherwise repr as np.float64(...)); adding 0.0 folds -0.0
        return repr(float(value) + 0.0)
    return str(value)


def _emit_csv(header: list[str], rows: Iterable[Iterable], out: str | None, trailer: str | None = None) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if trailer is not None:
        text += trailer + "\n"
    _write_output(text, out)


def _flatten_for_csv(doc: dict, prefix: str = "") -> list[tuple[str, str]]:
    rows: list[tuple[str, str]] = []
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten_for_csv(value, prefix=f"{name}."))
        elif isinstance(value, list):
            flat: list = []

            def _walk(item):
                if isinstance(item, list):
                    for sub in item:
                        _walk(sub)
                else:
                    flat.append(item)

            _walk(value)
            rows.append((name, ";".join(_csv_cell(v) for v in flat)))
        else:
            rows.append((name, _csv_cell(value)))
    return rows


def _get_system(args) -> catalog.CatalogEntry:
    try:
        return catalog.get(args.system)
    except UnknownSystem as exc:
        raise _UsageError(str(exc)) from None


def _pointwise_doc(system: SystemSpec, at: Point2, name: str) -> dict:
    try:
        pd = field.point_decomposition(system, at)
    except (MissingPotential, EquilibriumPoint) as exc:
        raise _UsageError(str(exc)) from None
    s, t = pd.friction, pd.transverse
    fv, gv = pd.drift, pd.potential_gradient
    frame_residual = max(
        abs(s * fv.x1 + t * fv.x2 + gv.x1),
        abs(-t * fv.x1 + s * fv.x2 + gv.x2),
    )
    return {
        "kind": "point_decomposition",
        "system": name,
        "at": [at.x1, at.x2],
        "friction": s,
        "transverse": t,
        "diffusion": pd.diffusion,
        "gyration": pd.gyration,
        "singular_on_isopotential": pd.singular_on_isopotential,
        "drift": [fv.x1, fv.x2],
        "potential_gradient": [gv.x1, gv.x2],
        "frame_residual": frame_residual,
    }


def _linear_doc(name: str, dec: linear.LinearDecomposition, branch: str, note: str) -> dict:
    spectral = linear.classify_spectrum(dec.a)
    u = dec.potential_matrix
    probes = (Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(1.0, 1.0), Point2(-1.0, 0.5))
    reconstruction = max(
        (linear.reconstruct_drift(dec, p) - dec.a.apply(p)).norm() for p in probes
    )
    return {
        "kind": "linear_decomposition",
        "system": name,
        "matrix": _matrix_doc(dec.a),
        "spectral_class": {"kind": spectral.kind, "values": list(spectral.values)},
        "gyration_branch": branch,
        "gyration_note": note,
        "diffusion": _matrix_doc(dec.diffusion.matrix()),
        "gyration": dec.gyration.q,
        "friction": _matrix_doc(dec.friction),
        "transverse": dec.transverse.q,
        "potential_matrix": _matrix_doc(u),
        "potential_coefficients": {
            "x1^2": 0.5 * u.a11,
            "x1*x2": 0.5 * (u.a12 + u.a21),
            "x2^2": 0.5 * u.a22,
        },
        "residuals": {
            "gyration_constraint": linear.lyapunov_equation_residual(
                dec.a, dec.diffusion, dec.gyration
            ),
            "potential_asymmetry": dec.potential_asymmetry,
            "drift_reconstruction": reconstruction,
        },
    }


def cmd_decompose(args) -> int:
    if args.system is None and args.matrix is None:
        raise _UsageError("decompose needs --system NAME or --matrix a11,a12,a21,a22")

    if args.system is not None:
        entry = _get_system(args)
        if args.at is not None:
            doc = _pointwise_doc(entry.system, _parse_point(args.at, "--at"), entry.name)
        elif entry.decomposition is not None:
            branch = linear.solve_gyration(entry.decomposition.a, entry.decomposition.diffusion)
            doc = _linear_doc(entry.name, entry.decomposition, branch.branch, branch.note)
        else:
            raise _UsageError(
                f"system {args.system!r} is not linear; pointwise decomposition needs --at x1,x2"
            )
    else:
        a = _parse_matrix(args.matrix)
        d = _parse_diffusion(args.d) if args.d is not None else DiffusionParams.identity()
        sol = linear.solve_gyration(a, d)
        if sol.branch == linear.INCONSISTENT:
            raise _InconsistentRequest(
                f"no gyration value satisfies the constraint for this diffusion: "
                f"{sol.note}; unmatched right-hand side {sol.residual!r}"
            )
        q = sol.q
        if args.q is not None:
            q = float(args.q)
            residual = linear.lyapunov_equation_residual(a, d, q)
            if residual > LYAPUNOV_RESIDUAL_TOL * (1.0 + a.max_abs()) * (1.0 + d.max_abs()):
                raise _UsageError(
                    f"--q {args.q} violates the gyration constraint "
                    f"(residual {residual!r}); the {sol.branch} solution is {sol.q!r}"
                )
        try:
            dec = linear.assemble_decomposition(a, d, q)
        except (SingularMatrix, AsymmetricU) as exc:
            raise _UsageError(str(exc)) from None
        doc = _linear_doc("custom", dec, sol.branch, sol.note)
        if args.at is not None:
            system = SystemSpec.linear("custom", a, potential=dec.potential())
            doc = _pointwise_doc(system, _parse_point(args.at, "--at"), "custom")

    if args.format == "json":
        _emit_json(doc, args.out)
    else:
        _emit_csv(["key", "value"], _flatten_for_csv(doc), args.out)
    return 0


def _power_at(entry: catalog.CatalogEntry, p: Point2):
    rep = dissipation.report(
        entry.system,
        p,
        s_matrix=entry.decomposition.friction if entry.decomposition is not None else None,
    )
    return rep


def cmd_simulate(args) -> int:
    entry = _get_system(args)
    x0 = _parse_point(args.x0, "--x0")
    dt, t_end = args.dt, args.t_end
    if dt <= 0.0 or t_end < dt:
        raise _UsageError(f"need dt > 0 and t_end >= dt, got dt={dt!r}, t_end={t_end!r}")

    if args.polar:
        if entry.name != catalog.HOPF:
            raise _UsageError(f"--polar applies only to {catalog.HOPF!r}")
        r0 = x0.norm()
        if r0 <= 0.0:
            raise _UsageError("--polar needs a nonzero initial state")
        traj = dynamics.integrate_polar(r0, math.atan2(x0.x2, x0.x1), dt=dt, t_end=t_end)
        rows = ((traj.t[i], traj.x[i, 0], traj.x[i, 1]) for i in range(len(traj)))
        _emit_csv(["t", "r", "theta"], rows, args.out)
        return 0

    header = ["t", "x1", "x2", "phi", "phi_rate", "h_p", "div_f"]

    def rows_of(traj: dynamics.Trajectory):
        for i in range(len(traj)):
            yield (
                traj.t[i],
                traj.x[i, 0],
                traj.x[i, 1],
                traj.phi[i] if traj.phi is not None else None,
                traj.phi_rate[i] if traj.phi_rate is not None else None,
                traj.h_p[i] if traj.h_p is not None else None,
                traj.div_f[i],
            )

    try:
        traj = dynamics.integrate(entry.system, x0, dt=dt, t_end=t_end)
    except NonFinite as exc:
        partial = exc.trajectory
        _emit_csv(header, rows_of(partial), args.out, trailer=f"# truncated: {exc}")
        print(f"aodecomp: {exc}", file=sys.stderr)
        return 3
    _emit_csv(header, rows_of(traj), args.out)
    return 0


def _report_doc(entry: catalog.CatalogEntry, points: list[Point2]) -> dict:
    if entry.system.potential is None:
        raise _UsageError(
            f"system {entry.name!r} has no potential; dissipation power is unavailable"
        )
    docs = []
    disagreements = 0
    for p in points:
        rep = _power_at(entry, p)
        if rep.agree is False:
            disagreements += 1
        docs.append(
            {
                "at": [p.x1, p.x2],
                "h_p": rep.h_p,
                "div_f": rep.div_f,
                "phi_rate": rep.phi_rate,
                "identity_gap": rep.identity_gap,
                "verdict_power": rep.verdict_power,
                "verdict_divergence": rep.verdict_divergence,
                "agree": rep.agree,
            }
        )
    return {
        "kind": "dissipation_report",
        "system": entry.name,
        "zero_tol": master_tol(),
        "points": docs,
        "summary": {"points": len(docs), "disagreements": disagreements},
    }


def cmd_report(args) -> int:
    entry = _get_system(args)
    points: list[Point2] = []
    if args.at:
        points.extend(_parse_point(text, "--at") for text in args.at)
    if args.grid is not None:
        points.extend(_parse_grid(args.grid).points())
    if not points:
        raise _UsageError("report needs at least one --at x1,x2 or a --grid")
    doc = _report_doc(entry, points)
    if args.format == "json":
        _emit_json(doc, args.out)
        return 0
    header = [
        "x1", "x2", "h_p", "div_f", "phi_rate", "identity_gap",
        "verdict_power", "verdict_divergence", "agree",
    ]
    rows = (
        (
            p["at"][0], p["at"][1], p["h_p"], p["div_f"], p["phi_rate"],
            p["identity_gap"], p["verdict_power"], p["verdict_divergence"], p["agree"],
        )
        for p in doc["points"]
    )
    _emit_csv(header, rows, args.out)
    return 0


def cmd_grid(args) -> int:
    entry = _get_system(args)
    request = _parse_grid(args.grid, args.quantity)
    points = request.points()
    quantity = request.quantity
    needs_potential = quantity in ("potential", "dissipation_power", "phi_rate", "criteria_agreement")
    if needs_potential and entry.system.potential is None:
        raise _UsageError(f"quantity {quantity!r} needs a potential, which {entry.name!r} lacks")

    if quantity == "vector_field":
        rows = []
        for p in points:
            v = entry.system.field.evaluate(p)
            rows.append((p.x1, p.x2, v.x1, v.x2))
        _emit_csv(["x1", "x2", "f1", "f2"], rows, args.out)
        return 0

    def value_at(p: Point2) -> float:
        if quantity == "potential":
            return entry.system.potential.evaluate(p)
        if quantity == "divergence":
            return dissipation.divergence(entry.system, p)
        if quantity == "phi_rate":
            return dissipation.phi_rate(entry.system, p)
        rep = _power_at(entry, p)
        if quantity == "dissipation_power":
            return rep.h_p
        return 1.0 if rep.agree else 0.0  # criteria_agreement

    _emit_csv(
        ["x1", "x2", "value"],
        ((p.x1, p.x2, value_at(p)) for p in points),
        args.out,
    )
    return 0


def cmd_catalog(args) -> int:
    systems = []
    for name in catalog.list_systems():
        entry = catalog.get(name)
        systems.append(
            {
                "name": name,
                "kind": "linear" if entry.system.is_linear else "analytic",
                "provenance": entry.provenance,
            }
        )
    if args.format == "json":
        _emit_json({"kind": "catalog", "systems": systems}, args.out)
        return 0
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["name", "kind", "provenance"])
    for s in systems:
        writer.writerow([s["name"], s["kind"], s["provenance"]])
    _write_output(buffer.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aodecomp",
        description="Decompose planar systems and audit their dissipation criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p_dec = sub.add_parser("decompose", help="matrix or pointwise decomposition")
    p_dec.add_argument("--system", default=None, help="catalog system name")
    p_dec.add_argument("--matrix", default=None, help="a11,a12,a21,a22 (row-major)")
    p_dec.add_argument("--d", default=None, help="d11,d12,d22 diffusion entries")
    p_dec.add_argument("--q", default=None, help="gyration coefficient override")
    p_dec.add_argument("--at", default=None, help="x1,x2 for a pointwise decomposition")
    add_common(p_dec)
    p_dec.set_defaults(func=cmd_decompose)

    p_sim = sub.add_parser("simulate", help="integrate a trajectory to CSV")
    p_sim.add_argument("--system", required=True)
    p_sim.add_argument("--x0", required=True, help="x1,x2 initial state")
    p_sim.add_argument("--dt", type=float, default=dynamics.DEFAULT_DT)
    p_sim.add_argument("--t-end", type=float, default=10.0, dest="t_end")
    p_sim.add_argument("--polar", action="store_true", help="integrate the builtin polar form")
    add_common(p_sim, fmt=False)
    p_sim.set_defaults(func=cmd_simulate)

    p_rep = sub.add_parser("report", help="dissipation criteria at points or on a grid")
    p_rep.add_argument("--system", required=True)
    p_rep.add_argument("--at", action="append", default=None, help="x1,x2 (repeatable)")
    p_rep.add_argument("--grid", default=None, help="xmin,xmax,ymin,ymax,nx,ny")
    add_common(p_rep)
    p_rep.set_defaults(func=cmd_report)

    p_grd = sub.add_parser("grid", help="sample a quantity over a rectangular grid")
    p_grd.add_argument("--system", required=True)
    p_grd.add_argument("--grid", required=True, help="xmin,xmax,ymin,ymax,nx,ny")
    p_grd.add_argument("--quantity", required=True, choices=QUANTITIES)
    add_common(p_grd, fmt=False)
    p_grd.set_defaults(func=cmd_grid)

    p_cat = sub.add_parser("catalog", help="list builtin systems")
    add_common(p_cat)
    p_cat.set_defaults(func=cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_fold_comma_values(argv))
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 for --help
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"aodecomp: {exc}", file=sys.stderr)
        return 1
    except _InconsistentRequest as exc:
        print(f"aodecomp: {exc}", file=sys.stderr)
        return 2
    except AodecompError as exc:
        print(f"aodecomp: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"aodecomp: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
