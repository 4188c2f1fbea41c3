"""Command-line front end: parse disk systems, run decisions, emit results.

File formats
------------
CSV: one disk per line, ``c_1,...,c_d,r``; dimension inferred from the
first line.  JSON mirror: ``{"dimension": d, "disks": [[c_1,...,c_d,r]]}``.
Filtration text output: one simplex per line, ``scale v_1 ... v_k``.

Exit codes: 0 success/affirmative, 1 negative decision, 2 usage error,
3 degenerate-configuration warning escalated under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .aabb import Box, aabb_minimal
from .cech import cech_scale, is_cech_system, rips_scale
from .filtration import build_filtration
from .geometry import DEFAULT_TOL, Disk, DiskSystem, GeometryError, candidate_poles, contains_all_batch, preprocess

SCHEMA = "cech-kit/1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Parsing and serialization
# ---------------------------------------------------------------------------


def parse_disk_system(text: str, format: str = "csv") -> DiskSystem:
    """Parse a disk system from CSV or JSON text."""
    if format == "csv":
        return _parse_csv(text)
    if format == "json":
        return _parse_json(text)
    raise ParseError(f"unknown format {format!r}")


def _parse_csv(text: str) -> DiskSystem:
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [float(v) for v in line.split(",")]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: malformed number ({exc})") from None
        if len(values) < 2:
            raise ParseError(f"line {lineno}: need at least one coordinate and a radius")
        if dim is None:
            dim = len(values) - 1
        elif len(values) - 1 != dim:
            raise ParseError(
                f"line {lineno}: expected {dim} coordinates + radius, got {len(values) - 1}"
            )
        if values[-1] <= 0:
            raise ParseError(f"line {lineno}: non-positive radius {values[-1]}")
        rows.append(values)
    if not rows:
        raise ParseError("no disks in input")
    return DiskSystem(tuple(Disk(np.array(r[:-1]), r[-1]) for r in rows))


def _parse_json(text: str) -> DiskSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    try:
        dim = int(data["dimension"])
        rows = data["disks"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"JSON must carry 'dimension' and 'disks': {exc}") from None
    disks = []
    for i, row in enumerate(rows, start=1):
        if len(row) != dim + 1:
            raise ParseError(f"disk {i}: expected {dim} coordinates + radius")
        if row[-1] <= 0:
            raise ParseError(f"disk {i}: non-positive radius {row[-1]}")
        disks.append(Disk(np.array(row[:-1], dtype=float), float(row[-1])))
    if not disks:
        raise ParseError("no disks in input")
    return DiskSystem(tuple(disks))


def serialize_disk_system(M: DiskSystem, format: str = "csv") -> str:
    if format == "csv":
        lines = [
            ",".join(repr(float(v)) for v in [*disk.center, disk.radius])
            for disk in M.disks
        ]
        return "\n".join(lines) + "\n"
    if format == "json":
        return json.dumps(
            {
                "dimension": M.dimension,
                "disks": [[*map(float, d.center), float(d.radius)] for d in M.disks],
            }
        )
    raise ParseError(f"unknown format {format!r}")


def _vec(v) -> list[float]:
    return [float(x) for x in v]


def _fmt_vec(v) -> str:
    return "(" + ",".join(f"{float(x):.9g}" for x in v) + ")"


def _box_payload(box: Box) -> list[list[float]]:
    return [[float(a), float(b)] for a, b in box.intervals]


def _fmt_box(box: Box) -> str:
    return "x".join(f"[{a:.9g},{b:.9g}]" for a, b in box.intervals)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _load(args) -> DiskSystem:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    fmt = args.input_format
    if fmt == "auto":
        fmt = "json" if args.input.endswith(".json") else "csv"
    system = parse_disk_system(text, fmt)
    if args.preprocess:
        system, _ = preprocess(system, args.tol)
    return system


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}))
    else:
        print(text)


def _finish(args, negative: bool, degenerate: bool) -> int:
    if degenerate:
        print("warning: degenerate configuration, results from perturbed centers", file=sys.stderr)
        if args.strict:
            return EXIT_DEGENERATE
    return EXIT_NEGATIVE if negative else EXIT_OK


def _cmd_check(args) -> int:
    M = _load(args)
    decision = is_cech_system(M, args.tol)
    if decision.is_cech:
        text = f"TRUE witness={_fmt_vec(decision.witness)}"
    else:
        text = "FALSE"
    payload = {
        "command": "check",
        "is_cech": decision.is_cech,
        "witness": _vec(decision.witness) if decision.witness is not None else None,
        "generating_subset": list(decision.generating_subset or []) or None,
        "degeneracy_warning": decision.degeneracy_warning,
    }
    _emit(args, payload, text)
    return _finish(args, negative=not decision.is_cech, degenerate=decision.degeneracy_warning)


def _cmd_rips_scale(args) -> int:
    M = _load(args)
    nu = rips_scale(M)
    _emit(args, {"command": "rips-scale", "rips_scale": nu}, f"{nu:.12g}")
    return EXIT_OK


def _cmd_cech_scale(args) -> int:
    M = _load(args)
    report = cech_scale(M, args.eta, args.tol)
    text = (
        f"rips={report.rips_scale:.12g} cech={report.cech_scale:.12g} "
        f"bracket=[{report.bracket[0]:.12g},{report.bracket[1]:.12g}] "
        f"iterations={report.iterations}"
    )
    payload = {
        "command": "cech-scale",
        "rips_scale": report.rips_scale,
        "cech_scale": report.cech_scale,
        "eta": report.eta,
        "bracket": [report.bracket[0], report.bracket[1]],
        "iterations": report.iterations,
        "witness": _vec(report.witness) if report.witness is not None else None,
        "degeneracy_warning": report.degeneracy_warning,
    }
    _emit(args, payload, text)
    return _finish(args, negative=False, degenerate=report.degeneracy_warning)


def _cmd_aabb(args) -> int:
    M = _load(args)
    box = aabb_minimal(M, args.tol)
    if box is None:
        _emit(args, {"command": "aabb", "box": None}, "NO-INTERSECTION")
        return EXIT_NEGATIVE
    payload = {
        "command": "aabb",
        "box": _box_payload(box),
        "degeneracy_warning": box.degeneracy_warning,
    }
    _emit(args, payload, _fmt_box(box))
    return _finish(args, negative=False, degenerate=box.degeneracy_warning)


def _cmd_filtration(args) -> int:
    M = _load(args)
    max_dim = min(args.max_dim, len(M) - 1)
    filtration = build_filtration(M, max_dim, args.eta, args.tol)
    if args.format == "json":
        payload = {
            "command": "filtration",
            "max_dimension": filtration.max_dimension,
            "simplices": [
                {"scale": s.scale, "vertices": list(s.vertices)}
                for s in filtration.simplices
            ],
        }
        print(json.dumps({"schema": SCHEMA, **payload}))
    else:
        for s in filtration.simplices:
            print(f"{s.scale:.12g} " + " ".join(str(v) for v in s.vertices))
    return EXIT_OK


def _cmd_plot(args) -> int:
    M = _load(args)
    if M.dimension != 2:
        print("error: plot requires a 2-dimensional disk system", file=sys.stderr)
        return EXIT_USAGE
    svg = render_svg(M, args.tol)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        print(svg)
    return EXIT_OK


def render_svg(M: DiskSystem, tol: float = DEFAULT_TOL, size: int = 640) -> str:
    """SVG 1.1 picture of a 2D system: disks, retained poles, AABB."""
    lo = np.min(M.centers - M.radii[:, None], axis=0)
    hi = np.max(M.centers + M.radii[:, None], axis=0)
    span = float(np.max(hi - lo))
    pad = 0.05 * span
    lo, span = lo - pad, span + 2 * pad
    scale = size / span

    def sx(x):
        return (x - lo[0]) * scale

    def sy(y):  # flip y for screen coordinates
        return size - (y - lo[1]) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">'
    ]
    for disk in M.disks:
        parts.append(
            f'<circle cx="{sx(disk.center[0]):.2f}" cy="{sy(disk.center[1]):.2f}" '
            f'r="{disk.radius * scale:.2f}" fill="steelblue" fill-opacity="0.15" '
            f'stroke="steelblue" stroke-width="1.5"/>'
        )
    box = aabb_minimal(M, tol)
    if box is not None:
        w = (box.upper[0] - box.lower[0]) * scale
        h = (box.upper[1] - box.lower[1]) * scale
        parts.append(
            f'<rect x="{sx(box.lower[0]):.2f}" y="{sy(box.upper[1]):.2f}" '
            f'width="{max(w, 1.0):.2f}" height="{max(h, 1.0):.2f}" '
            f'fill="none" stroke="crimson" stroke-width="1.5" stroke-dasharray="6 3"/>'
        )
    for _, entries, _ in candidate_poles(M, tol):
        if not entries:
            continue
        points = np.array([p.point for p in entries])
        inside = contains_all_batch(M, points, tol)
        for keep, pole in zip(inside, entries):
            if keep:
                parts.append(
                    f'<circle cx="{sx(pole.point[0]):.2f}" cy="{sy(pole.point[1]):.2f}" '
                    f'r="3" fill="crimson"/>'
                )
    parts.append("</svg>")
    return "\n".join(parts)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cech-kit",
        description="Intersection tests, Cech scales, AABBs and filtrations of disk systems",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="disk system file (CSV or JSON)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="geometric tolerance")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument(
        "--input-format", choices=["auto", "csv", "json"], default="auto"
    )
    common.add_argument(
        "--preprocess", action="store_true",
        help="drop disks that entirely contain another disk; dedup identical",
    )
    common.add_argument(
        "--strict", action="store_true",
        help="exit 3 when results come from a perturbed degenerate configuration",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="decide common intersection")
    p.set_defaults(func=_cmd_check)
    p = sub.add_parser("rips-scale", parents=[common], help="Vietoris-Rips scale")
    p.set_defaults(func=_cmd_rips_scale)
    p = sub.add_parser("cech-scale", parents=[common], help="Cech scale by bisection")
    p.add_argument("--eta", type=float, default=1e-6, help="bisection precision")
    p.set_defaults(func=_cmd_cech_scale)
    p = sub.add_parser("aabb", parents=[common], help="minimal AABB of the intersection")
    p.set_defaults(func=_cmd_aabb)
    p = sub.add_parser("filtration", parents=[common], help="filtered Cech complex")
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--eta", type=float, default=1e-6, help="per-simplex scale precision")
    p.set_defaults(func=_cmd_filtration)
    p = sub.add_parser("plot", parents=[common], help="SVG plot (2D only)")
    p.add_argument("--output", help="write SVG here instead of stdout")
    p.set_defaults(func=_cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ParseError, GeometryError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
