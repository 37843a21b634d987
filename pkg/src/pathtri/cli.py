"""``pathtri`` command-line front end.

Exit status is 0 on success, 1 on a domain error (degenerate geometry,
invalid complex, stuck collapse) and 2 on I/O, JSON or schema errors.
Reports go to ``--output`` when given, otherwise to standard output.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io
from .collapse import (
    ConeSpec,
    SphereSpec,
    collapse_cone_to_path_triangle,
    collapse_sphere,
    elementary_collapse_sequence,
)
from .cycles import hull_cycle, triangle_cycles
from .errors import PathTriError
from .geometry import DEFAULT_SAMPLES
from .nerve import check_good_cover, maximal_nucleus_complex, nerve_at, nerve_census
from .presentation import build_homotopy_system, present_triangulation, realize_system
from .triangulation import DEFAULT_SEED, path_class_triangulate

SEED_ENV = "PATHTRI_SEED"


class UsageError(Exception):
    """Bad flag value detected after argument parsing (exit status 2)."""


def _floats(text: str, count: int, flag: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects {count} comma-separated numbers, got {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{flag} expects {count} comma-separated numbers, got {text!r}")
    return vals


def _seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _emit(args, command: str, payload: dict) -> None:
    text = io.dumps(io.report(command, payload))
    if getattr(args, "output", None):
        io.write_text(args.output, text)
    else:
        sys.stdout.write(text)


def _load_triangulation(args):
    return io.parse_triangulation(io.read_json(args.input))


def cmd_triangulate(args):
    pts, labels = io.parse_points(io.read_json(args.input))
    ct = path_class_triangulate(pts, args.class_reps, samples=args.samples, seed=_seed())
    t = ct.projection(0)
    _emit(args, "triangulate", io.triangulation_payload(t, ct if args.class_reps > 1 else None, labels))
    if args.svg:
        io.write_text(args.svg, io.render_triangulation(t, maximal_nucleus_complex(t)))


def cmd_cycles(args):
    t = _load_triangulation(args)
    cycles = [io.cycle_payload(c, "triangle") for c in triangle_cycles(t)]
    cycles.append(io.cycle_payload(hull_cycle(t), "hull"))
    _emit(args, "cycles", {"cycles": cycles, "count": len(cycles)})


def cmd_present(args):
    t = _load_triangulation(args)
    if args.system:
        s = build_homotopy_system(t)
        _emit(args, "present", io.system_payload(s, realize_system(s)))
        return
    g = args.generator if args.generator is not None else maximal_nucleus_complex(t).nucleus
    _emit(args, "present", io.presentation_payload(present_triangulation(t, g)))


def cmd_nerve(args):
    t = _load_triangulation(args)
    if args.vertex is not None:
        payload = io.nerve_payload(nerve_at(t, args.vertex))
    elif args.mnc:
        payload = io.nerve_payload(maximal_nucleus_complex(t))
    else:
        census = nerve_census(t)
        payload = {"nerves": [io.nerve_payload(nv) for nv in census], "nerve_count": len(census),
                   "mnc": maximal_nucleus_complex(t).nucleus}
    _emit(args, "nerve", payload)
    if args.svg:
        nv = nerve_at(t, args.vertex) if args.vertex is not None else maximal_nucleus_complex(t)
        io.write_text(args.svg, io.render_triangulation(t, nv))


def cmd_cover_check(args):
    t = _load_triangulation(args)
    _emit(args, "cover-check", check_good_cover(t).as_dict())


def cmd_collapse_cone(args):
    ax, ay = _floats(args.apex, 2, "--apex")
    x1, y1, x2, y2 = _floats(args.base, 4, "--base")
    spec = ConeSpec((ax, ay), (x1, y1), (x2, y2))
    trace, tri = collapse_cone_to_path_triangle(spec, args.fibers, args.samples)
    _emit(args, "collapse-cone", io.trace_payload(trace, tri))
    if args.svg:
        io.write_text(args.svg, io.render_trace(trace, tri))


def cmd_collapse_sphere(args):
    center = _floats(args.center, 2, "--center")
    angles = _floats(args.angles, 3, "--angles")
    spec = SphereSpec.from_angles(center, args.radius, angles)
    trace, tri = collapse_sphere(spec, args.fibers, args.samples)
    _emit(args, "collapse-sphere", io.trace_payload(trace, tri))
    if args.svg:
        io.write_text(args.svg, io.render_trace(trace, tri))


def cmd_collapse_seq(args):
    t = _load_triangulation(args)
    _emit(args, "collapse-seq", io.sequence_payload(elementary_collapse_sequence(t)))


def _positive(lo: int):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathtri", description="Path triangulations, cycles, nerves and collapses.")
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, func, help, tri_input=True):
        p = sub.add_parser(name, help=help)
        if tri_input:
            p.add_argument("--input", required=True, help="triangulation report (tri.json)")
        p.add_argument("--output", help="write the JSON report here instead of standard output")
        p.set_defaults(func=func)
        return p

    p = command("triangulate", cmd_triangulate, "triangulate a point set", tri_input=False)
    p.add_argument("--input", required=True, help="point-set JSON with a 'points' array")
    p.add_argument("--svg", help="also render the triangulation to this SVG file")
    p.add_argument("--samples", type=_positive(2), default=DEFAULT_SAMPLES)
    p.add_argument("--class-reps", type=_positive(1), default=1, help="paths per edge class")

    command("cycles", cmd_cycles, "list triangle-boundary and hull cycles")

    p = command("present", cmd_present, "free-group presentation of a triangulation")
    p.add_argument("--generator", type=int, help="generator vertex (default: the maximal nucleus)")
    p.add_argument("--system", action="store_true", help="full homotopy system with star presentations")

    p = command("nerve", cmd_nerve, "nerve census or a single nerve")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--vertex", type=int)
    group.add_argument("--mnc", action="store_true", help="maximal nucleus complex only")
    p.add_argument("--svg", help="render with the selected nucleus highlighted")

    command("cover-check", cmd_cover_check, "good-cover check of the triangle cover")

    p = command("collapse-cone", cmd_collapse_cone, "collapse a cone silhouette onto a path triangle",
                tri_input=False)
    p.add_argument("--apex", required=True, metavar="X,Y")
    p.add_argument("--base", required=True, metavar="X1,Y1,X2,Y2")
    p.add_argument("--fibers", required=True, type=_positive(2))
    p.add_argument("--samples", type=_positive(2), default=DEFAULT_SAMPLES)
    p.add_argument("--svg")

    p = command("collapse-sphere", cmd_collapse_sphere, "collapse a ball slice onto a round path triangle",
                tri_input=False)
    p.add_argument("--center", required=True, metavar="X,Y")
    p.add_argument("--radius", required=True, type=float)
    p.add_argument("--angles", required=True, metavar="A1,A2,A3", help="vertex angles in degrees")
    p.add_argument("--fibers", required=True, type=_positive(2))
    p.add_argument("--samples", type=_positive(3), default=DEFAULT_SAMPLES)
    p.add_argument("--svg")

    command("collapse-seq", cmd_collapse_seq, "greedy elementary collapse sequence")
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (io.SchemaError, UsageError) as exc:
        print(f"pathtri: error: {exc}", file=sys.stderr)
        return 2
    except (PathTriError, ValueError, IndexError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pathtri: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
