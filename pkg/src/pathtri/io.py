"""Canonical JSON reports, input schemas and deterministic SVG rendering."""

from __future__ import annotations

import json
import math
import re

import jsonschema
import numpy as np

from .collapse import CollapseSequence, CollapseTrace
from .cycles import PathCycle
from .geometry import PathTriangle, SampledPath
from .nerve import Nerve
from .presentation import HomotopySystem, Presentation, RealizationReport
from .triangulation import ClassTriangulation, Triangulation

SCHEMA_VERSION = "1.0"
DECIMALS = 6

_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

POINTS_SCHEMA = {
    "type": "object",
    "required": ["points"],
    "properties": {
        "points": {"type": "array", "items": _PAIR},
        "labels": {"type": "array", "items": {"type": "string"}},
    },
}

TRIANGULATION_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command", "payload"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"const": "triangulate"},
        "payload": {
            "type": "object",
            "required": ["points", "faces", "edges", "samples", "fibers"],
            "properties": {
                "points": {"type": "array", "items": _PAIR},
                "faces": {"type": "array", "items": {
                    "type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3, "maxItems": 3}},
                "edges": {"type": "array", "items": {
                    "type": "object",
                    "required": ["u", "v", "samples"],
                    "properties": {
                        "u": {"type": "integer", "minimum": 0},
                        "v": {"type": "integer", "minimum": 0},
                        "samples": {"type": "array", "items": _PAIR, "minItems": 2},
                    },
                }},
                "samples": {"type": "integer", "minimum": 2},
                "fibers": {"type": "integer", "minimum": 1},
            },
        },
    },
}


class SchemaError(Exception):
    """Input is not valid JSON or does not match the expected schema."""


# --- canonical JSON ---------------------------------------------------------------

_MARK = re.compile(r'"\$F:(-?[0-9]+\.[0-9]+)\$"')


def _fixed(x: float) -> str:
    s = f"{x:.{DECIMALS}f}"
    return "0." + "0" * DECIMALS if s == "-0." + "0" * DECIMALS else s


def _mark_floats(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, np.integer, str)):
        return int(obj) if isinstance(obj, np.integer) else obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return f"$F:{_fixed(x)}$"
    if isinstance(obj, np.ndarray):
        return _mark_floats(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _mark_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark_floats(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Sorted keys, two-space indent, floats fixed to six decimals, non-finite as null."""
    text = json.dumps(_mark_floats(obj), sort_keys=True, indent=2, ensure_ascii=True)
    return _MARK.sub(r"\1", text) + "\n"


def report(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def _validate(doc, schema):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"schema violation at {where}: {exc.message}") from None


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None


def parse_points(doc) -> tuple[np.ndarray, list[str] | None]:
    _validate(doc, POINTS_SCHEMA)
    labels = doc.get("labels")
    if labels is not None and len(labels) != len(doc["points"]):
        raise SchemaError("labels must align with points")
    return np.array(doc["points"], dtype=np.float64).reshape(-1, 2), labels


# --- payload builders ---------------------------------------------------------------

def path_payload(h: SampledPath) -> dict:
    return {"u": h.start, "v": h.end, "samples": h.samples}


def triangulation_payload(t: Triangulation, classes: ClassTriangulation | None = None,
                          labels: list[str] | None = None) -> dict:
    out = {
        "points": t.points,
        "faces": [list(f) for f in t.faces],
        "edges": [path_payload(h) for h in t.edges.values()],
        "samples": t.samples,
        "fibers": t.fibers,
        "counts": {"vertices": t.n_vertices, "edges": len(t.edges), "triangles": len(t.faces)},
    }
    if labels is not None:
        out["labels"] = list(labels)
    if classes is not None:
        out["classes"] = [
            {"u": u, "v": v, "representatives": [h.samples for h in c.representatives]}
            for (u, v), c in classes.classes.items()
        ]
    return out


def parse_triangulation(doc) -> Triangulation:
    """Rebuild a triangulation report, re-checking every invariant."""
    _validate(doc, TRIANGULATION_SCHEMA)
    p = doc["payload"]
    pts = np.array(p["points"], dtype=np.float64).reshape(-1, 2)
    edges = {}
    for e in p["edges"]:
        h = SampledPath(e["u"], e["v"], np.array(e["samples"], dtype=np.float64))
        if h.start > h.end:
            h = h.reversed()
        key = (h.start, h.end)
        if key in edges:
            raise SchemaError(f"edge {key} listed twice")
        edges[key] = h
    return Triangulation(pts, [tuple(f) for f in p["faces"]], edges, samples=p["samples"], fibers=p["fibers"])


def cycle_payload(c: PathCycle, kind: str) -> dict:
    return {"kind": kind, "length": c.n, "vertices": list(c.vertices)}


def presentation_payload(p: Presentation) -> dict:
    return {
        "basis": list(p.basis),
        "relations": [{"vertex": v, "word": [list(term) for term in w]} for v, w in p.relations.items()],
    }


def system_payload(s: HomotopySystem, r: RealizationReport) -> dict:
    return {
        "full": presentation_payload(s.full),
        "stars": [{"center": v, **presentation_payload(p)} for v, p in s.stars.items()],
        "realization": {
            "ok": r.ok,
            "vertices_hit": r.vertices_hit,
            "vertex_count": r.vertex_count,
            "cycles": len(r.cycles),
            "triangle_count": r.triangle_count,
            "subcomplexes": r.subcomplexes,
            "subcomplex_cycles": r.subcomplex_cycles,
        },
    }


def nerve_payload(nv: Nerve) -> dict:
    return {
        "nucleus": nv.nucleus,
        "size": len(nv),
        "faces": [list(nv.carrier.faces[i]) for i in nv.faces],
        "common_vertices": sorted(nv.common_vertices()),
    }


def path_triangle_payload(t: PathTriangle) -> dict:
    return {"kind": t.kind, "vertices": list(t.vertices), "paths": [path_payload(h) for h in t.paths],
            "points": t.points}


def trace_payload(trace: CollapseTrace, tri: PathTriangle | None = None) -> dict:
    out = {
        "fibers": [{"start": list(f.start), "end": list(f.end), "station": f.station} for f in trace.fibers],
        "fiber_count": len(trace),
        "residual": path_triangle_payload(trace.residual),
        "hausdorff_bound": trace.hausdorff_bound,
        "base_length": trace.base_length,
        "spacing": trace.spacing,
    }
    if tri is not None:
        out["path_triangle"] = path_triangle_payload(tri)
    return out


def sequence_payload(seq: CollapseSequence) -> dict:
    return {
        "steps": [{"stage": s.stage, "kind": s.kind, "removed": list(s.removed), "free": list(s.free)}
                  for s in seq.steps],
        "terminal": seq.terminal,
        "step_count": len(seq),
    }


# --- SVG ----------------------------------------------------------------------------

FACE_FILL = "#dce6f2"
NUCLEUS_FILL = "#f6c9a8"
STROKE = "#1f3b5c"
FIBER = "#b03a2e"


class _Canvas:
    """Maps plane coordinates to SVG user space with y flipped and 5% padding."""

    def __init__(self, pts, width: int = 800):
        pts = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        pad = 0.05 * span
        self.lo, self.hi = lo - pad, hi + pad
        size = self.hi - self.lo
        self.width = width
        self.height = max(1, int(round(width * size[1] / size[0])))
        self.scale = width / size[0]
        self.unit = float(max(size)) / 200.0
        self.items: list[str] = []

    def xy(self, p) -> str:
        x = (p[0] - self.lo[0]) * self.scale
        y = (self.hi[1] - p[1]) * self.scale
        return f"{_fixed(x)},{_fixed(y)}"

    def polygon(self, pts, fill, stroke="none"):
        self.items.append(f'<polygon points="{" ".join(self.xy(p) for p in pts)}" fill="{fill}" stroke="{stroke}"/>')

    def polyline(self, pts, stroke, width):
        self.items.append(f'<polyline points="{" ".join(self.xy(p) for p in pts)}" fill="none" '
                          f'stroke="{stroke}" stroke-width="{_fixed(width)}"/>')

    def dot(self, p, r, fill):
        x, y = self.xy(p).split(",")
        self.items.append(f'<circle cx="{x}" cy="{y}" r="{_fixed(r)}" fill="{fill}"/>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
                f'viewBox="0 0 {self.width} {self.height}">')
        return "\n".join([head, *self.items, "</svg>"]) + "\n"


def render_triangulation(t: Triangulation, nucleus: Nerve | None = None) -> str:
    """Faces filled, edge paths stroked, vertices dotted; the nucleus and its nerve highlighted."""
    cv = _Canvas(t.hull())
    hot = set(nucleus.faces) if nucleus is not None else set()
    for i, f in enumerate(t.faces):
        cv.polygon(t.points[list(f)], NUCLEUS_FILL if i in hot else FACE_FILL)
    for h in t.edges.values():
        cv.polyline(h.samples, STROKE, 1.5)
    for v in t.vertex_ids:
        hit = nucleus is not None and v == nucleus.nucleus
        cv.dot(t.points[v], 6.0 if hit else 3.5, FIBER if hit else STROKE)
    return cv.render()


def render_trace(trace: CollapseTrace, tri: PathTriangle | None = None) -> str:
    """Residual triangle filled, its boundary paths stroked, fibers as thin strokes."""
    shape = tri if tri is not None else trace.residual
    cv = _Canvas(shape.polygon)
    cv.polygon(shape.polygon, FACE_FILL)
    for f in trace.fibers:
        cv.polyline((f.start, f.end), FIBER, 0.5)
    for h in shape.paths:
        cv.polyline(h.samples, STROKE, 1.5)
    for p in shape.points:
        cv.dot(p, 3.5, STROKE)
    return cv.render()


def write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise SchemaError(f"cannot write {path}: {exc.strerror}") from None


__all__ = [
    "SCHEMA_VERSION", "SchemaError", "dumps", "loads", "report", "read_json", "write_text",
    "parse_points", "parse_triangulation", "triangulation_payload"
]
