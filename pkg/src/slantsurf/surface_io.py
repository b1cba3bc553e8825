"""Surface spec files, analysis reports, sample tables, and mesh export.

Three spec kinds are accepted: ``catalog`` (a named reference surface),
``prescribed_kappa`` (a curvature profile integrated into a surface), and
``sampled`` (raw arrays of base points and directors, differentiated with
the finite-difference oracle).  Reports are JSON with fixed key order and
floats printed at 17 significant digits, so identical inputs always produce
byte-identical files.  All writes go through a temp file and an atomic
rename.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path
from typing import Sequence

from scipy.interpolate import CubicSpline

from .frame import FrameSample, RuledSurfaceSpec, SampleGrid, frame_samples
from .generators import (
    ConstantKappa,
    ConstantSigma,
    GeneratorConfig,
    KappaProfile,
    TabulatedKappa,
    build_surface,
    catalog,
    integrate_frame,
)
from .geometry import Jet3, Vec3, fd_jet
from .slant import AuditRecord, SlantReport, SlantVerdict

__all__ = [
    "SpecError",
    "TOOL_NAME",
    "TOOL_VERSION",
    "CSV_HEADER",
    "dumps_deterministic",
    "load_surface",
    "load_surface_file",
    "sampled_spec_document",
    "report_document",
    "csv_table",
    "export_obj",
    "write_text_atomic",
    "write_json_atomic",
]

TOOL_NAME = "slantsurf"
TOOL_VERSION = "0.1.0"

CSV_HEADER = (
    "u,s1,kappa,kappa_prime,sigma,"
    "qx,qy,qz,hx,hy,hz,ax,ay,az,Wx,Wy,Wz,cx,cy,cz"
)

MIN_SAMPLED_ROWS = 16
SAMPLED_UNIT_TOL = 1e-6
# fd step for sampled specs, as a fraction of the u span
SAMPLED_FD_FRACTION = 1e-3


class SpecError(ValueError):
    """A spec or report document violates its schema."""


# ---------------------------------------------------------------------------
# deterministic JSON


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise SpecError(f"non-finite value {value!r} cannot be serialized")
    return format(value, ".17g")


def _emit(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, bool):  # bool is an int subclass, test it first
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            if not isinstance(key, str):
                raise SpecError(f"non-string key {key!r}")
            out.append(f'{pad}  "{key}": ')
            _emit(item, indent + 1, out)
            out.append(",\n" if i + 1 < len(value) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        scalars = all(
            isinstance(x, (bool, int, float)) or x is None for x in items
        )
        if scalars:
            out.append("[")
            for i, item in enumerate(items):
                _emit(item, indent, out)
                if i + 1 < len(items):
                    out.append(", ")
            out.append("]")
        else:
            out.append("[\n")
            for i, item in enumerate(items):
                out.append(pad + "  ")
                _emit(item, indent + 1, out)
                out.append(",\n" if i + 1 < len(items) else "\n")
            out.append(pad + "]")
    else:
        raise SpecError(f"cannot serialize {type(value).__name__}")


def dumps_deterministic(doc: dict) -> str:
    """Render a document as JSON with fixed key order and .17g floats."""
    out: list[str] = []
    _emit(doc, 0, out)
    out.append("\n")
    return "".join(out)


def write_text_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def write_json_atomic(path: str | Path, doc: dict) -> None:
    write_text_atomic(path, dumps_deterministic(doc))


# ---------------------------------------------------------------------------
# spec loading


def _as_float(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise SpecError(f"{where}: must be finite")
    return value


def _as_vec_rows(value, where: str) -> list[Vec3]:
    if not isinstance(value, list):
        raise SpecError(f"{where}: expected a list of [x, y, z] rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != 3:
            raise SpecError(f"{where}[{i}]: expected a row of three numbers")
        rows.append(Vec3(*(_as_float(c, f"{where}[{i}]") for c in row)))
    return rows


def _check_keys(doc: dict, allowed: set[str], required: set[str], where: str) -> None:
    keys = set(doc)
    extra = keys - allowed
    missing = required - keys
    if extra:
        raise SpecError(f"{where}: unknown keys {sorted(extra)}")
    if missing:
        raise SpecError(f"{where}: missing keys {sorted(missing)}")


def profile_from_dict(doc: dict, s1_range: tuple[float, float] | None) -> KappaProfile:
    if not isinstance(doc, dict) or "type" not in doc:
        raise SpecError("profile: expected an object with a 'type' key")
    kind = doc["type"]
    if kind == "constant":
        _check_keys(doc, {"type", "kappa0"}, {"type", "kappa0"}, "profile")
        domain = s1_range if s1_range is not None else (0.0, 2.0 * math.pi)
        return ConstantKappa(_as_float(doc["kappa0"], "profile.kappa0"), domain)
    if kind == "constant_sigma":
        _check_keys(doc, {"type", "d"}, {"type", "d"}, "profile")
        domain = s1_range if s1_range is not None else (-1.8, 1.8)
        return ConstantSigma(_as_float(doc["d"], "profile.d"), domain)
    if kind == "tabulated":
        _check_keys(
            doc,
            {"type", "s1_knots", "kappa_values"},
            {"type", "s1_knots", "kappa_values"},
            "profile",
        )
        knots = tuple(_as_float(v, "profile.s1_knots") for v in doc["s1_knots"])
        values = tuple(_as_float(v, "profile.kappa_values") for v in doc["kappa_values"])
        profile = TabulatedKappa(knots, values)
        if s1_range is not None:
            lo, hi = profile.domain
            if abs(s1_range[0] - lo) > 1e-12 or abs(s1_range[1] - hi) > 1e-12:
                raise SpecError(
                    "s1_range must match the tabulated knot span "
                    f"[{lo!r}, {hi!r}]"
                )
        return profile
    raise SpecError(f"profile.type: unknown type {kind!r}")


def _load_catalog(doc: dict) -> RuledSurfaceSpec:
    _check_keys(doc, {"kind", "name", "params"}, {"kind", "name"}, "spec")
    name = doc["name"]
    if not isinstance(name, str):
        raise SpecError("spec.name: expected a string")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise SpecError("spec.params: expected an object")
    return catalog(name, params)


def _load_prescribed(doc: dict) -> RuledSurfaceSpec:
    _check_keys(
        doc,
        {"kind", "profile", "s1_range", "alpha", "step"},
        {"kind", "profile"},
        "spec",
    )
    s1_range = None
    if "s1_range" in doc:
        raw = doc["s1_range"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise SpecError("spec.s1_range: expected [lo, hi]")
        s1_range = (
            _as_float(raw[0], "spec.s1_range"),
            _as_float(raw[1], "spec.s1_range"),
        )
        if not s1_range[1] > s1_range[0]:
            raise SpecError("spec.s1_range: hi must exceed lo")
    profile = profile_from_dict(doc["profile"], s1_range)
    config = GeneratorConfig(
        profile=profile,
        step=_as_float(doc.get("step", 0.01), "spec.step"),
        alpha=_as_float(doc.get("alpha", 0.0), "spec.alpha"),
    )
    return build_surface(integrate_frame(config), config)


def _load_sampled(doc: dict) -> RuledSurfaceSpec:
    _check_keys(doc, {"kind", "u", "f", "q"}, {"kind", "u", "f", "q"}, "spec")
    if not isinstance(doc["u"], list):
        raise SpecError("spec.u: expected a list of numbers")
    u = [_as_float(v, "spec.u") for v in doc["u"]]
    f_rows = _as_vec_rows(doc["f"], "spec.f")
    q_rows = _as_vec_rows(doc["q"], "spec.q")
    if not (len(u) == len(f_rows) == len(q_rows)):
        raise SpecError("spec: u, f and q must have equal lengths")
    if len(u) < MIN_SAMPLED_ROWS:
        raise SpecError(f"spec: need at least {MIN_SAMPLED_ROWS} sample rows")
    for i, (left, right) in enumerate(zip(u, u[1:])):
        if not right > left:
            raise SpecError(f"spec.u[{i + 1}]: values must be strictly increasing")
    for i, q in enumerate(q_rows):
        if abs(q.norm() - 1.0) > SAMPLED_UNIT_TOL:
            raise SpecError(
                f"spec.q[{i}]: director must be unit length within "
                f"{SAMPLED_UNIT_TOL:g} (norm {q.norm()!r})"
            )

    f_spline = [CubicSpline(u, [getattr(p, c) for p in f_rows]) for c in "xyz"]
    q_spline = [CubicSpline(u, [getattr(p, c) for p in q_rows]) for c in "xyz"]
    fd_step = SAMPLED_FD_FRACTION * (u[-1] - u[0])

    def f_eval(t: float) -> Vec3:
        return Vec3(float(f_spline[0](t)), float(f_spline[1](t)), float(f_spline[2](t)))

    def q_eval(t: float) -> Vec3:
        raw = Vec3(
            float(q_spline[0](t)), float(q_spline[1](t)), float(q_spline[2](t))
        )
        return raw.normalized()

    def base_curve(t: float) -> Jet3:
        return fd_jet(f_eval, t, fd_step)

    def director(t: float) -> Jet3:
        return fd_jet(q_eval, t, fd_step)

    return RuledSurfaceSpec(
        base_curve=base_curve,
        director=director,
        param_range=(u[0], u[-1]),
        provenance={"kind": "sampled", "count": len(u)},
    )


def load_surface(doc: dict) -> RuledSurfaceSpec:
    """Build a surface from a parsed spec document."""
    if not isinstance(doc, dict):
        raise SpecError("spec: expected a JSON object")
    kind = doc.get("kind")
    if kind == "catalog":
        return _load_catalog(doc)
    if kind == "prescribed_kappa":
        return _load_prescribed(doc)
    if kind == "sampled":
        return _load_sampled(doc)
    raise SpecError(f"spec.kind: expected one of catalog, prescribed_kappa, sampled; got {kind!r}")


def load_surface_file(path: str | Path) -> RuledSurfaceSpec:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: not valid JSON ({exc})") from None
    return load_surface(doc)


# ---------------------------------------------------------------------------
# documents


def _vec_list(v: Vec3) -> list[float]:
    return [v.x, v.y, v.z]


def sampled_spec_document(surface: RuledSurfaceSpec, count: int) -> dict:
    """Tabulate a surface into a self-contained sampled spec."""
    if count < MIN_SAMPLED_ROWS:
        raise SpecError(f"sampled specs need at least {MIN_SAMPLED_ROWS} rows")
    grid = SampleGrid.uniform(surface.param_range, count)
    u, f_rows, q_rows = [], [], []
    for t in grid.u_values:
        u.append(t)
        f_rows.append(_vec_list(surface.base_curve(t).d0))
        q_rows.append(_vec_list(surface.director(t).d0))
    return {"kind": "sampled", "u": u, "f": f_rows, "q": q_rows}


def _verdict_block(v: SlantVerdict, scalar_key: str, with_angle: bool) -> dict:
    block = {
        "verdict": v.verdict,
        "axis": _vec_list(v.axis),
        scalar_key: v.constant,
        "residual": v.residual,
        "spread": v.spread,
    }
    if with_angle:
        block["angle"] = math.acos(min(1.0, max(-1.0, v.constant)))
    return block


def _constancy_block(c) -> dict:
    return {
        "mean": c.mean,
        "spread": c.spread,
        "relative_spread": c.relative_spread,
        "is_constant": c.is_constant,
    }


def _audit_block(record: AuditRecord) -> dict:
    return {
        "applicable": record.applicable,
        "passed": record.passed,
        "checks": [
            {"name": c.name, "value": c.value, "bound": c.bound, "ok": c.ok}
            for c in record.checks
        ],
        "notes": list(record.notes),
    }


def report_document(
    surface: RuledSurfaceSpec,
    samples: Sequence[FrameSample],
    report: SlantReport,
    audits: Sequence[AuditRecord] = (),
) -> dict:
    """Assemble the full analysis report for one surface sampling."""
    sample_rows = [
        {
            "u": s.u,
            "s1": s.s1,
            "kappa": s.kappa,
            "kappa_prime": s.kappa_prime,
            "sigma": s.sigma,
            "q": _vec_list(s.q),
            "h": _vec_list(s.h),
            "a": _vec_list(s.a),
            "W": _vec_list(s.darboux),
            "striction_point": _vec_list(s.striction),
        }
        for s in samples
    ]
    return {
        "meta": {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "surface": surface.provenance,
            "samples": len(sample_rows),
            "tol": report.tol,
            "angle_tol": report.angle_tol,
        },
        "samples": sample_rows,
        "slant": {
            "q": _verdict_block(report.q_slant, "constant", True),
            "h": _verdict_block(report.h_slant, "constant", True),
            "a": _verdict_block(report.a_slant, "constant", True),
            "darboux_strict": _verdict_block(
                report.darboux_strict, "darboux_constant", False
            ),
            "darboux_angular": _verdict_block(
                report.darboux_angular, "constant", True
            ),
            "kappa": _constancy_block(report.kappa_constancy),
            "sigma": _constancy_block(report.sigma_constancy),
        },
        "audits": {record.audit: _audit_block(record) for record in audits},
    }


def csv_table(samples: Sequence[FrameSample]) -> str:
    """Sample table as CSV text with a fixed header and .17g floats."""
    lines = [CSV_HEADER]
    for s in samples:
        fields = [
            s.u,
            s.s1,
            s.kappa,
            s.kappa_prime,
            s.sigma,
            s.q.x, s.q.y, s.q.z,
            s.h.x, s.h.y, s.h.z,
            s.a.x, s.a.y, s.a.z,
            s.darboux.x, s.darboux.y, s.darboux.z,
            s.striction.x, s.striction.y, s.striction.z,
        ]
        lines.append(",".join(_format_float(x) for x in fields))
    return "\n".join(lines) + "\n"


def export_obj(
    surface: RuledSurfaceSpec,
    grid_cols: int,
    v_min: float,
    v_max: float,
    rows: int,
) -> str:
    """Mesh the strip r(u, v) = f(u) + v q(u) as Wavefront OBJ text.

    Vertices are emitted row-major with u as the outer index; each quad is
    split into two triangles wound counterclockwise when seen from the side
    the central normal a points to (for v > 0).
    """
    if grid_cols < 2 or rows < 2:
        raise SpecError("mesh needs at least 2 columns and 2 rows")
    if not (math.isfinite(v_min) and math.isfinite(v_max) and v_max > v_min):
        raise SpecError("degenerate v range: need v_min < v_max")
    u_values = SampleGrid.uniform(surface.param_range, grid_cols).u_values
    dv = (v_max - v_min) / (rows - 1)
    v_values = [v_min + k * dv for k in range(rows - 1)] + [v_max]

    lines: list[str] = []
    for t in u_values:
        f0 = surface.base_curve(t).d0
        q0 = surface.director(t).d0
        for v in v_values:
            p = f0 + q0 * v
            lines.append(
                f"v {_format_float(p.x)} {_format_float(p.y)} {_format_float(p.z)}"
            )

    def idx(i: int, j: int) -> int:
        return i * rows + j + 1

    for i in range(grid_cols - 1):
        for j in range(rows - 1):
            a = idx(i, j)
            b = idx(i, j + 1)
            c = idx(i + 1, j)
            d = idx(i + 1, j + 1)
            lines.append(f"f {a} {b} {d}")
            lines.append(f"f {a} {d} {c}")
    return "\n".join(lines) + "\n"
