"""JSON and CSV formats for points, curves, subspaces, maps, and tables.

CSV floats are written with repr, which round-trips doubles exactly and
makes equal inputs produce byte-identical files; quoting follows the
usual comma/quote/newline escaping rules.  Multi-indices are stored
space-separated inside a single field so no quoting is ever triggered
by the data this package emits.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

import numpy as np

from .contact import ContactReport, SampledMap
from .core import check_point, point
from .covering import BallCovering, DecayResult
from .extension import CircleDomain, IntervalDomain, PartialCurveData
from .symplectic import Subspace

# ---------------------------------------------------------------- JSON


def point_to_json(p) -> dict:
    p = check_point(np.asarray(p, dtype=float))
    return {"n": (p.shape[-1] - 1) // 2,
            "z": [float(v) for v in p[:-1]],
            "t": float(p[-1])}


def point_from_json(obj: dict) -> np.ndarray:
    z = np.asarray(obj["z"], dtype=float)
    if z.shape != (2 * int(obj["n"]),):
        raise ValueError(
            f"point has {z.shape[0]} horizontal coords but n={obj['n']}")
    return point(z, float(obj["t"]))


def curve_to_json(points, closed: bool = False) -> dict:
    pts = check_point(np.asarray(points, dtype=float))
    if pts.ndim != 2:
        raise ValueError(f"need an (m, 2n+1) sample array, got {pts.shape}")
    return {"closed": bool(closed),
            "points": [point_to_json(p) for p in pts]}


def curve_from_json(obj: dict) -> tuple:
    pts = np.array([point_from_json(p) for p in obj["points"]])
    return pts, bool(obj.get("closed", False))


def subspace_to_json(V: Subspace) -> dict:
    return {"n": V.n, "basis": [[float(v) for v in row]
                                for row in V.basis]}


def subspace_from_json(obj: dict) -> Subspace:
    return Subspace(int(obj["n"]), np.asarray(obj["basis"], dtype=float))


def sampled_map_to_json(m: SampledMap) -> dict:
    return {"k": m.k, "n": m.n,
            "box": [[float(a), float(b)] for a, b in m.box],
            "shape": list(m.shape),
            "values": [float(v) for v in m.values.ravel(order="C")]}


def sampled_map_from_json(obj: dict) -> SampledMap:
    shape = tuple(int(s) for s in obj["shape"])
    width = 2 * int(obj["n"]) + 1
    vals = np.asarray(obj["values"], dtype=float)
    expect = int(np.prod(shape)) * width
    if vals.shape != (expect,):
        raise ValueError(f"expected {expect} values for shape {shape} in "
                         f"H^{obj['n']}, got {vals.shape[0]}")
    return SampledMap(box=np.asarray(obj["box"], dtype=float),
                      values=vals.reshape(shape + (width,), order="C"))


def partial_data_to_json(data: PartialCurveData) -> dict:
    if isinstance(data.domain, IntervalDomain):
        dom = {"kind": "interval", "a": data.domain.a, "b": data.domain.b}
    else:
        dom = {"kind": "circle", "center": list(data.domain.center),
               "radius": data.domain.radius}
    return {"domain": dom,
            "params": [float(v) for v in data.params],
            "points": [point_to_json(p) for p in data.points],
            "L": float(data.L)}


def partial_data_from_json(obj: dict) -> PartialCurveData:
    dom = obj["domain"]
    if dom["kind"] == "interval":
        domain = IntervalDomain(float(dom["a"]), float(dom["b"]))
    elif dom["kind"] == "circle":
        domain = CircleDomain(tuple(dom["center"]), float(dom["radius"]))
    else:
        raise ValueError(f"unknown domain kind {dom['kind']!r}")
    pts = np.array([point_from_json(p) for p in obj["points"]])
    return PartialCurveData(domain=domain,
                            params=np.asarray(obj["params"], dtype=float),
                            points=pts, L=float(obj["L"]))


def dump_json(obj, path) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


# ----------------------------------------------------------------- CSV


def _writer(buf):
    return csv.writer(buf, lineterminator="\n",
                      quoting=csv.QUOTE_MINIMAL)


def _fmt(v) -> str:
    return repr(float(v))


def curve_header(n: int) -> list:
    cols = []
    for i in range(1, n + 1):
        cols += [f"x{i}", f"y{i}"]
    return cols + ["t"]


def curve_to_csv(points) -> str:
    pts = check_point(np.asarray(points, dtype=float))
    if pts.ndim != 2:
        raise ValueError(f"need an (m, 2n+1) sample array, got {pts.shape}")
    n = (pts.shape[1] - 1) // 2
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(curve_header(n))
    for row in pts:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def curve_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or len(rows) < 2:
        raise ValueError("curve CSV needs a header and at least one row")
    width = len(rows[0])
    if width % 2 == 0 or rows[0][-1] != "t":
        raise ValueError(f"unexpected curve header {rows[0]!r}")
    return np.array([[float(v) for v in r] for r in rows[1:]])


def report_to_csv(report: ContactReport, shape) -> str:
    """One row per interior node: idx, residual, rank, isotropy_defect.

    idx is the full-grid multi-index, space-separated.  Rank and defect
    columns are empty when the report carries residuals only.
    """
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["idx", "residual", "rank", "isotropy_defect"])
    res = report.residuals
    if tuple(s - 2 for s in shape) != res.shape:
        raise ValueError(f"report with inner shape {res.shape} does not "
                         f"come from a {tuple(shape)} grid")
    flat_res = res.ravel(order="C")
    ranks = (report.ranks.ravel(order="C")
             if report.ranks is not None else None)
    defects = (report.isotropy_defects.ravel(order="C")
               if report.isotropy_defects is not None else None)
    for flat, value in enumerate(flat_res):
        inner = np.unravel_index(flat, res.shape)
        idx = " ".join(str(c + 1) for c in inner)
        w.writerow([idx, _fmt(value),
                    "" if ranks is None else str(int(ranks[flat])),
                    "" if defects is None else _fmt(defects[flat])])
    return buf.getvalue()


def covering_to_csv(cov: BallCovering) -> str:
    n = (cov.centers.shape[1] - 1) // 2
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(curve_header(n) + ["radius"])
    for c, r in zip(cov.centers, cov.radii):
        w.writerow([_fmt(v) for v in c] + [_fmt(r)])
    return buf.getvalue()


def decay_to_csv(result: DecayResult) -> tuple:
    """Decay table CSV plus its JSON sidecar of config and fit."""
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["mdiv", "balls", "max_radius", "content"])
    for row in result.rows:
        w.writerow([str(int(row["mdiv"])), str(int(row["balls"])),
                    _fmt(row["max_radius"]), _fmt(row["content"])])
    sidecar = {
        "config": {"k": result.config.k, "n": result.config.n,
                   "j": result.config.j,
                   "mdiv_ladder": list(result.config.mdiv_ladder),
                   "shape": list(result.config.grid_shape()),
                   "seed": result.config.seed},
        "slope": result.slope,
        "intercept": result.intercept,
        "max_fit_residual": result.max_fit_residual,
        "c_constant": result.c_constant,
        "lipschitz": result.lipschitz,
    }
    return buf.getvalue(), sidecar


def holder_profile_to_csv(profile: np.ndarray) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["separation", "max_dist", "beta"])
    for row in profile:
        w.writerow([_fmt(row["separation"]), _fmt(row["max_dist"]),
                    _fmt(row["beta"])])
    return buf.getvalue()


def collisions_to_csv(pairs: Sequence) -> str:
    buf = io.StringIO()
    w = _writer(buf)
    w.writerow(["idx_a", "idx_b"])
    for a, b in pairs:
        w.writerow([" ".join(str(c) for c in a),
                    " ".join(str(c) for c in b)])
    return buf.getvalue()


def write_text(path, text: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
