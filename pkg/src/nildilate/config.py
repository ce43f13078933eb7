"""Experiment configuration: JSON in, validated objects out.

Numeric fields that feed exact classification are rational strings ("1/3"),
never floats.  Validation walks the document depth-first and reports the
field path of the first offending entry.
"""

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .curves import PiecewisePolynomial, StaircaseCurve
from .dilation import DilationFamily
from .lie import NilAlgebra, StructureError
from .measures import (
    AtomicMeasure,
    CantorMeasure1D,
    CurvePushforward,
    ProductMeasure,
    base_point,
)
from .rational import parse_rational


class ConfigError(ValueError):
    """Invalid experiment config; the message names the offending field path."""


def _get(obj, key, path, required=True, default=None):
    if key not in obj:
        if required:
            raise ConfigError(f"{path}.{key}: missing required field")
        return default
    return obj[key]


def _rational(value, path):
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


@dataclass
class ExperimentConfig:
    algebra: NilAlgebra
    family: DilationFamily
    target: object        # measure spec (curve targets arrive wrapped)
    base: object          # NilmanifoldPoint
    grid: tuple
    height: int
    panels: object
    seed: int
    parameter: str
    raw: dict


def _build_algebra(doc, path):
    dim = _get(doc, "dim", path)
    if not isinstance(dim, int) or dim < 1:
        raise ConfigError(f"{path}.dim: expected a positive integer")
    brackets = {}
    for idx, entry in enumerate(_get(doc, "brackets", path, required=False, default=[])):
        epath = f"{path}.brackets[{idx}]"
        i = _get(entry, "i", epath)
        j = _get(entry, "j", epath)
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ConfigError(f"{epath}: i and j must be 1-based integers")
        coeffs = {}
        for k, c in _get(entry, "coeffs", epath).items():
            coeffs[int(k) - 1] = _rational(c, f"{epath}.coeffs[{k}]")
        brackets[(i - 1, j - 1)] = coeffs
    try:
        return NilAlgebra(
            dim, brackets,
            kappa=_get(doc, "kappa", path, required=False),
            abelian_dim=_get(doc, "abelian_dim", path, required=False),
            name=_get(doc, "name", path, required=False, default=""))
    except StructureError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_family(doc, path, algebra):
    mats = _get(doc, "matrices", path)
    parsed = []
    for j, mat in enumerate(mats):
        mpath = f"{path}.matrices[{j}]"
        if len(mat) != algebra.dim or any(len(row) != algebra.dim for row in mat):
            raise ConfigError(f"{mpath}: expected a {algebra.dim}x{algebra.dim} matrix")
        parsed.append([[_rational(x, f"{mpath}[{r}][{c}]") for c, x in enumerate(row)]
                       for r, row in enumerate(mat)])
    try:
        return DilationFamily(parsed)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_curve(doc, path, algebra):
    if "cantor" in doc:
        sub = doc["cantor"]
        spath = f"{path}.cantor"
        try:
            return StaircaseCurve(
                dim=algebra.dim,
                u_index=_get(sub, "u_index", spath, required=False, default=1) - 1,
                psi_index=_get(sub, "psi_index", spath, required=False, default=2) - 1,
                depth=_get(sub, "depth", spath, required=False, default=12))
        except ValueError as exc:
            raise ConfigError(f"{spath}: {exc}") from exc
    segments = []
    for idx, seg in enumerate(_get(doc, "segments", path)):
        spath = f"{path}.segments[{idx}]"
        interval = _get(seg, "interval", spath)
        if len(interval) != 2:
            raise ConfigError(f"{spath}.interval: expected [lo, hi]")
        lo = _rational(interval[0], f"{spath}.interval[0]")
        hi = _rational(interval[1], f"{spath}.interval[1]")
        coeffs = []
        for j, c in enumerate(_get(seg, "coeffs", spath)):
            if len(c) != algebra.dim:
                raise ConfigError(f"{spath}.coeffs[{j}]: expected {algebra.dim} entries")
            coeffs.append([_rational(x, f"{spath}.coeffs[{j}][{k}]")
                           for k, x in enumerate(c)])
        segments.append((lo, hi, coeffs))
    try:
        return PiecewisePolynomial(segments)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _build_measure(doc, path, algebra, depth_dim=None):
    dim = depth_dim if depth_dim is not None else algebra.dim
    if "atomic" in doc:
        sub = doc["atomic"]
        spath = f"{path}.atomic"
        points = []
        for i, p in enumerate(_get(sub, "points", spath)):
            if len(p) != dim:
                raise ConfigError(f"{spath}.points[{i}]: expected {dim} coordinates")
            points.append([_rational(x, f"{spath}.points[{i}][{k}]")
                           for k, x in enumerate(p)])
        weights = _get(sub, "weights", spath, required=False)
        if weights is not None:
            weights = [_rational(w, f"{spath}.weights[{i}]") for i, w in enumerate(weights)]
        try:
            return AtomicMeasure(points, weights)
        except ValueError as exc:
            raise ConfigError(f"{spath}: {exc}") from exc
    if "cantor1d" in doc:
        sub = doc["cantor1d"] or {}
        if dim != 1:
            raise ConfigError(f"{path}.cantor1d: needs a 1-dimensional algebra slot, got {dim}")
        return CantorMeasure1D(depth=sub.get("depth", 12))
    if "product" in doc:
        sub = doc["product"]
        spath = f"{path}.product"
        factors = []
        for i, fdoc in enumerate(_get(sub, "factors", spath)):
            factors.append(_build_measure(fdoc, f"{spath}.factors[{i}]", algebra, depth_dim=1))
        if len(factors) != dim:
            raise ConfigError(f"{spath}: got {len(factors)} factors for dimension {dim}")
        try:
            return ProductMeasure(factors)
        except ValueError as exc:
            raise ConfigError(f"{spath}: {exc}") from exc
    if "curve" in doc:
        curve_algebra = algebra if depth_dim is None else _LineStub(dim)
        return CurvePushforward(_build_curve(doc["curve"], f"{path}.curve", curve_algebra))
    raise ConfigError(f"{path}: unknown measure variant "
                      f"(expected atomic | cantor1d | product | curve)")


class _LineStub:
    def __init__(self, dim):
        self.dim = dim


def _build_grid(doc, path):
    if doc is None:
        return (1.0, 10.0, 100.0)
    if "values" in doc:
        vals = [float(v) for v in doc["values"]]
        if not vals or any(b <= a for a, b in zip(vals, vals[1:])):
            raise ConfigError(f"{path}.values: need a strictly increasing nonempty list")
        return tuple(vals)
    start = float(_get(doc, "start", path))
    stop = float(_get(doc, "stop", path))
    num = _get(doc, "num", path)
    spacing = _get(doc, "spacing", path, required=False, default="linear")
    if not isinstance(num, int) or num < 1:
        raise ConfigError(f"{path}.num: expected a positive integer")
    if spacing == "linear":
        vals = np.linspace(start, stop, num)
    elif spacing == "geometric":
        if start <= 0:
            raise ConfigError(f"{path}.start: geometric spacing needs start > 0")
        vals = np.geomspace(start, stop, num)
    else:
        raise ConfigError(f"{path}.spacing: expected linear or geometric")
    return tuple(float(v) for v in vals)


def load_config(source):
    """Parse and validate a config document (dict, JSON string, or file path)."""
    if isinstance(source, dict):
        doc = source
    else:
        if isinstance(source, str) and source.lstrip().startswith("{"):
            text = source
        else:
            try:
                with open(source, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"config: cannot read {source!r} ({exc})") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})") from exc

    algebra = _build_algebra(_get(doc, "algebra", "config"), "config.algebra")
    lattice = _get(doc, "lattice", "config", required=False, default="integer-points")
    if lattice != "integer-points":
        raise ConfigError("config.lattice: only the integer-points lattice is supported")
    family = _build_family(_get(doc, "dilation", "config"), "config.dilation", algebra)

    has_curve = "curve" in doc
    has_measure = "measure" in doc
    if has_curve == has_measure:
        raise ConfigError("config: provide exactly one of 'curve' or 'measure'")
    if has_curve:
        target = CurvePushforward(_build_curve(doc["curve"], "config.curve", algebra))
    else:
        target = _build_measure(doc["measure"], "config.measure", algebra)

    base_doc = _get(doc, "base_point", "config", required=False)
    if base_doc is not None:
        if len(base_doc) != algebra.dim:
            raise ConfigError(f"config.base_point: expected {algebra.dim} coordinates")
        coords = [float(_rational(x, f"config.base_point[{i}]"))
                  for i, x in enumerate(base_doc)]
    else:
        coords = None
    base = base_point(algebra, coords)

    chars = _get(doc, "characters", "config", required=False, default={})
    height = chars.get("height", 3)
    if not isinstance(height, int) or height < 1:
        raise ConfigError("config.characters.height: expected a positive integer")

    panels = _get(doc, "panels", "config", required=False)
    if panels is not None and (not isinstance(panels, int) or panels < 1):
        raise ConfigError("config.panels: expected a positive integer or null")

    seed = _get(doc, "seed", "config", required=False, default=0)
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("config.seed: expected a nonnegative integer")

    parameter = _get(doc, "parameter", "config", required=False, default="continuous")
    if parameter not in ("continuous", "discrete"):
        raise ConfigError("config.parameter: expected continuous or discrete")

    return ExperimentConfig(
        algebra=algebra, family=family, target=target, base=base,
        grid=_build_grid(_get(doc, "grid", "config", required=False), "config.grid"),
        height=height, panels=panels, seed=seed, parameter=parameter, raw=doc)


def fixture_names():
    files = resources.files("nildilate") / "fixtures"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_fixture(name):
    files = resources.files("nildilate") / "fixtures"
    path = files / f"{name}.json"
    if not path.is_file():
        raise ConfigError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    return load_config(json.loads(path.read_text(encoding="utf-8")))
