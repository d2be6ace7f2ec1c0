"""Grid scans of the complex plane and CSV/JSON output."""
from __future__ import annotations

import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import ConfigError, SteplikeError
from .fd_oracle import build, oracle_resolvent_norm
from .norm_bounds import Regime, resolvent_norm_bracket, resolvent_norm_asymptotic
from .operator_model import in_omega, spectrum_distance, strip_contains
from .potential import Interaction, StepPotential
from .pseudomode import pseudomode_quotient_exact

QUANTITIES = (
    "bracket_lower",
    "bracket_upper",
    "asymptotic",
    "quotient_exact",
    "oracle",
    "omega_membership",
    "spectrum_distance",
)

_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_FULL = re.compile(rf"^({_FLOAT})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")
_IMAG_ONLY = re.compile(rf"^({_FLOAT})i$")
_REAL_ONLY = re.compile(rf"^{_FLOAT}$")


def parse_complex(text: str) -> complex:
    """Parse ``<float>[+|-]<float>i``; a bare real or bare ``<float>i`` is also accepted."""
    s = text.strip()
    if " " in s or not s:
        raise ConfigError(f"bad complex literal {text!r}")
    m = _COMPLEX_FULL.match(s)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _IMAG_ONLY.match(s)
    if m:
        return complex(0.0, float(m.group(1)))
    if _REAL_ONLY.match(s):
        return complex(float(s), 0.0)
    raise ConfigError(f"bad complex literal {text!r} (expected a+bi)")


def format_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex` with round-trip precision."""
    return f"{z.real:.17g}{z.imag:+.17g}i"


@dataclass(frozen=True)
class ScanConfig:
    """Raster over ``window = (re_min, re_max, im_min, im_max)`` with ``resolution = (nx, ny)``.

    For ``omega_membership`` the window is a region of the coupling plane;
    for every other quantity it is a region of the spectral-parameter plane.
    """

    potential: StepPotential = StepPotential(1j, -1j)
    alpha: complex = 0j
    window: tuple[float, float, float, float] = (0.0, 300.0, -1.0, 1.0)
    resolution: tuple[int, int] = (31, 21)
    quantity: str = "bracket_upper"
    epsilons: tuple[float, ...] = ()
    oracle_half_width: float = 30.0
    oracle_spacing: float = 0.01
    jobs: int = 1

    def __post_init__(self):
        re0, re1, im0, im1 = self.window
        nx, ny = self.resolution
        if self.quantity not in QUANTITIES:
            raise ConfigError(f"quantity: unknown value {self.quantity!r}; choose from {', '.join(QUANTITIES)}")
        if not (nx >= 2 and ny >= 2):
            raise ConfigError("res: need nx >= 2 and ny >= 2")
        if not (re0 < re1 and im0 < im1):
            raise ConfigError("window: need re_min < re_max and im_min < im_max")
        if any(not e > 0 for e in self.epsilons):
            raise ConfigError("eps: values must be strictly positive")
        if not (self.oracle_half_width > 0 and self.oracle_spacing > 0):
            raise ConfigError("oracle-L and oracle-h must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs: need at least 1")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        re0, re1, im0, im1 = self.window
        nx, ny = self.resolution
        return np.linspace(re0, re1, nx), np.linspace(im0, im1, ny)


@dataclass(frozen=True)
class ScanRecord:
    """One output row: a grid point or level crossing, its value and a regime tag."""

    re: float
    im: float
    value: float
    regime: str


def _error_tag(exc: Exception) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", type(exc).__name__).lower()


class _Evaluator:
    """Per-point evaluation of one quantity; picklable for worker processes."""

    def __init__(self, config: ScanConfig):
        self.config = config
        self.interaction = Interaction(config.alpha)
        self._disc = None

    def disc(self):
        if self._disc is None:
            c = self.config
            self._disc = build(c.potential, self.interaction, c.oracle_half_width, c.oracle_spacing)
        return self._disc

    def __call__(self, re_: float, im_: float) -> ScanRecord:
        z = complex(re_, im_)
        try:
            value, tag = self._value(z)
        except SteplikeError as exc:
            return ScanRecord(re_, im_, math.nan, _error_tag(exc))
        return ScanRecord(re_, im_, float(value), tag)

    def _value(self, z: complex):
        c = self.config
        q = c.quantity
        v = c.potential
        if q in ("bracket_lower", "bracket_upper"):
            b = resolvent_norm_bracket(v, self.interaction, z)
            return (b.lower if q == "bracket_lower" else b.upper), b.regime.value
        if q == "asymptotic":
            return resolvent_norm_asymptotic(v, self.interaction, z), Regime.INSIDE_STRIP.value
        if q == "quotient_exact":
            tag = Regime.INSIDE_STRIP.value if strip_contains(v, z.imag) else Regime.GENERIC.value
            return pseudomode_quotient_exact(v, self.interaction, z), tag
        if q == "oracle":
            return oracle_resolvent_norm(self.disc(), z), "oracle"
        if q == "omega_membership":
            inside = in_omega(v, Interaction(z))
            return (1.0 if inside else 0.0), ("omega" if inside else "outside_omega")
        d = spectrum_distance(v, z)
        return d, ("spectrum" if d == 0 else "resolvent_set")

    def row(self, im_: float) -> list[ScanRecord]:
        xs, _ = self.config.axes()
        return [self(float(x), float(im_)) for x in xs]


def scan(config: ScanConfig) -> Iterator[ScanRecord]:
    """Evaluate the configured quantity on the raster, rows of constant Im first.

    Rows are independent; with ``jobs > 1`` they run in worker processes but
    are yielded in the same row-major order.
    """
    ev = _Evaluator(config)
    _, ys = config.axes()
    if config.jobs == 1:
        for y in ys:
            yield from ev.row(float(y))
        return
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        for rows in pool.map(ev.row, [float(y) for y in ys]):
            yield from rows


def raster(records: Iterable[ScanRecord], config: ScanConfig) -> np.ndarray:
    """Arrange row-major records as an ``(ny, nx)`` array of values."""
    nx, ny = config.resolution
    vals = np.array([r.value for r in records], dtype=float)
    return vals.reshape(ny, nx)


def superlevel_mask(values: np.ndarray, eps: float) -> np.ndarray:
    """Nodes where the value exceeds ``1/eps`` (NaN counts as outside)."""
    with np.errstate(invalid="ignore"):
        return np.nan_to_num(values, nan=-np.inf) > 1.0 / eps


def level_crossings(records: list[ScanRecord], config: ScanConfig, eps: float) -> list[ScanRecord]:
    """Points where each row crosses ``value = 1/eps``, by linear interpolation.

    Returned records carry ``value = eps`` and the tag ``level_curve``.
    """
    grid = raster(records, config)
    xs, ys = config.axes()
    level = 1.0 / eps
    out = []
    for j, y in enumerate(ys):
        row = grid[j]
        for i in range(len(xs) - 1):
            a, b = row[i], row[i + 1]
            if not (np.isfinite(a) and np.isfinite(b)):
                continue
            if (a - level) * (b - level) < 0:
                t = (level - a) / (b - a)
                out.append(ScanRecord(float(xs[i] + t * (xs[i + 1] - xs[i])), float(y), eps, "level_curve"))
    return out


def _fmt(x: float) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.17g}"


def emit(records: Iterable[ScanRecord], fmt: str = "csv", destination: Optional[str] = None) -> None:
    """Write records as CSV (header ``re,im,value,regime``) or a JSON array.

    CSV numbers use 17 significant digits and NaN becomes an empty field; in
    JSON NaN becomes null.  ``destination=None`` or ``"-"`` means stdout.
    """
    text = render(records, fmt)
    if destination in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def render(records: Iterable[ScanRecord], fmt: str = "csv") -> str:
    """Records as CSV or JSON text."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "value", "regime"])
        for r in records:
            w.writerow([_fmt(r.re), _fmt(r.im), _fmt(r.value), r.regime])
        return buf.getvalue()
    if fmt == "json":
        rows = [
            {"re": _json_num(r.re), "im": _json_num(r.im), "value": _json_num(r.value), "regime": r.regime}
            for r in records
        ]
        return json.dumps(rows, indent=1) + "\n"
    raise ConfigError(f"format: unknown value {fmt!r}")


def _json_num(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return float(x)


def read_config_file(path: str) -> dict[str, tuple[str, str]]:
    """Read ``key=value`` lines; ``#`` starts a comment, blank lines are skipped.

    Returns ``{key: (value, "path:line")}`` with underscores in keys turned
    into dashes, so ``v_plus`` and ``v-plus`` are the same key.
    """
    out = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from exc
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("_", "-")] = (value, f"{path}:{lineno}")
    return out
