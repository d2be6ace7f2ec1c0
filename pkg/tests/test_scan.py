import json

import numpy as np
import pytest

from steplike import StepPotential
from steplike.errors import ConfigError
from steplike.scan import (
    ScanConfig,
    ScanRecord,
    emit,
    format_complex,
    level_crossings,
    parse_complex,
    raster,
    read_config_file,
    render,
    scan,
    superlevel_mask,
)


@pytest.mark.parametrize(
    "text, value",
    [("1+2i", 1 + 2j), ("-0.5-1e-3i", -0.5 - 1e-3j), ("3", 3), ("2.5i", 2.5j), ("0-1i", -1j), ("1e2+.5i", 100 + 0.5j)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["1 + 2i", "1+2j", "", "i", "1+i", "abc", "1+2i3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ConfigError):
        parse_complex(text)


def test_format_roundtrip():
    z = 0.1 - 1 / 3 * 1j
    assert parse_complex(format_complex(z)) == z


@pytest.mark.parametrize(
    "kwargs",
    [
        {"quantity": "nope"},
        {"resolution": (1, 5)},
        {"window": (1, 0, -1, 1)},
        {"epsilons": (0.1, -1)},
        {"jobs": 0},
        {"oracle_spacing": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ScanConfig(**kwargs)


def test_row_major_order():
    cfg = ScanConfig(quantity="spectrum_distance", window=(0, 2, -1, 1), resolution=(3, 2))
    coords = [(r.re, r.im) for r in scan(cfg)]
    assert coords == [(0, -1), (1, -1), (2, -1), (0, 1), (1, 1), (2, 1)]


def test_spectrum_distance_zero_on_rays():
    cfg = ScanConfig(quantity="spectrum_distance", window=(-2, 4, -1, 1), resolution=(7, 3))
    for r in scan(cfg):
        on_ray = abs(r.im) == 1 and r.re >= 0
        assert (r.value == 0) == on_ray
        assert r.regime == ("spectrum" if on_ray else "resolvent_set")


def test_errors_become_nan():
    cfg = ScanConfig(quantity="asymptotic", window=(-1, 1, -1, 1), resolution=(3, 3))
    recs = list(scan(cfg))
    bad = [r for r in recs if np.isnan(r.value)]
    assert {r.regime for r in bad} >= {"domain_error", "delta_outside_strip"}
    assert any(r.regime == "inside_strip" and np.isfinite(r.value) for r in recs)


def test_bracket_quantities():
    lo = list(scan(ScanConfig(quantity="bracket_lower", window=(50, 100, -0.5, 0.5), resolution=(3, 3))))
    hi = list(scan(ScanConfig(quantity="bracket_upper", window=(50, 100, -0.5, 0.5), resolution=(3, 3))))
    assert all(a.value <= b.value for a, b in zip(lo, hi))
    assert {r.regime for r in hi} == {"inside_strip"}


def test_quotient_and_oracle_quantities():
    q = list(scan(ScanConfig(quantity="quotient_exact", window=(10, 20, -0.5, 0.5), resolution=(2, 2))))
    assert all(r.value > 0 for r in q)
    o = list(
        scan(
            ScanConfig(
                quantity="oracle", window=(-2, -1, 2, 3), resolution=(2, 2), oracle_half_width=20, oracle_spacing=0.02
            )
        )
    )
    assert all(r.regime == "oracle" and r.value > 0 for r in o)


@pytest.mark.parametrize("jump", [0, 2j, 4, 4 + 1j])
def test_omega_raster(jump):
    cfg = ScanConfig(
        potential=StepPotential(jump, 0), quantity="omega_membership", window=(-3, 3, -3, 3), resolution=(61, 61)
    )
    recs = list(scan(cfg))
    inside = [r for r in recs if r.value == 1]
    assert len(inside) > 0
    assert all(r.re < 0 for r in inside)
    assert {r.regime for r in recs} <= {"omega", "outside_omega"}


def test_nesting_and_crossings():
    cfg = ScanConfig(quantity="asymptotic", window=(0, 300, -1, 1), resolution=(61, 41))
    recs = list(scan(cfg))
    grid = raster(recs, cfg)
    masks = [superlevel_mask(grid, e) for e in (1 / 200, 1 / 100, 1 / 50)]
    for small, big in zip(masks, masks[1:]):
        assert np.all(small <= big)
        assert small.sum() < big.sum()
    cross = level_crossings(recs, cfg, 1 / 100)
    assert cross and all(r.regime == "level_curve" and r.value == 1 / 100 for r in cross)
    # a smaller eps moves the curve to larger Re z on every row
    far = {r.im: r.re for r in level_crossings(recs, cfg, 1 / 200)}
    near = {r.im: r.re for r in cross}
    shared = set(far) & set(near)
    assert shared and all(far[y] > near[y] for y in shared)
    assert len(far) <= len(near)


def test_parallel_identical():
    cfg = ScanConfig(quantity="bracket_upper", window=(1, 50, -0.9, 0.9), resolution=(7, 5))
    one = render(list(scan(cfg)), "csv")
    two = render(list(scan(ScanConfig(**{**cfg.__dict__, "jobs": 3}))), "csv")
    assert one == two


def test_render_csv():
    assert render([], "csv") == "re,im,value,regime\n"
    assert render([ScanRecord(1, 2, 3, "generic")], "csv") == "re,im,value,regime\n1,2,3,generic\n"
    assert render([ScanRecord(1, 2, float("nan"), "x")], "csv").splitlines()[1] == "1,2,,x"
    # 17 significant digits survive the round trip
    text = render([ScanRecord(0.1, 1 / 3, 2 / 7, "g")], "csv").splitlines()[1]
    assert [float(t) for t in text.split(",")[:3]] == [0.1, 1 / 3, 2 / 7]


def test_render_json():
    data = json.loads(render([ScanRecord(1, 2, float("nan"), "x")], "json"))
    assert data == [{"re": 1.0, "im": 2.0, "value": None, "regime": "x"}]
    with pytest.raises(ConfigError):
        render([], "xml")


def test_emit_to_file(tmp_path, capsys):
    recs = [ScanRecord(1, 2, 3, "generic")]
    path = tmp_path / "out.csv"
    emit(recs, "csv", str(path))
    emit(recs, "csv", None)
    assert path.read_bytes() == capsys.readouterr().out.encode()


def test_read_config_file(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("# comment\nv_plus = 0+1i\n\nres=4,3 # trailing\n")
    assert read_config_file(str(p)) == {"v-plus": ("0+1i", f"{p}:2"), "res": ("4,3", f"{p}:4")}
    p.write_text("v-plus\n")
    with pytest.raises(ConfigError, match=":1:"):
        read_config_file(str(p))
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "missing"))
