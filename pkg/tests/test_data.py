import os
import math
import json
import pandas as pd
import pytest
from hyperjet.errors import ConfigError
from hyperjet.utils import parse_complex, parse_complex_list, cjson, to_json, write_rows, error_line, dict_except
from hyperjet.config import DEFAULTS, merge_config
from hyperjet.data import read_file, parse_generator_set, read_generator_set, read_differential, \
    read_kernel_config, read_point_pairs, differential_from_config, points_from_config
from hyperjet.jetext import PowerSeries, PoincareDensity


def test_parse_complex():
    assert parse_complex(0.5) == 0.5
    assert parse_complex([0.3, -0.1]) == 0.3 - 0.1j
    assert parse_complex("0.3+0.1j") == 0.3 + 0.1j
    assert parse_complex("0.3 - 0.1i") == 0.3 - 0.1j
    for bad in ("abc", True, [1, 2, 3], ["a", 1], None):
        with pytest.raises(ConfigError):
            parse_complex(bad, "z")
    assert parse_complex_list("1,0.5j,2-1j") == [1, 0.5j, 2 - 1j]
    with pytest.raises(ConfigError, match="empty entry"):
        parse_complex_list("1,,2")
    with pytest.raises(ConfigError, match=r"coeffs\[1\]"):
        parse_complex_list("1,x")
    assert cjson(1 - 2j) == [1.0, -2.0]


def test_read_file_formats(tmp_path):
    for name, text in (("a.json", '{"x": 1}'), ("a.hjson", "{\n  x: 1\n}"), ("a.yaml", "x: 1\n")):
        path = tmp_path / name
        path.write_text(text)
        assert read_file(str(path)) == {"x": 1}
    with pytest.raises(ConfigError, match="does not exist"):
        read_file(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "x": 1,\n  "y": \n}')
    with pytest.raises(ConfigError, match="line 4"):
        read_file(str(bad))
    other = tmp_path / "a.txt"
    other.write_text("x")
    with pytest.raises(ConfigError, match="extension"):
        read_file(str(other))


def test_generator_files(octagon, tmp_path):
    data = {
        "generators": [{"alpha": [1.0, 0.0], "beta": [0.0, 0.0]}],
        "relations": [[1]],
    }
    assert len(parse_generator_set(data).generators) == 1
    with pytest.raises(ConfigError, match="beta"):
        parse_generator_set({"generators": [{"alpha": [2.0, 0.0]}]})
    with pytest.raises(ConfigError, match=r"generators\[0\]"):
        parse_generator_set({"generators": [{"alpha": [0.5, 0.0], "beta": [1.0, 0.0]}]})
    with pytest.raises(ConfigError):
        parse_generator_set({"generators": []})
    bad = tmp_path / "bad.json"
    gens = [{"alpha": [g.alpha.real, g.alpha.imag], "beta": [g.beta.real, g.beta.imag]} for g in octagon.generators]
    bad.write_text(json.dumps({"generators": gens, "relations": [[1, 2, -1, -2]]}))
    with pytest.raises(ConfigError, match="bad.json"):
        read_generator_set(str(bad))


def test_read_differential(configs_dir):
    psi = read_differential(os.path.join(configs_dir, "psi_quadratic.hjson"))
    assert psi.order == 2
    assert isinstance(psi.body, PowerSeries)
    assert psi.body.coeffs == (1, 0.5, 0.25j)
    psi = read_differential(os.path.join(configs_dir, "psi_poincare.hjson"))
    assert psi.order == 4
    assert isinstance(psi.body, PoincareDensity)
    assert len(psi.body.ball) == 65


def test_differential_from_config(configs_dir):
    psi = differential_from_config({"order": 3, "coeffs": "1,0.5j"})
    assert psi.order == 3
    assert psi.body.coeffs == (1, 0.5j)
    psi = differential_from_config({"order": 1, "coeffs": [[0, 1]]})
    assert psi.body.coeffs == (1j,)
    with pytest.raises(ConfigError, match="--psi"):
        differential_from_config({"order": 2})
    with pytest.raises(ConfigError, match="order"):
        differential_from_config({"order": -1, "coeffs": "1"})
    psi = differential_from_config({"psi": os.path.join(configs_dir, "psi_quadratic.hjson"), "order": 5})
    assert psi.order == 2


def test_read_kernel_config(configs_dir, tmp_path):
    basis, alpha = read_kernel_config(os.path.join(configs_dir, "kernel_mock.json"))
    assert alpha == 0.0
    assert basis.genus == 2
    assert [f.order for f in basis.families] == [2, 2, 3]
    assert [f.sq_norm for f in basis.families] == [1.0, 2.0, 0.5]
    bad = tmp_path / "kernel.json"
    bad.write_text(json.dumps({"genus": 2, "families": [
        {"order": 3, "psi": {"order": 2, "coeffs": [[1, 0]]}, "sq_norm": 1.0}]}))
    with pytest.raises(ConfigError, match="differs"):
        read_kernel_config(str(bad))
    bad.write_text(json.dumps({"genus": 1, "families": []}))
    with pytest.raises(ConfigError, match="genus"):
        read_kernel_config(str(bad))


def test_read_point_pairs(configs_dir, tmp_path):
    pairs = read_point_pairs(os.path.join(configs_dir, "points.csv"))
    assert len(pairs) == 3
    assert pairs[1].z == 0.2 and pairs[1].w == -0.1 + 0.3j
    pairs = read_point_pairs(os.path.join(configs_dir, "points.yaml"))
    assert len(pairs) == 2
    assert pairs[0].w == 0.5
    bad = tmp_path / "points.csv"
    bad.write_text("z_re,z_im,w_re\n0,0,0.5\n")
    with pytest.raises(ConfigError, match="w_im"):
        read_point_pairs(str(bad))
    assert len(points_from_config({"z": "0.1", "w": "0.2j"})) == 1
    with pytest.raises(ConfigError, match="--points"):
        points_from_config({"z": "0.1"})


def test_merge_config(configs_dir, tmp_path):
    assert merge_config({"seed": None}) == DEFAULTS
    settings = os.path.join(configs_dir, "settings.yaml")
    config = merge_config({"config": settings, "seed": 3, "quad_nodes": None})
    assert config["seed"] == 3
    assert config["quad_nodes"] == 96
    assert config["jet_nodes"] == 512
    assert config["fd_step"] == DEFAULTS["fd_step"]
    with pytest.raises(ConfigError, match="seed"):
        merge_config({"seed": -1})
    with pytest.raises(ConfigError, match="tolerance_scale"):
        merge_config({"tolerance_scale": 0.0})
    listfile = tmp_path / "list.yaml"
    listfile.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError, match="dict"):
        merge_config({"config": str(listfile)})
    extra = tmp_path / "extra.yaml"
    extra.write_text("seed: 4\nunknown_setting: 1\n")
    config = merge_config({"config": str(extra)})
    assert config["seed"] == 4
    assert "unknown_setting" not in config


def test_write_rows(tmp_path, capsys):
    rows = [{"m": 0, "value": 0.1}, {"m": 1, "value": 1 / 3}]
    out = tmp_path / "rows.csv"
    write_rows(rows, "csv", str(out))
    df = pd.read_csv(out)
    assert list(df.columns) == ["m", "value"]
    assert df["value"][1] == 1 / 3
    write_rows(rows, "json", meta={"order": 2})
    data = json.loads(capsys.readouterr().out)
    assert data == {"order": 2, "rows": rows}


def test_error_line():
    line = error_line("ConfigError", 2, "bad\nvalue")
    assert "\n" not in line
    assert json.loads(line) == {"error": "ConfigError", "exit": 2, "message": "bad value"}
    assert dict_except({"a": 1, "b": 2}, ["b"]) == {"a": 1}


def test_to_json_non_finite():
    text = to_json({"tail": math.inf, "values": [1.5, math.nan], "n": 2})
    assert "Infinity" not in text and "NaN" not in text
    assert json.loads(text) == {"tail": None, "values": [1.5, None], "n": 2}
