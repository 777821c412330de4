import os
import subprocess
import sys

import pytest

from gradedtraces.cli import main
from gradedtraces.config import ConfigError, parse_bounds, parse_scalar, parse_text
from gradedtraces.runner import load_golden, run_config, resolve_config, shipped_configs
from gradedtraces.scalars import field


def read(path):
    with open(path) as f:
        return f.read()


def test_config_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match=r":3: unknown key 'colour'"):
        parse_text("[field]\ncharacteristic = 0\ncolour = red\n", "x.cfg")
    with pytest.raises(ConfigError, match=r":2: unknown section"):
        parse_text("[field]\n[nonsense]\n", "x.cfg")
    with pytest.raises(ConfigError, match="missing \\[field\\]"):
        parse_text("[run]\ntitle = x\n", "x.cfg")


def test_scalar_and_bounds_syntax():
    F = field(0, 3)
    z = F.zeta_pow(1)
    assert parse_scalar(F, "-zeta") == F.neg(z)
    assert parse_scalar(F, "1+zeta") == F.add(F.one, z)
    assert parse_scalar(F, "zeta^2") == F.mul(z, z)
    assert parse_scalar(field(0, 1), "1/2") == field(0, 1).inv(field(0, 1).from_int(2))
    assert parse_bounds("N=5 k=auto order=2") == {"max_N": 5, "max_k": None, "order_bound": 2}


def test_golden_quotient_lines():
    F = field(0, 4)
    g = load_golden(F, "a2_swap_nonnormalizing")
    assert len(g["swap"]) == 2
    assert g["swap"][0][1] == g["swap"][1][1]


def test_every_shipped_config_parses():
    names = shipped_configs()
    assert "s3_transpositions" in names and "sl23" in names
    for n in names:
        assert os.path.exists(resolve_config(n))
    with pytest.raises(ConfigError):
        resolve_config("no_such_config")


def test_run_writes_reports(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["run", "--config", "s3_transpositions", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    report = read(out / "s3_transpositions.report.txt")
    assert printed == report
    assert "result: OK" in report
    lines = read(out / "s3_transpositions.traces.txt").splitlines()
    assert lines == [
        "e | 1 3 4 3 1 | (2)_{t}^2 (3)_{t} | 12 | 1",
        "(1 2) | 1 -1 0 -1 1 | (2)_{-t}^2 (3)_{t} | 0 | 1",
        "(1 2 3) | 1 0 -2 0 1 | (2)_{t}^2 (2)_{-t}^2 | 0 | 1",
    ]
    assert os.listdir(out / "cache")


def test_output_is_deterministic_across_threads_and_cache(tmp_path):
    texts = []
    for i, extra in enumerate([[], ["--threads", "3"], [], ["--no-cache"]]):
        out = tmp_path / ("o" if i < 3 else "n")
        assert main(["run", "--config", "g20", "--out", str(out)] + extra) == 0
        texts.append(read(out / "g20.report.txt") + read(out / "g20.traces.txt"))
    assert len(set(texts)) == 1


def test_verify_adds_cross_checks(tmp_path):
    assert main(["verify", "--config", "a4xz2", "--out", str(tmp_path)]) == 0
    report = read(tmp_path / "a4xz2.report.txt")
    assert "symmetrizer" in report and "xi_x is a bijection" in report


def test_toy_mode_reports_the_failing_class(tmp_path, capsys):
    assert main(["toy", "--config", "d4_toy", "--out", str(tmp_path)]) == 1
    out = capsys.readouterr().out
    assert "FAIL  character equals the predicted q-symbol product (decomposition): a*b" in out
    assert "PASS  fiber lemma (decomposition)" in out


def test_config_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[field]\ncharacteristic = 0\n[orbits]\nblock = (1 2) | (1 2) = -1\n")
    assert main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert "config error" in capsys.readouterr().err


def test_bad_block_reports_its_line(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("[field]\ncharacteristic = 0\n[group]\ncatalog = S3\n[orbits]\n"
                   "block = (1 2) | (1 2 3) = -1\n")
    assert main(["run", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert ":6:" in capsys.readouterr().err


def test_golden_mismatch_fails(tmp_path):
    cfg = read(resolve_config("s3_transpositions")).replace(
        "golden = s3_transpositions", "golden = a4_char2")
    p = tmp_path / "wrong.cfg"
    p.write_text(cfg)
    res = run_config(str(p))
    assert not res.ok


def test_build_cap_is_reported(tmp_path):
    cfg = read(resolve_config("s3_transpositions")).replace("max_degree = 40", "max_degree = 2")
    assert "max_degree = 2" in cfg
    p = tmp_path / "capped.cfg"
    p.write_text(cfg)
    res = run_config(str(p))
    assert not res.ok and not res.lines


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "gradedtraces", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "g20" in r.stdout.split()
