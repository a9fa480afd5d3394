import json

import pytest

from hvdihedral.hvcli import main
from hvdihedral.hvcli.config import load_config

BASE = ["--disc", "-23", "--xi-order", "3"]


def test_main_identity_report(tmp_path, capsys):
    out = tmp_path / "mi.json"
    code = main(["verify", "main-identity", *BASE, "--p", "11", "--ell", "5", "--log-convention", "compatible",
                 "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["verdict"] == "pass" and doc["mode"] == "main-identity"
    mi = [c for c in doc["checks"] if c["name"] == "main identity"][0]
    assert mi["witness"]["matches"]


def test_main_identity_norm_convention_fails_honestly(capsys):
    assert main(["verify", "main-identity", *BASE, "--p", "11", "--ell", "5"]) == 1
    assert "compatible" in capsys.readouterr().out


def test_split_prime_is_skipped():
    assert main(["verify", "main-identity", *BASE, "--p", "13", "--ell", "3"]) == 2  # ell too small
    assert main(["verify", "main-identity", *BASE, "--p", "31", "--ell", "5"]) == 0  # 31 splits: trivial


@pytest.mark.parametrize("argv", [
    ["verify", "main-identity", *BASE, "--p", "13", "--ell", "5"],      # 5 does not divide 12
    ["verify", "main-identity", "--disc", "-23", "--xi-order", "1", "--p", "11", "--ell", "5"],
    ["verify", "opt-unique", "--disc", "-23", "--xi-order", "5"],         # no such character
    ["verify", "opt-unique", "--disc", "-25", "--xi-order", "2"],         # not a discriminant
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "config error" in capsys.readouterr().err


def test_config_file(tmp_path):
    cfg_file = tmp_path / "run.cfg"
    cfg_file.write_text("[character]\ndisc = -23\nxi_order = 3\n\n[main-identity]\np = 11\nell = 5\n")
    cfg = load_config(str(cfg_file), {"ell": None, "t": 1})
    assert (cfg.disc_K, cfg.c, cfg.xi_order, cfg.p, cfg.ell, cfg.t) == (-23, 1, 3, 11, 5, 1)
    assert main(["verify", "main-identity", "--config", str(cfg_file), "--log-convention", "compatible"]) == 0


def test_missing_config_file_exit_2(tmp_path):
    assert main(["properties", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_dump_brandt(tmp_path, capsys):
    assert main(["dump", "brandt", "--p", "11", "--bound", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[2:] == ["1,2", "3,0"]
    out = tmp_path / "b.json"
    assert main(["dump", "brandt", "--p", "11", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["matrix"] == [[1, 2], [3, 0]] and doc["weights"] == [2, 3]
    assert (tmp_path / "b.csv").exists() and (tmp_path / "b_brandt.png").exists()


def test_dump_units(tmp_path):
    out = tmp_path / "u.json"
    assert main(["dump", "units", *BASE, "--lambdas", "2", "--json", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["lambda"] == 2 and len(doc["conj_values"]) == 3


def test_opt_unique_direct_and_figure(tmp_path):
    out = tmp_path / "ou.json"
    code = main(["verify", "opt-unique", *BASE, "--p", "7,11,17", "--bound", "20", "--json", str(out)])
    doc = json.loads(out.read_text())
    by_name = {c["name"]: c for c in doc["checks"]}
    for p in (7, 11, 17):
        assert by_name[f"theta p={p}"]["status"] == "pass"
        assert by_name[f"direct f^opt(z,{p}z) = Theta_{p}"]["status"] == "pass"
    assert (tmp_path / "ou_theta.png").exists()
    assert code == (0 if doc["verdict"] == "pass" else 1)
