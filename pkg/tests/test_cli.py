import json

import pytest

from realcremona.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


ONE_PAIR = {"family": 7, "pairs": [{"re": "1", "im": "1"}]}


@pytest.mark.parametrize("fam", range(1, 9))
def test_verify_every_family(capsys, fam):
    code, out, _ = run(capsys, "verify", "--family", str(fam), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["fail"] == 0 and doc["config"]["family"] == fam


def test_verify_config_file(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--config", write(tmp_path, "a.json", ONE_PAIR))
    assert code == 0 and "0 fail" in out


def test_verify_real_point_is_usage_error(capsys, tmp_path):
    bad = {"family": 7, "pairs": [{"re": "1", "im": "0"}]}
    code, _, err = run(capsys, "verify", "--family", "7", "--config", write(tmp_path, "r.json", bad))
    assert code == 2 and "error" in err


def test_verify_family_mismatch(capsys, tmp_path):
    assert run(capsys, "verify", "--family", "8", "--config", write(tmp_path, "a.json", ONE_PAIR))[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "verify", "--family", "11")[0] == 2


def test_conjugate_json(capsys, tmp_path):
    a = write(tmp_path, "a.json", ONE_PAIR)
    b = write(tmp_path, "b.json", {"family": 7, "pairs": [{"re": "2", "im": "2"}]})
    code, out, _ = run(capsys, "conjugate", "--family", "7", "--a", a, "--b", b, "--json")
    assert code == 0 and json.loads(out) == {"conjugate": True, "witness": {"lambda": "2", "inverted": False}}


def test_conjugate_family8(capsys, tmp_path):
    a = write(tmp_path, "a.json", {"family": 8, "points": {"real": ["0", "1"], "pairs": [{"re": "2", "im": "1"}]}})
    b = write(tmp_path, "b.json", {"family": 8, "points": {"real": ["1", "2"], "pairs": [{"re": "3", "im": "1"}]}})
    code, out, _ = run(capsys, "conjugate", "--a", a, "--b", b, "--json")
    assert code == 0 and json.loads(out) == {"conjugate": True, "witness": {"moebius": [["1", "1"], ["0", "1"]]}}


def test_conjugate_mixed_families(capsys, tmp_path):
    a = write(tmp_path, "a.json", ONE_PAIR)
    b = write(tmp_path, "b.json", {"family": 8, "points": {"real": ["0", "1", "2", "3"]}})
    assert run(capsys, "conjugate", "--a", a, "--b", b)[0] == 2
    c = write(tmp_path, "c.json", {"family": 7, "pairs": [{"re": "1", "im": "1"}, {"re": "1", "im": "2"}]})
    assert run(capsys, "conjugate", "--a", a, "--b", c)[0] == 2


def test_abelianize(capsys, tmp_path):
    cfg = write(tmp_path, "a.json", {"family": 7, "pairs": [{"re": "1", "im": "1"}, {"re": "1", "im": "2"}]})
    code, out, _ = run(capsys, "abelianize", "--config", cfg, "--element", "phi", "--json")
    assert code == 0 and json.loads(out)["support"] == ["1/2", "1"]
    code, out, _ = run(capsys, "abelianize", "--config", cfg, "--literal-remark", "--json")
    doc = json.loads(out)
    assert doc["rule"] == "literal" and doc["diverges_from_swap_rule"] is True
    assert run(capsys, "abelianize", "--config", cfg, "--element", "zzz")[0] == 2
    assert run(capsys, "abelianize", "--family", "7", "--element", "kernel")[0] == 0


def test_picard(capsys):
    code, out, _ = run(capsys, "picard", "--surface", "X3F0", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["invariant_rank"] == 3
    assert doc["generators"]["alpha2"]["order"] == 6
    assert run(capsys, "picard", "--surface", "nope")[0] == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--json")
    models = json.loads(out)["models"]
    assert code == 0 and len(models) == 10
    by_id = {m["id"]: m for m in models}
    assert {"E_p", "f_p", "g_p"} <= set(by_id["X3F0"]["curves"]) and "Q31" in by_id


def test_report_all_unknown_suite(capsys):
    assert run(capsys, "report-all", "--inject-fault", "nope")[0] == 2
