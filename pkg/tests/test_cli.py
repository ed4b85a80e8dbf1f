import json

from crglobal import families
from crglobal.cli import main, parse_table_text, table_to_json


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def table_text(s):
    lines = [str(s.order)]
    lines.extend(" ".join(str(v) for v in row) for row in s.table)
    return "\n".join(lines) + "\n"


def test_round_trip_all_corpus_members(corpus_members):
    for name, s in corpus_members:
        doc = table_to_json(name, s)
        back = parse_table_text(doc)
        assert back.table == s.table and back.labels == s.labels, name
        back_txt = parse_table_text(table_text(s))
        assert back_txt.table == s.table, name


def test_analyze_left_zero(tmp_path, capsys):
    path = write(tmp_path, "l2.txt", table_text(families.left_zero(2)))
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "completely regular: yes" in out
    assert "component 0 [left-zero]" in out


def test_analyze_trivial(tmp_path, capsys):
    path = write(tmp_path, "t.txt", "1\n0\n")
    assert main(["analyze", path]) == 0
    assert "order: 1" in capsys.readouterr().out


def test_analyze_non_associative(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "2\n0 0\n1 0\n")
    assert main(["analyze", path]) == 2
    assert "(1*0)*1" in capsys.readouterr().err


def test_analyze_malformed(tmp_path, capsys):
    path = write(tmp_path, "bad.txt", "3\n0 1\n1 1\n")
    assert main(["analyze", path]) == 2


def test_breakable_cyclic_2(tmp_path, capsys):
    path = write(tmp_path, "z2.txt", table_text(families.cyclic_group(2)))
    assert main(["breakable", path]) == 0
    out = capsys.readouterr().out
    assert "pair-condition subsemigroups: 1" in out
    assert "triple-condition subsemigroups: 2" in out
    assert "MISMATCH" not in out


def test_breakable_left_zero(tmp_path, capsys):
    path = write(tmp_path, "l2.txt", table_text(families.left_zero(2)))
    assert main(["breakable", path]) == 0
    assert "pair-condition subsemigroups: 3" in capsys.readouterr().out


def test_breakable_bound(tmp_path, capsys):
    path = write(tmp_path, "l13.txt", table_text(families.left_zero(13)))
    assert main(["breakable", path]) == 2


def test_breakable_rejects_non_regular(tmp_path, capsys):
    path = write(tmp_path, "null.txt", "2\n0 0\n0 0\n")
    assert main(["breakable", path]) == 2


def test_globaliso_left_zero_pair(tmp_path, capsys):
    path = write(tmp_path, "l2.txt", table_text(families.left_zero(2)))
    eta_path = str(tmp_path / "eta.json")
    assert main(["globaliso", path, path, "--emit-eta", eta_path]) == 0
    out = capsys.readouterr().out
    assert out.count("psi ") >= 2
    etas = json.loads(open(eta_path).read())
    assert len(etas) == 6
    assert all(sorted(e["eta"]) == [0, 1] for e in etas)


def test_globaliso_distinct_globals(tmp_path, capsys):
    a = write(tmp_path, "z2.txt", table_text(families.cyclic_group(2)))
    b = write(tmp_path, "l2.txt", table_text(families.left_zero(2)))
    assert main(["globaliso", a, b]) == 1


def test_globaliso_trivial(tmp_path, capsys):
    path = write(tmp_path, "t.txt", "1\n0\n")
    assert main(["globaliso", path, path]) == 0


def test_globaliso_bound(tmp_path):
    path = write(tmp_path, "l6.txt", table_text(families.left_zero(6)))
    assert main(["globaliso", path, path]) == 2


def test_verify_quick_passes_and_is_deterministic(capsys, monkeypatch):
    monkeypatch.delenv("CRGLOBAL_INJECT", raising=False)
    assert main(["verify", "--profile", "quick"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--profile", "quick"]) == 0
    second = capsys.readouterr().out
    assert first == second
    for line in first.strip().splitlines():
        rec = json.loads(line)
        assert rec["ok"] is True


def test_verify_injection_fails(capsys, monkeypatch):
    monkeypatch.setenv("CRGLOBAL_INJECT", "1")
    assert main(["verify", "--profile", "quick"]) == 3
    out = capsys.readouterr().out
    bad = [json.loads(line) for line in out.strip().splitlines() if not json.loads(line)["ok"]]
    assert bad and all(rec["witness"] for rec in bad)


def test_corpus_export_round_trip(tmp_path, capsys):
    out_dir = str(tmp_path / "corpus")
    assert main(["corpus", "--out", out_dir, "--profile", "quick"]) == 0
    reloaded = parse_table_text(open(f"{out_dir}/clifford-3.json").read())
    assert reloaded.table == dict(families.corpus("quick"))["clifford-3"].table


def test_unreadable_path_is_operational_error(capsys):
    assert main(["analyze", "/no/such/file"]) == 2


def test_env_overrides_default_bound(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("CRGLOBAL_MAX_ORDER", "3")
    path = write(tmp_path, "rb.txt", table_text(families.rect_band(2, 2)))
    assert main(["breakable", path]) == 2
    monkeypatch.delenv("CRGLOBAL_MAX_ORDER")
    assert main(["breakable", path]) == 0
