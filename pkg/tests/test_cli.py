import io

import pytest

from polylat.cli import run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_flats_five_flats(data_dir):
    code, out, _ = call("flats", data_dir / "five_flats.pm")
    assert code == 0
    assert "5 flats" in out
    starred = [ln.split()[0] for ln in out.splitlines() if ln.endswith("*")]
    assert starred == ["{1}", "{3}", "{1,2}"]


def test_verify_graph_minors_file(data_dir):
    code, out, _ = call("verify", "graph-minors", data_dir / "triangle_pendant.g")
    assert code == 0
    assert "45 = 45 pass" in out
    assert out.startswith("theorem=graph-minors seed=- status=pass lhs=45 rhs=45 ms=")


def test_validate_bad_exits_1(data_dir):
    code, out, _ = call("validate", data_dir / "bad.pm")
    assert code == 1
    assert "monotone violated at ({1}, {1,2})" in out
    assert call("validate", data_dir / "five_flats.pm")[0] == 0


def test_usage_errors_exit_2(data_dir):
    assert call("frobnicate")[0] == 2
    assert call("flats", data_dir / "five_flats.pm", "--bogus")[0] == 2
    assert call("validate", data_dir / "missing.pm")[0] == 2
    assert call("closure", data_dir / "k3.g")[0] == 2


def test_parse_error_exits_1(tmp_path):
    f = tmp_path / "x.pm"
    f.write_text("elements: 1\nrank {} = 0\n")
    code, _, err = call("validate", f)
    assert code == 1 and "missing rank for subset {1}" in err


def test_closure(data_dir):
    assert call("closure", data_dir / "five_flats.pm", "2")[1] == "{1,2}\n"
    code, out, _ = call("closure", data_dir / "pair.pm")
    assert out.splitlines() == ["{} -> {}", "{1} -> {1}", "{2} -> {2}", "{1,2} -> {1,2}"]


def test_minor_order_matters(data_dir):
    code, out, _ = call("minor", data_dir / "m3.gl", "--delete", "g1", "--contract", "g2")
    assert code == 0 and "# minor <1 | g2>" in out
    code, out, _ = call("minor", data_dir / "m3.gl", "--by-ground", "--contract", "2", "--delete", "1")
    assert code == 0 and "elements: g2\n" in out


def test_minor_of_polymatroid(data_dir):
    code, out, _ = call("minor", data_dir / "five_flats.pm", "--contract", "3")
    assert code == 0
    assert "rank {1,2} = 1" in out


def test_enumerate_and_realize(data_dir):
    assert call("enumerate-minors", data_dir / "vee.pos", "--count-only")[1] == "count=19\n"
    code, out, _ = call("realize", data_dir / "m3.gl")
    assert code == 0 and "rank {g1,g2} = 3" in out


def test_diagram_is_stable(data_dir):
    a = call("diagram", data_dir / "triangle_pendant.g")[1]
    b = call("diagram", data_dir / "triangle_pendant.g")[1]
    assert a == b and a.startswith("digraph")
    assert call("diagram", data_dir / "triangle_pendant.g", "--graph")[1].startswith("graph")
    assert "rankdir=BT" in call("diagram", data_dir / "m3.gl", "--hasse")[1]


def test_verify_suite_and_seed_env(monkeypatch):
    monkeypatch.setenv("POLYLAT_SEED", "40")
    code, out, _ = call("verify", "weighting", "--count", "2")
    assert code == 0
    assert "seed=40" in out and "seed=41" in out
    assert out.splitlines()[-1].startswith("summary: 2/2 passed")
    monkeypatch.setenv("POLYLAT_SEED", "x")
    assert call("verify", "weighting", "--count", "1")[0] == 2


def test_random_is_deterministic():
    a = call("random", "polymatroid", "--seed", "9")[1]
    assert a == call("random", "polymatroid", "--seed", "9")[1]
    assert a.startswith("elements:")
