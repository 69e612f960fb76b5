import io
import json
import subprocess
import sys

import pytest

from diricci.cli import format_graph, parse_graph_file, parse_graph_text, rederive_floats, run
from diricci.errors import DuplicateEdge, NotStronglyConnected, ParseError, SelfLoop
from diricci.generators import directed_complete, triforce
from diricci.products import cartesian_product, make_spec


def call(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def tri_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text(format_graph(triforce()))
    return str(path)


def test_parse_cycle_with_comments():
    g = parse_graph_text("# a cycle\n\na b\nb c  # inline\nc a\n")
    assert g.vertices == ("a", "b", "c") and g.edge_count == 3


def test_parse_weights():
    g = parse_graph_text("a b 2/3\nb a 4\n")
    assert str(g.weight("a", "b")) == "2/3" and g.weight("b", "a") == 4


def test_parse_errors():
    with pytest.raises(NotStronglyConnected) as info:
        parse_graph_text("a b 2/3\n")
    assert info.value.line is None
    with pytest.raises(SelfLoop) as info:
        parse_graph_text("a b\nb a\na a 1\n")
    assert info.value.line == 3
    with pytest.raises(DuplicateEdge) as info:
        parse_graph_text("a b\n\nb a\na b\n")
    assert info.value.line == 4
    for text, line in (("a b c d\n", 1), ("a b\nb a 0.5\n", 2), ("a b 1/0\n", 1), ("a b -1\n", 1)):
        with pytest.raises(ParseError) as info:
            parse_graph_text(text)
        assert info.value.line == line


def test_zero_weight_carries_line():
    with pytest.raises(Exception) as info:
        parse_graph_text("a b\nb a 0\n")
    assert info.value.line == 2


def test_format_round_trip(tmp_path):
    k3 = directed_complete(3)
    for g in (triforce(), directed_complete(5), cartesian_product(make_spec(k3, triforce(), 2, 3))):
        path = tmp_path / "g.txt"
        path.write_text(format_graph(g))
        assert parse_graph_file(str(path)) == g


def test_ricci_triforce_edges(tri_file):
    code, out, _ = call(["ricci", tri_file, "--pairs", "edges"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 10 and all(line.endswith(" 3/4") for line in lines[:9])
    assert lines[-1] == "K = 3/4"


@pytest.mark.parametrize("method", ["lp", "eps", "brute"])
def test_ricci_methods_agree(tri_file, method):
    code, out, _ = call(["ricci", tri_file, "--method", method, "--json"])
    assert code == 0
    data = json.loads(out)
    assert len(data["kappa"]) == 30 and data["K"]["exact"] == "3/4"


def test_gen_piped_into_ricci(monkeypatch, tri_file):
    _, text, _ = call(["gen", "--name", "triforce"])
    piped = call(["ricci", "--pairs", "edges", "--json"], stdin=text, monkeypatch=monkeypatch)
    from_file = call(["ricci", tri_file, "--pairs", "edges", "--json"])
    assert piped[0] == 0 and piped[1] == from_file[1]


def test_maximal_k3(monkeypatch):
    _, text, _ = call(["gen", "--name", "kn:3"])
    code, out, _ = call(["maximal", "--json"], stdin=text, monkeypatch=monkeypatch)
    data = json.loads(out)
    assert code == 0 and data["is_maximal"] and data["passed"] and all(data["checks"].values())


def test_maximal_non_maximal_exit_zero(monkeypatch):
    _, text, _ = call(["gen", "--name", "kn:6"])
    code, out, _ = call(["maximal", "--json"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["is_maximal"] is False


def test_bounds_k6(monkeypatch):
    _, text, _ = call(["gen", "--name", "kn:6"])
    code, out, _ = call(["bounds", "--json"], stdin=text, monkeypatch=monkeypatch)
    data = json.loads(out)
    assert code == 0
    assert data["K"]["exact"] == "1/1" and data["Lambda"]["exact"] == "9/4"
    assert data["bound"]["exact"] == "9/4" and data["diameter"] == 2
    assert data["equality"] is False and data["pairwise_check"] is True


def test_bounds_flat_graph(monkeypatch):
    _, text, _ = call(["gen", "--name", "cycle:4"])
    code, out, _ = call(["bounds", "--json"], stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["bound"] is None


def test_info_and_mean(tri_file):
    code, out, _ = call(["info", tri_file, "--json"])
    assert code == 0 and json.loads(out) == {
        "vertices": ["x1", "x2", "x3", "x4", "x5", "x6"], "n": 6, "edges": 9, "eulerian": True, "diameter": 4,
    }
    code, out, _ = call(["mean", tri_file, "--json"])
    data = json.loads(out)
    assert {row["H"]["exact"] for row in data["mean"]} == {"-3/2"} and data["Lambda"]["exact"] == "3/1"


def test_suspension(tri_file):
    code, out, _ = call(["suspension", tri_file, "--poles", "x1,x5", "--json"])
    assert code == 0 and json.loads(out)["suspended"] is True
    code, out, _ = call(["suspension", tri_file, "--poles", "x1,x2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["covered"] is False
    assert call(["suspension", tri_file, "--poles", "x1"])[0] == 2
    assert call(["suspension", tri_file, "--poles", "x1,zz"])[0] == 2
    assert call(["suspension", tri_file, "--poles", "x1,x1"])[0] == 2


def test_spectrum(tri_file):
    code, out, _ = call(["spectrum", tri_file, "--json"])
    data = json.loads(out)
    assert code == 0 and abs(data["lambda1"] - 0.75) < 1e-9 and abs(data["lichnerowicz_margin"]) < 1e-9


def test_product(tmp_path, tri_file):
    k3 = tmp_path / "k3.txt"
    k3.write_text(format_graph(directed_complete(3)))
    code, out, _ = call(["product", "--left", str(k3), "--right", str(k3)])
    assert code == 0 and parse_graph_text(out).n == 9
    code, out, _ = call(["product", "--left", str(k3), "--right", tri_file, "--alpha", "2", "--verify", "--json"])
    data = json.loads(out)
    assert code == 0 and data["agree"]
    assert data["maximal_equivalence"] == {"factors_balanced": True, "product_maximal": True}
    dest = tmp_path / "prod.txt"
    code, out, _ = call(["product", "--left", str(k3), "--right", str(k3), "--beta", "1/2", "-o", str(dest)])
    assert code == 0 and out == "" and parse_graph_file(str(dest)).n == 9
    assert call(["product", "--left", str(k3), "--right", str(k3), "--alpha", "0"])[0] == 2
    assert call(["product", "--left", str(k3), "--right", str(k3), "--alpha", "0.5"])[0] == 2


def test_json_round_trip(tri_file):
    for argv in (["ricci", tri_file], ["mean", tri_file], ["bounds", tri_file], ["maximal", tri_file]):
        _, out, _ = call(argv + ["--json"])
        assert json.dumps(rederive_floats(json.loads(out)), indent=2) + "\n" == out


def test_bad_input_exit_codes(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("a b\nb a\nc c\n")
    code, _, err = call(["info", str(bad)])
    assert code == 2 and "line 3" in err
    assert call(["info", str(tmp_path / "missing.txt")])[0] == 2
    assert call(["nonsense"])[0] == 2
    assert call(["gen", "--name", "kn:1"])[0] == 2
    assert call(["ricci", "--method", "magic"])[0] == 2


def test_brute_method_too_large(tmp_path):
    path = tmp_path / "c9.txt"
    _, text, _ = call(["gen", "--name", "cycle:9"])
    path.write_text(text)
    assert call(["ricci", str(path), "--method", "brute"])[0] == 2


def test_console_script_pipeline():
    gen = subprocess.run(
        [sys.executable, "-m", "diricci.cli", "gen", "--name", "kn:3"], capture_output=True, text=True, check=True
    )
    res = subprocess.run(
        [sys.executable, "-m", "diricci.cli", "maximal"], input=gen.stdout, capture_output=True, text=True
    )
    assert res.returncode == 0 and "is_maximal: true" in res.stdout
