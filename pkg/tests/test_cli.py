import io as _io
import json
from fractions import Fraction as F

import pytest

from squarepack import io
from squarepack.bounds import check_certificate
from squarepack.cli import main
from squarepack.constructions import grid


def run(*argv):
    out = _io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("n, text", [
    (12, "12 = 3² + 2·1 + 1; conjectured f = 10/3 ≈ 3.3333"),
    (9, "9 = 3²; f = 3"),
    (3, "3 = 2² + 2·(−1) + 1; conjectured f = 3/2"),
])
def test_conjecture(n, text):
    code, out = run("conjecture", n)
    assert code == 0 and text in out


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        run("conjecture", 0)
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        run("bound", 3, 1, "--direction", "sideways")
    assert exc.value.code == 1
    assert run("construct", 5)[0] == 1  # missing slack
    assert run("bound", 2, 5)[0] == 1


def test_construct_writes_documents(tmp_path):
    js, svg = tmp_path / "p.json", tmp_path / "p.svg"
    code, out = run("construct", 7, "--out-json", js, "--out-svg", svg)
    assert code == 0 and "verifier: OK" in out
    doc = json.loads(js.read_text())
    assert len(doc["squares"]) == 7 and doc["side_sum"] == "5/2"
    assert svg.read_text().count('class="square"') == 7

    code, _ = run("construct", 5, "--slack", "1/100", "--out-json", js)
    p = io.loads_packing(js.read_text())
    assert code == 0 and len(p) == 5 and sum(s.side for s in p) >= F(199, 100)

    code, _ = run("construct", 16, "--out-json", js)
    assert io.loads_packing(js.read_text()) == grid(4).__class__(grid(4).squares, "conjectured n=16")


def test_construct_reports_unwritable_path(tmp_path):
    code, _ = run("construct", 7, "--out-json", tmp_path / "missing" / "p.json")
    assert code == 1


def test_bound(tmp_path):
    cert_path = tmp_path / "c.json"
    code, out = run("bound", 3, 1, "--b", 100, "--out", cert_path)
    assert code == 0
    assert f"<= {F(10, 3) + F(101, 29997)}" in out
    assert check_certificate(io.loads_certificate(cert_path.read_text()))

    code, out = run("bound", 2, 0)
    assert "step one (below): f(5) <= 7/3" in out

    code, out = run("bound", 5, -2, "--direction", "above", "--schedule", "10,100,1000", "--out", cert_path)
    assert code == 0 and "<= 23/5" in out
    assert io.loads_certificate(cert_path.read_text()).limit_claim == F(23, 5)


def test_chain(tmp_path):
    code, out = run("chain", "--start", 2, "--target", -1, "--k", 5, "--out", tmp_path / "c.json")
    assert code == 0 and "24/5" in out and "certificate check: OK" in out


def test_search(tmp_path):
    out_path = tmp_path / "best.json"
    code, out = run("search", 2, "--seed", 1, "--restarts", 2, "--iters", 1500, "--out", out_path)
    assert code == 0 and "counterexample: no" in out
    p = io.loads_packing(out_path.read_text())
    assert sum(s.side for s in p) >= F(99, 100)

    code, out = run("search", 3, "--seed", 7, "--restarts", 4, "--iters", 3000)
    assert code == 0 and "counterexample: no" in out and "conjectured 3/2" in out


def test_verify_exit_codes(tmp_path):
    good = tmp_path / "g.json"
    good.write_text(io.dumps_packing(grid(3)))
    assert run("verify", good)[0] == 0

    dup = tmp_path / "d.json"
    doc = io.packing_to_dict(grid(2))
    doc["squares"].append(doc["squares"][1])
    del doc["count"], doc["side_sum"]
    dup.write_text(json.dumps(doc))
    code, out = run("verify", dup)
    assert code == 1 and "overlap (1, 4)" in out

    broken = tmp_path / "b.json"
    broken.write_text(io.dumps_packing(grid(2)).replace('"x": "1/2"', '"x": "1/0"', 1))
    assert run("verify", broken)[0] == 1
    assert run("verify", tmp_path / "nope.json")[0] == 1


def test_verify_names_the_bad_field(tmp_path, capsys):
    broken = tmp_path / "b.json"
    broken.write_text(io.dumps_packing(grid(2)).replace('"x": "1/2"', '"x": "1/0"', 1))
    run("verify", broken)
    assert "squares[1].x" in capsys.readouterr().err


def test_epsilon():
    code, out = run("epsilon", "2,0,1.98", "3,1,10/3", "4,0,41/10")
    lines = out.splitlines()
    assert code == 0 and "-1/25" in lines[1] and "above conjecture" in lines[3]
    assert run("epsilon", "2,0")[0] == 1
