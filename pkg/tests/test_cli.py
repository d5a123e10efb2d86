from __future__ import annotations

import io
import json

import pytest

from hilbsing import cli


def run(*argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def test_tangent_table():
    code, out = run("tangent", "x^2,y^2,z^3,xz,yz^2,xy")
    assert code == 0
    assert out == (
        "ideal     x^2,xy,xz,y^2,yz^2,z^3\n"
        "colength  6\n"
        "pure exp  m1=2 m2=2 m3=3\n"
        "borel     True\n"
        "I_0       (y^2,yz^2,z^3)\n"
        "I_1       (y,z)\n"
        "I_2       (1)\n"
        "T         24\n"
        "psi(m1)   28\n"
        "chain     T=24 <= b1=26 <= b2=26 <= b3=28\n"
    )


def test_tangent_records():
    code, out = run("tangent", "x,y,z^4", "--format", "records")
    rec = json.loads(out)
    assert code == 0 and rec["T"] == 12 and rec["l"] == 4 and rec["psi"] == 12


def test_tangent_csv_and_trace():
    code, out = run("tangent", "x^2,xy,xz,y^2,yz,z^2", "--format", "csv", "--trace")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("ideal,l,m1")
    assert sum(int(ln.rsplit("dim=", 1)[1]) for ln in lines[2:]) == 18


def test_tangent_non_borel():
    code, out = run("tangent", "x^2,y,z")
    assert code == 0 and "not Borel" in out and "psi(m1)   -" in out


@pytest.mark.parametrize("text", ["x^2", "x^2,y,", "1", "x,y,w"])
def test_parse_errors_exit_2(text, capsys):
    code, _ = run("tangent", text)
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_hom2d_fig3():
    code, out = run("hom2d", "y^2,z^3,yz^2", "y,z", "--format", "records")
    rec = json.loads(out)
    assert code == 0
    assert (rec["h"], rec["t"], rec["hom_components"], rec["hom_formula"]) == (1, 3, 3, 3)
    assert sorted(map(tuple, rec["ghosts"])) == [(-2, -1), (-1, -2), (-1, -1)]


def test_hom2d_fig4_table():
    code, out = run("hom2d", "y^4,z^6,y^3z,y^2z^3,yz^5", "y^2,z^4,yz^2")
    assert code == 0
    assert "t = 3\n" in out and "ghosts (4):" in out and "(-1,-3)" in out
    assert "hom (components) = 17" in out


def test_hom2d_dump():
    code, out = run("hom2d", "y^2,z^3,yz^2", "y,z", "--dump")
    assert code == 0 and out.count("\tbounded\t") == 3


def test_enumerate():
    code, out = run("enumerate", "--colength", "4")
    assert code == 0
    assert out.splitlines() == ["x,y,z^4", "x^2,xy,xz,y^2,yz,z^2", "x,y^2,yz,z^3"]
    code, out = run("enumerate", "--colength", "5", "--dim", "2")
    assert out.splitlines() == ["y,z^5", "y^2,yz,z^4", "y^2,yz^2,z^3"]


def test_enumerate_resume_and_shard():
    _, full = run("enumerate", "--colength", "9", "--format", "records")
    recs = [json.loads(x) for x in full.splitlines()]
    _, rest = run("enumerate", "--colength", "9", "--after", json.dumps(recs[3]["key"]))
    assert rest.splitlines() == [r["ideal"] for r in recs[4:]]
    shards = []
    for i in range(3):
        _, o = run("enumerate", "--colength", "9", "--shard", f"{i}/3")
        shards += o.splitlines()
    assert sorted(shards) == sorted(r["ideal"] for r in recs)
    assert run("enumerate", "--colength", "9", "--shard", "3/3")[0] == 2


def test_verify_conjecture_exit_codes():
    code, out = run("verify", "conjecture", "--k", "2")
    rep = json.loads(out)["report"]
    assert code == 0 and rep["ok"] and rep["max_T"] == 18
    assert run("verify", "conjecture")[0] == 2


def test_verify_bound_per_ideal_records():
    code, out = run("verify", "bound", "--colength", "7", "--per-ideal")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert len(lines) == 9 + 1 and "report" in lines[-1]
    assert all(set(r) == set(cli.RECORD_FIELDS) for r in lines[:-1])


def test_verify_deterministic_and_jobs():
    a = run("verify", "necessary", "--k", "3", "--per-ideal")
    b = run("verify", "necessary", "--k", "3", "--per-ideal", "--jobs", "2")
    assert a == b and a[0] == 0


def test_verify_timing_opt_in():
    _, out = run("verify", "bound", "--colength", "5", "--per-ideal", "--timing")
    lines = [json.loads(x) for x in out.splitlines()]
    assert "elapsed_ms" in lines[0] and "wall_time_s" in lines[-1]["report"]


def test_cache_warm_equals_cold(tmp_path):
    cache = tmp_path / "t.jsonl"
    cold = run("verify", "bound", "--colength", "9", "--per-ideal", "--cache", str(cache))
    n = len(cache.read_text().splitlines())
    warm = run("verify", "bound", "--colength", "9", "--per-ideal", "--cache", str(cache))
    assert cold == warm
    assert n == 17 and len(cache.read_text().splitlines()) == n


def test_cache_ignores_other_versions(tmp_path):
    cache = tmp_path / "t.jsonl"
    cache.write_text(json.dumps({"ideal": "x^2,xy,xz,y^2,yz,z^2", "T": 999, "version": "old"}) + "\nnot json\n")
    code, out = run("verify", "conjecture", "--k", "2", "--cache", str(cache))
    assert code == 0 and json.loads(out)["report"]["max_T"] == 18


def test_shard_reports_merge(tmp_path):
    paths = []
    for i in range(3):
        p = tmp_path / f"r{i}.json"
        assert run("verify", "conjecture", "--k", "3", "--shard", f"{i}/3", "--report", str(p))[0] == 0
        paths.append(str(p))
    code, out = run("merge", *paths)
    _, single = run("verify", "conjecture", "--k", "3")
    assert code == 0 and out == single


def test_verify_table_and_csv():
    code, out = run("verify", "psi", "--k", "20", "--format", "table")
    assert code == 0 and out.startswith("PASS psi-monotonicity")
    code, out = run("verify", "lemma-m1", "--colength", "12", "--format", "table")
    assert code == 0 and out.startswith("PASS lemma-m1 l=12")
    code, out = run("verify", "bound", "--colength", "4", "--per-ideal", "--format", "csv")
    assert out.splitlines()[0] == ",".join(cli.RECORD_FIELDS)


def test_figure_stable(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    for p in (a, b):
        assert run("figure", "x^2,y^2,z^3,xz,yz^2,xy", "-o", str(p))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<?xml") and a.read_text().count('class="top"') == 6


def test_figure_pair_and_empty():
    code, svg = run("figure", "y^2,z^3,yz^2", "--pair", "y,z")
    assert code == 0 and svg.count('class="ghost"') == 3
    code, svg = run("figure", "1")
    assert code == 0 and svg.endswith("</svg>\n") and "<polygon" not in svg


def test_usage_error():
    assert run("nonsense")[0] == 2
    assert run("enumerate")[0] == 2


def test_trivial_examples():
    code, out = run("tangent", "x,y,z", "--format", "records")
    assert code == 0 and json.loads(out)["T"] == 3
    code, out = run("hom2d", "y,z", "y,z", "--format", "records")
    rec = json.loads(out)
    assert code == 0 and rec["hom_components"] == 2 and rec["ghosts"] == []
    assert run("verify", "bound", "--colength", "6")[0] == 0
