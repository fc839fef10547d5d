import csv
import io
import json

import pytest

from rainbowtx import cli
from rainbowtx.errors import InvariantViolation
from rainbowtx.formats import write_rgc
from rainbowtx.generators import gen_disjoint_cycles, gen_two_cliques


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run_cli([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("problem,n", [("hamilton", 9), ("matching", 10)])
def test_gen_solve_verify(tmp_path, problem, n):
    inst, cert = tmp_path / "d.rgc", tmp_path / "d.cert"
    assert run("gen", "--kind", "random-dirac", "--n", n, "--seed", 1, "--problem", problem, "--out", inst)[0] == 0
    code, out, _ = run("solve", "--problem", problem, "--in", inst, "--cert", cert)
    assert code == 0
    assert "steps" in json.loads(out) or "growth_steps" in json.loads(out)
    code, out, _ = run("verify", "--problem", problem, "--in", inst, "--cert", cert)
    assert (code, out.strip()) == (0, "VALID")

    body = json.loads(cert.read_text())
    body["edges"][0][2] = body["edges"][1][2]
    cert.write_text(json.dumps(body))
    code, out, _ = run("verify", "--problem", problem, "--in", inst, "--cert", cert)
    assert code == 1 and out.startswith("INVALID")


def test_verify_wrong_problem(tmp_path):
    inst, cert = tmp_path / "d.rgc", tmp_path / "d.cert"
    run("gen", "--kind", "random-dirac", "--n", 6, "--seed", 2, "--out", inst)
    run("solve", "--problem", "hamilton", "--in", inst, "--cert", cert)
    code, out, _ = run("verify", "--problem", "matching", "--in", inst, "--cert", cert)
    assert code == 1 and "shape-mismatch" in out


def test_brute(tmp_path):
    inst = tmp_path / "c.rgc"
    inst.write_text(write_rgc(gen_disjoint_cycles(5)))
    code, out, _ = run("brute", "--problem", "hamilton", "--in", inst)
    assert (code, out.strip()) == (1, "NOT FOUND")

    run("gen", "--kind", "random-dirac", "--n", 6, "--seed", 0, "--out", inst)
    cert = tmp_path / "b.cert"
    code, out, _ = run("brute", "--problem", "hamilton", "--in", inst, "--cert", cert)
    assert code == 0 and cert.exists()
    assert run("verify", "--problem", "hamilton", "--in", inst, "--cert", cert)[0] == 0

    run("gen", "--kind", "matching-tight", "--n", 6, "--seed", 0, "--out", inst)
    code, out, _ = run("brute", "--problem", "max-matching", "--in", inst)
    assert (code, out.strip()) == (0, "2")


def test_brute_guard_is_input_error(tmp_path):
    inst = tmp_path / "big.rgc"
    run("gen", "--kind", "random-dirac", "--n", 13, "--seed", 0, "--out", inst)
    code, _, err = run("brute", "--problem", "hamilton", "--in", inst)
    assert code == 2 and "limited" in err


def test_input_errors(tmp_path):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("gen", "--kind", "disjoint-cycles", "--n", 4, "--seed", 0, "--out", tmp_path / "x")[0] == 2
    assert run("gen", "--kind", "random", "--n", 4, "--seed", -1, "--out", tmp_path / "x")[0] == 2
    assert run("solve", "--problem", "hamilton", "--in", tmp_path / "missing", "--cert", tmp_path / "c")[0] == 2
    bad = tmp_path / "bad.rgc"
    bad.write_text("rgc 1\nn 3 s 1\ng 1 1\n0 0\n")
    code, _, err = run("solve", "--problem", "hamilton", "--in", bad, "--cert", tmp_path / "c")
    assert code == 2 and "line 4" in err
    nondirac = tmp_path / "nd.rgc"
    nondirac.write_text(write_rgc(gen_two_cliques(6)))
    assert run("solve", "--problem", "hamilton", "--in", nondirac, "--cert", tmp_path / "c")[0] == 2


def test_help_exits_zero(capsys):
    assert cli.run_cli(["--help"]) == 0


def test_internal_error_writes_crash_bundle(tmp_path, monkeypatch):
    inst = tmp_path / "d.rgc"
    run("gen", "--kind", "random-dirac", "--n", 7, "--seed", 1, "--out", inst)

    def broken(collection, stats=None):
        raise InvariantViolation("forced", {"vertices": [0, 1]})

    monkeypatch.setattr(cli, "find_hamilton", broken)
    monkeypatch.chdir(tmp_path)
    code, _, err = run("solve", "--problem", "hamilton", "--in", inst, "--cert", tmp_path / "c")
    assert code == 3 and "forced" in err
    bundles = list(tmp_path.glob("rainbowtx-crash-*.json"))
    assert len(bundles) == 1
    bundle = json.loads(bundles[0].read_text())
    assert bundle["state"] == {"vertices": [0, 1]}
    assert bundle["rgc"] == inst.read_text()


def test_bench(tmp_path):
    summary = tmp_path / "s.csv"
    code, out, _ = run("bench", "--problem", "hamilton", "--n", "5,8", "--trials", 3, "--seed", 10, "--csv", summary)
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert [(r["n"], r["seed"]) for r in records] == [(5, 10), (5, 11), (5, 12), (8, 10), (8, 11), (8, 12)]
    assert all(r["valid"] for r in records)
    rows = list(csv.DictReader(summary.open()))
    assert [(r["n"], r["trials"], r["failures"]) for r in rows] == [("5", "3", "0"), ("8", "3", "0")]

    again = run("bench", "--problem", "hamilton", "--n", "5,8", "--trials", 3, "--seed", 10)[1]
    strip = lambda text: [{k: v for k, v in json.loads(x).items() if not k.endswith("time_s")} for x in text.splitlines()]
    assert strip(again) == strip(out)
