import io as _io
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ecplab import io
from ecplab.cli import main
from ecplab.code import LinearCode, random_code
from ecplab.fixtures import glynn_code, glynn_field
from ecplab.gf import GF, field_extend
from ecplab.grs import INF, GrsSpec, random_grs_spec


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# formats
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("F", [GF(7), GF(8), glynn_field(), field_extend(GF(4), 2)],
                         ids=["GF7", "GF8", "glynn9", "tower16"])
def test_field_literal_round_trip(F):
    assert io.parse_field(F.literal()) == F


@pytest.mark.parametrize("F", [GF(7), GF(8), glynn_field(), field_extend(GF(4), 2)],
                         ids=["GF7", "GF8", "glynn9", "tower16"])
def test_code_and_spec_round_trip(F):
    rng = np.random.default_rng(0)
    C = random_code(F, 6, 3, rng)
    assert io.parse_code(io.format_code(C)) == C
    spec = random_grs_spec(F, 5, 2, rng)
    again = io.parse_spec(io.format_spec(spec))
    assert again == spec


@given(st.integers(0, 2 ** 32 - 1))
def test_vector_round_trip(seed):
    rng = np.random.default_rng(seed)
    F = [GF(5), GF(9), field_extend(GF(4), 2)][seed % 3]
    v = rng.integers(0, F.q, 7)
    assert (io.parse_vector(F, io.format_vector(F, v)) == v).all()


def test_element_literals():
    F = GF(9)
    assert io.parse_element(F, "[1,2]") == 1 + 2 * 3
    assert io.parse_element(GF(7), "5") == 5
    assert io.parse_element(GF(7), "[5]") == 5
    for bad in ("3", "[1,2,0]", "[3,0]", "x"):
        with pytest.raises(ValueError):
            io.parse_element(F, bad)


def test_comments_and_inf():
    text = """# a spec
grs n=3 k=1 field=GF(5)   # header
a: 0 1 inf
b: 1 2 3
"""
    spec = io.parse_spec(text)
    assert spec.a == (0, 1, INF) and spec.b == (1, 2, 3)


@pytest.mark.parametrize("text,line,column", [
    ("code n=3 k=1 field=GF(5)\n1 2\n", 2, 4),
    ("code n=3 k=1 field=GF(5)\n1 2 9\n", 2, 5),
    ("code n=3 k=x field=GF(5)\n1 2 3\n", 1, 12),
    ("code n=3 k=1 field=GF(6)\n1 2 3\n", 1, 20),
    ("code n=3 k=2 field=GF(5)\n1 2 3\n", 2, 1),
    ("code n=3 k=2 field=GF(5)\n1 2 3\n2 4 1\n", 2, 1),
])
def test_parse_errors_locate(text, line, column):
    with pytest.raises(io.ParseError) as exc:
        io.parse_code(text, "x.code")
    assert (exc.value.line, exc.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(exc.value)


def test_spec_parse_errors():
    with pytest.raises(io.ParseError, match="missing 'b:'"):
        io.parse_spec("grs n=2 k=1 field=GF(5)\na: 0 1\n")
    with pytest.raises(io.ParseError):
        io.parse_spec("grs n=2 k=1 field=GF(5)\na: 0 0\nb: 1 1\n")


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    F = GF(11)
    spec = GrsSpec(F, tuple(range(9)), (1, 2, 3, 4, 5, 6, 7, 8, 9), 5)
    rep = LinearCode(F, np.ones((1, 5), dtype=np.int64), 5)
    paths = {"spec": tmp_path / "c.grs", "code": tmp_path / "c.code",
             "rep": tmp_path / "rep.code", "glynn": tmp_path / "glynn.code"}
    paths["spec"].write_text(io.format_spec(spec))
    paths["code"].write_text(io.format_code(spec.code()))
    paths["rep"].write_text(io.format_code(rep))
    paths["glynn"].write_text(io.format_code(glynn_code()))
    return {k: str(v) for k, v in paths.items()}, spec, tmp_path


def test_mindist_repetition(files):
    p, _, _ = files
    assert run("mindist", p["rep"]) == (0, "5\n", "")
    code, out, _ = run("--output", "records", "mindist", p["rep"])
    assert code == 0 and out == "n=5\nk=1\nd=5\n"


def test_recognize(files):
    p, spec, _ = files
    code, out, _ = run("recognize", p["code"])
    assert code == 0 and io.parse_spec(out).code() == spec.code()
    code, out, err = run("recognize", p["glynn"])
    assert code == 2 and out == "" and "not GRS" in err


def test_build_verify_decode_round_trip(files):
    p, spec, tmp = files
    a, b = str(tmp / "a.code"), str(tmp / "b.code")
    assert run("ecp", "build", "--code", p["spec"], "--out-a", a, "--out-b", b)[0] == 0
    code, out, _ = run("--output", "records", "ecp", "verify", "--code", p["code"],
                       "--pair", a, b, "--t", 2)
    assert code == 0 and "via_E1-E4=true" in out
    C = spec.code()
    c = C.random_codeword(np.random.default_rng(1))
    y = c.copy()
    y[[2, 6]] = (y[[2, 6]] + [3, 7]) % 11
    code, out, _ = run("--output", "records", "ecp", "decode", "--code", p["code"],
                       "--pair", a, b, "--received", io.format_vector(C.field, y))
    assert code == 0
    fields = dict(line.split("=", 1) for line in out.splitlines())
    assert fields["codeword"] == io.format_vector(C.field, c)
    assert fields["weight"] == "2"
    (tmp / "y.txt").write_text(io.format_vector(C.field, y) + "\n")
    code, out2, _ = run("--output", "records", "ecp", "decode", "--code", p["code"],
                        "--pair", a, b, "--received", "@" + str(tmp / "y.txt"))
    assert (code, out2) == (0, out)


def test_decode_failure_exit(files):
    from ecplab.ecp import nearest_codewords
    p, spec, tmp = files
    a, b = str(tmp / "a.code"), str(tmp / "b.code")
    run("ecp", "build", "--code", p["spec"], "--out-a", a, "--out-b", b)
    C = spec.code()
    rng = np.random.default_rng(2)
    while True:
        y = rng.integers(0, 11, 9)
        if nearest_codewords(C, y)[0] > 2:
            break
    code, out, err = run("ecp", "decode", "--code", p["code"], "--pair", a, b,
                         "--received", io.format_vector(C.field, y))
    assert code == 2 and out == "" and "decoding failure" in err


def test_search_cli(files):
    p, _, _ = files
    code, out, _ = run("--output", "records", "ecp", "search", "--code", p["code"], "--t", 2)
    assert code == 0 and "status=found" in out
    code, out, err = run("ecp", "search", "--code", p["glynn"], "--t", 2)
    assert code == 2 and "found-none" in out


def test_budget_env_and_flag(files, monkeypatch):
    p, _, _ = files
    monkeypatch.setenv("ECPLAB_BUDGET", "1")
    code, _, err = run("mindist", p["code"])
    assert code == 2 and "budget" in err
    assert run("--budget", "100000", "mindist", p["code"])[:2] == (0, "5\n")
    monkeypatch.setenv("ECPLAB_BUDGET", "zero")
    assert run("mindist", p["code"])[0] == 1


def test_usage_errors(files):
    p, _, tmp = files
    assert run("mindist", str(tmp / "missing.code"))[0] == 1
    assert run("nonsense")[0] == 1
    bad = tmp / "bad.code"
    bad.write_text("code n=3 k=1 field=GF(5)\n1 2\n")
    code, _, err = run("mindist", str(bad))
    assert code == 1 and "line 2, column 4" in err
    assert run("--field-cap", "7", "mindist", p["code"])[0] == 1


def test_gen_grs_and_code_ops(files):
    p, spec, tmp = files
    code, out, _ = run("--seed", 3, "gen-grs", "--field", "GF(7)", "--n", 6, "--k", 2)
    assert code == 0 and io.parse_spec(out).n == 6
    assert run("--seed", 3, "gen-grs", "--field", "GF(7)", "--n", 6, "--k", 2)[1] == out
    code, out, _ = run("gen-grs", "--field", "GF(5)", "--n", 3, "--k", 1,
                       "--a", "0 1 inf", "--b", "1 1 1", "--code")
    assert code == 0 and io.parse_code(out).n == 3
    code, out, _ = run("dual", p["code"])
    assert io.parse_code(out).k == 4
    code, out, _ = run("puncture", p["code"], "--at", "1,2")
    assert io.parse_code(out).n == 7
    code, out, _ = run("shorten", p["code"], "--at", "1")
    assert io.parse_code(out).k == 4
    code, out, _ = run("schur", p["rep"], p["rep"])
    assert io.parse_code(out).k == 1


def test_pmds_commands(files):
    p, _, tmp = files
    a, b = str(tmp / "a.code"), str(tmp / "b.code")
    run("ecp", "build", "--code", p["spec"], "--out-a", a, "--out-b", b)
    code, out, _ = run("--output", "records", "pmds", "check", "--a", a, "--b", b)
    assert code == 0 and "gap=0" in out and "check.A MDS=true" in out
    fig = tmp / "corpus.png"
    code, out, _ = run("pmds", "corpus", "--field", "GF(5)", "--n", 5, "--count", 12,
                       "--figure", str(fig))
    assert code == 0 and out.splitlines()[0].split()[0] == "pair_id"
    assert fig.stat().st_size > 0


def test_fixtures_command(tmp_path):
    code, out, _ = run("--output", "records", "fixtures", "run", "--only", "glynn",
                       "--export", str(tmp_path))
    assert code == 0 and "check.not GRS=true" in out
    assert io.parse_code((tmp_path / "glynn.code").read_text()) == glynn_code()


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "ecplab.cli", "--help"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and "ecp" in proc.stdout
