import json
import os
import subprocess
import tempfile

import pytest

CLI = os.environ["SINGMOD_CLI"]


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("SINGMOD_CACHE_DIR", None)
    full_env.update(env or {})
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env, timeout=600)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture(scope="module")
def cache():
    with tempfile.TemporaryDirectory() as d:
        yield d


def test_trace_examples(cache):
    assert run("trace", "--level", "2", "--d", "8", "--cache-dir", cache)[:2] == (0, "152\n")
    assert run("trace", "--level", "1", "--d", "3")[:2] == (0, "-248\n")
    code, _, err = run("trace", "--level", "2", "--d", "5")
    assert code == 2
    assert "square modulo 8" in err


def test_trace_json():
    code, out, _ = run("trace", "--level", "1", "--d", "7", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"level": "1", "d": 7, "trace": "-4119"}


TABLE_P2 = [(4, -52), (7, -23), (8, 152), (12, -496), (15, -1), (16, 1036), (20, -2256), (23, -94), (24, 4400), (28, -8192)]
TABLE_P5 = [(4, -8), (11, -12), (15, -38), (16, -6), (19, 20), (20, 12), (24, -44)]


def test_table_columns(cache):
    code, out, _ = run("table", "--p", "2", "--dmax", "28", "--cache-dir", cache)
    assert code == 0
    assert [tuple(map(int, line.split())) for line in out.splitlines()] == TABLE_P2
    code, out, _ = run("table", "--p", "5", "--dmax", "24", "--format", "csv", "--cache-dir", cache)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "d,trace"
    assert [tuple(map(int, line.split(","))) for line in lines[1:]] == TABLE_P5


def test_table_index_71_json():
    code, out, _ = run("table", "--p", "71", "--dmax", "10", "--format", "json", "--no-cache")
    assert code == 0
    doc = json.loads(out)
    assert doc["p"] == 71
    for e in doc["entries"]:
        int(e["trace"])
        assert e["d"] <= 10
    assert [e["d"] for e in doc["entries"]] == [7]


def test_table_bad_prime():
    assert run("table", "--p", "4", "--dmax", "10")[0] == 2


def test_verify_level_p(cache):
    code, out, _ = run("verify", "osburn", "--p", "2", "--l", "3", "--dmax", "23", "--format", "json", "--cache-dir", cache)
    assert code == 0
    doc = json.loads(out)
    assert doc["level"] == "p" and doc["p"] == 2 and doc["l"] == 3 and doc["fails"] == 0
    row = next(e for e in doc["entries"] if e["d"] == 23)
    assert row["trace"] == "113643" and row["verdict"] == "PASS" and row["split"]
    for e in doc["entries"]:
        assert set(e) >= {"d", "split", "trace", "residue", "verdict"}
        assert int(e["trace"]) % 3 == e["residue"]


def test_verify_kind_aliases(cache):
    for a, b in (("ao", "level1"), ("osburn", "levelp")):
        extra = ("--p", "2") if b == "levelp" else ()
        first = run("verify", a, *extra, "--l", "3", "--dmax", "23", "--format", "json", "--cache-dir", cache)
        second = run("verify", b, *extra, "--l", "3", "--dmax", "23", "--format", "json", "--cache-dir", cache)
        assert first[0] == 0 and first[1] == second[1]


def test_verify_level_one():
    code, out, _ = run("verify", "ao", "--l", "3", "--dmax", "50")
    assert code == 0
    assert out.splitlines()[-1].endswith(" 0 FAIL")
    code, out, _ = run("verify", "ao", "--l", "7", "--dmax", "50", "--format", "csv", "--jobs", "3")
    assert code == 0
    assert "3,true," in out


def test_verify_preconditions():
    assert run("verify", "osburn", "--p", "3", "--l", "3", "--dmax", "20")[0] == 2
    assert run("verify", "ao", "--l", "4", "--dmax", "20")[0] == 2
    assert run("verify", "osburn", "--l", "3", "--dmax", "20")[0] == 2
    assert run("verify", "ao", "--l", "3", "--dmax", "50", "--qprec", "20")[0] == 2


def test_phi_dump_and_reload(cache):
    out_file = os.path.join(cache, "phi2_dump.json")
    code, out, _ = run("phi", "--p", "2", "--qmax", "30", "--out", out_file)
    assert code == 0
    assert "B(-1)=1 B(0)=-2" in out
    with open(out_file) as fh:
        doc = json.load(fh)
    assert doc["p"] == 2
    code, out, _ = run("trace", "--level", "2", "--d", "207", "--cache-dir", cache)
    assert code == 0 and out == "113643\n"


def test_phi_audit_counts(cache):
    code, out, _ = run("phi", "--p", "13", "--qmax", "10", "--format", "json", "--out", os.path.join(cache, "p13.json"))
    assert code == 0
    doc = json.loads(out)
    assert doc["negative_conditions"] == 23
    assert doc["B(-1)"] == "1" and doc["B(0)"] == "-2"
    assert run("phi", "--p", "4", "--qmax", "10", "--out", os.path.join(cache, "p4.json"))[0] == 2


def test_cache_dir_from_environment(cache):
    env_cache = os.path.join(cache, "from_env")
    os.makedirs(env_cache)
    code, out, _ = run("trace", "--level", "3", "--d", "11", env={"SINGMOD_CACHE_DIR": env_cache})
    assert (code, out) == (0, "22\n")
    assert os.path.exists(os.path.join(env_cache, "phi_3.json"))


def test_corrupt_cache_is_rebuilt(cache):
    bad = os.path.join(cache, "bad")
    os.makedirs(bad)
    with open(os.path.join(bad, "phi_2.json"), "w") as fh:
        fh.write('{"p": 2, "garbage": true}')
    assert run("trace", "--level", "2", "--d", "8", "--cache-dir", bad)[:2] == (0, "152\n")


def test_compare():
    code, out, _ = run("compare", "--level", "1", "--dmax", "100")
    assert code == 0
    assert out.splitlines()[-1] == "50 equal, 0 mismatched"
    code, out, _ = run("compare", "--p", "2", "--dmax", "50", "--format", "json", "--no-cache")
    assert code == 0
    doc = json.loads(out)
    assert doc["mismatches"] == 0
    assert all(e["d"] % 4 != 0 for e in doc["entries"])
    assert run("compare", "--p", "11", "--dmax", "10")[0] == 2


def test_determinism(cache):
    args = ("verify", "osburn", "--p", "3", "--l", "5", "--dmax", "30", "--format", "json", "--no-cache")
    first = run(*args, "--jobs", "1")
    second = run(*args, "--jobs", "4")
    assert first[0] == 0
    assert first[1] == second[1]


def test_usage_errors():
    assert run()[0] == 2
    assert run("trace", "--level", "2")[0] == 2
    assert run("trace", "--level", "x", "--d", "3")[0] == 2
    assert run("--format", "xml", "trace", "--level", "1", "--d", "3")[0] == 2
    assert run("--help")[0] == 0
