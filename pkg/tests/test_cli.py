import io
import json

import pytest

from kprim.cli import Config, main, read_set


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_constants_tau1():
    code, out = run(["constants", "--tau1"])
    data = json.loads(out)
    assert code == 0 and abs(data["constants"]["tau1"] - 1.1403) < 5e-4
    assert data["constants"]["e_gamma"] == pytest.approx(1.7810724, rel=1e-7)


def test_check_lcm_true():
    code, out = run(["check", "--k", "2", "--notion", "lcm", "4", "6", "10"])
    assert code == 0 and json.loads(out)["result"] is True


def test_check_false_exit_one():
    code, out = run(["check", "--k", "2", "4", "6", "10"])
    data = json.loads(out)
    assert code == 1 and data["witness"] == {"target": 4, "helpers": [6, 10]}


def test_check_reads_json_and_lines(tmp_path):
    f = tmp_path / "a.json"
    f.write_text("[4, 5, 6]")
    assert run(["check", "--k", "2", "--input", str(f)])[0] == 0
    f.write_text("4\n5\n6\n")
    assert run(["check", "--k", "2", "--notion", "strong", "--input", str(f)])[0] == 1
    assert read_set("  [8, 6]") == [8, 6] and read_set("8\n\n6\n") == [8, 6]


def test_verify_claim2_exit_zero():
    code, out = run(["verify", "--variant", "main", "--claims", "claim2",
                     "--k-from", "3", "--k-to", "199"])
    data = json.loads(out)
    assert code == 0
    assert len(data["reports"]) == 197 and data["tool_version"]


def test_verify_is_deterministic():
    argv = ["verify", "--variant", "lcm", "--claims", "claim2,ibound", "--k-to", "60"]
    assert run(argv)[1] == run(argv)[1]


def test_verify_jobs_match_serial():
    argv = ["verify", "--variant", "lcm", "--claims", "claim2", "--k-from", "2",
            "--k-to", "120"]
    assert run(argv)[1] == run(argv + ["--jobs", "3"])[1]


def test_verify_failure_exit_one(monkeypatch):
    import kprim.cli as cli
    from kprim.report import check

    monkeypatch.setattr(cli, "run_verify", lambda *a, **kw: [check("x", 2.0, "<", 1.0)])
    code, out = run(["verify", "--claims", "claim2"])
    assert code == 1 and json.loads(out)["reports"][0]["passed"] is False


def test_verify_out_of_range_is_usage_error():
    assert run(["verify", "--variant", "strong", "--claims", "goal2", "--k-from", "20",
                "--k-to", "38"])[0] == 2


def test_verify_csv_has_dotted_terms():
    code, out = run(["verify", "--variant", "main", "--claims", "ibound", "--k-from", "3",
                     "--k-to", "5", "--format", "csv"])
    header = out.splitlines()[0].split(",")
    assert code == 0 and "claim" in header and any(h.startswith("terms.") for h in header)


def test_verify_md():
    code, out = run(["verify", "--variant", "strong", "--claims", "goal2", "--k-from", "39",
                     "--k-to", "40", "--format", "md"])
    assert code == 0 and out.startswith("| k |")


def test_usage_errors():
    assert run(["verify", "--claims", "goal2"])[0] == 2
    assert run(["verify", "--claims", "bogus"])[0] == 2
    assert run(["check", "--k", "2"])[0] == 2
    assert run(["nonsense"])[0] == 2


def test_exponents_table():
    code, out = run(["exponents", "--variant", "main", "--k-to", "5", "--format", "csv"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6 and lines[0].startswith("k,")


def test_search_and_bracket():
    code, out = run(["search", "--N", "10", "--lam", "1.2"])
    assert code == 0 and json.loads(out)["best_set"] == [2, 3, 5, 7]
    code, out = run(["search", "--N", "10", "--bracket", "--tol", "0.01"])
    lo, hi = json.loads(out)["interval"]
    assert code == 0 and hi - lo <= 0.01


def test_construct_cgs():
    code, out = run(["construct-cgs", "--x", "4096", "--lam", "0.9"])
    assert code == 0 and json.loads(out)["report"]["selected_size"] == 7


def test_lemma_lab():
    code, out = run(["lemma-lab", "--trials", "30", "--seed", "2"])
    assert code == 0 and json.loads(out)["passed"] is True


def test_sieve_command():
    code, out = run(["sieve", "--sieve-limit", "1000", "--nth", "100"])
    rows = json.loads(out)["rows"]
    assert code == 0 and rows[0]["count"] == 168 and rows[1]["p_k"] == 541


def test_config_env(monkeypatch):
    monkeypatch.setenv("KPRIM_SIEVE_LIMIT", "2e5")
    assert Config.from_env().sieve_limit == 200_000
    assert Config.from_env(sieve_limit=1000).sieve_limit == 1000
