import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "knotmoves.cli"]


def run(*args, stdin=None):
    proc = subprocess.run(CLI + list(args), capture_output=True, text=True,
                          input=stdin, timeout=600)
    records = [json.loads(line) for line in proc.stdout.splitlines() if line]
    return proc.returncode, records, proc.stderr


def strip_header(records):
    return [r for r in records if r.get("record") != "header"]


@pytest.fixture()
def corpus_file(tmp_path):
    p = tmp_path / "knots.tsv"
    p.write_text("trefoil\t4 6 2\nunknot\t\nbroken\t3 5\nfig8\t4 6 8 2\n")
    return p


def test_invariants_command(corpus_file, tmp_path):
    code, records, _ = run("invariants", str(corpus_file),
                           "--cache", str(tmp_path / "cache.jsonl"))
    assert code == 0  # at least one success despite the broken line
    data = strip_header(records)
    byname = {r["name"]: r for r in data}
    assert byname["trefoil"]["v2"] == 1
    assert byname["unknot"]["v2"] == 0 and byname["unknot"]["v3"] == 0
    assert byname["fig8"]["v2"] == -1
    assert byname["broken"]["record"] == "error"
    assert all(byname[n]["crosschecks"]["v2_conway"] for n in ["trefoil", "fig8"])


def test_invariants_cache_reuse_byte_identical(corpus_file, tmp_path):
    cache = tmp_path / "cache.jsonl"
    code1, rec1, _ = run("invariants", str(corpus_file), "--cache", str(cache))
    size_after_first = cache.stat().st_size
    code2, rec2, _ = run("invariants", str(corpus_file), "--cache", str(cache))
    assert code1 == code2 == 0
    assert cache.stat().st_size == size_after_first  # warm cache appends nothing
    assert strip_header(rec1) == strip_header(rec2)


def test_invariants_all_failures_exit_2(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("a\t3 5\nb\t4 4 2\n")
    code, records, _ = run("invariants", str(p))
    assert code == 2


def test_family_command():
    code, records, _ = run("family", "--base", "", "--orders", "2,2,2",
                           "--seed", "9")
    assert code == 0
    data = strip_header(records)
    members = [r for r in data if r["record"] == "family-member"]
    sums = [r for r in data if r["record"] == "family-sums"]
    assert len(members) == 8
    assert sums[0]["v2_sum"] == 0 and sums[0]["v3_sum"] == 0


def test_family_single_chord_difference():
    code, records, _ = run("family", "--base", "4 6 2", "--orders", "2",
                           "--seed", "3")
    assert code == 0
    sums = [r for r in strip_header(records) if r["record"] == "family-sums"][0]
    assert len([r for r in strip_header(records)
                if r["record"] == "family-member"]) == 2


def test_family_l0():
    code, records, _ = run("family", "--base", "4 6 2", "--orders", "")
    assert code == 0
    members = [r for r in strip_header(records) if r["record"] == "family-member"]
    assert len(members) == 1 and members[0]["v2"] == 1


def test_search_and_replay(tmp_path):
    code, records, _ = run("search", "--from", "4 6 2", "--to", "",
                           "--movekinds", "B2")
    assert code == 0
    rec = strip_header(records)[0]
    assert rec["found"] and rec["moves_used"] == 1
    script = tmp_path / "path.json"
    script.write_text(json.dumps(rec["script"]))
    code, records, _ = run("path-replay", "--diagram", "4 6 2",
                           "--script", str(script), "--target", "unknot")
    assert code == 0
    assert strip_header(records)[0]["ok"]


def test_delta_unknot_command():
    code, records, _ = run("search", "--from", "4 6 8 2", "--delta-unknot")
    assert code == 0
    assert strip_header(records)[0]["found"]


def test_verify_command_empty_suites(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": []}))
    code, records, _ = run("verify", "--config", str(cfg))
    assert code == 0
    assert strip_header(records)[-1] == {"record": "verdict", "pass": True}


def test_verify_command_schema_error(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"suites": [{"suite": "nope"}]}))
    code, _, err = run("verify", "--config", str(cfg))
    assert code == 2
    cfg.write_text("{not json")
    code, _, _ = run("verify", "--config", str(cfg))
    assert code == 2


def test_verify_command_small_run(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 1, "suites": [
        {"suite": "verify_type", "phi": "v2", "orders": [2, 2, 2],
         "trials": 10, "seed": 2},
        {"suite": "group_checks", "pairs": 5, "seed": 3},
    ]}))
    code, records, _ = run("verify", "--config", str(cfg))
    assert code == 0
    data = strip_header(records)
    assert data[-1]["pass"] is True
    trials = [r for r in data if r.get("record") == "trial"]
    assert len(trials) == 10 and all(t["pass"] for t in trials)


def test_verify_seed_change_same_verdict(tmp_path):
    verdicts = []
    for seed in (2, 9):
        cfg = tmp_path / f"cfg{seed}.json"
        cfg.write_text(json.dumps({"suites": [
            {"suite": "verify_type", "phi": "v2", "orders": [2, 2, 2],
             "trials": 8, "seed": seed}]}))
        code, records, _ = run("verify", "--config", str(cfg))
        verdicts.append((code, strip_header(records)[-1]["pass"]))
    assert verdicts[0] == verdicts[1] == (0, True)


def test_usage_error_exit_2():
    code, _, _ = run("bogus-command")
    assert code == 2


def test_cache_corruption_detected(corpus_file, tmp_path):
    cache = tmp_path / "cache.jsonl"
    code, rec1, _ = run("invariants", str(corpus_file), "--cache", str(cache))
    lines = cache.read_text().splitlines()
    # flip a payload value without updating the checksum
    lines[0] = lines[0].replace('"v2": 1', '"v2": 9')
    lines.append("not json at all")
    cache.write_text("\n".join(lines) + "\n")
    code, rec2, _ = run("invariants", str(corpus_file), "--cache", str(cache))
    assert code == 0
    assert strip_header(rec1) == strip_header(rec2)  # bad records were ignored
