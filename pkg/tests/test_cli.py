"""Config parsing, dispatch, report formats, exit codes, verify-report."""
import json

import pytest

from sumgames.cli import (
    EXIT_EXHAUSTED,
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    ConfigError,
    dispatch,
    format_report,
    main,
    parse_config,
)


def run_config(tmp_path, data, name="report.jsonl"):
    out = tmp_path / name
    cfg = parse_config({**data, "out": str(out)})
    code = dispatch(cfg)
    lines = [json.loads(l) for l in out.read_text().splitlines() if l.strip()]
    return code, lines


# ---------------------------------------------------------------- parsing

def test_defaults_applied():
    cfg = parse_config({"command": "search-hindman", "coloring": {"name": "parity"},
                        "m": 2, "max_value": 8})
    assert cfg.get("horizon") == 16
    assert cfg.get("t") == 2 and cfg.get("s") == 2 and cfg.get("f") == 2
    assert cfg.get("node_limit") == 10 ** 7


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="wat"):
        parse_config({"command": "threshold", "wat": 1})


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config('{"command": "threshold", "colors": 2, "colors": 3}')


def test_zero_palette_rejected():
    with pytest.raises(ConfigError, match="palette"):
        parse_config({"command": "search-hindman", "m": 2, "max_value": 8,
                      "coloring": {"name": "mod-k", "k": 0}})


def test_unknown_command_rejected():
    with pytest.raises(ConfigError, match="command"):
        parse_config({"command": "fly"})


# ---------------------------------------------------------------- dispatch

def test_threshold_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {"command": "threshold", "colors": 2,
                                       "repeats": True})
    assert code == EXIT_OK
    assert recs[0]["result"]["n"] == 5
    assert recs[0]["result"]["avoider"] == {"1": 1, "2": 2, "3": 2, "4": 1}
    assert recs[0]["result"]["confirmed_independent"]
    assert recs[0]["schema_version"] == 1


def test_verify_filter_laws_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {"command": "verify-filter-laws", "ground": 3})
    assert code == EXIT_OK
    assert recs[0]["result"]["families_scanned"] == 256
    assert all(l["violations"] == 0 for l in recs[0]["result"]["lines"])


def test_hindman_dispatch_witness(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "search-hindman", "coloring": {"name": "parity"},
        "m": 2, "max_value": 7})
    assert code == EXIT_OK
    assert recs[0]["result"]["witness"]["terms"] == [2, 4]


def test_hindman_dispatch_exhausted(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "search-hindman", "coloring": {"name": "seeded-hash-k", "k": 2},
        "seed": 1, "m": 4, "max_value": 5})
    assert code == EXIT_EXHAUSTED
    assert recs[0]["result"]["exhausted"]["complete"]


def test_proper_or_collapse_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "proper-or-collapse", "depth": 5, "runs": 4, "seed": 9,
        "sequence": {"kind": "random-finite-sets", "gen_max": 6}})
    assert code in (EXIT_OK, EXIT_UNKNOWN)
    assert all(r["reverified"] for r in recs[0]["result"]["runs"])


def test_play_game_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "play-game", "alice": "dual-random", "bob": "filter",
        "rounds": 8, "horizon": 8, "seed": 3})
    assert code == EXIT_OK
    assert recs[0]["result"]["outcome"] == "bob-wins"
    assert recs[0]["result"]["illegal"] is None


def test_game_transfer_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "game-transfer", "which": "diagonal", "n": 2,
        "horizon": 8, "picks": 8})
    assert code == EXIT_OK
    assert recs[0]["result"]["finite_to_one"]
    assert recs[0]["result"]["surjective"]


def test_cover_partition_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {
        "command": "cover-partition", "instance": "initial-segments",
        "edge_coloring": {"name": "constant"}, "m": 2, "d": 2,
        "target": "op", "horizon": 2, "max_index": 8})
    assert code == EXIT_OK
    assert recs[0]["result"]["witness"]["families"] == [[1], [2]]


def test_encode_classical_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {"command": "encode-classical",
                                       "truncation": 5})
    assert code == EXIT_OK
    assert recs[0]["result"]["isomorphism_checks"]
    assert recs[0]["result"]["escapes_certified"]


def test_chain_check_dispatch(tmp_path):
    code, recs = run_config(tmp_path, {"command": "chain-check",
                                       "chain": "fs-tails-pow2", "depth": 3})
    assert code == EXIT_OK
    assert recs[0]["result"]["verdict"] == "holds"


# ---------------------------------------------------------------- reports

def test_reports_deterministic(tmp_path):
    data = {"command": "search-mt", "edge_coloring": {"name": "seeded-hash-k", "k": 2},
            "semigroup": "naturals", "base": "powers-of-two",
            "m": 2, "d": 2, "max_index": 6, "seed": 12}
    _, first = run_config(tmp_path, data, name="a.jsonl")
    _, second = run_config(tmp_path, data, name="b.jsonl")
    assert first == second
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_reports_deterministic_under_parallelism(tmp_path):
    data = {"command": "search-hindman", "coloring": {"name": "seeded-hash-k", "k": 2},
            "m": 2, "max_value": 16, "seed": 5, "parallelism": 4}
    run_config(tmp_path, data, name="p1.jsonl")
    run_config(tmp_path, data, name="p2.jsonl")
    assert (tmp_path / "p1.jsonl").read_bytes() == (tmp_path / "p2.jsonl").read_bytes()


def test_csv_and_pretty_formats():
    record = {"schema_version": 1, "command": "threshold",
              "config": {"command": "threshold"},
              "result": {"n": 5, "avoider": {"1": 1}}, "exit": 0}
    csv_text = format_report([record], "csv")
    assert "result.n" in csv_text.splitlines()[0]
    pretty = format_report([record], "pretty")
    assert "== threshold" in pretty
    with pytest.raises(ConfigError):
        format_report([record], "xml")


def test_verify_report_roundtrip(tmp_path):
    _, _ = run_config(tmp_path, {"command": "threshold", "colors": 2,
                                 "repeats": True}, name="t.jsonl")
    code, recs = run_config(tmp_path, {"command": "verify-report",
                                       "input": str(tmp_path / "t.jsonl")},
                            name="v.jsonl")
    assert code == EXIT_OK
    assert recs[0]["result"]["mismatches"] == 0


def test_verify_report_catches_tampering(tmp_path):
    _, _ = run_config(tmp_path, {"command": "threshold", "colors": 2,
                                 "repeats": True}, name="t.jsonl")
    path = tmp_path / "t.jsonl"
    rec = json.loads(path.read_text())
    rec["result"]["n"] = 4
    path.write_text(json.dumps(rec) + "\n")
    code, recs = run_config(tmp_path, {"command": "verify-report",
                                       "input": str(path)}, name="v.jsonl")
    assert code == EXIT_EXHAUSTED
    assert recs[0]["result"]["mismatches"] == 1


# ---------------------------------------------------------------- main()

def test_main_threshold(tmp_path, capsys):
    code = main(["threshold", "--colors", "2", "--repeats"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert '"n": 5' in out


def test_main_usage_error():
    assert main(["search-hindman", "--m", "0"]) in (EXIT_USAGE,)


def test_main_unknown_command():
    assert main(["definitely-not-a-command"]) == EXIT_USAGE


def test_main_with_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "verify-filter-laws", "ground": 2}))
    code = main(["--config", str(cfg)])
    assert code == EXIT_OK
    assert '"families_scanned": 16' in capsys.readouterr().out


def test_env_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("SUMGAMES_OUT_DIR", str(tmp_path / "reports"))
    code = main(["verify-filter-laws", "--ground", "2"])
    assert code == EXIT_OK
    out_file = tmp_path / "reports" / "verify-filter-laws.jsonl"
    assert out_file.exists()


def test_dispatch_pretty_and_csv_formats(tmp_path):
    for fmt, probe in (("pretty", "== threshold"), ("csv", "result.n")):
        out = tmp_path / f"r.{fmt}"
        cfg = parse_config({"command": "threshold", "colors": 2, "repeats": True,
                            "format": fmt, "out": str(out)})
        assert dispatch(cfg) == EXIT_OK
        assert probe in out.read_text()


def test_verify_report_multiple_records(tmp_path):
    path = tmp_path / "multi.jsonl"
    lines = []
    for data in ({"command": "threshold", "colors": 2, "repeats": True},
                 {"command": "verify-filter-laws", "ground": 2},
                 {"command": "encode-classical", "truncation": 4}):
        single = tmp_path / "one.jsonl"
        cfg = parse_config({**data, "out": str(single)})
        dispatch(cfg)
        lines.append(single.read_text().strip())
    path.write_text("\n".join(lines) + "\n")
    code, recs = run_config(tmp_path, {"command": "verify-report",
                                       "input": str(path)}, name="v.jsonl")
    assert code == EXIT_OK
    assert recs[0]["result"]["records"] == 3
    assert recs[0]["result"]["mismatches"] == 0
