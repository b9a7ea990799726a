"""Harness contracts: exit codes, determinism, report formats, schema."""

import json

from sdpke.cli import CSV_HEADER, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exchange_writes_transcripts_and_reports(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, stdout, _ = run_cli(
        ["exchange", "--platform", "gl", "--trials", "3", "--seed", "9", "--out", str(out)],
        capsys,
    )
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 4
    assert all(",exchange,1," in line for line in lines[1:])
    records = json.loads(out.read_text())
    assert isinstance(records, list) and len(records) == 3
    assert all(rec["schema"] == 1 for rec in records)
    assert all("key" not in rec for rec in records)


def test_exchange_test_mode_embeds_key(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, _, _ = run_cli(
        ["exchange", "--platform", "make", "--trials", "1", "--seed", "1",
         "--test-mode", "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert "key" in json.loads(out.read_text())[0]


def test_exchange_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(
            ["exchange", "--platform", "tropical", "--trials", "5", "--seed", "42",
             "--test-mode", "--out", str(path)],
            capsys,
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_exchange_requires_out(capsys):
    code, _, err = run_cli(["exchange", "--platform", "gl"], capsys)
    assert code == 2
    assert "error" in err


def test_exchange_without_platform_or_params_is_config_error(capsys):
    code, _, err = run_cli(["exchange", "--out", "/tmp/x.json"], capsys)
    assert code == 2
    assert "error" in err


def test_malformed_params_file_is_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(
        ["exchange", "--platform", "gl", "--params", str(bad), "--out", str(tmp_path / "t.json")],
        capsys,
    )
    assert code == 2
    assert "error" in err


def test_attack_round_trip_telescope(tmp_path, capsys):
    out = tmp_path / "t.json"
    run_cli(
        ["exchange", "--platform", "make", "--trials", "3", "--seed", "4",
         "--test-mode", "--out", str(out)],
        capsys,
    )
    code, stdout, _ = run_cli(["attack", "--method", "telescope", str(out)], capsys)
    assert code == 0
    rows = stdout.strip().splitlines()[1:]
    assert len(rows) == 3
    assert all(",telescope,1," in r for r in rows)


def test_attack_not_applicable_exits_3(tmp_path, capsys):
    out = tmp_path / "t.json"
    run_cli(
        ["exchange", "--platform", "mobs", "--trials", "1", "--seed", "4", "--out", str(out)],
        capsys,
    )
    code, _, err = run_cli(["attack", "--method", "dimension", str(out)], capsys)
    assert code == 3
    assert "not applicable" in err


def test_attack_bounded_tropical_search_reports_failure(tmp_path, capsys):
    out = tmp_path / "t.json"
    # 16-bit exponents are >= 2^8 with overwhelming probability at this seed
    run_cli(
        ["exchange", "--platform", "tropical", "--trials", "2", "--seed", "10",
         "--test-mode", "--out", str(out)],
        capsys,
    )
    code, stdout, _ = run_cli(
        ["attack", "--method", "tropical-binsearch", "--x-max", "3", str(out)], capsys
    )
    assert code == 1
    rows = stdout.strip().splitlines()[1:]
    assert all(",tropical-binsearch,0," in r for r in rows)


def test_attack_counters_are_deterministic(tmp_path, capsys):
    out = tmp_path / "t.json"
    run_cli(
        ["exchange", "--platform", "groupring", "--trials", "2", "--seed", "6",
         "--test-mode", "--out", str(out)],
        capsys,
    )
    reports = []
    for _ in range(2):
        _, stdout, _ = run_cli(["attack", "--method", "dimension", str(out)], capsys)
        rows = [line.split(",") for line in stdout.strip().splitlines()[1:]]
        # drop the micros column; timings are exempt from determinism
        reports.append([r[:4] + r[5:] for r in rows])
    assert reports[0] == reports[1]


def test_bench_csv_header_exact(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, _, err = run_cli(
        ["bench", "--platform", "gl", "--trials", "4", "--seed", "2", "--out", str(out)],
        capsys,
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "platform,trial,operation,success,micros,counters"
    assert len(lines) == 1 + 3 * 4  # keygen, derive, exchange per trial
    assert "p50" in err  # percentile summary on stderr


def test_count_experiment(tmp_path, capsys):
    code, stdout, err = run_cli(["count", "--trials", "5", "--seed", "3"], capsys)
    assert code == 0
    rows = stdout.strip().splitlines()[1:]
    assert len(rows) == 5
    assert all("solution_count=" in r for r in rows)
    assert "median=" in err


def test_count_cap_exceeded_exits_4(tmp_path, capsys):
    params = tmp_path / "big.json"
    params.write_text(json.dumps({"kind": "mobs", "seed": 1, "size": 3, "cycle_lengths": [2, 3, 5, 7, 11]}))
    code, _, err = run_cli(["count", "--trials", "1", "--seed", "3", "--params", str(params)], capsys)
    assert code == 4
    assert "size cap" in err


def test_seeded_params_file_generation(tmp_path, capsys):
    params = tmp_path / "p.json"
    params.write_text(json.dumps({"kind": "tropical", "seed": 77, "size": 3}))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        code, _, _ = run_cli(
            ["exchange", "--params", str(params), "--trials", "2", "--seed", "5", "--out", str(out)],
            capsys,
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_json_report_format(tmp_path, capsys):
    out = tmp_path / "t.json"
    run_cli(
        ["exchange", "--platform", "gl", "--trials", "2", "--seed", "8",
         "--format", "json", "--out", str(out)],
        capsys,
    )
    code, stdout, _ = run_cli(
        ["attack", "--method", "dimension", "--format", "json", str(out)], capsys
    )
    assert code == 0
    rows = json.loads(stdout)
    assert len(rows) == 2
    assert rows[0]["operation"] == "dimension"
    assert rows[0]["success"] == 1
    assert "rank" in rows[0]["counters"]


def test_threaded_trials_match_sequential(tmp_path, capsys, monkeypatch):
    out_seq, out_par = tmp_path / "s.json", tmp_path / "p.json"
    run_cli(
        ["exchange", "--platform", "make", "--trials", "6", "--seed", "13",
         "--test-mode", "--out", str(out_seq)],
        capsys,
    )
    monkeypatch.setenv("SDPKE_THREADS", "3")
    run_cli(
        ["exchange", "--platform", "make", "--trials", "6", "--seed", "13",
         "--test-mode", "--out", str(out_par)],
        capsys,
    )
    assert out_seq.read_bytes() == out_par.read_bytes()


def test_exchange_transcripts_feed_every_attack(tmp_path, capsys):
    # schema round trip: whatever exchange writes, attack can read
    pairs = [
        ("groupring", "dimension"),
        ("gl", "dimension"),
        ("make", "telescope"),
        ("tropical", "tropical-binsearch"),
        ("mobs", "mobs-count"),
    ]
    for platform, method in pairs:
        out = tmp_path / f"{platform}.json"
        code, _, _ = run_cli(
            ["exchange", "--platform", platform, "--trials", "1", "--seed", "21",
             "--test-mode", "--out", str(out)],
            capsys,
        )
        assert code == 0
        argv = ["attack", "--method", method, str(out)]
        if platform == "mobs":
            # default parameters exceed the enumeration cap by design
            assert run_cli(argv, capsys)[0] == 4
        else:
            assert run_cli(argv, capsys)[0] == 0
