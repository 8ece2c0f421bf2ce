"""CLI verbs: exit codes, CSV/JSON mirrors, cache lifecycle, determinism."""

import csv
import io
import json
import subprocess
import sys

import pytest

from psgoldbach import GammaParam, enumerate_ps_primes, load_table
from psgoldbach.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows


def test_sieve_cold_warm_idempotent(tmp_path, capsys):
    cache = tmp_path / "cache"
    argv = ["sieve", "--gamma", "2/3", "--n-hi", "31",
            "--cache-dir", str(cache)]
    code, out, _ = run_cli(argv, capsys)
    assert code == 0 and out.startswith("4 ps-primes")
    f = cache / "ps_2_3_2_31.psgb"
    cold = f.read_bytes()
    code, out, _ = run_cli(argv, capsys)
    assert code == 0 and "via cache" in out
    assert f.read_bytes() == cold
    t = load_table(f)
    assert t.primes.tolist() == [2, 5, 11, 31]


def test_sieve_recovers_from_corrupt_magic(tmp_path, capsys):
    cache = tmp_path / "cache"
    argv = ["sieve", "--gamma", "2/3", "--n-hi", "31",
            "--cache-dir", str(cache)]
    run_cli(argv, capsys)
    f = cache / "ps_2_3_2_31.psgb"
    good = f.read_bytes()
    f.write_bytes(b"XXXX" + good[4:])
    code, out, err = run_cli(argv, capsys)
    assert code == 0
    assert "re-sieving" in err
    assert f.read_bytes() == good


def test_sieve_env_cache_dir(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PSGB_CACHE_DIR", str(tmp_path / "envcache"))
    code, _, _ = run_cli(["sieve", "--gamma", "1/2", "--n-hi", "100"], capsys)
    assert code == 0
    assert (tmp_path / "envcache" / "ps_1_2_2_100.psgb").exists()


def test_sieve_io_error_exit_3(tmp_path, capsys):
    blocker = tmp_path / "afile"
    blocker.write_text("not a directory")
    code, _, err = run_cli(["sieve", "--gamma", "2/3", "--n-hi", "31",
                            "--cache-dir", str(blocker / "sub")], capsys)
    assert code == 3 and err


def test_count_csv_values(capsys):
    code, out, _ = run_cli(["count", "--gamma", "2/3", "--n", "15",
                            "--y", "3", "--witnesses"], capsys)
    assert code == 0
    assert out.endswith("\n") and "\r" not in out
    rows = parse_csv(out)
    assert len(rows) == 1
    r = rows[0]
    assert (r["n"], r["y"], r["count"]) == ("15", "3", "1")
    assert float(r["weighted"]) == pytest.approx(16.875)
    assert r["witnesses"] == "5+5+5"


def test_count_csv_json_numeric_identity(capsys):
    argv = ["count", "--gamma", "2/3", "--n-lo", "11", "--n-hi", "41",
            "--theta", "0.6"]
    code, out_csv, _ = run_cli(argv, capsys)
    assert code == 0
    code, out_json, _ = run_cli(argv + ["--out", "json"], capsys)
    assert code == 0
    crows = parse_csv(out_csv)
    jrows = json.loads(out_json)
    assert len(crows) == len(jrows) > 0
    for c, j in zip(crows, jrows):
        for key, jval in j.items():
            cval = c[key]
            if jval is None:
                assert cval == ""
            elif isinstance(jval, float):
                assert float(cval) == jval, key
            else:
                assert str(jval) == cval, key


def test_count_even_skipped_in_range(capsys):
    code, out, _ = run_cli(["count", "--gamma", "2/3", "--n-lo", "10",
                            "--n-hi", "20", "--y", "5"], capsys)
    assert code == 0
    ns = [int(r["n"]) for r in parse_csv(out)]
    assert ns == [11, 13, 15, 17, 19]


def test_byte_determinism(capsys):
    argv = ["report", "--gamma", "9/10", "--n-lo", "501", "--n-hi", "901",
            "--theta", "0.8", "--samples", "3", "--q-max", "4"]
    _, first, _ = run_cli(argv, capsys)
    _, second, _ = run_cli(argv, capsys)
    assert first == second
    header = first.splitlines()[0]
    assert header == ("n,y,count,weighted,predicted,ratio,"
                      "max_major_arc_ratio,flags")


def test_usage_errors_exit_2(capsys):
    cases = [
        ["count", "--gamma", "2/3", "--n", "15"],                 # no y/theta
        ["count", "--gamma", "2/3", "--n", "15", "--y", "3", "--theta", "0.7"],
        ["count", "--gamma", "2/3", "--n", "15", "--y", "3", "--workers", "0"],
        ["count", "--gamma", "2/3", "--n", "15", "--y", "3",
         "--precision-bits", "32"],
        ["count", "--gamma", "2/3", "--theta", "0.7"],            # no n range
        ["report", "--gamma", "2/3", "--n", "15", "--theta", "1.7"],
        ["expsum", "eval", "--gamma", "2/3", "--y", "3"],         # missing n
        ["singular-series", "--n", "0"],
    ]
    for argv in cases:
        code, _, err = run_cli(argv, capsys)
        assert code == 2, argv
        assert err, argv


def test_argparse_rejects_unknown_and_bad_gamma():
    with pytest.raises(SystemExit) as e:
        main(["count", "--gamma", "5/3", "--n", "15", "--y", "3"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["no-such-verb"])
    assert e.value.code == 2


def test_indicator_rows(capsys):
    code, out, _ = run_cli(["indicator", "--gamma", "1/2", "--n-lo", "1",
                            "--n-hi", "10"], capsys)
    assert code == 0
    rows = parse_csv(out)
    members = [int(r["n"]) for r in rows if r["member"] == "1"]
    assert members == [1, 4, 9]  # floor(m^2) hits the squares
    assert all(r["member"] == r["chi"] for r in rows)


def test_weighted_count_row(capsys):
    code, out, _ = run_cli(["weighted-count", "--gamma", "2/3", "--n", "15",
                            "--y", "3"], capsys)
    rows = parse_csv(out)
    assert code == 0 and float(rows[0]["weighted"]) == pytest.approx(16.875)


def test_singular_series_rows(capsys):
    code, out, _ = run_cli(["singular-series", "--n-lo", "104", "--n-hi",
                            "105", "--cutoff", "100000"], capsys)
    rows = parse_csv(out)
    assert code == 0
    assert float(rows[0]["value"]) == 0.0          # even n
    assert 1.36 < float(rows[1]["value"]) < 1.38   # n = 105


def test_expsum_verbs(capsys):
    code, out, _ = run_cli(["expsum", "eval", "--gamma", "2/3", "--n", "30",
                            "--y", "5", "--kind", "g", "--alpha", "1/2"],
                           capsys)
    r = parse_csv(out)[0]
    assert code == 0 and float(r["re"]) == pytest.approx(-3.0)
    assert (r["alpha_num"], r["alpha_den"]) == ("1", "2")

    code, out, _ = run_cli(["expsum", "meansq", "--gamma", "2/3", "--n", "30",
                            "--y", "5", "--kind", "g"], capsys)
    r = parse_csv(out)[0]
    assert code == 0 and float(r["exact"]) == 3.0
    assert float(r["abs_diff"]) < 1e-6

    code, out, _ = run_cli(["expsum", "majorarc", "--gamma", "2/3", "--n",
                            "15", "--y", "3", "--q-max", "2"], capsys)
    rows = parse_csv(out)
    assert code == 0
    assert [r["alpha_den"] for r in rows] == ["1", "2"]
    assert float(rows[0]["D"]) == pytest.approx(abs(1.5 * 5 ** (1 / 3) - 3))


def test_vaughan_and_psi_check(capsys):
    code, out, _ = run_cli(["vaughan-check", "--n-max", "500", "--u", "7",
                            "--v", "7"], capsys)
    r = parse_csv(out)[0]
    assert code == 0 and r["passed"] == "1"
    assert float(r["max_residual"]) < 1e-8

    code, out, _ = run_cli(["psi-check", "--h-values", "4,16", "--grid",
                            "20011"], capsys)
    rows = parse_csv(out)
    assert code == 0 and all(r["passed"] == "1" for r in rows)
    assert [r["H"] for r in rows] == ["4", "16"]
    code, _, _ = run_cli(["psi-check", "--h-values", "", "--grid", "100"],
                         capsys)
    assert code == 2


def test_verify_passes_and_fault_detected(capsys):
    code, out, _ = run_cli(["verify"], capsys)
    rows = parse_csv(out)
    assert code == 0
    assert len(rows) == 5  # one row per registered suite
    assert all(r["passed"] == "1" for r in rows)

    code, out, _ = run_cli(["verify", "--inject-fault"], capsys)
    rows = parse_csv(out)
    assert code == 1
    assert any(r["passed"] == "0" for r in rows)
    assert [r["suite"] for r in rows] == ["parseval", "oracle-equivalence",
                                          "vaughan", "psi-majorant",
                                          "char-sums"]


def test_report_single_n(capsys):
    code, out, _ = run_cli(["report", "--gamma", "2/3", "--n", "15", "--y",
                            "3", "--q-max", "2"], capsys)
    r = parse_csv(out)[0]
    assert code == 0 and r["count"] == "1"
    assert float(r["max_major_arc_ratio"]) > 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "psgoldbach.cli", "count",
                           "--gamma", "2/3", "--n", "15", "--y", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("15,3,1,16.875")


def test_cache_loader_rejects_wrong_params(tmp_path, capsys):
    # a renamed cache file must not be trusted: params are revalidated
    t = enumerate_ps_primes(2, 31, GammaParam(2, 3))
    cache = tmp_path / "c"
    cache.mkdir()
    from psgoldbach import save_table
    save_table(t, cache / "ps_1_2_2_31.psgb")  # wrong name on purpose
    code, out, err = run_cli(["sieve", "--gamma", "1/2", "--n-lo", "2",
                              "--n-hi", "31", "--cache-dir", str(cache)],
                             capsys)
    assert code == 0 and "different parameters" in err
    assert load_table(cache / "ps_1_2_2_31.psgb").gamma == GammaParam(1, 2)