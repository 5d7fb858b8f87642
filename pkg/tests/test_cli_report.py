import json
import subprocess
import sys

import pytest

from adsorbits import cli_report as cli


def cfg(suite, n, samples=10, seed=0, **kw):
    return cli.SuiteConfig(suite, tuple(n), samples, seed, **kw)


def test_prop_4_1_suite_passes():
    report = cli.run_suite(cfg("prop-4-1", range(3, 7), samples=200, seed=7))
    assert report["overall"] == "pass"
    assert cli.exit_code(report) == 0


def test_unknown_suite_is_a_usage_error():
    with pytest.raises(cli.UsageError):
        cfg("no-such-suite", [3])


def test_out_of_range_n_is_a_usage_error():
    with pytest.raises(cli.UsageError):
        cfg("roots-su1n", [9])
    assert cli.main(["verify", "--suite", "kaehler", "--n", "2"]) == cli.EXIT_USAGE


def test_argparse_errors_exit_with_usage_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_json_is_byte_identical_for_identical_config():
    c = cfg("kaehler", [3, 4], seed=11)
    assert cli.emit_report(cli.run_suite(c)) == cli.emit_report(cli.run_suite(c))


def test_json_key_order_and_float_format():
    report = cli.run_suite(cfg("exp-closed-forms", [3], samples=5))
    text = cli.emit_report(report)
    data = json.loads(text)
    assert list(data) == ["suite", "n", "seed", "samples", "tol", "checks", "overall"]
    assert list(data["checks"][0]) == ["name", "status", "observed", "expected", "max_err"]
    assert '"tol": 1.0000000000000001e-09' in text


def test_empty_report_passes():
    report = cli.make_report(cfg("kaehler", [3]), [])
    assert report["overall"] == "pass" and cli.exit_code(report) == 0


def test_one_failing_check_fails_the_report():
    checks = cli._Checks()
    checks.add("fine", True, 1, 1)
    checks.add("broken", False, 2, 1, 0.5)
    report = cli.make_report(cfg("kaehler", [3]), checks.items)
    assert report["overall"] == "fail" and cli.exit_code(report) == 1
    assert "FAIL" in cli.emit_report(report, "text")


def test_check_errors_are_recorded():
    from adsorbits.errors import DegeneracyError

    def boom():
        raise DegeneracyError("ambiguous rank")

    checks = cli._Checks()
    checks.run("explodes", boom)
    assert checks.items[0]["status"] == "error" and "ambiguous" in checks.items[0]["observed"]


@pytest.mark.parametrize("text,expected", [("4", (4,)), ("3-5", (3, 4, 5)), ("2..3", (2, 3)), ("3,5", (3, 5))])
def test_parse_n(text, expected):
    assert cli.parse_n(text) == expected


def test_parse_n_rejects_garbage():
    import argparse

    with pytest.raises(argparse.ArgumentTypeError):
        cli.parse_n("5-3")


@pytest.mark.parametrize("suite", sorted(cli.SUITES))
def test_every_suite_runs_at_smallest_n(suite):
    lo = cli.SUITES[suite].n_bounds[0]
    report = cli.run_suite(cfg(suite, [lo], samples=5))
    assert report["checks"]
    assert all(c["status"] in ("pass", "fail") for c in report["checks"])


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "adsorbits.cli_report", "verify", "--suite", "roots-su1n", "--n", "2", "--format", "text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip().endswith("overall: pass")
    listing = subprocess.run([sys.executable, "-m", "adsorbits.cli_report", "list-suites"], capture_output=True, text=True)
    assert len(listing.stdout.strip().splitlines()) == 9
