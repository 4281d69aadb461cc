"""CLI: suite running, exit codes, JSON reports, expression expansion."""

import json

import pytest

from nc_capelli import cli


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExpand:
    def test_weyl(self, capsys):
        code, out, _ = run_cli(
            ["expand", "--context", "weyl", "dx11 * x11"], capsys)
        assert code == 0
        assert out.strip() == "x11*dx11 + 1"

    def test_gl2(self, capsys):
        code, out, _ = run_cli(
            ["expand", "--context", "gl2", "E12*E21"], capsys)
        assert code == 0
        assert out.strip() == "E21*E12 + E11 - E22"

    def test_swap(self, capsys):
        code, out, _ = run_cli(
            ["expand", "--context", "swap", "psi_bar * psi"], capsys)
        assert code == 0
        assert out.strip() == "-psi*psi_bar"

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run_cli(
            ["expand", "--context", "weyl", "x + + *"], capsys)
        assert code == 2
        assert "parse error" in err


class TestRun:
    def test_single_suite(self, capsys):
        code, out, _ = run_cli(
            ["run", "--suite", "capelli.plain"], capsys)
        assert code == 0
        assert "2 reports, 0 failures" in out

    def test_unknown_id_exit_2(self, capsys):
        code, _, err = run_cli(["run", "--suite", "foo"], capsys)
        assert code == 2
        assert "unknown verifier ids" in err

    def test_bad_max_n_exit_2(self, capsys):
        code, _, err = run_cli(
            ["run", "--suite", "capelli.plain", "--max-n", "9"], capsys)
        assert code == 2

    def test_list(self, capsys):
        code, out, _ = run_cli(["run", "--list"], capsys)
        assert code == 0
        assert "capelli.plain" in out.split()

    def test_json_report(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code, _, _ = run_cli(
            ["run", "--suite", "capelli.plain,center.hc",
             "--json", str(path)], capsys)
        assert code == 0
        payload = json.loads(path.read_text())
        assert payload["version"] == cli.VERSION
        assert payload["suite"] == ["capelli.plain", "center.hc"]
        assert "startedAt" in payload
        names = [r["identityName"] for r in payload["reports"]]
        assert names == sorted(names)
        for r in payload["reports"]:
            assert r["residualIsZero"] is True
            assert set(r) == {
                "identityName", "hostRing", "sizeParams", "residualIsZero",
                "residualRendering", "lhsTermCount", "rhsTermCount",
                "wallMillis", "conditional", "notes",
            }

    def test_deterministic_across_workers(self, tmp_path, capsys):
        paths = []
        for k, workers in enumerate(("1", "2")):
            path = tmp_path / f"r{k}.json"
            code, _, _ = run_cli(
                ["run", "--suite", "capelli.plain,factorization.local",
                 "--workers", workers, "--json", str(path)], capsys)
            assert code == 0
            paths.append(path)

        def normalize(path):
            payload = json.loads(path.read_text())
            payload.pop("startedAt")
            for r in payload["reports"]:
                r["wallMillis"] = 0
            return payload

        assert normalize(paths[0]) == normalize(paths[1])

    def test_signs_selection(self, capsys):
        code, out, _ = run_cli(
            ["run", "--suite", "factorization.local", "--signs", "plus"],
            capsys)
        assert code == 0
        assert "1 reports" in out


class TestReportRoundTrip:
    def test_schema_round_trip(self, tmp_path, capsys):
        from nc_capelli.identities import VerificationReport
        path = tmp_path / "r.json"
        run_cli(["run", "--suite", "capelli.plain", "--json", str(path)],
                capsys)
        payload = json.loads(path.read_text())
        for raw in payload["reports"]:
            report = VerificationReport.from_dict(raw)
            assert report.to_dict() == raw
