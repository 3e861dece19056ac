import json

import pytest

from partcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBasis:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "basis", "--m", "13")
        assert code == 0
        payload = json.loads(out)
        assert payload["r"] == 11 and payload["t"] == 1


class TestHecke:
    def test_matrix(self, capsys):
        code, out, _ = run(capsys, "hecke", "5", "--m", "13")
        assert code == 0
        assert json.loads(out)["matrix"] == [["10"]]

    def test_paper_mode(self, capsys):
        code, out, _ = run(capsys, "hecke", "5", "--m", "13",
                           "--basis-mode", "paper")
        assert code == 0


class TestCertify:
    def test_flags_before_or_after_subcommand(self, capsys):
        code1, out1, _ = run(capsys, "--output", "json", "certify", "13", "5")
        code2, out2, _ = run(capsys, "certify", "13", "5", "--output", "json")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_rejected_m_is_usage_error(self, capsys):
        code, _, err = run(capsys, "certify", "7", "5")
        assert code == 3
        assert "no cusp forms" in err


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "13", "59", "3", "--n", "1")
        assert code == 0
        assert json.loads(out)[0]["status"] == "pass"

    def test_budget_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify", "13", "59", "3", "--n", "1",
                           "--partition-budget", "10")
        assert code == 2

    def test_sporadic(self, capsys):
        code, out, _ = run(capsys, "verify", "5", "11", "--sporadic", "67")
        assert code == 0
        assert json.loads(out)["case"] == 1

    def test_sporadic_not_applicable(self, capsys):
        code, _, err = run(capsys, "verify", "5", "11", "--sporadic", "19")
        assert code == 3


class TestTablesAndPeriod:
    def test_tables_csv(self, capsys):
        code, out, _ = run(capsys, "tables", "13", "5", "--output", "csv")
        assert code == 0
        assert out.splitlines()[0] == "ell,a,power,k,K,M_period"

    def test_period_text(self, capsys):
        code, out, _ = run(capsys, "period", "13", "--output", "text")
        assert code == 0
        assert "12" in out


class TestCatalog:
    def test_certify_into_catalog_then_query(self, capsys, tmp_path):
        path = str(tmp_path / "cat.jsonl")
        code, _, _ = run(capsys, "certify", "13", "5", "--catalog", path)
        assert code == 0
        code, out, _ = run(capsys, "catalog", path, "--m", "13")
        assert code == 0
        assert json.loads(out.splitlines()[0])["K"] == "14"


class TestUsage:
    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 3

    def test_bad_flag_value(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["certify", "13", "5", "--basis-mode", "fancy"])
        assert exc.value.code == 3
