import json

import pytest

from grotop.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, main


@pytest.fixture()
def c2_file(tmp_path):
    path = tmp_path / "c2.txt"
    path.write_text("0 < 1")
    return str(path)


@pytest.fixture()
def v3_file(tmp_path):
    path = tmp_path / "v3.txt"
    path.write_text("a < t\nb < t")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParse:
    def test_echo(self, capsys, c2_file):
        code, out, _ = run(capsys, ["parse", c2_file])
        assert code == EXIT_OK
        assert "elements: 0 1" in out
        assert "0 < 1" in out

    def test_cycle_is_input_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("a < b\nb < a")
        code, _, err = run(capsys, ["parse", str(bad)])
        assert code == EXIT_INPUT
        assert "NotAPartialOrder" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["parse", "/nonexistent/poset.txt"])
        assert code == EXIT_INPUT


class TestEnumerate:
    def test_counts(self, capsys, c2_file):
        code, out, _ = run(capsys, ["enumerate-gt", c2_file])
        assert code == EXIT_OK
        assert out.startswith("4 Grothendieck topologies")

    def test_limit_budget(self, capsys, v3_file):
        code, _, err = run(capsys, ["enumerate-gt", v3_file, "--limit", "3"])
        assert code == EXIT_BUDGET
        assert "BudgetExceeded" in err


class TestCorrespond:
    def test_subset(self, capsys, c2_file):
        code, out, _ = run(capsys, ["correspond", c2_file, "--subset", "pt:1"])
        assert code == EXIT_OK
        assert "round trip (subset): equal" in out

    def test_inline_topology(self, capsys, c2_file):
        topology = json.dumps({"0": [["0"]], "1": [["0", "1"]]})
        code, out, _ = run(capsys, ["correspond", c2_file, "--topology", topology])
        assert code == EXIT_OK
        assert "points: pt:0 pt:1" in out

    def test_topology_from_file(self, capsys, c2_file, tmp_path):
        tfile = tmp_path / "topology.json"
        tfile.write_text(json.dumps({"0": [["0"], []], "1": [["0", "1"], ["0"], []]}))
        code, out, _ = run(capsys, ["correspond", c2_file, "--topology", str(tfile)])
        assert code == EXIT_OK
        assert "points: (empty)" in out


class TestClosure:
    def test_finite(self, capsys, v3_file):
        code, out, _ = run(
            capsys,
            ["closure", v3_file, "--topology", "scott", "--set", "pt:a"],
        )
        assert code == EXIT_OK
        assert "pt:a pt:t" in out

    def test_family(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "closure",
                "--family",
                "chain-nat-op",
                "--topology",
                "strong",
                "--seq",
                "identity",
                "--candidates",
                "inf",
                "--budget",
                "64",
            ],
        )
        assert code == EXIT_OK
        assert "added: inf" in out

    def test_missing_subject(self, capsys):
        with pytest.raises(SystemExit):
            main(["closure", "--topology", "scott"])


class TestConverge:
    def test_converges(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "converge",
                "--family",
                "bigcell",
                "--seq",
                "factorial",
                "--limit",
                "omega",
                "--test-elems",
                "2,3,5,7",
                "--budget",
                "1000",
            ],
        )
        assert code == EXIT_OK
        assert "N(7) = 7" in out

    def test_diverges_is_violation(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "converge",
                "--family",
                "bigcell",
                "--seq",
                "cycle:2,3",
                "--limit",
                "6",
                "--test-elems",
                "2,3",
            ],
        )
        assert code == EXIT_VIOLATION
        assert "diverges at 2" in out

    def test_unknown_is_budget(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "converge",
                "--family",
                "bigcell",
                "--seq",
                "identity",
                "--limit",
                "omega",
                "--test-elems",
                "2",
                "--budget",
                "50",
            ],
        )
        assert code == EXIT_BUDGET


class TestSpectral:
    def test_finite_poset(self, capsys, c2_file):
        code, out, _ = run(capsys, ["spectral", c2_file])
        assert code == EXIT_OK
        assert "dominating: 1" in out

    def test_family_not_spectral(self, capsys):
        code, out, _ = run(capsys, ["spectral", "--family", "chain-nat"])
        assert code == EXIT_VIOLATION
        assert "not-spectral" in out

    def test_family_spectral_with_levels(self, capsys):
        code, out, _ = run(
            capsys, ["spectral", "--family", "bigcell", "--levels", "64"]
        )
        assert code == EXIT_OK


class TestCount:
    def test_table(self, capsys, v3_file):
        code, out, _ = run(capsys, ["count", v3_file])
        assert code == EXIT_OK
        assert "gt   8" in out
        assert "ok  x <= cl: 3 <= 5" in out

    def test_json_output(self, capsys, c2_file):
        code, out, _ = run(capsys, ["count", c2_file, "--json"])
        assert code == EXIT_OK
        body = json.loads(out)
        assert body["schema"] == 1
        assert body["gt"] == 4

    def test_formula_mode(self, capsys, c2_file):
        code, out, _ = run(capsys, ["count", c2_file, "--gt", "formula", "--json"])
        assert json.loads(out)["methods"]["gt"] == "formula"


class TestCatalog:
    def test_list(self, capsys):
        code, out, _ = run(capsys, ["catalog", "list"])
        assert code == EXIT_OK
        assert "bigcell" in out

    def test_truncate(self, capsys):
        code, out, _ = run(capsys, ["catalog", "truncate", "bigcell", "6"])
        assert code == EXIT_OK
        body = json.loads(out)
        assert body["elements"] == ["1", "2", "3", "4", "5", "6"]

    def test_truncate_bad_family(self, capsys):
        code, _, err = run(capsys, ["catalog", "truncate", "nope", "3"])
        assert code == EXIT_INPUT


def test_output_is_deterministic(capsys, v3_file):
    first = run(capsys, ["enumerate-gt", v3_file])
    second = run(capsys, ["enumerate-gt", v3_file])
    assert first == second
