"""Tests for the coherence command line."""
from __future__ import annotations

import json

import pytest

from conjunction_coherence.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, build_parser, main
from conjunction_coherence.coherence import AssessmentProblem
from conjunction_coherence.io import read_report, write_document

from .builders import EXAMPLE_ONE, make_same_consequent, make_three, make_two


@pytest.fixture
def write(tmp_path):
    def _write(problem, name="assessment.json", mode=None):
        path = tmp_path / name
        write_document(path, problem, mode=mode)
        return str(path)

    return _write


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


class TestParser:
    def test_subcommands(self):
        parser = build_parser()
        args = parser.parse_args(["check", "doc.json", "--mode", "lp"])
        assert args.command == "check"
        assert args.mode == "lp"
        assert parser.parse_args(["lambda", "--x", "1", "--y", "1", "--z", "1"]).command == "lambda"

    def test_unknown_mode_rejected(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["check", "doc.json", "--mode", "fast"])


class TestCheck:
    def test_coherent_by_closed_form(self, write, capsys):
        assert main(["check", write(make_two("0.35", "0.45", "0.1")), "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["coherent"] is True
        assert report["closed_form_used"] is True
        assert report["family"] == "two-conditionals"
        assert report["recursion_trace"] == []
        assert report["certificate"] == {"family": "two-conditionals", "violated": []}

    def test_closed_form_witness_names_violated_bounds(self, write, capsys):
        assert main(["check", write(make_two("0.7", "0.6", "0.2")), "--json"]) == EXIT_NEGATIVE
        report = _json_out(capsys)
        assert {"coherent", "witness", "recursion_trace", "closed_form_used"} <= set(report)
        assert report["coherent"] is False
        assert report["witness"]["violated"] == ["z>=max(0,x+y-1)"]
        assert "certificate" not in report

    def test_closed_form_witness_for_three_conditionals(self, write, capsys):
        assert main(["check", write(make_three(EXAMPLE_ONE))]) == EXIT_NEGATIVE
        out = capsys.readouterr().out
        assert "NOT COHERENT" in out
        assert "Witness: violates 1-x1-x2-x3+x12+x13+x23>=0" in out

    def test_incoherent(self, write, capsys):
        assert main(["check", write(make_two("0.35", "0.45", "0.5"))]) == EXIT_NEGATIVE
        assert "NOT COHERENT" in capsys.readouterr().out

    def test_lp_mode_reports_certificate(self, write, capsys):
        assert main(["check", write(make_two("0.35", "0.45", "0.1")), "--mode", "lp", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["closed_form_used"] is False
        assert report["recursion_trace"] == [{"level": 0, "zero_set": []}]
        assert len(report["certificate"]) == 1

    def test_lp_mode_reports_witness(self, write, capsys):
        path = write(make_three(EXAMPLE_ONE))
        assert main(["check", path, "--mode", "lp", "--json"]) == EXIT_NEGATIVE
        report = _json_out(capsys)
        assert report["coherent"] is False
        assert "witness" in report

    def test_mode_from_document(self, write, capsys):
        path = write(make_two("0.35", "0.45", "0.1"), mode="lp")
        assert main(["check", path, "--json"]) == EXIT_OK
        assert _json_out(capsys)["closed_form_used"] is False

    def test_verify_lp(self, write, capsys):
        path = write(make_same_consequent("0.35", "0.45", "0.2"))
        assert main(["check", path, "--verify-lp", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["closed_form"] is True
        assert report["coherent"] is True
        assert "mismatch" not in report

    def test_closed_form_mode_without_family(self, write, capsys):
        problem = AssessmentProblem.build(["A", "H"], [("A", "H"), ("A", "H")], {1: "0.3", 2: "0.3"})
        assert main(["check", write(problem), "--mode", "closed-form"]) == EXIT_INPUT
        assert "No closed form" in capsys.readouterr().err

    def test_out_writes_report(self, write, tmp_path, capsys):
        out = tmp_path / "reports" / "check.json"
        assert main(["check", write(make_two("0.35", "0.45", "0.1")), "--out", str(out)]) == EXIT_OK
        assert "Wrote report" in capsys.readouterr().out
        assert read_report(out)["coherent"] is True

    def test_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "nope.json")]) == EXIT_INPUT
        assert capsys.readouterr().err.startswith("error:")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_INPUT

    def test_malformed_prevision(self, tmp_path):
        doc = {
            "atoms": ["A", "H"],
            "conditionals": [{"consequent": "A", "antecedent": "H"}],
            "terms": [{"members": [1], "prevision": "1.2.3"}],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_INPUT

    def test_invalid_utf8(self, tmp_path, capsys):
        path = tmp_path / "latin1.json"
        path.write_bytes(b'{"atoms": ["\xe9"]}')
        assert main(["check", str(path)]) == EXIT_INPUT
        assert "not UTF-8" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "overrides, message",
        [
            ({"options": {"max_atoms": "5"}}, "max_atoms"),
            ({"options": {"max_atoms": 0}}, "max_atoms"),
            ({"terms": [{"members": [[1]], "prevision": "0.3"}]}, "positive integers"),
            ({"terms": [{"members": ["1"], "prevision": "0.3"}]}, "positive integers"),
        ],
    )
    def test_malformed_document_fields(self, tmp_path, capsys, overrides, message):
        doc = {
            "atoms": ["A", "H"],
            "conditionals": [{"consequent": "A", "antecedent": "H"}],
            "terms": [{"members": [1], "prevision": "0.3"}],
        }
        doc.update(overrides)
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_INPUT
        assert message in capsys.readouterr().err


class TestExtend:
    def test_closed_form(self, write, capsys):
        path = write(make_same_consequent("0.35", "0.45"))
        assert main(["extend", path, "--target", "1,2", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert (report["lower"], report["upper"]) == ("63/400", "7/20")
        assert report["method"] == "closed-form"
        assert report["family"] == "same-consequent"

    def test_verify_lp(self, write, capsys):
        path = write(make_two("0.35", "0.45"))
        assert main(["extend", path, "--target", "1,2", "--verify-lp", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert (report["lower"], report["upper"]) == ("0", "7/20")
        assert report["method"] == "lp-bracket"
        assert report["closed_form"] == {"lower": "0", "upper": "7/20", "empty": False}

    def test_lp_mode_text(self, write, capsys):
        path = write(make_two("0.35", "0.45"))
        assert main(["extend", path, "--target", "1,2", "--mode", "lp"]) == EXIT_OK
        assert "Coherent extension for C12: [0, 7/20]" in capsys.readouterr().out

    def test_incoherent_base(self, write, capsys):
        path = write(make_three(EXAMPLE_ONE))
        assert main(["extend", path, "--target", "1,2,3"]) == EXIT_NEGATIVE
        assert "incoherent" in capsys.readouterr().err

    def test_bad_target(self, write):
        path = write(make_two("0.35", "0.45"))
        assert main(["extend", path, "--target", "1,x"]) == EXIT_INPUT


class TestLambda:
    def test_product(self, capsys):
        assert main(["lambda", "--x", "0.35", "--y", "0.45", "--z", "0.1575", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["kind"] == "PRODUCT"
        assert report["z"] == "63/400"

    def test_underdetermined_text(self, capsys):
        assert main(["lambda", "--x", "0", "--y", "0.7", "--z", "0"]) == EXIT_OK
        assert "every lambda" in capsys.readouterr().out

    def test_malformed(self, capsys):
        assert main(["lambda", "--x", "1.2.3", "--y", "0.5", "--z", "0.1"]) == EXIT_INPUT
        assert "Malformed" in capsys.readouterr().err

    def test_out_of_range(self):
        assert main(["lambda", "--x", "1.5", "--y", "0.5", "--z", "0.1"]) == EXIT_INPUT


class TestTable:
    def test_two_conditionals(self, write, capsys):
        path = write(make_two("0.35", "0.45", "0.1"))
        assert main(["table", path, "--term", "1,2", "--json"]) == EXIT_OK
        report = _json_out(capsys)
        assert report["term"] == [1, 2]
        assert len(report["rows"]) == 9
        assert report["rows"][0]["constituent"] == "C0"
        assert report["rows"][0]["value"] == "1/10"

    def test_text(self, write, capsys):
        assert main(["table", write(make_two("0.35", "0.45", "0.1")), "--term", "1"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0].startswith("case")

    def test_missing_sub_prevision(self, write, capsys):
        path = write(make_three(EXAMPLE_ONE[:3] + ("0.1", "0.2", "0.3")))
        assert main(["table", path, "--term", "1,2,3"]) == EXIT_INPUT
        assert "C123" in capsys.readouterr().err
