import json

import pytest
from click.testing import CliRunner

from exceis.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, list(args))
    return result


class TestCosets:
    def test_g2_heisenberg(self, runner):
        r = invoke(runner, "cosets", "G2", "M1", "M1")
        assert r.exit_code == 0
        assert "4 elements" in r.output
        assert "Verified" in r.output

    def test_f4_m3_m1_contains_printed_word(self, runner):
        r = invoke(runner, "--format", "json", "cosets", "F4", "M3", "M1")
        assert r.exit_code == 0
        doc = json.loads(r.output)
        assert doc["count"] == 5
        assert [3, 2, 3, 4, 1, 2, 3, 2, 1] in [row["word"] for row in doc["rows"]]

    def test_trivial(self, runner):
        r = invoke(runner, "--format", "json", "cosets", "D4", "full", "full")
        doc = json.loads(r.output)
        assert doc["count"] == 1 and doc["words"] == [[]]

    def test_unknown_system_is_diagnostic(self, runner):
        r = invoke(runner, "cosets", "Z9", "M1", "M1")
        assert r.exit_code != 0
        assert "Z9" in r.output


class TestConstantTerm:
    def test_ge_field(self, runner):
        r = invoke(runner, "--format", "json", "constant-term",
                   "GE-field", "P1", "P1", "--s0", "5")
        assert r.exit_code == 0
        doc = json.loads(r.output)
        assert doc["census_size"] == 4
        assert [row["classification"] for row in doc["rows"]] == \
            ["Contributes", "Contributes", "DoesNotContribute", "DoesNotContribute"]

    def test_e7(self, runner):
        r = invoke(runner, "--format", "json", "constant-term",
                   "E7", "P3", "P3", "--s0", "14")
        doc = json.loads(r.output)
        assert doc["census_size"] == 4
        w0 = doc["rows"][-1]
        assert w0["intertwiner"]["order"] == -1

    def test_d5(self, runner):
        r = invoke(runner, "--format", "json", "constant-term", "D5", "P", "P")
        doc = json.loads(r.output)
        assert doc["census_size"] == 2
        assert doc["rows"][1]["order_report"]["classification"] == "Regular"

    def test_wrong_source_rejected(self, runner):
        r = invoke(runner, "constant-term", "E7", "P1", "P3")
        assert r.exit_code != 0

    def test_off_point_evaluation_suppresses_expectations(self, runner):
        r = invoke(runner, "--format", "json", "constant-term",
                   "D5", "P", "P", "--s0", "9")
        assert r.exit_code == 0
        doc = json.loads(r.output)
        assert doc["s0"] == "9"


class TestArchAndAlgebra:
    def test_arch_case(self, runner):
        r = invoke(runner, "--format", "json", "arch", "G2-field")
        doc = json.loads(r.output)
        assert doc["status"] == "Verified"
        assert {row["name"] for row in doc["rows"] if "ok" in row} == \
            {"v212", "v21212", "v1212", "v12-g2"}

    def test_arch_all_includes_unprinted(self, runner):
        r = invoke(runner, "--format", "json", "arch")
        doc = json.loads(r.output)
        unverified = [row for row in doc["rows"]
                      if row.get("status", "").startswith("unverified")]
        assert unverified and doc["status"] == "Verified"

    def test_algebra_suite(self, runner):
        r = invoke(runner, "--format", "json", "algebra", "trace-identity",
                   "--count", "25", "--seed", "7")
        doc = json.loads(r.output)
        assert doc["status"] == "Verified"
        assert doc["suites"][0]["failures"] == 0

    def test_unknown_suite(self, runner):
        r = invoke(runner, "algebra", "nonsense")
        assert r.exit_code != 0


class TestDeterminismAndSchema:
    def test_json_round_trip(self, runner):
        r = invoke(runner, "--format", "json", "cosets", "F4", "M2", "M1")
        doc = json.loads(r.output)
        from exceis.report import to_json
        doc.pop("report_version")
        assert to_json(doc) == r.output

    def test_all_byte_identical(self, runner):
        args = ["--format", "json", "all", "--seed", "11", "--count", "5"]
        r1 = invoke(runner, *args)
        r2 = invoke(runner, *args)
        assert r1.exit_code == 0
        assert r1.output == r2.output

    def test_schema_validates(self, runner):
        import importlib.resources
        import jsonschema
        schema = json.loads(
            (importlib.resources.files("exceis") / "data" /
             "report-schema.json").read_text())
        for args in (["cosets", "G2", "M2", "M1"],
                     ["constant-term", "E7", "P3", "P2"],
                     ["arch", "GE-split"],
                     ["modulus"],
                     ["oracle"],
                     ["algebra", "composition", "--count", "5"]):
            r = invoke(runner, "--format", "json", *args)
            assert r.exit_code == 0, r.output
            jsonschema.validate(json.loads(r.output), schema)
            row_schema = {"$ref": "#/definitions/row",
                          "definitions": schema["definitions"]}
            for row in json.loads(r.output).get("rows", []):
                if "classification" in row:
                    jsonschema.validate(row, row_schema)
