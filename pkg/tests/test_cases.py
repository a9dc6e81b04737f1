import pytest

from exceis import cases
from exceis.config import RowSpec, TableSpec, load_config
from exceis.report import to_json, to_markdown


@pytest.fixture(scope="module")
def cfg():
    return load_config()


class TestTableReports:
    def test_all_tables_clean(self, cfg):
        for case_name in cfg.cases:
            case = cfg.cases[case_name]
            for table in case.tables:
                doc = cases.build_table_report(cfg, case, table)
                assert doc["status"] != "Mismatch", (case_name, table.target, [
                    (r["word"], c) for r in doc["rows"]
                    for c in r.get("checks", []) if not c["ok"]])
                assert doc["census_ok"]

    def test_ge_field_classifications(self, cfg):
        doc = cases.constant_term_report(cfg, "GE-field", "P1", "P1")
        got = {tuple(r["word"]): r["classification"] for r in doc["rows"]}
        assert got[()] == "Contributes"
        assert got[(2,)] == "Contributes"
        assert got[(2, 1, 2)] == "DoesNotContribute"
        assert got[(2, 1, 2, 1, 2)] == "DoesNotContribute"
        w0 = next(r for r in doc["rows"] if r["word"] == [2, 1, 2, 1, 2])
        assert w0["arch"]["vanishing_order"] >= 2
        assert w0["arch"]["net_order"] >= 1
        assert w0["intertwiner"]["global"] == "PoleOrder(1)"

    def test_f4_langlands_row_needs_external(self, cfg):
        doc = cases.constant_term_report(cfg, "F4-heis", "P1", "P2")
        row = next(r for r in doc["rows"]
                   if r["word"] == [2, 3, 4, 2, 3, 1, 2, 3, 4, 1, 2, 3, 2, 1])
        assert row["classification"] == "NeedsExternalInput"
        assert row["status"] == "UnverifiedExternal"

    def test_trivial_full_parabolic_table(self, cfg):
        case = cfg.case("GE-field")
        table = TableSpec(target="full", rows=[RowSpec(word=())])
        doc = cases.build_table_report(cfg, case, table)
        assert doc["census_size"] == 1
        assert doc["rows"][0]["canonical_word"] == []

    def test_boundary_margins_reported(self, cfg):
        doc = cases.constant_term_report(cfg, "GE-split", "P2", "P1")
        row = next(r for r in doc["rows"] if r["word"] == [1, 2, 4, 3, 2])
        eis = row["eis"][0]
        assert eis["status"] == "Boundary" and eis["margin"] == "0"

    def test_mismatch_detected(self, cfg):
        # a wrong expected word must surface as a Mismatch
        case = cfg.case("D5-line")
        table = TableSpec(target="P1", kind="census",
                          rows=[RowSpec(word=()), RowSpec(word=(1, 1))])
        doc = cases.build_table_report(cfg, case, table)
        assert doc["status"] == "Mismatch"

    def test_wrong_pairing_detected(self, cfg):
        from exceis.config import PairingCheck
        from exceis.exactnum import AffineForm
        case = cfg.case("F4-heis")
        bad = RowSpec(word=(4, 3, 2, 1),
                      pairings=[PairingCheck(2, AffineForm.parse("s-8"))])
        table = TableSpec(target="P4", rows=[
            RowSpec(word=()), bad,
            RowSpec(word=(4, 3, 2, 3, 4, 1, 2, 3, 2, 1))])
        doc = cases.build_table_report(cfg, case, table)
        row = next(r for r in doc["rows"] if r["word"] == [4, 3, 2, 1])
        assert row["status"] == "Mismatch"
        assert doc["status"] == "Mismatch"

    def test_wrong_trace_detected(self, cfg):
        from exceis.exactnum import AffineForm
        case = cfg.case("GE-field")
        bad = RowSpec(word=(2,), trace=[(2, AffineForm.parse("s-2"))])
        table = TableSpec(target="P1", rows=[
            RowSpec(word=()), bad, RowSpec(word=(2, 1, 2)),
            RowSpec(word=(2, 1, 2, 1, 2))])
        doc = cases.build_table_report(cfg, case, table)
        row = next(r for r in doc["rows"] if r["word"] == [2])
        assert row["status"] == "Mismatch"

    def test_census_extra_elements_flagged(self, cfg):
        case = cfg.case("D5-line")
        table = TableSpec(target="P1", kind="census", rows=[RowSpec(word=())])
        doc = cases.build_table_report(cfg, case, table)
        assert not doc["census_ok"]
        assert doc["census_unmatched"] == [[1]]

    def test_wrong_source_raises(self, cfg):
        with pytest.raises(ValueError):
            cases.constant_term_report(cfg, "E7-siegel", "P2", "P3")

    def test_unknown_case_raises(self, cfg):
        from exceis.config import ConfigError
        with pytest.raises(ConfigError):
            cfg.case("nonsense")


class TestCosetsReport:
    def test_without_expectation_is_computed(self, cfg):
        doc = cases.cosets_report(cfg, "F4", "M4", "M2")
        assert doc["status"] == "Computed"
        assert doc["count"] == len(doc["rows"])

    def test_with_expectation(self, cfg):
        doc = cases.cosets_report(cfg, "D4", "M1", "M2")
        assert doc["status"] == "Verified" and doc["count"] == 3


class TestRendering:
    def test_markdown_constant_term(self, cfg):
        doc = cases.constant_term_report(cfg, "E7-siegel", "P3", "P3")
        md = to_markdown(doc)
        assert "s-17" in md and "DoesNotContribute" in md

    def test_markdown_all_kinds(self, cfg):
        for doc in (cases.modulus_report(cfg), cases.oracle_report(cfg),
                    cases.arch_report(cfg),
                    cases.algebra_report(cfg, "composition", seed=1, count=5)):
            md = to_markdown(doc)
            assert md.startswith("##")

    def test_json_sorted_and_stable(self, cfg):
        doc = cases.modulus_report(cfg)
        assert to_json(doc) == to_json(dict(reversed(list(doc.items()))))


class TestRunAll:
    def test_no_mismatch_and_all_sections(self, cfg):
        doc = cases.run_all(cfg, seed=1, count=10)
        assert doc["status"] != "Mismatch"
        kinds = [s["kind"] for s in doc["sections"]]
        # 23 constant-term/census tables + modulus, oracle, arch, algebra
        assert kinds.count("constant-term") + kinds.count("census") == 23
        assert {"modulus", "gk-oracle", "arch", "algebra"} <= set(kinds)
