import csv
import io
import json

import jsonschema
import pytest

from symplectic_reductions import __main__ as cli
from symplectic_reductions.core.application import ReductionApp
from symplectic_reductions.core.verification import VerificationRunner
from symplectic_reductions.exceptions import InvalidParameterError
from symplectic_reductions.models.geometry import InventoryStatus, VerdictCase
from symplectic_reductions.models.partition import GroupKind
from symplectic_reductions.models.report import CheckResult, ReductionReport
from symplectic_reductions.templates.report_template import OutputFormat, ReportRenderer
from symplectic_reductions.utils.config_manager import Config


@pytest.fixture
def app(small_config):
    return ReductionApp(small_config.with_overrides(weight_bound=1))


class TestAnalyze:
    def test_gl_unique(self, app):
        report = app.analyze(GroupKind.GL, 3, 4)
        assert report.verdict.case is VerdictCase.SYMPLECTIC_UNIQUE_DESING
        assert report.model.total_dim == 8
        assert report.quotient.dim == 8
        assert [c.name for c in report.zero_fiber] == ["X_1", "X_2", "X_3"]
        assert report.passed, [c for c in report.verification if not c.passed]

    def test_h0_table(self, app):
        report = app.analyze(GroupKind.GL, 3, 4)
        values = {entry.weight.entries: entry.value for entry in report.h0_table}
        assert values[(0, 0, 0)] == 1
        assert values[(1, 0, 0)] == 2

    def test_trivial(self, app):
        report = app.analyze(GroupKind.GL, 1, 1)
        assert report.quotient.dim == 0
        assert report.quotient.is_smooth
        assert report.passed

    def test_sp_two_components(self, app):
        report = app.analyze(GroupKind.SP, 2, 2)
        assert report.quotient.is_reducible
        assert report.hilb_inventory.status is InventoryStatus.EXACT
        assert report.hilb_inventory.component_count == 2
        checks = {c.name: c for c in report.verification}
        assert checks["momentmap.classify_sp"].passed
        assert report.passed

    def test_excluded_regime(self, app):
        report = app.analyze(GroupKind.GL, 3, 3)
        assert report.h0_table == ()
        assert report.model is None
        assert any("excluded" in note for note in report.notes)
        assert report.passed

    def test_orthogonal_is_verdict_only(self, app):
        report = app.analyze(GroupKind.O, 2, 3)
        assert report.quotient is None
        assert report.zero_fiber == ()
        assert report.verdict.case is VerdictCase.DESING_STRICTLY_DOMINATES

    def test_invalid(self, app):
        with pytest.raises(InvalidParameterError):
            app.analyze(GroupKind.SP, 3, 2)

    def test_reports_are_reproducible(self, app):
        first = app.analyze(GroupKind.GL, 2, 3).to_json()
        assert ReductionApp(app.config).analyze(GroupKind.GL, 2, 3).to_json() == first

    def test_json_round_trip(self, app):
        report = app.analyze(GroupKind.SP, 2, 3)
        document = report.to_json()
        restored = ReductionReport.from_json(document)
        assert restored.to_json() == document
        assert restored.quotient == report.quotient
        assert restored.verdict == report.verdict
        assert sorted(restored.verification, key=lambda c: c.name) == sorted(report.verification, key=lambda c: c.name)
        assert list(json.loads(document)) == sorted(json.loads(document))


class TestTable:
    def test_rows(self, app):
        rows = app.table(GroupKind.GL, [1, 2], [2, 3])
        assert [(r.n, r.m, r.verdict, r.springer_count, r.model_dim) for r in rows] == [
            (1, 2, "SymplecticUniqueDesing", 1, 2),
            (1, 3, "DesingStrictlyDominates", 2, 4),
            (2, 2, "SymplecticUniqueDesing", 1, 2),
            (2, 3, "NotCoveredByTheorems", 2, None),
        ]

    def test_invalid_rows_are_marked(self, app):
        rows = app.table(GroupKind.SP, [1, 2], [1])
        assert not rows[0].valid
        assert rows[1].valid and rows[1].quotient_dim == 0

    def test_csv(self, app):
        text = ReportRenderer(OutputFormat.CSV).render_table(app.table(GroupKind.GL, [2], [3]))
        rows = list(csv.reader(io.StringIO(text)))
        assert rows == [ReportRenderer.TABLE_COLUMNS, ["2", "3", "yes", "1", "4", "NotCoveredByTheorems", "2", "-"]]


class TestRenderer:
    def test_text_report(self, app):
        text = ReportRenderer().render_report(app.analyze(GroupKind.GL, 3, 4))
        assert "Verdict: SymplecticUniqueDesing" in text
        assert "[PASS]" in text

    def test_csv_report_is_rejected(self, app):
        with pytest.raises(InvalidParameterError):
            ReportRenderer(OutputFormat.CSV).render_report(app.analyze(GroupKind.GL, 1, 1))


class TestReportSchema:
    @pytest.fixture(scope="class")
    def schema(self):
        schema = ReportRenderer.report_schema()
        jsonschema.Draft202012Validator.check_schema(schema)
        return schema

    @pytest.mark.parametrize("kind, n, m", [
        (GroupKind.GL, 3, 4),
        (GroupKind.GL, 3, 3),
        (GroupKind.SP, 2, 2),
        (GroupKind.SP, 2, 3),
        (GroupKind.O, 2, 3),
    ])
    def test_analysis_documents(self, app, schema, kind, n, m):
        jsonschema.validate(json.loads(app.analyze(kind, n, m).to_json()), schema)

    def test_verification_documents(self, small_config, schema):
        report = VerificationRunner(small_config).run("springer")
        rendered = ReportRenderer(OutputFormat.JSON).render_verification(report)
        jsonschema.validate(json.loads(rendered), schema)

    def test_rejects_malformed_documents(self, app, schema):
        document = json.loads(app.analyze(GroupKind.GL, 1, 2).to_json())
        document["verdict"]["case"] = "Maybe"
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(document, schema)
        del document["verdict"]
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(document, schema)


class TestVerificationRunner:
    @pytest.mark.parametrize("suite", ["theorems", "springer", "factor"])
    def test_suites_pass(self, small_config, suite):
        report = VerificationRunner(small_config).run(suite)
        assert report.passed, report.failures
        assert [c.name for c in report.checks] == sorted(c.name for c in report.checks)

    def test_dims_suite_records_the_battery(self):
        report = VerificationRunner(Config(sample_count=3, grid_max_n=1, grid_max_m=2)).run("dims")
        assert report.passed, report.failures
        witness = {c.name: c.witness for c in report.checks}["dims.zero_fiber.gl.n1.m2"]
        assert witness["violations"] == []
        assert witness["generic_rates"]["X_1"] >= 0.95
        assert "dims.base_forms" in {c.name for c in report.checks}

    def test_unknown_suite(self, small_config):
        with pytest.raises(InvalidParameterError):
            VerificationRunner(small_config).run("nope")

    def test_workers_do_not_change_the_result(self, small_config):
        serial = VerificationRunner(small_config).run("theorems")
        parallel = VerificationRunner(small_config.with_overrides(workers=4)).run("theorems")
        assert serial == parallel


class TestCli:
    def test_analyze_json(self, capsys):
        code = cli.main(["analyze", "--group", "gl", "--n", "3", "--m", "4",
                         "--samples", "2", "--weight-bound", "1", "--format", "json"])
        document = json.loads(capsys.readouterr().out)
        assert code == cli.EXIT_OK
        assert document["schema_version"] == "1.0"
        assert document["input"] == {"group": "gl", "n": 3, "m": 4, "seed": 0}
        assert document["verdict"]["case"] == "SymplecticUniqueDesing"
        jsonschema.validate(document, ReportRenderer.report_schema())

    def test_table_csv(self, capsys):
        code = cli.main(["table", "--group", "gl", "--n", "1..2", "--m", "2..3", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()
        assert code == cli.EXIT_OK
        assert lines[0] == "n,m,valid,N,quotient_dim,verdict,springer_count,model_dim"
        assert lines[1] == "1,2,yes,1,2,SymplecticUniqueDesing,1,2"
        assert len(lines) == 5

    def test_usage_errors(self, capsys):
        assert cli.main(["analyze", "--group", "sp", "--n", "3", "--m", "2"]) == cli.EXIT_USAGE
        assert "error:" in capsys.readouterr().err
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["analyze", "--group", "xx", "--n", "1", "--m", "1"])
        assert excinfo.value.code == cli.EXIT_USAGE

    def test_bad_range(self):
        with pytest.raises(SystemExit):
            cli.main(["table", "--group", "gl", "--n", "3..1", "--m", "1"])

    def test_resource_bound(self):
        code = cli.main(["analyze", "--group", "sp", "--n", "4", "--m", "2",
                         "--samples", "1", "--weight-bound", "7"])
        assert code == cli.EXIT_RESOURCE

    def test_failed_check_sets_the_exit_code(self, monkeypatch, capsys):
        monkeypatch.setattr(ReductionApp, "_check_clauses",
                            lambda self, kind, n, m: CheckResult("geometry.clauses_disjoint", False, {}))
        code = cli.main(["analyze", "--group", "o", "--n", "2", "--m", "3"])
        assert code == cli.EXIT_VERIFICATION
        assert "[FAIL] geometry.clauses_disjoint" in capsys.readouterr().out

    def test_verify(self, capsys, tmp_path):
        cache = tmp_path / "results.json"
        code = cli.main(["verify", "theorems", "--cache", str(cache), "--format", "json"])
        document = json.loads(capsys.readouterr().out)
        assert code == cli.EXIT_OK
        assert document["suite"] == "theorems"
        assert document["passed"]
        jsonschema.validate(document, ReportRenderer.report_schema())

    def test_parse_range(self):
        assert cli.parse_range("2..4") == [2, 3, 4]
        assert cli.parse_range("5") == [5]


def test_config_defaults():
    config = Config()
    assert (config.weight_bound, config.degree_bound, config.sample_count, config.seed) == (3, 4, 25, 0)
    assert config.cache_path is None
