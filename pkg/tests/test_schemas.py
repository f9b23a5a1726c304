import pytest
from pydantic import ValidationError

from core.config import Settings
from verify.schemas import CheckResult, CheckStatus, CliConfig, OutputFormat, SuiteParams, SuiteReport, Summary


def test_check_result_records_witness_only_on_failure():
    assert CheckResult.of("x", True, "ignored").witness is None
    failed = CheckResult.of("x", False)
    assert failed.status is CheckStatus.failed
    assert failed.witness


def test_summary_aliases():
    summary = Summary(**{"pass": 2, "fail": 1})
    assert summary.passed == 2
    assert summary.model_dump(by_alias=True) == {"pass": 2, "fail": 1}


def test_report_from_checks():
    checks = [CheckResult.of("b", False, "w"), CheckResult.of("a", True)]
    report = SuiteReport.from_checks("s", SuiteParams(), checks)
    assert [c.name for c in report.checks] == ["a", "b"]
    assert not report.ok
    assert [c.name for c in report.failures()] == ["b"]


@pytest.mark.parametrize("values", [{"m": 1}, {"k": -1}, {"seed": 2 ** 64}, {"sample_size": 0}])
def test_suite_params_validation(values):
    with pytest.raises(ValidationError):
        SuiteParams(**values)


def test_cli_config_rules():
    assert CliConfig(command="spinor-orbit", out=OutputFormat.dot).out is OutputFormat.dot
    with pytest.raises(ValidationError):
        CliConfig(command="weights", out=OutputFormat.dot)
    with pytest.raises(ValidationError):
        CliConfig(command="weights", m=3, spec="L+ L+")
    params = CliConfig(command="verify", m=4, k=1, seed=5).suite_params()
    assert (params.m, params.k, params.seed) == (4, 1, 5)


def test_settings_read_the_environment(monkeypatch):
    monkeypatch.setenv("MAX_DEGREE", "2")
    monkeypatch.setenv("MODE", "sample")
    fresh = Settings()
    assert fresh.MAX_DEGREE == 2
    assert fresh.MODE == "sample"
    monkeypatch.setenv("SAMPLE_SIZE", "0")
    with pytest.raises(ValidationError):
        Settings()
