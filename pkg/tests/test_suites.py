import pytest

from core.errors import UsageError
from verify.schemas import CheckStatus, SuiteParams, SweepMode
from verify.services import SUITES, Sweep, harmonic_readings, run_suite, spec_at


def assert_clean(report):
    assert report.checks, report.suite
    assert report.ok, [f"{c.name}: {c.witness}" for c in report.failures()]


def test_catalog_order():
    assert list(SUITES)[:3] == ["relations2", "eq1", "lemma1"]
    assert list(SUITES)[-1] == "errata"
    assert len(SUITES) == 16


def test_spec_at_is_lexicographic():
    assert str(spec_at(3, 0)) == "L+ L+ L+"
    assert str(spec_at(3, 1)) == "L+ L+ L-"
    assert str(spec_at(3, 4)) == "L+ L- L+"
    assert str(spec_at(2, 15)) == "M- M-"


def test_sweep_sampling_is_deterministic():
    sweep = Sweep(3, 2, SweepMode.sample, 11, 20)
    assert sweep.elements() == sweep.elements()
    assert len(sweep.elements()) == 20
    assert len(sweep.specs()) == 20


def test_harmonic_readings():
    assert harmonic_readings(2, 2) == (48, 32)


def test_relations2_small(exhaustive_params):
    report = run_suite("relations2", exhaustive_params.model_copy(update={"m": 2, "max_degree": 2}))
    assert_clean(report)


def test_relations2_sampled(sample_params):
    params = sample_params.model_copy(update={"m": 3})
    first, second = run_suite("relations2", params), run_suite("relations2", params)
    assert_clean(first)
    assert first == second


def test_eq1_m3():
    assert_clean(run_suite("eq1", SuiteParams(m=3, max_degree=1)))


def test_lemma5_m3():
    assert_clean(run_suite("lemma5", SuiteParams(m=3, max_degree=1)))


def test_counting_suites():
    assert_clean(run_suite("corollary1", SuiteParams(m=2)))
    assert_clean(run_suite("corollary2", SuiteParams(m=3)))


def test_lemma3_m2():
    assert_clean(run_suite("lemma3", SuiteParams(m=2, k=1)))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_orbits(m):
    assert_clean(run_suite("orbits", SuiteParams(m=m)))


def test_orbit_words_keep_the_start_parity():
    odd = run_suite("orbits", SuiteParams(m=4))
    names = [c.name for c in odd.checks]
    assert "m=4 start L+ L+ L+ L- every word has an odd number of minus signs" in names
    assert "m=4 start L+ L+ L+ L+ every word has an even number of minus signs" in names
    seven = run_suite("orbits", SuiteParams(m=7))
    assert_clean(seven)
    assert any("every word has an even number" in c.name for c in seven.checks)


def test_dims_single_instance():
    report = run_suite("dims", SuiteParams(m=2, k=2))
    assert_clean(report)
    assert any("alternative reading" in c.name for c in report.checks)


def test_errata_always_passes():
    report = run_suite("errata", SuiteParams())
    assert_clean(report)
    names = " ".join(c.name for c in report.checks)
    assert "alternative binomial reading" in names
    assert "parities observed [0, 1]" in names
    assert "misprinted words ['L+ L- L- L- L- L- L+', 'L+ L- L- L- L- L+ L-']" in names
    assert "last-coordinate M factors without i in odd dimension are idempotent" in names


@pytest.mark.slow
def test_lemma2():
    assert_clean(run_suite("lemma2", SuiteParams(m=4)))


@pytest.mark.slow
def test_monogenic():
    assert_clean(run_suite("monogenic", SuiteParams(m=3, k=3)))


def test_checks_are_sorted_and_counted():
    report = run_suite("orbits", SuiteParams(m=4))
    names = [c.name for c in report.checks]
    assert names == sorted(names)
    assert report.summary.passed == sum(c.status is CheckStatus.passed for c in report.checks)
    assert report.model_dump(by_alias=True)["summary"] == {"pass": len(names), "fail": 0}


def test_unsupported_parameters():
    with pytest.raises(UsageError):
        run_suite("nope", SuiteParams())
    with pytest.raises(UsageError):
        run_suite("lemma1", SuiteParams(m=3))
    with pytest.raises(UsageError):
        run_suite("eq1", SuiteParams(m=3, max_degree=9))
    with pytest.raises(UsageError):
        run_suite("dims", SuiteParams(m=5, k=1))
