import pytest
from pydantic import ValidationError

from reggelab import verify
from reggelab.models import RunConfig
from reggelab.suite_registry import suites
from reggelab.types import NumberMode, Suite

BOUNDED = {
    Suite.Regge: {"max_label": 4},
    Suite.Orbit: {"max_label": 3},
    Suite.Oracle: {"max_label": 3},
    Suite.U3: {"max_label": 2},
    Suite.Duality: {"max_label": 2},
    Suite.Orthogonality: {"max_label": 4},
    Suite.Dims: {"max_label": 2},
    Suite.CM: {"samples": 20},
    Suite.Spherical: {"samples": 50},
    Suite.Backlund: {"samples": 3},
    Suite.Lemma: {"samples": 5, "exact_samples": 2},
    Suite.Theorem: {"samples": 5, "exact_samples": 2},
}


def run(suite, **bounds):
    config = RunConfig(command="verify", suite=suite, seed=7, **bounds)
    return verify.run_suite(suites[suite].cls(), config)


def test_every_suite_is_registered():
    assert set(suites) == set(Suite)
    for info in suites.values():
        assert info.bound in ("max_label", "samples")
        assert issubclass(info.cls, verify.SuiteRunner)


@pytest.mark.parametrize("suite", list(BOUNDED))
def test_suite_passes_at_small_bounds(suite):
    report = run(suite, **BOUNDED[suite])
    assert report.instances > 0
    assert report.passed, [outcome.data for outcome in report.failures]


def test_regge_instances_are_sorted():
    runner = verify.ReggeSuite()
    config = RunConfig(command="verify", suite=Suite.Regge, max_label=2)
    keys = [runner(config, l).key for l in runner.instances(config, None)]
    assert keys == sorted(keys)


def test_reports_are_deterministic():
    first = run(Suite.CM, samples=10)
    second = run(Suite.CM, samples=10)
    assert first.dict() == second.dict()


def test_workers_do_not_change_the_report():
    config = RunConfig(command="verify", suite=Suite.Regge, max_label=3)
    single = verify.run_suite(verify.ReggeSuite(), config)
    sharded = verify.run_suite(verify.ReggeSuite(), config.copy(update={"workers": 4}))
    assert single.instances == sharded.instances
    assert single.failures == sharded.failures


def test_modes_follow_the_config():
    config = RunConfig(command="verify", suite=Suite.Theorem, samples=2, exact_samples=1, mode=NumberMode.Exact)
    payloads = verify.LemmaSuite().instances(config, verify.utils.make_rng(0))
    assert [mode for mode, _, _ in payloads] == ["exact"]


def test_failures_are_reported_not_raised():
    class Broken(verify.ReggeSuite):
        def __call__(self, config, l):
            raise ArithmeticError("boom")

    report = verify.run_suite(Broken(), RunConfig(command="verify", suite=Suite.Regge, max_label=1))
    assert not report.passed
    assert len(report.failures) == report.instances
    assert "boom" in report.failures[0].data["error"]


def test_backlund_report_does_not_depend_on_workers():
    # a zero tolerance turns every instance into a failure carrying its full residual data
    config = RunConfig(command="verify", suite=Suite.Backlund, seed=7, samples=4, precision_bits=96, tolerance=0.0)
    single = verify.run_suite(verify.BacklundSuite(), config)
    sharded = verify.run_suite(verify.BacklundSuite(), config.copy(update={"workers": 4}))
    assert len(single.failures) == single.instances == 4
    assert single.dict(exclude={"config"}) == sharded.dict(exclude={"config"})


def test_unexpected_errors_become_failures():
    class Broken(verify.ReggeSuite):
        def __call__(self, config, l):
            raise TypeError("unsupported operand")

    report = verify.run_suite(Broken(), RunConfig(command="verify", suite=Suite.Regge, max_label=1))
    assert len(report.failures) == report.instances > 0
    assert "TypeError" in report.failures[0].data["error"]


@pytest.mark.parametrize("bounds", [{"precision_bits": 59}, {"precision_bits": 0}, {"order": 1}, {"workers": 0}])
def test_run_config_rejects_unusable_bounds(bounds):
    with pytest.raises(ValidationError):
        RunConfig(command="verify", suite=Suite.Backlund, **bounds)
