import hypothesis.strategies as s
import pytest

from app.proptest import (
    PROPERTIES, PropertyRun, drive, run_admissible, run_cbn_preservation, run_cbv_preservation,
    run_expansion, run_leq_oracle, run_normalize, run_property, run_simple_preservation, run_simulation,
    settled,
)
from app.net_parser import parse_net


def test_property_run_summary():
    run = PropertyRun("demo", seed=1, cases=3, checked=3, skipped=1)
    assert run.passed
    assert run.summary() == "demo: PASS (3 checks, 0 failures, 1 skipped)"
    run.fail("broken")
    run.truncated = 2
    run.with_splits = 1
    assert not run.passed
    assert run.summary() == "demo: FAIL (3 checks, 1 failures, 1 skipped, 2 truncated, 1 with interR/unionL)"


def test_property_run_row():
    row = PropertyRun("demo", seed=4, cases=10, checked=7).to_row()
    assert row == {
        'property': 'demo', 'seed': 4, 'cases': 10, 'checked': 7,
        'failures': 0, 'skipped': 0, 'truncated': 0, 'with_splits': 0, 'verdict': 'PASS',
    }


def test_property_names():
    assert sorted(PROPERTIES) == [
        'admissible', 'cbn-preservation', 'cbv-preservation', 'expansion', 'leq-oracle',
        'normalize', 'simple-preservation', 'simulation',
    ]


def test_unknown_property():
    with pytest.raises(KeyError):
        run_property("confluence")


########################
# Driving strategies    #
########################

def test_drive_feeds_at_most_cases_examples():
    seen = []
    run = drive(PropertyRun("ints", seed=0, cases=25), s.integers(0, 10_000), seen.append)
    assert 0 < len(seen) <= 25
    assert run.passed


def test_drive_replays_from_the_seed():
    first, second = [], []
    drive(PropertyRun("ints", seed=7, cases=20), s.integers(), first.append)
    drive(PropertyRun("ints", seed=7, cases=20), s.integers(), second.append)
    assert first == second


def test_drive_without_cases():
    seen = []
    drive(PropertyRun("ints", seed=0, cases=0), s.integers(), seen.append)
    assert seen == []


def test_settled_nets():
    assert settled(parse_net("<y.b> a^ + x^ <z.c>"))
    assert not settled(parse_net("<y.b> a^ <+ x^ <z.c>"))
    assert not settled(parse_net("<y.a> a^ + x^ <x.c>"))


########################
# Small runs            #
########################

def test_normalize_property():
    run = run_normalize(seed=0, cases=50)
    assert run.passed
    assert 2 < run.checked <= 52


def test_leq_oracle_property():
    run = run_leq_oracle(seed=0, cases=8)
    assert run.passed
    assert run.checked > 0


def test_simple_preservation_property():
    run = run_simple_preservation(seed=0, cases=10)
    assert run.passed, run.failures
    assert run.checked > 0


def test_admissible_property():
    run = run_admissible(seed=0, cases=10)
    assert run.passed, run.failures


def test_runs_are_deterministic():
    first = run_property("normalize", seed=3, cases=20)
    second = run_property("normalize", seed=3, cases=20)
    assert first.to_row() == second.to_row()


########################
# Acceptance counts     #
########################

@pytest.mark.slow
def test_simple_preservation_at_acceptance_count():
    run = run_simple_preservation(seed=0, cases=500)
    assert run.passed, run.failures[:5]
    assert run.checked >= 250


@pytest.mark.slow
@pytest.mark.parametrize("runner", [run_cbn_preservation, run_cbv_preservation])
def test_restricted_preservation_at_acceptance_count(runner):
    run = runner(seed=0, cases=300)
    assert run.passed, run.failures[:5]
    assert run.checked >= 150
    assert run.with_splits > 0


@pytest.mark.slow
def test_expansion_at_acceptance_count():
    run = run_expansion(seed=0, cases=500)
    assert run.passed, run.failures[:5]
    assert run.checked >= 250
    assert run.with_splits > 0


@pytest.mark.slow
def test_admissible_at_acceptance_count():
    run = run_admissible(seed=0, cases=500)
    assert run.passed, run.failures[:5]
    assert run.checked > 0


@pytest.mark.slow
def test_simulation_at_acceptance_count():
    run = run_simulation(seed=0, cases=100)
    assert run.passed, run.failures[:5]
