"""Shared fixtures: the heavy experiment runs execute once per session."""

import pytest

from pairdyn.verification import collect_experiment_results, run_checks


@pytest.fixture(scope="session")
def experiment_results():
    """Interferometer and tilted-ring runs for every preset."""
    return collect_experiment_results()


@pytest.fixture(scope="session")
def check_results(experiment_results):
    """The full verification suite, keyed by check name."""
    return {check.name: check for check in run_checks(experiment_results)}
