"""Verification-suite plumbing: grids, outcomes, error paths."""

import pytest

from exopoly.systems import Case, ParameterError, Params, build_system
from exopoly.verify import (
    REPRESENTATIVE,
    SUITES,
    VerifyOutcome,
    grid_params,
    grid_systems,
    run_suite,
)


def test_every_grid_point_is_admissible():
    count = 0
    for sys in grid_systems(ells=(0, 1, 2, 3)):
        count += 1
        assert sys.xi
    assert count == 60  # 5 cases x 4 degrees x 3 points


def test_grid_avoids_degenerate_deforming_functions():
    for ell in (1, 2, 3):
        for case in Case:
            for params in grid_params(case, ell):
                sys = build_system(case, params)
                assert sys.xi.degree() == ell, (case, params)


def test_representative_points_cover_all_cases():
    assert set(REPRESENTATIVE) == set(Case)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("frobnicate")
    with pytest.raises(ValueError):
        grid_params(Case.EXTJ, 9)


def test_outcome_shape():
    out = run_suite("xi-equation")
    assert isinstance(out, VerifyOutcome)
    assert out.suite == "xi-equation"
    assert out.checked > 0 and out.failures == 0
    assert set(SUITES) >= {"identities", "ode-residual", "orthogonality", "spectrum"}


def test_negative_degree_rejected():
    with pytest.raises(ParameterError):
        Params(-1, 2)
