import numpy as np
import pytest

from collabdist.distances import FEATURE_COLUMNS
from collabdist.regression import build_design, minmax_rescale
from collabdist.synth import SIGN_PATTERN_MEAN, generate_pair_table


def test_generator_deterministic():
    kwargs = dict(n=200, gamma={"dGEO": 0.5}, beta={"dECO": -0.8}, phi=10.0, seed=4)
    t1 = generate_pair_table(**kwargs)
    t2 = generate_pair_table(**kwargs)
    np.testing.assert_array_equal(t1.response, t2.response)
    np.testing.assert_array_equal(t1.design, t2.design)
    assert t1.pair_features[0].features == t2.pair_features[0].features


def test_generator_response_range():
    table = generate_pair_table(n=500, gamma={}, beta={}, phi=5.0, seed=1)
    y = table.response
    assert np.all((y >= 0.0) & (y < 1.0))
    assert np.any(y == 0.0)  # gamma intercept 0 puts the zero rate near 0.5
    assert np.any(y > 0.0)


def test_generator_design_matches_rescaled_features():
    table = generate_pair_table(n=100, gamma={}, beta={}, phi=5.0, seed=2,
                                columns=("dGEO", "ENG"))
    raw_geo = np.array([pf.features["dGEO"] for pf in table.pair_features])
    np.testing.assert_allclose(table.design[:, 1], minmax_rescale(raw_geo), atol=1e-12)
    np.testing.assert_allclose(table.design[:, 0], 1.0)


def test_generator_rows_roundtrip_through_build_design():
    # the regression stage must reproduce the generator's internal rescaling
    table = generate_pair_table(n=150, gamma={}, beta={"dGEO": -1.0}, phi=8.0, seed=6)
    design = build_design(table.pair_features, columns=table.columns)
    assert design.columns == FEATURE_COLUMNS
    assert design.n_masked_rows == 0
    np.testing.assert_allclose(design.x, table.design[:, 1:], atol=1e-12)
    np.testing.assert_allclose(design.y, table.response, atol=1e-12)


def test_planted_coefficient_vectors():
    table = generate_pair_table(
        n=50, gamma={"CoUS": -0.5}, beta=SIGN_PATTERN_MEAN, phi=20.0, seed=0
    )
    assert table.phi == 20.0
    assert table.gamma[0] == 0.0
    assert table.beta[0] == -2.0
    by_name = dict(zip(table.columns, table.beta[1:]))
    for name, value in SIGN_PATTERN_MEAN.items():
        assert by_name[name] == value
    assert table.gamma[1 + table.columns.index("CoUS")] == -0.5


def test_sign_pattern_signs():
    negatives = {"dGEO", "dECO", "dAP", "dAI", "dAC"}
    positives = {"dIND", "ENG", "CoUS", "CoCN"}
    assert set(SIGN_PATTERN_MEAN) == negatives | positives
    assert all(SIGN_PATTERN_MEAN[k] < 0 for k in negatives)
    assert all(SIGN_PATTERN_MEAN[k] > 0 for k in positives)


def test_pair_codes_unique():
    table = generate_pair_table(n=20, gamma={}, beta={}, phi=5.0, seed=3)
    codes = [c for pf in table.pair_features for c in pf.pair]
    assert len(codes) == len(set(codes))
    assert all(pf.dic == pytest.approx(y) for pf, y in zip(table.pair_features, table.response))
