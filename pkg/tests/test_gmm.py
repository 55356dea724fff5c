import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmmce.gmm import (
    SIGMA_FLOOR,
    GaussianComponent,
    GmmModel,
    evaluate,
    evaluate_bins,
    gaussian_pdf,
    model_from_json,
    model_to_json,
    residual_sse,
)
from gmmce.histogram import DynamicRange, Histogram

from _synth import ONE, mixture_bins, mixture_histogram

components = st.builds(
    GaussianComponent,
    mu=st.floats(0, 255),
    sigma=st.floats(SIGMA_FLOOR, 60),
    weight=st.floats(1e-3, 1e4),
)


def test_pdf_peak():
    assert gaussian_pdf(0, 0, 1) == pytest.approx(0.3989422804, abs=1e-9)


@pytest.mark.parametrize("mu, sigma", [(0, 1), (128, 7.5), (3.3, 0.6)])
def test_pdf_one_sigma_ratio(mu, sigma):
    ratio = gaussian_pdf(mu + sigma, mu, sigma) / gaussian_pdf(mu, mu, sigma)
    assert ratio == pytest.approx(math.exp(-0.5), rel=1e-12)


@settings(max_examples=50)
@given(st.floats(-50, 50), st.floats(0, 300), st.floats(0.1, 40))
def test_pdf_symmetry(d, mu, sigma):
    assert gaussian_pdf(mu + d, mu, sigma) == pytest.approx(gaussian_pdf(mu - d, mu, sigma), rel=1e-9, abs=1e-300)


def test_pdf_rejects_bad_sigma():
    with pytest.raises(ValueError):
        gaussian_pdf(0, 0, 0)
    with pytest.raises(ValueError):
        gaussian_pdf(0, 0, -1)


def test_evaluate_empty_model():
    assert np.all(evaluate_bins(GmmModel()) == 0)
    assert evaluate(GmmModel(), 17) == 0


def test_evaluate_unit_component_peak():
    m = GmmModel([GaussianComponent(128, 1, 1)], source_total=1)
    assert evaluate(m, 128) == pytest.approx(0.3989422804, abs=1e-9)


def test_evaluate_two_identical_components_doubles():
    c = GaussianComponent(100, 9, 1)
    one = GmmModel([c], source_total=2)
    two = GmmModel([c, c], source_total=2)
    np.testing.assert_array_equal(evaluate_bins(two), 2 * evaluate_bins(one))


@settings(max_examples=40, deadline=None)
@given(st.lists(components, max_size=4), st.lists(components, max_size=4))
def test_evaluate_is_linear_in_components(a, b):
    big = 1e9
    ma, mb = GmmModel(a, source_total=big), GmmModel(b, source_total=big)
    mab = GmmModel(a + b, source_total=big)
    np.testing.assert_allclose(evaluate_bins(mab), evaluate_bins(ma) + evaluate_bins(mb), rtol=1e-12, atol=1e-300)


def test_residual_exact_fit_is_zero():
    c = GaussianComponent(90, 7, 500)
    m = GmmModel([c], source_total=500)
    assert residual_sse(m, Histogram(evaluate_bins(m))) == 0


def test_residual_of_empty_model_is_energy():
    h = Histogram(np.arange(256.0))
    assert residual_sse(GmmModel(), h) == pytest.approx(np.sum(np.arange(256.0) ** 2), rel=1e-14)


def test_residual_generator_fit():
    # histogram sampled with an independent pdf, model holds the generator
    h = mixture_histogram(ONE)
    m = GmmModel([GaussianComponent(*ONE[0])], source_total=h.total)
    assert residual_sse(m, h) < 1e-6 * np.sum(h.bins ** 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(components, max_size=3))
def test_residual_nonnegative(comps):
    h = Histogram(mixture_bins([(30, 5, 100)]))
    assert residual_sse(GmmModel(comps, source_total=1e9), h) >= 0


def test_component_invariants():
    with pytest.raises(ValueError):
        GaussianComponent(10, SIGMA_FLOOR / 2, 1)
    with pytest.raises(ValueError):
        GaussianComponent(10, 1, 0)
    with pytest.raises(ValueError):
        GaussianComponent(256, 1, 1)
    with pytest.raises(ValueError):
        GaussianComponent(-0.5, 1, 1)


def test_model_weight_slack():
    GmmModel([GaussianComponent(10, 1, 104)], source_total=100)
    with pytest.raises(ValueError):
        GmmModel([GaussianComponent(10, 1, 106)], source_total=100)
    with pytest.raises(ValueError):
        GmmModel(alpha=0)


def test_truncated_and_heaviest():
    cs = [GaussianComponent(10, 1, 3), GaussianComponent(20, 1, 9), GaussianComponent(30, 1, 5)]
    m = GmmModel(cs, source_total=20)
    assert m.truncated(2).components == tuple(cs[:2])
    assert [c.mu for c in m.heaviest(2)] == [20, 30]


def test_json_round_trip():
    cs = [GaussianComponent(60.0, 8.123456789123, 40000.000001), GaussianComponent(200.0, 10.1, 29999.5)]
    m = GmmModel(cs, alpha=0.95, source_total=70000.25)
    text = model_to_json(m, DynamicRange(40, 230))
    back, drange = model_from_json(text)
    assert back == m
    assert drange == DynamicRange(40, 230)
    h = mixture_histogram([(60, 8, 4e4), (200, 10, 3e4)])
    assert residual_sse(back, h) == residual_sse(m, h)


def test_json_fields():
    import json
    doc = json.loads(model_to_json(GmmModel([GaussianComponent(1, 1, 1)], 0.9, 2), DynamicRange(0, 9)))
    assert set(doc) == {"alpha", "source_total", "lo", "hi", "components"}
    assert doc["components"] == [{"mu": 1.0, "sigma": 1.0, "weight": 1.0}]
    assert (doc["lo"], doc["hi"]) == (0, 9)
