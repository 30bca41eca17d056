"""Property-based invariants for the mean families."""

import pytest

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st
except ModuleNotFoundError:  # pragma: no cover - environment-specific fallback
    pytest.skip("hypothesis is required for property-based tests", allow_module_level=True)

from parmeans import (
    GeneratorPair,
    MeanPoint,
    ParamPair,
    four_param_F,
    gini,
    stolarsky,
    two_param_heronian,
    two_param_identric,
)

PARAMS = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False)
SIDES = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)
FAMILIES = st.sampled_from([stolarsky, gini, two_param_identric, two_param_heronian])


@given(fam=FAMILIES, p=PARAMS, q=PARAMS, a=SIDES, b=SIDES)
@settings(max_examples=300, deadline=None, derandomize=True)
def test_parameter_and_argument_symmetry(fam, p, q, a, b):
    v = fam(ParamPair(p, q), MeanPoint(a, b)).value
    assert fam(ParamPair(q, p), MeanPoint(a, b)).value == pytest.approx(v, rel=1e-12)
    assert fam(ParamPair(p, q), MeanPoint(b, a)).value == pytest.approx(v, rel=1e-12)


@given(fam=FAMILIES, p=PARAMS, q=PARAMS, a=SIDES, b=SIDES,
       lam=st.sampled_from([1e-3, 1.0, 1e3]))
@settings(max_examples=300, deadline=None, derandomize=True)
def test_homogeneity(fam, p, q, a, b, lam):
    v = fam(ParamPair(p, q), MeanPoint(a, b)).value
    assert fam(ParamPair(p, q), MeanPoint(lam * a, lam * b)).value == pytest.approx(
        lam * v, rel=1e-12)


@given(fam=FAMILIES, p=PARAMS, q=PARAMS, a=SIDES, b=SIDES)
@settings(max_examples=300, deadline=None, derandomize=True)
def test_mean_bounds(fam, p, q, a, b):
    res = fam(ParamPair(p, q), MeanPoint(a, b))
    slack = 10.0 * res.est_rel_error + 1e-13
    assert min(a, b) * (1 - slack) <= res.value <= max(a, b) * (1 + slack)


@given(fam=FAMILIES, p=PARAMS, a=SIDES)
@settings(max_examples=200, deadline=None, derandomize=True)
def test_diagonal_is_exact(fam, p, a):
    assert fam(ParamPair(p, p), MeanPoint(a, a)).value == a


@given(p=PARAMS, q=PARAMS, r=PARAMS, s=PARAMS, a=SIDES, b=SIDES)
@settings(max_examples=300, deadline=None, derandomize=True)
def test_four_param_exchange_symmetry(p, q, r, s, a, b):
    pt = MeanPoint(a, b)
    v = four_param_F(ParamPair(p, q), GeneratorPair(r, s), pt).value
    assert four_param_F(ParamPair(r, s), GeneratorPair(p, q), pt).value == \
        pytest.approx(v, rel=1e-12)
    assert four_param_F(ParamPair(p, q), GeneratorPair(s, r), pt).value == \
        pytest.approx(v, rel=1e-12)
