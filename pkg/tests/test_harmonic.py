import json
import math

import numpy as np
import pytest

from ffprog import (
    BudgetExceeded,
    FpFunction,
    additive_char,
    constant,
    fourier,
    gowers_direct,
    gowers_fast,
    indicator,
    inner,
    make_field,
    max_fourier_coeff,
    mult_derivative,
    norms,
    set_budget,
)


def random_unimodular(ctx, seed):
    rng = np.random.default_rng(seed)
    return FpFunction(ctx, np.exp(2j * np.pi * rng.random(ctx.p)), bounded=True)


def test_fourier_of_constant():
    ctx = make_field(7)
    coeffs = fourier(constant(ctx), "naive").coeffs
    assert abs(coeffs[0] - 1) < 1e-12
    assert np.abs(coeffs[1:]).max() < 1e-12


def test_fourier_of_point_mass():
    ctx = make_field(5)
    coeffs = fourier(indicator(ctx, [0]), "fast").coeffs
    assert np.abs(coeffs - 0.2).max() < 1e-12


def test_fourier_of_character_is_delta():
    ctx = make_field(11)
    beta = 4
    coeffs = fourier(additive_char(ctx, beta), "fast").coeffs
    expected = np.zeros(11)
    expected[(11 - beta) % 11] = 1.0
    assert np.abs(coeffs - expected).max() < 1e-9


@pytest.mark.parametrize("p", [7, 97, 997])
def test_naive_fast_agreement(p):
    ctx = make_field(p)
    f = random_unimodular(ctx, p)
    naive = fourier(f, "naive").coeffs
    fast = fourier(f, "fast").coeffs
    assert np.abs(naive - fast).max() < 1e-9


def test_parseval():
    ctx = make_field(97)
    f = random_unimodular(ctx, 3)
    coeffs = fourier(f, "fast").coeffs
    lhs = (np.abs(coeffs) ** 2).sum()
    rhs = (np.abs(f.values) ** 2).mean()
    assert abs(lhs - rhs) < 1e-9


def test_norms_examples():
    ctx = make_field(5)
    L2, l2 = norms(constant(ctx), 2)
    assert abs(L2 - 1) < 1e-12 and abs(l2 - math.sqrt(5)) < 1e-12
    ind = indicator(ctx, [0, 3])
    L1, _ = norms(ind, 1)
    assert abs(L1 - 2 / 5) < 1e-12
    Linf, linf = norms(ind, math.inf)
    assert Linf == linf == 1.0
    f = random_unimodular(ctx, 0)
    assert abs(inner(f, f) - norms(f, 2)[0] ** 2) < 1e-12


def test_mult_derivative():
    ctx = make_field(11)
    f = random_unimodular(ctx, 1)
    d0 = mult_derivative(f, 0)
    assert np.abs(d0.values - np.abs(f.values) ** 2).max() < 1e-12
    phase = additive_char(ctx, 3)
    d = mult_derivative(phase, 5)
    assert np.abs(d.values - ctx.e(15)).max() < 1e-12  # constant e_p(a h)
    ones = constant(ctx)
    assert np.abs(mult_derivative(ones, 3).values - 1).max() < 1e-12


def test_gowers_direct_examples():
    ctx = make_field(5)
    assert abs(gowers_direct(constant(ctx), 1) - 1) < 1e-12
    assert abs(gowers_direct(constant(ctx), 3) - 1) < 1e-9
    assert gowers_direct(additive_char(ctx, 2), 1) < 1e-9
    assert abs(gowers_direct(indicator(ctx, [0, 1]), 1) - 0.4) < 1e-12


def test_u1_equals_mean_equals_coeff_zero():
    ctx = make_field(13)
    f = random_unimodular(ctx, 7)
    u1 = gowers_direct(f, 1)
    assert abs(u1 - abs(f.mean())) < 1e-9
    assert abs(u1 - abs(fourier(f, "fast").coeffs[0])) < 1e-9


def test_gowers_budget():
    set_budget(10_000)
    try:
        ctx = make_field(11)
        f = constant(ctx)
        with pytest.raises(BudgetExceeded):
            gowers_direct(f, 3)  # 11^4 = 14641 > 10000
        gowers_direct(f, 2)  # 11^3 fits
    finally:
        set_budget(None)


def test_u2_fourier_identity():
    for p in (7, 11, 13):
        ctx = make_field(p)
        for seed in range(10):
            f = random_unimodular(ctx, seed)
            u2 = gowers_direct(f, 2)
            l4 = float((np.abs(fourier(f, "fast").coeffs) ** 4).sum() ** 0.25)
            assert abs(u2 - l4) < 1e-9


def test_quadratic_phase_u2():
    for p in (7, 11, 13):
        ctx = make_field(p)
        xs = np.arange(p, dtype=np.int64)
        f = FpFunction(ctx, ctx.twiddle[xs * xs % p], bounded=True)
        coeffs = fourier(f, "fast").coeffs
        # Gauss-sum modulus: every coefficient has |.|^2 = 1/p
        assert np.abs(np.abs(coeffs) ** 2 * p - 1).max() < 1e-9
        assert abs(gowers_fast(f, 2) - p**-0.25) < 1e-9


def test_monotonicity_and_cross_strategy():
    for p in (7, 11, 13):
        ctx = make_field(p)
        for seed in range(20):
            f = random_unimodular(ctx, 100 * p + seed)
            u1 = gowers_direct(f, 1)
            u2 = gowers_direct(f, 2)
            u3 = gowers_direct(f, 3)
            assert u1 <= u2 + 1e-9
            assert u2 <= u3 + 2e-9
            assert abs(u3 - gowers_fast(f, 3)) < 1e-7
            assert abs(u2 - gowers_fast(f, 2)) < 1e-9


def test_derivative_recursion():
    for p in (7, 11, 13):
        ctx = make_field(p)
        f = random_unimodular(ctx, p + 17)
        for s in (2, 3):
            lhs = gowers_direct(f, s) ** (1 << s)
            rhs = np.mean(
                [gowers_direct(mult_derivative(f, h), s - 1) ** (1 << (s - 1)) for h in range(p)]
            )
            assert abs(lhs - rhs) < 1e-8


def test_u2_inverse_sandwich():
    for p in (7, 11, 13):
        ctx = make_field(p)
        for seed in range(10):
            f = random_unimodular(ctx, 31 * p + seed)
            coeffs = fourier(f, "fast").coeffs
            big = float(np.abs(coeffs).max())
            l4 = float((np.abs(coeffs) ** 4).sum() ** 0.25)
            assert big <= l4 + 1e-9
            assert l4 <= big**0.5 + 1e-9


def test_max_fourier_coeff():
    ctx = make_field(7)
    assert max_fourier_coeff(constant(ctx)) == (0, pytest.approx(1.0))
    alpha, mag = max_fourier_coeff(additive_char(ctx, 3))
    assert alpha == 4 and abs(mag - 1) < 1e-9
    # dense random set: the mean dominates every other coefficient
    ctx = make_field(31)
    rng = np.random.default_rng(5)
    subset = [x for x in range(31) if rng.random() < 0.8]
    f = indicator(ctx, subset)
    alpha, mag = max_fourier_coeff(f)
    brute = np.abs(fourier(f, "naive").coeffs)
    assert alpha == int(np.argmax(brute))
    assert alpha == 0 and abs(mag - len(subset) / 31) < 1e-9


def test_bounded_flag_enforced():
    ctx = make_field(5)
    with pytest.raises(ValueError):
        FpFunction(ctx, np.full(5, 2.0), bounded=True)
    with pytest.raises(ValueError):
        FpFunction(ctx, np.zeros(4))


def test_values_frozen():
    ctx = make_field(5)
    f = constant(ctx)
    with pytest.raises(ValueError):
        f.values[0] = 0


def test_json_round_trip():
    ctx = make_field(11)
    f = random_unimodular(ctx, 2)
    g = FpFunction.from_json(f.to_json())
    assert g.p == 11
    assert np.abs(g.values - f.values).max() < 1e-15
    obj = json.loads(f.to_json())
    assert set(obj) == {"p", "re", "im"} and len(obj["re"]) == 11
