#!/usr/bin/env python3
"""Counting operators: weighted progressions, dual functions, von Neumann control."""

import numpy as np

import ffprog as fp

ctx = fp.make_field(31)
rng = np.random.default_rng(4)


def random_phase():
    return fp.FpFunction(ctx, np.exp(2j * np.pi * rng.random(31)), bounded=True)


# the configuration x, x+y, x+2y, x+y^3, x+y^4 is encoded as a spec string
spec = fp.parse_progression_spec("m=3;P=y^3,y^4")
print("configuration:", fp.render_progression_spec(spec))
print("degree condition:", fp.validate_spec(spec))

# an invalid configuration carries a witness: y^2 alone has degree 2 < m=3
bad = fp.parse_progression_spec("m=3;P=y^2")
print("failure witness for m=3;P=y^2:", fp.validate_spec(bad).witness)

# --- counting ----------------------------------------------------------------

fs = [random_phase() for _ in range(5)]
lam = fp.lambda_poly(spec, fs)
print(f"\nLambda over random phases: {lam:.6f} (|.| = {abs(lam):.6f})")

ones = [fp.constant(ctx)] * 5
print("Lambda over constants 1:", fp.lambda_poly(spec, ones))

# indicator counting: normalized count of 3-APs inside a random set
A = [x for x in range(31) if rng.random() < 0.5]
indA = fp.indicator(ctx, A)
print(f"\n|A| = {len(A)}, normalized 3-AP count = {fp.lambda_ap([indA] * 3).real:.6f}")
print(f"(density^3 = {(len(A) / 31) ** 3:.6f} would be the 'random' prediction)")

# generalized von Neumann: the AP count is controlled by the smallest U^2 norm
fs3 = [random_phase() for _ in range(3)]
bound = min(fp.gowers_fast(f, 2) for f in fs3)
print(f"|Lambda_3| = {abs(fp.lambda_ap(fs3)):.6f} <= min U^2 = {bound:.6f}")

# --- dual functions ----------------------------------------------------------

# omitting slot j and averaging the rest over y gives the dual function F,
# whose inner product with conj(f_j) reproduces the full counting operator
print("\ndual-function identity, slot by slot:")
lam = fp.lambda_poly(spec, fs)
for j in range(5):
    F = fp.dual_function(spec, fs, j)
    conj_fj = fp.FpFunction(ctx, np.conjugate(fs[j].values))
    print(f"  j={j}: <F, conj f_j> - Lambda = {abs(fp.inner(F, conj_fj) - lam):.2e}")

# --- linear forms with restricted variables ----------------------------------

# 3-APs whose common difference is a square: forms {x1, x1+x2, x1+2x2}, powers (1,2)
ctx37 = fp.make_field(37)
B = fp.indicator(ctx37, [x for x in range(37) if np.random.default_rng(1).random(37)[x] < 0.5])
sysspec = fp.LinearSystemSpec(d=2, forms=((1, 0), (1, 1), (1, 2)), powers=(1, 2))
restricted = fp.lambda_linear(sysspec, [B] * 3, restricted=True)
plain = fp.lambda_linear(sysspec, [B] * 3, restricted=False)
print(f"\nAP count in F_37 with square difference: {restricted.real:.6f}")
print(f"unrestricted count:                      {plain.real:.6f}")
print("(close but not equal: restriction costs only O(p^-c), never a constant factor)")
