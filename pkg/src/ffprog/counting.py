"""Weighted counting operators for polynomial progressions and linear-form systems.

The configuration attached to a ProgressionSpec (m, [P_m, ..., P_{m+k-1}]) is

    x, x+y, ..., x+(m-1)y, x+P_m(y), ..., x+P_{m+k-1}(y).

Counting expectations E_{x,y} range over all of F_p x F_p (y = 0 included);
only the search operations exclude y = 0, matching the forbidden-configuration
convention.

Spec string grammar (the single source of truth for configurations):

    spec := "m=" INT [";P=" poly ("," poly)*]
    poly := ["-"] term (("+"|"-") term)*
    term := [INT] ["y" ["^" INT]]

e.g. "m=3;P=y^3,y^4", "m=3;P=2y^4+y^3", "m=4". The optional leading "-" is a
strict extension of the base grammar so every integer polynomial is renderable.
"""

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .budget import get_budget
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    DimensionBudget,
    IndexOutOfRange,
    InvalidSpec,
    ParseError,
)
from .field import FieldCtx
from .harmonic import FpFunction, _require_same_ctx

# Largest modulus for which int64 Horner products cannot overflow (p^2 < 2^63).
_MAX_VECTOR_MODULUS = 3_037_000_499


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial in one variable y, lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def eval_mod(self, y: int, p: int) -> int:
        """Horner evaluation with reduction at every step."""
        acc = 0
        y = y % p
        for c in reversed(self.coeffs):
            acc = (acc * y + c) % p
        return acc

    def values_mod(self, p: int) -> np.ndarray:
        """P(y) mod p for all y in F_p at once."""
        if p > _MAX_VECTOR_MODULUS:
            raise ValueError(f"p={p} too large for int64 vectorized evaluation")
        ys = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = (acc * ys + c % p) % p
        return acc

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __str__(self):
        return render_poly(self)


def monomial(degree: int, coefficient: int = 1) -> IntPolynomial:
    return IntPolynomial((0,) * degree + (coefficient,))


@dataclass(frozen=True)
class ProgressionSpec:
    """(m, [P_m, ..., P_{m+k-1}]): an m-term AP followed by k polynomial offsets."""

    m: int
    polys: tuple[IntPolynomial, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        object.__setattr__(self, "polys", tuple(self.polys))

    @property
    def k(self) -> int:
        return len(self.polys)

    @property
    def total_points(self) -> int:
        return self.m + self.k

    @property
    def validated(self) -> bool:
        return validate_spec(self).valid


@dataclass(frozen=True)
class SpecValidation:
    """Result of the degree-condition check; witness is set only on violation."""

    valid: bool
    witness: tuple[int, ...] | None = None


def _rational_kernel_vector(rows: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero kernel vector of the linear map a -> a @ rows, or None.

    rows[j] is the coefficient list of the j-th generator; exact arithmetic.
    """
    n = len(rows)
    if n == 0:
        return None
    width = max((len(r) for r in rows), default=0)
    mat = [list(r) + [Fraction(0)] * (width - len(r)) for r in rows]
    # Gauss-Jordan on the transpose-free system: eliminate to find dependent row.
    pivots: list[tuple[int, int]] = []  # (row index, column) in reduced order
    combo = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]  # track row ops
    for i in range(n):
        # reduce row i by previous pivots
        for pr, pc in pivots:
            factor = mat[i][pc]
            if factor:
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[pr])]
                combo[i] = [a - factor * b for a, b in zip(combo[i], combo[pr])]
        col = next((c for c, v in enumerate(mat[i]) if v != 0), None)
        if col is None:
            return combo[i]  # row i is a combination of earlier rows
        inv = Fraction(1) / mat[i][col]
        mat[i] = [v * inv for v in mat[i]]
        combo[i] = [v * inv for v in combo[i]]
        pivots.append((i, col))
    return None


def _normalize_witness(vec: list[Fraction]) -> tuple[int, ...]:
    denom = math.lcm(*(f.denominator for f in vec)) if vec else 1
    ints = [int(f * denom) for f in vec]
    g = math.gcd(*(abs(v) for v in ints if v != 0))
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


@lru_cache(maxsize=4096)
def validate_spec(spec: ProgressionSpec) -> SpecValidation:
    """Degree condition: every nonzero rational combination of the polys has degree >= m.

    Equivalent to the kernel of the degree->=m coefficient matrix being trivial;
    a nonzero kernel vector is returned (integer-normalized) as the witness.
    """
    if not spec.polys:
        return SpecValidation(valid=True)
    rows = []
    for P in spec.polys:
        high = P.coeffs[spec.m :]  # coefficients of y^m, y^{m+1}, ...
        rows.append([Fraction(c) for c in high])
    kernel = _rational_kernel_vector(rows)
    if kernel is None:
        return SpecValidation(valid=True)
    return SpecValidation(valid=False, witness=_normalize_witness(kernel))


def require_valid(spec: ProgressionSpec) -> None:
    check = validate_spec(spec)
    if not check.valid:
        raise InvalidSpec(
            f"degree condition fails: combination {check.witness} has degree < m={spec.m}",
            witness=check.witness,
        )


def config_offsets(spec: ProgressionSpec, p: int) -> list[np.ndarray]:
    """Per-slot offset arrays: slot j at difference y sits at x + offsets[j][y]."""
    y = np.arange(p, dtype=np.int64)
    offs = [(j * y) % p for j in range(spec.m)]
    offs.extend(P.values_mod(p) for P in spec.polys)
    return offs


def _warn_on_degree_collapse(spec: ProgressionSpec, p: int) -> None:
    for i, P in enumerate(spec.polys):
        if P.coeffs and P.leading_coefficient() % p == 0:
            warnings.warn(
                f"P_{spec.m + i} loses degree mod {p} (leading coefficient divisible by p); "
                "the degree condition was checked over the rationals",
                stacklevel=3,
            )


def _product_mean(fs, offsets, p: int, y_weight=None) -> complex:
    """E_{x,y} prod_j f_j(x + offsets[j](y)) [* y_weight(y)], chunked over y."""
    x = np.arange(p, dtype=np.int64)
    total = 0.0 + 0j
    chunk = max(1, (1 << 21) // p)
    for y0 in range(0, p, chunk):
        y1 = min(y0 + chunk, p)
        prod = np.ones((y1 - y0, p), dtype=np.complex128)
        for f, off in zip(fs, offsets):
            idx = (x[None, :] + off[y0:y1, None]) % p
            prod *= f.values[idx]
        if y_weight is not None:
            prod *= y_weight[y0:y1, None]
        total += prod.sum()
    return total / (p * p)


def lambda_poly(spec: ProgressionSpec, fs) -> complex:
    """The counting operator for the full configuration, direct O(p^2 (m+k))."""
    if len(fs) != spec.total_points:
        raise ContextMismatch(f"expected {spec.total_points} functions, got {len(fs)}")
    ctx = _require_same_ctx(fs)
    _warn_on_degree_collapse(spec, ctx.p)
    return _product_mean(fs, config_offsets(spec, ctx.p), ctx.p)


def lambda_ap(fs) -> complex:
    """Normalized m-term AP count: E_{x,y} prod_j f_j(x + j y)."""
    if not fs:
        raise ValueError("need at least one function")
    return lambda_poly(ProgressionSpec(m=len(fs)), fs)


def lambda_ap_weighted(fs, y_weight) -> complex:
    """lambda_ap with the y-average weighted by y_weight (e.g. a residue-set indicator)."""
    ctx = _require_same_ctx(fs)
    spec = ProgressionSpec(m=len(fs))
    weight = np.asarray(y_weight, dtype=np.complex128)
    return _product_mean(fs, config_offsets(spec, ctx.p), ctx.p, y_weight=weight)


def dual_function(spec: ProgressionSpec, fs, omit: int) -> FpFunction:
    """F(x) = E_y prod_{j != omit} f_j(x + P_j(y) - P_omit(y)); <F, conj(f_omit)> = Lambda."""
    if not 0 <= omit < spec.total_points:
        raise IndexOutOfRange(f"omit={omit} outside [0, {spec.total_points})")
    if len(fs) != spec.total_points:
        raise ContextMismatch(f"expected {spec.total_points} functions, got {len(fs)}")
    ctx = _require_same_ctx(fs)
    p = ctx.p
    offsets = config_offsets(spec, p)
    target = offsets[omit]
    others = [(f, (off - target) % p) for j, (f, off) in enumerate(zip(fs, offsets)) if j != omit]
    x = np.arange(p, dtype=np.int64)
    out = np.zeros(p, dtype=np.complex128)
    chunk = max(1, (1 << 21) // p)
    for y0 in range(0, p, chunk):
        y1 = min(y0 + chunk, p)
        prod = np.ones((y1 - y0, p), dtype=np.complex128)
        for f, off in others:
            idx = (x[None, :] + off[y0:y1, None]) % p
            prod *= f.values[idx]
        out += prod.sum(axis=0)
    out /= p
    bounded = all(f.bounded for f, _ in others)
    return FpFunction(ctx, out, bounded=bounded)


@dataclass(frozen=True)
class LinearSystemSpec:
    """m pairwise-independent linear forms in d variables plus per-variable powers k_j."""

    d: int
    forms: tuple[tuple[int, ...], ...]
    powers: tuple[int, ...]

    def __post_init__(self):
        forms = tuple(tuple(int(c) for c in row) for row in self.forms)
        powers = tuple(int(k) for k in self.powers)
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "powers", powers)
        if len(powers) != self.d:
            raise ValueError("need one power per variable")
        if any(k < 1 for k in powers):
            raise ValueError("powers must be >= 1")
        for row in forms:
            if len(row) != self.d:
                raise ValueError("each form needs d coefficients")
            if not any(row):
                raise ValueError("zero linear form")
        for a, b in itertools.combinations(forms, 2):
            if all(a[i] * b[j] == a[j] * b[i] for i in range(self.d) for j in range(self.d)):
                raise ValueError(f"forms {a} and {b} are linearly dependent")
        for j, k in enumerate(powers):
            if k > 1:
                for row in forms:
                    if row[j] != 0 and all(c == 0 for i, c in enumerate(row) if i != j):
                        raise ValueError(
                            f"form {row} is a multiple of x_{j + 1}, which has power {k} > 1"
                        )

    @property
    def num_forms(self) -> int:
        return len(self.forms)


def lambda_linear(sys_spec: LinearSystemSpec, fs, restricted: bool) -> complex:
    """E_{x_1..x_d} prod_i f_i(L_i(...)); restricted substitutes x_j^{k_j} for x_j."""
    if sys_spec.d > 3:
        raise ValueError("d <= 3 enforced (cost p^d)")
    if len(fs) != sys_spec.num_forms:
        raise ContextMismatch(f"expected {sys_spec.num_forms} functions, got {len(fs)}")
    ctx = _require_same_ctx(fs)
    p = ctx.p
    cost = p**sys_spec.d * sys_spec.num_forms
    if cost > get_budget():
        raise DimensionBudget(f"p^d * m = {cost} exceeds budget {get_budget()}")
    axes = []
    for j, k in enumerate(sys_spec.powers):
        if restricted and k > 1:
            t = np.fromiter((pow(x, k, p) for x in range(p)), dtype=np.int64, count=p)
        else:
            t = np.arange(p, dtype=np.int64)
        shape = [1] * sys_spec.d
        shape[j] = p
        axes.append(t.reshape(shape))
    prod = np.ones((p,) * sys_spec.d, dtype=np.complex128)
    for f, row in zip(fs, sys_spec.forms):
        arg = np.zeros((p,) * sys_spec.d, dtype=np.int64)
        for c, t in zip(row, axes):
            if c % p:
                arg = (arg + (c % p) * t) % p
        prod *= f.values[arg]
    return complex(prod.mean())


def as_bitset(A, p: int) -> np.ndarray:
    """Normalize a subset of F_p (bool array or iterable of ints) to a length-p bitset."""
    arr = np.asarray(A)
    if arr.dtype == bool:
        if arr.shape != (p,):
            raise ValueError(f"bitset must have length {p}")
        return arr
    out = np.zeros(p, dtype=bool)
    for x in np.atleast_1d(arr):
        out[int(x) % p] = True
    return out


def find_progression(A, spec: ProgressionSpec, p: int | None = None):
    """First (x, y) with y != 0 whose configuration lies in A, or None.

    A is a length-p boolean bitset (p inferred) or an iterable of residues
    (p required). Exhaustive O(p^2) scan with early exit, y then x ascending.
    """
    if p is None:
        arr = np.asarray(A)
        if arr.dtype != bool:
            raise ValueError("pass p explicitly when A is not a boolean bitset")
        p = len(arr)
    bits = as_bitset(A, p)
    offsets = config_offsets(spec, p)
    for y in range(1, p):
        mask = bits.copy()
        for off in offsets:
            mask &= np.roll(bits, -int(off[y]))
            if not mask.any():
                break
        else:
            x = int(np.argmax(mask))
            return x, y
    return None


def _instance_masks(spec: ProgressionSpec, p: int) -> list[int]:
    """Distinct point sets of all y != 0 configuration instances, as bitmask ints."""
    offsets = config_offsets(spec, p)
    masks = set()
    for y in range(1, p):
        base = 0
        for off in offsets:
            base |= 1 << int(off[y])
        for x in range(p):
            # rotate base left by x within p bits
            masks.add(((base << x) | (base >> (p - x))) & ((1 << p) - 1))
    return sorted(masks)


def exact_max_free_set(
    ctx: FieldCtx, spec: ProgressionSpec, cap: int = 31
) -> tuple[int, list[int]]:
    """Maximum subset of F_p containing no configuration instance with y != 0.

    Branch and bound over elements in ascending order; translation symmetry
    pins 0 into the set. Returns the lexicographically smallest maximum set.
    """
    require_valid(spec)
    p = ctx.p
    if p > cap:
        raise BudgetExceeded(f"p={p} exceeds search cap {cap}")
    instances = _instance_masks(spec, p)
    incident: list[list[int]] = [[] for _ in range(p)]
    for mask in instances:
        for e in range(p):
            if mask >> e & 1:
                incident[e].append(mask & ~(1 << e))

    def can_add(current: int, e: int) -> bool:
        new = current | 1 << e
        return all(other & new != other for other in incident[e])

    best_size = 0
    best_mask = 0
    if not can_add(0, 0):
        # {0} already forbidden; by translation invariance so is every singleton
        return 0, []

    # DFS stack of (next element, current mask, size); include branch pushed last
    # so it pops first, making the first maximum found lexicographically smallest.
    stack = [(1, 1, 1)]
    best_size, best_mask = 1, 1
    while stack:
        i, current, size = stack.pop()
        if size > best_size:
            best_size, best_mask = size, current
        if i == p or size + (p - i) <= best_size:
            continue
        stack.append((i + 1, current, size))
        if can_add(current, i):
            stack.append((i + 1, current | 1 << i, size + 1))
    elements = [e for e in range(p) if best_mask >> e & 1]
    return best_size, elements


# ---------------------------------------------------------------------------
# Spec string grammar


def _parse_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected integer", start)
    return int(text[start:pos]), pos


def _parse_term(text: str, pos: int) -> tuple[int, int, int]:
    """Returns (coefficient, exponent, new position)."""
    coeff = None
    if pos < len(text) and text[pos].isdigit():
        coeff, pos = _parse_int(text, pos)
    if pos < len(text) and text[pos] == "y":
        pos += 1
        exponent = 1
        if pos < len(text) and text[pos] == "^":
            exponent, pos = _parse_int(text, pos + 1)
        return (1 if coeff is None else coeff), exponent, pos
    if coeff is None:
        raise ParseError("expected term (integer or 'y')", pos)
    return coeff, 0, pos


def _parse_poly(text: str, pos: int) -> tuple[IntPolynomial, int]:
    coeffs: dict[int, int] = {}
    sign = 1
    if pos < len(text) and text[pos] == "-":
        sign = -1
        pos += 1
    while True:
        c, e, pos = _parse_term(text, pos)
        coeffs[e] = coeffs.get(e, 0) + sign * c
        if pos < len(text) and text[pos] in "+-":
            sign = 1 if text[pos] == "+" else -1
            pos += 1
            continue
        break
    degree = max(coeffs, default=0)
    return IntPolynomial(tuple(coeffs.get(d, 0) for d in range(degree + 1))), pos


def parse_progression_spec(text: str) -> ProgressionSpec:
    """Parse the spec grammar; raises ParseError with the offending offset."""
    if not text.startswith("m="):
        raise ParseError("expected 'm='", 0)
    m, pos = _parse_int(text, 2)
    if m < 1:
        raise ParseError("m must be >= 1", 2)
    if pos == len(text):
        return ProgressionSpec(m=m)
    if not text.startswith(";P=", pos):
        raise ParseError("expected ';P='", pos)
    pos += 3
    polys = []
    while True:
        poly, pos = _parse_poly(text, pos)
        polys.append(poly)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        break
    if pos != len(text):
        raise ParseError(f"unexpected character {text[pos]!r}", pos)
    return ProgressionSpec(m=m, polys=tuple(polys))


def render_poly(P: IntPolynomial) -> str:
    if not P.coeffs:
        return "0"
    parts = []
    for d in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[d]
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        elif d == 1:
            body = "y" if mag == 1 else f"{mag}y"
        else:
            body = f"y^{d}" if mag == 1 else f"{mag}y^{d}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("-" if c < 0 else "+") + body)
    return "".join(parts)


def render_progression_spec(spec: ProgressionSpec) -> str:
    out = f"m={spec.m}"
    if spec.polys:
        out += ";P=" + ",".join(render_poly(P) for P in spec.polys)
    return out
