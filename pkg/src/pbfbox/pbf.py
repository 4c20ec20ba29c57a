"""Preferred Boolean functions: the constraint matrix, the solution space,
membership tests, sampling, lifting to preferred functions, and the
closed-form counts.

A Boolean function f on GF(2^n) is a PBF when f(x+1) = f(x) everywhere
and f(1/x) + f(1/x + y) + f(0) + f(y) = 0 for every (x, y) in U, where U
collects the solutions of x^2 + x/y + 1/(y(y+1)) = 0 with y outside
GF(2).  Equivalently (for f(0) = 0) the values of f on GF(2^n) minus
GF(2) are annihilated by the matrix M whose rows are the pairs {x, x+1}
followed by the triple sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .boolfun import BooleanFunction
from .gf2linalg import BitMatrix
from .gf2n import FieldSpec
from .tripleset import triple_set_array


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    """Rows of M: pairs {x, x+1} then triple sets, over columns 2..2^n-1."""

    spec: FieldSpec
    l1: np.ndarray  # (2^{n-1}-1, 2) element pairs
    l2: np.ndarray  # ((2^{n-1}-2)/3, 3) triple sets

    @property
    def cols(self) -> int:
        return self.spec.order - 2

    @cached_property
    def m(self) -> BitMatrix:
        rows = self.l1.shape[0] + self.l2.shape[0]
        dense = np.zeros((rows, self.cols), dtype=np.uint8)
        r1 = np.arange(self.l1.shape[0])
        for k in range(2):
            dense[r1, self.l1[:, k] - 2] = 1
        r2 = self.l1.shape[0] + np.arange(self.l2.shape[0])
        for k in range(3):
            dense[r2, self.l2[:, k] - 2] = 1
        return BitMatrix.from_dense(dense)

    @cached_property
    def rank(self) -> int:
        return self.m.rank()

    def row_elements(self, i: int) -> tuple[int, ...]:
        if i < self.l1.shape[0]:
            return tuple(int(v) for v in self.l1[i])
        return tuple(int(v) for v in self.l2[i - self.l1.shape[0]])

    def row_kind(self, i: int) -> str:
        return "pair" if i < self.l1.shape[0] else "triple"


def build_constraints(spec: FieldSpec) -> ConstraintSystem:
    if spec.n < 6:
        raise ValueError("the constraint system needs n >= 6")
    evens = np.arange(2, spec.order, 2, dtype=np.int64)
    l1 = np.stack([evens, evens + 1], axis=1)
    l2 = triple_set_array(spec)
    for a in (l1, l2):
        a.setflags(write=False)
    return ConstraintSystem(spec, l1, l2)


# -- the set U --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class USet:
    spec: FieldSpec
    x: np.ndarray
    y: np.ndarray

    def __len__(self) -> int:
        return self.x.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.x.tolist(), self.y.tolist()))


def enumerate_U(spec: FieldSpec) -> USet:
    """All (x, y) with y outside GF(2) and x^2 + x/y + 1/(y(y+1)) = 0.

    Substituting x = (z + w)/y turns the quadratic into z^2 + z = 1/(y+1).
    """
    y = np.arange(2, spec.order, dtype=np.int64)
    c = spec.inv_arr(y ^ 1)
    z = spec.artin_schreier_table[c]
    ok = z >= 0
    y, z = y[ok], z[ok]
    w = spec.omega
    inv_y = spec.inv_arr(y)
    x0 = spec.mul_arr(z ^ w, inv_y)
    x1 = spec.mul_arr(z ^ 1 ^ w, inv_y)
    xs = np.concatenate([x0, x1])
    ys = np.concatenate([y, y])
    for a in (xs, ys):
        a.setflags(write=False)
    return USet(spec, xs, ys)


_U_CACHE: dict[FieldSpec, USet] = {}


def _uset(spec: FieldSpec) -> USet:
    if spec not in _U_CACHE:
        _U_CACHE[spec] = enumerate_U(spec)
    return _U_CACHE[spec]


# -- membership ----------------------------------------------------------

def is_pbf_direct(f: BooleanFunction, u: USet | None = None) -> bool:
    """Check both defining conditions pointwise, over all of U."""
    spec = f.spec
    tt = f.tt
    idx = np.arange(spec.order)
    if not np.array_equal(tt, tt[idx ^ 1]):
        return False
    u = _uset(spec) if u is None else u
    ix = spec.inv_arr(u.x)
    s = tt[ix] ^ tt[ix ^ u.y] ^ tt[0] ^ tt[u.y]
    return not s.any()


def first_violation(f: BooleanFunction, cs: ConstraintSystem) -> int | None:
    """Index of the first violated row of M (after normalising f(0) = 0), or None.

    A mismatch f(0) != f(1) is reported as row -1.
    """
    if f.spec != cs.spec:
        raise ValueError("function and constraint system use different fields")
    tt = f.tt
    if tt[0] != tt[1]:
        return -1
    v = (tt[2:] ^ tt[0]).astype(np.uint8)
    bad = np.flatnonzero(cs.m.mat_vec(v))
    return int(bad[0]) if bad.size else None


def is_pbf_matrix(f: BooleanFunction, cs: ConstraintSystem) -> bool:
    return first_violation(f, cs) is None


# -- the space -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PbfSpace:
    spec: FieldSpec
    basis: BitMatrix  # rows are full 2^n-bit truth tables; last row is all-ones
    rank_m: int

    @property
    def dim(self) -> int:
        return self.basis.rows

    def function(self, i: int) -> BooleanFunction:
        return BooleanFunction(self.spec, self.basis.to_dense()[i])

    def combine(self, coeffs) -> BooleanFunction:
        """XOR of the basis rows selected by a 0/1 coefficient vector."""
        coeffs = np.asarray(coeffs, dtype=bool)
        if coeffs.shape != (self.dim,):
            raise ValueError(f"need {self.dim} coefficients")
        acc = np.bitwise_xor.reduce(self.basis.data[coeffs], axis=0) if coeffs.any() \
            else np.zeros(self.basis.data.shape[1], dtype=np.uint64)
        bits = BitMatrix(1, self.basis.cols, acc[None, :]).to_dense()[0]
        return BooleanFunction(self.spec, bits)


def pbf_space(cs: ConstraintSystem) -> PbfSpace:
    null = cs.m.nullspace_basis()
    q = cs.spec.order
    # lift: columns 2.. of the truth table, zero on GF(2)
    lifted = np.zeros((null.rows + 1, q), dtype=np.uint8)
    lifted[: null.rows, 2:] = null.to_dense()
    lifted[null.rows, :] = 1
    rank_m = cs.m.cols - null.rows
    return PbfSpace(cs.spec, BitMatrix.from_dense(lifted), rank_m)


def sample_coefficients(dim: int, seed) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 2, size=dim, dtype=np.uint8)


def sample_pbf(space: PbfSpace, seed) -> BooleanFunction:
    """Uniform element of the space, determined by ``seed`` (int or int sequence)."""
    return space.combine(sample_coefficients(space.dim, seed))


# -- preferred functions ---------------------------------------------------

def derivative_trace(spec: FieldSpec, lut: np.ndarray) -> BooleanFunction:
    """D_R(x) = tr(R(x+1) + R(x))."""
    lut = np.asarray(lut, dtype=np.int64)
    idx = np.arange(spec.order)
    return BooleanFunction(spec, spec.trace_arr(lut[idx ^ 1] ^ lut))


def is_preferred(spec: FieldSpec, lut: np.ndarray) -> bool:
    """Q_R(x, y) + P_R(y) = 0 over all of U, evaluated from R itself."""
    d = derivative_trace(spec, lut).tt
    u = _uset(spec)
    ix = spec.inv_arr(u.x)
    q = d[ix] ^ d[ix ^ u.y]
    p = d[0] ^ d[u.y]
    return not (q ^ p).any()


def lift_pbf_to_pf(f: BooleanFunction, seed=None):
    """A preferred function R with D_R = f.

    R is free on the even (smaller) member of each pair {x, x+1}; the odd
    member is R(x) + f(x) c with c the least trace-one element.  ``seed``
    None pins the free values to 0.
    """
    from .sbox import VectorialFunction

    spec = f.spec
    if not is_pbf_direct(f):
        raise ValueError("input is not a preferred Boolean function")
    half = spec.order // 2
    if seed is None:
        base = np.zeros(half, dtype=np.int64)
    else:
        base = np.random.default_rng(seed).integers(0, spec.order, size=half, dtype=np.int64)
    lut = np.empty(spec.order, dtype=np.int64)
    lut[0::2] = base
    lut[1::2] = base ^ (f.tt[0::2].astype(np.int64) * spec.trace_one)
    return VectorialFunction(spec, lut)


# -- closed forms ----------------------------------------------------------

def counting_formulas(n: int, rank_m: int | None = None) -> dict:
    """Exact counts; ``dim_pf`` uses ``rank_m`` if given, else the expected rank."""
    if n % 2 or n < 2:
        raise ValueError("n must be a positive even integer")
    q = 2**n
    expected_rank = (2 ** (n + 1) - 5) // 3
    r = expected_rank if rank_m is None else rank_m
    return {
        "n": n,
        "log2_pf_per_pbf": n * q - q // 2,
        "log2_ccz_lower": (q + 2) // 3 - 4 * n * n - 2 * n,
        "nl_lower": q // 4 - (2 ** (n // 2 + 1)) // 4 - 1,
        "expected_rank": expected_rank,
        "dim_pbf": q - 1 - r,
        "dim_pf": n * q + q // 2 - 1 - r,
    }
