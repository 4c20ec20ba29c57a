"""Vectorial functions on GF(2^n): the permutation G(x) = 1/x + f(1/x)
built from a PBF, and the usual S-box analytics.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .boolfun import BooleanFunction, mobius, monomial_degrees
from .gf2n import FieldSpec, parity


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    spec: FieldSpec
    lut: np.ndarray

    def __post_init__(self):
        lut = np.array(self.lut, dtype=np.int64)
        if lut.shape != (self.spec.order,):
            raise ValueError(f"lookup table must have length {self.spec.order}")
        if lut.size and (lut.min() < 0 or lut.max() >= self.spec.order):
            raise ValueError("lookup table entries must be field elements")
        lut.setflags(write=False)
        object.__setattr__(self, "lut", lut)

    def __call__(self, a) -> int:
        return int(self.lut[int(a)])

    def __eq__(self, other):
        if not isinstance(other, VectorialFunction):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.lut, other.lut)

    def __hash__(self):
        return hash((self.spec, self.lut.tobytes()))

    @classmethod
    def identity(cls, spec: FieldSpec) -> VectorialFunction:
        return cls(spec, np.arange(spec.order))

    @classmethod
    def inverse(cls, spec: FieldSpec) -> VectorialFunction:
        return cls(spec, spec.inv_table)

    @classmethod
    def power(cls, spec: FieldSpec, e: int) -> VectorialFunction:
        return cls(spec, [spec.pow(a, e) for a in range(spec.order)])

    def compose(self, inner: VectorialFunction) -> VectorialFunction:
        """self o inner."""
        return VectorialFunction(self.spec, self.lut[inner.lut])

    def to_text(self) -> str:
        return "".join(self.spec.hex(int(v)) + "\n" for v in self.lut)

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> VectorialFunction:
        return cls(spec, [int(ln, 16) for ln in text.split() if ln])


def construct_g(f: BooleanFunction, check: bool = True) -> VectorialFunction:
    """G(x) = H(1/x) with H(x) = x + f(x); a differentially 4-uniform permutation."""
    from .pbf import is_pbf_direct

    if check and not is_pbf_direct(f):
        raise ValueError("f is not a preferred Boolean function")
    inv = f.spec.inv_table
    return VectorialFunction(f.spec, inv ^ f.tt[inv].astype(np.int64))


def is_permutation(F: VectorialFunction) -> bool:
    return bool(np.all(np.bincount(F.lut, minlength=F.spec.order) == 1))


# -- differential ----------------------------------------------------------

@dataclass(frozen=True)
class DdtSummary:
    max: int
    spectrum: dict[int, int]  # DDT value -> number of entries over rows a != 0

    def to_json(self) -> dict:
        return {"max": self.max, "spectrum": {str(k): v for k, v in sorted(self.spectrum.items())}}


def ddt_table(F: VectorialFunction) -> np.ndarray:
    """Rows a = 1..2^n-1 (row a-1), columns b."""
    q = F.spec.order
    x = np.arange(q, dtype=np.int64)
    out = np.zeros((q - 1, q), dtype=np.int64)
    chunk = max(1, (1 << 20) // q)
    for a0 in range(1, q, chunk):
        a = np.arange(a0, min(a0 + chunk, q), dtype=np.int64)[:, None]
        d = F.lut[x[None, :] ^ a] ^ F.lut[None, :]
        flat = (a - a0) * q + d
        out[a0 - 1 : a0 - 1 + a.shape[0]] = np.bincount(
            flat.ravel(), minlength=a.shape[0] * q).reshape(a.shape[0], q)
    return out


def ddt(F: VectorialFunction) -> DdtSummary:
    t = ddt_table(F)
    vals, counts = np.unique(t, return_counts=True)
    return DdtSummary(int(t.max()), {int(v): int(c) for v, c in zip(vals, counts)})


def differential_uniformity(F: VectorialFunction) -> int:
    return ddt(F).max


# -- Walsh -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _dual_masks(spec: FieldSpec) -> np.ndarray:
    """m[b] with tr(b*y) = parity(y & m[b]), for b = 1..2^n-1."""
    b = np.arange(1, spec.order, dtype=np.int64)
    m = np.zeros_like(b)
    for i in range(spec.n):
        m |= spec.trace_arr(spec.mul_arr(b, 1 << i)).astype(np.int64) << i
    m.setflags(write=False)
    return m


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (in place)."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        x = v[..., 0, :].copy()
        y = v[..., 1, :]
        v[..., 0, :] += y
        np.subtract(x, y, out=v[..., 1, :])
        h *= 2
    return a


def walsh_matrix(F: VectorialFunction, b_rows=None) -> np.ndarray:
    """W[b-1, a] = sum_x (-1)^(tr(b F(x)) + a.x) for b != 0.

    The inner product a.x on coordinate vectors replaces tr(a x); the two
    differ by a linear relabelling of a, which leaves every row multiset
    unchanged.
    """
    masks = _dual_masks(F.spec)
    if b_rows is not None:
        masks = masks[np.asarray(b_rows) - 1]
    dtype = np.int16 if F.spec.n <= 14 else np.int32
    comp = parity(masks[:, None] & F.lut[None, :])
    signs = 1 - 2 * comp.astype(dtype)
    return fwht(signs)


@dataclass(frozen=True)
class WalshSummary:
    max_abs: int
    nonlinearity: int
    extended_spectrum: dict[int, int]  # |W| -> count over all a and b != 0

    def to_json(self) -> dict:
        return {
            "max_abs": self.max_abs,
            "nonlinearity": self.nonlinearity,
            "extended_spectrum": {str(k): v for k, v in sorted(self.extended_spectrum.items())},
        }


def walsh(F: VectorialFunction) -> WalshSummary:
    q = F.spec.order
    hist = np.zeros(q + 1, dtype=np.int64)
    chunk = max(1, (1 << 20) // q)
    for b0 in range(1, q, chunk):
        w = walsh_matrix(F, np.arange(b0, min(b0 + chunk, q)))
        hist += np.bincount(np.abs(w.astype(np.int64)).ravel(), minlength=q + 1)
    nz = np.flatnonzero(hist)
    max_abs = int(nz.max())
    return WalshSummary(max_abs, q // 2 - max_abs // 2,
                        {int(v): int(hist[v]) for v in nz})


def nonlinearity(F: VectorialFunction) -> int:
    w = walsh_matrix(F)
    return F.spec.order // 2 - int(np.abs(w).max()) // 2


def nonlinearity_batch(spec: FieldSpec, luts: np.ndarray) -> np.ndarray:
    """Nonlinearity of each row of a (k, 2^n) stack of lookup tables."""
    luts = np.asarray(luts, dtype=np.int64)
    masks = _dual_masks(spec)
    dtype = np.int8 if spec.n <= 6 else (np.int16 if spec.n <= 14 else np.int32)
    comp = parity(masks[None, :, None] & luts[:, None, :])
    signs = 1 - 2 * comp.astype(dtype)
    w = fwht(signs)
    peak = np.abs(w.reshape(luts.shape[0], -1).astype(np.int16)).max(axis=1)
    return spec.order // 2 - peak.astype(np.int64) // 2


def _signs(bits: np.ndarray) -> np.ndarray:
    return 1 - 2 * bits.astype(np.int32)


@lru_cache(maxsize=None)
def _pbf_walsh_operator(spec: FieldSpec) -> tuple[np.ndarray, int]:
    """Walsh rows of G that depend on f, as a matrix acting on (-1)^f, plus the
    peak |W| of the rows that do not."""
    q = spec.order
    b = np.arange(1, q, dtype=np.int64)
    masks = _dual_masks(spec)
    y = np.arange(q, dtype=np.int64)
    # tr(b G(1/y)) = tr(b y) + f(y) tr(b); a.x with x = 1/y
    by = parity(masks[:, None] & y[None, :])
    ay = parity(y[:, None] & spec.inv_table[None, :])
    tb = spec.trace_arr(b).astype(bool)
    ops = _signs(by[tb][:, None, :] ^ ay[None, :, :]).reshape(-1, q)
    fixed = _signs(by[~tb][:, None, :] ^ ay[None, :, :]).sum(axis=2)
    return ops.astype(np.float32), int(np.abs(fixed).max()) if fixed.size else 0


def pbf_nonlinearity_batch(spec: FieldSpec, tts: np.ndarray) -> np.ndarray:
    """NL of G = 1/x + f(1/x) for each row of a (k, 2^n) stack of PBF truth tables.

    Only components tr(bG) with tr(b) = 1 see f, and there the Walsh
    values are linear in (-1)^f, so one matrix product covers the batch.
    """
    ops, fixed = _pbf_walsh_operator(spec)
    s = 1.0 - 2.0 * np.asarray(tts, dtype=np.float32)
    w = np.abs(ops @ s.T).max(axis=0)
    peak = np.maximum(w.astype(np.int64), fixed)
    return spec.order // 2 - peak // 2


# -- degree / fingerprint ----------------------------------------------------

def coordinate_functions(F: VectorialFunction) -> np.ndarray:
    return ((F.lut[None, :] >> np.arange(F.spec.n)[:, None]) & 1).astype(np.uint8)


def algebraic_degree(F: VectorialFunction) -> int:
    """Max ANF degree over the n coordinate functions (-1 for F = 0)."""
    coef = mobius(coordinate_functions(F)).astype(bool)
    if not coef.any():
        return -1
    deg = monomial_degrees(F.spec.n)
    return int(max(deg[row].max() for row in coef if row.any()))


def ccz_invariants(F: VectorialFunction) -> dict:
    """Differential and extended Walsh spectra plus algebraic degree.

    The hash covers only the two spectra, which are CCZ invariants;
    algebraic degree is invariant under EA-equivalence only.
    """
    d = ddt(F)
    w = walsh(F)
    spectra = {
        "differential_spectrum": {str(k): v for k, v in sorted(d.spectrum.items())},
        "extended_walsh_spectrum": {str(k): v for k, v in sorted(w.extended_spectrum.items())},
    }
    digest = hashlib.sha256(json.dumps(spectra, sort_keys=True).encode()).hexdigest()
    return {**spectra, "algebraic_degree": algebraic_degree(F), "fingerprint": digest}


def analysis_report(F: VectorialFunction) -> dict:
    inv = ccz_invariants(F)
    d = ddt(F)
    return {
        "permutation": is_permutation(F),
        "delta": d.max,
        "spectrum": inv["differential_spectrum"],
        "nl": walsh(F).nonlinearity,
        "degree": inv["algebraic_degree"],
        "fingerprint-hash": inv["fingerprint"],
    }


# -- sampling surveys ----------------------------------------------------------

@dataclass(frozen=True)
class SampleRow:
    index: int
    nl: int
    delta: int | None = None
    degree: int | None = None


def sample_rows(space, count: int, seed: int, full: bool = True):
    """Yield one row per seeded PBF sample; sample i uses the seed pair (seed, i)."""
    from .pbf import sample_pbf

    for i in range(count):
        g = construct_g(sample_pbf(space, (seed, i)), check=False)
        if full:
            yield SampleRow(i, nonlinearity(g), differential_uniformity(g), algebraic_degree(g))
        else:
            yield SampleRow(i, nonlinearity(g))


@dataclass(frozen=True)
class NlStats:
    sample_size: int
    average: float | None
    var_nl: float | None  # sqrt of the mean squared deviation, as tabulated
    histogram: dict[int, int]

    @property
    def std_error(self) -> float | None:
        if not self.sample_size:
            return None
        return self.var_nl / self.sample_size ** 0.5

    def distribution(self) -> str:
        """Histogram in a^b notation: b samples with nonlinearity a."""
        return ", ".join(f"{a}^{b}" for a, b in sorted(self.histogram.items()))

    def to_json(self) -> dict:
        return {
            "sample_size": self.sample_size,
            "average": self.average,
            "var_nl": self.var_nl,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "distribution": self.distribution(),
        }


def summarise_nl(values) -> NlStats:
    values = [int(v) for v in values]
    if not values:
        return NlStats(0, None, None, {})
    k = len(values)
    total = sum(values)
    avg = total / k
    # exact integer sums before the single division
    sq = sum(v * v for v in values) * k - total * total
    var = (sq / (k * k)) ** 0.5
    return NlStats(k, avg, var, dict(sorted(Counter(values).items())))


def nl_statistics(space, sample_size: int, seed: int) -> NlStats:
    return summarise_nl(r.nl for r in sample_rows(space, sample_size, seed, full=False))
