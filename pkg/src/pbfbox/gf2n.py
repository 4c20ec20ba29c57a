"""Arithmetic in GF(2^n) for even n.

Elements are n-bit integers in the polynomial basis (bit i is the
coefficient of x^i).  :class:`FieldSpec` carries the modulus and lazily
built lookup tables; scalar helpers work on plain ints, and the ``*_arr``
methods are vectorised over numpy integer arrays.  :class:`FieldElement`
is a thin value wrapper for callers who prefer operator syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

MIN_N = 4
MAX_N = 30
# lookup tables hold 2^n entries; above this size only scalar paths exist
TABLE_MAX_N = 20

# primitive, lowest weight; bit i = coefficient of x^i
DEFAULT_POLYS = {
    6: 0x43,      # x^6 + x + 1
    8: 0x11D,     # x^8 + x^4 + x^3 + x^2 + 1
    10: 0x409,    # x^10 + x^3 + 1
    12: 0x1053,   # x^12 + x^6 + x^4 + x + 1
    14: 0x4443,   # x^14 + x^10 + x^6 + x + 1
}


# -- GF(2)[x] helpers on int-encoded polynomials ---------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _poly_powmod_x2k(k: int, m: int) -> int:
    """x^(2^k) mod m by repeated squaring."""
    r = 0b10
    for _ in range(k):
        r = poly_mod(clmul(r, r), m)
    return r


def _prime_factors(v: int) -> list[int]:
    out = []
    p = 2
    while p * p <= v:
        if v % p == 0:
            out.append(p)
            while v % p == 0:
                v //= p
        p += 1
    if v > 1:
        out.append(v)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's test for a GF(2)[x] polynomial of degree >= 1."""
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if _poly_powmod_x2k(n, poly) != poly_mod(0b10, poly):
        return False
    for q in _prime_factors(n):
        h = _poly_powmod_x2k(n // q, poly) ^ 0b10
        if poly_gcd(poly, poly_mod(h, poly)) != 1:
            return False
    return True


def _order_is_full(g: int, poly: int, n: int) -> bool:
    q1 = (1 << n) - 1
    for p in _prime_factors(q1):
        if _powmod(g, q1 // p, poly, n) == 1:
            return False
    return True


def _mulmod(a: int, b: int, poly: int, n: int) -> int:
    r = 0
    top = 1 << n
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


def _powmod(a: int, e: int, poly: int, n: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _mulmod(r, a, poly, n)
        a = _mulmod(a, a, poly, n)
        e >>= 1
    return r


def is_primitive(poly: int) -> bool:
    n = poly.bit_length() - 1
    return is_irreducible(poly) and _order_is_full(0b10, poly, n)


def default_poly(n: int) -> int:
    """Lowest-weight primitive polynomial of degree n (least value among ties)."""
    if n in DEFAULT_POLYS:
        return DEFAULT_POLYS[n]
    top = (1 << n) | 1
    for weight in range(3, n + 2, 2):
        cands = sorted(top | sum(1 << i for i in mid)
                       for mid in combinations(range(1, n), weight - 2))
        for p in cands:
            if is_primitive(p):
                return p
    raise ValueError(f"no primitive polynomial of degree {n}")  # pragma: no cover


# -- the field ------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) with a fixed irreducible modulus.

    ``poly`` defaults to :func:`default_poly`.  Tables are built on first
    use and never mutated afterwards.
    """

    n: int
    poly: int = field(default=0)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n % 2 or not MIN_N <= n <= MAX_N:
            raise ValueError(f"n must be an even integer in [{MIN_N}, {MAX_N}], got {n!r}")
        object.__setattr__(self, "n", int(n))
        poly = int(self.poly) or default_poly(n)
        if poly.bit_length() - 1 != n:
            raise ValueError(f"polynomial {poly:#x} does not have degree {n}")
        if not is_irreducible(poly):
            raise ValueError(f"polynomial {poly:#x} is not irreducible")
        object.__setattr__(self, "poly", poly)

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    def __call__(self, bits: int) -> FieldElement:
        return FieldElement(self, bits)

    def elements(self):
        return (FieldElement(self, a) for a in range(self.order))

    # scalar ops on ints

    def mul(self, a: int, b: int) -> int:
        return _mulmod(a, b, self.poly, self.n)

    def pow(self, a: int, e: int) -> int:
        return _powmod(a, e, self.poly, self.n)

    def inv(self, a: int) -> int:
        # a^(2^n - 2) maps 0 to 0 without a branch
        return _powmod(a, self.order - 2, self.poly, self.n)

    def trace(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    @cached_property
    def trace_mask(self) -> int:
        """Bit i set iff tr(x^i) = 1; trace is then a masked parity."""
        m = 0
        for i in range(self.n):
            y = t = 1 << i
            for _ in range(self.n - 1):
                y = self.mul(y, y)
                t ^= y
            assert t in (0, 1)
            m |= t << i
        return m

    @cached_property
    def generator(self) -> int:
        """Least primitive element by integer value."""
        for g in range(2, self.order):
            if _order_is_full(g, self.poly, self.n):
                return g
        raise AssertionError("multiplicative group has no generator")  # pragma: no cover

    @cached_property
    def omega(self) -> int:
        return self.pow(self.generator, ((1 << self.n) - 1) // 3)

    @cached_property
    def trace_one(self) -> int:
        """Least element of trace 1."""
        m = self.trace_mask
        return m & -m

    def half_root(self, c: int) -> int | None:
        """A root z of z^2 + z = c with bit 0 clear, or None when tr(c) = 1."""
        if self.trace(c):
            return None
        if self.n <= TABLE_MAX_N:
            z = int(self.artin_schreier_table[c])
            return z
        return self._solve_linear_as(c)

    def _solve_linear_as(self, c: int) -> int:
        # z -> z^2 + z is GF(2)-linear; solve with an xor basis over the
        # images of the basis monomials x^1..x^(n-1) (x^0 spans the kernel)
        basis: dict[int, tuple[int, int]] = {}
        for i in range(1, self.n):
            z = 1 << i
            img = self.mul(z, z) ^ z
            while img:
                hb = img.bit_length() - 1
                if hb not in basis:
                    basis[hb] = (img, z)
                    break
                bimg, bz = basis[hb]
                img ^= bimg
                z ^= bz
        z = 0
        rem = c
        while rem:
            hb = rem.bit_length() - 1
            bimg, bz = basis[hb]
            rem ^= bimg
            z ^= bz
        return z

    # vectorised tables (n <= TABLE_MAX_N)

    def _need_tables(self):
        if self.n > TABLE_MAX_N:
            raise ValueError(f"lookup tables unavailable for n={self.n} > {TABLE_MAX_N}")

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        self._need_tables()
        q1 = self.order - 1
        exp = np.empty(2 * q1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        g, y = self.generator, 1
        for i in range(q1):
            exp[i] = y
            log[y] = i
            y = self.mul(y, g)
        exp[q1:] = exp[:q1]
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log

    def mul_arr(self, a, b) -> np.ndarray:
        exp, log = self._exp_log
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    @cached_property
    def inv_table(self) -> np.ndarray:
        exp, log = self._exp_log
        q1 = self.order - 1
        t = exp[(q1 - log) % q1].copy()
        t[0] = 0
        t.setflags(write=False)
        return t

    def inv_arr(self, a) -> np.ndarray:
        return self.inv_table[np.asarray(a, dtype=np.int64)]

    @cached_property
    def trace_table(self) -> np.ndarray:
        self._need_tables()
        t = parity(np.arange(self.order, dtype=np.int64) & self.trace_mask).astype(np.uint8)
        t.setflags(write=False)
        return t

    def trace_arr(self, a) -> np.ndarray:
        return parity(np.asarray(a, dtype=np.int64) & self.trace_mask).astype(np.uint8)

    @cached_property
    def artin_schreier_table(self) -> np.ndarray:
        """c -> even root z of z^2 + z = c, or -1 where tr(c) = 1."""
        z = np.arange(0, self.order, 2, dtype=np.int64)
        c = self.mul_arr(z, z) ^ z
        t = np.full(self.order, -1, dtype=np.int64)
        t[c] = z
        t.setflags(write=False)
        return t

    # serialisation

    def to_json(self) -> dict:
        return {"n": self.n, "poly": f"{self.poly:x}"}

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        return cls(int(d["n"]), int(str(d["poly"]), 16))

    def hex(self, a: int) -> str:
        return f"{a:0{(self.n + 3) // 4}x}"


def parity(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a) & 1


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < self.spec.order:
            raise ValueError(f"{self.bits} is not an element of GF(2^{self.spec.n})")

    def _check(self, other: FieldElement):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError("field elements belong to different fields")
        return None

    def __add__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        return FieldElement(self.spec, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other):
        if (bad := self._check(other)) is not None:
            return bad
        return FieldElement(self.spec, self.spec.mul(self.bits, other.bits))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.spec, self.spec.pow(self.bits, e))

    def __int__(self):
        return self.bits

    def __bool__(self):
        return self.bits != 0

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.bits))

    def trace(self) -> int:
        return self.spec.trace(self.bits)

    def __str__(self):
        return self.spec.hex(self.bits)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse with the convention 0^-1 = 0."""
    return a.inverse()


def trace(a: FieldElement) -> int:
    return a.trace()


def omega(spec: FieldSpec) -> FieldElement:
    """The order-3 element g^((2^n - 1)/3) for the least generator g."""
    if spec.n % 2:
        raise ValueError("GF(2^n) has an element of order 3 only for even n")
    return FieldElement(spec, spec.omega)


def solve_artin_schreier(c: FieldElement) -> tuple[FieldElement, FieldElement] | None:
    """Both roots of z^2 + z = c, or None if tr(c) = 1."""
    z = c.spec.half_root(c.bits)
    if z is None:
        return None
    return FieldElement(c.spec, z), FieldElement(c.spec, z ^ 1)
