"""Boolean functions on GF(2^n) stored as truth tables.

Index ``a`` of the table holds f(a), where ``a`` is the integer value of
the element's coefficient word.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2n import FieldElement, FieldSpec


class HexParseError(ValueError):
    """Malformed hex input; ``offset`` is the 0-based position of the bad character."""

    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at byte offset {offset}")
        self.offset = offset


def parse_hex(text: str, nbits: int) -> int:
    """Parse a zero-padded hex word of at most ``nbits`` bits."""
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if s.startswith(("0x", "0X")):
        s, lead = s[2:], lead + 2
    if not s:
        raise HexParseError("empty hex string", lead)
    for i, ch in enumerate(s):
        if ch not in "0123456789abcdefABCDEF":
            raise HexParseError(f"invalid hex digit {ch!r}", lead + i)
    v = int(s, 16)
    if v.bit_length() > nbits:
        raise HexParseError(f"value exceeds {nbits} bits", lead)
    return v


def mobius(tt: np.ndarray) -> np.ndarray:
    """Binary Möbius transform (truth table <-> ANF); an involution."""
    a = np.array(tt, dtype=np.uint8)
    size = a.shape[-1]
    n = size.bit_length() - 1
    lead = a.shape[:-1]
    for i in range(n):
        h = 1 << i
        v = a.reshape(*lead, size // (2 * h), 2, h)
        v[..., 1, :] ^= v[..., 0, :]
    return a


_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def monomial_degrees(n: int) -> np.ndarray:
    if n not in _POPCOUNT_CACHE:
        _POPCOUNT_CACHE[n] = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    return _POPCOUNT_CACHE[n]


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    spec: FieldSpec
    tt: np.ndarray

    def __post_init__(self):
        tt = np.asarray(self.tt, dtype=np.uint8)
        if tt.shape != (self.spec.order,):
            raise ValueError(f"truth table must have length {self.spec.order}, got {tt.shape}")
        if tt.size and tt.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        tt = tt.copy()
        tt.setflags(write=False)
        object.__setattr__(self, "tt", tt)

    @classmethod
    def zero(cls, spec: FieldSpec) -> BooleanFunction:
        return cls(spec, np.zeros(spec.order, dtype=np.uint8))

    @classmethod
    def one(cls, spec: FieldSpec) -> BooleanFunction:
        return cls(spec, np.ones(spec.order, dtype=np.uint8))

    @classmethod
    def indicator(cls, spec: FieldSpec, points) -> BooleanFunction:
        tt = np.zeros(spec.order, dtype=np.uint8)
        for p in points:
            tt[int(p)] ^= 1
        return cls(spec, tt)

    def __call__(self, a) -> int:
        return int(self.tt[int(a)])

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.tt, other.tt)

    def __hash__(self):
        return hash((self.spec, self.tt.tobytes()))

    def __add__(self, other: BooleanFunction) -> BooleanFunction:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError("Boolean functions are defined on different fields")
        return BooleanFunction(self.spec, self.tt ^ other.tt)

    def __invert__(self) -> BooleanFunction:
        return BooleanFunction(self.spec, self.tt ^ 1)

    @property
    def weight(self) -> int:
        return int(self.tt.sum(dtype=np.int64))

    def support(self) -> set[FieldElement]:
        return {FieldElement(self.spec, int(a)) for a in np.flatnonzero(self.tt)}

    def support_ints(self) -> list[int]:
        return [int(a) for a in np.flatnonzero(self.tt)]

    def anf(self) -> np.ndarray:
        return mobius(self.tt)

    def degree(self) -> int:
        """Algebraic degree; -1 for the zero function."""
        coef = self.anf()
        if not coef.any():
            return -1
        return int(monomial_degrees(self.spec.n)[coef.astype(bool)].max())

    def to_int(self) -> int:
        packed = np.packbits(self.tt, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def to_hex(self) -> str:
        return f"{self.to_int():0{(self.spec.order + 3) // 4}x}"

    @classmethod
    def from_int(cls, spec: FieldSpec, v: int) -> BooleanFunction:
        raw = v.to_bytes((spec.order + 7) // 8, "little")
        tt = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[: spec.order]
        return cls(spec, tt)

    @classmethod
    def from_hex(cls, spec: FieldSpec, text: str) -> BooleanFunction:
        return cls.from_int(spec, parse_hex(text, spec.order))


def support(f: BooleanFunction) -> set[FieldElement]:
    return f.support()


def add(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    return f + g


def anf(f: BooleanFunction) -> np.ndarray:
    return f.anf()


def degree(f: BooleanFunction) -> int:
    return f.degree()
