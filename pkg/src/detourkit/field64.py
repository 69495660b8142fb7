"""GF(2^64) arithmetic on plain Python ints.

Elements are integers in [0, 2^64), read as polynomials over GF(2) modulo
x^64 + x^4 + x^3 + x + 1.  Addition is XOR, so every element is its own
additive inverse.  `mul` is the canonical portable shift-XOR multiply; the
batch entry points in `_kernels` are an accelerated path that must stay
bit-identical to it (enforced by tests).

All functions are pure; safe to call concurrently.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

#: Low bits of the reduction polynomial (x^4 + x^3 + x + 1).
REDUCTION = 0x1B

#: Full modulus x^64 + x^4 + x^3 + x + 1 as an integer bit pattern.
MODULUS = (1 << 64) | REDUCTION

MASK64 = (1 << 64) - 1

ZERO = 0
ONE = 1

#: Field order minus one; x ** ORDER_MINUS_1 == 1 for nonzero x.
ORDER_MINUS_1 = (1 << 64) - 1


def add(a: int, b: int) -> int:
    """Field addition (and subtraction): bitwise XOR."""
    return a ^ b


def mul(a: int, b: int) -> int:
    """Portable shift-XOR carryless multiply, reduced modulo MODULUS."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> 64:
            a ^= MODULUS
    return r


def square(a: int) -> int:
    return mul(a, a)


def power(a: int, e: int) -> int:
    """Square-and-multiply exponentiation; e >= 0."""
    if e < 0:
        raise ValueError("negative exponent; use inv() first")
    r = ONE
    while e:
        if e & 1:
            r = mul(r, a)
        a = mul(a, a)
        e >>= 1
    return r


def inv(a: int) -> int:
    """Multiplicative inverse via a^(2^64 - 2); raises on zero."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^64)")
    return power(a, ORDER_MINUS_1 - 1)


def sample_uniform(rng) -> int:
    """Uniform field element from a seeded random.Random-like source."""
    return rng.getrandbits(64)


def to_hex(a: int) -> str:
    """16 lowercase hex digits, big-endian bit order."""
    if not 0 <= a <= MASK64:
        raise ValueError(f"not a field element: {a!r}")
    return format(a, "016x")


def from_hex(s: str) -> int:
    if len(s) != 16 or s.lower() != s:
        raise ValueError(f"expected 16 lowercase hex digits, got {s!r}")
    return int(s, 16)


def mul_batch(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise field multiply of two uint64 arrays (accelerated path)."""
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    out = np.empty_like(a)
    _kernels.mul_batch(a.ravel(), b.ravel(), out.reshape(-1))
    return out


def inv_batch(a: np.ndarray) -> np.ndarray:
    """Elementwise inverse of nonzero uint64 arrays (accelerated path)."""
    a = np.ascontiguousarray(a, dtype=np.uint64)
    if (a == 0).any():
        raise ZeroDivisionError("0 has no inverse in GF(2^64)")
    out = np.empty_like(a)
    _kernels.inv_batch(a.ravel(), out.reshape(-1))
    return out
