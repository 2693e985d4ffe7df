"""Table-driven arithmetic in GF(p^m).

Elements are dense integers in ``[0, p**m)``; the integer ``sum(c_i * p**i)``
stands for the residue ``sum(c_i * x**i)`` modulo the reduction polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import DivisionByZero, NonPrime, SizeExceeded, WrongCharacteristic

MAX_FIELD_SIZE = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# --- plain polynomial arithmetic over GF(p); coefficient lists low -> high ---

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of a / b over GF(p); b must be nonzero."""
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _monic_polys(p, degree):
    """Monic polynomials of the given degree, low -> high coefficients,
    in increasing order of their base-p encoding."""
    for tail in product(range(p), repeat=degree):
        # product() varies the last slot fastest; reverse so the constant term does
        yield list(reversed(tail)) + [1]


def is_irreducible(poly, p) -> bool:
    deg = len(_trim(poly)) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^m) with log/antilog tables.

    ``reduction_poly`` is stored highest degree first, so lexicographic order on
    the tuple matches the order used to pick it.
    """

    p: int
    m: int
    reduction_poly: tuple[int, ...]
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    digits: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.p ** self.m

    @property
    def q(self) -> int:
        return self.p ** self.m

    @cached_property
    def _weights(self):
        return self.p ** np.arange(self.m)

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b) if isinstance(a, np.ndarray) else a ^ b
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ self._weights if s.ndim > 1 else int(s @ self._weights)

    def neg(self, a):
        if self.p == 2:
            return a
        s = (-self.digits[a]) % self.p
        return s @ self._weights if s.ndim > 1 else int(s @ self._weights)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
            out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
            return np.where((a == 0) | (b == 0), 0, out)
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 has no multiplicative inverse")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    @property
    def primitive(self) -> int:
        return int(self.exp[1])

    def elements(self) -> range:
        return range(self.q)


def field_build(p: int, m: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("exponent must be positive")
    q = p ** m
    if q > MAX_FIELD_SIZE:
        raise SizeExceeded(f"GF({p}^{m}) has {q} elements, cap is {MAX_FIELD_SIZE}")

    if m == 1:
        poly_low = [0, 1]
    else:
        poly_low = next(f for f in _monic_polys(p, m) if is_irreducible(f, p))

    digits = np.array([[(x // p ** i) % p for i in range(m)] for x in range(q)], dtype=np.int64)
    weights = p ** np.arange(m)

    def mulmod(a, b):
        prod = poly_mul(list(digits[a]), list(digits[b]), p)
        r = poly_mod(prod, poly_low, p) if prod else []
        r = r + [0] * (m - len(r))
        return int(np.dot(r, weights))

    if p == 2:
        red = sum(c << i for i, c in enumerate(poly_low))

        def mulmod(a, b):  # noqa: F811 - carry-less fast path
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> m:
                    a ^= red
            return r

    # least primitive element, found by walking powers
    exp = log = None
    for g in range(1, q):
        powers = [1]
        x = 1
        for _ in range(q - 2):
            x = mulmod(x, g)
            if x == 1:
                break
            powers.append(x)
        if len(powers) == q - 1:
            exp = np.array(powers + [1], dtype=np.int64)
            log = np.zeros(q, dtype=np.int64)
            log[exp[: q - 1]] = np.arange(q - 1)
            break
    return FieldSpec(p, m, tuple(reversed(poly_low)), exp, log, digits)


def field_arith(F: FieldSpec, op: str, a: int, b: int) -> int:
    """Dispatch ``op`` in {add, mul, inv, pow}; for ``pow`` ``b`` is an exponent."""
    if op == "add":
        return F.add(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "inv":
        return F.inv(a)
    if op == "pow":
        return F.pow(a, b)
    raise ValueError(f"unknown field operation {op!r}")


def suzuki_twist(a: int, F: FieldSpec) -> int:
    """x -> x^(2^(n+1)) on GF(2^(2n+1)); applying it twice squares."""
    if F.p != 2 or F.m % 2 == 0:
        raise WrongCharacteristic(f"the twist needs GF(2^odd), got GF({F.p}^{F.m})")
    n = (F.m - 1) // 2
    return F.pow(a, 2 ** (n + 1))
