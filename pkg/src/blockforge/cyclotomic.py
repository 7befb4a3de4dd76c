"""Exact arithmetic in Z[zeta_N] for N a power of an odd prime.

Values are stored as integer coefficients on the power basis
1, zeta, ..., zeta^(phi(N)-1), i.e. reduced modulo the cyclotomic polynomial
Phi_N(X) = sum_{i<p} X^(i N/p).  Reduction is exact, so equality is
coefficient equality.
"""
from __future__ import annotations

from dataclasses import dataclass

from .group_core import is_prime


def _prime_of(N: int) -> int:
    if N == 1:
        return 1
    p = 2
    while N % p:
        p += 1
    k = N
    while k % p == 0:
        k //= p
    if k != 1 or not is_prime(p) or p == 2:
        raise ValueError(f"N = {N} must be a power of an odd prime")
    return p


def _degree(N: int) -> int:
    if N == 1:
        return 1
    p = _prime_of(N)
    return N // p * (p - 1)


def _reduce(N: int, coeffs: list[int]) -> tuple[int, ...]:
    """Reduce a length-N vector over Z[C_N] into the power basis of Z[zeta_N]."""
    if N == 1:
        return (sum(coeffs),)
    p = _prime_of(N)
    step = N // p
    deg = step * (p - 1)
    c = list(coeffs)
    # zeta^(deg + t) = -sum_{i<p-1} zeta^(t + i*step)
    for t in range(N - 1, deg - 1, -1):
        v = c[t]
        if v:
            c[t] = 0
            base = t - deg
            for i in range(p - 1):
                c[base + i * step] -= v
    return tuple(c[:deg])


@dataclass(frozen=True)
class CycloInt:
    N: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_group_ring(cls, N: int, coeffs) -> "CycloInt":
        c = [0] * N
        for t, v in enumerate(coeffs):
            c[t % N] += v
        return cls(N, _reduce(N, c))

    @classmethod
    def root(cls, N: int, t: int, scale: int = 1) -> "CycloInt":
        c = [0] * N
        c[t % N] = scale
        return cls(N, _reduce(N, c))

    @classmethod
    def integer(cls, N: int, value: int) -> "CycloInt":
        c = [0] * _degree(N)
        c[0] = value
        return cls(N, tuple(c))

    @classmethod
    def zero(cls, N: int) -> "CycloInt":
        return cls.integer(N, 0)

    def _check(self, other: "CycloInt") -> None:
        if self.N != other.N:
            raise ValueError(f"mixed cyclotomic levels {self.N} and {other.N}")

    def __add__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        return CycloInt(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloInt") -> "CycloInt":
        self._check(other)
        return CycloInt(self.N, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloInt":
        return CycloInt(self.N, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycloInt":
        if isinstance(other, int):
            return CycloInt(self.N, tuple(a * other for a in self.coeffs))
        self._check(other)
        N = self.N
        c = [0] * N
        for s, a in enumerate(self.coeffs):
            if a:
                for t, b in enumerate(other.coeffs):
                    if b:
                        c[(s + t) % N] += a * b
        return CycloInt(N, _reduce(N, c))

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycloInt":
        """Image under zeta -> zeta^k (k prime to N)."""
        c = [0] * self.N
        for t, a in enumerate(self.coeffs):
            c[t * k % self.N] += a
        return CycloInt(self.N, _reduce(self.N, c))

    def conjugate(self) -> "CycloInt":
        return self.galois(-1)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        terms = []
        for t, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if t == 0 else f"{a}*z^{t}")
        return " + ".join(terms) if terms else "0"
