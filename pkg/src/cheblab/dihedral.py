"""Dihedral splitting family: group statistics and split-prime counting.

The field under study has dihedral Galois group of order n = 2^r, ramified
only at 2, and an odd prime splits completely exactly when it is
represented by the quadratic form a^2 + n^2 b^2.  No odd prime below n^2
is of that form, which makes pi_D vanish on [0, n^2] while the main term
grows like n / (4 log n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import sieve

SEARCH_CEILING_FACTOR = 64      # default min_split_prime scan bound, in units of n^2
MAX_BRUTEFORCE_ORDER = 4096


class SearchLimitExceeded(RuntimeError):
    """No totally split prime found below the configured ceiling."""


def _validate_n(n: int) -> None:
    if n < 4 or n & (n - 1):
        raise ValueError(f"n must be a power of two with n >= 4, got {n}")


@dataclass(frozen=True)
class DihedralInstance:
    """Group-level constants for one member of the family."""

    r: int
    n: int                      # |G| = 2^r
    M: int = 2                  # only the prime 2 ramifies
    alpha_classes: int = field(default=0)   # conjugacy-class count n/4 + 3
    D_size: int = 1             # D = {identity}

    def __post_init__(self):
        _validate_n(self.n)
        if self.n != 1 << self.r:
            raise ValueError(f"n={self.n} is not 2^{self.r}")
        if self.alpha_classes == 0:
            object.__setattr__(self, "alpha_classes", alpha_dihedral(self.n))

    @classmethod
    def from_r(cls, r: int) -> "DihedralInstance":
        if r < 2:
            raise ValueError(f"need r >= 2, got {r}")
        return cls(r=r, n=1 << r)


def is_totally_split(p: int, n: int) -> bool:
    """Whether the odd prime p is of the form a^2 + n^2 b^2.

    b runs from 1 to floor(sqrt(p-1)/n) and the remainder is tested for
    being a perfect square by exact integer square root; b = 0 is
    impossible since p = a^2 is never prime for a > 1.
    """
    if p % 2 == 0:
        raise ValueError("p must be an odd prime (2 ramifies)")
    _validate_n(n)
    n2 = n * n
    for b in range(1, math.isqrt(p - 1) // n + 1):
        rem = p - n2 * b * b
        a = math.isqrt(rem)
        if a * a == rem:
            return True
    return False


def pi_D_dihedral(n: int, x: float) -> int:
    """Number of odd primes p < x that split totally; 2 is excluded."""
    _validate_n(n)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x <= 3:
        return 0
    count = 0
    for chunk in sieve.prime_chunks(3, math.ceil(x)):
        for p in chunk.tolist():
            if is_totally_split(p, n):
                count += 1
    return count


def min_split_prime(n: int, ceiling: int | None = None) -> int:
    """Smallest totally split prime; always > n^2 for this family."""
    _validate_n(n)
    if ceiling is None:
        ceiling = SEARCH_CEILING_FACTOR * n * n
    for chunk in sieve.prime_chunks(3, ceiling):
        for p in chunk.tolist():
            if is_totally_split(p, n):
                return p
    raise SearchLimitExceeded(
        f"no totally split prime below {ceiling} for n={n}"
    )


def alpha_dihedral(n: int) -> int:
    """Conjugacy-class count of the dihedral group of order n = 2^r: n/4 + 3."""
    _validate_n(n)
    return n // 4 + 3


def conjugacy_count_bruteforce(n: int) -> int:
    """Conjugacy classes of the dihedral group of order n, by orbit scan.

    Elements are pairs (rotation index mod n/2, reflection flag); serves
    as an independent oracle for alpha_dihedral.
    """
    if n < 4 or n % 2:
        raise ValueError(f"group order must be even and >= 4, got {n}")
    if n > MAX_BRUTEFORCE_ORDER:
        raise ValueError(f"order {n} above brute-force cap {MAX_BRUTEFORCE_ORDER}")
    m = n // 2

    def mul(g, h):
        gi, gs = g
        hi, hs = h
        # reflections conjugate the rotation subgroup by inversion
        return ((gi + hi) % m if gs == 0 else (gi - hi) % m, gs ^ hs)

    def inv(g):
        gi, gs = g
        return ((-gi) % m, 0) if gs == 0 else g

    elements = [(i, s) for s in (0, 1) for i in range(m)]
    seen = set()
    classes = 0
    for g in elements:
        if g in seen:
            continue
        classes += 1
        seen.update(mul(mul(h, g), inv(h)) for h in elements)
    return classes
