"""Enumeration of elliptic curves y^2 = x^3 + Ax + B by naive height.

Curves are represented by integer pairs (A, B) with 4A^3 + 27B^2 != 0 and
no prime p with p^4 | A and p^6 | B, so each isomorphism class over Q
appears exactly once.  The height-X box is |A| <= X^2, |B| <= X^3.
"""

from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import BadReduction, InvalidCurve
from .primes import primes_up_to


def is_minimal(A: int, B: int) -> bool:
    """True iff no prime p has both p^4 | A and p^6 | B.

    (0, 0) is reported non-minimal by convention.
    """
    if A == 0 and B == 0:
        return False
    if A == 0:
        cap = isqrt(isqrt(isqrt(B * B)))  # floor(|B|^(1/6)) up to rounding slack
        return all(B % p**6 != 0 for p in primes_up_to(cap + 1))
    cap = isqrt(isqrt(abs(A)))
    return all(A % p**4 != 0 or B % p**6 != 0 for p in primes_up_to(cap + 1))


@dataclass(frozen=True)
class CurveModel:
    A: int
    B: int

    def __post_init__(self) -> None:
        if 4 * self.A**3 + 27 * self.B**2 == 0:
            raise InvalidCurve(f"({self.A}, {self.B}) is singular")
        if not is_minimal(self.A, self.B):
            raise InvalidCurve(f"({self.A}, {self.B}) is not minimal")


def discriminant(c: CurveModel) -> int:
    return -16 * (4 * c.A**3 + 27 * c.B**2)


def height(c: CurveModel) -> int:
    return max(abs(c.A) ** 3, c.B**2)


def enumerate_curves(X: int) -> Iterator[CurveModel]:
    """Yield every curve with |A| <= X^2, |B| <= X^3 in lexicographic (A, B) order."""
    if X < 1:
        raise ValueError("height bound X must be >= 1")
    # Only p <= sqrt(X) can witness non-minimality inside the box.
    ps = [p for p in primes_up_to(isqrt(X) + 1) if p**4 <= X * X or p**6 <= X**3]
    a_bound, b_bound = X * X, X**3
    for A in range(-a_bound, a_bound + 1):
        a_cube4 = 4 * A**3
        for B in range(-b_bound, b_bound + 1):
            if a_cube4 + 27 * B * B == 0:
                continue
            if any(A % p**4 == 0 and B % p**6 == 0 for p in ps):
                continue
            yield CurveModel(A, B)


def curve_box(X: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (A, B) of all curves in the height-X box, lexicographic order.

    Vectorized equivalent of enumerate_curves for batch sweeps.
    """
    if X < 1:
        raise ValueError("height bound X must be >= 1")
    ps = [p for p in primes_up_to(isqrt(X) + 1) if p**4 <= X * X or p**6 <= X**3]
    b = np.arange(-(X**3), X**3 + 1, dtype=np.int64)
    b_sq27 = 27 * b * b
    a_chunks, b_chunks = [], []
    for A in range(-X * X, X * X + 1):
        mask = (4 * A**3 + b_sq27) != 0
        for p in ps:
            if A % p**4 == 0:
                mask &= (b % p**6) != 0
        sel = b[mask]
        a_chunks.append(np.full(len(sel), A, dtype=np.int64))
        b_chunks.append(sel)
    return np.concatenate(a_chunks), np.concatenate(b_chunks)


def count_curves(X: int) -> int:
    """#C(X), computed without materializing curve objects."""
    if X < 1:
        raise ValueError("height bound X must be >= 1")
    ps = [p for p in primes_up_to(isqrt(X) + 1) if p**4 <= X * X or p**6 <= X**3]
    b = np.arange(-(X**3), X**3 + 1, dtype=np.int64)
    b_sq27 = 27 * b * b
    total = 0
    for A in range(-X * X, X * X + 1):
        mask = (4 * A**3 + b_sq27) != 0
        for p in ps:
            if A % p**4 == 0:
                mask &= (b % p**6) != 0
        total += int(mask.sum())
    return total


def reduce_mod_p(c: CurveModel, p: int) -> tuple[int, int]:
    """(A mod p, B mod p) when p is a prime of good reduction.

    Raises BadReduction when p | disc(c); callers skip such primes.
    """
    if p < 5:
        raise ValueError("reduction only supported at primes p >= 5")
    if discriminant(c) % p == 0:
        raise BadReduction(f"p={p} divides disc({c.A}, {c.B})")
    return c.A % p, c.B % p
