"""Hurwitz class numbers and the Deuring point-count identity.

H(n) is the weighted count of classes of positive-definite binary quadratic
forms of discriminant -n: the class of x^2 + y^2 counts 1/2, the class of
x^2 + xy + y^2 counts 1/3, everything else 1.  Values are held as the
integer 6*H(n) so all identities check exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import InvalidDiscriminant, OutOfHasseRange
from .matgroup import delta_density
from .primes import primes_up_to


@dataclass(frozen=True)
class HurwitzValue:
    n: int
    six_h: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.six_h, 6)


def _weight_six(a: int, b: int, c: int) -> int:
    # weight of the single reduced form (a, b, c), in sixths
    if a == b == c:
        return 2
    if b == 0 and a == c:
        return 3
    return 6


def hurwitz(n: int) -> HurwitzValue:
    """6*H(n) by direct enumeration of reduced forms |b| <= a <= c."""
    if n <= 0 or n % 4 in (1, 2):
        raise InvalidDiscriminant(f"n={n}: need n > 0 with n = 0 or 3 mod 4")
    six = 0
    b = n % 2  # b^2 = -n mod 4 forces the parity of b
    while b * b <= n // 3:
        m = b * b + n
        if m % 4 == 0:
            m //= 4
            a = max(b, 1)
            while a * a <= m:
                if m % a == 0:
                    c = m // a
                    # (a, -b, c) is a distinct class unless on the boundary
                    copies = 1 if (b == 0 or b == a or a == c) else 2
                    six += copies * _weight_six(a, b, c)
                a += 1
        b += 2
    return HurwitzValue(n, six)


@lru_cache(maxsize=8)
def hurwitz_six_table(n_max: int) -> np.ndarray:
    """Array h6 with h6[n] = 6*H(n) for 0 < n <= n_max (0 elsewhere).

    Built by a single sweep over reduced forms, O(n_max^{3/2}) total.
    """
    h6 = np.zeros(n_max + 1, dtype=np.int64)
    a = 1
    while 3 * a * a <= n_max:
        for b in range(a + 1):
            c = a
            while True:
                n = 4 * a * c - b * b
                if n > n_max:
                    break
                copies = 1 if (b == 0 or b == a or a == c) else 2
                h6[n] += copies * _weight_six(a, b, c)
                c += 1
        a += 1
    h6.setflags(write=False)
    return h6


def deuring_count(p: int, a: int) -> int:
    """((p-1)/2) * H(4p - a^2): the number of nonsingular (r, s) mod p with trace a."""
    if a * a >= 4 * p:
        raise OutOfHasseRange(f"a={a} violates a^2 < 4p for p={p}")
    six = hurwitz(4 * p - a * a).six_h
    num = (p - 1) * six
    assert num % 12 == 0
    return num // 12


def mass_check(p: int) -> bool:
    """Sum of H(4p - a^2) over a^2 < 4p equals 2p (Deuring mass identity)."""
    bound = isqrt(4 * p - 1)
    total_six = sum(hurwitz(4 * p - a * a).six_h for a in range(-bound, bound + 1))
    return total_six == 12 * p


def hurwitz_partial_sum(
    p: int, t: int, ell: int, table: np.ndarray | None = None
) -> tuple[Fraction, Fraction, float]:
    """(S, main, err) for the class-number sum over traces in one residue class.

    S = sum of H(4p - a^2) over a^2 < 4p with a = t mod ell (exact),
    main = 2 * delta(t, p mod ell, ell) * p, err = |S - main| / (ell * sqrt(p)).
    """
    if ell < 5 or p == ell:
        raise ValueError("need ell >= 5 and p != ell")
    if table is None:
        table = hurwitz_six_table(4 * p)
    bound = isqrt(4 * p - 1)
    six_sum = 0
    for a in range(-bound, bound + 1):
        if (a - t) % ell == 0:
            six_sum += int(table[4 * p - a * a])
    s = Fraction(six_sum, 6)
    main = 2 * delta_density(t, p % ell, ell) * p
    err = abs(float(s - main)) / (ell * p**0.5)
    return s, main, err


def census_vs_deuring(p: int) -> list[tuple[int, int, int, bool]]:
    """Rows (a, census_count, deuring_count, match) for all |a| <= floor(2*sqrt(p))."""
    from .traces import batch_trace_census

    census = batch_trace_census(p)
    bound = isqrt(4 * p - 1)
    rows = []
    for a in range(-bound, bound + 1):
        expected = deuring_count(p, a)
        got = census.get(a, 0)
        rows.append((a, got, expected, got == expected))
    return rows


def partial_sum_sweep(
    ell: int, p_max: int
) -> list[tuple[int, int, int, Fraction, Fraction, float]]:
    """Rows (p, d, t, S, main, err) for all t and all primes 5 <= p <= p_max, p != ell."""
    table = hurwitz_six_table(4 * p_max)
    rows = []
    for p in primes_up_to(p_max):
        if p < 5 or p == ell:
            continue
        for t in range(ell):
            s, main, err = hurwitz_partial_sum(p, t, ell, table)
            rows.append((p, p % ell, t, s, main, err))
    return rows
