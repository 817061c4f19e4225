"""Empirical sieve statistics: pair counts, variance, and density decay.

The variance statistic averages (pi_pair - delta * pi)^2 over curve pairs,
exactly when the pair space is small and by seeded Monte Carlo otherwise;
both paths reduce to integer moment sums, so V is always an exact rational.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .curves import CurveModel, count_curves, curve_box, discriminant
from .matgroup import delta_density
from .primes import primes_up_to
from .traces import SINGULAR, frobenius_trace, trace_census_table

#: above this many pairs the exhaustive double sum gives way to sampling
_EXHAUSTIVE_PAIR_LIMIT = 10**6


def pair_delta(t1: int, t2: int, d: int, ell: int) -> Fraction:
    return delta_density(t1, d, ell) * delta_density(t2, d, ell)


def pi_count(X: int, d: int, ell: int) -> int:
    """Number of primes p <= X with p = d mod ell."""
    if d % ell == 0:
        raise ValueError("d must be nonzero mod ell")
    return sum(1 for p in primes_up_to(X) if p % ell == d % ell)


def _admissible_primes(X: int, d: int, ell: int) -> list[int]:
    return [p for p in primes_up_to(X) if p >= 5 and p != ell and p % ell == d % ell]


def pi_pair(
    e1: CurveModel, e2: CurveModel, X: int, t1: int, t2: int, d: int, ell: int
) -> int:
    """Primes p <= X, p = d mod ell, good for both curves, with traces (t1, t2)."""
    if d % ell == 0:
        raise ValueError("d must be nonzero mod ell")
    d1, d2 = discriminant(e1), discriminant(e2)
    count = 0
    for p in _admissible_primes(X, d, ell):
        if d1 % p == 0 or d2 % p == 0:
            continue
        if (
            frobenius_trace(e1.A, e1.B, p) % ell == t1 % ell
            and frobenius_trace(e2.A, e2.B, p) % ell == t2 % ell
        ):
            count += 1
    return count


@dataclass(frozen=True)
class SieveStat:
    X: int
    t1: int
    t2: int
    d: int
    ell: int
    delta: Fraction
    pi: int
    num_pairs: int
    exhaustive: bool
    V: Fraction

    @property
    def v_over_x(self) -> Fraction:
        return self.V / self.X


def _match_columns(
    A: np.ndarray, B: np.ndarray, X: int, t: int, d: int, ell: int
) -> list[np.ndarray]:
    """Per admissible prime, the bool vector [p good and t_p = t] over the box."""
    cols = []
    disc = -16 * (4 * A**3 + 27 * B**2)
    for p in _admissible_primes(X, d, ell):
        table = trace_census_table(p)
        a_p = table[A % p, B % p]
        good = (a_p != SINGULAR) & (disc % p != 0)
        cols.append(good & (a_p.astype(np.int64) % ell == t % ell))
    return cols


def variance_stat(
    X: int,
    t1: int,
    t2: int,
    d: int,
    ell: int,
    sample_size: int,
    seed: int,
) -> SieveStat:
    """Mean of (pi_pair - delta*pi)^2 over C(X)^2, exact or Monte Carlo."""
    if d % ell == 0:
        raise ValueError("d must be nonzero mod ell")
    if sample_size < 1:
        raise ValueError("sample_size must be >= 1")
    A, B = curve_box(X)
    n = len(A)
    delta = pair_delta(t1, t2, d, ell)
    pi = pi_count(X, d, ell)
    mean = delta * pi

    x_cols = _match_columns(A, B, X, t1, d, ell)
    y_cols = _match_columns(A, B, X, t2, d, ell)

    exhaustive = n * n <= _EXHAUSTIVE_PAIR_LIMIT
    if exhaustive:
        num_pairs = n * n
        # pi_pair(E1, E2) = sum_p x_p(E1) y_p(E2); expand the square in moments
        sum_k = 0
        sum_k2 = 0
        nprimes = len(x_cols)
        for i in range(nprimes):
            xi = x_cols[i].astype(np.int64)
            yi = y_cols[i].astype(np.int64)
            sum_k += int(xi.sum()) * int(yi.sum())
            for j in range(nprimes):
                xj = x_cols[j].astype(np.int64)
                yj = y_cols[j].astype(np.int64)
                sum_k2 += int((xi * xj).sum()) * int((yi * yj).sum())
    else:
        num_pairs = sample_size
        rng = np.random.default_rng(seed)
        i1 = rng.integers(0, n, size=sample_size)
        i2 = rng.integers(0, n, size=sample_size)
        k = np.zeros(sample_size, dtype=np.int64)
        for xc, yc in zip(x_cols, y_cols):
            k += xc[i1] & yc[i2]
        sum_k = int(k.sum())
        sum_k2 = int((k * k).sum())

    v = (
        Fraction(sum_k2, num_pairs)
        - 2 * mean * Fraction(sum_k, num_pairs)
        + mean * mean
    )
    return SieveStat(X, t1, t2, d, ell, delta, pi, num_pairs, exhaustive, v)


def t_A_proxy_ratio(a: CurveModel, X: int, ell: int, bound: int) -> Fraction:
    """Fraction of C(X) whose reduced traces match a up to sign below bound."""
    disc_a = discriminant(a)
    targets = {}
    for p in primes_up_to(bound):
        if p < 5 or p == ell or disc_a % p == 0:
            continue
        targets[p] = frobenius_trace(a.A, a.B, p) % ell

    b = np.arange(-(X**3), X**3 + 1, dtype=np.int64)
    total = 0
    matched = 0
    box_ps = [
        p
        for p in primes_up_to(isqrt(X) + 1)
        if p**4 <= X * X or p**6 <= X**3
    ]
    for A in range(-X * X, X * X + 1):
        valid = (4 * A**3 + 27 * b * b) != 0
        for p in box_ps:
            if A % p**4 == 0:
                valid &= (b % p**6) != 0
        total += int(valid.sum())
        alive = valid.copy()
        for p, ta in targets.items():
            if not alive.any():
                break
            table = trace_census_table(p)
            a_p = table[A % p, b % p]
            good = a_p != SINGULAR
            t = a_p.astype(np.int64) % ell
            alive &= ~good | (t == ta) | (t == (-ta) % ell)
        matched += int(alive.sum())
    return Fraction(matched, total)


def t_A_density_curve(
    a: CurveModel, X_values, ell: int, bound: int
) -> list[tuple[int, Fraction]]:
    """Proxy ratio of the trace-twin set of a inside C(X), per X."""
    if bound < 50:
        raise ValueError("prime bound must be >= 50")
    return [(X, t_A_proxy_ratio(a, X, ell, bound)) for X in X_values]


def zeta10(digits: int = 14) -> float:
    """zeta(10) by partial summation; the tail beyond N is < N^-9 / 9."""
    n = 1
    total = 0.0
    while n ** -9 / 9 > 10.0 ** (-digits - 2):
        total += n ** -10
        n += 1
    return total


def lead_constant() -> float:
    """C1 = 4 / zeta(10) in #C(X) ~ C1 X^5."""
    return 4.0 / zeta10()


def curve_count_check(X_values) -> list[tuple[int, int, float, float]]:
    """Rows (X, #C(X), C1*X^5, relative error)."""
    c1 = lead_constant()
    rows = []
    for X in X_values:
        count = count_curves(X)
        main = c1 * X**5
        rows.append((X, count, main, abs(count / main - 1.0)))
    return rows
