"""Frobenius traces over prime fields via the quadratic-character sum.

a_{r,s}(p) = -sum_x ((x^3 + rx + s)/p), so #E(F_p) = p + 1 - a.  Traces are
computed with a cached Legendre table per prime; per-prime full (r, s)
tables back the Deuring census and the batch sweeps.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .curves import CurveModel, discriminant
from .errors import SingularReduction
from .primes import primes_up_to

#: sentinel in per-prime trace tables for singular (r, s)
SINGULAR = np.int16(np.iinfo(np.int16).min)


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol of a mod p, for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@lru_cache(maxsize=4096)
def legendre_table(p: int) -> np.ndarray:
    """chi[v] = (v/p) for v in 0..p-1, as an int8 array."""
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    v = np.arange(1, (p + 1) // 2, dtype=np.int64)
    chi[(v * v) % p] = 1
    return chi


def frobenius_trace(r: int, s: int, p: int) -> int:
    """Trace a of Frobenius for y^2 = x^3 + rx + s over F_p, p >= 5."""
    if p < 5:
        raise ValueError("traces only computed at primes p >= 5")
    r %= p
    s %= p
    if (4 * r**3 + 27 * s * s) % p == 0:
        raise SingularReduction(f"(r, s)=({r}, {s}) is singular mod {p}")
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    return int(-chi[(x * x * x + r * x + s) % p].sum(dtype=np.int64))


@dataclass(frozen=True)
class TraceRecord:
    p: int
    a_p: int
    t: int  # a_p mod ell
    d: int  # p mod ell


def trace_table(c: CurveModel, bound: int, ell: int) -> list[TraceRecord]:
    """One record per prime 5 <= p <= bound with p != ell and good reduction."""
    if ell < 5:
        raise ValueError("ell must be a prime >= 5")
    disc = discriminant(c)
    out = []
    for p in primes_up_to(bound):
        if p < 5 or p == ell or disc % p == 0:
            continue
        a = frobenius_trace(c.A, c.B, p)
        out.append(TraceRecord(p, a, a % ell, p % ell))
    return out


@lru_cache(maxsize=256)
def trace_census_table(p: int) -> np.ndarray:
    """int16 table T[r, s] = a_{r,s}(p), with SINGULAR marking 4r^3+27s^2 = 0."""
    if p < 5:
        raise ValueError("census only defined for primes p >= 5")
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    x3 = (x * x * x) % p
    s = np.arange(p, dtype=np.int64)
    s_sq27 = (27 * s * s) % p
    table = np.empty((p, p), dtype=np.int16)
    for r in range(p):
        vals = ((x3 + r * x)[:, None] + s[None, :]) % p
        row = -chi[vals].sum(axis=0, dtype=np.int64)
        row[(4 * r**3 + s_sq27) % p == 0] = SINGULAR
        table[r] = row.astype(np.int16)
    table.setflags(write=False)
    return table


def batch_trace_census(p: int) -> dict[int, int]:
    """Counts {a: #{(r, s) nonsingular with a_{r,s}(p) = a}}; totals p^2 - p."""
    table = trace_census_table(p)
    vals = table[table != SINGULAR].astype(np.int64)
    bound = isqrt(4 * p)
    counts = np.bincount(vals + bound, minlength=2 * bound + 1)
    return {int(a - bound): int(n) for a, n in enumerate(counts) if n > 0}
