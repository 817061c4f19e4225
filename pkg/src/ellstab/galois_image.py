"""One-sided mod-ell image classification from sampled Frobenius traces.

Surjectivity of the mod-ell representation is proven by exhibiting trace
witnesses that rule out every maximal-subgroup family of GL2(F_ell)
(Borel, split/nonsplit Cartan normalizers, projectively exceptional
groups) plus full determinant coverage.  Absence of witnesses is always
reported as Undetermined, never as non-surjectivity.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .curves import CurveModel, curve_box, discriminant
from .matgroup import kronecker_mod_ell
from .primes import primes_up_to
from .traces import SINGULAR, frobenius_trace, legendre_table, trace_census_table

SURJECTIVE_PROVEN = "SurjectiveProven"
UNDETERMINED = "Undetermined"

MEMBER = "Member"

#: stage-1 cap for the batch sweep: primes below this use full (r, s) tables
_TABLE_PRIME_CAP = 200


@dataclass(frozen=True)
class ImageVerdict:
    status: str
    witnesses: dict
    sample_bound: int


@dataclass(frozen=True)
class FieldSpec:
    n: int
    galois_closure_degree: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("field degree must be >= 1")
        g = self.galois_closure_degree
        if g is not None and (g % self.n != 0):
            raise ValueError("galois closure degree must be divisible by n")


@lru_cache(maxsize=16)
def _witness_tables(ell: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(is_nonzero_square, is_nonsquare, exceptional_ok) boolean tables mod ell."""
    sq = np.zeros(ell, dtype=bool)
    for v in range(1, ell):
        sq[(v * v) % ell] = True
    nonsq = ~sq
    nonsq[0] = False
    ok_u = np.zeros(ell, dtype=bool)
    for u in range(ell):
        if u in (0 % ell, 1 % ell, 2 % ell, 4 % ell):
            continue
        if (u * u - 3 * u + 1) % ell == 0:
            continue
        ok_u[u] = True
    return sq, nonsq, ok_u


@lru_cache(maxsize=16)
def _generates_units(ell: int) -> np.ndarray:
    """gen[mask] = True iff the d-values in the bitmask generate (Z/ell)^x."""
    full = ell - 1
    out = np.zeros(1 << full, dtype=bool)
    for mask in range(1 << full):
        sub = {1}
        frontier = [1]
        gens = [d for d in range(1, ell) if mask >> (d - 1) & 1]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = (x * g) % ell
                    if y not in sub:
                        sub.add(y)
                        nxt.append(y)
            frontier = nxt
        out[mask] = len(sub) == full
    return out


def _classify_witnesses(t: int, d: int, ell: int) -> tuple[bool, bool, bool]:
    """(split, nonsplit, exceptional-excluding) witness flags for one record."""
    sq, nonsq, ok_u = _witness_tables(ell)
    if t % ell == 0:
        return False, False, False
    disc = (t * t - 4 * d) % ell
    u = (t * t * pow(d, -1, ell)) % ell
    return bool(sq[disc]), bool(nonsq[disc]), bool(ok_u[u])


def classify_image(c: CurveModel, ell: int, bound: int) -> ImageVerdict:
    """Scan traces of good primes p <= bound for the four witness classes.

    Returns SurjectiveProven iff a split witness, a nonsplit witness, an
    exceptional-excluding witness, and determinant coverage are all found.
    """
    if bound < 5:
        raise ValueError("prime bound must be >= 5")
    disc = discriminant(c)
    w: dict = {"split": None, "nonsplit": None, "exceptional": None, "det": {}}
    gen_table = _generates_units(ell)
    dmask = 0
    for p in primes_up_to(bound):
        if p < 5 or p == ell or disc % p == 0:
            continue
        a = frobenius_trace(c.A, c.B, p)
        t, d = a % ell, p % ell
        s, n, e = _classify_witnesses(t, d, ell)
        if s and w["split"] is None:
            w["split"] = p
        if n and w["nonsplit"] is None:
            w["nonsplit"] = p
        if e and w["exceptional"] is None:
            w["exceptional"] = p
        if d not in w["det"]:
            w["det"][d] = p
            dmask |= 1 << (d - 1)
        if (
            w["split"] is not None
            and w["nonsplit"] is not None
            and w["exceptional"] is not None
            and gen_table[dmask]
        ):
            return ImageVerdict(SURJECTIVE_PROVEN, w, bound)
    return ImageVerdict(UNDETERMINED, w, bound)


def gl2prime_from_gl2(v: ImageVerdict) -> ImageVerdict:
    """A surjection onto GL2 stays surjective after the quotient by <-1>."""
    return v


def t_kl_member(c: CurveModel, ell: int, K: FieldSpec, bound: int) -> str:
    """Member iff surjectivity is proven and ell cannot divide [Ktilde : Q].

    The field condition is certified by divisibility alone: it passes when
    ell > [K:Q] (so ell does not divide [K:Q]!) or when the supplied Galois
    closure degree is prime to ell.  Anything else is Undetermined.
    """
    if ell < 5:
        raise ValueError("ell must be >= 5")
    v = classify_image(c, ell, bound)
    if v.status != SURJECTIVE_PROVEN:
        return UNDETERMINED
    if ell > K.n:
        return MEMBER
    if K.galois_closure_degree is not None and K.galois_closure_degree % ell != 0:
        return MEMBER
    return UNDETERMINED


def t_A_proxy_member(e: CurveModel, a: CurveModel, ell: int, bound: int) -> bool:
    """True iff t_p(e) = +-t_p(a) mod ell at every shared good prime p <= bound."""
    if bound < 5:
        raise ValueError("prime bound must be >= 5")
    de, da = discriminant(e), discriminant(a)
    for p in primes_up_to(bound):
        if p < 5 or p == ell or de % p == 0 or da % p == 0:
            continue
        te = frobenius_trace(e.A, e.B, p) % ell
        ta = frobenius_trace(a.A, a.B, p) % ell
        if te != ta and te != (-ta) % ell:
            return False
    return True


@dataclass
class SweepResult:
    X: int
    ell: int
    bound: int
    total: int
    proven: int
    proven_mask: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)

    @property
    def fraction(self) -> float:
        return self.proven / self.total if self.total else float("nan")


def surjectivity_sweep(X: int, ell: int, bound: int) -> SweepResult:
    """classify_image verdicts for every curve in the height-X box.

    Stage 1 walks primes below _TABLE_PRIME_CAP through full per-prime trace
    tables; curves still lacking a witness class then scan the remaining
    primes up to bound with vectorized character sums.
    """
    A, B = curve_box(X)
    n = len(A)
    sq, nonsq, ok_u = _witness_tables(ell)
    gen_table = _generates_units(ell)

    w1 = np.zeros(n, dtype=bool)
    w2 = np.zeros(n, dtype=bool)
    w3 = np.zeros(n, dtype=bool)
    cov = np.zeros(n, dtype=np.int32)

    inv = [0] + [pow(d, -1, ell) for d in range(1, ell)]
    stage2_start = min(_TABLE_PRIME_CAP, bound + 1)

    for p in primes_up_to(min(_TABLE_PRIME_CAP - 1, bound)):
        if p < 5 or p == ell:
            continue
        table = trace_census_table(p)
        a_p = table[A % p, B % p]
        good = a_p != SINGULAR
        t = np.where(good, a_p.astype(np.int64) % ell, 0)
        d = p % ell
        tnz = good & (t != 0)
        disc = (t * t - 4 * d) % ell
        u = (t * t * inv[d]) % ell
        w1 |= tnz & sq[disc]
        w2 |= tnz & nonsq[disc]
        w3 |= tnz & ok_u[u]
        cov[good] |= np.int32(1 << (d - 1))

    proven = w1 & w2 & w3 & gen_table[cov]

    # stage 2: per-curve character sums for the stragglers
    surv = np.flatnonzero(~proven)
    if len(surv) and bound >= stage2_start:
        As = A[surv]
        Bs = B[surv]
        disc_s = -16 * (4 * As**3 + 27 * Bs**2)
        for p in primes_up_to(bound):
            if p < stage2_start or p == ell:
                continue
            chi = legendre_table(p)
            acc = np.zeros(len(surv), dtype=np.int64)
            Ap = As % p
            Bp = Bs % p
            for x in range(p):
                acc -= chi[(x * x * x + Ap * x + Bp) % p]
            good = disc_s % p != 0
            t = np.where(good, acc % ell, 0)
            d = p % ell
            tnz = good & (t != 0)
            disc = (t * t - 4 * d) % ell
            u = (t * t * inv[d]) % ell
            w1[surv] |= tnz & sq[disc]
            w2[surv] |= tnz & nonsq[disc]
            w3[surv] |= tnz & ok_u[u]
            covs = cov[surv]
            covs[good] |= np.int32(1 << (d - 1))
            cov[surv] = covs
            newly = w1[surv] & w2[surv] & w3[surv] & gen_table[cov[surv]]
            if newly.any():
                keep = ~newly
                surv = surv[keep]
                if not len(surv):
                    break
                As, Bs, disc_s = As[keep], Bs[keep], disc_s[keep]

    proven = w1 & w2 & w3 & gen_table[cov]
    return SweepResult(X, ell, bound, n, int(proven.sum()), proven, A, B)
