"""Exact finite group theory in GL2(F_ell).

Matrices are tuples (a, b, c, d) of residues mod ell, row-major.  Subgroups
are enumerated explicitly by breadth-first closure, which keeps every
predicate (irreducibility, cohomology, commutator quotients, element
searches) a finite exact computation.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import BudgetExceeded
from .primes import is_prime

Mat2 = tuple[int, int, int, int]

#: largest closure we will enumerate: |GL2(F_13)|
MAX_GROUP_ORDER = (13**2 - 1) * (13**2 - 13)

#: largest group accepted by the cocycle solver
H1_BUDGET = 2500


def identity() -> Mat2:
    return (1, 0, 0, 1)


def mat_mul(g: Mat2, h: Mat2, ell: int) -> Mat2:
    a, b, c, d = g
    e, f, i, j = h
    return (
        (a * e + b * i) % ell,
        (a * f + b * j) % ell,
        (c * e + d * i) % ell,
        (c * f + d * j) % ell,
    )


def mat_det(g: Mat2, ell: int) -> int:
    return (g[0] * g[3] - g[1] * g[2]) % ell

def mat_trace(g: Mat2, ell: int) -> int:
    return (g[0] + g[3]) % ell


def mat_inv(g: Mat2, ell: int) -> Mat2:
    det = mat_det(g, ell)
    if det == 0:
        raise ValueError(f"{g} is singular mod {ell}")
    inv = pow(det, -1, ell)
    a, b, c, d = g
    return ((d * inv) % ell, (-b * inv) % ell, (-c * inv) % ell, (a * inv) % ell)


def kronecker_mod_ell(m: int, ell: int) -> int:
    """Quadratic character of m mod ell (odd prime ell)."""
    m %= ell
    if m == 0:
        return 0
    return 1 if pow(m, (ell - 1) // 2, ell) == 1 else -1


def gl2_order(ell: int) -> int:
    return (ell**2 - 1) * (ell**2 - ell)


def sl2_order(ell: int) -> int:
    return ell * (ell**2 - 1)


def delta_density(t: int, d: int, ell: int) -> Fraction:
    """(ell + chi(t^2 - 4d)) / (ell^2 - 1): density of trace t in the det-d coset."""
    if ell < 5:
        raise ValueError("ell must be >= 5")
    if d % ell == 0:
        raise ValueError("d must be nonzero mod ell")
    chi = kronecker_mod_ell(t * t - 4 * d, ell)
    return Fraction(ell + chi, ell * ell - 1)


@lru_cache(maxsize=8)
def _trace_det_counts(ell: int) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for g in product(range(ell), repeat=4):
        det = (g[0] * g[3] - g[1] * g[2]) % ell
        if det == 0:
            continue
        key = ((g[0] + g[3]) % ell, det)
        counts[key] = counts.get(key, 0) + 1
    return counts


def count_trace_det(t: int, d: int, ell: int) -> int:
    """Exhaustive #{g in GL2(F_ell): tr g = t, det g = d}; oracle for delta_density."""
    if ell > 13:
        raise BudgetExceeded("exhaustive GL2 enumeration limited to ell <= 13")
    if d % ell == 0:
        raise ValueError("d must be nonzero mod ell")
    return _trace_det_counts(ell).get((t % ell, d % ell), 0)


@dataclass(frozen=True)
class MatGroup:
    ell: int
    generators: tuple[Mat2, ...]
    elements: tuple[Mat2, ...]  # sorted lexicographically

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Mat2) -> bool:
        return g in self._element_set

    @property
    def _element_set(self) -> frozenset:
        # cached lazily on the instance
        s = self.__dict__.get("_eset")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_eset", s)
        return s


def generate_subgroup(
    gens: list[Mat2] | tuple[Mat2, ...], ell: int, budget: int = MAX_GROUP_ORDER
) -> MatGroup:
    """Breadth-first closure of the generators under multiplication."""
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    gens = tuple(tuple(x % ell for x in g) for g in gens)
    for g in gens:
        if mat_det(g, ell) == 0:
            raise ValueError(f"generator {g} is not invertible mod {ell}")
    seen = {identity()}
    frontier = [identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = mat_mul(g, h, ell)
                if gh not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(f"closure exceeds budget {budget}")
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return MatGroup(ell, gens, tuple(sorted(seen)))


def sl2_generators(ell: int) -> list[Mat2]:
    return [(1, 1, 0, 1), (1, 0, 1, 1)]


def gl2_generators(ell: int) -> list[Mat2]:
    g = _primitive_root(ell)
    return sl2_generators(ell) + [(g, 0, 0, 1)]


def _primitive_root(ell: int) -> int:
    for g in range(2, ell):
        seen = set()
        x = 1
        for _ in range(ell - 1):
            x = (x * g) % ell
            seen.add(x)
        if len(seen) == ell - 1:
            return g
    raise ValueError(f"no primitive root mod {ell}")


@lru_cache(maxsize=8)
def full_gl2(ell: int) -> MatGroup:
    return generate_subgroup(gl2_generators(ell), ell)


@lru_cache(maxsize=8)
def full_sl2(ell: int) -> MatGroup:
    return generate_subgroup(sl2_generators(ell), ell)


def is_irreducible(G: MatGroup) -> bool:
    """True iff no line of F_ell^2 is stabilized by every generator."""
    ell = G.ell
    lines = [(1, 0)] + [(t, 1) for t in range(ell)]
    for v in lines:
        if all(_fixes_line(g, v, ell) for g in G.generators):
            return False
    return True


def _fixes_line(g: Mat2, v: tuple[int, int], ell: int) -> bool:
    a, b, c, d = g
    w = ((a * v[0] + b * v[1]) % ell, (c * v[0] + d * v[1]) % ell)
    return (w[0] * v[1] - w[1] * v[0]) % ell == 0


def _row_reduce_basis(rows: list[list[int]], ell: int) -> list[list[int]]:
    """Maintainable echelon basis; returns the pivot rows."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        row = [x % ell for x in row]
        for prow, pcol in zip(basis, pivots):
            if row[pcol]:
                f = row[pcol]
                row = [(x - f * y) % ell for x, y in zip(row, prow)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is not None:
            inv = pow(row[lead], -1, ell)
            row = [(x * inv) % ell for x in row]
            basis.append(row)
            pivots.append(lead)
    return basis


def _h1_by_cocycles(G: MatGroup) -> bool:
    """Exact dim Z^1 - dim B^1 == 0 via the standard-module cocycle equations."""
    if G.order > H1_BUDGET:
        raise BudgetExceeded(f"cocycle solver limited to |G| <= {H1_BUDGET}")
    ell = G.ell
    gens = G.generators
    k = len(gens)
    if k == 0:
        return True
    ncols = 2 * k

    # c(g) as a 2 x 2k matrix of coefficients in the unknowns c(g_1)..c(g_k)
    exprs: dict[Mat2, list[list[int]]] = {identity(): [[0] * ncols, [0] * ncols]}
    constraints: list[list[int]] = []
    frontier = [identity()]
    while frontier:
        nxt = []
        for g in frontier:
            eg = exprs[g]
            for i, h in enumerate(gens):
                gh = mat_mul(g, h, ell)
                # c(gh) = c(g) + g * c(g_i)
                a, b, c, d = g
                cand = [list(eg[0]), list(eg[1])]
                cand[0][2 * i] = (cand[0][2 * i] + a) % ell
                cand[0][2 * i + 1] = (cand[0][2 * i + 1] + b) % ell
                cand[1][2 * i] = (cand[1][2 * i] + c) % ell
                cand[1][2 * i + 1] = (cand[1][2 * i + 1] + d) % ell
                if gh not in exprs:
                    exprs[gh] = cand
                    nxt.append(gh)
                else:
                    old = exprs[gh]
                    for r in range(2):
                        constraints.append(
                            [(x - y) % ell for x, y in zip(cand[r], old[r])]
                        )
        frontier = nxt

    rank = len(_row_reduce_basis(constraints, ell))
    dim_z1 = ncols - rank

    # B^1 is the image of v -> ((g-1)v); its dimension is 2 - dim of the fixed space
    fixed_rows = []
    for g in gens:
        a, b, c, d = g
        fixed_rows.append([(a - 1) % ell, b])
        fixed_rows.append([c, (d - 1) % ell])
    dim_fixed = 2 - len(_row_reduce_basis(fixed_rows, ell))
    dim_b1 = 2 - dim_fixed
    return dim_z1 == dim_b1


def h1_vanishes(G: MatGroup, method: str = "auto") -> bool:
    """True iff H^1(G, F_ell^2) = 0 for the standard action.

    method="auto" short-circuits when -1 is in G (restriction to the order-2
    subgroup kills both the fixed space and the cohomology); method="cocycle"
    forces the direct linear-algebra solver.
    """
    if method not in ("auto", "cocycle"):
        raise ValueError(f"unknown method {method!r}")
    ell = G.ell
    minus_one = (ell - 1, 0, 0, ell - 1)
    if method == "auto" and minus_one in G:
        return True
    return _h1_by_cocycles(G)


def no_abelian_ell_quotient(H: MatGroup) -> bool:
    """True iff ell does not divide |H / [H, H]|."""
    ell = H.ell
    gens = H.generators
    if not gens:
        return True
    comms = []
    for g in gens:
        for h in gens:
            ginv, hinv = mat_inv(g, ell), mat_inv(h, ell)
            comms.append(
                mat_mul(mat_mul(g, h, ell), mat_mul(ginv, hinv, ell), ell)
            )
    # normal closure of the generator commutators inside H
    derived = set(generate_subgroup(comms, ell, budget=H.order + 1).elements)
    changed = True
    while changed:
        changed = False
        extra = []
        for n in derived:
            for g in gens:
                conj = mat_mul(mat_mul(g, n, ell), mat_inv(g, ell), ell)
                if conj not in derived:
                    extra.append(conj)
        if extra:
            changed = True
            derived = set(
                generate_subgroup(
                    list(derived | set(extra)), ell, budget=H.order + 1
                ).elements
            )
    quotient = H.order // len(derived)
    return quotient % ell != 0


def find_tau0(H: MatGroup) -> Mat2 | None:
    """First element (lexicographic) with 1 not an eigenvalue, or None."""
    ell = H.ell
    for g in H.elements:
        a, b, c, d = g
        if ((a - 1) * (d - 1) - b * c) % ell != 0:
            return g
    return None


def find_tau1(H: MatGroup) -> Mat2 | None:
    """First element with rank(g - 1) = 1, or None."""
    ell = H.ell
    for g in H.elements:
        a, b, c, d = g
        m = ((a - 1) % ell, b % ell, c % ell, (d - 1) % ell)
        det = (m[0] * m[3] - m[1] * m[2]) % ell
        if det == 0 and any(m):
            return g
    return None
