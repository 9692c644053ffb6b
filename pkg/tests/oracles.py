"""Brute-force oracles, independent of the Groebner engine.

Everything here works degree by degree with dense linear algebra mod p
(numpy, int64) or by enumerating monomials; nothing calls ``buchberger`` or
``normal_form``.
"""

from itertools import product
from math import comb

import numpy as np

from segreclass.polyring import Poly, Ring


def monomials(nvars: int, d: int) -> list[tuple]:
    return [m for m in product(range(d + 1), repeat=nvars) if sum(m) == d]


def echelon_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon form over GF(p); returns (rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    if len(A) == 0:
        return 0
    return len(echelon_mod_p(A, p)[1])


def graded_piece(gens: list[Poly], d: int) -> tuple[list[tuple], np.ndarray]:
    """Spanning matrix of I_d for homogeneous ``gens`` (rows = m * g)."""
    ring = gens[0].ring
    cols = monomials(ring.nvars, d)
    index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        e = g.degree
        if e > d:
            continue
        for m in monomials(ring.nvars, d - e):
            row = [0] * len(cols)
            for mg, c in g.coeffs.items():
                row[index[tuple(a + b for a, b in zip(mg, m))]] = c
            rows.append(row)
    return cols, np.array(rows, dtype=np.int64).reshape(len(rows), len(cols))


def in_ideal_linear_algebra(f: Poly, gens: list[Poly]) -> bool:
    """Membership for a homogeneous ideal by checking each graded piece of ``f``."""
    p = f.ring.modulus
    for d in sorted({sum(m) for m in f.coeffs}):
        part = f.homogeneous_part(d)
        cols, A = graded_piece(gens, d)
        index = {m: i for i, m in enumerate(cols)}
        v = np.zeros((1, len(cols)), dtype=np.int64)
        for m, c in part.coeffs.items():
            v[0, index[m]] = c
        base = rank_mod_p(A, p) if len(A) else 0
        both = rank_mod_p(np.vstack([A, v]) if len(A) else v, p)
        if both != base:
            return False
    return True


def hilbert_function_linear_algebra(gens: list[Poly], d: int) -> int:
    ring = gens[0].ring
    total = comb(d + ring.nvars - 1, ring.nvars - 1)
    cols, A = graded_piece(gens, d)
    return total - (rank_mod_p(A, ring.modulus) if len(A) else 0)


def hilbert_function_staircase(leading: list[tuple], nvars: int, d: int) -> int:
    """Count degree-d monomials outside the monomial ideal generated by ``leading``."""
    return sum(1 for m in monomials(nvars, d)
               if not any(all(a <= b for a, b in zip(l, m)) for l in leading))


def naive_remainder(f: Poly, divisors: list[Poly], key) -> Poly:
    """Textbook multivariate division with a plain sort key (no heaps, no caches)."""
    p = f.ring.modulus
    rem = {}
    cur = dict(f.coeffs)
    leads = [(max(g.coeffs, key=key), g) for g in divisors]
    while cur:
        m = max(cur, key=key)
        c = cur[m]
        for lm, g in leads:
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(a - b for a, b in zip(m, lm))
                factor = c * pow(g.coeffs[lm], -1, p) % p
                for mg, cg in g.coeffs.items():
                    mm = tuple(a + b for a, b in zip(mg, q))
                    v = (cur.get(mm, 0) - factor * cg) % p
                    if v:
                        cur[mm] = v
                    else:
                        cur.pop(mm, None)
                break
        else:
            rem[m] = c
            del cur[m]
    return Poly(f.ring, rem)


def s_pairs_reduce_to_zero(gens: list[Poly], key) -> bool:
    p = gens[0].ring.modulus
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            f, g = gens[i], gens[j]
            lf, lg = max(f.coeffs, key=key), max(g.coeffs, key=key)
            L = tuple(max(a, b) for a, b in zip(lf, lg))
            s = (f.mul_term(tuple(a - b for a, b in zip(L, lf)), pow(f.coeffs[lf], -1, p))
                 - g.mul_term(tuple(a - b for a, b in zip(L, lg)), pow(g.coeffs[lg], -1, p)))
            if not naive_remainder(s, gens, key).is_zero():
                return False
    return True


def random_poly(ring: Ring, rng, degree: int, terms: int, homogeneous: bool = True) -> Poly:
    out = {}
    for _ in range(terms):
        d = degree if homogeneous else rng.randrange(degree + 1)
        ms = monomials(ring.nvars, d)
        out[ms[rng.randrange(len(ms))]] = rng.randrange(ring.modulus)
    return Poly(ring, {m: c for m, c in out.items() if c})


# -- closed forms for Segre classes ------------------------------------------------


def hypersurface_segre(n: int, e: int) -> dict[int, int]:
    """s(D, P^n) = [D] / (1 + eH) for a degree-e hypersurface."""
    return {k: (-1) ** (n - 1 - k) * e ** (n - k) for k in range(n)}


def linear_subspace_segre(n: int, k: int) -> dict[int, int]:
    """s(P^k, P^n) = (1 + H)^-(n-k) cap [P^k]."""
    return {j: (-1) ** (k - j) * comb(n - k - 1 + k - j, k - j) for j in range(k + 1)}


def series_inverse_power(d: int, i: int, terms: int) -> list[int]:
    """Coefficients of (1 + d h)^(-i) up to h^(terms-1), via repeated convolution."""
    out = [1] + [0] * (terms - 1)
    geo = [(-d) ** j for j in range(terms)]
    for _ in range(i):
        out = [sum(out[a] * geo[b - a] for a in range(b + 1)) for b in range(terms)]
    return out


class GradedMembership:
    """Degree-by-degree membership oracle with cached echelon forms of I_d."""

    def __init__(self, gens: list[Poly]):
        self.gens = gens
        self.ring = gens[0].ring
        self._cache = {}

    def _piece(self, d: int):
        if d not in self._cache:
            cols, A = graded_piece(self.gens, d)
            E, piv = echelon_mod_p(A, self.ring.modulus) if len(A) else (A, [])
            self._cache[d] = ({m: i for i, m in enumerate(cols)}, E, piv)
        return self._cache[d]

    def contains(self, f: Poly) -> bool:
        p = self.ring.modulus
        for d in sorted({sum(m) for m in f.coeffs}):
            index, E, piv = self._piece(d)
            v = np.zeros(len(index), dtype=np.int64)
            for m, c in f.homogeneous_part(d).coeffs.items():
                v[index[m]] = c
            for row, c in zip(E, piv):
                if v[c]:
                    v = (v - v[c] * row) % p
            if v.any():
                return False
        return True
