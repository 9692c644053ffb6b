"""Reduced Groebner bases over GF(p) (Buchberger, Gebauer-Moeller pruning, sugar selection)."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Sequence

from .polyring import GREVLEX, Monomial, Poly, RingMismatch, TermOrder

BUDGET_ENV = "SEGRECLASS_BUDGET"
DEFAULT_BUDGET = 500_000


class ResourceError(RuntimeError):
    """A Groebner computation ran past its step or degree budget."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def ideal_digest(gens: Sequence[Poly]) -> str:
    h = hashlib.sha256()
    if gens:
        h.update(str(gens[0].ring).encode())
    for s in sorted(str(g) for g in gens):
        h.update(s.encode())
        h.update(b";")
    return h.hexdigest()[:16]


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Poly, ...]
    order: TermOrder
    source_ideal_hash: str

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.generators) + "]"


class _Reducer:
    """Monic polynomials kept as (leading monomial, tail terms) for division."""

    def __init__(self, order: TermOrder, p: int, weights=None):
        self.order = order
        self.p = p
        self.weights = weights
        self.lms: list[Monomial] = []
        self.tails: list[list] = []
        self.sugar: list[int] = []
        self.active: list[int] = []
        self._hk_cache: dict = {}
        self._div_cache: dict = {}

    def hk(self, m):
        k = self._hk_cache.get(m)
        if k is None:
            k = self._hk_cache[m] = self.order.heap_key(m)
        return k

    def wdeg(self, m) -> int:
        if self.weights is None:
            return sum(m)
        return sum(w * e for w, e in zip(self.weights, m))

    def lead(self, f: dict) -> Monomial:
        hk = self.hk
        return min(f, key=hk)

    def add(self, f: dict, sugar: int) -> int:
        """Store monic ``f``; returns its index (not yet active)."""
        lm = self.lead(f)
        p = self.p
        inv = pow(f[lm], -1, p)
        tail = [(m, c * inv % p) for m, c in f.items() if m != lm]
        self.lms.append(lm)
        self.tails.append(tail)
        self.sugar.append(sugar)
        return len(self.lms) - 1

    def find(self, m, exclude=None):
        cache = self._div_cache
        j = cache.get(m)
        if j is not None and j != exclude:
            return j
        dm = sum(m)
        lms = self.lms
        for j in self.active:
            if j == exclude:
                continue
            lm = lms[j]
            if sum(lm) <= dm and all(a <= b for a, b in zip(lm, m)):
                if exclude is None:
                    cache[m] = j
                return j
        return None

    def reduce(self, f: dict, sugar: int = 0, exclude=None, counter=None):
        """Full reduction of ``f`` by the active elements; returns (remainder, sugar)."""
        p = self.p
        hk = self.hk
        f = dict(f)
        heap = [(hk(m), m) for m in f]
        heapify(heap)
        out = {}
        lms, tails, sugars = self.lms, self.tails, self.sugar
        find = self.find
        while heap:
            m = heappop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            j = find(m, exclude)
            if j is None:
                out[m] = c
                continue
            lm = lms[j]
            q = tuple(a - b for a, b in zip(m, lm))
            s = sugars[j] + self.wdeg(q)
            if s > sugar:
                sugar = s
            for mt, ct in tails[j]:
                mm = tuple(a + b for a, b in zip(mt, q))
                v = f.get(mm)
                if v is None:
                    f[mm] = (-c * ct) % p
                    heappush(heap, (hk(mm), mm))
                else:
                    v = (v - c * ct) % p
                    if v:
                        f[mm] = v
                    else:
                        del f[mm]
            if counter is not None:
                counter[0] += 1
        return out, sugar


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def buchberger(gens: Sequence[Poly], order: TermOrder = GREVLEX, *, budget: int | None = None,
               weights: Sequence[int] | None = None, max_degree: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``weights`` only steer pair selection (sugar degree); the result does not
    depend on them.  ``budget`` caps the number of S-pair reductions and
    ``max_degree`` the sugar degree; exceeding either raises ``ResourceError``.
    """
    gens = [g for g in gens if not g.is_zero()]
    digest = ideal_digest(gens)
    if not gens:
        return GroebnerBasis((), order, digest)
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    if budget is None:
        budget = default_budget()
    p = ring.modulus
    R = _Reducer(order, p, None if weights is None else tuple(weights))

    if any(g.is_constant() for g in gens):
        return GroebnerBasis((ring.one(),), order, digest)

    pairs: dict = {}
    heap: list = []
    steps = [0]

    def update(h: int):
        lh = R.lms[h]
        G = R.active
        lcms = {g: _lcm(R.lms[g], lh) for g in G}
        C = list(G)
        D = []
        for idx, g in enumerate(C):
            L = lcms[g]
            if _coprime(R.lms[g], lh):
                D.append(g)
                continue
            rest = C[idx + 1:]
            if any(_divides(lcms[g2], L) for g2 in rest) or any(_divides(lcms[g2], L) for g2 in D):
                continue
            D.append(g)
        E = [g for g in D if not _coprime(R.lms[g], lh)]
        for key in list(pairs):
            i, j = key
            L = pairs[key][1]
            if _divides(lh, L) and _lcm(R.lms[i], lh) != L and _lcm(R.lms[j], lh) != L:
                del pairs[key]
        for g in E:
            L = lcms[g]
            sug = max(R.sugar[g] + R.wdeg(L) - R.wdeg(R.lms[g]),
                      R.sugar[h] + R.wdeg(L) - R.wdeg(lh))
            key = (g, h)
            pairs[key] = (sug, L)
            heappush(heap, (sug, g, h))
        R.active = [g for g in G if not _divides(lh, R.lms[g])] + [h]

    def insert(f: dict, sugar: int) -> bool:
        if not f:
            return False
        if len(f) == 1 and not any(next(iter(f))):
            return True
        h = R.add(f, sugar)
        update(h)
        return False

    start = sorted(({m: c for m, c in g.coeffs.items()} for g in gens),
                   key=lambda f: order.key(max(f, key=order.key)))
    for f in start:
        s0 = max(R.wdeg(m) for m in f)
        red, s = R.reduce(f, s0)
        if insert(red, s):
            return GroebnerBasis((ring.one(),), order, digest)

    while heap:
        sug, i, j = heappop(heap)
        entry = pairs.pop((i, j), None)
        if entry is None:
            continue
        if max_degree is not None and sug > max_degree:
            raise ResourceError(f"sugar degree {sug} exceeds cap {max_degree}")
        steps[0] += 1
        if steps[0] > budget:
            raise ResourceError(f"Groebner budget of {budget} S-pair reductions exhausted")
        L = entry[1]
        qi = tuple(a - b for a, b in zip(L, R.lms[i]))
        qj = tuple(a - b for a, b in zip(L, R.lms[j]))
        spoly: dict = {}
        for m, c in R.tails[i]:
            mm = tuple(a + b for a, b in zip(m, qi))
            spoly[mm] = c
        for m, c in R.tails[j]:
            mm = tuple(a + b for a, b in zip(m, qj))
            v = (spoly.get(mm, 0) - c) % p
            if v:
                spoly[mm] = v
            else:
                spoly.pop(mm, None)
        red, s = R.reduce(spoly, sug)
        if insert(red, s):
            return GroebnerBasis((ring.one(),), order, digest)

    # inter-reduce the minimal basis
    final = sorted(R.active, key=lambda j: order.key(R.lms[j]))
    polys = []
    for j in final:
        tail = dict(R.tails[j])
        red, _ = R.reduce(tail, 0, exclude=j)
        red[R.lms[j]] = 1
        polys.append(Poly(ring, red))
    return GroebnerBasis(tuple(polys), order, digest)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by the reduced basis ``G``."""
    if f.is_zero() or not G.generators:
        return f
    ring = G.generators[0].ring
    if f.ring != ring:
        raise RingMismatch(f"{f.ring} vs {ring}")
    R = _Reducer(G.order, ring.modulus)
    for g in G.generators:
        R.active.append(R.add(dict(g.coeffs), 0))
    red, _ = R.reduce(dict(f.coeffs))
    return Poly(ring, red)


def ideal_membership(f: Poly, gens: Sequence[Poly], order: TermOrder = GREVLEX) -> bool:
    if f.is_zero():
        return True
    return normal_form(f, buchberger(gens, order)).is_zero()


def is_groebner(G: GroebnerBasis) -> bool:
    """Re-check Buchberger's criterion: every S-polynomial reduces to zero."""
    gens = G.generators
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            f, g = gens[a], gens[b]
            lf, lg = f.leading_monomial(G.order), g.leading_monomial(G.order)
            L = _lcm(lf, lg)
            s = (f.mul_term(tuple(x - y for x, y in zip(L, lf)), pow(f.coeffs[lf], -1, f.ring.modulus))
                 - g.mul_term(tuple(x - y for x, y in zip(L, lg)), pow(g.coeffs[lg], -1, g.ring.modulus)))
            if not normal_form(s, G).is_zero():
                return False
    return True
