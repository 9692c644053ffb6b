"""Ideal calculus: intersection, colon, saturation, elimination, radicals, Hilbert series."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, buchberger, ideal_digest, normal_form
from .polyring import GREVLEX, Monomial, Poly, Ring, RingMismatch, TermOrder, block_order, divide_exact


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: Ring
    gens: tuple[Poly, ...]
    _gb_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatch(f"{g.ring} vs {self.ring}")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, (ring.one(),))

    def gb(self, order: TermOrder = GREVLEX) -> GroebnerBasis:
        G = self._gb_cache.get(order)
        if G is None:
            G = self._gb_cache[order] = buchberger(self.gens, order)
        return G

    @property
    def digest(self) -> str:
        return ideal_digest(self.gens)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.gens):
            return True
        return self.gb().is_unit()

    def contains(self, f: Poly) -> bool:
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        return normal_form(f, self.gb()).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, tuple(f * g for f in self.gens for g in other.gens))

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.gb().generators == other.gb().generators

    def __hash__(self):
        return hash((self.ring, self.gb().generators))

    def minimal_gens(self) -> "Ideal":
        """Drop generators that lie in the ideal of the others (homogeneous input)."""
        keep: list[Poly] = []
        for g in sorted(self.gens, key=lambda f: (f.degree, str(f))):
            if not keep or not Ideal(self.ring, tuple(keep)).contains(g):
                keep.append(g)
        return Ideal(self.ring, tuple(keep))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def _lift(f: Poly, big: Ring, front: int = 1) -> Poly:
    pad = (0,) * front
    return Poly(big, {pad + m: c for m, c in f.coeffs.items()})


def _drop(f: Poly, small: Ring, front: int = 1) -> Poly:
    return Poly(small, {m[front:]: c for m, c in f.coeffs.items()})


def eliminate(I: Ideal, k: int) -> Ideal:
    """Generators of ``I`` intersected with the subring free of the first ``k`` variables."""
    if not 0 <= k < I.nvars:
        raise ValueError(f"can only eliminate 0..{I.nvars - 1} variables")
    if k == 0:
        return I
    G = I.gb(block_order(k))
    return Ideal(I.ring, tuple(g for g in G.generators if all(not any(m[:k]) for m in g.coeffs)))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, ())
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big = I.ring.extend("_t")
    t = big.var(0)
    one_minus_t = big.one() - t
    gens = [t * _lift(f, big) for f in I.gens] + [one_minus_t * _lift(g, big) for g in J.gens]
    # t carries weight zero, so every generator stays homogeneous for pair selection
    weights = (0,) + (1,) * I.nvars
    G = buchberger(gens, block_order(1), weights=weights)
    out = tuple(_drop(g, I.ring) for g in G.generators if all(m[0] == 0 for m in g.coeffs))
    return Ideal(I.ring, out)


def _quotient_by(I: Ideal, g: Poly) -> Ideal:
    if I.contains(g):
        return Ideal.unit(I.ring)
    meet = intersect(I, Ideal(I.ring, (g,)))
    return Ideal(I.ring, tuple(divide_exact(f, g) for f in meet.gens))


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """Colon ideal ``I : J``."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("quotient by the zero ideal")
    result = None
    for g in J.gens:
        Q = _quotient_by(I, g)
        result = Q if result is None else intersect(result, Q)
    return Ideal(result.ring, _reduced_gens(result))


def _reduced_gens(I: Ideal) -> tuple[Poly, ...]:
    return I.gb().generators if I.gens else ()


def saturate(I: Ideal, J: Ideal) -> tuple[Ideal, int]:
    """``I : J^infinity`` by iterated quotients; also returns the number of quotients taken."""
    _same_ring(I, J)
    cur = I
    k = 0
    while True:
        nxt = quotient(cur, J)
        k += 1
        if nxt == cur:
            return nxt, k
        cur = nxt


def radical_member(f: Poly, I: Ideal) -> bool:
    """Decide ``f`` in the radical of ``I`` via ``1 in I + (t*f - 1)``."""
    if f.is_zero():
        raise ValueError("radical membership of the zero polynomial is trivial")
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if I.contains(f):
        return True
    big = I.ring.extend("_t")
    t = big.var(0)
    gens = [_lift(g, big) for g in I.gens] + [t * _lift(f, big) - big.one()]
    return buchberger(gens, block_order(1)).is_unit()


def equal_radicals(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return (all(radical_member(g, J) for g in I.gens)
            and all(radical_member(g, I) for g in J.gens))


# -- Hilbert series ------------------------------------------------------------


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return out


def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _minimalize(gens: Sequence[Monomial]) -> list[Monomial]:
    gens = sorted(set(gens), key=sum)
    out: list[Monomial] = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def monomial_numerator(gens: Sequence[Monomial]) -> list[int]:
    """Numerator of the Hilbert series of ``k[x]/(gens)`` over ``(1-t)^nvars``.

    Recursive pivot on a variable: N(I) = N(I + (x)) + t * N(I : x).
    """
    gens = _minimalize(gens)
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    n = len(gens[0])
    coprime = True
    counts = [0] * n
    seen = [0] * n
    for m in gens:
        for i, e in enumerate(m):
            if e:
                if seen[i]:
                    coprime = False
                seen[i] = 1
                if sum(m) > 1:
                    counts[i] += 1
    if coprime:
        out = [1]
        for m in gens:
            d = sum(m)
            factor = [1] + [0] * (d - 1) + [-1]
            out = _poly_mul(out, factor)
        return out
    x = max(range(n), key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == x else 0 for i in range(n))
    plus = [m for m in gens if m[x] == 0] + [unit]
    colon = [tuple(e - 1 if i == x and e > 0 else e for i, e in enumerate(m)) for m in gens]
    a = monomial_numerator(plus)
    b = monomial_numerator(colon)
    return _trim(_poly_add(a, [0] + b))


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]
    nvars: int
    proj_dimension: int
    degree: int

    def function(self, upto: int) -> list[int]:
        """Values of the Hilbert function in degrees ``0..upto``."""
        n = self.nvars
        out = []
        for t in range(upto + 1):
            v = sum(c * comb(t - i + n - 1, n - 1) for i, c in enumerate(self.numerator) if i <= t)
            out.append(v)
        return out


def _cancel_one_minus_t(num: list[int]) -> tuple[list[int], int]:
    num = _trim(num)
    a = 0
    while any(num) and sum(num) == 0:
        q, acc = [], 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q) if q else [0]
        a += 1
    return num, a


def hilbert_from_monomials(lms: Sequence[Monomial], nvars: int) -> HilbertData:
    num = monomial_numerator(list(lms)) if lms else [1]
    num = _trim(num)
    if not any(num):
        return HilbertData(tuple(num), nvars, -1, 0)
    reduced, a = _cancel_one_minus_t(num)
    krull = nvars - a
    if krull <= 0:
        return HilbertData(tuple(num), nvars, -1, 0)
    return HilbertData(tuple(num), nvars, krull - 1, sum(reduced))


def hilbert(I: Ideal) -> HilbertData:
    """Hilbert series data of ``R/I`` read off the grevlex leading-term ideal."""
    if not I.is_homogeneous():
        raise ValueError("hilbert needs a homogeneous ideal")
    return hilbert_from_monomials(I.gb().leading_monomials, I.nvars)


def proj_dimension(I: Ideal) -> int:
    return hilbert(I).proj_dimension


def irrelevant_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, tuple(ring.gens()))


def codimension(I: Ideal) -> int:
    return I.nvars - 1 - proj_dimension(I)
