"""Exact arithmetic over a prime field: rings, monomial orders, polynomials.

Monomials are plain tuples of exponents (one entry per homogeneous
coordinate).  Polynomials are immutable maps ``monomial -> coefficient`` with
coefficients kept as canonical residues in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003

Monomial = tuple


class RingMismatch(ValueError):
    pass


class CharacteristicError(ValueError):
    """An operation that needs characteristic-zero behavior hit a multiple of p."""


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int = DEFAULT_PRIME

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def signed(self, a: int) -> int:
        """Representative of ``a`` in the symmetric range around zero."""
        a %= self.modulus
        return a - self.modulus if a > self.modulus // 2 else a


# -- monomial orders ---------------------------------------------------------


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``; ``block`` with ``k``
    compares the first ``k`` variables by grevlex, then the remaining ones by
    grevlex, so any monomial involving an eliminated variable is larger than
    every monomial that does not.
    """

    kind: str = "grevlex"
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.kind == "block" and self.k < 1:
            raise ValueError("block order needs k >= 1")

    def key(self, m: Monomial) -> tuple:
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        if self.kind == "grevlex":
            return (sum(m),) + tuple(-e for e in reversed(m))
        if self.kind == "lex":
            return tuple(m)
        k = self.k
        head, tail = m[:k], m[k:]
        return ((sum(head),) + tuple(-e for e in reversed(head))
                + (sum(tail),) + tuple(-e for e in reversed(tail)))

    def heap_key(self, m: Monomial) -> tuple:
        """Key whose *minimum* is the largest monomial (for ``heapq``)."""
        if self.kind == "grevlex":
            return (-sum(m),) + tuple(reversed(m))
        if self.kind == "lex":
            return tuple(-e for e in m)
        k = self.k
        head, tail = m[:k], m[k:]
        return ((-sum(head),) + tuple(reversed(head))
                + (-sum(tail),) + tuple(reversed(tail)))

    def __str__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def block_order(k: int) -> TermOrder:
    return TermOrder("block", k)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d``, in lex-descending order."""
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


# -- rings and polynomials ---------------------------------------------------


@dataclass(frozen=True)
class Ring:
    modulus: int
    names: tuple[str, ...]

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"repeated variable names in {self.names}")
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.modulus)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.modulus
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Poly":
        coeff %= self.modulus
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def extend(self, name: str = "_t") -> "Ring":
        """Ring with one extra variable prepended (for elimination tricks)."""
        while name in self.names:
            name = "_" + name
        return Ring(self.modulus, (name,) + self.names)

    def drop_last(self) -> "Ring":
        return Ring(self.modulus, self.names[:-1])

    def __str__(self):
        return f"GF({self.modulus})[{','.join(self.names)}]"


class Poly:
    """Immutable polynomial over ``GF(p)``.

    ``coeffs`` maps exponent tuples to nonzero residues.  Arithmetic operators
    accept other polynomials of the same ring and plain integers.
    """

    __slots__ = ("ring", "coeffs", "_hash")

    def __init__(self, ring: Ring, coeffs: Mapping[Monomial, int]):
        self.ring = ring
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_terms(cls, ring: Ring, terms: Iterable[tuple[Monomial, int]]) -> "Poly":
        p = ring.modulus
        acc: dict = {}
        for m, c in terms:
            m = tuple(m)
            if len(m) != ring.nvars:
                raise ValueError(f"monomial {m} has wrong length for {ring}")
            acc[m] = (acc.get(m, 0) + c) % p
        return cls(ring, {m: c for m, c in acc.items() if c})

    # structure

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def terms(self, order: TermOrder = GREVLEX) -> list[tuple[Monomial, int]]:
        """Terms sorted strictly descending in ``order``."""
        return sorted(self.coeffs.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.coeffs, key=order.key)

    def leading_coefficient(self, order: TermOrder = GREVLEX) -> int:
        return self.coeffs[self.leading_monomial(order)]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.coeffs}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.coeffs)

    def monic(self, order: TermOrder = GREVLEX) -> "Poly":
        if not self.coeffs:
            return self
        inv = pow(self.leading_coefficient(order), -1, self.ring.modulus)
        return self.scale(inv)

    # arithmetic

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        return Poly(self.ring, {m: p - c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Poly":
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: (v * c) % p for m, v in self.coeffs.items()})

    def mul_term(self, mono: Monomial, c: int = 1) -> "Poly":
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {mono_mul(m, mono): (v * c) % p for m, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Poly(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, i: int | str) -> "Poly":
        """Formal partial derivative (exponents reduced mod p vanish)."""
        if isinstance(i, str):
            i = self.ring.index(i)
        p = self.ring.modulus
        out = {}
        for m, c in self.coeffs.items():
            e = m[i]
            v = (c * e) % p
            if v:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = v
        return Poly(self.ring, out)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.modulus
        total = 0
        for m, c in self.coeffs.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.coeffs.items() if sum(m) == d})

    # equality and printing

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.coeffs.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(f: Poly, order: TermOrder = GREVLEX) -> str:
    """Print in the input grammar; coefficients use the symmetric residue."""
    if f.is_zero():
        return "0"
    field = f.ring.field
    parts = []
    for m, c in f.terms(order):
        c = field.signed(c)
        factors = []
        for name, e in zip(f.ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if num is not None:
            tokens.append(("num", int(num), start))
        elif name is not None:
            tokens.append(("var", name, start))
        elif sym is not None:
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r}", start, text)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Poly:
        f = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return f

    def expr(self) -> Poly:
        f = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Poly:
        f, closed = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                g, closed = self.factor()
            elif closed and kind in ("(", "var", "num"):
                # juxtaposition is only allowed right after a closing paren
                g, closed = self.factor()
            else:
                return f
            f = f * g

    def factor(self):
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            f, closed = self.factor()
            return -f, closed
        if tok[0] == "+":
            self.take()
            return self.factor()
        f, closed = self.atom()
        if self.peek()[0] == "^":
            self.take()
            e = self.take("num")[1]
            f = f ** e
            closed = False
        return f, closed

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return self.ring.const(val), False
        if kind == "var":
            if val not in self.ring.names:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return self.ring.var(val), False
        if kind == "(":
            f = self.expr()
            self.take(")")
            return f, True
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {val!r}", pos, self.text)


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse ``text`` (integers, variables, ``+ - * ^``, parentheses)."""
    if not text.strip():
        raise ParseError("empty polynomial", 0, text)
    return _Parser(text, ring).parse()


# -- linear algebra mod p and coordinate changes ------------------------------


def row_reduce(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form mod ``p``; returns (nonzero rows, pivot columns)."""
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def matrix_rank(rows: list[list[int]], p: int) -> int:
    return len(row_reduce(rows, p)[1])


def matrix_inverse(M: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    n = len(M)
    aug = [list(M[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, piv = row_reduce(aug, p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return [row[n:] for row in red]


def linear_change(polys: Sequence[Poly], M: Sequence[Sequence[int]]) -> list[Poly]:
    """Substitute ``x_j -> sum_i M[j][i] x_i`` in every polynomial."""
    if not polys:
        return []
    ring = polys[0].ring
    n = ring.nvars
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"change matrix must be {n}x{n}")
    if matrix_rank([list(r) for r in M], ring.modulus) < n:
        raise ValueError("singular change of coordinates")
    images = [Poly.from_terms(ring, [(tuple(1 if k == i else 0 for k in range(n)), M[j][i])
                                     for i in range(n)]) for j in range(n)]
    powers: dict = {}

    def power(j, e):
        key = (j, e)
        if key not in powers:
            powers[key] = ring.one() if e == 0 else power(j, e - 1) * images[j]
        return powers[key]

    out = []
    for f in polys:
        if f.ring != ring:
            raise RingMismatch(f"{f.ring} vs {ring}")
        acc = ring.zero()
        for m, c in f.coeffs.items():
            t = ring.const(c)
            for j, e in enumerate(m):
                if e:
                    t = t * power(j, e)
            acc = acc + t
        out.append(acc)
    return out


def change_ring(f: Poly, ring: Ring, embed) -> Poly:
    """Move ``f`` into ``ring`` by mapping each exponent tuple through ``embed``."""
    return Poly(ring, {tuple(embed(m)): c for m, c in f.coeffs.items()})


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient ``f / g``; raises ``ArithmeticError`` when ``g`` does not divide ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p = f.ring.modulus
    lm = g.leading_monomial()
    inv = pow(g.coeffs[lm], -1, p)
    rem = dict(f.coeffs)
    quo: dict = {}
    key = GREVLEX.key
    while rem:
        m = max(rem, key=key)
        if not mono_divides(lm, m):
            raise ArithmeticError("inexact division")
        q = mono_div(m, lm)
        c = rem[m] * inv % p
        quo[q] = c
        for mg, cg in g.coeffs.items():
            mm = mono_mul(mg, q)
            v = (rem.get(mm, 0) - c * cg) % p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Poly(f.ring, quo)
