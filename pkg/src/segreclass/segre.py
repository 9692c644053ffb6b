"""Push-forward Segre classes in P^n from residuals of general hypersurfaces.

For ``p`` general degree-``d`` elements of the ideal of ``Z`` the intersection
splits into a part supported on ``Z`` and a residual scheme ``R`` of dimension
``n - p``.  Bezout gives

    d^p = deg R + sum_j C(p, j - (n-p)) d^(j - (n-p)) s_j(Z)

so the Segre degrees ``s_k`` can be solved for from the top dimension down.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .idealcalc import Ideal, hilbert, saturate
from .polyring import Monomial, Poly, monomials_of_degree

DEFAULT_RETRIES = 3


class GenericityError(RuntimeError):
    """A random choice was not general enough (or independent trials disagreed)."""

    def __init__(self, message: str, vectors: Sequence = ()):
        super().__init__(message)
        self.vectors = list(vectors)


def derive_seed(seed: int, *labels) -> int:
    h = hashlib.blake2b(repr((seed,) + labels).encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big") >> 1


def gbinom(e: int, j: int) -> int:
    """Binomial coefficient C(e, j) for any integer ``e`` (j >= 0)."""
    if j < 0:
        return 0
    num = 1
    for i in range(j):
        num *= e - i
    den = 1
    for i in range(2, j + 1):
        den *= i
    return num // den


# -- class calculus in P^n ---------------------------------------------------------


@dataclass(frozen=True)
class AmbientClass:
    """Degrees of the dimension-k pieces (k = 0..n) of a class in P^n."""

    ambient_dim: int
    degs: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(int(x) for x in self.degs)
        if len(degs) != self.ambient_dim + 1:
            raise ValueError(f"need {self.ambient_dim + 1} entries, got {len(degs)}")
        object.__setattr__(self, "degs", degs)

    @classmethod
    def zero(cls, n: int) -> "AmbientClass":
        return cls(n, (0,) * (n + 1))

    @classmethod
    def from_dims(cls, n: int, pieces: dict[int, int]) -> "AmbientClass":
        degs = [0] * (n + 1)
        for k, v in pieces.items():
            degs[k] = v
        return cls(n, tuple(degs))

    def __getitem__(self, k: int) -> int:
        return self.degs[k] if 0 <= k <= self.ambient_dim else 0

    def codim(self, i: int) -> int:
        return self[self.ambient_dim - i]

    def __add__(self, other: "AmbientClass") -> "AmbientClass":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return AmbientClass(self.ambient_dim, tuple(a + b for a, b in zip(self.degs, other.degs)))

    def __neg__(self):
        return AmbientClass(self.ambient_dim, tuple(-a for a in self.degs))

    def __sub__(self, other):
        return self + (-other)

    def as_dict(self) -> dict[str, int]:
        return {str(k): self.degs[k] for k in range(self.ambient_dim, -1, -1)}


def chern_mult(A: AmbientClass, d: int, e: int) -> AmbientClass:
    """Cap with ``c(O(d))^e``; ``e`` may be negative."""
    n = A.ambient_dim
    out = []
    for k in range(n + 1):
        out.append(sum(gbinom(e, j - k) * d ** (j - k) * A.degs[j] for j in range(k, n + 1)))
    return AmbientClass(n, tuple(out))


def dual(A: AmbientClass) -> AmbientClass:
    """Sign the codimension-i piece by (-1)^i."""
    n = A.ambient_dim
    return AmbientClass(n, tuple((-1) ** (n - k) * A.degs[k] for k in range(n + 1)))


def tensor(A: AmbientClass, d: int) -> AmbientClass:
    """Tensor with O(dH): the codimension-i piece is divided by (1 + dH)^i."""
    n = A.ambient_dim
    out = [0] * (n + 1)
    for i in range(n + 1):
        a = A.codim(i)
        if not a:
            continue
        for j in range(n - i + 1):
            out[n - i - j] += gbinom(-i, j) * d ** j * a
    return AmbientClass(n, tuple(out))


# -- general elements of a linear system -----------------------------------------


@dataclass(frozen=True)
class LinearSystemSample:
    source: Ideal
    degree: int
    count: int
    seed: int
    spanning: tuple[tuple[int, Monomial], ...]
    matrix: tuple[tuple[int, ...], ...]
    elements: tuple[Poly, ...] = field(repr=False)

    def ideal(self) -> Ideal:
        return Ideal(self.source.ring, self.elements)


def general_elements(I: Ideal, d: int, p: int, seed: int) -> LinearSystemSample:
    """``p`` random combinations of ``{m * f_i : deg = d}``, reproducible from ``seed``."""
    if I.is_zero():
        raise ValueError("the zero ideal has no linear system")
    if d < I.max_degree:
        raise ValueError(f"degree {d} is below the generator degree {I.max_degree}")
    if p < 0:
        raise ValueError("negative sample size")
    ring = I.ring
    mod = ring.modulus
    spanning = []
    for i, g in enumerate(I.gens):
        for m in monomials_of_degree(ring.nvars, d - g.degree):
            spanning.append((i, m))
    rng = random.Random(seed)
    rows = []
    elements = []
    for _ in range(p):
        row = tuple(rng.randrange(mod) for _ in spanning)
        acc: dict = {}
        for c, (i, m) in zip(row, spanning):
            if not c:
                continue
            for mg, cg in I.gens[i].coeffs.items():
                mm = tuple(a + b for a, b in zip(mg, m))
                acc[mm] = (acc.get(mm, 0) + c * cg) % mod
        rows.append(row)
        elements.append(Poly(ring, {m: c for m, c in acc.items() if c}))
    return LinearSystemSample(I, d, p, seed, tuple(spanning), tuple(rows), tuple(elements))


def residual_degree(I: Ideal, p: int, d: int, seed: int,
                    retries: int = DEFAULT_RETRIES) -> tuple[int, Ideal]:
    """Degree of the (n-p)-dimensional residual to ``Z`` in ``p`` general cuts.

    Reseeds up to ``retries`` times when the residual comes out too large.
    """
    n = I.nvars - 1
    if not 1 <= p <= n:
        raise ValueError(f"p must lie in 1..{n}")
    found = []
    for attempt in range(retries + 1):
        s = seed if attempt == 0 else derive_seed(seed, "retry", attempt)
        J = general_elements(I, d, p, s).ideal()
        R, _ = saturate(J, I)
        H = hilbert(R)
        found.append(H.proj_dimension)
        if H.proj_dimension > n - p:
            continue
        r = H.degree if H.proj_dimension == n - p else 0
        return r, R
    raise GenericityError(
        f"residual of {p} general elements has dimension {found} > {n - p} in all attempts")


# -- Segre classes -----------------------------------------------------------


@dataclass(frozen=True)
class SegreClassVector:
    ambient_dim: int
    z_dim: int
    s: tuple[int, ...]
    d: int
    seeds: tuple[int, ...] = ()
    trials: int = 1
    residuals: tuple[int, ...] = ()

    def __getitem__(self, k: int) -> int:
        return self.s[k] if 0 <= k <= self.z_dim else 0

    def is_empty(self) -> bool:
        return self.z_dim < 0

    def as_dict(self) -> dict[str, int]:
        return {str(k): self.s[k] for k in range(self.z_dim, -1, -1)}

    def to_class(self) -> AmbientClass:
        degs = [0] * (self.ambient_dim + 1)
        for k, v in enumerate(self.s):
            degs[k] = v
        return AmbientClass(self.ambient_dim, tuple(degs))


def _solve_once(I: Ideal, n: int, z: int, d: int, seed: int) -> tuple[list[int], list[int]]:
    s = [0] * (z + 1)
    rs = []
    for k in range(z, -1, -1):
        p = n - k
        r, _ = residual_degree(I, p, d, derive_seed(seed, "p", p))
        rs.append(r)
        s[k] = d ** p - r - sum(comb(p, j - k) * d ** (j - k) * s[j] for j in range(k + 1, z + 1))
    return s, rs


def segre_class(I: Ideal, d: int | None = None, trials: int = 2, seed: int = 0) -> SegreClassVector:
    """Degrees of s(Z, P^n) pushed forward to P^n, agreed on by ``trials`` independent runs."""
    if not I.is_homogeneous():
        raise ValueError("segre_class needs a homogeneous ideal")
    if I.is_zero():
        raise ValueError("the zero ideal cuts out all of P^n")
    if I.is_unit():
        raise ValueError("the unit ideal cuts out nothing")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n = I.nvars - 1
    d = I.max_degree if d is None else d
    if d < I.max_degree:
        raise ValueError(f"degree {d} is below the generator degree {I.max_degree}")
    z = hilbert(I).proj_dimension
    if z < 0:
        return SegreClassVector(n, -1, (), d, (), trials)
    seeds = tuple(derive_seed(seed, "trial", t) for t in range(trials))
    runs = [_solve_once(I, n, z, d, s) for s in seeds]
    vectors = [tuple(v) for v, _ in runs]
    if len(set(vectors)) > 1:
        raise GenericityError(f"independent trials disagree: {vectors}", vectors)
    return SegreClassVector(n, z, vectors[0], d, seeds, trials, tuple(runs[0][1]))


def contribution(S: SegreClassVector, p: int, d: int) -> int:
    """Dimension-(n-p) degree of c(O(d))^p capped with the class ``S``."""
    m = S.ambient_dim - p
    return sum(comb(p, j - m) * d ** (j - m) * S[j] for j in range(max(m, 0), S.z_dim + 1))


def hilbert_samuel_sum(I: Ideal, trials: int = 2, seed: int = 0) -> int:
    """Sum of Samuel multiplicities of P^n along a zero-dimensional ``Z``."""
    if hilbert(I).proj_dimension != 0:
        raise ValueError("hilbert_samuel_sum needs a zero-dimensional scheme")
    return segre_class(I, trials=trials, seed=seed)[0]
