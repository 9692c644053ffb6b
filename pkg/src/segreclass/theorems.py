"""Randomized checks of the general-cut and Segre-Bertini statements, plus CSM classes.

Every check returns a :class:`VerificationReport` whose ``passed`` flag is the
conjunction of its evidence records.  A record is ``"vacuous"`` when there is
nothing to compare; vacuous records never count as failures but are not
reported as passes either.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any

from .idealcalc import Ideal, equal_radicals, hilbert, irrelevant_ideal, saturate
from .polyring import CharacteristicError, Poly, linear_change, matrix_rank
from .segre import (AmbientClass, SegreClassVector, chern_mult, derive_seed, dual, general_elements,
                    segre_class, tensor)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

EULER_CAVEAT = ("computed over GF(p); equals the topological Euler characteristic only when "
                "the instance behaves like its characteristic-zero lift")


@dataclass
class Check:
    name: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    theorem: str
    input_digest: str
    seeds: list[int]
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    caveats: list[str] = field(default_factory=list)
    observations: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, ok: bool | None, **detail) -> Check:
        status = VACUOUS if ok is None else (PASS if ok else FAIL)
        c = Check(name, status, detail)
        self.checks.append(c)
        return c

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "input": self.input_digest,
            "seeds": list(self.seeds),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.observations:
            out["observations"] = dict(self.observations)
        if self.caveats:
            out["caveats"] = list(self.caveats)
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def to_text(self) -> str:
        lines = [f"theorem: {self.theorem}", f"input: {self.input_digest}",
                 f"seeds: {' '.join(str(s) for s in self.seeds)}",
                 f"pass: {'yes' if self.passed else 'no'}"]
        for c in self.checks:
            detail = " ".join(f"{k}={_fmt(v)}" for k, v in c.detail.items())
            lines.append(f"check {c.name}: {c.status} {detail}".rstrip())
        for k, v in self.observations.items():
            lines.append(f"observed {k}: {_fmt(v)}")
        for k, v in self.timings.items():
            lines.append(f"time {k}: {v:.2f}s")
        for cav in self.caveats:
            lines.append(f"caveat: {cav}")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, dict):
        return "{" + ",".join(f"{k}:{x}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


class _Timer:
    def __init__(self, report: VerificationReport, key: str):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.key] = self.report.timings.get(self.key, 0.0) + time.perf_counter() - self.t0


def _prep(I: Ideal, d: int | None) -> int:
    if not I.is_homogeneous():
        raise ValueError("input ideal must be homogeneous")
    if I.is_zero() or I.is_unit():
        raise ValueError("input ideal must be proper and nonzero")
    d = I.max_degree if d is None else d
    if d < I.max_degree:
        raise ValueError(f"degree {d} is below the generator degree {I.max_degree}")
    return d


def _segre_at(I: Ideal, d: int, trials: int, seed: int) -> SegreClassVector:
    return segre_class(I, max(d, I.max_degree), trials=trials, seed=seed)


def _compare(a: SegreClassVector, b: SegreClassVector, dims) -> tuple[bool, dict]:
    dims = list(dims)
    diffs = {str(k): (a[k], b[k]) for k in dims if a[k] != b[k]}
    return not diffs, diffs


def is_empty_scheme(I: Ideal) -> bool:
    return I.is_unit() or hilbert(I).proj_dimension < 0


def same_support(I: Ideal, J: Ideal) -> bool:
    """Equality of projective supports (two empty schemes count as equal)."""
    ei, ej = is_empty_scheme(I), is_empty_scheme(J)
    if ei or ej:
        return ei and ej
    return equal_radicals(I, J)


def same_scheme(I: Ideal, J: Ideal) -> bool:
    """Equality after saturating by the irrelevant ideal."""
    m = irrelevant_ideal(I.ring)
    return saturate(I, m)[0] == saturate(J, m)[0]


# -- general cuts ------------------------------------------------------------


def verify_main_a(I: Ideal, d: int | None = None, seed: int = 0, trials: int = 2) -> VerificationReport:
    """``n+1`` general elements: same support and the same Segre class."""
    d = _prep(I, d)
    n = I.nvars - 1
    s_cut = derive_seed(seed, "main-a", "cut")
    rep = VerificationReport("main-a", I.digest, [seed, s_cut])
    with _Timer(rep, "cut"):
        Jp = general_elements(I, d, n + 1, s_cut).ideal()
    with _Timer(rep, "support"):
        rep.add("support", equal_radicals(Jp, I), cuts=n + 1, d=d)
    with _Timer(rep, "segre"):
        sI = segre_class(I, d, trials=trials, seed=derive_seed(seed, "Z"))
        sJ = _segre_at(Jp, d, trials, derive_seed(seed, "Z'"))
    ok, diffs = _compare(sI, sJ, range(max(sI.z_dim, sJ.z_dim) + 1))
    ok = ok and sI.z_dim == sJ.z_dim
    rep.add("segre", ok, original=sI.as_dict(), cut=sJ.as_dict(), differences=diffs)
    rep.add("top-coefficient", sI[sI.z_dim] == sJ[sI.z_dim], original=sI[sI.z_dim], cut=sJ[sI.z_dim])
    return rep


def verify_main_b(I: Ideal, d: int | None = None, seed: int = 0, trials: int = 2) -> VerificationReport:
    """``n`` general elements: after excising the residual points, same support and class."""
    d = _prep(I, d)
    n = I.nvars - 1
    s_cut = derive_seed(seed, "main-b", "cut")
    rep = VerificationReport("main-b", I.digest, [seed, s_cut])
    with _Timer(rep, "cut"):
        J = general_elements(I, d, n, s_cut).ideal()
    with _Timer(rep, "excise"):
        S, _ = saturate(J, I)
        hS = hilbert(S)
        meet = hilbert(S + I).proj_dimension
        rep.add("disjoint", meet < 0, excised_dim=hS.proj_dimension, excised_degree=hS.degree,
                meet_dim=meet)
        J0, _ = saturate(J, S)
    with _Timer(rep, "support"):
        rep.add("support", same_support(J0, I))
    with _Timer(rep, "segre"):
        sI = segre_class(I, d, trials=trials, seed=derive_seed(seed, "Z"))
        s0 = _segre_at(J0, d, trials, derive_seed(seed, "Z-"))
    ok, diffs = _compare(sI, s0, range(max(sI.z_dim, s0.z_dim) + 1))
    ok = ok and sI.z_dim == s0.z_dim
    rep.add("segre", ok, original=sI.as_dict(), excised=s0.as_dict(), differences=diffs)
    rep.add("top-coefficient", sI[sI.z_dim] == s0[sI.z_dim], original=sI[sI.z_dim], excised=s0[sI.z_dim])
    with _Timer(rep, "scheme"):
        rep.observations["excised_equals_input_ideal"] = J0 == I
        rep.observations["excised_equals_input_scheme"] = same_scheme(J0, I)
    return rep


def admissible_c(I: Ideal) -> range:
    return range(0, hilbert(I).proj_dimension + 1)


def verify_b_prime(I: Ideal, c: int, d: int | None = None, seed: int = 0,
                   trials: int = 2) -> VerificationReport:
    """``n - c`` general elements: residual of dimension <= c, classes agree above c."""
    d = _prep(I, d)
    n = I.nvars - 1
    z = hilbert(I).proj_dimension
    if not 0 <= c <= z:
        raise ValueError(f"c must lie in 0..{z} (n - codim) for this input, got {c}")
    s_cut = derive_seed(seed, "b-prime", c, "cut")
    rep = VerificationReport(f"b-prime(c={c})", I.digest, [seed, s_cut])
    with _Timer(rep, "cut"):
        J = general_elements(I, d, n - c, s_cut).ideal()
    with _Timer(rep, "residual"):
        R, _ = saturate(J, I)
        hR = hilbert(R)
        rep.add("residual-dimension", hR.proj_dimension <= c, residual_dim=hR.proj_dimension,
                residual_degree=hR.degree, bound=c)
        meet = hilbert(R + I).proj_dimension
        rep.add("residual-meets-Z", meet < c, meet_dim=meet, bound=c)
    dims = list(range(c + 1, z + 1))
    if not dims:
        rep.add("segre-above-c", None, dims=[], reason=f"dim Z = {z} <= c")
        return rep
    with _Timer(rep, "segre"):
        sI = segre_class(I, d, trials=trials, seed=derive_seed(seed, "Z"))
        sJ = _segre_at(J, d, trials, derive_seed(seed, "Z_c", c))
    ok, diffs = _compare(sI, sJ, dims)
    rep.add("segre-above-c", ok, dims=dims,
            original={str(k): sI[k] for k in reversed(dims)},
            cut={str(k): sJ[k] for k in reversed(dims)}, differences=diffs)
    return rep


# -- hypersurfaces -------------------------------------------------------------


@dataclass(frozen=True)
class HypersurfaceInput:
    F: Poly

    def __post_init__(self):
        if self.F.is_zero():
            raise ValueError("hypersurface equation is zero")
        if not self.F.is_homogeneous():
            raise ValueError("hypersurface equation must be homogeneous")
        if self.F.degree < 1:
            raise ValueError("hypersurface equation must have positive degree")

    @property
    def degree(self) -> int:
        return self.F.degree

    @property
    def ambient_dim(self) -> int:
        return self.F.ring.nvars - 1


def _as_hypersurface(X) -> HypersurfaceInput:
    return X if isinstance(X, HypersurfaceInput) else HypersurfaceInput(X)


def singular_scheme(X) -> Ideal:
    """``(F, dF/dx_0, ..., dF/dx_n)``."""
    X = _as_hypersurface(X)
    F = X.F
    p = F.ring.modulus
    if X.degree % p == 0:
        raise CharacteristicError(f"degree {X.degree} is divisible by the characteristic {p}")
    return Ideal(F.ring, (F,) + tuple(F.diff(i) for i in range(F.ring.nvars)))


def hyperplane_change(ring, seed: int) -> list[list[int]]:
    """Seeded random invertible matrix; redrawn until invertible."""
    rng = random.Random(seed)
    n = ring.nvars
    p = ring.modulus
    while True:
        M = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if matrix_rank(M, p) == n:
            return M


def restrict_polys(polys, M) -> list[Poly]:
    """Apply the change ``M``, then set the last coordinate to zero."""
    if not polys:
        return []
    ring = polys[0].ring
    small = ring.drop_last()
    out = []
    for f in linear_change(list(polys), M):
        out.append(Poly(small, {m[:-1]: c for m, c in f.coeffs.items() if m[-1] == 0}))
    return out


def restrict_to_hyperplane(I: Ideal, seed: int) -> Ideal:
    """Intersection with a general hyperplane, as an ideal of P^(n-1)."""
    if I.nvars < 2:
        raise ValueError("need at least P^1")
    M = hyperplane_change(I.ring, seed)
    return Ideal(I.ring.drop_last(), tuple(restrict_polys(list(I.gens), M)))


def verify_segre_bertini(X, seed: int = 0, trials: int = 2) -> VerificationReport:
    """Compare H meet Sing(X) with Sing(H meet X) inside a general hyperplane H = P^(n-1)."""
    X = _as_hypersurface(X)
    F = X.F
    n = X.ambient_dim
    if n < 2:
        raise ValueError("Segre-Bertini needs n >= 2")
    sing = singular_scheme(X)
    s_h = derive_seed(seed, "hyperplane")
    rep = VerificationReport("segre-bertini", sing.digest, [seed, s_h])
    with _Timer(rep, "restrict"):
        M = hyperplane_change(F.ring, s_h)
        restricted = restrict_polys([F] + list(sing.gens), M)
        Fbar = restricted[0]
        A = Ideal(F.ring.drop_last(), tuple(restricted[1:]))
        if Fbar.is_zero():
            raise ValueError("hyperplane contained in the hypersurface; reseed")
        B = singular_scheme(Fbar)
    hSing = hilbert(sing)
    emptyA, emptyB = is_empty_scheme(A), is_empty_scheme(B)
    with _Timer(rep, "support"):
        if emptyA or emptyB:
            rep.add("support", emptyA and emptyB, empty_A=emptyA, empty_B=emptyB,
                    sing_dim=hSing.proj_dimension)
        else:
            rep.add("support", equal_radicals(A, B), sing_dim=hSing.proj_dimension)
    if emptyA and emptyB:
        rep.add("segre", None, reason="both sides empty")
        rep.add("shift", None, reason=f"dim Sing(X) = {hSing.proj_dimension} < 1")
        return rep
    if emptyA != emptyB:
        rep.add("segre", False, reason="exactly one side is empty")
        return rep
    with _Timer(rep, "segre"):
        sA = segre_class(A, trials=trials, seed=derive_seed(seed, "A"))
        sB = segre_class(B, trials=trials, seed=derive_seed(seed, "B"))
    ok, diffs = _compare(sA, sB, range(max(sA.z_dim, sB.z_dim) + 1))
    rep.add("segre", ok and sA.z_dim == sB.z_dim, A=sA.as_dict(), B=sB.as_dict(), differences=diffs)
    with _Timer(rep, "shift"):
        sS = segre_class(sing, trials=trials, seed=derive_seed(seed, "Sing"))
    dims = list(range(0, sS.z_dim))
    shifted = {str(k): sS[k + 1] for k in reversed(dims)}
    ok = all(sB[k] == sS[k + 1] for k in dims) and sB.z_dim == sS.z_dim - 1
    rep.add("shift", ok, B=sB.as_dict(), sing=sS.as_dict(), sing_shifted=shifted)
    return rep


@dataclass(frozen=True)
class CSMResult:
    csm: AmbientClass
    euler: int
    sing_segre: SegreClassVector | None
    caveat: str = EULER_CAVEAT

    def to_dict(self) -> dict:
        return {"ambient": self.csm.ambient_dim, "csm": self.csm.as_dict(), "euler": self.euler,
                "sing_segre": None if self.sing_segre is None else self.sing_segre.as_dict(),
                "caveat": self.caveat}


def csm_hypersurface(X, trials: int = 2, seed: int = 0) -> CSMResult:
    """c_SM(X) = c(T P^n) cap ( s(X) + c(O(e))^-1 cap (s(Sing X)^dual tensor O(e)) )."""
    X = _as_hypersurface(X)
    n, e = X.ambient_dim, X.degree
    sing = singular_scheme(X)
    fundamental = AmbientClass.from_dims(n, {n - 1: e})
    s_X = chern_mult(fundamental, e, -1)
    if is_empty_scheme(sing):
        sS = None
        s_sing = AmbientClass.zero(n)
    else:
        sS = segre_class(sing, trials=trials, seed=seed)
        s_sing = sS.to_class()
    correction = chern_mult(tensor(dual(s_sing), e), e, -1)
    csm = chern_mult(s_X + correction, 1, n + 1)
    return CSMResult(csm, csm[0], sS)
