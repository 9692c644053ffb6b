"""Command-line front end.

Ideal files look like::

    # comment
    ring 32003 [x,y,z,w]
    z^2, y*z, x*z
    y^2*w - x^2*(x+w)

Exit codes: 0 success, 1 input error, 2 genericity or verification failure,
3 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .groebner import ResourceError
from .idealcalc import Ideal, hilbert
from .polyring import CharacteristicError, ParseError, Poly, Ring, is_prime
from .segre import GenericityError, derive_seed, hilbert_samuel_sum, segre_class
from .theorems import (admissible_c, csm_hypersurface, verify_b_prime, verify_main_a, verify_main_b,
                       verify_segre_bertini)

EXIT_OK, EXIT_INPUT, EXIT_GENERICITY, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(ValueError):
    pass


class VerificationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class IdealFile:
    modulus: int
    variables: tuple[str, ...]
    generators: tuple[str, ...]

    def ring(self, prime: int | None = None) -> Ring:
        return Ring(prime or self.modulus, self.variables)

    def ideal(self, prime: int | None = None) -> Ideal:
        ring = self.ring(prime)
        I = Ideal(ring, tuple(ring.parse(g) for g in self.generators))
        if not I.is_homogeneous():
            raise InputError("generators must be homogeneous")
        return I

    def hypersurface(self, prime: int | None = None) -> Poly:
        if len(self.generators) != 1:
            raise InputError(f"hypersurface commands need exactly one generator, got {len(self.generators)}")
        F = self.ideal(prime).gens
        if not F:
            raise InputError("hypersurface equation is zero")
        return F[0]


def parse_ideal_file(text: str) -> IdealFile:
    header = None
    body: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        for piece in line.split(","):
            piece = piece.strip()
            if piece:
                body.append(piece)
    if header is None:
        raise InputError("missing 'ring <prime> [vars]' header")
    modulus, names = header
    if not body:
        raise InputError("no generators")
    ring = Ring(modulus, names)
    for g in body:
        ring.parse(g)
    return IdealFile(modulus, names, tuple(body))


def _parse_header(line: str, lineno: int):
    parts = line.split(None, 2)
    if len(parts) != 3 or parts[0] != "ring":
        raise InputError(f"line {lineno}: expected 'ring <prime> [v1,v2,...]'")
    try:
        modulus = int(parts[1])
    except ValueError:
        raise InputError(f"line {lineno}: modulus {parts[1]!r} is not an integer") from None
    if not is_prime(modulus):
        raise InputError(f"line {lineno}: modulus {modulus} is not prime")
    spec = parts[2].strip()
    if not (spec.startswith("[") and spec.endswith("]")):
        raise InputError(f"line {lineno}: variable list must be bracketed")
    names = tuple(v.strip() for v in spec[1:-1].split(",") if v.strip())
    if not names:
        raise InputError(f"line {lineno}: empty variable list")
    for v in names:
        if not v.isidentifier():
            raise InputError(f"line {lineno}: bad variable name {v!r}")
    if len(set(names)) != len(names):
        raise InputError(f"line {lineno}: repeated variable names")
    return modulus, names


def load_ideal_file(path: str | Path) -> IdealFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ideal_file(text)


# -- commands ------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 2
    prime: int | None = None
    degree: int | None = None
    json: bool = False
    c: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise InputError("--trials must be at least 1")
        if self.prime is not None and not is_prime(self.prime):
            raise InputError(f"--prime {self.prime} is not prime")


def _degree(I: Ideal, cfg: RunConfig) -> int:
    if cfg.degree is None:
        return I.max_degree
    if cfg.degree < I.max_degree:
        raise InputError(f"--degree {cfg.degree} is below the generator degree {I.max_degree}")
    return cfg.degree


def cmd_compute(path, cfg: RunConfig) -> dict:
    I = load_ideal_file(path).ideal(cfg.prime)
    if I.is_unit():
        raise InputError("the unit ideal defines the empty scheme")
    d = _degree(I, cfg)
    S = segre_class(I, d, trials=cfg.trials, seed=cfg.seed)
    n = S.ambient_dim
    return {
        "ambient": n,
        "dim": S.z_dim,
        "segre": S.as_dict(),
        "d": d,
        "prime": I.ring.modulus,
        "residuals": {str(n - k): r for k, r in zip(range(S.z_dim, -1, -1), S.residuals)},
        "seeds": list(S.seeds),
        "trials": S.trials,
        "agree": True,
    }


def _trial_seeds(cfg: RunConfig, label: str) -> list[int]:
    return [derive_seed(cfg.seed, label, t) for t in range(cfg.trials)]


def _bundle(command: str, reports) -> dict:
    return {
        "command": command,
        "pass": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }


def cmd_verify(kind: str, path, cfg: RunConfig) -> tuple[dict, list]:
    I = load_ideal_file(path).ideal(cfg.prime)
    if I.is_unit() or hilbert(I).proj_dimension < 0:
        raise InputError("input defines the empty scheme")
    d = _degree(I, cfg)
    reports = []
    if kind == "b-prime":
        cs = list(admissible_c(I))
        if cfg.c is not None:
            if cfg.c not in cs:
                raise InputError(f"--c {cfg.c} outside the admissible range 0..{cs[-1]} (n - codim)")
            cs = [cfg.c]
        for s in _trial_seeds(cfg, kind):
            for c in cs:
                reports.append(verify_b_prime(I, c, d, seed=s))
    else:
        fn = {"main-a": verify_main_a, "main-b": verify_main_b}[kind]
        for s in _trial_seeds(cfg, kind):
            reports.append(fn(I, d, seed=s))
    return _bundle(f"verify {kind}", reports), reports


def cmd_bertini(path, cfg: RunConfig) -> tuple[dict, list]:
    F = load_ideal_file(path).hypersurface(cfg.prime)
    reports = [verify_segre_bertini(F, seed=s) for s in _trial_seeds(cfg, "bertini")]
    return _bundle("bertini", reports), reports


def cmd_csm(path, cfg: RunConfig) -> dict:
    F = load_ideal_file(path).hypersurface(cfg.prime)
    return csm_hypersurface(F, trials=cfg.trials, seed=cfg.seed).to_dict()


def cmd_mult(path, cfg: RunConfig) -> dict:
    I = load_ideal_file(path).ideal(cfg.prime)
    if I.is_unit() or hilbert(I).proj_dimension != 0:
        raise InputError("mult needs a zero-dimensional scheme")
    return {"ambient": I.nvars - 1, "mult": hilbert_samuel_sum(I, trials=cfg.trials, seed=cfg.seed)}


# -- argument handling -------------------------------------------------------------


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    p.add_argument("--trials", type=int, default=default)
    p.add_argument("--prime", type=int, default=default)
    p.add_argument("--degree", type=int, default=default)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segreclass",
                                     description="Segre classes of subschemes of P^n over GF(p).")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Segre class of the scheme in FILE")
    p.add_argument("file")
    _add_globals(p, suppress=True)

    p = sub.add_parser("verify", help="check a general-cut statement on FILE")
    p.add_argument("kind", choices=["main-a", "main-b", "b-prime"])
    p.add_argument("file")
    p.add_argument("--c", type=int, default=None)
    _add_globals(p, suppress=True)

    for name, text in (("bertini", "Segre-Bertini check for the hypersurface in FILE"),
                       ("csm", "CSM class and Euler characteristic of the hypersurface in FILE"),
                       ("mult", "sum of Samuel multiplicities of a zero-dimensional scheme")):
        p = sub.add_parser(name, help=text)
        p.add_argument("file")
        _add_globals(p, suppress=True)
    return parser


DEFAULT_TRIALS = {"compute": 2, "verify": 3, "bertini": 3, "csm": 2, "mult": 2}


def _emit(payload: dict, as_json: bool, out):
    if as_json:
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(_text(payload) + "\n")


def _text(payload: dict, indent: str = "") -> str:
    lines = []
    for k, v in payload.items():
        if isinstance(v, dict) and v and all(isinstance(x, (int, bool, str, float)) or x is None
                                             for x in v.values()):
            lines.append(f"{indent}{k}: " + " ".join(f"{a}={b}" for a, b in v.items()))
        elif isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        elif isinstance(v, list):
            lines.append(f"{indent}{k}: " + " ".join(str(x) for x in v))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    as_json = bool(getattr(args, "json", False))
    try:
        cfg = RunConfig(seed=args.seed,
                        trials=DEFAULT_TRIALS[args.command] if args.trials is None else args.trials,
                        prime=args.prime, degree=args.degree, json=as_json,
                        c=getattr(args, "c", None))
        if args.command == "compute":
            _emit(cmd_compute(args.file, cfg), as_json, out)
            return EXIT_OK
        if args.command == "csm":
            _emit(cmd_csm(args.file, cfg), as_json, out)
            return EXIT_OK
        if args.command == "mult":
            _emit(cmd_mult(args.file, cfg), as_json, out)
            return EXIT_OK
        if args.command == "verify":
            payload, reports = cmd_verify(args.kind, args.file, cfg)
        else:
            payload, reports = cmd_bertini(args.file, cfg)
        if as_json:
            _emit(payload, True, out)
        else:
            out.write("\n\n".join(r.to_text() for r in reports) + "\n")
            out.write(f"overall: {'pass' if payload['pass'] else 'FAIL'}\n")
        return EXIT_OK if payload["pass"] else EXIT_GENERICITY
    except (InputError, ParseError, CharacteristicError, ValueError, KeyError) as exc:
        return _fail(exc, "input", EXIT_INPUT, as_json, out, err)
    except GenericityError as exc:
        return _fail(exc, "genericity", EXIT_GENERICITY, as_json, out, err)
    except ResourceError as exc:
        return _fail(exc, "resource", EXIT_RESOURCE, as_json, out, err)


def _fail(exc, reason, code, as_json, out, err) -> int:
    msg = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
    if as_json:
        out.write(json.dumps({"error": {"reason": reason, "type": type(exc).__name__, "message": msg}}) + "\n")
    else:
        err.write(f"error ({reason}): {msg}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
