"""Command-line front end.

Subcommands ``info``, ``encode``, ``verify``, ``roots`` and ``degree``.
Exit status is 0 on success, 1 when a verification check fails and 2 for
unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .encoders import METHODS, DomainError, deserialize_witness, encode, serialize_witness
from .game import GameFormatError, deserialize_game, format_number, parse_number, serialize_game
from .polysys import (
    PolySystem,
    PolySyntaxError,
    capacity_3p,
    degree_profile,
    from_coefficients,
    parse_system,
    univariate_coefficients,
)
from .verify import (
    DegreeError,
    check_points,
    cluster_points,
    grid_completeness,
    local_degree,
    roots_in_unit_interval,
)

__all__ = ["RunConfig", "main", "capacity_summary"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_FLOAT_TOL = 1e-9


class InputError(Exception):
    """Bad file or argument; reported on stderr with exit status 2."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...] = ()
    out: str | None = None
    method: str = "3p"
    tol: object = None
    grid: int | None = None
    reduce_players: bool = False
    normalize: bool = False

    def __post_init__(self):
        if self.tol is not None and self.tol < 0:
            raise InputError("tolerance must be non-negative")
        if self.grid is not None and self.grid < 2:
            raise InputError("grid resolution must be at least 2")
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}")


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _load_system(path: str) -> PolySystem:
    try:
        return parse_system(_read(path))
    except PolySyntaxError as exc:
        raise InputError(f"{path}: {exc}") from None


def _number(token: str):
    try:
        return parse_number(token)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {token!r}") from None


def _coefficients(args: Sequence[str]) -> list:
    """Coefficients from a univariate system file or from literal values (lowest degree first)."""
    if len(args) == 1 and Path(args[0]).is_file():
        sys_ = _load_system(args[0])
        if sys_.n != 1 or sys_.m != 1:
            raise InputError(f"{args[0]}: expected one equation in one unknown")
        return univariate_coefficients(sys_[0])
    tokens = [t for a in args for t in re.split(r"[,\s]+", a.strip()) if t]
    if not tokens:
        raise InputError("no coefficients given")
    coeffs = [_number(t) for t in tokens]
    if any(not isinstance(c, Fraction) for c in coeffs):
        raise InputError("coefficients must be integers or p/q rationals")
    if all(c == 0 for c in coeffs):
        raise InputError("zero polynomial")
    return coeffs


_ROOT_LINE = re.compile(r"^root\s+(?P<exact>\S+)\s+exact$|^root\s+\(.*\]\s+~\s+(?P<approx>\S+)$")


def _parse_points(text: str, source: str) -> list[tuple]:
    """Point lines (whitespace or comma separated) or the output of ``roots``."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("count:"):
            continue
        m = _ROOT_LINE.match(line)
        if m:
            points.append((_number(m["exact"] or m["approx"]),))
            continue
        if line.startswith("root"):
            raise InputError(f"{source}:{lineno}: malformed root line")
        points.append(tuple(_number(t) for t in re.split(r"[,\s]+", line) if t))
    return points


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def capacity_summary(sys_: PolySystem, reduce_players: bool = False) -> str:
    """``D=.. D'=.. 3p:(..) np:N players 1d:(..)``."""
    profile = degree_profile(sys_)
    D, formats = capacity_3p(profile)
    dprime = sum(profile.var_max)
    n, m = profile.n, profile.m
    players = dprime + (m if reduce_players and n > m else max(m, n))
    if n == 1 and m == 1:
        e = math.ceil(profile.max_degree / 2)
        one_d = f"(2,{e + 1},{e + 1})"
    else:
        one_d = "n/a"
    three = "(" + ",".join(str(k) for k in formats) + ")"
    return f"D={D} D'={dprime} 3p:{three} np:{players} players 1d:{one_d}"


def cmd_info(cfg: RunConfig, out) -> int:
    sys_ = _load_system(cfg.inputs[0])
    profile = degree_profile(sys_)
    print(f"n={profile.n} m={profile.m}", file=out)
    print("degrees (rows: equations, columns: x1..xn):", file=out)
    for j, row in enumerate(profile.table, start=1):
        print(f"  eq{j}: " + " ".join(str(d) for d in row), file=out)
    print(capacity_summary(sys_, cfg.reduce_players), file=out)
    return EXIT_OK


def cmd_encode(cfg: RunConfig, out, samples: Sequence[tuple] = ()) -> int:
    path = cfg.inputs[0]
    if cfg.method == "1d" and not Path(path).is_file():
        sys_ = PolySystem((from_coefficients(_coefficients(cfg.inputs)),))
    else:
        sys_ = _load_system(path)
    try:
        game, witness = encode(
            cfg.method,
            sys_,
            normalize=cfg.normalize,
            reduce_players=cfg.reduce_players,
            sample_points=samples or None,
        )
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise InputError(str(exc)) from None
    game_text, witness_text = serialize_game(game), serialize_witness(witness)
    if cfg.out:
        base = Path(cfg.out)
        game_path = base.with_name(base.name + ".game")
        witness_path = base.with_name(base.name + ".witness")
        try:
            game_path.write_text(game_text, encoding="utf-8")
            witness_path.write_text(witness_text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{cfg.out}: {exc.strerror or exc}") from None
        print(f"game: {game_path} strategies {' '.join(map(str, game.strategy_counts))}", file=out)
        print(f"witness: {witness_path}", file=out)
    else:
        out.write(game_text)
        out.write("---\n")
        out.write(witness_text)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, points: Sequence[tuple], points_file: str | None) -> int:
    game_path, witness_path = cfg.inputs[:2]
    try:
        game = deserialize_game(_read(game_path))
    except GameFormatError as exc:
        raise InputError(f"{game_path}: {exc}") from None
    try:
        witness = deserialize_witness(_read(witness_path))
    except ValueError as exc:
        raise InputError(f"{witness_path}: {exc}") from None
    points = list(points)
    if points_file:
        points += _parse_points(_read(points_file), points_file)
    if not points and cfg.grid is None:
        raise InputError("nothing to verify: give --point, --points-file or --grid")
    exact = all(isinstance(x, Fraction) for p in points for x in p)
    tol = cfg.tol if cfg.tol is not None else (0 if exact else DEFAULT_FLOAT_TOL)
    try:
        report = check_points(game, witness, points, tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if points:
        out.write(report.to_text())
    ok = report.passed
    if cfg.grid is not None:
        gtol = cfg.tol if cfg.tol is not None else DEFAULT_FLOAT_TOL
        base = points[0] if points and witness.n > 1 else None
        try:
            hits = grid_completeness(game, witness, grid=cfg.grid, tol=gtol, base_point=base)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        clusters = cluster_points(hits, 2 / (cfg.grid - 1))
        print(f"grid: {cfg.grid} points, {len(hits)} passing, {len(clusters)} clusters", file=out)
        for c in clusters:
            print(f"cluster {format_number(c[0])} .. {format_number(c[-1])}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_roots(cfg: RunConfig, out) -> int:
    coeffs = _coefficients(cfg.inputs)
    out.write(roots_in_unit_interval(coeffs).to_text())
    return EXIT_OK


def cmd_degree(cfg: RunConfig, out, center, radius, samples: int) -> int:
    sys_ = _load_system(cfg.inputs[0])
    if sys_.n != 2 or sys_.m != 2:
        raise InputError("degree needs two equations in two unknowns")
    try:
        deg = local_degree(tuple(sys_), center, radius, samples)
    except DegreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(deg, file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _point_arg(text: str) -> tuple:
    return tuple(_number(t) for t in re.split(r"[,\s]+", text.strip()) if t)


_NEGATIVE = re.compile(r"^-(\d+(/\d+)?|\d*\.\d+([eE][-+]?\d+)?|\d+[eE][-+]?\d+)$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nashcompile",
        description="Compile polynomial systems into games whose totally mixed equilibria match them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="degree table and game sizes for a system file")
    p.add_argument("input")
    p.add_argument("--reduce-players", action="store_true")

    p = sub.add_parser("encode", help="write the game and witness for a system")
    p.add_argument("input", nargs="+", help="system file, or coefficients with --method 1d")
    p.add_argument("--method", choices=METHODS, default="3p")
    p.add_argument("--normalize", action="store_true", help="map the whole variety into the open box first")
    p.add_argument("--reduce-players", action="store_true")
    p.add_argument("--sample", action="append", default=[], metavar="POINT",
                   help="point of the variety to check against the box hypothesis")
    p.add_argument("--out", help="output prefix; writes PREFIX.game and PREFIX.witness")

    p = sub.add_parser("verify", help="check equilibria of an encoded game")
    p.add_argument("game")
    p.add_argument("witness")
    p.add_argument("--point", action="append", default=[], metavar="POINT")
    p.add_argument("--points-file", help="one point per line, or the output of 'roots'")
    p.add_argument("--tol")
    p.add_argument("--grid", type=int, help="also scan this many grid points along the first input")

    p = sub.add_parser("roots", help="roots in (0, 1) of a univariate polynomial")
    p.add_argument("coefficients", nargs="+", help="system file, or coefficients lowest degree first")

    p = sub.add_parser("degree", help="local degree of a planar map")
    p.add_argument("input", help="system file with two equations in x1 x2")
    p.add_argument("--center", default="0,0")
    p.add_argument("--radius", default="1/2")
    p.add_argument("--samples", type=int, default=64)
    # let "-3/2" and "-1e-3" through as positional numbers
    for action in sub.choices.values():
        action._negative_number_matcher = _NEGATIVE
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _number(args.tol) if getattr(args, "tol", None) else None
        if args.command == "info":
            cfg = RunConfig("info", (args.input,), reduce_players=args.reduce_players)
            return cmd_info(cfg, out)
        if args.command == "encode":
            cfg = RunConfig(
                "encode",
                tuple(args.input),
                out=args.out,
                method=args.method,
                normalize=args.normalize,
                reduce_players=args.reduce_players,
            )
            return cmd_encode(cfg, out, [_point_arg(s) for s in args.sample])
        if args.command == "verify":
            cfg = RunConfig("verify", (args.game, args.witness), tol=tol, grid=args.grid)
            return cmd_verify(cfg, out, [_point_arg(s) for s in args.point], args.points_file)
        if args.command == "roots":
            return cmd_roots(RunConfig("roots", tuple(args.coefficients)), out)
        cfg = RunConfig("degree", (args.input,))
        center = _point_arg(args.center)
        if len(center) != 2:
            raise InputError("center needs two coordinates")
        return cmd_degree(cfg, out, center, _number(args.radius), args.samples)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
