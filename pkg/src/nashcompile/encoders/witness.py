"""Replayable encoding witnesses.

A witness turns a point of the encoded variety into the full mixed profile
that realises it: it reruns the gadget chain, rescales registers into
probabilities, places fixed probabilities, and fills free simplex blocks
with their centre.  Players and strategies are zero-based in memory and
one-based in the text format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from ..game import MixedProfile, format_number
from ..normalize import CoordinateMap
from .chain import AffineScaling, ChainStep, Reg, chain_values

__all__ = [
    "XPow",
    "RegValue",
    "Linear",
    "EncodingWitness",
    "DomainError",
    "WitnessFormatError",
    "replay_witness",
    "check_samples",
    "serialize_witness",
    "deserialize_witness",
]

Coord = tuple[int, int]


@dataclass(frozen=True)
class XPow:
    """Input coordinate ``x[var]`` raised to ``power``."""

    var: int
    power: int = 1


@dataclass(frozen=True)
class RegValue:
    """The rescaled value of a chain register."""

    reg: int


@dataclass(frozen=True)
class Linear:
    """``const + sum(coef * sigma[player][j])`` over already assigned coordinates."""

    const: Fraction
    terms: tuple[tuple[Coord, Fraction], ...] = ()


Source = Union[XPow, RegValue, Linear]


class DomainError(ValueError):
    """The replay point lies outside the region the encoding covers."""


@dataclass(frozen=True)
class EncodingWitness:
    method: str
    n: int
    strategy_counts: tuple[int, ...]
    domain: str
    chain: tuple[ChainStep, ...] = ()
    scalings: dict[int, AffineScaling] = field(default_factory=dict)
    sources: tuple[tuple[Coord, Source], ...] = ()
    fixed: tuple[tuple[Coord, Fraction], ...] = ()
    free: tuple[Coord, ...] = ()
    normalization: CoordinateMap | None = None

    def __post_init__(self):
        if self.method not in ("3p", "np", "1d"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.domain not in ("simplex", "cube"):
            raise ValueError(f"unknown domain {self.domain!r}")
        object.__setattr__(self, "strategy_counts", tuple(self.strategy_counts))
        object.__setattr__(self, "chain", tuple(self.chain))
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "fixed", tuple((c, Fraction(v)) for c, v in self.fixed))
        object.__setattr__(self, "free", tuple(self.free))
        seen = [c for c, _ in self.sources] + [c for c, _ in self.fixed] + list(self.free)
        expected = {(p, j) for p, k in enumerate(self.strategy_counts) for j in range(1, k)}
        if len(seen) != len(set(seen)) or set(seen) != expected:
            raise ValueError("witness must assign every coordinate exactly once")

    @property
    def simplex_dim(self) -> int:
        return len(self.free)

    def in_domain(self, point: Sequence) -> bool:
        if len(point) != self.n:
            return False
        if any(not x > 0 for x in point):
            return False
        if self.domain == "simplex":
            return sum(point) < 1
        return all(x < 1 for x in point)


def _source_value(src: Source, point, regs, scalings, probs):
    if isinstance(src, XPow):
        return point[src.var] ** src.power
    if isinstance(src, RegValue):
        return scalings[src.reg].to_prob(regs[src.reg])
    total = src.const
    for (p, j), coef in src.terms:
        total = total + coef * probs[p][j]
    return total


def replay_witness(witness: EncodingWitness, point: Sequence) -> MixedProfile:
    """Full profile for a variety point.

    With a normalisation attached, ``point`` is in the original coordinates.
    Points off the variety still replay; their indifference residuals are
    nonzero and must be checked by the caller.
    """
    point = tuple(point)
    if len(point) != witness.n:
        raise ValueError(f"point has {len(point)} coordinates, witness expects {witness.n}")
    if witness.normalization is not None:
        point = witness.normalization.to_box(point)
    if not witness.in_domain(point):
        raise DomainError(f"point {point} is outside the open {witness.domain}")
    exact = all(isinstance(x, (int, Fraction)) for x in point)
    if exact:
        point = tuple(Fraction(x) for x in point)
    regs, _ = chain_values(witness.chain, point)

    probs: list[list] = [[None] * k for k in witness.strategy_counts]
    for (p, j), value in witness.fixed:
        probs[p][j] = value if exact else float(value)
    pending = []
    for coord, src in witness.sources:
        if isinstance(src, Linear):
            pending.append((coord, src))
            continue
        p, j = coord
        probs[p][j] = _source_value(src, point, regs, witness.scalings, probs)
    for (p, j), src in pending:
        probs[p][j] = _source_value(src, point, regs, witness.scalings, probs)

    free_by_player: dict[int, list[int]] = {}
    for p, j in witness.free:
        free_by_player.setdefault(p, []).append(j)
    for p, js in free_by_player.items():
        assigned = sum((x for x in probs[p][1:] if x is not None), Fraction(0) if exact else 0.0)
        centre = (1 - assigned) / (len(js) + 1)
        for j in js:
            probs[p][j] = centre
    for row in probs:
        row[0] = 1 - sum(row[1:])
    return MixedProfile(tuple(probs), exact)


def check_samples(witness: EncodingWitness, points: Sequence[Sequence] | None) -> None:
    """Raise ``DomainError`` for a sample point of the variety outside the domain."""
    for point in points or ():
        y = tuple(point)
        if witness.normalization is not None:
            y = witness.normalization.to_box(y)
        if not witness.in_domain(y):
            raise DomainError(
                f"sample point ({format_point(point)}) violates the open {witness.domain} hypothesis;"
                " normalise the system first"
            )


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


class WitnessFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _coord(c: Coord) -> str:
    return f"{c[0] + 1}.{c[1]}"


def _operand_text(op) -> str:
    return str(op) if isinstance(op, Reg) else str(Fraction(op))


def _source_text(src: Source) -> str:
    if isinstance(src, XPow):
        return f"x{src.var + 1}" + (f"^{src.power}" if src.power != 1 else "")
    if isinstance(src, RegValue):
        return str(Reg(src.reg))
    parts = ["lin", str(src.const)] + [f"{coef}*{_coord(c)}" for c, coef in src.terms]
    return " ".join(parts)


def serialize_witness(w: EncodingWitness) -> str:
    lines = [
        f"method: {w.method}",
        f"inputs: {w.n}",
        "strategies: " + " ".join(str(k) for k in w.strategy_counts),
        f"domain: {w.domain}",
        "normalize: "
        + ("none" if w.normalization is None else f"delta={w.normalization.delta}"),
        "chain:",
    ]
    for step in w.chain:
        line = (
            f"{'0' if step.target is None else Reg(step.target)} = x{step.multiplier + 1}"
            f" * {_operand_text(step.factor)} + {_operand_text(step.addend)}"
        )
        if step.target is not None and step.target in w.scalings:
            sc = w.scalings[step.target]
            line += f" | s={sc.s} delta={sc.delta} lo={sc.lo} hi={sc.hi}"
        lines.append(f"  {line} @eq{step.equation + 1}")
    extra = sorted(set(w.scalings) - {s.target for s in w.chain if s.target is not None})
    for reg in extra:
        sc = w.scalings[reg]
        lines.append(f"  {Reg(reg)} | s={sc.s} delta={sc.delta} lo={sc.lo} hi={sc.hi}")
    lines.append("map:")
    lines += [f"  {_coord(c)} {_source_text(src)}" for c, src in w.sources]
    lines.append("fixed:")
    lines += [f"  {_coord(c)} {v}" for c, v in w.fixed]
    lines.append(f"simplex: {w.simplex_dim}")
    lines.append(("free: " + " ".join(_coord(c) for c in w.free)).rstrip())
    return "\n".join(lines) + "\n"


_STEP = re.compile(
    r"^(?P<lhs>0|h\d+)\s*=\s*x(?P<mult>\d+)\s*\*\s*(?P<factor>\S+)\s*\+\s*(?P<addend>\S+)"
    r"(?:\s*\|\s*(?P<scale>[^@]*))?\s*(?:@eq(?P<eq>\d+))?$"
)
_SCALE_ONLY = re.compile(r"^(?P<lhs>h\d+)\s*\|\s*(?P<scale>.*)$")


def _parse_operand(tok: str, lineno: int):
    if tok.startswith("h"):
        return Reg(int(tok[1:]) - 1)
    try:
        return Fraction(tok)
    except ValueError:
        raise WitnessFormatError(f"bad operand {tok!r}", lineno) from None


def _parse_scale(text: str, lineno: int) -> AffineScaling:
    fields = dict(kv.split("=", 1) for kv in text.split())
    try:
        return AffineScaling(*(Fraction(fields[k]) for k in ("s", "delta", "lo", "hi")))
    except (KeyError, ValueError) as exc:
        raise WitnessFormatError(f"bad scaling ({exc})", lineno) from None


def _parse_coord(tok: str, lineno: int) -> Coord:
    m = re.fullmatch(r"(\d+)\.(\d+)", tok)
    if not m:
        raise WitnessFormatError(f"bad coordinate {tok!r}", lineno)
    return int(m.group(1)) - 1, int(m.group(2))


def _parse_source(text: str, lineno: int) -> Source:
    tokens = text.split()
    if tokens[0] == "lin":
        terms = []
        for tok in tokens[2:]:
            coef, _, coord = tok.partition("*")
            terms.append((_parse_coord(coord, lineno), Fraction(coef)))
        return Linear(Fraction(tokens[1]), tuple(terms))
    m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tokens[0])
    if m:
        return XPow(int(m.group(1)) - 1, int(m.group(2) or 1))
    m = re.fullmatch(r"h(\d+)", tokens[0])
    if m:
        return RegValue(int(m.group(1)) - 1)
    raise WitnessFormatError(f"bad source {text!r}", lineno)


def deserialize_witness(text: str) -> EncodingWitness:
    header: dict[str, str] = {}
    section = None
    chain: list[ChainStep] = []
    scalings: dict[int, AffineScaling] = {}
    sources, fixed, free = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if sep and key in ("method", "inputs", "strategies", "domain", "normalize", "simplex", "free"):
            header[key] = rest.strip()
            section = None
            if key == "free":
                free = [_parse_coord(t, lineno) for t in rest.split()]
            continue
        if sep and key in ("chain", "map", "fixed") and not rest.strip():
            section = key
            continue
        try:
            if section == "chain":
                m = _STEP.match(line)
                if m:
                    target = None if m["lhs"] == "0" else int(m["lhs"][1:]) - 1
                    chain.append(
                        ChainStep(
                            target,
                            int(m["mult"]) - 1,
                            _parse_operand(m["factor"], lineno),
                            _parse_operand(m["addend"], lineno),
                            int(m["eq"]) - 1 if m["eq"] else 0,
                        )
                    )
                    if m["scale"]:
                        scalings[target] = _parse_scale(m["scale"], lineno)
                    continue
                m = _SCALE_ONLY.match(line)
                if not m:
                    raise WitnessFormatError(f"bad chain line {line!r}", lineno)
                scalings[int(m["lhs"][1:]) - 1] = _parse_scale(m["scale"], lineno)
            elif section == "map":
                coord, _, src = line.partition(" ")
                sources.append((_parse_coord(coord, lineno), _parse_source(src, lineno)))
            elif section == "fixed":
                coord, _, val = line.partition(" ")
                fixed.append((_parse_coord(coord, lineno), Fraction(val.strip())))
            else:
                raise WitnessFormatError(f"unexpected line {line!r}", lineno)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, WitnessFormatError):
                raise
            raise WitnessFormatError(str(exc), lineno) from None
    missing = {"method", "inputs", "strategies", "domain"} - set(header)
    if missing:
        raise WitnessFormatError(f"missing header(s): {', '.join(sorted(missing))}", 1)
    n = int(header["inputs"])
    norm = header.get("normalize", "none")
    normalization = None
    if norm != "none":
        normalization = CoordinateMap(n, Fraction(norm.partition("=")[2]))
    if int(header.get("simplex", len(free))) != len(free):
        raise WitnessFormatError("simplex dimension does not match free list", 1)
    try:
        return EncodingWitness(
            header["method"],
            n,
            tuple(int(k) for k in header["strategies"].split()),
            header["domain"],
            tuple(chain),
            scalings,
            tuple(sources),
            tuple(fixed),
            tuple(free),
            normalization,
        )
    except ValueError as exc:
        raise WitnessFormatError(str(exc), 1) from None


def format_point(point: Sequence) -> str:
    return " ".join(format_number(x) for x in point)
