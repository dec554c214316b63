"""Exact multivariate polynomials over the rationals.

Polynomials are sparse maps from exponent tuples to nonzero ``Fraction``
coefficients.  Besides arithmetic this module holds the text format for
polynomial systems, per-equation degree profiles, the strategy-count
formulas derived from them, and the nested Horner decomposition that the
three-player encoder turns into a chain of gadget equations.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Number = Fraction | int

__all__ = [
    "Polynomial",
    "PolySystem",
    "PolySyntaxError",
    "DegreeProfile",
    "HornerForm",
    "parse_system",
    "format_system",
    "degree_profile",
    "capacity_3p",
    "capacity_np",
    "horner_decompose",
    "eval_poly",
]


class Polynomial:
    """Sparse polynomial in ``n`` variables with exact rational coefficients.

    Instances are treated as immutable; arithmetic always returns new
    objects.  Zero coefficients are never stored.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Number] | None = None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        self.n = n
        clean: dict[tuple[int, ...], Fraction] = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {n} variables")
            coef = Fraction(coef)
            if coef:
                clean[mono] = clean.get(mono, Fraction(0)) + coef
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, n: int, value: Number) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate polynomial ``x_{i+1}`` (``i`` is zero-based)."""
        mono = [0] * n
        mono[i] = 1
        return cls(n, {tuple(mono): 1})

    # -- accessors ----------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def variables(self) -> set[int]:
        """Zero-based indices of the variables that actually occur."""
        return {i for m in self._terms for i, e in enumerate(m) if e}

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------
    def __call__(self, *point):
        return eval_poly(self, point)

    def eval_float(self, *coords):
        """Vectorised float evaluation; ``coords`` may be numpy arrays."""
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        total = 0.0
        for mono, coef in self._terms.items():
            term = float(coef)
            for x, e in zip(coords, mono):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def substitute(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace ``x_i`` by ``polys[i]`` (all over a common ring)."""
        if len(polys) != self.n:
            raise ValueError("need one polynomial per variable")
        if not polys:
            return self
        m = polys[0].n
        result = Polynomial(m)
        cache: dict[tuple[int, int], Polynomial] = {}
        for mono, coef in self._terms.items():
            term = Polynomial.constant(m, coef)
            for i, e in enumerate(mono):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = polys[i] ** e
                    term = term * cache[(i, e)]
            result = result + term
        return result

    # -- printing -----------------------------------------------------
    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.n)]
        if not self._terms:
            return "0"
        parts = []
        for mono, coef in self.items():
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(mono) if e
            ]
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("- " if coef < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.n}, {self.to_string()!r})"


def eval_poly(poly: Polynomial, point: Sequence) -> Fraction:
    """Evaluate ``poly`` at ``point``; exact when the point is rational."""
    if len(point) != poly.n:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {poly.n}")
    total = Fraction(0)
    for mono, coef in poly._terms.items():
        term = coef
        for x, e in zip(point, mono):
            if e:
                term = term * x**e
        total = total + term
    return total


@dataclass(frozen=True)
class PolySystem:
    """``m`` polynomial equations ``F_j = 0`` sharing ``n`` variables."""

    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        if not self.polys:
            raise ValueError("a system needs at least one equation")
        n = self.polys[0].n
        if n < 1:
            raise ValueError("a system needs at least one variable")
        if any(p.n != n for p in self.polys):
            raise ValueError("all equations must share the variable count")

    @property
    def n(self) -> int:
        return self.polys[0].n

    @property
    def m(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, j):
        return self.polys[j]

    def evaluate(self, point: Sequence) -> list:
        return [eval_poly(p, point) for p in self.polys]


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


class PolySyntaxError(ValueError):
    """Malformed polynomial-system text; ``line``/``col`` are 1-based."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<var>[A-Za-z_]\w*)|(?P<op>[-+*^=()]))"
)
_VAR_NAME = re.compile(r"x([1-9]\d*)$")


def _tokenize(text: str, lineno: int, offset: int):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip())) + 1
            raise PolySyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", lineno, col)
        kind = match.lastgroup
        col = offset + match.start(kind) + 1
        tokens.append((kind, match.group(kind), col))
        pos = match.end()
    tokens.append(("end", "", offset + len(text) + 1))
    return tokens


class _ExprParser:
    def __init__(self, tokens, names: dict[str, int], n: int, lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.names = names
        self.n = n
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.lineno, tok[2])

    def expr(self) -> Polynomial:
        total = Polynomial(self.n)
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        total = total + sign * self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                term = self.term()
                total = total + term if val == "+" else total - term
            else:
                return total

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            result = result * self.factor()
        return result

    def power(self, base: Polynomial) -> Polynomial:
        if self.peek()[:2] != ("op", "^"):
            return base
        self.take()
        kind, exp, _ = self.take()
        if kind != "num" or "/" in exp:
            self.fail("exponent must be a non-negative integer", self.tokens[self.pos - 1])
        return base ** int(exp)

    def factor(self) -> Polynomial:
        kind, val, col = self.take()
        if kind == "num":
            return Polynomial.constant(self.n, Fraction(val.replace(" ", "")))
        if kind == "var":
            if val not in self.names:
                self.fail(f"unknown variable {val!r}", (kind, val, col))
            return self.power(Polynomial.variable(self.n, self.names[val]))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return self.power(inner)
        if kind == "end":
            self.fail("unexpected end of expression", (kind, val, col))
        self.fail(f"unexpected {val!r}", (kind, val, col))


def parse_system(text: str) -> PolySystem:
    """Parse the line-oriented ``vars:`` / ``eq:`` polynomial-system format.

    >>> sys = parse_system("vars: x1\\neq: 1*x1^2 - 1*x1 + 3/16 = 0")
    >>> str(sys[0])
    'x1^2 - x1 + 3/16'
    """
    names: dict[str, int] | None = None
    polys: list[Polynomial] = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("vars:"):
            if names is not None:
                raise PolySyntaxError("duplicate 'vars:' line", lineno, indent + 1)
            names = {}
            last = 0
            body = raw[indent + 5 :]
            for match in re.finditer(r"\S+", body):
                col = indent + 5 + match.start() + 1
                name = match.group()
                vm = _VAR_NAME.match(name)
                if not vm:
                    raise PolySyntaxError(f"bad variable name {name!r}", lineno, col)
                k = int(vm.group(1))
                if k <= last:
                    raise PolySyntaxError("variables must be listed in ascending order", lineno, col)
                last = k
                names[name] = len(names)
            if not names:
                raise PolySyntaxError("'vars:' lists no variables", lineno, indent + 6)
            continue
        if stripped.startswith("eq:"):
            if names is None:
                raise PolySyntaxError("'eq:' before 'vars:'", lineno, indent + 1)
            offset = indent + 3
            tokens = _tokenize(raw[offset:], lineno, offset)
            parser = _ExprParser(tokens, names, len(names), lineno)
            lhs = parser.expr()
            if parser.peek()[:2] != ("op", "="):
                parser.fail("expected '='")
            parser.take()
            if parser.peek()[0] == "end":
                parser.fail("missing right-hand side")
            rhs = parser.expr()
            if parser.peek()[0] != "end":
                parser.fail(f"unexpected {parser.peek()[1]!r}")
            poly = lhs - rhs
            if poly.is_zero():
                raise PolySyntaxError("equation is identically zero", lineno, indent + 1)
            polys.append(poly)
            continue
        raise PolySyntaxError("expected 'vars:', 'eq:' or a '#' comment", lineno, indent + 1)
    if names is None:
        raise PolySyntaxError("missing 'vars:' line", max(len(lines), 1), 1)
    if not polys:
        raise PolySyntaxError("no equations", max(len(lines), 1), 1)
    return PolySystem(tuple(polys))


def format_system(sys: PolySystem) -> str:
    names = [f"x{i + 1}" for i in range(sys.n)]
    out = ["vars: " + " ".join(names)]
    out += [f"eq: {p.to_string(names)} = 0" for p in sys]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# degrees and capacities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    """``table[j][i]`` is the highest power of ``x_{i+1}`` in equation ``j``."""

    table: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.table)

    @property
    def n(self) -> int:
        return len(self.table[0])

    @property
    def var_max(self) -> tuple[int, ...]:
        return tuple(max(row[i] for row in self.table) for i in range(self.n))

    @property
    def max_degree(self) -> int:
        return max(self.var_max)


def degree_profile(sys: PolySystem) -> DegreeProfile:
    return DegreeProfile(tuple(tuple(p.degree_in(i) for i in range(sys.n)) for p in sys))


def capacity_3p(profile: DegreeProfile) -> tuple[int, tuple[int, int, int]]:
    """Auxiliary count ``D`` and the three-player strategy counts.

    ``D`` is the number of Horner gadget equations, one fewer than the
    number of tree nodes for each equation.  Alice gets ``n+1`` strategies,
    Bob ``D-m+1`` and Critter ``D+1``.
    """
    D = sum(math.prod(1 + d for d in row) - 1 for row in profile.table)
    bob = D - profile.m + 1
    assert bob >= 1, "constant equation in system (empty variety)"
    return D, (profile.n + 1, bob, D + 1)


def capacity_np(profile: DegreeProfile) -> tuple[int, int]:
    """``D'`` (sum of per-variable maximal degrees) and the player count ``D'+m``."""
    dprime = sum(profile.var_max)
    return dprime, dprime + profile.m


# ---------------------------------------------------------------------------
# Horner recursive form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HornerForm:
    """Dense recursive coefficient tree of one polynomial.

    ``order`` lists zero-based variable indices from outermost to innermost.
    A node at depth ``k`` is a tuple whose entry ``t`` is the coefficient of
    ``x_{order[k]}^t``; leaves (depth ``n``) are ``Fraction``s.  Every node at
    depth ``k`` has exactly ``degrees[k] + 1`` children, zeros included.
    """

    n: int
    order: tuple[int, ...]
    degrees: tuple[int, ...]
    root: object

    def node(self, path: Sequence[int]):
        """Coefficient node ``F_{j i_1 ... i_k}`` for ``path = (i_1, ..., i_k)``."""
        node = self.root
        for t in path:
            node = node[t]
        return node

    def node_polynomial(self, path: Sequence[int]) -> Polynomial:
        """The node as a polynomial in the remaining (inner) variables."""
        return _expand(self.node(path), len(path), self.order, self.n)

    def expand(self) -> Polynomial:
        return _expand(self.root, 0, self.order, self.n)

    def evaluate(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError("dimension mismatch")

        def walk(node, depth):
            if depth == self.n:
                return node
            x = point[self.order[depth]]
            acc = walk(node[-1], depth + 1)
            for child in reversed(node[:-1]):
                acc = acc * x + walk(child, depth + 1)
            return acc

        return walk(self.root, 0)


def _expand(node, depth, order, n) -> Polynomial:
    if depth == n:
        return Polynomial.constant(n, node)
    x = Polynomial.variable(n, order[depth])
    total = Polynomial(n)
    for t, child in enumerate(node):
        sub = _expand(child, depth + 1, order, n)
        if not sub.is_zero():
            total = total + sub * x**t
    return total


def horner_decompose(
    poly: Polynomial,
    order: Sequence[int] | None = None,
    degrees: Sequence[int] | None = None,
) -> HornerForm:
    """Recursive form of ``poly`` with ``order[0]`` outermost.

    ``degrees`` fixes the branching per level; by default it is the degree of
    ``poly`` in each variable.  Padding with larger degrees is allowed.
    """
    n = poly.n
    order = tuple(range(n)) if order is None else tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError(f"order {order} is not a permutation of 0..{n - 1}")
    if degrees is None:
        degrees = tuple(poly.degree_in(v) for v in order)
    degrees = tuple(degrees)
    for v, d in zip(order, degrees):
        if poly.degree_in(v) > d:
            raise ValueError("branching degree below polynomial degree")

    terms = poly.terms

    def build(depth, prefix):
        if depth == n:
            mono = [0] * n
            for v, e in zip(order, prefix):
                mono[v] = e
            return terms.get(tuple(mono), Fraction(0))
        return tuple(build(depth + 1, prefix + (t,)) for t in range(degrees[depth] + 1))

    return HornerForm(n, order, degrees, build(0, ()))


def from_coefficients(coeffs: Iterable[Number]) -> Polynomial:
    """Univariate polynomial ``sum coeffs[k] x^k``."""
    return Polynomial(1, {(k,): c for k, c in enumerate(coeffs)})


def univariate_coefficients(poly: Polynomial) -> list[Fraction]:
    if poly.n != 1:
        raise ValueError("not univariate")
    d = poly.degree_in(0)
    return [poly.coefficient((k,)) for k in range(d + 1)]
