"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def grlex_key(exp: Exponent):
    # sort descending: higher total degree first, then lexicographically larger
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Polynomial in ``num_vars`` variables stored as {exponent tuple: Fraction}.

    Instances are treated as immutable; all arithmetic returns new objects and
    zero coefficients are never stored.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        self.num_vars = num_vars
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != num_vars:
                    raise ValueError(f"exponent {exp} has length {len(exp)}, expected {num_vars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = to_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, num_vars: int, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        # trusted constructor: caller guarantees canonical terms
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, num_vars: int, value: Scalar) -> "MultiPoly":
        value = to_fraction(value)
        return cls._raw(num_vars, {(0,) * num_vars: value} if value else {})

    @classmethod
    def variable(cls, num_vars: int, index: int, coeff: Scalar = 1) -> "MultiPoly":
        if not 0 <= index < num_vars:
            raise IndexError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls(num_vars, {tuple(exp): coeff})

    @classmethod
    def linear(cls, num_vars: int, coeffs: Mapping[int, Scalar]) -> "MultiPoly":
        terms = {}
        for i, c in coeffs.items():
            exp = [0] * num_vars
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(num_vars, terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def variables_used(self) -> List[int]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return sorted(used)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.num_vars != self.num_vars:
            raise ValueError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.num_vars, to_fraction(other))

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = to_fraction(factor)
        if not factor:
            return MultiPoly.zero(self.num_vars)
        return MultiPoly._raw(self.num_vars, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(exp, 0) + c1 * c2
                if v:
                    out[exp] = v
                else:
                    out.pop(exp, None)
        return MultiPoly._raw(self.num_vars, out)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def __truediv__(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            raise TypeError("polynomial division is not supported; divide by a scalar")
        return self.scale(1 / to_fraction(other))

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.num_vars, other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- calculus and evaluation -------------------------------------------

    def diff(self, var: int) -> "MultiPoly":
        """Partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.num_vars:
            raise IndexError(f"variable index {var} out of range for {self.num_vars} variables")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            k = exp[var]
            if k:
                new = exp[:var] + (k - 1,) + exp[var + 1:]
                out[new] = out.get(new, 0) + c * k
        return MultiPoly._raw(self.num_vars, {e: c for e, c in out.items() if c})

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.num_vars:
            raise ValueError(f"point has length {len(point)}, expected {self.num_vars}")
        pt = [to_fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(pt, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def compose(self, substitutions: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``substitutions[i]`` for variable i (all in a common ring)."""
        if len(substitutions) != self.num_vars:
            raise ValueError(f"need {self.num_vars} substitutions, got {len(substitutions)}")
        if not substitutions:
            return MultiPoly.constant(0, self.constant_term())
        target = substitutions[0].num_vars
        if any(s.num_vars != target for s in substitutions):
            raise ValueError("substitutions must share a variable count")
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in powers:
                powers[key] = substitutions[i] if k == 1 else power(i, k - 1) * substitutions[i]
            return powers[key]

        result = MultiPoly.zero(target)
        for exp, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def remap(self, num_vars: int, index_map: Sequence[int]) -> "MultiPoly":
        """Rename variable i to ``index_map[i]`` inside a ring of ``num_vars`` variables."""
        if len(index_map) != self.num_vars:
            raise ValueError("index_map must cover every variable")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * num_vars
            for i, k in enumerate(exp):
                if k:
                    new[index_map[i]] += k
            key = tuple(new)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return MultiPoly._raw(num_vars, out)

    def normalize_sign(self) -> "MultiPoly":
        """Scale by -1 if needed so the leading grlex coefficient is positive."""
        return -self if self.leading_coefficient() < 0 else self

    # -- text ---------------------------------------------------------------

    def to_text(self, names: Optional[Callable[[int], str]] = None) -> str:
        names = names or default_names
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(exp):
                if not k:
                    continue
                name = names(i)
                if k == 1:
                    factors.append(name)
                else:
                    factors.append(f"({name})^{k}" if "^" in name else f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {self.to_text()!r})"


def default_names(i: int) -> str:
    return f"x{i + 1}"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*^()]))")


def parse_poly(text: str, names: Sequence[str]) -> MultiPoly:
    """Parse the canonical text form produced by :meth:`MultiPoly.to_text`.

    Variable names are matched greedily against ``names``; a power is written
    ``x1^2`` or ``(R^1_12)^2``.
    """
    nv = len(names)
    lookup = {name: i for i, name in enumerate(names)}
    by_length = sorted(names, key=len, reverse=True)
    pos = 0
    text = text.strip()

    def error(msg):
        raise ValueError(f"{msg} at column {pos + 1} in {text!r}")

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def read_name() -> Optional[str]:
        nonlocal pos
        for name in by_length:
            if text.startswith(name, pos):
                end = pos + len(name)
                # reject prefix matches such as x1 inside x12
                if end < len(text) and (text[end].isalnum() or text[end] == "_"):
                    continue
                pos = end
                return name
        return None

    def read_int() -> int:
        nonlocal pos
        skip_ws()
        m = re.match(r"\d+", text[pos:])
        if not m:
            error("expected integer exponent")
        pos += m.end()
        return int(m.group())

    def read_factor() -> MultiPoly:
        nonlocal pos
        skip_ws()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            skip_ws()
            name = read_name()
            if name is None:
                error("expected variable name")
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                error("expected ')'")
            pos += 1
        else:
            name = read_name()
            if name is None:
                m = re.match(r"\d+(?:/\d+)?", text[pos:])
                if not m:
                    error("expected coefficient or variable")
                pos += m.end()
                return MultiPoly.constant(nv, Fraction(m.group()))
        base = MultiPoly.variable(nv, lookup[name])
        skip_ws()
        if pos < len(text) and text[pos] == "^":
            pos += 1
            return base ** read_int()
        return base

    if text in ("", "0"):
        return MultiPoly.zero(nv)
    result = MultiPoly.zero(nv)
    sign = 1
    skip_ws()
    if pos < len(text) and text[pos] in "+-":
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    while True:
        term = read_factor()
        skip_ws()
        while pos < len(text) and text[pos] == "*":
            pos += 1
            term = term * read_factor()
            skip_ws()
        result = result + term.scale(sign)
        if pos >= len(text):
            break
        if text[pos] not in "+-":
            error("expected '+' or '-'")
        sign = -1 if text[pos] == "-" else 1
        pos += 1
    return result


def poly_eval(p: MultiPoly, point: Sequence) -> Fraction:
    return p.evaluate(point)


def poly_diff(p: MultiPoly, var: int) -> MultiPoly:
    return p.diff(var)


class PolyMatrix:
    """Rectangular grid of polynomials sharing one variable count."""

    def __init__(self, entries: Sequence[Sequence[MultiPoly]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("PolyMatrix needs at least one entry")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("PolyMatrix rows must have equal length")
        nv = rows[0][0].num_vars
        if any(e.num_vars != nv for r in rows for e in r):
            raise ValueError("PolyMatrix entries must share num_vars")
        self.entries = rows
        self.rows = len(rows)
        self.cols = width
        self.num_vars = nv

    def evaluate(self, point: Sequence) -> List[List[Fraction]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]


def linear_combination(polys: Iterable[MultiPoly], coeffs: Iterable[Scalar], num_vars: int) -> MultiPoly:
    out = MultiPoly.zero(num_vars)
    for p, c in zip(polys, coeffs):
        if c:
            out = out + p.scale(c)
    return out
