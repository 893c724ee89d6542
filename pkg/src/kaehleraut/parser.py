"""Reading polynomials and maps from text.

Grammar, loosest binding first::

    expr     := term (('+' | '-') term)*
    term     := unary ('*' unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ('^' exponent)?
    exponent := INT | '(' INT ')'
    atom     := NUMBER | NAME | '(' expr ')'

NUMBER is an integer or a rational literal ``p/q`` written without spaces.
Multiplication must be explicit: ``2x1`` is an error.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Union

from .kaehler import DifferentialContext
from .poly import Polynomial
from .series import NotInvertibleError, TruncatedSeriesMap

MAX_EXPONENT = 256
_DIGITS = frozenset("0123456789")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class ValidationError(ValueError):
    """Text parsed fine but does not describe an admissible object."""


class TruncationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # number | identifier | operator | parenthesis | caret | end
    lexeme: str
    position: int


class Naming:
    """Variable names of a polynomial ring, with optional aliases per slot."""

    def __init__(self, names: Sequence[str], aliases: Optional[Dict[str, int]] = None):
        self.names = list(names)
        self._lookup = {n: i for i, n in enumerate(self.names)}
        if len(self._lookup) != len(self.names):
            raise ValueError("duplicate variable names")
        for alias, slot in (aliases or {}).items():
            self._lookup.setdefault(alias, slot)

    def __len__(self) -> int:
        return len(self.names)

    def slot(self, name: str) -> Optional[int]:
        return self._lookup.get(name)

    def render(self, p: Polynomial, latex: bool = False) -> str:
        return p.render(self.names, latex)

    @classmethod
    def x(cls, m: int) -> "Naming":
        """``x1..xm``, also ``y1..ym``; a lone variable may be written ``x``."""
        aliases = {f"y{i}": i - 1 for i in range(1, m + 1)}
        if m == 1:
            return cls(["x"], {"x1": 0, **aliases})
        return cls([f"x{i}" for i in range(1, m + 1)], aliases)

    @classmethod
    def endo(cls, n: int) -> "Naming":
        """Coordinates ``y1..yn`` of affine n-space, also accepted as ``x1..xn``."""
        aliases = {f"x{i}": i - 1 for i in range(1, n + 1)}
        if n == 1:
            return cls(["y"], {"y1": 0, "x": 0, **aliases})
        return cls([f"y{i}" for i in range(1, n + 1)], aliases)

    @classmethod
    def y(cls, m: int, N: int) -> "Naming":
        """Reduced coordinates ``yi_j``, aliases ``djxi``."""
        ctx = DifferentialContext(m, N)
        aliases = {}
        for i in range(1, m + 1):
            for j in range(1, N + 1):
                slot = ctx.y_only_slot(i, j)
                aliases[f"y{i}_{j}"] = slot
                aliases[f"d{j}x{i}"] = slot
                if m == 1:
                    aliases[f"d{j}x"] = slot
        return cls(ctx.y_names(), aliases)

    @classmethod
    def xy(cls, m: int, N: int) -> "Naming":
        """``x1..xm`` and the differentials ``djxi`` (aliases ``yi_j``)."""
        ctx = DifferentialContext(m, N)
        aliases = {}
        if m == 1:
            aliases["x1"] = 0
        for i in range(1, m + 1):
            for j in range(1, N + 1):
                slot = ctx.y_slot(i, j)
                aliases[f"y{i}_{j}"] = slot
                aliases[f"d{j}x{i}"] = slot
                if m == 1:
                    aliases[f"y{j}"] = slot
        return cls(ctx.names(), aliases)


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _DIGITS:
            start = i
            while i < n and text[i] in _DIGITS:
                i += 1
            if i + 1 < n and text[i] == "/" and text[i + 1] in _DIGITS:
                i += 1
                while i < n and text[i] in _DIGITS:
                    i += 1
            tokens.append(Token("number", text[start:i], start))
        elif ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("identifier", text[start:i], start))
        elif ch == "*" and text.startswith("**", i):
            tokens.append(Token("caret", "**", i))
            i += 2
        elif ch in "+-*":
            tokens.append(Token("operator", ch, i))
            i += 1
        elif ch == "^":
            tokens.append(Token("caret", ch, i))
            i += 1
        elif ch in "()":
            tokens.append(Token("parenthesis", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, naming: Naming):
        self.tokens = tokenize(text)
        self.naming = naming
        self.nvars = len(naming)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            raise ParseError("empty expression", self.tok.position)
        result = self.expr()
        if self.tok.kind != "end":
            t = self.tok
            if t.kind in ("number", "identifier") or t.lexeme == "(":
                raise ParseError("missing '*' (implicit multiplication is not allowed)", t.position)
            raise ParseError(f"unexpected {t.lexeme!r}", t.position)
        return result

    def expr(self) -> Polynomial:
        acc = self.term()
        while self.tok.kind == "operator" and self.tok.lexeme in "+-":
            op = self.advance().lexeme
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Polynomial:
        acc = self.unary()
        while self.tok.kind == "operator" and self.tok.lexeme == "*":
            self.advance()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Polynomial:
        if self.tok.kind == "operator" and self.tok.lexeme in "+-":
            op = self.advance().lexeme
            inner = self.unary()
            return -inner if op == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.kind == "caret":
            self.advance()
            k = self.exponent()
            return base ** k
        return base

    def exponent(self) -> int:
        t = self.tok
        if t.kind == "parenthesis" and t.lexeme == "(":
            self.advance()
            k = self.exponent_literal()
            close = self.tok
            if not (close.kind == "parenthesis" and close.lexeme == ")"):
                raise ParseError("expected ')' after exponent", close.position)
            self.advance()
            return k
        return self.exponent_literal()

    def exponent_literal(self) -> int:
        t = self.tok
        if t.kind != "number" or "/" in t.lexeme:
            raise ParseError("exponent must be a nonnegative integer", t.position)
        k = int(t.lexeme)
        if k > MAX_EXPONENT:
            raise ParseError(f"exponent {k} exceeds {MAX_EXPONENT}", t.position)
        self.advance()
        return k

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "number":
            self.advance()
            num, _, den = t.lexeme.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", t.position)
            return Polynomial.constant(self.nvars, Fraction(int(num), int(den) if den else 1))
        if t.kind == "identifier":
            self.advance()
            slot = self.naming.slot(t.lexeme)
            if slot is None:
                raise ParseError(f"unknown variable {t.lexeme!r}", t.position)
            return Polynomial.variable(self.nvars, slot)
        if t.kind == "parenthesis" and t.lexeme == "(":
            self.advance()
            inner = self.expr()
            close = self.tok
            if not (close.kind == "parenthesis" and close.lexeme == ")"):
                raise ParseError("expected ')'", close.position)
            self.advance()
            return inner
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.position)
        raise ParseError(f"unexpected {t.lexeme!r}", t.position)


def parse_polynomial(text: Union[str, bytes], naming: Union[Naming, int]) -> Polynomial:
    """Parse ``text`` into a polynomial of the ring described by ``naming``.

    An integer ``naming`` means the default names ``x1..xm``.
    """
    if isinstance(naming, int):
        naming = Naming.x(naming)
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    try:
        return _Parser(text, naming).parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", 0) from None


def render_polynomial(p: Polynomial, naming: Union[Naming, int, None] = None, latex: bool = False) -> str:
    if naming is None:
        naming = p.nvars
    if isinstance(naming, int):
        naming = Naming.x(naming)
    return naming.render(p, latex)


def parse_series_map(texts: Sequence[str], m: int, N: int, check_automorphism: bool = False,
                     naming: Optional[Naming] = None) -> TruncatedSeriesMap:
    """One expression per component; terms above degree N are dropped with a warning."""
    if len(texts) != m:
        raise ValidationError(f"expected {m} component expressions, got {len(texts)}")
    naming = naming or Naming.x(m)
    comps = []
    for i, text in enumerate(texts, start=1):
        p = parse_polynomial(text, naming)
        if p.constant_term():
            raise ValidationError(f"component {i} ({text!r}) has a nonzero constant term")
        if p.total_degree() > N:
            warnings.warn(f"component {i}: terms of degree above {N} were truncated", TruncationWarning, stacklevel=2)
        comps.append(p)
    phi = TruncatedSeriesMap.from_polynomials(comps, N)
    if check_automorphism and not phi.is_automorphism():
        raise NotInvertibleError(f"not an automorphism: linear part {phi.linear_part()} is singular")
    return phi


def parse_map_components(texts: Iterable[str], naming: Naming) -> List[Polynomial]:
    return [parse_polynomial(t, naming) for t in texts]
