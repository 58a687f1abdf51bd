"""Parser for the ASCII LTL grammar.

Grammar: literals ``true``/``false``, atoms ``[a-zA-Z_][a-zA-Z0-9_]*``, unary
``! X F G``, binary ``&& || -> <-> U R``, parentheses.  Precedence, tightest
first: unary, U/R (right associative), ``&&``, ``||``, ``->``, ``<->``.

Sugar is desugared on the fly (``F a`` to ``true U a``, ``G a`` to
``false R a``, implications via disjunction) and general negation is pushed to
the atoms, so the result is always in release-positive normal form.
"""

from __future__ import annotations

import re

from .formula import (
    Formula,
    atom,
    f_and,
    f_iff,
    f_implies,
    f_next,
    f_or,
    f_release,
    f_until,
    neg,
    t_false,
    t_true,
)

__all__ = ["parse_formula", "LtlSyntaxError", "UndeclaredPropositionError"]


class LtlSyntaxError(ValueError):
    """Malformed formula text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UndeclaredPropositionError(ValueError):
    def __init__(self, name: str, pos: int):
        super().__init__(f"undeclared proposition {name!r} (at position {pos})")
        self.name = name
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<op>&&|\|\||->|<->|[!()])|(?P<word>[a-zA-Z_][a-zA-Z0-9_]*))"
)
_KEYWORDS = {"true", "false", "X", "F", "G", "U", "R"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise LtlSyntaxError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.group("op"):
            tokens.append(("op", m.group("op"), m.start("op")))
        else:
            word = m.group("word")
            kind = "kw" if word in _KEYWORDS else "name"
            tokens.append((kind, word, m.start("word")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], declared: frozenset[str] | None):
        self.tokens = tokens
        self.i = 0
        self.declared = declared

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if val != value:
            raise LtlSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    # precedence climbing, loosest first
    def iff(self) -> Formula:
        left = self.imp()
        if self.peek()[1] == "<->":
            self.take()
            return f_iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return f_implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek()[1] == "||":
            self.take()
            parts.append(self.conj())
        return f_or(parts) if len(parts) > 1 else parts[0]

    def conj(self) -> Formula:
        parts = [self.until()]
        while self.peek()[1] == "&&":
            self.take()
            parts.append(self.until())
        return f_and(parts) if len(parts) > 1 else parts[0]

    def until(self) -> Formula:
        left = self.unary()
        nxt = self.peek()
        if nxt[0] == "kw" and nxt[1] in ("U", "R"):
            self.take()
            right = self.until()
            return f_until(left, right) if nxt[1] == "U" else f_release(left, right)
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "!":
            self.take()
            return neg(self.unary())
        if kind == "kw" and val in ("X", "F", "G"):
            self.take()
            arg = self.unary()
            if val == "X":
                return f_next(arg)
            if val == "F":
                return f_until(t_true(), arg)
            return f_release(t_false(), arg)
        return self.primary()

    def primary(self) -> Formula:
        kind, val, pos = self.take()
        if val == "(":
            inner = self.iff()
            self.expect(")")
            return inner
        if kind == "kw" and val == "true":
            return t_true()
        if kind == "kw" and val == "false":
            return t_false()
        if kind == "name":
            if self.declared is not None and val not in self.declared:
                raise UndeclaredPropositionError(val, pos)
            return atom(val)
        raise LtlSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_formula(text: str, declared: frozenset[str] | None = None) -> Formula:
    """Parse ``text`` into a PNF hash-consed formula.

    When ``declared`` is given, any proposition outside it raises
    UndeclaredPropositionError.
    """
    parser = _Parser(_tokenize(text), declared)
    result = parser.iff()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise LtlSyntaxError(f"trailing input {val!r}", pos)
    return result
