"""Bundle-expression language shared by the library, the CLI and the scripts.

Grammar (whitespace-insensitive)::

    atom     :=  O ( int [, int] )  |  U+ | U- | V | S | S' | G | G' | EE
    postfix  :=  expr ^v            dual
               | expr ( int [, int] )   twist by a line bundle
               | expr [ int ]       homological shift
    infix    :=  expr + expr        direct sum

Expressions are normalised on parse: double duals cancel, twists merge and
sink into line bundles, shifts merge.  The canonical printer emits a string
that reparses to the same tree.
"""

from __future__ import annotations

from dataclasses import dataclass


class ExprParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Line:
    twist: tuple  # (a,) or (a, b), matching the space's Picard rank


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Twist:
    arg: object
    twist: tuple


@dataclass(frozen=True)
class Shift:
    arg: object
    n: int


@dataclass(frozen=True)
class Sum:
    parts: tuple


# catalog-internal symbols (S+, S-, W, G1+, G1-) are accepted too so every
# registered rule prints and reparses; longest match first.
ATOM_NAMES = ("EE", "U+", "U-", "S'", "S+", "S-", "G1+", "G1-", "G'", "S", "G", "V", "W")


def _add_twists(t1, t2):
    if len(t1) != len(t2):
        raise ValueError(f"twist arity mismatch: {t1} vs {t2}")
    return tuple(a + b for a, b in zip(t1, t2))


def normalize(expr):
    """Push twists into line bundles, cancel double duals, merge shifts."""
    if isinstance(expr, (Line, Atom)):
        return expr
    if isinstance(expr, Dual):
        inner = normalize(expr.arg)
        if isinstance(inner, Dual):
            return inner.arg
        if isinstance(inner, Line):
            return Line(tuple(-a for a in inner.twist))
        if isinstance(inner, Shift):
            return normalize(Shift(Dual(inner.arg), -inner.n))
        if isinstance(inner, Sum):
            return Sum(tuple(normalize(Dual(p)) for p in inner.parts))
        if isinstance(inner, Twist):
            return normalize(
                Twist(Dual(inner.arg), tuple(-a for a in inner.twist))
            )
        return Dual(inner)
    if isinstance(expr, Twist):
        if all(a == 0 for a in expr.twist):
            return normalize(expr.arg)
        inner = normalize(expr.arg)
        if isinstance(inner, Line):
            return Line(_add_twists(inner.twist, expr.twist))
        if isinstance(inner, Twist):
            return normalize(Twist(inner.arg, _add_twists(inner.twist, expr.twist)))
        if isinstance(inner, Shift):
            return normalize(Shift(Twist(inner.arg, expr.twist), inner.n))
        if isinstance(inner, Sum):
            return Sum(tuple(normalize(Twist(p, expr.twist)) for p in inner.parts))
        return Twist(inner, expr.twist)
    if isinstance(expr, Shift):
        if expr.n == 0:
            return normalize(expr.arg)
        inner = normalize(expr.arg)
        if isinstance(inner, Shift):
            return normalize(Shift(inner.arg, inner.n + expr.n))
        if isinstance(inner, Sum):
            return Sum(tuple(normalize(Shift(p, expr.n)) for p in inner.parts))
        return Shift(inner, expr.n)
    if isinstance(expr, Sum):
        flat = []
        for p in expr.parts:
            q = normalize(p)
            if isinstance(q, Sum):
                flat.extend(q.parts)
            else:
                flat.append(q)
        if len(flat) == 1:
            return flat[0]
        return Sum(tuple(flat))
    raise TypeError(f"not a bundle expression: {expr!r}")


def atoms_of(expr):
    if isinstance(expr, Atom):
        return {expr.name}
    if isinstance(expr, Line):
        return set()
    if isinstance(expr, (Dual, Shift)):
        return atoms_of(expr.arg)
    if isinstance(expr, Twist):
        return atoms_of(expr.arg)
    if isinstance(expr, Sum):
        out = set()
        for p in expr.parts:
            out |= atoms_of(p)
        return out
    raise TypeError(f"not a bundle expression: {expr!r}")


def expr_to_str(expr) -> str:
    """Canonical printer; output reparses to the same normalised tree."""
    if isinstance(expr, Line):
        return "O(" + ",".join(str(a) for a in expr.twist) + ")"
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, Dual):
        return expr_to_str(expr.arg) + "^v"
    if isinstance(expr, Twist):
        return expr_to_str(expr.arg) + "(" + ",".join(str(a) for a in expr.twist) + ")"
    if isinstance(expr, Shift):
        return expr_to_str(expr.arg) + f"[{expr.n}]"
    if isinstance(expr, Sum):
        return " + ".join(expr_to_str(p) for p in expr.parts)
    raise TypeError(f"not a bundle expression: {expr!r}")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ExprParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse_twist(self):
        self.expect("(")
        vals = [self.parse_int()]
        while self.peek() == ",":
            self.pos += 1
            vals.append(self.parse_int())
        self.expect(")")
        if len(vals) > 2:
            self.error("a twist takes at most two coordinates")
        return tuple(vals)

    def parse_primary(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of expression")
        if self.text.startswith("O", self.pos):
            self.pos += 1
            return Line(self.parse_twist())
        for name in ATOM_NAMES:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return Atom(name)
        self.error("expected a bundle symbol")

    def parse_postfix(self):
        expr = self.parse_primary()
        while True:
            ch = self.peek()
            if ch == "^":
                self.pos += 1
                if self.pos >= len(self.text) or self.text[self.pos] != "v":
                    self.error("expected 'v' after '^'")
                self.pos += 1
                expr = Dual(expr)
            elif ch == "(":
                expr = Twist(expr, self.parse_twist())
            elif ch == "[":
                self.pos += 1
                n = self.parse_int()
                self.expect("]")
                expr = Shift(expr, n)
            else:
                return expr

    def parse_sum(self):
        parts = [self.parse_postfix()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.parse_postfix())
        if len(parts) == 1:
            return parts[0]
        return Sum(tuple(parts))

    def parse(self):
        expr = self.parse_sum()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return expr


def parse_bundle_expr(text: str):
    """Parse and normalise a bundle expression; raises ExprParseError with a
    byte offset on malformed input."""
    return normalize(_Parser(text).parse())
