"""Modal formula ASTs, a recursive-descent parser/printer, named axioms,
and Fine-Jankov formula synthesis.

ASCII grammar: variables ``[a-z][a-zA-Z0-9_]*``; ``~`` not, ``&`` and,
``|`` or, ``->`` implies (right associative), ``[]`` box, ``<>`` diamond,
``T``/``F`` constants, parentheses.  Precedence: unary > ``&`` > ``|`` >
``->``.  Diamond is a primitive connective, not sugar for ``~[]~``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import FormulaSyntaxError, PreconditionError
from .frames import Frame, classify_frame


class Formula:
    """Base class for formula AST nodes."""

    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    operand: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    operand: Formula


TOP = Top()
BOT = Bot()


def variables(phi: Formula) -> tuple[str, ...]:
    """Variable names occurring in the formula, sorted."""
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.add(node.name)
        elif isinstance(node, (Not, Box, Diamond)):
            stack.append(node.operand)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.left)
            stack.append(node.right)
    return tuple(sorted(seen))


def modal_depth(phi: Formula) -> int:
    match phi:
        case Var() | Top() | Bot():
            return 0
        case Not(operand=op):
            return modal_depth(op)
        case Box(operand=op) | Diamond(operand=op):
            return 1 + modal_depth(op)
        case And(left=a, right=b) | Or(left=a, right=b) | Implies(left=a, right=b):
            return max(modal_depth(a), modal_depth(b))
    raise TypeError(f"not a formula: {phi!r}")


def conj(parts) -> Formula:
    """Balanced conjunction of a sequence (TOP when empty)."""
    parts = list(parts)
    if not parts:
        return TOP
    while len(parts) > 1:
        merged = []
        for i in range(0, len(parts) - 1, 2):
            merged.append(And(parts[i], parts[i + 1]))
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return BOT
    while len(parts) > 1:
        merged = []
        for i in range(0, len(parts) - 1, 2):
            merged.append(Or(parts[i], parts[i + 1]))
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


def eliminate_diamonds(phi: Formula) -> Formula:
    """Rewrite every diamond as ~[]~ (explicit normalization; never applied
    silently by the parser or printer)."""
    match phi:
        case Diamond(operand=op):
            return Not(Box(Not(eliminate_diamonds(op))))
        case Not(operand=op):
            return Not(eliminate_diamonds(op))
        case Box(operand=op):
            return Box(eliminate_diamonds(op))
        case And(left=a, right=b):
            return And(eliminate_diamonds(a), eliminate_diamonds(b))
        case Or(left=a, right=b):
            return Or(eliminate_diamonds(a), eliminate_diamonds(b))
        case Implies(left=a, right=b):
            return Implies(eliminate_diamonds(a), eliminate_diamonds(b))
        case _:
            return phi


# ---------------------------------------------------------------------------
# parsing / printing

_VAR_START = "abcdefghijklmnopqrstuvwxyz"
_VAR_BODY = _VAR_START + _VAR_START.upper() + "0123456789_"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise FormulaSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def eat(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.eat(token):
            self.error(f"expected {token!r}")

    def parse(self) -> Formula:
        phi = self.implies()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return phi

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.eat("->"):
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.eat("|"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while True:
            self.skip_ws()
            # '&' but not part of a future token
            if self.eat("&"):
                left = And(left, self.unary())
            else:
                return left

    def unary(self) -> Formula:
        self.skip_ws()
        if self.eat("~"):
            return Not(self.unary())
        if self.eat("[]"):
            return Box(self.unary())
        if self.eat("<>"):
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        self.skip_ws()
        if self.eat("("):
            phi = self.implies()
            self.expect(")")
            return phi
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        ch = self.text[self.pos]
        if ch == "T":
            self.pos += 1
            return TOP
        if ch == "F":
            self.pos += 1
            return BOT
        if ch in _VAR_START:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in _VAR_BODY:
                self.pos += 1
            return Var(self.text[start : self.pos])
        self.error(f"unexpected character {ch!r}")


def parse(text: str) -> Formula:
    return _Parser(text).parse()


_PREC = {Implies: 1, Or: 2, And: 3}


def render(phi: Formula) -> str:
    def go(node, context_prec):
        match node:
            case Var(name=name):
                return name
            case Top():
                return "T"
            case Bot():
                return "F"
            case Not(operand=op):
                return "~" + go(op, 4)
            case Box(operand=op):
                return "[]" + go(op, 4)
            case Diamond(operand=op):
                return "<>" + go(op, 4)
            case And(left=a, right=b):
                s = f"{go(a, 3)} & {go(b, 4)}"
                return f"({s})" if context_prec > 3 else s
            case Or(left=a, right=b):
                s = f"{go(a, 2)} | {go(b, 3)}"
                return f"({s})" if context_prec > 2 else s
            case Implies(left=a, right=b):
                s = f"{go(a, 2)} -> {go(b, 1)}"
                return f"({s})" if context_prec > 1 else s
        raise TypeError(f"not a formula: {node!r}")

    return go(phi, 0)


# ---------------------------------------------------------------------------
# named axioms

P = Var("p")


def mckinsey() -> Formula:
    """[]<>p -> <>[]p"""
    return Implies(Box(Diamond(P)), Diamond(Box(P)))


def geach() -> Formula:
    """<>[]p -> []<>p"""
    return Implies(Diamond(Box(P)), Box(Diamond(P)))


def grzegorczyk() -> Formula:
    """[]([](p -> []p) -> p) -> p"""
    return Implies(Box(Implies(Box(Implies(P, Box(P))), P)), P)


def bounded_depth(n: int) -> Formula:
    """The depth-bounding axiom: valid on a finite frame iff its depth <= n."""
    if n < 1:
        raise PreconditionError("bounded_depth requires n >= 1")
    phi = Implies(Diamond(Box(Var("p1"))), Var("p1"))
    for i in range(2, n + 1):
        p = Var(f"p{i}")
        phi = Implies(Diamond(And(Box(p), Not(phi))), p)
    return phi


def axiom(name: str, n: int | None = None) -> Formula:
    """Named axiom lookup: ma, ga, grz, s4_T, s4_4, bd (with parameter n)."""
    if name == "ma":
        return mckinsey()
    if name == "ga":
        return geach()
    if name == "grz":
        return grzegorczyk()
    if name == "s4_T":
        return Implies(Box(P), P)
    if name == "s4_4":
        return Implies(Box(P), Box(Box(P)))
    if name == "bd":
        if n is None:
            raise PreconditionError("bd needs a depth parameter")
        return bounded_depth(n)
    raise PreconditionError(f"unknown axiom {name!r}")


# ---------------------------------------------------------------------------
# Fine-Jankov formulas

@lru_cache(maxsize=None)
def fine_jankov(frame: Frame) -> Formula:
    """The frame formula of a finite rooted frame.

    Validity contract on finite frames: a frame validates the result iff the
    input is not an onto p-morphic image of any point-generated subframe.
    Built with one variable per world; all boxes are interpreted reflexively.
    """
    flags = classify_frame(frame)
    if not flags.rooted:
        raise PreconditionError("fine_jankov needs a rooted frame")
    root = flags.roots[0]
    p = [Var(f"p{w}") for w in frame.worlds()]
    clauses = [disj(p)]
    for u in frame.worlds():
        for w in frame.worlds():
            if u == w:
                continue
            clauses.append(Implies(p[u], Not(p[w])))
    for u in frame.worlds():
        for w in frame.worlds():
            if frame.le(u, w):
                clauses.append(Implies(p[u], Diamond(p[w])))
            else:
                clauses.append(Implies(p[u], Not(Diamond(p[w]))))
    described = And(p[root], Box(conj(clauses)))
    return Implies(described, Not(p[root]))


def is_generator(frame: Frame, seed) -> bool:
    """Whether closing a seed set under Booleans and downward closure yields
    every subset of the frame."""
    from .frames import downset_mask, mask_of

    full = (1 << frame.size) - 1
    family = {mask_of(seed) & full, 0, full}
    changed = True
    while changed:
        changed = False
        current = list(family)
        for m in current:
            for derived in (full & ~m, downset_mask(frame, m)):
                if derived not in family:
                    family.add(derived)
                    changed = True
        for a in current:
            for b in current:
                if a & b not in family:
                    family.add(a & b)
                    changed = True
    return len(family) == 1 << frame.size
