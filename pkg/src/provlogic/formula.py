"""Modal formula syntax trees: parsing, printing and syntactic measures.

Core connectives are ``bot``, atoms, ``~``, ``&``, ``|`` and ``box``; ``top``,
``->``, ``<->`` and the diamond are surface sugar expanded at parse time.
Formula objects are interned: structurally equal formulas are the same object,
so equality, hashing and multiset bookkeeping are O(1).
"""

from __future__ import annotations

import re

__all__ = [
    "Formula", "Bot", "Atom", "Not", "And", "Or", "Box",
    "bot", "atom", "neg", "conj", "disj", "box", "top", "imp", "iff", "dia",
    "conj_all", "disj_all",
    "weight", "box_depth", "subformulas", "variables", "occurrences",
    "substitute", "diagonal", "parse", "fprint", "ParseError",
]


class ParseError(ValueError):
    """Raised on malformed formula or sequent text; carries the position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class Formula:
    """A node of the core syntax tree.  Use the factory functions below."""

    __slots__ = ("weight", "box_depth", "_str")
    kind = ""

    def __str__(self) -> str:
        s = self._str
        if s is None:
            s = self._render()
            self._str = s
        return s

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self}>"

    def _render(self) -> str:
        raise NotImplementedError

    def is_atomic(self) -> bool:
        """True for atoms and bot (the paper's 'atomic formulas')."""
        return self.kind in ("atom", "bot")

    def is_boxed(self) -> bool:
        return self.kind == "box"


class Bot(Formula):
    __slots__ = ()
    kind = "bot"

    def __init__(self):
        self.weight = 1
        self.box_depth = 0
        self._str = "bot"

    def _render(self) -> str:
        return "bot"


class Atom(Formula):
    __slots__ = ("name",)
    kind = "atom"

    def __init__(self, name: str):
        self.name = name
        self.weight = 1
        self.box_depth = 0
        self._str = name

    def _render(self) -> str:
        return self.name


class Not(Formula):
    __slots__ = ("child",)
    kind = "not"

    def __init__(self, child: Formula):
        self.child = child
        self.weight = 1 + child.weight
        self.box_depth = child.box_depth
        self._str = None

    def _render(self) -> str:
        return "~" + _wrap(self.child, _PREC_UNARY)


class And(Formula):
    __slots__ = ("left", "right")
    kind = "and"

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self.weight = 1 + left.weight + right.weight
        self.box_depth = max(left.box_depth, right.box_depth)
        self._str = None

    def _render(self) -> str:
        # & folds left-associatively, so right-nested trees need parentheses
        return _wrap(self.left, _PREC_AND) + " & " + _wrap(self.right, _PREC_AND + 1)


class Or(Formula):
    __slots__ = ("left", "right")
    kind = "or"

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self.weight = 1 + left.weight + right.weight
        self.box_depth = max(left.box_depth, right.box_depth)
        self._str = None

    def _render(self) -> str:
        return _wrap(self.left, _PREC_OR) + " | " + _wrap(self.right, _PREC_OR + 1)


class Box(Formula):
    __slots__ = ("child",)
    kind = "box"

    def __init__(self, child: Formula):
        self.child = child
        self.weight = 1 + child.weight
        self.box_depth = 1 + child.box_depth
        self._str = None

    def _render(self) -> str:
        return "box " + _wrap(self.child, _PREC_UNARY)


# Rendering precedence levels: higher binds tighter.
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4

_NODE_PREC = {"bot": 5, "atom": 5, "not": 4, "box": 4, "and": 3, "or": 2}


def _wrap(f: Formula, ctx_prec: int) -> str:
    s = str(f)
    if _NODE_PREC[f.kind] < ctx_prec:
        return "(" + s + ")"
    return s


# ---------------------------------------------------------------------------
# Interned construction

_BOT = Bot()
_atoms: dict[str, Atom] = {}
_nots: dict[Formula, Not] = {}
_boxes: dict[Formula, Box] = {}
_ands: dict[tuple[Formula, Formula], And] = {}
_ors: dict[tuple[Formula, Formula], Or] = {}

_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
_KEYWORDS = frozenset(("bot", "top", "box", "dia"))


def bot() -> Formula:
    return _BOT


def atom(name: str) -> Formula:
    f = _atoms.get(name)
    if f is None:
        if not _IDENT.match(name) or name in _KEYWORDS:
            raise ValueError(f"invalid atom name {name!r}")
        f = _atoms[name] = Atom(name)
    return f


def neg(child: Formula) -> Formula:
    f = _nots.get(child)
    if f is None:
        f = _nots[child] = Not(child)
    return f


def box(child: Formula) -> Formula:
    f = _boxes.get(child)
    if f is None:
        f = _boxes[child] = Box(child)
    return f


def conj(left: Formula, right: Formula) -> Formula:
    f = _ands.get((left, right))
    if f is None:
        f = _ands[(left, right)] = And(left, right)
    return f


def disj(left: Formula, right: Formula) -> Formula:
    f = _ors.get((left, right))
    if f is None:
        f = _ors[(left, right)] = Or(left, right)
    return f


def top() -> Formula:
    return neg(_BOT)


def imp(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(imp(a, b), imp(b, a))


def dia(a: Formula) -> Formula:
    return neg(box(neg(a)))


def disj_all(parts: list[Formula]) -> Formula:
    """Right-nested disjunction of ``parts``; the empty disjunction is bot."""
    if not parts:
        return _BOT
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = disj(f, out)
    return out


def conj_all(parts: list[Formula]) -> Formula:
    """Right-nested conjunction of ``parts``; the empty conjunction is top."""
    if not parts:
        return top()
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = conj(f, out)
    return out


# ---------------------------------------------------------------------------
# Measures and structural operations

def weight(f: Formula) -> int:
    """Number of syntax-tree nodes of the core tree."""
    return f.weight


def box_depth(f: Formula) -> int:
    """Maximal number of boxes on a root-to-leaf path."""
    return f.box_depth


def subformulas(f: Formula) -> frozenset[Formula]:
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if g.kind in ("not", "box"):
            stack.append(g.child)
        elif g.kind in ("and", "or"):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def variables(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if g.kind == "atom")


def occurrences(var: str, f: Formula) -> int:
    """Number of occurrences of Atom(var) leaves in f."""
    if f.kind == "atom":
        return 1 if f.name == var else 0
    if f.kind == "bot":
        return 0
    if f.kind in ("not", "box"):
        return occurrences(var, f.child)
    return occurrences(var, f.left) + occurrences(var, f.right)


def substitute(f: Formula, var: str, g: Formula) -> Formula:
    """Replace every Atom(var) leaf of f by g."""
    memo: dict[Formula, Formula] = {}

    def go(h: Formula) -> Formula:
        r = memo.get(h)
        if r is not None:
            return r
        if h.kind == "atom":
            r = g if h.name == var else h
        elif h.kind == "bot":
            r = h
        elif h.kind == "not":
            r = neg(go(h.child))
        elif h.kind == "box":
            r = box(go(h.child))
        elif h.kind == "and":
            r = conj(go(h.left), go(h.right))
        else:
            r = disj(go(h.left), go(h.right))
        memo[h] = r
        return r

    return go(f)


def diagonal(f: Formula) -> Formula:
    """The diagonal formula box(f -> box f) in core syntax."""
    return box(disj(neg(f), box(f)))


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)"
    r"|(?P<op><->|->|<>|\[\]|[~&|()])"
    r"|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad") is not None:
            raise ParseError(f"unknown token {m.group('bad')!r}", m.start("bad"))
        tok = m.group("ident") or m.group("op")
        tokens.append((tok, m.start() + (len(m.group(0)) - len(tok))))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.here())
        self.pos += 1
        return tok

    def expect(self, want: str) -> None:
        tok = self.peek()
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok!r}", self.here())
        self.pos += 1

    def formula(self) -> Formula:
        return self.iff_level()

    def iff_level(self) -> Formula:
        f = self.imp_level()
        while self.peek() == "<->":
            self.take()
            f = iff(f, self.imp_level())
        return f

    def imp_level(self) -> Formula:
        f = self.or_level()
        if self.peek() == "->":
            self.take()
            return imp(f, self.imp_level())
        return f

    def or_level(self) -> Formula:
        f = self.and_level()
        while self.peek() == "|":
            self.take()
            f = disj(f, self.and_level())
        return f

    def and_level(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = conj(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return neg(self.unary())
        if tok in ("box", "[]"):
            self.take()
            return box(self.unary())
        if tok in ("dia", "<>"):
            self.take()
            return dia(self.unary())
        return self.atomic()

    def atomic(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if tok == "bot":
            self.take()
            return bot()
        if tok == "top":
            self.take()
            return top()
        if tok is not None and _IDENT.match(tok) and tok not in _KEYWORDS:
            self.take()
            return atom(tok)
        raise ParseError(f"expected a formula, found {tok!r}", self.here())


def parse(text: str) -> Formula:
    """Parse concrete syntax into the desugared core tree."""
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r}", p.here())
    return f


# ---------------------------------------------------------------------------
# Printing

def fprint(f: Formula, sugar: bool = False) -> str:
    """Deterministic rendering; with sugar, -> / <> / top are restored."""
    if not sugar:
        return str(f)
    return _sugar_render(f, _PREC_OR - 1)


def _sugar_wrap(f: Formula, prec: int, ctx_prec: int, body: str) -> str:
    if prec < ctx_prec:
        return "(" + body + ")"
    return body


_PREC_IMP = 1


def _sugar_render(f: Formula, ctx_prec: int) -> str:
    if f.kind == "not":
        if f.child is _BOT:
            return "top"
        c = f.child
        if c.kind == "box" and c.child.kind == "not":
            body = "<> " + _sugar_render(c.child.child, _PREC_UNARY)
            return _sugar_wrap(f, _PREC_UNARY, ctx_prec, body)
        return _sugar_wrap(f, _PREC_UNARY, ctx_prec, "~" + _sugar_render(f.child, _PREC_UNARY))
    if f.kind == "or" and f.left.kind == "not":
        body = (_sugar_render(f.left.child, _PREC_OR)
                + " -> " + _sugar_render(f.right, _PREC_IMP))
        return _sugar_wrap(f, _PREC_IMP, ctx_prec, body)
    if f.kind == "or":
        body = (_sugar_render(f.left, _PREC_OR) + " | "
                + _sugar_render(f.right, _PREC_OR + 1))
        return _sugar_wrap(f, _PREC_OR, ctx_prec, body)
    if f.kind == "and":
        body = (_sugar_render(f.left, _PREC_AND) + " & "
                + _sugar_render(f.right, _PREC_AND + 1))
        return _sugar_wrap(f, _PREC_AND, ctx_prec, body)
    if f.kind == "box":
        return _sugar_wrap(f, _PREC_UNARY, ctx_prec, "box " + _sugar_render(f.child, _PREC_UNARY))
    return str(f)
