"""Finite multisets of formulas, two- and three-zone sequents, and closure.

A GL sequent is ``G => D``; a Grz sequent carries a third storage multiset of
boxed formulas, written ``S | G => D``.  The closure of a sequent is the set
of critical sequents reached by exhaustively applying the invertible rules
backwards; ``closure_derivation`` additionally records the applied steps so
proofs can replay them.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator

from .formula import Formula, ParseError, box, parse, subformulas

__all__ = [
    "Logic", "Multiset", "EMPTY", "mset", "Sequent",
    "seq_weight", "boxed_set_size", "is_critical", "subformula_boxes",
    "closure", "closure_derivation", "ClosureStep", "extend",
    "parse_sequent", "sequent_str",
]


class Logic(enum.Enum):
    GL = "gl"
    GRZ = "grz"


class Multiset:
    """Immutable finite multiset of formulas (counts are positive)."""

    __slots__ = ("counts", "_hash", "_weight", "_keys")

    def __init__(self, counts: dict[Formula, int]):
        self.counts = counts
        self._hash = None
        self._weight = None
        self._keys = None

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash(frozenset(self.counts.items()))
        return h

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Multiset) and self.counts == other.counts)

    def __contains__(self, f: Formula) -> bool:
        return f in self.counts

    def __len__(self) -> int:
        return sum(self.counts.values())

    def __bool__(self) -> bool:
        return bool(self.counts)

    def __iter__(self) -> Iterator[Formula]:
        """Iterate with multiplicity, in canonical (printed) order."""
        for f in self.support():
            for _ in range(self.counts[f]):
                yield f

    def count(self, f: Formula) -> int:
        return self.counts.get(f, 0)

    def support(self) -> tuple[Formula, ...]:
        """The underlying set, sorted by printed form."""
        keys = self._keys
        if keys is None:
            keys = self._keys = tuple(sorted(self.counts, key=str))
        return keys

    @property
    def weight(self) -> int:
        w = self._weight
        if w is None:
            w = self._weight = sum(f.weight * n for f, n in self.counts.items())
        return w

    def add(self, f: Formula, n: int = 1) -> Multiset:
        d = dict(self.counts)
        d[f] = d.get(f, 0) + n
        return Multiset(d)

    def remove(self, f: Formula, n: int = 1) -> Multiset:
        have = self.counts.get(f, 0)
        if have < n:
            raise KeyError(f"removing {n} occurrences of {f}, multiset has {have}")
        d = dict(self.counts)
        if have == n:
            del d[f]
        else:
            d[f] = have - n
        return Multiset(d)

    def union(self, other: Multiset) -> Multiset:
        if not other.counts:
            return self
        if not self.counts:
            return other
        d = dict(self.counts)
        for f, n in other.counts.items():
            d[f] = d.get(f, 0) + n
        return Multiset(d)

    def boxed(self) -> Multiset:
        return Multiset({f: n for f, n in self.counts.items() if f.is_boxed()})

    def unboxed(self) -> Multiset:
        """Strip the outer box of every element, keeping multiplicities."""
        d: dict[Formula, int] = {}
        for f, n in self.counts.items():
            if not f.is_boxed():
                raise ValueError(f"unboxing non-boxed formula {f}")
            d[f.child] = d.get(f.child, 0) + n
        return Multiset(d)

    def box_all(self) -> Multiset:
        d: dict[Formula, int] = {}
        for f, n in self.counts.items():
            g = box(f)
            d[g] = d.get(g, 0) + n
        return Multiset(d)

    def __str__(self) -> str:
        return ", ".join(str(f) for f in self)

    def __repr__(self) -> str:
        return f"<Multiset {{{self}}}>"


EMPTY = Multiset({})


def mset(items: Iterable[Formula] = ()) -> Multiset:
    d: dict[Formula, int] = {}
    for f in items:
        d[f] = d.get(f, 0) + 1
    return Multiset(d) if d else EMPTY


class Sequent:
    """A sequent ``G => D`` (GL) or ``S | G => D`` (Grz)."""

    __slots__ = ("logic", "storage", "ante", "succ", "_hash")

    def __init__(self, logic: Logic, ante: Multiset, succ: Multiset,
                 storage: Multiset = EMPTY):
        if logic is Logic.GL:
            if storage.counts:
                raise ValueError("GL sequents have no storage zone")
        else:
            for f in storage.counts:
                if not f.is_boxed():
                    raise ValueError(f"storage formula {f} is not boxed")
        self.logic = logic
        self.storage = storage
        self.ante = ante
        self.succ = succ
        self._hash = None

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.logic, self.storage, self.ante, self.succ))
        return h

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, Sequent) and self.logic is other.logic
                and self.ante == other.ante and self.succ == other.succ
                and self.storage == other.storage)

    def with_zones(self, storage=None, ante=None, succ=None) -> Sequent:
        return Sequent(self.logic,
                       self.ante if ante is None else ante,
                       self.succ if succ is None else succ,
                       self.storage if storage is None else storage)

    def __str__(self) -> str:
        return sequent_str(self)

    def __repr__(self) -> str:
        return f"<Sequent [{self.logic.value}] {self}>"


def seq_weight(s: Sequent) -> int:
    """w(G,D): antecedent plus succedent weight; storage does not count."""
    return s.ante.weight + s.succ.weight


def boxed_set_size(m: Multiset) -> int:
    """Number of boxed formulas in m counted as a set."""
    return sum(1 for f in m.counts if f.is_boxed())


def subformula_boxes(s: Sequent, with_storage: bool = False) -> frozenset[Formula]:
    """Boxed subformulas of the sequent's formulas, counted as a set."""
    out: set[Formula] = set()
    zones = [s.ante, s.succ] + ([s.storage] if with_storage else [])
    for zone in zones:
        for f in zone.counts:
            out.update(g for g in subformulas(f) if g.is_boxed())
    return frozenset(out)


def _decomposable(s: Sequent) -> tuple[str, Formula] | None:
    """First backward-invertible step, scanning zones in canonical order."""
    for f in s.ante.support():
        k = f.kind
        if k == "not":
            return ("not-l", f)
        if k == "and":
            return ("and-l", f)
        if k == "or":
            return ("or-l", f)
        if k == "box" and s.logic is Logic.GRZ:
            return ("box-t", f)
    for f in s.succ.support():
        k = f.kind
        if k == "not":
            return ("not-r", f)
        if k == "and":
            return ("and-r", f)
        if k == "or":
            return ("or-r", f)
    return None


def is_critical(s: Sequent) -> bool:
    """No invertible rule applies backwards (includes box-t in Grz mode)."""
    return _decomposable(s) is None


def _apply_backward(s: Sequent, rule: str, f: Formula) -> tuple[Sequent, ...]:
    if rule == "not-l":
        return (s.with_zones(ante=s.ante.remove(f), succ=s.succ.add(f.child)),)
    if rule == "and-l":
        return (s.with_zones(ante=s.ante.remove(f).add(f.left).add(f.right)),)
    if rule == "or-l":
        return (s.with_zones(ante=s.ante.remove(f).add(f.left)),
                s.with_zones(ante=s.ante.remove(f).add(f.right)))
    if rule == "not-r":
        return (s.with_zones(succ=s.succ.remove(f), ante=s.ante.add(f.child)),)
    if rule == "and-r":
        return (s.with_zones(succ=s.succ.remove(f).add(f.left)),
                s.with_zones(succ=s.succ.remove(f).add(f.right)))
    if rule == "or-r":
        return (s.with_zones(succ=s.succ.remove(f).add(f.left).add(f.right)),)
    if rule == "box-t":
        # Storage is kept duplicate-free: re-storing an already stored box
        # leaves the zone unchanged (the stored multiset is treated as a set).
        st = s.storage if f in s.storage.counts else s.storage.add(f)
        return (s.with_zones(storage=st, ante=s.ante.remove(f).add(f.child)),)
    raise ValueError(f"unknown backward rule {rule}")


class ClosureStep:
    """Derivation node recording how a sequent decomposes to critical ones."""

    __slots__ = ("sequent", "rule", "principal", "children")

    def __init__(self, sequent: Sequent, rule: str | None,
                 principal: Formula | None, children: tuple[ClosureStep, ...]):
        self.sequent = sequent
        self.rule = rule
        self.principal = principal
        self.children = children

    def members(self) -> list[Sequent]:
        if self.rule is None:
            return [self.sequent]
        out: list[Sequent] = []
        seen: set[Sequent] = set()
        stack: list[ClosureStep] = [self]
        visited: set[int] = set()
        while stack:
            node = stack.pop()
            if id(node) in visited:
                continue
            visited.add(id(node))
            if node.rule is None:
                if node.sequent not in seen:
                    seen.add(node.sequent)
                    out.append(node.sequent)
            else:
                stack.extend(node.children)
        out.sort(key=str)
        return out


def closure_derivation(s: Sequent) -> ClosureStep:
    """Decompose s to its critical closure, remembering each backward step."""
    memo: dict[Sequent, ClosureStep] = {}

    def go(t: Sequent) -> ClosureStep:
        node = memo.get(t)
        if node is not None:
            return node
        step = _decomposable(t)
        if step is None:
            node = ClosureStep(t, None, None, ())
        else:
            rule, f = step
            node = ClosureStep(t, rule, f,
                               tuple(go(u) for u in _apply_backward(t, rule, f)))
        memo[t] = node
        return node

    return go(s)


def closure(s: Sequent) -> list[Sequent]:
    """Cl(s): the critical sequents reachable backwards, deduplicated and
    sorted by printed form."""
    seen: set[Sequent] = set()
    out: list[Sequent] = []
    stack = [s]
    while stack:
        t = stack.pop()
        step = _decomposable(t)
        if step is None:
            if t not in seen:
                seen.add(t)
                out.append(t)
        else:
            stack.extend(_apply_backward(t, *step))
    out.sort(key=str)
    return out


def extend(s: Sequent, storage_add: Multiset = EMPTY, ante_add: Multiset = EMPTY,
           succ_add: Multiset = EMPTY) -> Sequent:
    """S(Th;Om) / S(La|Th;Om): zone-wise multiset union."""
    if s.logic is Logic.GL and storage_add.counts:
        raise ValueError("GL sequents have no storage zone")
    for f in storage_add.counts:
        if not f.is_boxed():
            raise ValueError(f"storage extension {f} is not boxed")
    return s.with_zones(storage=s.storage.union(storage_add),
                        ante=s.ante.union(ante_add),
                        succ=s.succ.union(succ_add))


# ---------------------------------------------------------------------------
# Text form: "G => D" and "S | G => D"; lists comma-separated, empty side
# blank or "-".  A top-level "|" left of "=>" is the storage separator in
# Grz mode, so storage/antecedent formulas with a top-level disjunction must
# be parenthesized there.

def _parse_list(text: str, offset: int) -> Multiset:
    text = text.strip()
    if text in ("", "-"):
        return EMPTY
    items = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ParseError("empty formula in sequent list", offset)
        items.append(parse(part))
    return mset(items)


def _split_top_pipe(text: str) -> tuple[str, str] | None:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            return text[:i], text[i + 1:]
    return None


def parse_sequent(text: str, logic: Logic) -> Sequent:
    arrow = text.find("=>")
    if arrow < 0:
        raise ParseError("sequent text needs '=>'", 0)
    left, right = text[:arrow], text[arrow + 2:]
    storage = EMPTY
    if logic is Logic.GRZ:
        split = _split_top_pipe(left)
        if split is not None:
            st_text, left = split
            storage = _parse_list(st_text, 0)
    return Sequent(logic, _parse_list(left, 0), _parse_list(right, arrow + 2), storage)


def sequent_str(s: Sequent) -> str:
    ante = ", ".join(str(f) for f in s.ante)
    succ = ", ".join(str(f) for f in s.succ)
    core = f"{ante} => {succ}".strip()
    if s.logic is Logic.GRZ and s.storage.counts:
        st = ", ".join(str(f) for f in s.storage)
        return f"{st} | {core}"
    return core
