"""Finite Kripke semantics: model checking and bounded countermodel search.

This is the independent oracle the provers are validated against.  GL models
are irreflexive transitive frames, Grz models reflexive transitive
antisymmetric ones; finiteness supplies converse well-foundedness.

``bounded_countermodel`` enumerates frames in a canonical order and scans
valuations restricted to the sequent's variables.  The scan is vectorized:
the truth of a formula across all (valuation, world) pairs of one frame is a
single big-integer bitmask, with bit ``v * n + w`` meaning "true at world w
under valuation v".  Frames with up to 4 worlds are enumerated by raw
relation bit-pattern; for 5+ worlds only naturally labeled frames
(relation compatible with the numeric world order) are generated, which
preserves refutability since models are closed under isomorphism.
"""

from __future__ import annotations

from .formula import Formula, ParseError
from .formula import atom as _mk_atom
from .sequent import Logic, Sequent

__all__ = [
    "KripkeModel", "eval_at", "eval_plain", "frame_check", "refutes",
    "bounded_countermodel", "model_str", "parse_model", "WORLD_CAP",
]

WORLD_CAP = 6


class KripkeModel:
    """Finite frame with valuation: worlds, relation pairs, world -> atoms."""

    __slots__ = ("worlds", "relation", "valuation", "_succ")

    def __init__(self, worlds, relation, valuation):
        self.worlds = tuple(sorted(worlds))
        self.relation = frozenset(relation)
        self.valuation = {w: frozenset(valuation.get(w, ())) for w in self.worlds}
        known = set(self.worlds)
        for a, b in self.relation:
            if a not in known or b not in known:
                raise ValueError(f"relation pair ({a},{b}) uses unknown world")
        self._succ = {w: tuple(sorted(v for u, v in self.relation if u == w))
                      for w in self.worlds}

    def successors(self, w: int) -> tuple[int, ...]:
        return self._succ[w]

    def __repr__(self) -> str:
        return f"<KripkeModel {len(self.worlds)} worlds>"


def eval_plain(m: KripkeModel, w: int, f: Formula) -> bool:
    """Forcing relation, straightforward recursion (no memo)."""
    if w not in m.valuation:
        raise KeyError(f"unknown world {w}")
    k = f.kind
    if k == "bot":
        return False
    if k == "atom":
        return f.name in m.valuation[w]
    if k == "not":
        return not eval_plain(m, w, f.child)
    if k == "and":
        return eval_plain(m, w, f.left) and eval_plain(m, w, f.right)
    if k == "or":
        return eval_plain(m, w, f.left) or eval_plain(m, w, f.right)
    return all(eval_plain(m, v, f.child) for v in m.successors(w))


def eval_at(m: KripkeModel, w: int, f: Formula,
            memo: dict[tuple[int, Formula], bool] | None = None) -> bool:
    """Forcing relation with memoization over (world, formula)."""
    if w not in m.valuation:
        raise KeyError(f"unknown world {w}")
    if memo is None:
        memo = {}

    def go(u: int, g: Formula) -> bool:
        key = (u, g)
        r = memo.get(key)
        if r is not None:
            return r
        k = g.kind
        if k == "bot":
            r = False
        elif k == "atom":
            r = g.name in m.valuation[u]
        elif k == "not":
            r = not go(u, g.child)
        elif k == "and":
            r = go(u, g.left) and go(u, g.right)
        elif k == "or":
            r = go(u, g.left) or go(u, g.right)
        else:
            r = all(go(v, g.child) for v in m.successors(u))
        memo[key] = r
        return r

    return go(w, f)


def frame_check(m: KripkeModel, logic: Logic) -> bool:
    rel = m.relation
    for a, b in rel:
        for c, d in rel:
            if b == c and (a, d) not in rel:
                return False
    if logic is Logic.GL:
        return all((w, w) not in rel for w in m.worlds)
    reflexive = all((w, w) in rel for w in m.worlds)
    antisym = all(not (a != b and (b, a) in rel) for a, b in rel)
    return reflexive and antisym


def refutes(m: KripkeModel, w: int, s: Sequent) -> bool:
    """All antecedent formulas true and all succedent formulas false at w."""
    if s.storage.counts:
        raise ValueError("refutes is defined for empty-storage sequents")
    memo: dict[tuple[int, Formula], bool] = {}
    return (all(eval_at(m, w, f, memo) for f in s.ante.counts)
            and not any(eval_at(m, w, f, memo) for f in s.succ.counts))


# ---------------------------------------------------------------------------
# Frame enumeration

_frame_cache: dict[tuple[Logic, int], list[int]] = {}


def _transitive(rel: int, n: int) -> bool:
    # rel bit i*n+j set <=> i R j
    rows = [(rel >> (i * n)) & ((1 << n) - 1) for i in range(n)]
    for i in range(n):
        ri = rows[i]
        acc = ri
        j = ri
        while j:
            low = j & -j
            acc |= rows[low.bit_length() - 1]
            j ^= low
        if acc != ri:
            return False
    return True


def _antisymmetric(rel: int, n: int) -> bool:
    for i in range(n):
        for j in range(i + 1, n):
            if (rel >> (i * n + j)) & 1 and (rel >> (j * n + i)) & 1:
                return False
    return True


def _frames_raw(logic: Logic, n: int) -> list[int]:
    """All admissible relations on n worlds, ascending by bit pattern."""
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = 0
    if logic is Logic.GRZ:
        for i in range(n):
            diag |= 1 << (i * n + i)
    out = []
    for mask in range(1 << len(off_diag)):
        rel = diag
        m = mask
        while m:
            low = m & -m
            i, j = off_diag[low.bit_length() - 1]
            rel |= 1 << (i * n + j)
            m ^= low
        if not _transitive(rel, n):
            continue
        if logic is Logic.GRZ and not _antisymmetric(rel, n):
            continue
        out.append(rel)
    return out


def _frames_natural(logic: Logic, n: int) -> list[int]:
    """Naturally labeled frames only (i R j with i != j implies i < j)."""
    out: list[int] = []

    def build(j: int, preds: list[int], rel: int):
        if j == n:
            out.append(rel)
            return
        for p in range(1 << j):
            ok = True
            q = p
            while q:
                low = q & -q
                i = low.bit_length() - 1
                if preds[i] & ~p:
                    ok = False
                    break
                q ^= low
            if not ok:
                continue
            r2 = rel
            q = p
            while q:
                low = q & -q
                i = low.bit_length() - 1
                r2 |= 1 << (i * n + j)
                q ^= low
            build(j + 1, preds + [p], r2)

    diag = 0
    if logic is Logic.GRZ:
        for i in range(n):
            diag |= 1 << (i * n + i)
    build(0, [], diag)
    out.sort()
    return out


def _frames(logic: Logic, n: int) -> list[int]:
    key = (logic, n)
    if key not in _frame_cache:
        _frame_cache[key] = _frames_raw(logic, n) if n <= 4 else _frames_natural(logic, n)
    return _frame_cache[key]


# ---------------------------------------------------------------------------
# Vectorized valuation scan

_atom_mask_cache: dict[tuple[int, int], list[int]] = {}
_col_mask_cache: dict[tuple[int, int], list[int]] = {}


def _atom_masks(n: int, k: int) -> list[int]:
    # Bit v*n+w of mask[j]: atom j true at world w under valuation v, where
    # valuation v encodes atom j at world w in bit w*k+j.
    key = (n, k)
    masks = _atom_mask_cache.get(key)
    if masks is None:
        nv = 1 << (n * k)
        masks = [0] * k
        for v in range(nv):
            base = v * n
            for w in range(n):
                chunk = v >> (w * k)
                for j in range(k):
                    if (chunk >> j) & 1:
                        masks[j] |= 1 << (base + w)
        _atom_mask_cache[key] = masks
    return masks


def _col_masks(n: int, nv: int) -> list[int]:
    key = (n, nv)
    cols = _col_mask_cache.get(key)
    if cols is None:
        col0 = 0
        for v in range(nv):
            col0 |= 1 << (v * n)
        cols = [col0 << w for w in range(n)]
        _col_mask_cache[key] = cols
    return cols


def _truth_mask(f: Formula, n: int, rel: int, atoms: dict[str, int],
                full: int, cols: list[int], memo: dict[Formula, int]) -> int:
    r = memo.get(f)
    if r is not None:
        return r
    k = f.kind
    if k == "bot":
        r = 0
    elif k == "atom":
        r = atoms[f.name]
    elif k == "not":
        r = full ^ _truth_mask(f.child, n, rel, atoms, full, cols, memo)
    elif k == "and":
        r = (_truth_mask(f.left, n, rel, atoms, full, cols, memo)
             & _truth_mask(f.right, n, rel, atoms, full, cols, memo))
    elif k == "or":
        r = (_truth_mask(f.left, n, rel, atoms, full, cols, memo)
             | _truth_mask(f.right, n, rel, atoms, full, cols, memo))
    else:
        child = _truth_mask(f.child, n, rel, atoms, full, cols, memo)
        r = 0
        for w in range(n):
            acc = full
            row = (rel >> (w * n)) & ((1 << n) - 1)
            while row:
                low = row & -row
                w2 = low.bit_length() - 1
                d = w2 - w
                acc &= (child >> d) if d >= 0 else (child << -d)
                row ^= low
            r |= acc & cols[w]
    memo[f] = r
    return r


def bounded_countermodel(s: Sequent, logic: Logic, max_worlds: int = 4,
                         cap: int = WORLD_CAP) -> tuple[KripkeModel, int] | None:
    """Exhaustive refutation search over frames with at most max_worlds
    worlds, valuations restricted to the sequent's variables.  Returns the
    first refuting (model, world) in canonical order, or None."""
    if s.storage.counts:
        raise ValueError("bounded_countermodel needs an empty-storage sequent")
    if max_worlds > cap:
        raise ValueError(f"max_worlds {max_worlds} exceeds cap {cap}")
    names: set[str] = set()
    for f in list(s.ante.counts) + list(s.succ.counts):
        names.update(a.name for a in _collect_atoms(f))
    var_names = sorted(names)
    k = len(var_names)
    for n in range(1, max_worlds + 1):
        nv = 1 << (n * k)
        full = (1 << (nv * n)) - 1
        masks = _atom_masks(n, k) if k else []
        atoms = {name: masks[j] for j, name in enumerate(var_names)}
        cols = _col_masks(n, nv)
        for rel in _frames(logic, n):
            memo: dict[Formula, int] = {}
            refut = full
            for f in s.ante.counts:
                refut &= _truth_mask(f, n, rel, atoms, full, cols, memo)
                if not refut:
                    break
            if refut:
                for f in s.succ.counts:
                    refut &= full ^ _truth_mask(f, n, rel, atoms, full, cols, memo)
                    if not refut:
                        break
            if not refut:
                continue
            bit = (refut & -refut).bit_length() - 1
            v, w = divmod(bit, n)
            valuation = {}
            for w2 in range(n):
                chunk = v >> (w2 * k)
                valuation[w2] = {var_names[j] for j in range(k) if (chunk >> j) & 1}
            pairs = set()
            for i in range(n):
                for j in range(n):
                    if (rel >> (i * n + j)) & 1:
                        pairs.add((i, j))
            return KripkeModel(range(n), pairs, valuation), w
    return None


def _collect_atoms(f: Formula):
    stack, seen, out = [f], set(), []
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if g.kind == "atom":
            out.append(g)
        elif g.kind in ("not", "box"):
            stack.append(g.child)
        elif g.kind in ("and", "or"):
            stack.append(g.left)
            stack.append(g.right)
    return out


# ---------------------------------------------------------------------------
# Model exchange format

def model_str(m: KripkeModel, root: int | None = None) -> str:
    lines = ["worlds " + " ".join(str(w) for w in m.worlds)]
    if root is not None:
        lines.append(f"root {root}")
    pairs = " ".join(f"({a},{b})" for a, b in sorted(m.relation))
    lines.append("relation " + pairs if pairs else "relation")
    for w in m.worlds:
        names = " ".join(sorted(m.valuation[w]))
        lines.append(f"val {w} : {names}".rstrip())
    return "\n".join(lines) + "\n"


def parse_model(text: str) -> tuple[KripkeModel, int | None]:
    worlds: list[int] = []
    root: int | None = None
    relation: set[tuple[int, int]] = set()
    valuation: dict[int, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "worlds":
            worlds = [int(t) for t in rest.split()]
        elif head == "root":
            root = int(rest)
        elif head == "relation":
            for tok in rest.split():
                if not (tok.startswith("(") and tok.endswith(")")):
                    raise ParseError(f"bad relation token {tok!r}", lineno)
                a, b = tok[1:-1].split(",")
                relation.add((int(a), int(b)))
        elif head == "val":
            wtxt, _, names = rest.partition(":")
            atoms = set()
            for name in names.split():
                _mk_atom(name)
                atoms.add(name)
            valuation[int(wtxt)] = atoms
        else:
            raise ParseError(f"unknown model line {head!r}", lineno)
    return KripkeModel(worlds, relation, valuation), root
