"""Terminating backward proof search for GL, proof and countermodel
extraction.

Critical sequents (Pi, box G => box D, La) are classified per the search
procedure: provable leaf on a shared atom, bot on the left, or a shared boxed
formula (the loop check); unprovable leaf when the succedent has no boxes;
otherwise one disjunctive child per boxed succedent formula with the box-gl
premise (box G, G, box a => a).
"""

from __future__ import annotations

from .formula import Formula, bot, box
from ._search import SearchTree, first_unprovable_child, replay_closure, run_search
from .kripke import KripkeModel, frame_check, refutes
from .proofkit import InternalError, Proof, identity_proof
from .sequent import (EMPTY, Logic, Sequent, boxed_set_size, mset, seq_weight,
                      subformula_boxes)

__all__ = ["search_gl", "extract_proof_gl", "countermodel_gl", "SearchTree"]


def search_gl(s: Sequent) -> SearchTree:
    """Backward proof search; total, returns the marked AND/OR tree."""
    if s.logic is not Logic.GL:
        raise ValueError("search_gl expects a GL sequent")
    n = len(subformula_boxes(s))
    c = (1 << n) * seq_weight(s)

    def measure(t: Sequent) -> tuple[int, int]:
        return (c - boxed_set_size(t.ante), seq_weight(t))

    return run_search(s, measure, _classify, _jumps)


def _classify(s: Sequent):
    ante, succ = s.ante, s.succ
    if bot() in ante.counts:
        return ("bot",)
    for f in ante.support():
        if f.kind == "atom" and f in succ.counts:
            return ("atom", f)
    boxed_succ = {f for f in succ.counts if f.is_boxed()}
    for f in ante.support():
        if f.is_boxed() and f in boxed_succ:
            return ("loop", f.child)
    if not boxed_succ:
        return ("no-box",)
    return None


def _jump_premise(s: Sequent, principal: Formula) -> Sequent:
    boxed = s.ante.boxed()
    return Sequent(Logic.GL, boxed.union(boxed.unboxed()).add(principal),
                   mset([principal.child]))


def _jumps(s: Sequent):
    out = []
    for f in s.succ.support():
        if f.is_boxed():
            # The loop check guarantees the principal is not already on the
            # left, which is what bounds the jumps per branch.
            if f in s.ante.counts:
                raise InternalError(f"jump on stored principal {f} at {s}")
            out.append((f, _jump_premise(s, f)))
    return out


def extract_proof_gl(tree: SearchTree) -> Proof:
    """Turn a provable search tree into a checkable proof object."""
    if not tree.provable:
        raise ValueError("extract_proof_gl needs a provable search tree")
    memo: dict[int, Proof] = {}

    def go(t: SearchTree) -> Proof:
        p = memo.get(id(t))
        if p is not None:
            return p
        s = t.sequent
        if t.kind == "leaf":
            kind = t.reason[0]
            if kind == "bot":
                p = Proof("axiom-bot", s, bot())
            elif kind == "atom":
                p = Proof("axiom-p", s, t.reason[1])
            elif kind == "loop":
                # Shared boxed formula: jump on it; its premise has the body
                # on both sides and closes with a structural identity proof.
                alpha = t.reason[1]
                premise = _jump_premise(s, box(alpha))
                sub = identity_proof(Logic.GL, EMPTY,
                                     premise.ante.remove(alpha),
                                     alpha, EMPTY)
                p = Proof("box-gl", s, box(alpha), (sub,))
            else:
                raise InternalError(f"extracting an unprovable leaf {s}")
        elif t.kind == "modal":
            for principal, c in zip(t.principals, t.children):
                if c.provable:
                    p = Proof("box-gl", s, principal, (go(c),))
                    break
            else:
                raise InternalError(f"provable modal node without provable child {s}")
        else:
            by_sequent = {c.sequent: c for c in t.children}
            p = replay_closure(t.deriv, lambda u: go(by_sequent[u]), Proof)
        memo[id(t)] = p
        return p

    return go(tree)


def countermodel_gl(tree: SearchTree) -> tuple[KripkeModel, int]:
    """Build a finite irreflexive transitive model refuting the root of an
    unprovable search tree; the result is validated against the oracle."""
    if tree.provable:
        raise ValueError("countermodel_gl needs an unprovable search tree")
    valuations: list[set[str]] = []
    relation: set[tuple[int, int]] = set()

    def build(t: SearchTree) -> tuple[int, list[int]]:
        if t.kind == "closure":
            return build(first_unprovable_child(t))
        s = t.sequent
        w = len(valuations)
        valuations.append({f.name for f in s.ante.counts if f.kind == "atom"})
        cone = [w]
        if t.kind == "modal":
            for c in t.children:
                _, sub = build(c)
                for u in sub:
                    relation.add((w, u))
                cone.extend(sub)
        return w, cone

    root_world, _ = build(tree)
    model = KripkeModel(range(len(valuations)), relation,
                        {i: v for i, v in enumerate(valuations)})
    if not frame_check(model, Logic.GL):
        raise InternalError("extracted GL countermodel fails the frame check")
    if not refutes(model, root_world, tree.sequent):
        raise InternalError(
            f"extracted GL countermodel does not refute {tree.sequent}")
    return model, root_world
