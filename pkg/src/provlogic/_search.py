"""Shared AND/OR search machinery for the two backward provers.

The search tree alternates closure nodes (conjunctive branching over the
closure of a non-critical sequent) and modal nodes (disjunctive branching
over the backward modal jumps of a critical sequent).  Marks are computed
eagerly bottom-up; failed branches are retained for countermodel extraction.
Verdicts of critical sequents are memoized per search (set PROVLOGIC_NO_MEMO=1
to disable, for differential testing).  The termination measure is checked on
every edge and a violation raises InternalError.
"""

from __future__ import annotations

import os

from .formula import Formula
from .proofkit import InternalError
from .sequent import ClosureStep, Sequent, closure_derivation, is_critical, seq_weight

__all__ = ["SearchTree", "SearchStats", "run_search"]


class SearchStats:
    __slots__ = ("edges", "nodes", "max_weight", "memo_hits")

    def __init__(self):
        self.edges = 0
        self.nodes = 0
        self.max_weight = 0
        self.memo_hits = 0


class SearchTree:
    """AND/OR proof-search tree node.

    kind: "closure" (AND over closure members), "modal" (OR over backward
    modal jumps), or "leaf".  For modal nodes ``principals[i]`` is the boxed
    principal of ``children[i]``.  For leaves ``reason`` is one of
    ("bot",), ("atom", q), ("loop", a) -- the provable cases -- or
    ("no-box",) for the unprovable leaf.
    """

    __slots__ = ("kind", "sequent", "children", "principals", "provable",
                 "measure", "reason", "deriv", "stats")

    def __init__(self, kind, sequent, children=(), principals=(),
                 provable=False, measure=(0, 0), reason=None, deriv=None):
        self.kind = kind
        self.sequent = sequent
        self.children = children
        self.principals = principals
        self.provable = provable
        self.measure = measure
        self.reason = reason
        self.deriv = deriv
        self.stats = None


def run_search(root: Sequent, measure, classify, jumps) -> SearchTree:
    """Generic driver.

    measure(s) -> lexicographic pair; classify(s) -> leaf reason tuple or
    None for critical sequents that need a modal branching; jumps(s) ->
    list of (principal, premise sequent) for the backward modal rules.
    """
    use_memo = os.environ.get("PROVLOGIC_NO_MEMO") != "1"
    memo: dict[Sequent, SearchTree] = {}
    stats = SearchStats()

    def check_edge(parent: SearchTree, child: SearchTree) -> None:
        stats.edges += 1
        if child.measure >= parent.measure:
            raise InternalError(
                f"termination measure did not decrease: {parent.sequent} "
                f"{parent.measure} -> {child.sequent} {child.measure}")

    def node(s: Sequent) -> SearchTree:
        if use_memo:
            t = memo.get(s)
            if t is not None:
                stats.memo_hits += 1
                return t
        stats.nodes += 1
        w = seq_weight(s)
        if w > stats.max_weight:
            stats.max_weight = w
        m = measure(s)
        if m[0] < 0:
            raise InternalError(f"measure bound underflow at {s}: {m}")
        if is_critical(s):
            reason = classify(s)
            if reason is not None:
                t = SearchTree("leaf", s, provable=(reason[0] != "no-box"),
                               measure=m, reason=reason)
            else:
                principals = []
                children = []
                for principal, premise in jumps(s):
                    child = node(premise)
                    principals.append(principal)
                    children.append(child)
                t = SearchTree("modal", s, tuple(children), tuple(principals),
                               any(c.provable for c in children), m)
                for c in t.children:
                    check_edge(t, c)
        else:
            deriv = closure_derivation(s)
            members = deriv.members()
            children = tuple(node(u) for u in members)
            t = SearchTree("closure", s, children,
                           provable=all(c.provable for c in children),
                           measure=m, deriv=deriv)
            for c in t.children:
                check_edge(t, c)
        if use_memo:
            memo[s] = t
        return t

    tree = node(root)
    tree.stats = stats
    return tree


def first_unprovable_child(t: SearchTree) -> SearchTree:
    for c in t.children:
        if not c.provable:
            return c
    raise InternalError(f"no unprovable child under {t.sequent}")


def replay_closure(step: ClosureStep, leaf_proof, proof_cls):
    """Rebuild the invertible steps of a closure derivation as proof nodes;
    leaf_proof(sequent) supplies the subproof for each critical member."""
    memo: dict[int, object] = {}

    def go(st: ClosureStep):
        r = memo.get(id(st))
        if r is not None:
            return r
        if st.rule is None:
            r = leaf_proof(st.sequent)
        else:
            r = proof_cls(st.rule, st.sequent, st.principal,
                          tuple(go(c) for c in st.children))
        memo[id(st)] = r
        return r

    return go(step)
