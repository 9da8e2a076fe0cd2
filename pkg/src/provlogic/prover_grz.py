"""Terminating backward proof search for the storage-based Grz calculus.

Sequents carry a third multiset storing the boxed formulas already treated by
box-t steps and the diagonal formulas introduced by box-grz2 jumps; that is
the explicit loop-preventing mechanism.  The public entry point accepts only
empty-storage sequents; general storages occur in the internal recursion.

Critical sequents (box G | Pi => box D, La) are classified like in GL, with
the loop check reading the storage: a boxed formula shared between storage
and succedent makes a provable leaf.  A modal jump on box a uses the
box-grz1 premise (box G | => a) when D(a) is stored, else the box-grz2
premise (box G, D(a) | G => a).

Countermodel extraction mirrors the GL construction with reflexive closure
added.  A box-grz1 premise drops the antecedent, which can strip the
residues that ground stored boxes at the child world, so the tree-guided
model can fail validation; in that case a bounded oracle enumeration
supplies the model instead (the export contract is unchanged: every returned
model passes frame_check and refutes the root).
"""

from __future__ import annotations

from .formula import Formula, bot, box, diagonal
from ._search import SearchTree, first_unprovable_child, replay_closure, run_search
from .kripke import WORLD_CAP, KripkeModel, bounded_countermodel, frame_check, refutes
from .proofkit import InternalError, Proof, identity_proof
from .sequent import EMPTY, Logic, Sequent, mset, seq_weight, subformula_boxes

__all__ = ["search_grz", "extract_proof_grz", "countermodel_grz", "SearchTree"]


def search_grz(s: Sequent) -> SearchTree:
    """Backward proof search from an empty-storage Grz sequent."""
    if s.logic is not Logic.GRZ:
        raise ValueError("search_grz expects a Grz sequent")
    if s.storage.counts:
        raise ValueError("search_grz accepts only empty-storage sequents "
                         "(the calculi are equivalent on that fragment)")
    n = len(subformula_boxes(s))
    return _search_grz_from(s, n * n)


def _search_grz_from(s: Sequent, storage_bound: int) -> SearchTree:
    def measure(t: Sequent) -> tuple[int, int]:
        return (storage_bound - len(t.storage.counts), seq_weight(t))

    return run_search(s, measure, _classify, _jumps)


def _search_grz_any(s: Sequent) -> SearchTree:
    # Internal entry for non-empty storages (proof extraction recursion).
    n = len(subformula_boxes(s, with_storage=True)) + len(s.storage.counts)
    return _search_grz_from(s, max(n, 2) ** 2)


def _classify(s: Sequent):
    ante, succ = s.ante, s.succ
    if bot() in ante.counts:
        return ("bot",)
    for f in ante.support():
        if f.kind == "atom" and f in succ.counts:
            return ("atom", f)
    boxed_succ = {f for f in succ.counts if f.is_boxed()}
    for f in s.storage.support():
        if f in boxed_succ:
            return ("loop", f.child)
    if not boxed_succ:
        return ("no-box",)
    return None


def _jump_premise(s: Sequent, principal: Formula) -> Sequent:
    d = diagonal(principal.child)
    if d in s.storage.counts:
        return Sequent(Logic.GRZ, EMPTY, mset([principal.child]), s.storage)
    return Sequent(Logic.GRZ, s.storage.unboxed(), mset([principal.child]),
                   s.storage.add(d))


def _jumps(s: Sequent):
    out = []
    for f in s.succ.support():
        if f.is_boxed():
            if f in s.storage.counts:
                raise InternalError(f"jump on stored principal {f} at {s}")
            out.append((f, _jump_premise(s, f)))
    return out


def extract_proof_grz(tree: SearchTree) -> Proof:
    """Turn a provable search tree into a checkable proof object."""
    if not tree.provable:
        raise ValueError("extract_proof_grz needs a provable search tree")
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
                # Shared boxed formula between storage and succedent: close
                # with a box-grz2 jump whose premise carries the unboxed
                # storage, hence the principal's body on both sides, and a
                # structural identity proof on top.
                alpha = t.reason[1]
                sub = identity_proof(Logic.GRZ, s.storage.add(diagonal(alpha)),
                                     s.storage.unboxed().remove(alpha),
                                     alpha, EMPTY)
                p = Proof("box-grz2", s, box(alpha), (sub,))
            else:
                raise InternalError(f"extracting an unprovable leaf {s}")
        elif t.kind == "modal":
            for principal, c in zip(t.principals, t.children):
                if c.provable:
                    rule = ("box-grz1"
                            if diagonal(principal.child) in s.storage.counts
                            else "box-grz2")
                    p = Proof(rule, s, principal, (go(c),))
                    break
            else:
                raise InternalError(f"provable modal node without provable child {s}")
        else:
            by_sequent = {c.sequent: c for c in t.children}
            p = replay_closure(t.deriv, lambda u: go(by_sequent[u]), Proof)
        memo[id(t)] = p
        return p

    return go(tree)


def countermodel_grz(tree: SearchTree, cap: int = WORLD_CAP) -> tuple[KripkeModel, int]:
    """Finite reflexive transitive antisymmetric model refuting the root of
    an unprovable empty-storage search tree, validated against the oracle.
    The tree-guided model is shrunk through the oracle when a smaller one
    exists, and replaced by oracle enumeration when it fails validation."""
    if tree.provable:
        raise ValueError("countermodel_grz needs an unprovable search tree")
    if tree.sequent.storage.counts:
        raise ValueError("countermodels are exported for empty-storage roots only")
    model, world = _tree_model(tree)
    valid = frame_check(model, Logic.GRZ) and refutes(model, world, tree.sequent)
    limit = min(len(model.worlds) - 1, cap) if valid else cap
    if limit >= 1:
        found = bounded_countermodel(tree.sequent, Logic.GRZ, limit, cap=cap)
        if found is not None:
            return found
    if valid:
        return model, world
    raise InternalError(
        f"no Grz countermodel within {cap} worlds for unprovable {tree.sequent}")


def _tree_model(tree: SearchTree) -> tuple[KripkeModel, int]:
    valuations: list[set[str]] = []
    relation: set[tuple[int, int]] = set()

    def build(t: SearchTree) -> tuple[int, list[int]]:
        if t.kind == "closure":
            return build(first_unprovable_child(t))
        s = t.sequent
        w = len(valuations)
        # Atoms from the antecedent plus stored atomic boxes keep simple
        # storage assumptions true at the world.
        val = {f.name for f in s.ante.counts if f.kind == "atom"}
        val.update(f.child.name for f in s.storage.counts
                   if f.child.kind == "atom"
                   and not (f.child in s.succ.counts))
        valuations.append(val)
        relation.add((w, w))
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
    return model, root_world
