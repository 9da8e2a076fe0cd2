"""Proof objects, proof checking, and admissible-rule transformers.

Rule tags: axiom-p, axiom-bot, and-l, and-r, or-l, or-r, not-l, not-r (both
calculi), box-gl (GL), box-t, box-grz1, box-grz2 (Grz).  check_proof verifies
every node against its rule scheme including the multiset arithmetic and the
modal side conditions.

Height conventions: a single-node proof has height 0.  weaken/contract are
height-preserving in GL for atomic and boxed formulas (the cases the
permutation argument covers); contraction and all inversions are
height-preserving in both calculi.  Grz weakening only guarantees validity;
the box-depth height bound is reported as a soft check, not enforced.
"""

from __future__ import annotations

import os

from .formula import Formula, bot, diagonal
from .sequent import (EMPTY, Logic, Multiset, Sequent, mset)
from .sequent import _apply_backward as _backward  # shared backward schemes

__all__ = [
    "Proof", "ProofError", "InternalError",
    "check_proof", "validate_proof", "weaken", "contract", "invert", "cut",
    "proof_str", "parse_proof", "RULES_GL", "RULES_GRZ", "INVERTIBLE_RULES",
]

RULES_GL = frozenset(
    ("axiom-p", "axiom-bot", "and-l", "and-r", "or-l", "or-r",
     "not-l", "not-r", "box-gl"))
RULES_GRZ = frozenset(
    ("axiom-p", "axiom-bot", "and-l", "and-r", "or-l", "or-r",
     "not-l", "not-r", "box-t", "box-grz1", "box-grz2"))
INVERTIBLE_RULES = frozenset(
    ("and-l", "and-r", "or-l", "or-r", "not-l", "not-r", "box-t"))


class ProofError(ValueError):
    """An ill-formed proof node; message names the node and the reason."""


class InternalError(RuntimeError):
    """A soundness invariant failed; indicates a bug, not bad input."""


class Proof:
    """Rule-labeled proof tree node."""

    __slots__ = ("rule", "conclusion", "principal", "premises", "height")

    def __init__(self, rule: str, conclusion: Sequent,
                 principal: Formula | None = None,
                 premises: tuple[Proof, ...] = ()):
        self.rule = rule
        self.conclusion = conclusion
        self.principal = principal
        self.premises = premises
        self.height = 1 + max((q.height for q in premises), default=-1)

    def __repr__(self) -> str:
        return f"<Proof {self.rule} |- {self.conclusion}>"

    def size(self) -> int:
        return 1 + sum(q.size() for q in self.premises)


def _atomic_or_boxed(m: Multiset) -> bool:
    return all(f.is_atomic() or f.is_boxed() for f in m.counts)


def _all_atomic(m: Multiset) -> bool:
    return all(f.is_atomic() for f in m.counts)


def _check_node(p: Proof) -> None:
    s = p.conclusion
    rule, f = p.rule, p.principal
    allowed = RULES_GL if s.logic is Logic.GL else RULES_GRZ
    if rule not in allowed:
        raise ProofError(f"rule {rule} not in calculus for {s.logic.value}: {s}")

    def need(k: int) -> None:
        if len(p.premises) != k:
            raise ProofError(f"{rule} expects {k} premises, got {len(p.premises)}: {s}")

    def premise_is(i: int, t: Sequent) -> None:
        got = p.premises[i].conclusion
        if got != t:
            raise ProofError(f"{rule} premise {i} should be [{t}], got [{got}]: {s}")

    if rule == "axiom-p":
        need(0)
        if f is None or f.kind != "atom" or f not in s.ante.counts or f not in s.succ.counts:
            raise ProofError(f"axiom-p needs a shared atom on both sides: {s}")
        return
    if rule == "axiom-bot":
        need(0)
        if bot() not in s.ante.counts:
            raise ProofError(f"axiom-bot needs bot in the antecedent: {s}")
        return

    if rule in ("not-l", "and-l", "or-l", "not-r", "and-r", "or-r", "box-t"):
        zone = s.ante if rule.endswith("-l") or rule == "box-t" else s.succ
        if f is None or f not in zone.counts:
            raise ProofError(f"{rule} principal {f} not in its zone: {s}")
        want_kind = {"not-l": "not", "not-r": "not", "and-l": "and", "and-r": "and",
                     "or-l": "or", "or-r": "or", "box-t": "box"}[rule]
        if f.kind != want_kind:
            raise ProofError(f"{rule} principal {f} has wrong shape: {s}")
        if rule == "box-t" and s.logic is not Logic.GRZ:
            raise ProofError(f"box-t is a Grz rule: {s}")
        if rule == "box-t":
            # Both the literal multiset instance and the deduplicated one
            # (storing a box already present leaves the storage unchanged,
            # justified by admissible storage weakening) are accepted.
            need(1)
            got = p.premises[0].conclusion
            base = s.with_zones(ante=s.ante.remove(f).add(f.child))
            if got != base.with_zones(storage=s.storage.add(f)) and not (
                    f in s.storage.counts and got == base):
                raise ProofError(f"box-t premise mismatch: {s}")
            return
        targets = _backward(s, rule, f)
        need(len(targets))
        for i, t in enumerate(targets):
            premise_is(i, t)
        return

    if rule == "box-gl":
        need(1)
        if f is None or not f.is_boxed() or f not in s.succ.counts:
            raise ProofError(f"box-gl principal must be a boxed succedent formula: {s}")
        boxed = s.ante.boxed()
        if not _all_atomic(Multiset({g: n for g, n in s.ante.counts.items()
                                     if not g.is_boxed()})):
            raise ProofError(f"box-gl context Pi must be atomic: {s}")
        if not _atomic_or_boxed(s.succ.remove(f)):
            raise ProofError(f"box-gl right context must be atomic or boxed: {s}")
        t = Sequent(Logic.GL, boxed.union(boxed.unboxed()).add(f), mset([f.child]))
        premise_is(0, t)
        return

    if rule in ("box-grz1", "box-grz2"):
        need(1)
        if f is None or not f.is_boxed() or f not in s.succ.counts:
            raise ProofError(f"{rule} principal must be a boxed succedent formula: {s}")
        if not _all_atomic(s.ante):
            raise ProofError(f"{rule} context Pi must be atomic: {s}")
        if not _atomic_or_boxed(s.succ.remove(f)):
            raise ProofError(f"{rule} right context must be atomic or boxed: {s}")
        d = diagonal(f.child)
        if rule == "box-grz1":
            if d not in s.storage.counts:
                raise ProofError(f"box-grz1 needs D(a) in the storage: {s}")
            t = Sequent(Logic.GRZ, EMPTY, mset([f.child]), s.storage)
        else:
            # The D(a)-not-stored side condition is deliberately not enforced;
            # the provable-leaf case with both the box and its diagonal stored
            # has no compliant proof otherwise.
            t = Sequent(Logic.GRZ, s.storage.unboxed(), mset([f.child]),
                        s.storage.add(d))
        premise_is(0, t)
        return

    raise ProofError(f"unknown rule {rule}")


def validate_proof(p: Proof) -> None:
    """Raise ProofError at the first offending node."""
    stack = [p]
    while stack:
        node = stack.pop()
        _check_node(node)
        stack.extend(node.premises)


def check_proof(p: Proof) -> bool:
    try:
        validate_proof(p)
    except ProofError:
        return False
    return True


# ---------------------------------------------------------------------------
# Inversion (height-preserving)

def invert(p: Proof, rule: str, f: Formula) -> list[Proof]:
    """Backward-apply an invertible rule to the conclusion of p, returning a
    height-preserving proof of each premise."""
    if rule not in INVERTIBLE_RULES:
        raise ValueError(f"{rule} is not an invertible rule")
    s = p.conclusion
    zone = s.ante if rule.endswith("-l") or rule == "box-t" else s.succ
    if f not in zone.counts:
        raise ValueError(f"inversion principal {f} not present: {s}")
    out = [_invert(p, rule, f, t) for t in _backward(s, rule, f)]
    for q in out:
        if q.height > p.height:
            raise InternalError("inversion increased proof height")
    return out


def _invert(p: Proof, rule: str, f: Formula, target: Sequent) -> Proof:
    if p.rule == rule and p.principal == f:
        for q in p.premises:
            if q.conclusion == target:
                return q
    if p.rule in ("axiom-p", "axiom-bot"):
        return Proof(p.rule, target, p.principal)
    if p.rule in ("box-gl", "box-grz1", "box-grz2"):
        # Conclusion contexts of modal rules are atomic-or-boxed, and box-t
        # principals cannot sit in an atomic antecedent, so an invertible
        # principal can never ride through a modal node.
        raise InternalError(f"inversion of {rule} reached a modal node: {p.conclusion}")
    new_premises = []
    for q in p.premises:
        sub_targets = _backward(q.conclusion, rule, f)
        i = _branch_index(p, q, rule, f, target)
        new_premises.append(_invert(q, rule, f, sub_targets[i]))
    return Proof(p.rule, target, p.principal, tuple(new_premises))


def _branch_index(p: Proof, q: Proof, rule: str, f: Formula, target: Sequent) -> int:
    # For two-premise inversions (and-r, or-l) pick the branch matching target.
    ts = _backward(p.conclusion, rule, f)
    return ts.index(target)


# ---------------------------------------------------------------------------
# Weakening

def weaken(p: Proof, where: str, f: Formula) -> Proof:
    """Admissible weakening.  where: 'left', 'right' or 'storage' (Grz only).
    Height-preserving in GL for atomic and boxed formulas; in Grz only
    validity is guaranteed (stored-box weakening threads box-t steps)."""
    logic = p.conclusion.logic
    if where == "storage":
        if logic is not Logic.GRZ:
            raise ValueError("storage weakening only exists in Grz mode")
        if not f.is_boxed():
            raise ValueError(f"storage weakening formula {f} must be boxed")
        return _weaken_storage(p, f)
    if where not in ("left", "right"):
        raise ValueError(f"unknown weakening zone {where!r}")
    return _weaken(p, where, f)


def _extended(s: Sequent, where: str, f: Formula) -> Sequent:
    if where == "left":
        return s.with_zones(ante=s.ante.add(f))
    if where == "right":
        return s.with_zones(succ=s.succ.add(f))
    return s.with_zones(storage=s.storage.add(f))


def _weaken(p: Proof, where: str, f: Formula) -> Proof:
    s = p.conclusion
    target = _extended(s, where, f)
    if where == "left" and f.kind == "bot":
        return Proof("axiom-bot", target, bot())
    if p.rule in ("axiom-p", "axiom-bot"):
        return Proof(p.rule, target, p.principal)

    if p.rule in ("not-l", "not-r", "and-l", "and-r", "or-l", "or-r", "box-t"):
        return Proof(p.rule, target, p.principal,
                     tuple(_weaken(q, where, f) for q in p.premises))

    if p.rule == "box-gl":
        if f.is_atomic() or (where == "right" and f.is_boxed()):
            return Proof("box-gl", target, p.principal, p.premises)
        if where == "left" and f.is_boxed():
            q = _weaken(_weaken(p.premises[0], "left", f), "left", f.child)
            return Proof("box-gl", target, p.principal, (q,))
        # Compound weakening formula: introduce it with its own rule.
        return _weaken_compound(p, where, f)

    if p.rule in ("box-grz1", "box-grz2"):
        if f.is_atomic() or (where == "right" and f.is_boxed()):
            return Proof(p.rule, target, p.principal, p.premises)
        if where == "left" and f.is_boxed():
            return _weaken_left_boxed_over_grz(p, f)
        return _weaken_compound(p, where, f)

    raise ProofError(f"unknown rule {p.rule}")


def _weaken_compound(p: Proof, where: str, f: Formula) -> Proof:
    # f is ~a, a&b or a|b: weaken by the components, then apply f's rule.
    target = _extended(p.conclusion, where, f)
    if f.kind == "not":
        flip = "right" if where == "left" else "left"
        q = _weaken(p, flip, f.child)
        return Proof("not-l" if where == "left" else "not-r", target, f, (q,))
    if f.kind == "and":
        if where == "left":
            q = _weaken(_weaken(p, "left", f.left), "left", f.right)
            return Proof("and-l", target, f, (q,))
        qa = _weaken(p, "right", f.left)
        qb = _weaken(p, "right", f.right)
        return Proof("and-r", target, f, (qa, qb))
    if f.kind == "or":
        if where == "right":
            q = _weaken(_weaken(p, "right", f.left), "right", f.right)
            return Proof("or-r", target, f, (q,))
        qa = _weaken(p, "left", f.left)
        qb = _weaken(p, "left", f.right)
        return Proof("or-l", target, f, (qa, qb))
    raise InternalError(f"unexpected compound weakening by {f}")


def _weaken_left_boxed_over_grz(p: Proof, f: Formula) -> Proof:
    # Permutation of w-l by box b over a box-grz inference: weaken the
    # premise storage (and antecedent for grz2), redo the jump with the
    # fatter storage, weaken by b, then store box b with a box-t step.
    s = p.conclusion
    if f in s.storage.counts:
        # Already stored: the deduplicated box-t step needs only the body.
        mid = _weaken(p, "left", f.child)
        return Proof("box-t", _extended(s, "left", f), f, (mid,))
    g = p.principal
    inner = _weaken_storage(p.premises[0], f)
    if p.rule == "box-grz2":
        inner = _weaken(inner, "left", f.child)
    mid_concl = s.with_zones(storage=s.storage.add(f))
    mid = Proof(p.rule, mid_concl, g, (inner,))
    mid = _weaken(mid, "left", f.child)
    return Proof("box-t", _extended(s, "left", f), f, (mid,))


def _weaken_storage(p: Proof, f: Formula) -> Proof:
    s = p.conclusion
    target = _extended(s, "storage", f)
    if p.rule in ("axiom-p", "axiom-bot"):
        return Proof(p.rule, target, p.principal)
    if p.rule in ("not-l", "not-r", "and-l", "and-r", "or-l", "or-r", "box-t"):
        return Proof(p.rule, target, p.principal,
                     tuple(_weaken_storage(q, f) for q in p.premises))
    if p.rule == "box-grz1":
        return Proof(p.rule, target, p.principal,
                     (_weaken_storage(p.premises[0], f),))
    if p.rule == "box-grz2":
        q = _weaken(_weaken_storage(p.premises[0], f), "left", f.child)
        return Proof(p.rule, target, p.principal, (q,))
    raise ProofError(f"unknown rule {p.rule} in Grz storage weakening")


# ---------------------------------------------------------------------------
# Contraction (height-preserving in both calculi)

def contract(p: Proof, where: str, f: Formula) -> Proof:
    """Remove one of >=2 occurrences of f from the given zone, height-
    preservingly."""
    s = p.conclusion
    if where == "storage":
        if s.logic is not Logic.GRZ:
            raise ValueError("storage contraction only exists in Grz mode")
        if not f.is_boxed():
            raise ValueError(f"storage contraction formula {f} must be boxed")
        zone = s.storage
    elif where == "left":
        zone = s.ante
    elif where == "right":
        zone = s.succ
    else:
        raise ValueError(f"unknown contraction zone {where!r}")
    if zone.count(f) < 2:
        raise ValueError(f"contraction needs two occurrences of {f} in {where}: {s}")
    out = _contract(p, where, f)
    if out.height > p.height:
        raise InternalError("contraction increased proof height")
    return out


def _shrunk(s: Sequent, where: str, f: Formula) -> Sequent:
    if where == "left":
        return s.with_zones(ante=s.ante.remove(f))
    if where == "right":
        return s.with_zones(succ=s.succ.remove(f))
    return s.with_zones(storage=s.storage.remove(f))


def _contract(p: Proof, where: str, f: Formula) -> Proof:
    s = p.conclusion
    target = _shrunk(s, where, f)
    if p.rule in ("axiom-p", "axiom-bot"):
        return Proof(p.rule, target, p.principal)

    if not f.is_atomic() and not f.is_boxed():
        # Compound: invert the rule of f on one occurrence, contract the
        # components, reapply.
        rule = {"not": "not-", "and": "and-", "or": "or-"}[f.kind] + \
            ("l" if where == "left" else "r")
        flip = "right" if where == "left" else "left"
        if f.kind == "not":
            q = invert(invert(p, rule, f)[0], rule, f)[0]
            q = _contract(q, flip, f.child)
            return Proof(rule, target, f, (q,))
        if (f.kind == "and") == (where == "left"):
            # single-premise shape: both components land in the same zone
            q = invert(p, rule, f)[0]
            q = invert(q, rule, f)[0]
            q = _contract(_contract(q, where, f.left), where, f.right)
            return Proof(rule, target, f, (q,))
        # two-premise shape (and-r / or-l)
        qa, qb = invert(p, rule, f)
        qa = _contract(invert(qa, rule, f)[0], where, f.left)
        qb = _contract(invert(qb, rule, f)[1], where, f.right)
        return Proof(rule, target, f, (qa, qb))

    rule = p.rule
    if rule in ("not-l", "not-r", "and-l", "and-r", "or-l", "or-r"):
        return Proof(rule, target, p.principal,
                     tuple(_contract(q, where, f) for q in p.premises))

    if rule == "box-t":
        g = p.principal
        if where == "left" and g == f:
            # One occurrence is the box-t principal: invert box-t on the
            # other one, contract the smaller pieces, reapply.
            q = invert(p.premises[0], "box-t", f)[0]
            q = _contract(q, "left", f.child)
            needed = target.storage if f in target.storage.counts \
                else target.storage.add(f)
            while q.conclusion.storage != needed:
                q = _contract(q, "storage", f)
            return Proof("box-t", target, f, (q,))
        return Proof("box-t", target, g, (_contract(p.premises[0], where, f),))

    if rule == "box-gl":
        if where == "right":
            return Proof(rule, target, p.principal, p.premises)
        if f.is_atomic():
            return Proof(rule, target, p.principal, p.premises)
        q = _contract(p.premises[0], "left", f)
        q = _contract(q, "left", f.child)
        return Proof(rule, target, p.principal, (q,))

    if rule in ("box-grz1", "box-grz2"):
        if where in ("left", "right"):
            # Antecedent holds atoms only; right context absorbs the copy.
            return Proof(rule, target, p.principal, p.premises)
        # storage contraction
        q = _contract(p.premises[0], "storage", f)
        if rule == "box-grz2":
            q = _contract(q, "left", f.child)
        return Proof(rule, target, p.principal, (q,))

    raise ProofError(f"unknown rule {rule} in contraction")


# ---------------------------------------------------------------------------
# Identity proofs: (storage | Theta, a => a, Xi) for arbitrary a, by
# structural recursion on a.  The modal case proves the bare boxed identity
# first and weakens the contexts in; both provers use this to close the
# loop-check leaves.

def identity_proof(logic: Logic, storage: Multiset, theta: Multiset,
                   alpha: Formula, xi: Multiset) -> Proof:
    s = Sequent(logic, theta.add(alpha), xi.add(alpha), storage)
    k = alpha.kind
    if k == "bot":
        return Proof("axiom-bot", s, alpha)
    if k == "atom":
        return Proof("axiom-p", s, alpha)
    if k == "not":
        x = alpha.child
        q = identity_proof(logic, storage, theta, x, xi)
        q = Proof("not-l", Sequent(logic, theta.add(x).add(alpha), xi, storage),
                  alpha, (q,))
        return Proof("not-r", s, alpha, (q,))
    if k == "and":
        a, b = alpha.left, alpha.right
        qa = identity_proof(logic, storage, theta.add(b), a, xi)
        qa = Proof("and-l", Sequent(logic, theta.add(alpha), xi.add(a), storage),
                   alpha, (qa,))
        qb = identity_proof(logic, storage, theta.add(a), b, xi)
        qb = Proof("and-l", Sequent(logic, theta.add(alpha), xi.add(b), storage),
                   alpha, (qb,))
        return Proof("and-r", s, alpha, (qa, qb))
    if k == "or":
        a, b = alpha.left, alpha.right
        qa = identity_proof(logic, storage, theta, a, xi.add(b))
        qa = Proof("or-r", Sequent(logic, theta.add(a), xi.add(alpha), storage),
                   alpha, (qa,))
        qb = identity_proof(logic, storage, theta, b, xi.add(a))
        qb = Proof("or-r", Sequent(logic, theta.add(b), xi.add(alpha), storage),
                   alpha, (qb,))
        return Proof("or-l", s, alpha, (qa, qb))
    # alpha = box x
    core = boxed_identity_proof(logic, storage, alpha)
    p = core
    for f in xi:
        p = _weaken(p, "right", f)
    for f in theta:
        p = _weaken(p, "left", f)
    if logic is Logic.GL:
        return p
    p = _weaken(p, "left", alpha.child)
    return Proof("box-t", s, alpha, (p,))


def boxed_identity_proof(logic: Logic, storage: Multiset, boxed: Formula) -> Proof:
    """GL: a proof of (box x => box x); Grz: of (storage+box x | => box x)."""
    x = boxed.child
    if logic is Logic.GL:
        s = Sequent(Logic.GL, mset([boxed]), mset([boxed]))
        theta = mset([boxed, boxed])
        q = identity_proof(Logic.GL, EMPTY, theta, x, EMPTY)
        return Proof("box-gl", s, boxed, (q,))
    st = storage if boxed in storage.counts else storage.add(boxed)
    s = Sequent(Logic.GRZ, EMPTY, mset([boxed]), st)
    d = diagonal(x)
    premise_storage = st.add(d)
    theta = st.unboxed().remove(x)
    q = identity_proof(Logic.GRZ, premise_storage, theta, x, EMPTY)
    return Proof("box-grz2", s, boxed, (q,))


# ---------------------------------------------------------------------------
# Cut by re-search

def cut(left: Proof, right: Proof, gamma: Formula) -> Proof:
    """Cut realized by re-running the prover on the conclusion.  In Grz mode
    both premises must have empty storage (the general form cut' is not
    admissible)."""
    ls, rs = left.conclusion, right.conclusion
    if ls.logic is not rs.logic:
        raise ValueError("cut premises must live in the same calculus")
    logic = ls.logic
    if gamma not in ls.succ.counts:
        raise ValueError(f"cut formula {gamma} missing in left succedent: {ls}")
    if gamma not in rs.ante.counts:
        raise ValueError(f"cut formula {gamma} missing in right antecedent: {rs}")
    if logic is Logic.GRZ and (ls.storage.counts or rs.storage.counts):
        raise ValueError("cut in Grz mode requires empty storage on both premises "
                         "(cut' is not admissible)")
    validate_proof(left)
    validate_proof(right)
    conclusion = Sequent(logic, ls.ante.union(rs.ante.remove(gamma)),
                         ls.succ.remove(gamma).union(rs.succ), EMPTY)
    if logic is Logic.GL:
        from .prover_gl import extract_proof_gl, search_gl
        tree = search_gl(conclusion)
        if not tree.provable:
            raise InternalError(f"cut conclusion not provable: {conclusion}")
        return extract_proof_gl(tree)
    from .prover_grz import extract_proof_grz, search_grz
    tree = search_grz(conclusion)
    if not tree.provable:
        raise InternalError(f"cut conclusion not provable: {conclusion}")
    return extract_proof_grz(tree)


# ---------------------------------------------------------------------------
# Export: one record per node, preorder, tab-separated; bit-exact.

def proof_str(p: Proof) -> str:
    lines: list[str] = []

    def emit(node: Proof) -> int:
        idx = len(lines)
        lines.append("")
        kids = [emit(q) for q in node.premises]
        principal = str(node.principal) if node.principal is not None else "-"
        children = ",".join(str(k) for k in kids) if kids else "-"
        lines[idx] = f"{idx}\t{node.rule}\t{principal}\t{node.conclusion}\t{children}"
        return idx

    emit(p)
    return f"proof {len(lines)} nodes\n" + "\n".join(lines) + "\n"


def parse_proof(text: str, logic: Logic) -> Proof:
    from .formula import parse as parse_formula
    from .sequent import parse_sequent
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("proof "):
        raise ProofError("proof document needs a 'proof N nodes' header")
    records = []
    for ln in lines[1:]:
        idx, rule, principal, seq, children = ln.split("\t")
        records.append((int(idx), rule, principal, seq, children))
    built: dict[int, Proof] = {}
    for idx, rule, principal, seq, children in sorted(records, reverse=True):
        prem = tuple(built[int(c)] for c in children.split(",")) \
            if children != "-" else ()
        f = parse_formula(principal) if principal != "-" else None
        built[idx] = Proof(rule, parse_sequent(seq, logic), f, prem)
    return built[0]


_SOFT_CHECKS = os.environ.get("PROVLOGIC_SOFT_CHECKS", "1") != "0"


def grz_weaken_height_report(before: Proof, after: Proof, f: Formula) -> str | None:
    """Soft check: the sketched bound says Grz weakening grows height by at
    most box_depth(f).  Returns a warning string when it fails, else None."""
    if not _SOFT_CHECKS:
        return None
    if after.height > before.height + f.box_depth:
        return (f"grz weakening height grew {before.height} -> {after.height}, "
                f"past the sketched bound +{f.box_depth} for {f}")
    return None
