"""Recursive construction of uniform interpolants for GL and Grz.

The pre-interpolant of a non-critical sequent is the conjunction of the
pre-interpolants of its closure; critical sequents go through the matching
tables: provable shapes give top, otherwise the disjunction of the context
atoms (excluding the eliminated variable on both sides), one boxed recursive
call per modal jump, and a diamond part over the N-set, whose members omit
their own diamond part to keep the definition terminating.  The companion
lemma that the omitted diamonds do not change anything up to provable
equivalence is exposed as trick_equivalence.

Raw table output is the reference artifact; simplify() is an optional,
prover-verified cleanup pass.
"""

from __future__ import annotations

import random

from .formula import (Formula, bot, box, conj_all, dia, diagonal, disj,
                      disj_all, neg, top, variables)
from .proofkit import InternalError
from .prover_gl import search_gl
from .prover_grz import _search_grz_any, search_grz
from .sequent import (EMPTY, Logic, Multiset, Sequent, boxed_set_size, closure,
                      is_critical, mset, seq_weight, subformula_boxes)

__all__ = [
    "InterpolationTask", "forall_gl", "forall_grz", "forall", "exists",
    "check_preinterpolant", "trick_equivalence", "simplify", "provable",
]


def provable(s: Sequent) -> bool:
    """Prover verdict; accepts internal Grz sequents with non-empty storage."""
    if s.logic is Logic.GL:
        return search_gl(s).provable
    if s.storage.counts:
        return _search_grz_any(s).provable
    return search_grz(s).provable


class InterpolationTask:
    """One forall-construction run with its termination instrumentation."""

    __slots__ = ("logic", "sequent", "var", "budget", "steps", "violations",
                 "cycles", "_memo", "_in_progress", "_placeholders")

    def __init__(self, logic: Logic, sequent: Sequent, var: str):
        self.logic = logic
        self.sequent = sequent
        self.var = var
        if logic is Logic.GL:
            n = len(subformula_boxes(sequent))
            self.budget = (4 ** n) * seq_weight(sequent)
        else:
            n = len(subformula_boxes(sequent, with_storage=True)) \
                + len(sequent.storage.counts)
            self.budget = n * n
        self.steps: list[tuple[tuple[int, int], tuple[int, int]]] = []
        self.violations: list[str] = []
        self.cycles = 0
        self._memo: dict[Sequent, Formula] = {}
        self._in_progress: set[Sequent] = set()
        self._placeholders: dict[Sequent, Formula] = {}

    def measure(self, s: Sequent) -> tuple[int, int]:
        if self.logic is Logic.GL:
            return (self.budget - boxed_set_size(s.ante), seq_weight(s))
        return (self.budget - len(s.storage.counts), seq_weight(s))

    def record(self, parent: tuple[int, int] | None, s: Sequent) -> tuple[int, int]:
        m = self.measure(s)
        if parent is not None:
            self.steps.append((parent, m))
            if m >= parent:
                self.violations.append(
                    f"measure did not decrease: {parent} -> {m} at [{s}]")
        return m

    def placeholder(self, s: Sequent) -> Formula:
        f = self._placeholders.get(s)
        if f is None:
            from .formula import atom
            inputs: set[str] = set()
            for zone in (self.sequent.storage, self.sequent.ante, self.sequent.succ):
                for g in zone.counts:
                    inputs |= variables(g)
            prefix = "ucyc"
            while any(v.startswith(prefix) for v in inputs):
                prefix += "x"
            f = self._placeholders[s] = atom(f"{prefix}{len(self._placeholders)}")
        return f

    def live_placeholder_names(self) -> set[str]:
        return {f.name for f in self._placeholders.values()}


def forall(sequent: Sequent, var: str,
           task: InterpolationTask | None = None) -> Formula:
    """forall var of a sequent, dispatching on its logic."""
    if task is None:
        task = InterpolationTask(sequent.logic, sequent, var)
    if sequent.logic is Logic.GL:
        result = _ui_gl(task, sequent, None)
    else:
        result = _ui_grz(task, sequent, None)
    if task._placeholders:
        raise InternalError("unresolved recursion placeholders in interpolant")
    return result


def forall_gl(gamma: Multiset, delta: Multiset, var: str,
              task: InterpolationTask | None = None) -> Formula:
    s = Sequent(Logic.GL, gamma, delta)
    if task is None:
        task = InterpolationTask(Logic.GL, s, var)
    return _ui_gl(task, s, None)


def forall_grz(storage: Multiset, gamma: Multiset, delta: Multiset, var: str,
               task: InterpolationTask | None = None) -> Formula:
    s = Sequent(Logic.GRZ, gamma, delta, storage)
    if task is None:
        task = InterpolationTask(Logic.GRZ, s, var)
    return _ui_grz(task, s, None)


def exists(f: Formula, var: str, logic: Logic,
           task: InterpolationTask | None = None) -> Formula:
    """Post-interpolant: not forall var (=> ~f)."""
    s = Sequent(logic, EMPTY, mset([neg(f)]))
    return neg(forall(s, var, task))


def _finish(task: InterpolationTask, s: Sequent, result: Formula) -> Formula:
    """Resolve a recursion cycle on s, if any, then memoize.

    The literal table recursion can return to an equal-storage ancestor
    through a diagonal-stored jump child (a paper corner, see the ledger);
    such re-entries were answered with a fresh placeholder atom.  Every
    re-entry edge wraps the placeholder in a box, so the value satisfies a
    modalized fixed-point equation, whose unique solution is reached by
    iterating the body and confirmed by the prover.
    """
    v = task._placeholders.get(s)
    if v is not None:
        del task._placeholders[s]
        task.cycles += 1
        from .formula import substitute
        current: Formula = top()
        solved = None
        for _ in range(16):
            nxt = simplify(substitute(result, v.name, current))
            if (provable(Sequent(task.logic, mset([nxt]), mset([current])))
                    and provable(Sequent(task.logic, mset([current]), mset([nxt])))):
                solved = nxt
                break
            current = nxt
        if solved is None:
            raise InternalError(f"cyclic interpolant did not stabilize at [{s}]")
        result = solved
    if not (variables(result) & task.live_placeholder_names()):
        task._memo[s] = result
    return result


# ---------------------------------------------------------------------------
# GL construction

def _zones(s: Sequent):
    pi_atoms = [f for f in s.ante.support() if f.kind == "atom"]
    boxed_ante = [f for f in s.ante.support() if f.is_boxed()]
    lam_atoms = [f for f in s.succ.support() if f.kind == "atom"]
    boxed_succ = [f for f in s.succ.support() if f.is_boxed()]
    return pi_atoms, boxed_ante, lam_atoms, boxed_succ


def _ui_gl(task: InterpolationTask, s: Sequent,
           parent: tuple[int, int] | None) -> Formula:
    cached = task._memo.get(s)
    if cached is not None:
        task.record(parent, s)
        return cached
    if s in task._in_progress:
        return task.placeholder(s)
    m = task.record(parent, s)
    task._in_progress.add(s)
    try:
        if is_critical(s):
            result = _ui_gl_critical(task, s, m)
        else:
            result = conj_all(sorted((_ui_gl(task, u, m) for u in closure(s)),
                                     key=str))
    finally:
        task._in_progress.discard(s)
    result = _finish(task, s, result)
    return result


def _line1(p: str, pi_atoms, lam_atoms, s: Sequent, shared_boxes: bool) -> bool:
    if bot() in s.ante.counts:
        return True
    if any(f.name == p for f in pi_atoms) and any(f.name == p for f in lam_atoms):
        return True
    return shared_boxes


def _atom_disjuncts(p: str, lam_atoms, pi_atoms) -> list[Formula]:
    qs = [f for f in lam_atoms if f.name != p]
    rs = [neg(f) for f in pi_atoms if f.name != p]
    return qs + rs


def _ui_gl_critical(task: InterpolationTask, s: Sequent,
                    m: tuple[int, int]) -> Formula:
    pi_atoms, boxed_ante, lam_atoms, boxed_succ = _zones(s)
    shared = any(f in s.ante.counts for f in boxed_succ)
    if _line1(task.var, pi_atoms, lam_atoms, s, shared):
        return top()
    parts = _atom_disjuncts(task.var, lam_atoms, pi_atoms)
    boxed = s.ante.boxed()
    for f in boxed_succ:
        premise = Sequent(Logic.GL, boxed.union(boxed.unboxed()).add(f),
                          mset([f.child]))
        parts.append(box(_ui_gl(task, premise, m)))
    n_arg = Sequent(Logic.GL, boxed.union(boxed.unboxed()), EMPTY)
    diamond = dia(conj_all(_n_set_gl(task, n_arg, boxed, m)))
    return disj(disj_all(parts), diamond)


def _n_set_gl(task: InterpolationTask, n_arg: Sequent, parent_boxed: Multiset,
              m: tuple[int, int]) -> list[Formula]:
    parent_set = set(parent_boxed.counts)
    out: list[Formula] = []
    for member in closure(n_arg):
        pi_atoms, boxed_ante, lam_atoms, boxed_succ = _zones(member)
        member_boxes = {f for f in member.ante.counts if f.is_boxed()}
        shared = any(f in member.ante.counts for f in boxed_succ)
        if _line1(task.var, pi_atoms, lam_atoms, member, shared):
            # Provable shape: the recursive call would return top anyway.
            out.append(top())
        elif member_boxes > parent_set:
            out.append(_ui_gl(task, member, m))
        else:
            parts = _atom_disjuncts(task.var, lam_atoms, pi_atoms)
            mboxed = member.ante.boxed()
            for f in boxed_succ:
                premise = Sequent(Logic.GL, mboxed.union(mboxed.unboxed()).add(f),
                                  mset([f.child]))
                parts.append(box(_ui_gl(task, premise, m)))
            out.append(disj_all(parts))
    seen: set[Formula] = set()
    uniq = [f for f in sorted(out, key=str) if not (f in seen or seen.add(f))]
    return uniq


# ---------------------------------------------------------------------------
# Grz construction

def _ui_grz(task: InterpolationTask, s: Sequent,
            parent: tuple[int, int] | None) -> Formula:
    cached = task._memo.get(s)
    if cached is not None:
        task.record(parent, s)
        return cached
    if s in task._in_progress:
        return task.placeholder(s)
    m = task.record(parent, s)
    task._in_progress.add(s)
    try:
        if is_critical(s):
            result = _ui_grz_critical(task, s, m)
        else:
            result = conj_all(sorted((_ui_grz(task, u, m) for u in closure(s)),
                                     key=str))
    finally:
        task._in_progress.discard(s)
    result = _finish(task, s, result)
    return result


def _grz_jump_arg(s: Sequent, f: Formula) -> Sequent:
    d = diagonal(f.child)
    if d in s.storage.counts:
        return Sequent(Logic.GRZ, EMPTY, mset([f.child]), s.storage)
    return Sequent(Logic.GRZ, s.storage.unboxed(), mset([f.child]),
                   s.storage.add(d))


def _ui_grz_critical(task: InterpolationTask, s: Sequent,
                     m: tuple[int, int]) -> Formula:
    pi_atoms, _, lam_atoms, boxed_succ = _zones(s)
    shared = any(f in s.storage.counts for f in boxed_succ)
    if _line1(task.var, pi_atoms, lam_atoms, s, shared):
        return top()
    parts = _atom_disjuncts(task.var, lam_atoms, pi_atoms)
    for f in boxed_succ:
        parts.append(box(_ui_grz(task, _grz_jump_arg(s, f), m)))
    n_arg = Sequent(Logic.GRZ, s.storage.unboxed(), EMPTY, s.storage)
    diamond = dia(conj_all(_n_set_grz(task, n_arg, s.storage, m)))
    return disj(disj_all(parts), diamond)


def _n_set_grz(task: InterpolationTask, n_arg: Sequent, parent_storage: Multiset,
               m: tuple[int, int]) -> list[Formula]:
    parent_set = set(parent_storage.counts)
    out: list[Formula] = []
    for member in closure(n_arg):
        pi_atoms, _, lam_atoms, boxed_succ = _zones(member)
        member_storage = set(member.storage.counts)
        shared = any(f in member.storage.counts for f in boxed_succ)
        if _line1(task.var, pi_atoms, lam_atoms, member, shared):
            out.append(top())
        elif member_storage > parent_set:
            out.append(_ui_grz(task, member, m))
        else:
            parts = _atom_disjuncts(task.var, lam_atoms, pi_atoms)
            for f in boxed_succ:
                parts.append(box(_ui_grz(task, _grz_jump_arg(member, f), m)))
            out.append(disj_all(parts))
    seen: set[Formula] = set()
    uniq = [f for f in sorted(out, key=str) if not (f in seen or seen.add(f))]
    return uniq


# ---------------------------------------------------------------------------
# Verification

def check_preinterpolant(task: InterpolationTask, result: Formula,
                         samples: int = 20, seed: int = 0,
                         context_gen=None) -> dict:
    """Check the three pre-interpolant properties.

    (i) variable condition, syntactically; (ii) the interpolant entails the
    sequent, by the prover; (iii) on sampled var-free provable contexts the
    interpolant is implied, by the prover.  Returns a report dict with a
    'passed' flag and failure witnesses.
    """
    s, p, logic = task.sequent, task.var, task.logic
    report: dict = {"passed": True, "failures": [], "contexts": 0}

    input_vars: set[str] = set()
    for zone in (s.storage, s.ante, s.succ):
        for f in zone.counts:
            input_vars |= variables(f)
    res_vars = variables(result)
    report["var_ok"] = p not in res_vars and res_vars <= (input_vars - {p})
    if not report["var_ok"]:
        report["passed"] = False
        report["failures"].append(f"(i) variable condition: {sorted(res_vars)}")

    entail = s.with_zones(ante=s.ante.add(result))
    report["entail_ok"] = provable(entail)
    if not report["entail_ok"]:
        report["passed"] = False
        report["failures"].append(f"(ii) not provable: [{entail}]")

    rng = random.Random(seed)
    gen = context_gen or _default_context_gen
    accepted = 0
    attempts = 0
    max_attempts = samples * 40
    while accepted < samples and attempts < max_attempts:
        attempts += 1
        phi, psi, theta = gen(rng, p, input_vars, force=(attempts % 8 == 0))
        if logic is Logic.GL:
            hyp = Sequent(Logic.GL, phi.union(s.ante), s.succ.union(psi))
            goal = Sequent(Logic.GL, phi, psi.add(result))
        else:
            hyp = Sequent(Logic.GRZ, phi.union(s.ante), s.succ.union(psi),
                          theta.union(s.storage))
            goal = Sequent(Logic.GRZ, theta.union(phi), psi.add(result))
        if not provable(hyp):
            continue
        accepted += 1
        if not provable(goal):
            report["passed"] = False
            report["failures"].append(f"(iii) context fails: [{hyp}] but not [{goal}]")
    report["contexts"] = accepted
    if accepted < samples:
        report["passed"] = False
        report["failures"].append(
            f"(iii) only {accepted}/{samples} provable contexts found")
    return report


def _default_context_gen(rng: random.Random, p: str, input_vars: set[str],
                         force: bool):
    """Small var-free contexts; 'force' emits a guaranteed-provable pair."""
    from .rand import random_formula
    names = sorted((input_vars - {p}) | {"q", "r"})[:3]
    if force:
        f = random_formula(rng, names, max_weight=5, max_box_depth=1)
        return mset([f]), mset([f]), EMPTY
    phi = mset([random_formula(rng, names, max_weight=5, max_box_depth=1)
                for _ in range(rng.randint(0, 2))])
    psi = mset([random_formula(rng, names, max_weight=5, max_box_depth=1)
                for _ in range(rng.randint(0, 2))])
    theta = mset([box(random_formula(rng, names, max_weight=4, max_box_depth=1))
                  for _ in range(rng.randint(0, 1))])
    return phi, psi, theta


def trick_equivalence(logic: Logic, boxed_gamma: Multiset, var: str) -> bool:
    """Prove dia of the N-conjunction equivalent to dia of the forall of
    (box G', G'; empty) -- the termination trick."""
    for f in boxed_gamma.counts:
        if not f.is_boxed():
            raise ValueError(f"trick antecedent {f} must be boxed")
    if logic is Logic.GL:
        ante = boxed_gamma.union(boxed_gamma.unboxed())
        arg = Sequent(Logic.GL, ante, EMPTY)
        task = InterpolationTask(Logic.GL, arg, var)
        n_parts = _n_set_gl(task, arg, boxed_gamma, task.measure(arg))
        left = dia(conj_all(n_parts))
        right = dia(_ui_gl(task, arg, None))
        fwd = Sequent(Logic.GL, mset([left]), mset([right]))
        bwd = Sequent(Logic.GL, mset([right]), mset([left]))
    else:
        arg = Sequent(Logic.GRZ, boxed_gamma.unboxed(), EMPTY, boxed_gamma)
        task = InterpolationTask(Logic.GRZ, arg, var)
        n_parts = _n_set_grz(task, arg, boxed_gamma, task.measure(arg))
        left = dia(conj_all(n_parts))
        right = dia(_ui_grz(task, arg, None))
        fwd = Sequent(Logic.GRZ, mset([left]), mset([right]))
        bwd = Sequent(Logic.GRZ, mset([right]), mset([left]))
    return provable(fwd) and provable(bwd)


# ---------------------------------------------------------------------------
# Optional simplification (raw output is the reference artifact)

_DIA_BOT = neg(box(neg(bot())))


def simplify(f: Formula, logic: Logic | None = None) -> Formula:
    """Bottom-up rewrite with exactly the cleanup rules bot|x -> x,
    x|bot -> x, top&x -> x, x&top -> x and dia bot -> bot.  With a logic
    given, the rewrite is prover-verified against the raw formula."""
    from .formula import conj as _conj
    from .formula import disj as _disj
    memo: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        r = memo.get(g)
        if r is not None:
            return r
        k = g.kind
        if k in ("bot", "atom"):
            r = g
        elif k == "not":
            r = neg(go(g.child))
            if r is _DIA_BOT:
                r = bot()
        elif k == "box":
            r = box(go(g.child))
        elif k == "and":
            a, b = go(g.left), go(g.right)
            r = b if a is top() else a if b is top() else _conj(a, b)
        else:
            a, b = go(g.left), go(g.right)
            r = b if a is bot() else a if b is bot() else _disj(a, b)
        memo[g] = r
        return r

    out = go(f)
    if logic is not None and out is not f:
        same1 = provable(Sequent(logic, mset([f]), mset([out])))
        same2 = provable(Sequent(logic, mset([out]), mset([f])))
        if not (same1 and same2):
            raise InternalError("simplification changed provability")
    return out
