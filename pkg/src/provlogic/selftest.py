"""Seeded self-verification suites: the acceptance battery behind
``provlogic selftest`` and tests/test_acceptance.py.

Every suite returns (ok, lines); identical seeds give byte-identical lines.
"""

from __future__ import annotations

import random

from .formula import (Formula, atom, bot, box, conj, conj_all, dia, disj,
                      imp, neg, parse, variables)
from .interpolate import (InterpolationTask, check_preinterpolant, exists,
                          forall, provable, trick_equivalence)
from .fixpoint import dual_fixed_point, fixed_point, is_modalized
from .kripke import bounded_countermodel, frame_check, refutes
from .proofkit import Proof, check_proof, contract, invert, weaken
from .prover_gl import countermodel_gl, extract_proof_gl, search_gl
from .prover_grz import countermodel_grz, extract_proof_grz, search_grz
from .rand import random_formula, random_modalized, random_sequent
from .sequent import EMPTY, Logic, Sequent, mset, parse_sequent

__all__ = ["run_all", "SUITES", "Profile"]

VARS = ["p", "q", "r"]


class Profile:
    """Suite sizes; the default profile is the acceptance-sized one."""

    def __init__(self, quick: bool = False):
        self.sweep = 60 if quick else 500
        self.interp = 16 if quick else 200
        self.contexts = 5 if quick else 20
        self.fixpoints = 6 if quick else 50
        self.lemma12 = 8 if quick else 50
        self.trick = 5 if quick else 30
        self.proofs = 30 if quick else 200
        self.oracle_worlds = 3 if quick else 4


def _search(logic: Logic, s: Sequent):
    return search_gl(s) if logic is Logic.GL else search_grz(s)


def _extract(logic: Logic, tree):
    return extract_proof_gl(tree) if logic is Logic.GL else extract_proof_grz(tree)


def _countermodel(logic: Logic, tree):
    return countermodel_gl(tree) if logic is Logic.GL else countermodel_grz(tree)


# ---------------------------------------------------------------------------
# 1. axiom suite

def suite_axioms(profile: Profile, seed: int):
    lines = []
    ok = True

    def expect(logic, text, want_provable, note=""):
        nonlocal ok
        s = parse_sequent(text, logic)
        tree = _search(logic, s)
        good = tree.provable == want_provable
        detail = ""
        if tree.provable:
            good = good and check_proof(_extract(logic, tree))
            detail = "proof checked"
        else:
            m, w = _countermodel(logic, tree)
            good = good and frame_check(m, logic) and refutes(m, w, s)
            detail = f"countermodel {len(m.worlds)} worlds"
            if note == "one-world":
                good = good and len(m.worlds) == 1 and (w, w) in m.relation
                detail += ", single reflexive"
        ok = ok and good
        lines.append(f"  [{'ok' if good else 'FAIL'}] {logic.value} "
                     f"{text} -> {'provable' if tree.provable else 'unprovable'} ({detail})")

    expect(Logic.GL, "=> box(box p -> p) -> box p", True)
    expect(Logic.GL, "=> box(p -> q) -> (box p -> box q)", True)
    expect(Logic.GL, "=> box p -> box box p", True)
    expect(Logic.GL, "=> box p -> p", False)
    expect(Logic.GRZ, "=> box(box(p -> box p) -> p) -> box p", True)
    expect(Logic.GRZ, "=> box p -> p", True)
    expect(Logic.GRZ, "=> box(p -> q) -> (box p -> box q)", True)
    expect(Logic.GRZ, "=> box ~box p -> box p", False, note="one-world")
    return ok, lines


# ---------------------------------------------------------------------------
# 2. cut' regression

def suite_cutprime(profile: Profile, seed: int):
    from .proofkit import cut
    from .prover_grz import _search_grz_any
    lines = []
    ok = True

    t1 = _search_grz_any(parse_sequent("box p | => box p", Logic.GRZ))
    ok1 = t1.provable and check_proof(extract_proof_grz(t1))
    lines.append(f"  [{'ok' if ok1 else 'FAIL'}] box p | => box p provable")

    t2 = search_grz(parse_sequent("box p => p", Logic.GRZ))
    ok2 = t2.provable and check_proof(extract_proof_grz(t2))
    lines.append(f"  [{'ok' if ok2 else 'FAIL'}] | box p => p provable")

    t3 = _search_grz_any(parse_sequent("box p | => p", Logic.GRZ))
    ok3 = not t3.provable
    lines.append(f"  [{'ok' if ok3 else 'FAIL'}] box p | => p unprovable")

    p_left = extract_proof_grz(t1)
    p_right = extract_proof_grz(t2)
    try:
        cut(p_left, p_right, parse("box p"))
        ok4 = False
    except ValueError:
        ok4 = True
    lines.append(f"  [{'ok' if ok4 else 'FAIL'}] cut rejects the non-empty-storage pair")

    # the admissible form still works on empty storages
    a = search_grz(parse_sequent("=> box p -> p, box p", Logic.GRZ))
    b = search_grz(parse_sequent("box p -> p => box p -> p", Logic.GRZ))
    ok5 = a.provable and b.provable
    if ok5:
        joined = cut(extract_proof_grz(a), extract_proof_grz(b), parse("box p -> p"))
        ok5 = check_proof(joined)
    lines.append(f"  [{'ok' if ok5 else 'FAIL'}] empty-storage cut composes")

    ok = ok1 and ok2 and ok3 and ok4 and ok5
    return ok, lines


# ---------------------------------------------------------------------------
# 3. soundness/completeness sweep (also feeds 5 and 9)

def sweep(logic: Logic, profile: Profile, seed: int):
    rng = random.Random(seed)
    stats = {"provable": 0, "unprovable": 0, "conflicts": [], "bad_models": [],
             "edges": 0, "max_weight_ratio": 0.0, "trees": [], "repeat": 0}
    for _ in range(profile.sweep):
        s = random_sequent(rng, logic, VARS, weight_cap=25, max_box_depth=3)
        tree = _search(logic, s)
        stats["edges"] += tree.stats.edges
        if logic is Logic.GL:
            stats["repeat"] += _check_gl_principals(tree)
        if tree.provable:
            stats["provable"] += 1
            if bounded_countermodel(s, logic, profile.oracle_worlds) is not None:
                stats["conflicts"].append(str(s))
            stats["trees"].append(tree)
        else:
            stats["unprovable"] += 1
            m, w = _countermodel(logic, tree)
            if not (frame_check(m, logic) and refutes(m, w, s)):
                stats["bad_models"].append(str(s))
    return stats


def _check_gl_principals(tree) -> int:
    """Count modal children whose principal already sits in the antecedent
    (must be zero: no branch repeats a box-gl principal)."""
    bad = 0
    seen: set[int] = set()
    stack = [tree]
    while stack:
        t = stack.pop()
        if id(t) in seen:
            continue
        seen.add(id(t))
        if t.kind == "modal":
            for f in t.principals:
                if f in t.sequent.ante.counts:
                    bad += 1
        stack.extend(t.children)
    return bad


def suite_sweep(profile: Profile, seed: int, shared=None):
    lines = []
    ok = True
    for logic in (Logic.GL, Logic.GRZ):
        st = sweep(logic, profile, seed + (0 if logic is Logic.GL else 1))
        if shared is not None:
            shared[logic] = st
        good = not st["conflicts"] and not st["bad_models"] and st["repeat"] == 0
        ok = ok and good
        lines.append(
            f"  [{'ok' if good else 'FAIL'}] {logic.value}: {st['provable']} provable / "
            f"{st['unprovable']} unprovable, oracle conflicts {len(st['conflicts'])}, "
            f"invalid countermodels {len(st['bad_models'])}, measure edges {st['edges']}")
        for c in st["conflicts"][:3]:
            lines.append(f"    conflict: {c}")
        for c in st["bad_models"][:3]:
            lines.append(f"    bad model: {c}")
    return ok, lines


# ---------------------------------------------------------------------------
# 4. interpolation suite (feeds 5)

def interpolation_tasks(logic: Logic, profile: Profile, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(profile.interp):
        s = random_sequent(rng, logic, VARS, weight_cap=14, max_box_depth=2)
        task = InterpolationTask(logic, s, "p")
        result = forall(s, "p", task)
        out.append((task, result))
    return out


def suite_interpolation(profile: Profile, seed: int, shared=None):
    lines = []
    ok = True
    for logic in (Logic.GL, Logic.GRZ):
        tasks = interpolation_tasks(logic, profile, seed + (2 if logic is Logic.GL else 3))
        if shared is not None:
            shared[logic] = tasks
        var_bad = entail_bad = ctx_bad = 0
        for i, (task, result) in enumerate(tasks):
            rep = check_preinterpolant(task, result, samples=profile.contexts,
                                       seed=seed + i)
            if not rep["var_ok"]:
                var_bad += 1
            if not rep["entail_ok"]:
                entail_bad += 1
            if rep["var_ok"] and rep["entail_ok"] and not rep["passed"]:
                ctx_bad += 1
        good = var_bad == entail_bad == ctx_bad == 0
        ok = ok and good
        lines.append(
            f"  [{'ok' if good else 'FAIL'}] {logic.value}: {len(tasks)} tasks, "
            f"(i) fails {var_bad}, (ii) fails {entail_bad}, (iii) fails {ctx_bad}")
    return ok, lines


# ---------------------------------------------------------------------------
# 5. termination instrumentation over 3-4

def suite_termination(profile: Profile, seed: int, sweep_stats, interp_tasks):
    lines = []
    ok = True
    for logic in (Logic.GL, Logic.GRZ):
        st = sweep_stats[logic]
        # search measure violations raise InternalError, so reaching here
        # means every one of st['edges'] edges decreased strictly
        steps = sum(len(t.steps) for t, _ in interp_tasks[logic])
        violations = [v for t, _ in interp_tasks[logic] for v in t.violations]
        good = st["repeat"] == 0 and not violations
        ok = ok and good
        lines.append(
            f"  [{'ok' if good else 'FAIL'}] {logic.value}: search edges {st['edges']} "
            f"all decreasing, interpolation steps {steps}, violations {len(violations)}, "
            f"repeated principals {st['repeat']}")
    return ok, lines


# ---------------------------------------------------------------------------
# 6. fixed points

def suite_fixpoints(profile: Profile, seed: int):
    lines = []
    ok = True

    def equiv_gl(a: Formula, b: Formula) -> bool:
        return (provable(Sequent(Logic.GL, mset([a]), mset([b])))
                and provable(Sequent(Logic.GL, mset([b]), mset([a]))))

    named = [("~box p", parse("~box bot")), ("box p", parse("top")),
             ("q & box p", parse("q & box q"))]
    for text, expected in named:
        r = fixed_point(parse(text), "p")
        good = (check_proof(r.certificate) and equiv_gl(r.gamma, expected)
                and "p" not in variables(r.gamma))
        ok = ok and good
        lines.append(f"  [{'ok' if good else 'FAIL'}] fp({text}) ~ {expected}")

    rng = random.Random(seed)
    bad = 0
    for _ in range(profile.fixpoints):
        beta = random_modalized(rng, "p", VARS, max_depth=3, max_weight=8)
        r = fixed_point(beta, "p")
        good = check_proof(r.certificate) and "p" not in variables(r.gamma)
        if rng.random() < 0.2:
            good = good and equiv_gl(r.gamma, dual_fixed_point(beta, "p"))
        if not good:
            bad += 1
            lines.append(f"    FAIL at beta = {beta}")
    ok = ok and bad == 0
    lines.append(f"  [{'ok' if bad == 0 else 'FAIL'}] {profile.fixpoints} random "
                 f"modalized formulas certified, {bad} failures")
    return ok, lines


# ---------------------------------------------------------------------------
# 7. Lemma-12 style fixed point property

def suite_lemma12(profile: Profile, seed: int):
    lines = []
    ok = True
    for logic in (Logic.GL, Logic.GRZ):
        rng = random.Random(seed + (4 if logic is Logic.GL else 5))
        bad = 0
        for _ in range(profile.lemma12):
            k = rng.randint(1, 3)
            alphas = [random_formula(rng, VARS, 4, 2) for _ in range(k)]
            beta = random_formula(rng, VARS, 4, 2)
            delta = conj_all(alphas + [beta])
            lhs = dia(conj(conj_all([disj(a, dia(delta)) for a in alphas]), beta))
            rhs = dia(delta)
            good = (provable(Sequent(logic, mset([lhs]), mset([rhs])))
                    and provable(Sequent(logic, mset([rhs]), mset([lhs]))))
            if not good:
                bad += 1
                lines.append(f"    FAIL: k={k} alphas={[str(a) for a in alphas]} beta={beta}")
        ok = ok and bad == 0
        lines.append(f"  [{'ok' if bad == 0 else 'FAIL'}] {logic.value}: "
                     f"{profile.lemma12} instances, {bad} failures")
    return ok, lines


# ---------------------------------------------------------------------------
# 8. trick equivalences

def suite_trick(profile: Profile, seed: int):
    lines = []
    ok = True
    for logic in (Logic.GL, Logic.GRZ):
        rng = random.Random(seed + (6 if logic is Logic.GL else 7))
        bad = 0
        for _ in range(profile.trick):
            k = rng.randint(0, 2)
            gamma = mset([box(random_formula(rng, VARS, 4, 1)) for _ in range(k)])
            if not trick_equivalence(logic, gamma, "p"):
                bad += 1
                lines.append(f"    FAIL at boxed antecedent {{{gamma}}}")
        ok = ok and bad == 0
        lines.append(f"  [{'ok' if bad == 0 else 'FAIL'}] {logic.value}: "
                     f"{profile.trick} antecedents, {bad} failures")
    return ok, lines


# ---------------------------------------------------------------------------
# 9. proofkit transformations

def _hp_guaranteed(zone: str, f: Formula) -> bool:
    # GL weakening is height-preserving for atoms, any box on the right, and
    # hereditarily-atomic boxes on the left.
    if f.is_atomic():
        return True
    if not f.is_boxed():
        return False
    return True if zone == "right" else _hp_guaranteed(zone, f.child)


def _provable_pool(logic: Logic, rng: random.Random, count: int, sweep_trees):
    trees = list(sweep_trees or [])
    while len(trees) < count:
        f = random_formula(rng, VARS, 7, 2)
        g = random_formula(rng, VARS, 5, 1)
        s = Sequent(logic, mset([f, g]), mset([f]), EMPTY)
        t = _search(logic, s)
        if t.provable:
            trees.append(t)
    return trees[:count]


def suite_proofkit(profile: Profile, seed: int, shared_sweep=None):
    lines = []
    ok = True
    half = profile.proofs // 2
    for logic in (Logic.GL, Logic.GRZ):
        rng = random.Random(seed + (8 if logic is Logic.GL else 9))
        sweep_trees = (shared_sweep or {}).get(logic, {}).get("trees")
        pool = _provable_pool(logic, rng, half, sweep_trees)
        bad_valid = bad_height = soft_warn = 0
        for tree in pool:
            p = _extract(logic, tree)
            if not check_proof(p):
                bad_valid += 1
                continue
            zones = ["left", "right"] + (["storage"] if logic is Logic.GRZ else [])
            zone = rng.choice(zones)
            if zone == "storage":
                f = box(random_formula(rng, VARS, 4, 1))
            else:
                f = rng.choice([
                    atom(rng.choice(VARS)), bot(),
                    box(random_formula(rng, VARS, 4, 1)),
                    conj(atom("q"), atom("r")),
                ])
            w1 = weaken(p, zone, f)
            if not check_proof(w1):
                bad_valid += 1
            if logic is Logic.GL and _hp_guaranteed(zone, f):
                if w1.height > p.height:
                    bad_height += 1
            if logic is Logic.GRZ and w1.height > p.height + f.box_depth:
                soft_warn += 1
            w2 = weaken(w1, zone, f)
            c = contract(w2, zone, f)
            if not check_proof(c):
                bad_valid += 1
            if c.height > w2.height:
                bad_height += 1
            g = conj(atom("q"), atom("r"))
            wi = weaken(p, "left", g)
            for q in invert(wi, "and-l", g):
                if not check_proof(q):
                    bad_valid += 1
                if q.height > wi.height:
                    bad_height += 1
        good = bad_valid == 0 and bad_height == 0
        ok = ok and good
        lines.append(
            f"  [{'ok' if good else 'FAIL'}] {logic.value}: {len(pool)} proofs; invalid "
            f"outputs {bad_valid}, height regressions {bad_height}, "
            f"grz soft-bound warnings {soft_warn}")
    return ok, lines


# ---------------------------------------------------------------------------
# runner

SUITES = ("axioms", "cutprime", "sweep", "interpolation", "termination",
          "fixpoints", "lemma12", "trick", "proofkit")


def run_all(seed: int = 1, quick: bool = False, only: str | None = None):
    """Run every suite (or one), returning (all_ok, report_text)."""
    profile = Profile(quick=quick)
    lines = [f"provlogic selftest (seed={seed}, profile={'quick' if quick else 'full'})"]
    all_ok = True
    sweep_stats: dict = {}
    interp_tasks: dict = {}

    def run(name, fn):
        nonlocal all_ok
        if only is not None and name != only:
            return
        ok, sub = fn()
        all_ok = all_ok and ok
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}")
        lines.extend(sub)

    run("axioms", lambda: suite_axioms(profile, seed))
    run("cutprime", lambda: suite_cutprime(profile, seed))
    run("sweep", lambda: suite_sweep(profile, seed, sweep_stats))
    run("interpolation", lambda: suite_interpolation(profile, seed, interp_tasks))
    if only in (None, "termination"):
        if not sweep_stats:
            suite_sweep(profile, seed, sweep_stats)
        if not interp_tasks:
            suite_interpolation(profile, seed, interp_tasks)
        run("termination",
            lambda: suite_termination(profile, seed, sweep_stats, interp_tasks))
    run("fixpoints", lambda: suite_fixpoints(profile, seed))
    run("lemma12", lambda: suite_lemma12(profile, seed))
    run("trick", lambda: suite_trick(profile, seed))
    run("proofkit", lambda: suite_proofkit(profile, seed, sweep_stats))
    lines.append(f"result: {'PASS' if all_ok else 'FAIL'}")
    return all_ok, "\n".join(lines) + "\n"
