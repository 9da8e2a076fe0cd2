import random

import pytest

from provlogic.formula import (atom, bot, box, conj, dia, disj, neg, parse,
                               top, variables)
from provlogic.interpolate import (InterpolationTask, check_preinterpolant,
                                   exists, forall, forall_gl, forall_grz,
                                   provable, simplify, trick_equivalence)
from provlogic.rand import random_formula, random_sequent
from provlogic.sequent import EMPTY, Logic, Sequent, mset, parse_sequent

GL, GRZ = Logic.GL, Logic.GRZ
p, q, r = atom("p"), atom("q"), atom("r")


def equivalent(logic, a, b):
    return (provable(Sequent(logic, mset([a]), mset([b])))
            and provable(Sequent(logic, mset([b]), mset([a]))))


def test_forall_gl_frozen_examples():
    f = forall_gl(EMPTY, mset([p]), "p")
    assert f == disj(bot(), dia(bot()))  # raw form bot | dia bot
    assert equivalent(GL, f, bot())

    f = forall_gl(EMPTY, mset([q]), "p")
    assert f == disj(q, dia(bot()))
    assert equivalent(GL, f, q)

    assert forall_gl(mset([p]), mset([p]), "p") == top()
    assert forall_gl(mset([bot()]), EMPTY, "p") == top()


def test_forall_grz_frozen_examples():
    f = forall_grz(EMPTY, EMPTY, mset([p]), "p")
    assert f == disj(bot(), dia(bot()))
    assert equivalent(GRZ, f, bot())

    assert forall_grz(EMPTY, mset([p]), mset([p]), "p") == top()

    # For (box S | ; ) the literal tables give bot | dia /\N, which behaves
    # like bot only in context: with storage box q the value is dia ~q.
    f = forall_grz(mset([box(q)]), EMPTY, EMPTY, "p")
    assert f == disj(bot(), dia(neg(q)))
    # property (ii): storage refutes it
    assert provable(Sequent(GRZ, mset([f]), EMPTY, mset([box(q)])))
    # the hard-coded bot value would violate (iii) on Phi={}, Psi={box q}
    assert provable(Sequent(GRZ, EMPTY, mset([box(q)]), mset([box(q)])))
    assert provable(Sequent(GRZ, EMPTY, mset([f, box(q)])))
    assert not provable(Sequent(GRZ, EMPTY, mset([bot(), box(q)])))


def test_exists_examples():
    e = exists(conj(p, q), "p", GL)
    assert equivalent(GL, e, q)
    e = exists(q, "p", GL)
    assert equivalent(GL, e, q)
    e = exists(bot(), "p", GL)
    assert equivalent(GL, e, bot())


def test_variable_condition():
    rng = random.Random(2)
    for logic in (GL, GRZ):
        for _ in range(25):
            s = random_sequent(rng, logic, ["p", "q", "r"], 12, 2)
            result = forall(s, "p")
            vs = variables(result)
            assert "p" not in vs
            inputs = set()
            for zone in (s.storage, s.ante, s.succ):
                for f in zone.counts:
                    inputs |= variables(f)
            assert vs <= inputs - {"p"}


def test_entailment_property():
    rng = random.Random(3)
    for logic in (GL, GRZ):
        for _ in range(15):
            s = random_sequent(rng, logic, ["p", "q"], 10, 2)
            result = forall(s, "p")
            assert provable(s.with_zones(ante=s.ante.add(result)))


def test_check_preinterpolant_detects_corruption():
    s = parse_sequent("=> p", GL)
    task = InterpolationTask(GL, s, "p")
    good = forall(s, "p", task)
    rep = check_preinterpolant(task, good, samples=5, seed=0)
    assert rep["passed"]
    rep = check_preinterpolant(task, top(), samples=5, seed=0)
    assert not rep["entail_ok"] and not rep["passed"]
    rep = check_preinterpolant(task, p, samples=5, seed=0)
    assert not rep["var_ok"]


def test_preinterpolant_iii_axiom_context():
    # (iii) with Phi={q}, Psi={} for the task (;q)
    s = parse_sequent("=> q", GL)
    task = InterpolationTask(GL, s, "p")
    result = forall(s, "p", task)
    assert provable(parse_sequent("q => q", GL))
    assert provable(Sequent(GL, mset([q]), mset([result])))


def test_idempotence_on_var_free_input():
    rng = random.Random(5)
    for logic in (GL, GRZ):
        for _ in range(10):
            f = random_formula(rng, ["q", "r"], 8, 2)
            s = Sequent(logic, EMPTY, mset([f]))
            result = forall(s, "p")
            assert equivalent(logic, result, f)


def test_trick_equivalence_examples():
    assert trick_equivalence(GL, mset([box(p)]), "p")
    assert trick_equivalence(GL, EMPTY, "p")
    assert trick_equivalence(GRZ, mset([box(q)]), "p")
    with pytest.raises(ValueError):
        trick_equivalence(GL, mset([p]), "p")


def test_simplify_rules_and_verification():
    f = disj(bot(), q)
    assert simplify(f) is q
    assert simplify(conj(top(), q)) is q
    assert simplify(dia(bot())) is bot()
    assert simplify(conj(top(), disj(q, bot())), GL) is q
    # untouched shapes stay put
    g = disj(p, q)
    assert simplify(g) is g


def test_simplified_interpolants_stay_equivalent():
    rng = random.Random(8)
    for logic in (GL, GRZ):
        for _ in range(10):
            s = random_sequent(rng, logic, ["p", "q"], 10, 2)
            raw = forall(s, "p")
            slim = simplify(raw, logic)  # prover-verified internally
            assert equivalent(logic, raw, slim)


def test_determinism_of_construction():
    s = parse_sequent("box(p -> q) => box q, r", GL)
    assert str(forall(s, "p")) == str(forall(s, "p"))


def test_measure_trace_decreases():
    for logic in (GL, GRZ):
        s = parse_sequent("box(p -> q), p => box q", logic)
        task = InterpolationTask(logic, s, "p")
        forall(s, "p", task)
        assert task.steps and not task.violations
        for parent, child in task.steps:
            assert child < parent
