import random

import pytest

from provlogic.formula import atom, box, imp, neg, parse
from provlogic.kripke import (KripkeModel, bounded_countermodel, eval_at,
                              eval_plain, frame_check, model_str, parse_model,
                              refutes)
from provlogic.rand import random_formula
from provlogic.sequent import Logic, parse_sequent

GL, GRZ = Logic.GL, Logic.GRZ
p = atom("p")


def single(reflexive=False, val=()):
    rel = {(0, 0)} if reflexive else set()
    return KripkeModel([0], rel, {0: set(val)})


def test_eval_examples():
    m = single()
    assert eval_at(m, 0, box(p))  # vacuous
    assert not eval_at(m, 0, imp(box(p), p))
    mr = single(reflexive=True)
    assert eval_at(mr, 0, box(neg(box(p))))


def test_eval_unknown_world():
    with pytest.raises(KeyError):
        eval_at(single(), 3, p)


def test_frame_check_examples():
    assert not frame_check(single(reflexive=True), GL)
    assert frame_check(single(reflexive=True), GRZ)
    assert frame_check(KripkeModel([0, 1], {(0, 1)}, {}), GL)
    assert not frame_check(KripkeModel([0, 1, 2], {(0, 1), (1, 2)}, {}), GL)
    assert not frame_check(KripkeModel([0, 1],
                                       {(0, 0), (1, 1), (0, 1), (1, 0)}, {}), GRZ)


def test_refutes_examples():
    m = single()
    assert refutes(m, 0, parse_sequent("=> p", GL))
    assert refutes(m, 0, parse_sequent("=> box p -> p", GL))
    assert not refutes(m, 0, parse_sequent("p => p", GL))
    with pytest.raises(ValueError):
        refutes(m, 0, parse_sequent("box p | => p", GRZ))


def test_bounded_countermodel_examples():
    m, w = bounded_countermodel(parse_sequent("=> box p -> p", GL), GL, 1)
    assert len(m.worlds) == 1 and not m.relation and refutes(m, w, parse_sequent("=> box p -> p", GL))
    assert bounded_countermodel(
        parse_sequent("=> box(box p -> p) -> box p", GL), GL, 4) is None
    m, w = bounded_countermodel(parse_sequent("=> box p", GRZ), GRZ, 1)
    assert len(m.worlds) == 1 and (w, w) in m.relation


def test_bounded_countermodel_cap():
    with pytest.raises(ValueError):
        bounded_countermodel(parse_sequent("=> p", GL), GL, 9)


def test_bounded_countermodel_respects_frames():
    # Grz-valid but GL-invalid: T has a GL countermodel, no Grz one.
    s = parse_sequent("=> box p -> p", GRZ)
    assert bounded_countermodel(s, GRZ, 3) is None
    s4 = parse_sequent("=> box p -> box box p", GRZ)
    assert bounded_countermodel(s4, GRZ, 3) is None


def test_eval_differential():
    rng = random.Random(7)
    m = KripkeModel(range(4), {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)},
                    {0: {"p"}, 1: {"q"}, 2: {"p", "q"}, 3: set()})
    for _ in range(200):
        f = random_formula(rng, ["p", "q"], 12, 3)
        for w in m.worlds:
            assert eval_at(m, w, f) == eval_plain(m, w, f)


def test_model_roundtrip():
    m = KripkeModel(range(3), {(0, 1), (0, 2)}, {0: {"p"}, 1: set(), 2: {"q"}})
    text = model_str(m, 0)
    m2, root = parse_model(text)
    assert root == 0
    assert m2.worlds == m.worlds and m2.relation == m.relation
    assert m2.valuation == m.valuation
    assert model_str(m2, root) == text


def test_first_model_canonical_and_deterministic():
    s = parse_sequent("=> box p | box ~p", GL)
    a = bounded_countermodel(s, GL, 3)
    b = bounded_countermodel(s, GL, 3)
    assert a is not None
    assert model_str(a[0], a[1]) == model_str(b[0], b[1])
    # refutes both disjuncts: some successor has p, another lacks it
    m, w = a
    assert not eval_at(m, w, parse("box p")) and not eval_at(m, w, parse("box ~p"))
