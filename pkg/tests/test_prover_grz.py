import random

import pytest

from provlogic.formula import parse
from provlogic.kripke import eval_at, frame_check, refutes
from provlogic.proofkit import check_proof
from provlogic.prover_grz import (_search_grz_any, countermodel_grz,
                                  extract_proof_grz, search_grz)
from provlogic.rand import random_sequent
from provlogic.sequent import Logic, parse_sequent

GRZ = Logic.GRZ


def grz(text):
    return parse_sequent(text, GRZ)


def test_search_examples():
    assert search_grz(grz("=> box(box(p -> box p) -> p) -> box p")).provable
    assert search_grz(grz("=> box p -> p")).provable
    assert not _search_grz_any(grz("box p | => p")).provable
    assert _search_grz_any(grz("box p | => box p")).provable
    t = search_grz(grz("box ~box p => box p"))
    assert not t.provable


def test_search_rejects_nonempty_storage():
    with pytest.raises(ValueError):
        search_grz(grz("box p | => p"))


def test_extract_examples():
    t = search_grz(grz("=> box p -> p"))
    pr = extract_proof_grz(t)
    assert check_proof(pr)
    rules = {n.rule for n in _walk(pr)}
    assert "box-t" in rules and ("not-r" in rules or "or-r" in rules)

    t = search_grz(grz("=> box(box(p -> box p) -> p) -> box p"))
    pr = extract_proof_grz(t)
    assert check_proof(pr)
    assert any(n.rule == "box-grz2" for n in _walk(pr))

    t = search_grz(grz("p => p"))
    assert extract_proof_grz(t).rule == "axiom-p"


def _walk(p):
    yield p
    for q in p.premises:
        yield from _walk(q)


def test_countermodel_examples():
    t = search_grz(grz("=> box p"))
    m, w = countermodel_grz(t)
    assert len(m.worlds) == 1 and (w, w) in m.relation and "p" not in m.valuation[w]

    t = search_grz(grz("box ~box p => box p"))
    m, w = countermodel_grz(t)
    assert len(m.worlds) == 1 and (w, w) in m.relation
    assert eval_at(m, w, parse("box ~box p")) and not eval_at(m, w, parse("box p"))


def test_countermodel_storage_root_rejected():
    t = _search_grz_any(grz("box p | => p"))
    with pytest.raises(ValueError):
        countermodel_grz(t)


def test_grz1_antecedent_drop_case():
    # Tree-guided extraction loses the q support; the oracle fallback must
    # still deliver a valid model.
    s = grz("box q, box(p -> box p) => box p")
    t = search_grz(s)
    assert not t.provable
    m, w = countermodel_grz(t)
    assert frame_check(m, GRZ) and refutes(m, w, s)


def test_corner_leaf_with_stored_diagonal():
    # Both box p and D(p) end up stored; the relaxed box-grz2 closes it.
    s = grz("box(p -> box p) & box p => box p")
    t = search_grz(s)
    assert t.provable
    assert check_proof(extract_proof_grz(t))


def test_lemma7_equivalence_at_desk_scale():
    from provlogic.kripke import bounded_countermodel
    rng = random.Random(17)
    for _ in range(60):
        s = random_sequent(rng, GRZ, ["p", "q"], 16, 2)
        verdict = search_grz(s).provable
        assert verdict == (bounded_countermodel(s, GRZ, 3) is None)


def test_transitive_looping_terminates():
    t = search_grz(grz("box ~box p => box p"))
    assert t.stats.nodes < 100
