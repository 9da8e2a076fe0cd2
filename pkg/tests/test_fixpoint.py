import random

import pytest

from provlogic.fixpoint import dual_fixed_point, fixed_point, is_modalized
from provlogic.formula import atom, box, conj, neg, parse, substitute, variables
from provlogic.interpolate import provable
from provlogic.proofkit import check_proof
from provlogic.rand import random_modalized
from provlogic.sequent import Logic, Sequent, mset

p, q = atom("p"), atom("q")


def equivalent_gl(a, b):
    return (provable(Sequent(Logic.GL, mset([a]), mset([b])))
            and provable(Sequent(Logic.GL, mset([b]), mset([a]))))


def test_is_modalized_examples():
    assert is_modalized(neg(box(p)), "p")
    assert not is_modalized(conj(p, box(p)), "p")
    assert is_modalized(q, "p")


def test_fixed_point_not_box_p():
    r = fixed_point(parse("~box p"), "p")
    assert equivalent_gl(r.gamma, parse("~box bot"))
    assert equivalent_gl(r.gamma, substitute(r.beta, "p", r.gamma))
    assert check_proof(r.certificate)
    assert "p" not in variables(r.gamma)


def test_fixed_point_box_p():
    r = fixed_point(parse("box p"), "p")
    assert equivalent_gl(r.gamma, parse("top"))
    assert provable(Sequent(Logic.GL, mset(), mset([r.gamma])))
    assert check_proof(r.certificate)


def test_fixed_point_q_and_box_p():
    r = fixed_point(parse("q & box p"), "p")
    assert equivalent_gl(r.gamma, parse("q & box q"))
    assert check_proof(r.certificate)
    assert variables(r.gamma) <= {"q"}


def test_fixed_point_rejects_unmodalized():
    with pytest.raises(ValueError):
        fixed_point(p, "p")


def test_dual_construction_equivalent():
    rng = random.Random(6)
    for _ in range(8):
        beta = random_modalized(rng, "p", ["p", "q"], max_depth=2, max_weight=6)
        r = fixed_point(beta, "p")
        assert equivalent_gl(r.gamma, dual_fixed_point(beta, "p"))


def test_certificate_states_fixed_point_equation():
    from provlogic.formula import iff
    beta = parse("box(p & q)")
    r = fixed_point(beta, "p")
    want = iff(r.gamma, substitute(beta, "p", r.gamma))
    assert r.certificate.conclusion == Sequent(Logic.GL, mset(), mset([want]))
