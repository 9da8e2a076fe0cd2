import random

import pytest

from provlogic.formula import atom, bot, box, conj, diagonal, disj, neg, parse
from provlogic.proofkit import (Proof, ProofError, check_proof, contract, cut,
                                identity_proof, invert, parse_proof, proof_str,
                                validate_proof, weaken)
from provlogic.prover_gl import extract_proof_gl, search_gl
from provlogic.prover_grz import _search_grz_any, extract_proof_grz, search_grz
from provlogic.rand import random_formula, random_sequent
from provlogic.sequent import EMPTY, Logic, Sequent, mset, parse_sequent

GL, GRZ = Logic.GL, Logic.GRZ
p, q, r = atom("p"), atom("q"), atom("r")


def gl(text):
    return parse_sequent(text, GL)


def grz(text):
    return parse_sequent(text, GRZ)


def prove(logic, text):
    s = parse_sequent(text, logic)
    if logic is GL:
        return extract_proof_gl(search_gl(s))
    return extract_proof_grz(_search_grz_any(s))


def test_axiom_nodes():
    assert check_proof(Proof("axiom-p", gl("q, p => p, r"), p))
    assert check_proof(Proof("axiom-bot", gl("q, bot => r"), bot()))
    assert not check_proof(Proof("axiom-p", gl("p => q"), p))
    assert not check_proof(Proof("axiom-p", gl("bot => bot"), bot()))


def test_box_gl_side_condition():
    # Pi containing a conjunction is rejected
    concl = gl("p & q, box r => box r")
    premise = Proof("axiom-p", gl("box r, r, box r => r"), r)
    bad = Proof("box-gl", concl, box(r), (premise,))
    assert not check_proof(bad)
    good = Proof("box-gl", gl("p, box r => box r"),
                 box(r), (Proof("axiom-p", gl("box r, r, box r => r"), r),))
    assert check_proof(good)


def test_box_grz1_needs_stored_diagonal():
    concl = grz("box p | => box p")
    premise = Proof("axiom-p", grz("box p | => p"), p)  # not even an axiom
    bad = Proof("box-grz1", concl, box(p), (premise,))
    assert not check_proof(bad)
    # with the diagonal stored and a real premise proof the node is fine
    d = diagonal(p)
    st = mset([box(p), d])
    inner = identity_proof(GRZ, st, EMPTY, p, EMPTY)
    # inner proves (box p, D(p) | p => p); grz1 premise must be (| => p): mismatch
    bad2 = Proof("box-grz1", Sequent(GRZ, EMPTY, mset([box(p)]), st),
                 box(p), (inner,))
    assert not check_proof(bad2)


def test_validate_reports_offender():
    bad = Proof("and-l", gl("p & q => p"), conj(p, q),
                (Proof("axiom-p", gl("p => p"), p),))
    with pytest.raises(ProofError, match="premise"):
        validate_proof(bad)


def test_weaken_gl_examples():
    ax = Proof("axiom-p", gl("p => p"), p)
    w = weaken(ax, "left", q)
    assert check_proof(w) and w.conclusion == gl("q, p => p")
    assert w.height == ax.height

    loeb = prove(GL, "=> box(box p -> p) -> box p")
    for f in (q, bot(), box(q), box(box(p))):
        for side in ("left", "right"):
            out = weaken(loeb, side, f)
            assert check_proof(out)
            assert out.height <= loeb.height
    # right weakening rides along for any boxed formula
    out = weaken(loeb, "right", box(disj(p, q)))
    assert check_proof(out) and out.height <= loeb.height
    # compound weakening formulas stay valid (height may grow past modal nodes)
    out = weaken(loeb, "left", conj(p, q))
    assert check_proof(out)


def test_weaken_gl_boxed_over_modal_permutation():
    pr = prove(GL, "box q => box q, r")
    out = weaken(pr, "left", box(p))
    assert check_proof(out)
    assert out.height <= pr.height
    assert out.conclusion == gl("box p, box q => box q, r")


def test_weaken_grz_inserts_box_t():
    pr = prove(GRZ, "=> box p -> box p")
    out = weaken(pr, "left", box(q))
    assert check_proof(out)
    assert out.conclusion == grz("box q => box p -> box p")


def test_weaken_grz_storage():
    pr = prove(GRZ, "p => p")
    out = weaken(pr, "storage", box(q))
    assert check_proof(out) and out.conclusion == grz("box q | p => p")
    with pytest.raises(ValueError):
        weaken(pr, "storage", q)
    with pytest.raises(ValueError):
        weaken(prove(GL, "p => p"), "storage", box(q))


def test_contract_examples():
    two = prove(GL, "p, p => p")
    c = contract(two, "left", p)
    assert check_proof(c) and c.conclusion == gl("p => p")
    assert c.height <= two.height
    with pytest.raises(ValueError):
        contract(c, "left", p)


def test_contract_boxed_over_box_gl():
    s = gl("box p, box p => box p")
    pr = extract_proof_gl(search_gl(s))
    c = contract(pr, "left", box(p))
    assert check_proof(c) and c.conclusion == gl("box p => box p")
    assert c.height <= pr.height


def test_contract_grz_cases():
    base = prove(GRZ, "box p => box p, q")
    w = weaken(base, "left", box(p))
    c = contract(w, "left", box(p))
    assert check_proof(c) and c.conclusion == base.conclusion
    assert c.height <= w.height
    # storage contraction via explicit duplicate
    pr = prove(GRZ, "p => p")
    w2 = weaken(weaken(pr, "storage", box(q)), "storage", box(q))
    c2 = contract(w2, "storage", box(q))
    assert check_proof(c2) and c2.conclusion == grz("box q | p => p")
    assert c2.height <= w2.height


def test_contract_compound():
    f = disj(p, q)
    s = Sequent(GL, mset([f, f]), mset([p, q]))
    pr = extract_proof_gl(search_gl(s))
    c = contract(pr, "left", f)
    assert check_proof(c) and c.conclusion == Sequent(GL, mset([f]), mset([p, q]))
    assert c.height <= pr.height


def test_invert_examples():
    pr = prove(GL, "=> p | ~p")
    out = invert(pr, "or-r", disj(p, neg(p)))
    assert len(out) == 1 and out[0].conclusion == gl("=> p, ~p")
    assert check_proof(out[0]) and out[0].height <= pr.height

    pr = prove(GL, "p & q => p & q")
    outs = invert(pr, "and-r", conj(p, q))
    assert len(outs) == 2
    assert [str(o.conclusion) for o in outs] == ["p & q => p", "p & q => q"]
    assert all(check_proof(o) and o.height <= pr.height for o in outs)

    pr = prove(GRZ, "box p => box p")
    out = invert(pr, "box-t", box(p))[0]
    assert check_proof(out)
    assert out.conclusion == grz("box p | p => box p")


def test_invert_shape_mismatch():
    pr = prove(GL, "p => p")
    with pytest.raises(ValueError):
        invert(pr, "and-l", conj(p, q))
    with pytest.raises(ValueError):
        invert(pr, "box-gl", box(p))


def test_cut_composes():
    left = prove(GL, "=> p | ~p")
    right = prove(GL, "p | ~p => p | ~p")
    out = cut(left, right, parse("p | ~p"))
    assert check_proof(out)
    assert str(out.conclusion) == "=> p | ~p"


def test_cut_bot():
    left = prove(GL, "bot => p, bot")
    right = prove(GL, "bot => p")
    out = cut(left, right, bot())
    assert check_proof(out) and out.conclusion == gl("bot => p, p")
    assert out.rule == "axiom-bot"


def test_cut_grz_storage_rejected():
    t1 = _search_grz_any(grz("box p | => box p"))
    t2 = search_grz(grz("box p => p"))
    with pytest.raises(ValueError, match="cut'"):
        cut(extract_proof_grz(t1), extract_proof_grz(t2), box(p))


def test_identity_proof_arbitrary():
    rng = random.Random(13)
    for logic in (GL, GRZ):
        for _ in range(40):
            alpha = random_formula(rng, ["p", "q"], 9, 2)
            theta = mset([random_formula(rng, ["p", "q"], 4, 1)])
            storage = mset([box(random_formula(rng, ["p"], 3, 1))]) \
                if logic is GRZ else EMPTY
            pr = identity_proof(logic, storage, theta, alpha, EMPTY)
            assert check_proof(pr)
            assert alpha in pr.conclusion.ante.counts
            assert alpha in pr.conclusion.succ.counts


def test_proof_export_roundtrip():
    for logic, text in ((GL, "=> box(box p -> p) -> box p"),
                        (GRZ, "=> box p -> p")):
        pr = prove(logic, text)
        doc = proof_str(pr)
        back = parse_proof(doc, logic)
        assert proof_str(back) == doc
        assert check_proof(back)


def test_transformers_on_random_extracted_proofs():
    rng = random.Random(99)
    for logic in (GL, GRZ):
        done = 0
        while done < 12:
            s = random_sequent(rng, logic, ["p", "q"], 14, 2)
            tree = search_gl(s) if logic is GL else search_grz(s)
            if not tree.provable:
                continue
            done += 1
            pr = extract_proof_gl(tree) if logic is GL else extract_proof_grz(tree)
            assert check_proof(pr)
            f = rng.choice([q, bot(), box(p), conj(p, q)])
            w = weaken(pr, rng.choice(["left", "right"]), f)
            assert check_proof(w)
