import pytest
from hypothesis import given, settings, strategies as st

from provlogic.formula import (ParseError, atom, bot, box, box_depth, conj, dia,
                               diagonal, disj, fprint, iff, imp, neg,
                               occurrences, parse, subformulas, substitute, top,
                               variables, weight)

p, q, r = atom("p"), atom("q"), atom("r")


def test_parse_loeb_desugared():
    f = parse("box(box p -> p) -> box p")
    assert f == disj(neg(box(disj(neg(box(p)), p))), box(p))


def test_parse_constants_and_diamond():
    assert parse("bot") is bot()
    assert parse("top") == neg(bot())
    assert parse("<> p") == neg(box(neg(p)))
    assert parse("dia p") == parse("<> p")
    assert parse("[] p") == box(p)


def test_parse_errors_have_positions():
    with pytest.raises(ParseError):
        parse("box (p")
    with pytest.raises(ParseError):
        parse("p @ q")
    with pytest.raises(ParseError):
        parse("p q")


def test_imp_right_associative():
    assert parse("p -> q -> r") == imp(p, imp(q, r))
    assert parse("(p -> q) -> r") == imp(imp(p, q), r)


def test_iff_expansion():
    assert parse("p <-> q") == conj(imp(p, q), imp(q, p))


def test_print_examples():
    assert str(bot()) == "bot"
    assert str(box(p)) == "box p"
    assert fprint(neg(box(neg(p))), sugar=True) == "<> p"
    assert fprint(parse("box(box p -> p) -> box p"), sugar=True) \
        == "box (box p -> p) -> box p"


def test_weight_examples():
    assert weight(p) == 1
    assert weight(box(disj(neg(p), box(p)))) == 6
    assert weight(bot()) == 1


def test_box_depth_examples():
    assert box_depth(p) == 0
    assert box_depth(box(box(p))) == 2
    assert box_depth(disj(box(p), box(box(q)))) == 2


def test_subformulas_and_variables():
    assert subformulas(box(p)) == frozenset({box(p), p})
    assert variables(disj(p, neg(q))) == frozenset({"p", "q"})
    assert variables(bot()) == frozenset()


def test_substitute_examples():
    assert substitute(box(p), "p", bot()) == box(bot())
    assert substitute(q, "p", bot()) is q
    assert substitute(neg(box(p)), "p", neg(box(bot()))) == neg(box(neg(box(bot()))))


def test_diagonal():
    assert diagonal(p) == box(disj(neg(p), box(p)))
    assert diagonal(bot()) == box(disj(neg(bot()), box(bot())))
    assert diagonal(box(q)) == box(disj(neg(box(q)), box(box(q))))


def formulas(max_leaves=8):
    leaf = st.one_of(st.sampled_from([p, q, r, bot()]))
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(neg), sub.map(box),
            st.tuples(sub, sub).map(lambda ab: conj(*ab)),
            st.tuples(sub, sub).map(lambda ab: disj(*ab))),
        max_leaves=max_leaves)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_print_parse_roundtrip(f):
    assert parse(str(f)) is f
    assert parse(fprint(f, sugar=True)) is f


@settings(max_examples=200, deadline=None)
@given(formulas(), formulas(max_leaves=4))
def test_weight_substitution_law(f, g):
    expected = weight(f) + occurrences("p", f) * (weight(g) - 1)
    assert weight(substitute(f, "p", g)) == expected


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_box_depth_below_weight(f):
    assert box_depth(f) <= weight(f)


def test_interning_makes_equal_structures_identical():
    assert conj(p, box(q)) is conj(p, box(q))
    assert top() is neg(bot())
    assert dia(p) is neg(box(neg(p)))
    assert iff(p, q) is conj(imp(p, q), imp(q, p))
