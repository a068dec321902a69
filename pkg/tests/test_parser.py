from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ladderkit.algebra import HBAR, OperatorPoly, Scalar, hbar_omega
from ladderkit.core.errors import ExponentError, ExprSyntaxError, HermiticityError, UnknownSymbolError
from ladderkit.parser import (
    SYMBOL_NAMES,
    Neg,
    Num,
    Power,
    Prod,
    Sum,
    Sym,
    emit,
    parse,
    parse_operator,
    require_hermitian,
    tokenize,
)


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------
def test_precedence_and_flattening():
    assert parse("a + ad*a^2 - 3") == Sum(
        (Sym("a"), Prod((Sym("ad"), Power(Sym("a"), 2))), Neg(Num(Fraction(3))))
    )
    assert parse("(a + ad) + N") == Sum((Sum((Sym("a"), Sym("ad"))), Sym("N")))
    assert parse("-q^2") == Neg(Power(Sym("q"), 2))
    assert parse("1/2*p") == Prod((Num(Fraction(1, 2)), Sym("p")))


def test_tokens_carry_byte_offsets():
    tokens = tokenize("q + p")
    assert [(t.kind, t.offset) for t in tokens] == [("SYMBOL", 0), ("+", 2), ("SYMBOL", 4), ("EOF", 5)]


def test_multibyte_whitespace_shifts_offsets_by_its_byte_length():
    tokens = tokenize("q\u00a0+ p")
    assert [(t.kind, t.offset) for t in tokens] == [("SYMBOL", 0), ("+", 3), ("SYMBOL", 5), ("EOF", 6)]


_leaves = st.one_of(
    st.sampled_from(SYMBOL_NAMES).map(Sym),
    st.fractions(min_value=0, max_value=9, max_denominator=4).map(Num),
)


def _extend(children):
    return st.one_of(
        children.map(Neg),
        st.builds(Power, children, st.integers(0, 4)),
        st.lists(children, min_size=2, max_size=3).map(lambda xs: Sum(tuple(xs))),
        st.lists(children, min_size=2, max_size=3).map(lambda xs: Prod(tuple(xs))),
    )


@given(st.recursive(_leaves, _extend, max_leaves=8))
@settings(max_examples=60, deadline=None)
def test_emit_is_reparsed_to_the_same_tree(tree):
    assert parse(emit(tree)) == tree


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------
def test_missing_operand():
    with pytest.raises(ExprSyntaxError) as info:
        parse("q + * p")
    assert info.value.offset == 4
    assert set(info.value.expected) == {"NUMBER", "SYMBOL", "(", "-"}


def test_offsets_count_bytes():
    # the no-break space takes two bytes in UTF-8
    with pytest.raises(ExprSyntaxError) as info:
        parse("q +\u00a0* p")
    assert info.value.offset == 5


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError) as info:
        parse("q + foo")
    assert info.value.offset == 4
    assert info.value.to_dict()["symbol"] == "foo"


@pytest.mark.parametrize("src, offset", [("q^x", 2), ("q^1/2", 2), ("q^-1", 2)])
def test_bad_exponents(src, offset):
    with pytest.raises(ExponentError) as info:
        parse(src)
    assert info.value.offset == offset


@pytest.mark.parametrize(
    "src, offset",
    [("0.5*q", 0), ("(q", 2), ("q @ p", 2), ("q p", 2), ("1/0", 0), ("", 0)],
)
def test_syntax_errors(src, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


# ---------------------------------------------------------------------------
# Lowering
# ---------------------------------------------------------------------------
def test_canonical_commutator():
    assert parse_operator("q*p - p*q") == OperatorPoly.scalar(Scalar(im=1, units=HBAR))
    assert parse_operator("a*ad - ad*a") == OperatorPoly.identity()


def test_named_operators():
    assert parse_operator("ad*a") == OperatorPoly.number()
    assert parse_operator("p^4") == OperatorPoly.momentum() ** 4
    assert parse_operator("2^3 - 8") == OperatorPoly.zero()
    assert parse_operator("hbar*omega*(N + 1/2)") == (
        OperatorPoly.number() + Fraction(1, 2)
    ).scale(hbar_omega())


def test_hermiticity_gate():
    assert require_hermitian(parse_operator("i*(ad - a)")).is_hermitian()
    with pytest.raises(HermiticityError):
        require_hermitian(parse_operator("a + 2*ad"))
