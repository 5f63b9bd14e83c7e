import math

import pytest
from hypothesis import given, strategies as st

from weingarten import expr as E
from weingarten.errors import EvalError, ParseError, UnknownIdentifier


def test_evaluate_basic():
    node = E.parse_expr("1 + 0.2*sqrt(t) - v^2/4")
    assert E.evaluate(node, t=4.0, v=1.0) == pytest.approx(1.15)


@pytest.mark.parametrize("src, value", [
    # unary minus binds tighter than "^"
    ("2^3^2", 512.0), ("-2^2", 4.0), ("(1+2)*3", 9.0), ("exp(log(3))", 3.0),
    ("tanh(0)", 0.0), ("1e-3*1000", 1.0), ("cos(0) + sin(0)", 1.0),
])
def test_precedence_and_functions(src, value):
    assert E.evaluate(E.parse_expr(src)) == pytest.approx(value)


def test_unclosed_call_offset():
    with pytest.raises(ParseError) as exc:
        E.parse_expr("sqrt(t")
    assert exc.value.offset == 6


def test_trailing_token_offset():
    with pytest.raises(ParseError) as exc:
        E.parse_expr("t v")
    assert exc.value.offset == 2


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier):
        E.parse_expr("k2 + 1")
    assert E.free_variables(E.parse_expr("k2 + v", E.F_VARS)) == {"k2", "v"}


@pytest.mark.parametrize("src, env", [("sqrt(v)", {"v": -1.0}), ("log(v)", {"v": 0.0}),
                                      ("1/v", {"v": 0.0})])
def test_domain_errors(src, env):
    with pytest.raises(EvalError):
        E.evaluate(E.parse_expr(src), **env)


def test_substitute():
    node = E.substitute(E.parse_expr("k2*k2 + v", E.F_VARS), "k2", E.Num(3.0))
    assert E.evaluate(node, v=1.0) == 10.0


def test_compiled_equality():
    a = E.Compiled(E.parse_expr("t + v"))
    b = E.Compiled(E.parse_expr("(t)+(v)"))
    assert a == b and hash(a) == hash(b)
    assert a(t=1.0, v=2.0) == 3.0


leaves = st.one_of(st.sampled_from(["t", "v"]),
                   st.floats(0.0, 100.0, allow_nan=False).map(repr))


def _combine(children):
    return st.one_of(
        st.tuples(children, st.sampled_from("+-*/^"), children).map(lambda x: f"({x[0]} {x[1]} {x[2]})"),
        children.map(lambda c: f"(-{c})"),
        st.tuples(st.sampled_from(["sqrt", "exp", "tanh", "abs"]), children).map(lambda x: f"{x[0]}({x[1]})"),
    )


@given(st.recursive(leaves, _combine, max_leaves=12))
def test_source_round_trip(src):
    node = E.parse_expr(src)
    again = E.parse_expr(E.to_source(node))
    assert again == node
    assert E.to_source(again) == E.to_source(node)
