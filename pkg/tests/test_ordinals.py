import pytest
from hypothesis import given

from transfinia.ordinals import (
    OMEGA,
    Limit,
    NotALimit,
    ParseError,
    Successor,
    Zero,
    add,
    classify,
    compare,
    from_json,
    fundamental_seq,
    mul,
    omega_pow,
    ordinal,
    parity,
    parse,
    sub,
    to_json,
)
from transfinia import oracles as O

from strategies import ordinals

W = OMEGA


@pytest.mark.parametrize(
    "a, b, expected",
    [(W, W, "EQ"), (add(W, 1), mul(W, 2), "LT"), (omega_pow(W), add(mul(omega_pow(2), 5), 3), "GT")],
)
def test_compare_examples(a, b, expected):
    assert compare(a, b) == expected


def test_addition_examples():
    assert add(1, W) == W
    assert add(W, 1) == parse("w+1")
    assert add(parse("w*2+3"), parse("w+1")) == parse("w*3+1")


def test_multiplication_examples():
    assert mul(W, 0) == ordinal(0)
    assert mul(2, W) == W
    assert mul(add(W, 1), 2) == parse("w*2+1")


def test_classify():
    assert isinstance(classify(0), Zero)
    c = classify(parse("w+3"))
    assert isinstance(c, Successor) and c.pred == parse("w+2")
    assert isinstance(classify(parse("w^2*2")), Limit)


def test_fundamental_sequence_examples():
    assert fundamental_seq(W, 3) == ordinal(3)
    assert fundamental_seq(mul(W, 2), 4) == parse("w+4")
    assert fundamental_seq(omega_pow(W), 2) == omega_pow(2)
    with pytest.raises(NotALimit):
        fundamental_seq(parse("w+1"), 0)


def test_fundamental_sequence_is_cofinal_below_w_to_the_w():
    a = omega_pow(W)
    values = [fundamental_seq(a, k) for k in range(21)]
    assert all(x < y for x, y in zip(values, values[1:]))
    # every w^n is eventually passed
    for n in range(15):
        assert any(omega_pow(n) < v for v in values)


def test_parity_examples():
    assert parity(0) == 0
    assert parity(parse("w*2+3")) == 1
    assert parity(omega_pow(W)) == 0


def test_parse_and_print_round_trip():
    for text in ["0", "7", "w", "w+1", "w*2+3", "w^2*5+3", "w^w", "w^(w+1)*2+w"]:
        assert parse(str(parse(text))) == parse(text)


@pytest.mark.parametrize("bad", ["w^", "w+", "", "3x", "(w"])
def test_parse_errors_carry_location(bad):
    with pytest.raises(ParseError) as info:
        parse(bad)
    assert "position" in str(info.value)


@given(ordinals(), ordinals(), ordinals())
def test_addition_is_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals(), ordinals())
def test_left_distributivity(a, b, c):
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@given(ordinals(), ordinals())
def test_arithmetic_matches_the_term_oracle(a, b):
    oa, ob = O.to_oracle(a), O.to_oracle(b)
    assert O.from_oracle(oa + ob) == add(a, b)
    assert O.from_oracle(oa * ob) == mul(a, b)
    assert (oa < ob) == (a < b)


@given(ordinals(), ordinals())
def test_left_subtraction_inverts_addition(a, b):
    assert sub(add(a, b), a) == b
    if a <= b:
        assert add(a, sub(b, a)) == b


@given(ordinals())
def test_parity_laws(a):
    assert parity(add(a, 1)) == 1 - parity(a)
    assert parity(a) == O.nested_parity(a)
    if a.is_limit:
        assert parity(a) == 0


@given(ordinals())
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a
    assert from_json(str(a)) == a
