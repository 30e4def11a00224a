from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cumulative.errors import ParseError
from cumulative.syntax import Any, Ifnz, Num, Plus, depth, generate, parse, render, walk


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1+2", Plus(Num(1), Num(2))),
        ("1+2+3", Plus(Plus(Num(1), Num(2)), Num(3))),
        ("ifnz 1 { 2 } else { 3 }", Ifnz(Num(1), Num(2), Num(3))),
        ("any(0,3)+1", Plus(Any(0, 3), Num(1))),
        ("1+(2+3)", Plus(Num(1), Plus(Num(2), Num(3)))),
        ("-4", Num(-4)),
        ("any(-3,-1)", Any(-3, -1)),
        ("ifnz ifnz 0{1}else{2} {3} else {4}+5", Plus(Ifnz(Ifnz(Num(0), Num(1), Num(2)), Num(3), Num(4)), Num(5))),
        ("ifnz 1+2 { 3 } else { 4 }", Ifnz(Plus(Num(1), Num(2)), Num(3), Num(4))),
        ("  (\n 7 )\t", Num(7)),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize(
    "e, text",
    [
        (Num(5), "5"),
        (Plus(Num(1), Plus(Num(2), Num(3))), "1+(2+3)"),
        (Plus(Plus(Num(1), Num(2)), Num(3)), "1+2+3"),
        (Ifnz(Num(0), Num(1), Num(2)), "ifnz 0 { 1 } else { 2 }"),
        (Plus(Any(0, 1), Num(-2)), "any(0,1)+-2"),
    ],
)
def test_render(e, text):
    assert render(e) == text


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("1+", 1, 3),
        ("1 2", 1, 3),
        ("ifnz 1 { 2 }", 1, 13),
        ("1+\n  foo", 2, 3),
        ("(1", 1, 3),
        ("", 1, 1),
        ("1 - 2", 1, 3),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("1+")
    assert info.value.expected == {"INT", "any", "ifnz", "("}


def test_any_with_empty_range_is_rejected():
    with pytest.raises(ParseError, match="lo > hi"):
        parse("any(3,1)")
    with pytest.raises(ValueError):
        Any(3, 1)


def test_literal_outside_64_bit_range():
    assert parse(str(2**63 - 1)) == Num(2**63 - 1)
    with pytest.raises(ParseError, match="64-bit"):
        parse(str(2**63))


def test_deep_nesting_is_a_parse_error_not_a_crash():
    with pytest.raises(ParseError):
        parse("(" * 100_000 + "1" + ")" * 100_000)


def test_generate_depth_one_is_a_literal():
    for seed in range(50):
        assert isinstance(generate(seed, 1, False), Num)


def test_generate_is_deterministic():
    assert generate(42, 8, True) == generate(42, 8, True)


def test_generate_covers_every_constructor():
    counts = Counter(type(n).__name__ for seed in range(1000) for n in walk(generate(seed, 8, True)))
    assert all(counts[k] > 0 for k in ("Num", "Plus", "Ifnz", "Any"))


def test_generate_without_any():
    assert not any(isinstance(n, Any) for seed in range(300) for n in walk(generate(seed, 8, False)))


def test_generated_literals_stay_in_range():
    for seed in range(300):
        for n in walk(generate(seed, 8, True)):
            if isinstance(n, Num):
                assert -16 <= n.n <= 16
            elif isinstance(n, Any):
                assert -16 <= n.lo <= 16 and n.hi - n.lo + 1 <= 8


@settings(max_examples=300)
@given(seed=st.integers(0, 2**32), max_depth=st.integers(1, 9), allow_any=st.booleans())
def test_round_trip_and_depth_bound(seed, max_depth, allow_any):
    e = generate(seed, max_depth, allow_any)
    assert depth(e) <= max_depth
    assert parse(render(e)) == e


@given(st.text(alphabet="0123456789-+(){},anyifzelsx \n", max_size=40))
def test_parser_is_total(text):
    try:
        e = parse(text)
    except ParseError:
        return
    assert parse(render(e)) == e
