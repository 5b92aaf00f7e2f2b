import pytest
from hypothesis import given, settings, strategies as st

from ehcert import certificates as C
from ehcert.construct import path_graph, petersen_graph, random_graph
from ehcert.errors import ParseError
from ehcert.io import format_graph, parse_graph, read_certificate, read_graph, write_certificate, write_graph


def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]
    assert g == path_graph(3)


def test_comments_blank_lines_and_orientation():
    g = parse_graph("# header next\n3 2\n\n1 0\n# edge\n2 1\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,line,fragment", [
    ("", 1, "header"),
    ("3\n", 1, "two integers"),
    ("a b\n", 1, "non-integer"),
    ("3 1\n0 3\n", 2, "range"),
    ("3 1\n1 1\n", 2, "loop"),
    ("3 2\n0 1\n", 2, "promises"),
    ("3 2\n0 1\n1 0\n", 3, "duplicate"),
    ("3 1\n0 1 2\n", 2, "two integers"),
    ("-1 0\n", 1, "negative"),
])
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_canonical_round_trip_is_byte_identical(tmp_path):
    text = format_graph(petersen_graph())
    p = tmp_path / "g.txt"
    p.write_text(text)
    write_graph(read_graph(p), tmp_path / "h.txt")
    assert (tmp_path / "h.txt").read_bytes() == p.read_bytes()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 30), st.floats(0, 1), st.integers(0, 10**6))
def test_format_parse_inverse(n, p, seed):
    g = random_graph(n, p, seed)
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


def test_certificate_round_trip(tmp_path):
    cert = C.stable_set([0, 2, 4], min_size=3, source="test")
    write_certificate(cert, tmp_path / "c.json")
    back = read_certificate(tmp_path / "c.json")
    assert C.to_dict(back) == C.to_dict(cert)


@pytest.mark.parametrize("text", ["{not json", '{"kind": "Nope"}', "[]"])
def test_malformed_certificate(tmp_path, text):
    p = tmp_path / "c.json"
    p.write_text(text)
    with pytest.raises(ParseError):
        read_certificate(p)
