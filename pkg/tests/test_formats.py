import random

import pytest
from hypothesis import given

from conftest import five_flats, seeds
from polylat.formats import (
    ParseError,
    dump,
    load,
    parse_genlattice,
    parse_graph,
    parse_polymatroid,
    parse_poset,
    print_genlattice,
    print_graph,
    print_polymatroid,
    print_poset,
)
from polylat.verify import RandomSpec, random_instance


def test_five_flats_file(data_dir):
    p = load(str(data_dir / "five_flats.pm"))
    assert p == five_flats()
    assert len(p.rank) == 8


def test_rational_rank_accepted():
    p = parse_polymatroid("elements: 1 2\nrank {} = 0\nrank {1} = 1\nrank {2} = 1\nrank {1,2} = 3/2\n")
    assert str(p.rank[3]) == "3/2"


@pytest.mark.parametrize("text,needle", [
    ("elements: 1 2\nrank {} = 0\nrank {1} = 1\nrank {2} = 1\n", "missing rank for subset {1,2}"),
    ("elements: 1\nrank {} = 0\nrank {1} = 1\nrank {1} = 1\n", "line 4"),
    ("elements: 1\nrank {} = 0\nrank {1} = 0.5\n", "not an exact rational"),
    ("elements: 1\nrank {} = 0\nrank {z} = 1\n", "unknown element"),
    ("rank {} = 0\n", "expected 'elements: ...'"),
    ("", "empty"),
])
def test_polymatroid_parse_errors(text, needle):
    with pytest.raises(ParseError) as e:
        parse_polymatroid(text)
    assert needle in str(e.value)


def test_parse_error_carries_line_and_column():
    with pytest.raises(ParseError) as e:
        parse_polymatroid("elements: 1\nrank {} = 0\nrank {1} = x\n")
    assert e.value.line == 3 and e.value.column is not None


def test_genlattice_errors():
    with pytest.raises(ParseError):
        parse_genlattice("elements: a b\ncover a < b\n")  # no generators line
    with pytest.raises(ParseError):
        parse_genlattice("elements: 0 a b\ncover 0 < a\ncover 0 < b\ngenerators: a b\n")  # no top
    with pytest.raises(ParseError):
        parse_graph("vertices: 1 2\nedge 1 3\n")
    with pytest.raises(ParseError):
        parse_poset("elements: a b\ncover a < b\ncover b < a\n")


@given(seeds)
def test_roundtrips(seed):
    for kind, parse, show in [("polymatroid", parse_polymatroid, print_polymatroid),
                              ("graph", parse_graph, print_graph),
                              ("poset", parse_poset, print_poset),
                              ("genlattice", parse_genlattice, print_genlattice)]:
        x = random_instance(RandomSpec(seed, kind, max_n=4))
        text = show(x)
        y = parse(text)
        assert show(y) == text
        assert dump(y) == text
        if kind != "genlattice":
            assert y == x
        else:
            assert y.lattice.labels == x.lattice.labels and y.gen_labels() == x.gen_labels()


def test_graph_blocks():
    g = parse_graph("vertices: 1,2 3\nedge 1,2 3\n")
    assert str(g.partition()) == "12/3"
    assert print_graph(g) == "vertices: 1,2 3\nedge 1,2 3\n"
