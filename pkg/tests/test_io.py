import pytest

from fusionkit import catalog
from fusionkit.cohomology import group_cohomology
from fusionkit.io import (dumps, format_group_file, parse_group_file, parse_matrix,
                          parse_matrix_file, parse_module_file)
from fusionkit.perm import ParseError


def test_group_file_with_named_subgroups(groups_dir):
    gf = parse_group_file((groups_dir / "s4.grp").read_text())
    assert gf.group.order == 24
    assert gf.subgroups["V4normal"].order == 4 and gf.subgroups["D8"].order == 8


def test_group_file_round_trip():
    G = catalog.dihedral(8)
    H = G.subgroups()[3]
    gf = parse_group_file(format_group_file(G, {"H": H}))
    assert gf.group == G and gf.subgroups["H"] == H


@pytest.mark.parametrize("text", ["(1 2)\n", "degree: x\n(1 2)", "degree: 3\n(1 4)",
                                  "degree: 3\ncolour: red", "degree: 0"])
def test_group_file_errors(text):
    with pytest.raises(ParseError):
        parse_group_file(text)


def test_trivial_group_file():
    assert parse_group_file("degree: 1\n").group.order == 1


def test_matrix_parsing():
    assert parse_matrix("0 1; 1 1") == ((0, 1), (1, 1))
    with pytest.raises(ParseError):
        parse_matrix("0 1; 1")
    mf = parse_matrix_file("prime: 2\nrank: 2\n0 1; 1 1\n")
    assert (mf.prime, mf.rank, len(mf.matrices)) == (2, 2, 1)
    with pytest.raises(ParseError):
        parse_matrix_file("rank: 3\n0 1; 1 1\n")


def test_module_file(groups_dir):
    M = parse_module_file((groups_dir / "z2_trivial.mod").read_text())
    assert group_cohomology(M, 2) == [2]
    M = parse_module_file("degree: 2\ncarrier: 3\n(1 2) | 2\n")
    assert group_cohomology(M, 2) == []
    with pytest.raises(ParseError):
        parse_module_file("(1 2) | 1\n")


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
