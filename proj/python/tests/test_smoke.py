from fractions import Fraction

import pytest

import rover_forge as rf


def test_adding_machine():
    a = rf.Automaton.adding_machine(2)
    assert a.act([1, 1, 1]) == [2, 1, 1]
    assert (a * a).act([1, 1, 1]) == [1, 2, 1]
    assert (a * a.inverse()).is_identity()
    assert a.state([2]) == a
    assert a.doubled(2).root_permutation() == [2, 1, 4, 3]


def test_automaton_text_round_trip():
    a = rf.Automaton.adding_machine(3)
    assert rf.Automaton.parse(str(a)) == a


def test_parse_errors():
    with pytest.raises(rf.ParseError):
        rf.Automaton.parse("automaton d=2\nstate a perm 1 1 trans a a\ninitial a\n")


def test_affine_state():
    assert rf.affine_state([[2]], [0], [2], 3) == ([1], ["1"])
    image, b = rf.affine_state([[Fraction(1, 2)]], ["1/3"], [1], 5)
    assert Fraction(1, 2) + Fraction(1, 3) == image[0] + 5 * Fraction(b[0])
    with pytest.raises(rf.DomainError):
        rf.affine_state([[1]], ["1/3"], [0], 3)


def test_smith_normal_form():
    assert rf.smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert rf.smith_normal_form([[0, 0], [0, 0]]) == [0, 0]
    big = 10**30
    assert rf.smith_normal_form([[big]]) == [big]


def test_homology():
    h = rf.reduced_homology(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert h[1] == {"free_rank": 1, "torsion": []}
    assert h[0] == {"free_rank": 0, "torsion": []}
    text = rf.finiteness_profile(4, [(0, 1), (1, 2), (2, 3), (0, 3)], ["Z", "Q"])
    assert "FP_1(Z), not FP_2(Z)" in text
    assert rf.matching_connectivity(2, 6)


def test_pipeline():
    out = rf.pipeline([[[2]]])
    assert (out["N"], out["p"], out["d"], out["r"]) == (2, 3, 27, 5)
    assert out["m"] % 2 == 0
    assert out["det"] == -13800617
    assert out["persistence_passed"]
    assert out["report"] == rf.pipeline([[[2]]])["report"]
    with pytest.raises(rf.DomainError):
        rf.pipeline([[[0]]])
