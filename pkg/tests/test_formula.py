from fractions import Fraction
from itertools import product

import pytest

from gallai_ramsey.formula import (
    INEQUALITIES,
    Parameters,
    check_inequalities,
    classical_ramsey,
    condition_label,
    f,
    gallai_ramsey_value,
    gr_b3plus_only,
    gr_k3_only,
    gr_s3plus_only,
)


@pytest.mark.parametrize("params,gr,label", [
    ((2, 0, 0), 18, "c1"),
    ((0, 2, 0), 7, "c5"),
    ((0, 0, 2), 6, "c1"),
    ((0, 1, 1), 7, "c5"),
    ((1, 0, 1), 9, "c3"),
    ((1, 1, 0), 10, "c9"),
    ((1, 0, 0), 5, "c4"),
    ((0, 1, 0), 4, "c6"),
    ((0, 0, 1), 3, "c2"),
    ((1, 2, 1), 49, "c7"),
    ((1, 1, 2), 49, "c7"),
    ((1, 3, 0), 49, "c8"),
    ((3, 1, 0), 154, "c9"),
    ((1, 2, 2), 121, "c10"),
    ((2, 1, 1), 103, "c5"),
    ((2, 2, 2), 511, "c5"),
    ((3, 0, 0), 69, "c4"),
    ((2, 0, 2), 86, "c1"),
    ((0, 0, 4), 26, "c1"),
    ((4, 0, 0), 290, "c1"),
])
def test_worked_values(params, gr, label):
    assert gallai_ramsey_value(params) == gr
    assert condition_label(params) == label


def test_two_color_values_are_classical():
    pairs = {(2, 0, 0): ("B3plus", "B3plus"), (0, 2, 0): ("S3plus", "S3plus"),
             (0, 0, 2): ("K3", "K3"), (0, 1, 1): ("S3plus", "K3"),
             (1, 0, 1): ("B3plus", "K3"), (1, 1, 0): ("B3plus", "S3plus")}
    for params, (a, b) in pairs.items():
        assert gallai_ramsey_value(params) == classical_ramsey(a, b) == classical_ramsey(b, a)


def test_single_color_values():
    # one color: the largest clique free of the pattern has order |pattern| - 1
    assert f((1, 0, 0)) == 4 and f((0, 1, 0)) == 3 and f((0, 0, 1)) == 2


def test_single_family_specialisations():
    for n in range(1, 9):
        assert gallai_ramsey_value((n, 0, 0)) == gr_b3plus_only(n)
        assert gallai_ramsey_value((0, n, 0)) == gr_s3plus_only(n)
        assert gallai_ramsey_value((0, 0, n)) == gr_k3_only(n)


def test_every_triple_gets_exactly_one_label():
    for r, s, t in product(range(9), repeat=3):
        if r + s + t == 0:
            continue
        label = condition_label((r, s, t))
        assert label in {f"c{i}" for i in range(1, 11)}
        assert (label in {"c1", "c2", "c3", "c4"}) == (s == 0)
        assert f((r, s, t)) >= 1


def test_f_is_monotone_in_each_coordinate():
    for r, s, t in product(range(7), repeat=3):
        base = f((r, s, t))
        assert f((r + 1, s, t)) > base
        assert f((r, s + 1, t)) > base
        assert f((r, s, t + 1)) > base


def test_trading_colors_never_helps_the_weaker_target():
    # K3 is a subgraph of S3+, which is a subgraph of B3+
    for r, s, t in product(range(6), repeat=3):
        if t:
            assert f((r, s + 1, t - 1)) >= f((r, s, t))
        if s:
            assert f((r + 1, s - 1, t)) >= f((r, s, t))


def test_empty_palette():
    assert f((0, 0, 0)) == 1
    with pytest.raises(ValueError):
        gallai_ramsey_value((0, 0, 0))
    with pytest.raises(ValueError):
        condition_label((0, 0, 0))


def test_parameters():
    p = Parameters(2, 1, 3)
    assert p.k == 6
    assert [p.role(c) for c in range(1, 7)] == ["B3plus"] * 2 + ["S3plus"] + ["K3"] * 3
    assert list(p.colors_of("K3")) == [4, 5, 6]
    with pytest.raises(ValueError):
        p.role(7)
    with pytest.raises(ValueError):
        Parameters(-1, 0, 0)


def test_unknown_classical_pair():
    with pytest.raises(ValueError):
        classical_ramsey("K4", "K3")


def test_inequalities_hold_with_expected_tightness():
    rep = check_inequalities(8, 8, 8)
    assert rep.ok
    tight17 = rep.tight(17)
    all17 = [c for c in rep.checks if c.index == 17]
    assert all17 and len(tight17) == len(all17)
    branch = [c for c in rep.tight(3) if c.triple[1:] == (1, 0)]
    assert branch and all(c.bound == Fraction(1, 3) for c in branch)


def test_inequality_lines_and_exact_ratios():
    rep = check_inequalities(2, 2, 2)
    line = next(c for c in rep.checks if c.index == 17 and c.triple == (2, 0, 0)).line()
    assert line == "ineq=17 triple=(2,0,0) ratio=1/17 status=pass"
    assert all(isinstance(c.ratio, Fraction) for c in rep.checks)
    assert len(INEQUALITIES) == 17


def test_inequality_bounds_must_reach_two():
    with pytest.raises(ValueError):
        check_inequalities(1, 8, 8)
