from fractions import Fraction as F

import pytest

from liequant.associator import (
    Associator,
    check_hexagons,
    check_pentagon,
    solve_associator,
)
from liequant.freealg import CapError

# log Phi through degree 4, solved once and frozen; the degree-2 part is
# (1/24)[A,B] and all odd-degree components vanish
LOG_PHI_4 = {
    "AB": F(1, 24),
    "BA": F(-1, 24),
    "AAAB": F(-1, 1440),
    "AABA": F(1, 480),
    "AABB": F(1, 5760),
    "ABAA": F(-1, 480),
    "ABAB": F(-1, 2880),
    "ABBB": F(-1, 1440),
    "BAAA": F(1, 1440),
    "BABA": F(1, 2880),
    "BABB": F(1, 480),
    "BBAA": F(-1, 5760),
    "BBAB": F(-1, 480),
    "BBBA": F(1, 1440),
}


def test_degree_two_coefficient():
    phi = solve_associator(2)
    lg = phi.log()
    assert lg.terms == {"AB": F(1, 24), "BA": F(-1, 24)}


def test_solve_degree_three_even():
    phi = solve_associator(3)
    lg = phi.log()
    assert all(len(w) % 2 == 0 for w in lg.terms)
    assert check_pentagon(phi).is_zero()
    h1, h2 = check_hexagons(phi)
    assert h1.is_zero() and h2.is_zero()


def test_degree_four_log_frozen():
    phi = solve_associator(4)
    assert phi.log().terms == LOG_PHI_4


def test_deterministic():
    a = solve_associator(3)
    b = solve_associator(3)
    assert a.body.terms == b.body.terms


def test_roundtrip_dict():
    phi = solve_associator(3)
    d = phi.to_dict()
    phi2 = Associator.from_dict(d)
    assert phi2.degree == 3
    assert phi2.body.terms == phi.body.terms


def test_check_beyond_degree_fails():
    phi = solve_associator(2)
    with pytest.raises(CapError):
        check_pentagon(phi, degree=3)


def test_perturbed_associator_breaks_pentagon():
    phi = solve_associator(3)
    bad_body = phi.body + phi.body.__class__({"AB": F(1, 7)}, cap=phi.body.cap)
    bad = Associator(phi.degree, bad_body)
    assert not check_pentagon(bad).is_zero()
