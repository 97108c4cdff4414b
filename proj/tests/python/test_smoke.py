from fractions import Fraction

import pytest

import latbound as lb


def test_metric_and_counts():
    assert lb.word_metric((0, 0), (3, 3)) == 6
    assert lb.geodesic_count((0, 0), (3, 3)) == 20
    assert lb.enumerate_geodesics((0, 0), (1, 1)) == ["01", "10"]
    assert lb.is_geodesic_word("0120") is False
    assert lb.bfs_metric([(1, 0), (1, 1)], (0, 0), (0, 1)) == 2
    assert lb.generating_set_lipschitz("standard", [(1, 0), (1, 1)]) == (2, 2)


def test_rays():
    assert lb.n_map("(23)") == Fraction(7, 3)
    assert lb.n_map("(0)") == 0
    assert lb.b_map("(01)") == Fraction(1, 3)
    assert lb.digitize(3, -1) == "(4443)"
    assert lb.point_at("(01)", 5) == (3, 2)
    assert lb.splice("(01)", "(0)", 3) == "01(0)"
    lo, hi = lb.n_map(lb.digitize("1,sqrt(2)"))
    assert lo < hi
    verdict = lb.are_asymptotic("(0)", "(1)")
    assert verdict == {"kind": "divergent", "witness": 6, "threshold": 10, "distance": 12}
    assert lb.are_asymptotic("01(0)", "(0)")["kind"] == "asymptotic"
    assert lb.ball_contains("(0)", "(10)", 0, 1, Fraction(1, 2)) is False


def test_quasi():
    assert lb.floor_map((Fraction(3, 2), Fraction(-1, 2))) == (1, -1)
    report = lb.check_embedding([((0, 0), (Fraction(1, 2), Fraction(1, 2)))], k=1)
    assert report["checked"] == 1
    assert report["violations"][0]["side"] == "lower"
    w = lb.find_violation(k=Fraction(7, 5), c=2)
    assert w["p"] == (0, 0) and w["q"] == (100, 100)
    assert lb.find_violation(k=2, c=2) is None
    assert lb.roundtrip_displacement([(Fraction(99, 100), Fraction(99, 100))]) == Fraction(9801, 5000)


def test_plane():
    assert lb.ell1_distance((0, 0), (3, 3)) == 6
    assert lb.is_geodesic_polyline("0,0;1,0;1,1")
    assert not lb.is_geodesic_polyline(([(0, 0), (1, 0), (0, 0)], None))
    assert lb.check_monotone_commitment("0,0;1,1;2,1/2") == 2
    assert lb.splice_plane("0,0 >1/1", "0,0 >1/0", 4) == ("0,0;2,2 >1/0", 4)
    assert lb.project_to_lattice(([(0, 0), (1, 2)], (1, 0))) == "101(0)"


def test_cone_and_cli():
    c = lb.cone_lengths(1)
    assert c["extendable"] is False
    assert c["around"][1] < c["through"][0]
    code, out, _ = lb.run_cli("count", "0,0", "3,3")
    assert (code, out) == (0, "20\n")
    assert lb.run_cli("nonsense")[0] == 2


def test_errors_become_value_errors():
    with pytest.raises(ValueError):
        lb.splice("(01)", "(23)", 2)
    with pytest.raises(ValueError):
        lb.word_metric("x", (0, 0))
