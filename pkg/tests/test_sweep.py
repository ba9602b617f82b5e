import numpy as np

from futurity.sweep import conjecture_sweep, default_grid, theorem_region_max_gaps


def test_default_grid():
    g = default_grid()
    assert len(g) == 19 and g[0] == 0.05 and g[-1] == 0.95


def test_small_sweep_rows():
    rep = conjecture_sweep([2, 3], [(1, 1), (2, 3)], conditions="d")
    assert rep.rows == sorted(rep.rows, key=lambda x: (x.J, x.r, x.s, x.p_A, x.p_B))
    for row in rep.rows:
        assert row.p_A != row.p_B
        assert row.d or row.divides
        assert row.a == (row.J == 2)
        assert row.divides == (row.J % (row.r + row.s) == 0)
    assert rep.violations == [x for x in rep.rows if x.gap >= 0]
    assert rep.min_margin == min(abs(x.gap) for x in rep.rows)


def test_threads_do_not_change_result():
    a = conjecture_sweep(range(2, 6), threads=1)
    b = conjecture_sweep(range(2, 6), threads=4)
    assert a.rows == b.rows


def test_condition_filtering():
    rep = conjecture_sweep([7], [(3, 3)], conditions="a")
    assert rep.rows == []
    rep = conjecture_sweep([7], [(3, 3)], conditions="d")
    assert all(r.p_A + r.p_B > 1 / 3 for r in rep.rows)


def test_theorem_region_negative():
    worst = theorem_region_max_gaps(range(2, 9), grid=np.arange(1, 10) * 0.1)
    assert worst["mixture"] < 0 and worst["pattern"] < 0
