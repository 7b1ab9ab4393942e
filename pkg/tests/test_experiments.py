import math

import numpy as np
import pytest

from symplt import experiments as ex
from symplt.factor import factor_w2
from symplt.linalg import condition_number


@pytest.fixture(scope="module")
def ex1():
    return ex.run_example1()


@pytest.fixture(scope="module")
def ex5():
    return ex.run_example5(n_max=30, seed=3)


def finite(stats, name):
    return [getattr(s, name) for s in stats if s.ok]


def test_example1_rows(ex1):
    assert [s.label for s in ex1] == list(ex.EXAMPLE1_LABELS)
    first, last = ex1[0], ex1[-1]
    assert first.kappa_a == pytest.approx(4.4738e5, rel=1e-3)
    assert first.kappa_a11 == pytest.approx(2.8675e5, rel=1e-3)
    assert last.dec_w1 >= 1e-5 and last.dec_w2 <= 1e-13
    # reference orders of magnitude, two decades either way
    assert 5.6843e-16 <= first.f12_w1 <= 5.6843e-12
    assert 2.8478e-13 <= first.delta_a <= 2.8478e-9


def test_example1_trivial_row():
    (row,) = ex.run_example1((0.0,))
    for name in ("dec_w1", "dec_w2", "symp_a", "delta_l_w1", "delta_l_w2", "f11_norm", "f12_w1", "f12_w2"):
        assert getattr(row, name) <= 1e-14


def test_example2_rows(ex1):
    rows = ex.run_example2()
    assert rows[0].kappa_a11 == pytest.approx(5.0149, rel=1e-2)
    assert rows[0].kappa_a == pytest.approx(ex1[0].kappa_a, rel=1e-3)
    assert max(s.dec_w1 for s in rows) <= 1e-13
    assert max(s.dec_w2 for s in rows) <= 1e-13
    # the same statistic the symplectic inverse preserves: Delta(A^{-1}) = Delta(A)
    for a, b in zip(rows, ex1):
        assert a.delta_a == pytest.approx(b.delta_a, rel=1e-6)


def test_example2_lu_path_is_exposed():
    a_symp = ex.example2_matrix(math.pi, "symplectic")
    a_lu = ex.example2_matrix(math.pi, "lu")
    assert np.array_equal(a_lu, a_lu.T)
    assert np.linalg.norm(a_symp - a_lu, 2) / np.linalg.norm(a_symp, 2) <= 1e-8
    assert factor_w2(a_lu).dec <= 1e-13


def test_example3_rows():
    rows = ex.run_example3()
    by_t = {s.x: s for s in rows}
    assert by_t[0.0].dec_w2 <= 1e-14 and by_t[0.0].symp_a <= 1e-12
    assert 1e-12 <= by_t[1e-6].dec_w1 <= 1e-6
    one = by_t[1.0]
    assert one.delta_a >= 10 and one.f12_w1 <= 1e-12 and one.f12_w2 >= 1


def test_example4_rows():
    rows = ex.run_example4()
    assert [int(s.x) for s in rows] == list(ex.EXAMPLE4_N)
    assert rows[0].kappa_a == pytest.approx(1.1262e6, rel=1e-3)
    assert rows[0].kappa_a11 == pytest.approx(5.6043e4, rel=1e-3)
    assert rows[-1].dec_w1 >= 1e-12
    assert max(s.dec_w2 for s in rows) <= 1e-13
    with pytest.raises(ValueError):
        ex.run_example4((7,))


def test_example5_sweep(ex5):
    assert [int(s.x) for s in ex5] == list(range(2, 31, 2))
    assert all(s.ok for s in ex5)
    assert max(finite(ex5, "dec_w2")) <= 1e-13


def test_example5_small_row_matches_closed_form():
    from symplt.generators import RngStream, random_spectrum_symplectic

    a = random_spectrum_symplectic(1, RngStream.derive(0, 1))
    p, q = a[0, 0], a[0, 1]
    r = math.sqrt(p)
    expected = np.array([[r, 0.0], [q / r, 1 / r]])
    assert np.abs(factor_w2(a).factor.assemble() - expected).max() <= 1e-12 * max(1.0, abs(expected).max())


def test_row_invariants(ex1, ex5):
    rows = ex1 + ex5 + ex.run_example2() + ex.run_example3() + ex.run_example4()
    for s in rows:
        if s.symp_a <= 1e-12:
            assert s.dec_w2 <= 1e-13, s.label
        for tag in ("w1", "w2"):
            m = max(s.f11_norm, getattr(s, f"f12_{tag}"))
            d = getattr(s, f"delta_l_{tag}")
            slack = 1e-12 * (1 + d)
            assert m <= d + slack and d <= 2 * m + slack, s.label


def test_failed_row_is_kept():
    bad = np.array([[1.0, 2.0], [2.0, 1.0]])
    row = ex.compute_stats("bad", 0, bad)
    assert not row.ok and "w2" in row.error
    assert not math.isnan(row.dec_w1) and math.isnan(row.dec_w2)
    text = ex.emit_table([row], "markdown")
    assert "failed" in text
    row = ex.compute_stats("neg", 0, -np.eye(2))
    assert not row.ok and math.isnan(row.dec_w1)


def test_markdown_shape(ex1):
    text = ex.emit_table(ex1, "markdown")
    lines = text.strip().splitlines()
    assert len(lines) == 2 + len(ex.STAT_FIELDS)
    assert lines[2].startswith("| κ₂(A) |")
    assert "4.4738e+05" in lines[2]
    assert all(line.count("|") == len(ex1) + 2 for line in lines)
    (identity_row,) = ex.run_example1((0.0,))
    assert "0.0000e+00" in ex.emit_table([identity_row])


def test_csv_and_json_round_trip(ex1):
    failed = ex.compute_stats("bad", 0, np.array([[1.0, 2.0], [2.0, 1.0]]))
    rows = ex1 + [failed]
    for fmt, parse in (("csv", ex.parse_csv), ("json", ex.parse_json)):
        back = parse(ex.emit_table(rows, fmt))
        assert len(back) == len(rows)
        for a, b in zip(rows, back):
            assert a.label == b.label and a.error == b.error
            for name in ("x",) + ex.STAT_FIELDS:
                va, vb = getattr(a, name), getattr(b, name)
                assert (math.isnan(va) and math.isnan(vb)) or va == vb


def test_emit_rejects_empty_and_unknown():
    with pytest.raises(ValueError):
        ex.emit_table([], "csv")
    with pytest.raises(ValueError):
        ex.emit_table(ex.run_example1((0.0,)), "xml")


def test_run_config_validation():
    with pytest.raises(ValueError):
        ex.RunConfig(experiment_id=6)
    with pytest.raises(ValueError):
        ex.RunConfig(experiment_id=5, n_max=7)
    with pytest.raises(ValueError):
        ex.RunConfig(experiment_id=1, fmt="xls")
    with pytest.raises(ValueError):
        ex.RunConfig(experiment_id=2, inverse_method="qr")


def test_write_outputs_and_figure_series(tmp_path, ex5):
    cfg = ex.RunConfig(experiment_id=5, n_max=30, seed=3, fmt="csv", out=str(tmp_path / "t5.csv"))
    written = ex.write_outputs(cfg, ex5)
    assert len(written) == 1 + len(ex.FIGURE_PANELS)
    fig = (tmp_path / "t5.fig1_dec.csv").read_text().splitlines()
    assert fig[0] == "n,dec_w1,dec_w2"
    assert len(fig) == 1 + len(ex5)
    assert fig[1].startswith("2,")


def test_determinism(tmp_path):
    outs = []
    for k in range(2):
        cfg = ex.RunConfig(experiment_id=5, n_max=12, seed=7, fmt="json", out=str(tmp_path / f"r{k}.json"))
        ex.write_outputs(cfg, ex.run_experiment(cfg))
        outs.append((tmp_path / f"r{k}.json").read_bytes())
    assert outs[0] == outs[1]


def test_seed_changes_example5():
    a = ex.run_example5(n_max=4, seed=0)
    b = ex.run_example5(n_max=4, seed=1)
    assert a[0].kappa_a != b[0].kappa_a


def test_summary_check(ex5):
    s = ex.summary_check(ex5)
    assert s["failed_rows"] == 0.0
    assert s["max_dec_w2"] <= 1e-13
    assert s["max_kappa_a"] == max(r.kappa_a for r in ex5)
    assert ex.summary_check([]) == {}


def test_kappa_a_matches_linalg():
    a = ex.example1_matrix(1.0)
    (row,) = ex.run_example1((1.0,))
    assert row.kappa_a == condition_number(a)
