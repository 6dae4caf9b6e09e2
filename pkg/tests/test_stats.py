import numpy as np
import pytest

from oracles import pearson_oracle

from prdist.dataio import EmbeddingMatrix
from prdist.errors import (
    ConstantSeries,
    InvalidValue,
    LengthMismatch,
    PoolTooSmall,
    TooFewSeeds,
)
from prdist.stats import SweepRow, SweepTable, pearson, seed_variance, sweep
from prdist.support import evaluate_pair


def _pool(seed, n=400, d=4, shift=0.0, label="pool"):
    rng = np.random.default_rng(seed)
    return EmbeddingMatrix(rng.standard_normal((n, d)) + shift, label=label)


class TestSweep:
    def test_full_pool_row_equals_direct_evaluation(self):
        ref = _pool(0, n=150, label="ref")
        out = _pool(1, n=150, label="out")
        table = sweep(ref, out, n_values=[150], k_values=[4], seeds=[3])
        direct = evaluate_pair(ref, out, k=4)
        row = table.rows[0]
        assert row.precision == direct.precision
        assert row.recall == direct.recall

    def test_identical_pools_all_ones(self):
        pool = _pool(2, n=200)
        other = EmbeddingMatrix(pool.data.copy(), label="copy")
        table = sweep(pool, other, n_values=[80, 120], k_values=[2, 4], seeds=[0, 1])
        assert all(r.precision == 1.0 and r.recall == 1.0 for r in table.rows)

    def test_metric_columns_monotone_in_k(self):
        rng = np.random.default_rng(4)
        ref_data = rng.standard_normal((300, 3))
        out_data = rng.standard_normal((300, 3))
        out_data[:150, 0] += 50.0  # half the output in a far cluster
        ref = EmbeddingMatrix(ref_data, label="r")
        out = EmbeddingMatrix(out_data, label="o")
        table = sweep(ref, out, n_values=[200], k_values=list(range(1, 11)), seeds=[0, 1])
        for seed in (0, 1):
            rows = [r for r in table.rows if r.seed == seed]
            rows.sort(key=lambda r: r.k)
            ps = [r.precision for r in rows]
            rs = [r.recall for r in rows]
            assert ps == sorted(ps)
            assert rs == sorted(rs)

    def test_deterministic(self):
        ref = _pool(5, label="a")
        out = _pool(6, shift=0.3, label="b")
        t1 = sweep(ref, out, n_values=[100], k_values=[3], seeds=[0, 1, 2])
        t2 = sweep(ref, out, n_values=[100], k_values=[3], seeds=[0, 1, 2])
        assert [(r.precision, r.recall) for r in t1.rows] == [
            (r.precision, r.recall) for r in t2.rows
        ]

    def test_rows_ordered_by_n_k_seed(self):
        ref = _pool(7)
        out = _pool(8)
        table = sweep(ref, out, n_values=[60, 40], k_values=[2, 1], seeds=[1, 0])
        keys = [(r.n, r.k, r.seed) for r in table.rows]
        assert keys == sorted(keys)

    def test_pool_too_small(self):
        with pytest.raises(PoolTooSmall):
            sweep(_pool(9, n=50), _pool(10, n=50), [100], [4], [0])

    @pytest.mark.parametrize(
        "mode,ref_fixed,out_fixed",
        [("vary_output", True, False), ("vary_reference", False, True), ("vary_both", False, False)],
    )
    def test_mode_pins_the_right_draw(self, monkeypatch, mode, ref_fixed, out_fixed):
        import prdist.stats as stats_mod

        ref = _pool(11, n=120, label="refpool")
        out = _pool(12, n=120, shift=0.2, label="outpool")
        calls = []
        real_draw = stats_mod._draw

        def spy(pool, digest, n, seed):
            calls.append((pool.label, seed))
            return real_draw(pool, digest, n, seed)

        monkeypatch.setattr(stats_mod, "_draw", spy)
        sweep(ref, out, n_values=[60], k_values=[2], seeds=[0, 1, 2], mode=mode)
        ref_seeds = {s for label, s in calls if label == "refpool"}
        out_seeds = {s for label, s in calls if label == "outpool"}
        assert (len(ref_seeds) == 1) == ref_fixed
        assert (len(out_seeds) == 1) == out_fixed

    def test_duplicate_triples_rejected(self):
        rows = [
            SweepRow(n=10, k=2, seed=0, precision=0.5, recall=0.5),
            SweepRow(n=10, k=2, seed=0, precision=0.6, recall=0.4),
        ]
        with pytest.raises(InvalidValue):
            SweepTable(rows=rows)


class TestSeedVariance:
    def _table(self, precisions, recalls, mode="vary_both", n=100, k=4):
        rows = [
            SweepRow(n=n, k=k, seed=i, precision=p, recall=r)
            for i, (p, r) in enumerate(zip(precisions, recalls))
        ]
        return SweepTable(rows=rows, fixed_params={"mode": mode})

    def test_constant_rows_zero_std(self):
        table = self._table([0.7] * 4, [0.6] * 4)
        report = seed_variance(table, "vary_both")
        assert report.std_precision == 0.0 and report.std_recall == 0.0
        assert report.mean_precision == pytest.approx(0.7)

    def test_two_point_formula(self):
        table = self._table([0.4, 0.6], [0.5, 0.5])
        report = seed_variance(table, "vary_both")
        assert report.mean_precision == pytest.approx(0.5)
        assert report.std_precision == pytest.approx(np.sqrt(0.02), abs=1e-12)

    def test_matches_direct_formula_oracle(self):
        ref = _pool(13, n=300)
        out = _pool(14, n=300)
        table = sweep(ref, out, n_values=[120], k_values=[4], seeds=list(range(5)))
        report = seed_variance(table, "vary_both")
        ps = np.array([r.precision for r in table.rows])
        rs = np.array([r.recall for r in table.rows])
        assert report.mean_precision == pytest.approx(ps.mean(), abs=1e-12)
        assert report.std_precision == pytest.approx(ps.std(ddof=1), abs=1e-12)
        assert report.mean_recall == pytest.approx(rs.mean(), abs=1e-12)
        assert report.std_recall == pytest.approx(rs.std(ddof=1), abs=1e-12)
        assert report.n_seeds == 5

    def test_too_few_rows(self):
        table = self._table([0.5], [0.5])
        with pytest.raises(TooFewSeeds):
            seed_variance(table, "vary_both")

    def test_mode_mismatch_rejected(self):
        table = self._table([0.4, 0.5], [0.5, 0.6], mode="vary_output")
        with pytest.raises(InvalidValue):
            seed_variance(table, "vary_both")

    def test_mixed_cells_rejected(self):
        rows = [
            SweepRow(n=10, k=2, seed=0, precision=0.5, recall=0.5),
            SweepRow(n=20, k=2, seed=0, precision=0.6, recall=0.4),
        ]
        table = SweepTable(rows=rows, fixed_params={"mode": "vary_both"})
        with pytest.raises(InvalidValue):
            seed_variance(table, "vary_both")


class TestPearson:
    def test_self_correlation_exactly_one(self):
        rng = np.random.default_rng(15)
        x = rng.standard_normal(50)
        assert pearson(x, x) == 1.0

    def test_anti_correlation_exactly_minus_one(self):
        rng = np.random.default_rng(16)
        x = rng.standard_normal(50)
        assert pearson(x, -x) == -1.0

    def test_matches_covariance_oracle(self):
        rng = np.random.default_rng(17)
        for _ in range(5):
            x = rng.standard_normal(20)
            y = rng.standard_normal(20)
            assert pearson(x, y) == pytest.approx(pearson_oracle(x, y), abs=1e-12)

    def test_affine_invariance(self):
        rng = np.random.default_rng(18)
        x = rng.standard_normal(30)
        y = rng.standard_normal(30)
        base = pearson(x, y)
        assert pearson(3.0 * x + 2.0, y) == pytest.approx(base, abs=1e-12)
        assert pearson(x, 0.5 * y - 7.0) == pytest.approx(base, abs=1e-12)

    def test_constant_series_rejected(self):
        with pytest.raises(ConstantSeries):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])
        with pytest.raises(LengthMismatch):
            pearson([1.0], [1.0])
