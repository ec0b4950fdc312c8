import json
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aucreduce.data import Dataset
from aucreduce.reduction import (
    CumulativeAucCurve,
    CurveStep,
    LowAucWarning,
    cumulative_auc_curve,
    curve_table_text,
    dumps_report,
    format_percent,
    item_auc_table,
    item_table_text,
    peak_prefix_length,
    rank_items,
    reduction_report,
    scale_from_curve,
    select_reduced_scale,
)
from aucreduce.synth import GeneratorSpec, generate

from conftest import TABLE2_AUC, TABLE3_CURVE, TABLE3_ORDER, brute_force_auc


def random_dataset(seed, m=60, k=6, levels=4):
    rng = np.random.default_rng(seed)
    labels = np.r_[0, 1, rng.integers(0, 2, m - 2)]
    items = rng.integers(0, levels, (m, k)) + labels[:, None] * rng.integers(0, 2, (m, k))
    return Dataset(labels, items, tuple(str(i) for i in range(1, k + 1)))


class TestItemAucTable:
    def test_paper_ordering(self):
        ids = [str(i) for i in TABLE2_AUC]
        order = rank_items(ids, list(TABLE2_AUC.values()))
        assert [int(i) for i in order] == TABLE3_ORDER

    def test_label_copy_and_constant(self):
        labels = [0, 1, 1, 0, 1]
        ds = Dataset(labels, [[2, y] for y in labels], ("1", "2"))
        table = item_auc_table(ds)
        assert table.entries == (("2", 1.0), ("1", 0.5))

    def test_matches_brute_force(self, eight_respondents):
        ds = eight_respondents
        table = item_auc_table(ds)
        for j, item in enumerate(ds.item_ids):
            assert table.auc_of(item) == brute_force_auc(ds.items[:, j].tolist(), ds.labels.tolist())
        assert table.total_scale_auc == brute_force_auc(ds.items.sum(1).tolist(), ds.labels.tolist())

    def test_descending_with_position_tiebreak(self):
        assert rank_items(["a", "b", "c", "d"], [0.6, 0.7, 0.6, 0.7]) == ("b", "d", "a", "c")

    def test_low_auc_warns(self):
        ds = Dataset([0, 1, 0, 1], [[1, 0], [0, 1], [1, 0], [0, 1]], ("1", "2"))
        with pytest.warns(LowAucWarning, match="1"):
            table = item_auc_table(ds)
        # kept as-is, not flipped
        assert table.auc_of("1") == 0.0


class TestCumulativeCurve:
    def test_single_item(self, eight_respondents):
        curve = cumulative_auc_curve(eight_respondents, ["1"])
        assert len(curve) == 1
        assert curve.steps[0].auc == item_auc_table(eight_respondents).auc_of("1")

    def test_running_sums_match_brute_force(self, eight_respondents):
        ds = eight_respondents
        curve = cumulative_auc_curve(ds, ["2", "1"])
        running = ds.items[:, 1]
        assert curve.steps[0] == CurveStep("2", 1, brute_force_auc(running.tolist(), ds.labels.tolist()))
        running = ds.items[:, 1] + ds.items[:, 0]
        assert curve.steps[1] == CurveStep("1", 2, brute_force_auc(running.tolist(), ds.labels.tolist()))

    def test_unknown_item(self, eight_respondents):
        with pytest.raises(KeyError):
            cumulative_auc_curve(eight_respondents, ["1", "9"])

    def test_duplicate_item(self, eight_respondents):
        with pytest.raises(ValueError, match="twice"):
            cumulative_auc_curve(eight_respondents, ["1", "2", "1"])

    def test_empty_ordering(self, eight_respondents):
        with pytest.raises(ValueError):
            cumulative_auc_curve(eight_respondents, [])

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_prefix_consistency_and_full_total(self, seed):
        ds = random_dataset(seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LowAucWarning)
            table = item_auc_table(ds)
        curve = cumulative_auc_curve(ds, table.ordering)
        assert curve.steps[0].auc == table.entries[0][1]
        assert curve.steps[-1].auc == table.total_scale_auc
        assert [s.k for s in curve.steps] == list(range(1, ds.n_items + 1))


class TestPeak:
    def test_paper_curve_peaks_at_six(self):
        assert peak_prefix_length([a for _, a in TABLE3_CURVE]) == 6

    def test_plateau_takes_shortest(self):
        assert peak_prefix_length([0.6, 0.8, 0.7, 0.8, 0.8]) == 2

    def test_empty(self):
        with pytest.raises(ValueError):
            peak_prefix_length([])


@pytest.mark.filterwarnings("ignore::aucreduce.reduction.LowAucWarning")
class TestSelect:
    @pytest.mark.parametrize("strategy", ["ranked-prefix", "greedy-forward"])
    def test_perfect_item_selected_alone(self, strategy):
        rng = np.random.default_rng(3)
        labels = np.r_[np.zeros(20, int), np.ones(20, int)]
        items = rng.integers(0, 4, (40, 5))
        items[:, 3] = labels * 3
        ds = Dataset(labels, items, tuple("12345"))
        scale = select_reduced_scale(ds, strategy)
        assert scale.selected_item_ids == ("4",)
        assert scale.reduced_auc == 1.0
        assert scale.reduction_ratio == 1 / 5

    def test_unknown_strategy(self, eight_respondents):
        with pytest.raises(ValueError, match="strategy"):
            select_reduced_scale(eight_respondents, "lasso")

    @given(st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_ranked_prefix_is_argmax(self, seed):
        ds = random_dataset(seed)
        scale = select_reduced_scale(ds)
        assert all(scale.reduced_auc >= a for a in scale.curve.aucs)
        assert scale.reduced_auc >= scale.full_auc
        k = len(scale.selected_item_ids)
        assert scale.reduced_auc == scale.curve.steps[k - 1].auc
        assert scale.selected_item_ids == scale.item_table.ordering[:k]

    @given(st.integers(0, 10_000))
    @settings(max_examples=30, deadline=None)
    def test_both_strategies_beat_best_single_item(self, seed):
        ds = random_dataset(seed)
        best_single = item_auc_table(ds).entries[0][1]
        for strategy in ("ranked-prefix", "greedy-forward"):
            assert select_reduced_scale(ds, strategy).reduced_auc >= best_single

    def test_greedy_steps_strictly_increase(self):
        ds = random_dataset(11, m=120, k=8)
        scale = select_reduced_scale(ds, "greedy-forward")
        aucs = scale.curve.aucs
        assert all(b > a for a, b in zip(aucs, aucs[1:]))
        assert scale.selected_item_ids == scale.curve.items

    def test_greedy_oracle(self):
        # exhaustive re-scoring at each step, written out longhand
        ds = random_dataset(5, m=80, k=5)
        chosen, current = [], -1.0
        while True:
            best = None
            for item in ds.item_ids:
                if item in chosen:
                    continue
                total = sum(ds.column(i) for i in chosen + [item])
                a = brute_force_auc(total.tolist(), ds.labels.tolist())
                if best is None or a > best[1]:
                    best = (item, a)
            if best is None or best[1] <= current:
                break
            chosen.append(best[0])
            current = best[1]
        scale = select_reduced_scale(ds, "greedy-forward")
        assert list(scale.selected_item_ids) == chosen
        assert scale.reduced_auc == current

    @pytest.mark.parametrize("strategy", ["ranked-prefix", "greedy-forward"])
    def test_row_permutation_invariance(self, strategy):
        ds = random_dataset(21, m=90, k=7)
        perm = np.random.default_rng(0).permutation(ds.n_respondents)
        shuffled = Dataset(ds.labels[perm], ds.items[perm], ds.item_ids)
        a = reduction_report(select_reduced_scale(ds, strategy))
        b = reduction_report(select_reduced_scale(shuffled, strategy))
        assert a == b

    def test_relabel_equivariance(self):
        ds = random_dataset(8, m=90, k=6)
        names = {"1": "f", "2": "e", "3": "d", "4": "c", "5": "b", "6": "a"}
        renamed = Dataset(ds.labels, ds.items, tuple(names[i] for i in ds.item_ids))
        a = select_reduced_scale(ds)
        b = select_reduced_scale(renamed)
        assert tuple(names[i] for i in a.selected_item_ids) == b.selected_item_ids
        assert tuple(names[i] for i in a.item_table.ordering) == b.item_table.ordering
        assert a.curve.aucs == b.curve.aucs

    def test_planted_signal_small(self):
        ds = generate(GeneratorSpec(400, 8, (2, 5), signal_strength=1.0, seed=1))
        scale = select_reduced_scale(ds)
        assert set(scale.selected_item_ids) <= {"2", "5"}


def paper_scale():
    curve = CumulativeAucCurve(
        tuple(CurveStep(str(i), k, a) for k, (i, a) in enumerate(TABLE3_CURVE, start=1))
    )
    return scale_from_curve(curve, full_auc=TABLE3_CURVE[-1][1], n_items=21)


class TestReport:
    def test_paper_shaped(self):
        scale = paper_scale()
        report = reduction_report(scale)
        assert report["selected"] == ["1", "14", "7", "9", "10", "15"]
        assert report["reduced_auc"] == 0.822
        assert report["reduction_ratio"] == 6 / 21
        assert report["reduction_percent"] == "28.57%"
        assert report["auc_delta"] == pytest.approx(0.010)

    def test_single_item_scale(self):
        ds = Dataset([0, 1, 0, 1], [[0], [1], [1], [2]], ("1",))
        report = reduction_report(select_reduced_scale(ds))
        assert report["reduction_ratio"] == 1.0
        assert report["auc_delta"] == 0.0

    def test_fields(self, eight_respondents):
        report = reduction_report(select_reduced_scale(eight_respondents))
        assert set(report) >= {
            "schema_version", "items", "item_auc", "curve", "selected",
            "full_auc", "reduced_auc", "reduction_ratio", "strategy",
        }
        assert report["curve"][0].keys() == {"item", "k", "auc"}

    def test_json_round_trip(self):
        ds = generate(GeneratorSpec(300, 10, (1, 2, 3), seed=4))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LowAucWarning)
            report = reduction_report(select_reduced_scale(ds))
        assert json.loads(dumps_report(report)) == report

    def test_format_percent(self):
        assert format_percent(6 / 21) == "28.57%"

    def test_tables(self):
        ids = [str(i) for i in TABLE2_AUC]
        from aucreduce.reduction import ItemAucTable

        order = rank_items(ids, list(TABLE2_AUC.values()))
        table = ItemAucTable(tuple((i, TABLE2_AUC[int(i)]) for i in order), 0.8117)
        asc = item_table_text(table).splitlines()
        assert asc[0] == "item,auc"
        assert asc[1].startswith("21,") and asc[-1].startswith("1,")
        desc = item_table_text(table, descending=True).splitlines()
        assert desc[1] == "1,0.725009"
        rows = curve_table_text(paper_scale().curve).splitlines()
        assert rows[6] == "6,15,0.822"
