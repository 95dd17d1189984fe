import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pathgain.fitting import (
    DatasetError,
    MeasurementDataset,
    MeasurementRecord,
    StreetEvaluation,
    fit_slope_intercept,
    load_dataset,
    median_window,
    model_error_table,
    rmse_against_model,
)
from pathgain.morphology import MacroGeometry, Link, canyon_total_gain
from pathgain.reference import SlopeIntercept, friis_gain, slope_intercept_eval
from pathgain.units import wavelength_m

from conftest import db
from test_morphology import sparse_street_scene


def make_dataset(ranges, gains_db, f_hz=28e9, street=""):
    records = tuple(MeasurementRecord(float(r), float(g), street=street)
                    for r, g in zip(ranges, gains_db))
    return MeasurementDataset(records, f_hz)


def friis_dataset(f_hz=28e9, n=50, lo=10.0, hi=1000.0):
    lam = wavelength_m(f_hz)
    ranges = np.geomspace(lo, hi, n)
    return make_dataset(ranges, [db(friis_gain(lam, r)) for r in ranges], f_hz)


class TestFit:
    def test_noiseless_friis_recovers_exponent_two(self):
        fit = fit_slope_intercept(friis_dataset())
        assert fit.model.exponent_n == pytest.approx(2.0, abs=1e-12)
        assert fit.rmse_db < 1e-10
        lam = wavelength_m(28e9)
        assert fit.model.intercept_db_1m == pytest.approx(
            db(friis_gain(lam, 1.0)), abs=1e-9)

    def test_seeded_noise_recovery(self):
        rng = np.random.default_rng(20260810)
        lam = wavelength_m(28e9)
        base = SlopeIntercept(db(friis_gain(lam, 1.0)) + 3.0, 1.5)
        ranges = 10.0 ** rng.uniform(1.0, 3.0, 500)
        gains = [slope_intercept_eval(base, r) + rng.normal(0.0, 3.0)
                 for r in ranges]
        fit = fit_slope_intercept(make_dataset(ranges, gains))
        assert 2.5 <= fit.rmse_db <= 3.5
        assert abs(fit.model.exponent_n - 1.5) <= 0.15

    def test_degenerate_dataset_rejected(self):
        with pytest.raises(DatasetError):
            fit_slope_intercept(make_dataset([10.0], [-60.0]))
        with pytest.raises(DatasetError):
            fit_slope_intercept(make_dataset([10.0, 10.0], [-60.0, -61.0]))

    def test_round_trip_is_identity(self):
        model = SlopeIntercept(-41.2, 2.7)
        ranges = np.geomspace(5.0, 500.0, 40)
        ds = make_dataset(ranges, [slope_intercept_eval(model, r)
                                   for r in ranges])
        fit = fit_slope_intercept(ds)
        for r in ranges:
            assert slope_intercept_eval(fit.model, r) == pytest.approx(
                slope_intercept_eval(model, r), abs=1e-10)


class TestRmseAgainstModel:
    def test_zero_for_generator(self):
        ds = friis_dataset()
        lam = wavelength_m(28e9)
        assert rmse_against_model(ds, lambda r: db(friis_gain(lam, r))) == \
            pytest.approx(0.0, abs=1e-12)

    @given(offset=st.floats(min_value=-30.0, max_value=30.0))
    def test_constant_offset_reported_in_full(self, offset):
        ds = friis_dataset(n=20)
        lam = wavelength_m(28e9)
        rmse = rmse_against_model(ds, lambda r: db(friis_gain(lam, r)) + offset)
        assert rmse == pytest.approx(abs(offset), abs=1e-9)

    def test_reorder_invariance(self):
        ds = friis_dataset(n=30)
        rng = np.random.default_rng(7)
        perm = rng.permutation(len(ds.records))
        shuffled = MeasurementDataset(
            tuple(ds.records[i] for i in perm), ds.frequency_hz)
        lam = wavelength_m(28e9)
        predict = lambda r: db(friis_gain(lam, r)) - 2.5
        assert rmse_against_model(ds, predict) == pytest.approx(
            rmse_against_model(shuffled, predict), rel=1e-12)

    def test_fit_is_optimal_among_slope_intercept_models(self):
        rng = np.random.default_rng(99)
        ranges = np.geomspace(20.0, 800.0, 120)
        gains = [-50.0 - 22.0 * math.log10(r) + rng.normal(0.0, 4.0)
                 for r in ranges]
        ds = make_dataset(ranges, gains)
        best = fit_slope_intercept(ds)
        for _ in range(25):
            other = SlopeIntercept(best.model.intercept_db_1m + rng.normal(0, 2),
                                   abs(best.model.exponent_n + rng.normal(0, 0.3)))
            assert best.rmse_db <= rmse_against_model(
                ds, lambda r: slope_intercept_eval(other, r)) + 1e-12

    def test_synthetic_street_prefers_its_generator(self):
        rng = np.random.default_rng(11)
        scene = sparse_street_scene()
        macro = MacroGeometry(56.0, 10.0, 1.5, 32.0)
        ranges = np.geomspace(100.0, 900.0, 200)
        gains = [db(canyon_total_gain(scene, macro, Link(float(r), 28e9)).gain)
                 + rng.normal(0.0, 3.0) for r in ranges]
        ds = make_dataset(ranges, gains)
        theory = lambda r: db(canyon_total_gain(scene, macro, Link(r, 28e9)).gain)
        lam = wavelength_m(28e9)
        friis = lambda r: db(friis_gain(lam, r))
        rmse_theory = rmse_against_model(ds, theory)
        rmse_friis = rmse_against_model(ds, friis)
        assert 2.5 <= rmse_theory <= 3.5
        assert rmse_friis > rmse_theory + 3.0

    def test_model_failure_reports_record_index(self):
        ds = friis_dataset(n=5)

        def broken(r):
            raise RuntimeError("boom")

        with pytest.raises(DatasetError, match="record 0"):
            rmse_against_model(ds, broken)


class TestErrorTable:
    def test_two_offset_streets_pooled_spread(self):
        model = SlopeIntercept(-40.0, 2.0)
        ranges = np.geomspace(10.0, 500.0, 40)
        up = make_dataset(ranges, [slope_intercept_eval(model, r) + 10.0
                                   for r in ranges], street="up")
        down = make_dataset(ranges, [slope_intercept_eval(model, r) - 10.0
                                     for r in ranges], street="down")
        predictors = {"model": lambda r: slope_intercept_eval(model, r)}
        table = model_error_table([
            StreetEvaluation("up", up, dict(predictors)),
            StreetEvaluation("down", down, dict(predictors)),
        ])
        by_name = {row[0]: row[2] for row in table.rows}
        assert by_name["up"]["fit"] < 1e-9
        assert by_name["down"]["fit"] < 1e-9
        assert by_name["Overall"]["fit"] > 3.0
        assert by_name["up"]["model"] == pytest.approx(10.0, abs=1e-9)
        assert by_name["Overall"]["model"] == pytest.approx(10.0, abs=1e-9)

    def test_synthetic_street_theory_column(self):
        rng = np.random.default_rng(5)
        scene = sparse_street_scene()
        macro = MacroGeometry(56.0, 10.0, 1.5, 32.0)
        theory = lambda r: db(canyon_total_gain(scene, macro, Link(r, 28e9)).gain)
        ranges = np.geomspace(100.0, 900.0, 300)
        ds = make_dataset(ranges, [theory(float(r)) + rng.normal(0.0, 4.0)
                                   for r in ranges])
        table = model_error_table([
            StreetEvaluation("one", ds, {"theory": theory})])
        cells = table.rows[0][2]
        assert cells["theory"] == pytest.approx(4.0, abs=0.7)
        assert cells["fit"] <= cells["theory"] + 1e-9

    def test_empty_street_list_rejected(self):
        with pytest.raises(DatasetError):
            model_error_table([])


class TestIngestion:
    def test_round_trip_csv(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("range_m,path_gain_db,street,flag\n"
                        "10,-60.5,main,\n"
                        "20.5,-66.25,main,los\n", encoding="utf-8")
        ds = load_dataset(path, 2e9)
        assert len(ds) == 2
        assert ds.records[1].range_m == 20.5
        assert ds.records[1].flag == "los"

    def test_extra_columns_ignored(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("range_m,path_gain_db,component_direct_db,flags\n"
                        "10,-60.5,-70.0,short_range\n", encoding="utf-8")
        assert len(load_dataset(path, 2e9)) == 1

    def test_rejects_nan_with_line_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("range_m,path_gain_db\n10,-60.5\nnan,-61\n",
                        encoding="utf-8")
        with pytest.raises(DatasetError, match="line 3"):
            load_dataset(path, 2e9)

    def test_rejects_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("range_m,gain\n10,-60.5\n", encoding="utf-8")
        with pytest.raises(DatasetError, match="path_gain_db"):
            load_dataset(path, 2e9)

    def test_rejects_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(DatasetError):
            load_dataset(path, 2e9)

    def test_sanity_bound_on_gain(self):
        with pytest.raises(DatasetError):
            MeasurementRecord(10.0, 25.0)

    def test_median_window(self):
        trace = np.array([-60.0, -61.0, -30.0, -62.0, -63.0])
        smoothed = median_window(trace, 3)
        assert smoothed[2] == -61.0
        with pytest.raises(ValueError):
            median_window(trace, 4)
