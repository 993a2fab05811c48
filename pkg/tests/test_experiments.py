import json
import math

import pytest

from prlab import (
    CSV_HEADER,
    EmptySetError,
    ExperimentRecord,
    Scenario,
    ScenarioError,
    Seed,
    emit_csv,
    emit_loglog,
    load_config,
    median,
    parse_csv,
    run_scenario,
    success_fraction,
)


def tiny_er(base=7, grid=(64, 128), replicates=2):
    return Scenario(family="er_log7", n_grid=grid, replicates=replicates, base_seed=Seed(base))


class TestScenarioValidation:
    def test_unknown_family(self):
        with pytest.raises(ScenarioError):
            Scenario(family="smallworld", n_grid=(64,), replicates=1)

    def test_empty_grid(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(), replicates=1)

    def test_grid_must_increase(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(128, 64), replicates=1)
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64, 64), replicates=1)

    def test_grid_minimum_size(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(1, 64), replicates=1)

    def test_bad_replicates_and_resample_limit(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=0)
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1, resample_limit=-1)

    def test_alpha_range(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1, alpha=1.0)
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1, alpha=-0.1)

    def test_unknown_family_param(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     family_params={"C": 1e-3, "q": 0.5})

    def test_edge_probability_out_of_range(self):
        # C large enough that C log^7(n)/n leaves (0, 1] at the smallest size
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64, 128), replicates=1,
                     family_params={"C": 0.02})

    def test_seed_vertex_in_range(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_unit_preference", n_grid=(64,), replicates=1,
                     family_params={"seed_vertex": 64})

    def test_sbm_needs_even_sizes(self):
        with pytest.raises(ScenarioError):
            Scenario(family="sbm_equal", n_grid=(63, 128), replicates=1)

    def test_sbm_probability_order(self):
        with pytest.raises(ScenarioError):
            Scenario(family="sbm_equal", n_grid=(64,), replicates=1,
                     family_params={"p": 0.01, "q": 0.1})

    def test_power_law_exponents(self):
        with pytest.raises(ScenarioError):
            Scenario(family="power_law", n_grid=(64,), replicates=1,
                     family_params={"beta": 2.0})
        with pytest.raises(ScenarioError):
            Scenario(family="power_law", n_grid=(64,), replicates=1,
                     family_params={"d_exponent": 0.5, "m_exponent": 0.25})

    def test_chung_lu_certainly_inadmissible(self):
        # cap above n means every possible draw violates admissibility
        with pytest.raises(ScenarioError):
            Scenario(family="chung_lu_geometric", n_grid=(4, 8), replicates=1,
                     family_params={"c": 2.0})

    def test_defaults_filled(self):
        s = tiny_er()
        assert s.name == "er_log7"
        assert s.alpha == 0.85
        assert s.resample_limit == 5
        assert s.family_params == {"C": 1e-3}
        assert s.preference == ("uniform",)

    def test_unit_preference_default_for_er_unit_family(self):
        s = Scenario(family="er_unit_preference", n_grid=(64,), replicates=1,
                     family_params={"seed_vertex": 3})
        assert s.preference == ("unit", 3)

    def test_preference_forms(self):
        s = Scenario(family="er_log7", n_grid=(64,), replicates=1, preference="uniform")
        assert s.preference == ("uniform",)
        s = Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     preference=("set", [0, 2, 5]))
        assert s.preference == ("set", (0, 2, 5))

    def test_preference_rejections(self):
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     preference=("unit", 64))
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     preference=("set", "community1"))
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     preference=("set", []))
        with pytest.raises(ScenarioError):
            Scenario(family="er_log7", n_grid=(64,), replicates=1,
                     preference="stationary")

    def test_int_base_seed_promoted(self):
        s = Scenario(family="er_log7", n_grid=(64,), replicates=1, base_seed=42)
        assert s.base_seed == Seed(42)


class TestRunScenario:
    def test_record_order_and_streams(self):
        s = tiny_er(base=7, grid=(64, 128), replicates=2)
        records = run_scenario(s)
        assert [(r.n, r.replicate) for r in records] == [(64, 0), (64, 1), (128, 0), (128, 1)]
        # the seed column is the derived stream of the final graph draw
        for r in records:
            grid_index = s.n_grid.index(r.n)
            slot = (grid_index * s.replicates + r.replicate) * (s.resample_limit + 1)
            assert r.seed == (slot + r.resamples) * 4 + 1

    def test_successful_record_fields(self):
        records = run_scenario(tiny_er(base=7, grid=(128,), replicates=1))
        r = records[0]
        assert r.connected
        assert r.alpha == 0.85
        assert 0.0 < r.tv < 0.5
        assert r.l1 == pytest.approx(2.0 * r.tv)
        assert r.max_rel is not None
        assert 0.0 < r.lambda2_abs < 1.0
        assert r.gap == pytest.approx(1.0 - r.lambda2_abs)
        assert r.degree_ratio >= 1.0
        assert r.concentration_stat is None
        assert r.pr_iters >= 1
        assert r.wall_millis > 0.0
        assert r.tv_mixture is None

    def test_weighted_family_gets_concentration_stat(self):
        s = Scenario(family="chung_lu_geometric", n_grid=(512,), replicates=1,
                     base_seed=Seed(11))
        r = run_scenario(s)[0]
        assert r.connected
        assert r.concentration_stat is not None and r.concentration_stat > 0.0

    def test_sbm_records_carry_mixture_tv(self):
        s = Scenario(family="sbm_equal", n_grid=(256,), replicates=1, base_seed=Seed(3),
                     preference=("set", "community1"))
        r = run_scenario(s)[0]
        assert r.connected
        # the block-aware target beats the plain degree mixture
        assert r.tv < r.tv_mixture

    def test_disconnected_family_exhausts_resamples(self):
        # q = 0 splits the graph into two components on every draw
        s = Scenario(family="sbm_equal", n_grid=(64,), replicates=2, base_seed=Seed(5),
                     family_params={"p": 0.5, "q": 0.0}, resample_limit=2)
        records = run_scenario(s)
        for r in records:
            assert not r.connected
            assert r.resamples == 2
            assert r.tv is None and r.l1 is None and r.max_rel is None
            assert r.lambda2_abs is None and r.gap is None and r.degree_ratio is None
            assert r.pr_iters is None

    def test_thread_count_does_not_change_results(self):
        s = tiny_er(base=7, grid=(64, 128), replicates=2)
        solo = run_scenario(s, threads=1)
        pooled = run_scenario(s, threads=3)
        for a, b in zip(solo, pooled):
            assert (a.seed, a.tv, a.lambda2_abs, a.pr_iters) == (b.seed, b.tv, b.lambda2_abs, b.pr_iters)

    def test_rerun_is_identical(self):
        s = tiny_er(base=9, grid=(64,), replicates=2)
        first = run_scenario(s)
        second = run_scenario(s)
        for a, b in zip(first, second):
            assert a.tv == b.tv and a.lambda2_abs == b.lambda2_abs


class TestCsv:
    def test_round_trip(self, tmp_path):
        records = run_scenario(tiny_er(base=7, grid=(64, 128), replicates=2))
        path = tmp_path / "results.csv"
        emit_csv(records, path)
        back = parse_csv(path)
        assert len(back) == len(records)
        for a, b in zip(records, back):
            assert a.scenario == b.scenario and a.n == b.n and a.replicate == b.replicate
            assert a.seed == b.seed and a.alpha == b.alpha
            assert a.connected == b.connected and a.resamples == b.resamples
            assert a.tv == b.tv and a.l1 == b.l1 and a.max_rel == b.max_rel
            assert a.lambda2_abs == b.lambda2_abs and a.gap == b.gap
            assert a.degree_ratio == b.degree_ratio
            assert a.concentration_stat == b.concentration_stat
            assert a.pr_iters == b.pr_iters
        # timings stay out of the file unless asked for
        assert all(r.wall_millis is None for r in back)

    def test_header_and_timings(self, tmp_path):
        records = run_scenario(tiny_er(base=7, grid=(64,), replicates=1))
        bare = tmp_path / "bare.csv"
        timed = tmp_path / "timed.csv"
        emit_csv(records, bare)
        emit_csv(records, timed, include_timings=True)
        lines = bare.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert all(line.endswith(",") for line in lines[1:])
        timed_back = parse_csv(timed)
        assert timed_back[0].wall_millis == records[0].wall_millis

    def test_failed_record_has_empty_cells(self, tmp_path):
        record = ExperimentRecord(
            scenario="x", n=64, replicate=0, seed=1, alpha=0.85, connected=False,
            resamples=5, tv=None, l1=None, max_rel=None, lambda2_abs=None, gap=None,
            degree_ratio=None, concentration_stat=None, pr_iters=None, wall_millis=None,
        )
        path = tmp_path / "failed.csv"
        emit_csv([record], path)
        assert path.read_text().splitlines()[1] == "x,64,0,1,0.85,false,5,,,,,,,,,"

    def test_emit_requires_records(self, tmp_path):
        with pytest.raises(EmptySetError):
            emit_csv([], tmp_path / "none.csv")

    def test_parse_rejects_bad_files(self, tmp_path):
        bad_header = tmp_path / "h.csv"
        bad_header.write_text("scenario,n\nx,64\n")
        with pytest.raises(ScenarioError):
            parse_csv(bad_header)
        short_row = tmp_path / "s.csv"
        short_row.write_text(CSV_HEADER + "\nx,64,0\n")
        with pytest.raises(ScenarioError):
            parse_csv(short_row)
        bad_flag = tmp_path / "f.csv"
        bad_flag.write_text(CSV_HEADER + "\nx,64,0,1,0.85,maybe,5,,,,,,,,,\n")
        with pytest.raises(ScenarioError):
            parse_csv(bad_flag)


class TestMedian:
    def test_odd_takes_middle(self):
        assert median([5.0, 1.0, 3.0]) == 3.0

    def test_even_averages_middles(self):
        assert median([4.0, 1.0, 2.0, 8.0]) == 3.0

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            median([])


def fake_record(scenario, n, replicate, tv, max_rel, connected=True):
    return ExperimentRecord(
        scenario=scenario, n=n, replicate=replicate, seed=1, alpha=0.85,
        connected=connected, resamples=0, tv=tv, l1=None, max_rel=max_rel,
        lambda2_abs=None, gap=None, degree_ratio=None, concentration_stat=None,
        pr_iters=None, wall_millis=None,
    )


class TestLoglog:
    def test_series_and_dropped_counts(self, tmp_path):
        records = [
            fake_record("a", 64, 0, 0.1, 0.5),
            fake_record("a", 64, 1, 0.4, None),
            fake_record("a", 128, 0, 0.01, 0.2),
            fake_record("a", 128, 1, None, None, connected=False),
        ]
        path = tmp_path / "loglog.txt"
        emit_loglog(records, path)
        lines = path.read_text().splitlines()
        assert "# series a tv" in lines
        assert "# series a max_rel" in lines
        tv_start = lines.index("# series a tv")
        x, y = lines[tv_start + 1].split()
        assert float(x) == pytest.approx(math.log10(64))
        # median of {0.1, 0.4} is 0.25
        assert float(y) == pytest.approx(math.log10(0.25))
        assert "# dropped a tv 1" in lines
        assert "# dropped a max_rel 2" in lines

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(EmptySetError):
            emit_loglog([], tmp_path / "none.txt")


class TestSuccessFraction:
    def test_counts_by_scenario_and_size(self):
        records = [
            fake_record("a", 64, 0, 0.1, 0.1),
            fake_record("a", 64, 1, None, None, connected=False),
            fake_record("b", 64, 0, 0.1, 0.1),
        ]
        rates = success_fraction(records)
        assert rates[("a", 64)] == 0.5
        assert rates[("b", 64)] == 1.0


class TestConfig:
    def write(self, tmp_path, payload):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(payload) if isinstance(payload, dict) else payload)
        return path

    def test_load_two_scenarios(self, tmp_path):
        path = self.write(tmp_path, {"scenarios": [
            {"name": "small", "family": "er_log7", "n_grid": [64, 128],
             "replicates": 2, "base_seed": 5},
            {"family": "sbm_equal", "n_grid": [64], "replicates": 1,
             "alpha": 0.5, "preference": {"set": "community1"},
             "family_params": {"p": 0.2, "q": 0.05}, "resample_limit": 3},
        ]})
        scenarios = load_config(path)
        assert [s.name for s in scenarios] == ["small", "sbm_equal"]
        assert scenarios[0].base_seed == Seed(5)
        assert scenarios[1].alpha == 0.5
        assert scenarios[1].preference == ("set", "community1")
        assert scenarios[1].family_params == {"p": 0.2, "q": 0.05}
        assert scenarios[1].resample_limit == 3

    def test_preference_object_forms(self, tmp_path):
        path = self.write(tmp_path, {"scenarios": [
            {"family": "er_log7", "n_grid": [64], "replicates": 1,
             "preference": {"unit": 3}},
        ]})
        assert load_config(path)[0].preference == ("unit", 3)
        path = self.write(tmp_path, {"scenarios": [
            {"family": "er_log7", "n_grid": [64], "replicates": 1,
             "preference": {"set": [1, 2]}},
        ]})
        assert load_config(path)[0].preference == ("set", (1, 2))

    def test_rejects_malformed_configs(self, tmp_path):
        cases = [
            "not json",
            json.dumps([1, 2]),
            json.dumps({"scenarios": []}),
            json.dumps({"scenarios": "er_log7"}),
            json.dumps({"scenarios": [{"family": "er_log7"}]}),
            json.dumps({"scenarios": [{"family": "er_log7", "n_grid": [64],
                                       "replicates": 1, "threads": 2}]}),
            json.dumps({"runs": []}),
            json.dumps({"scenarios": [{"family": "er_log7", "n_grid": [64],
                                       "replicates": 1, "preference": {"unit": 1, "set": [0]}}]}),
            json.dumps({"scenarios": [
                {"family": "er_log7", "n_grid": [64], "replicates": 1},
                {"family": "er_log7", "n_grid": [64], "replicates": 1},
            ]}),
        ]
        for payload in cases:
            with pytest.raises(ScenarioError):
                load_config(self.write(tmp_path, payload))

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "absent.json")
