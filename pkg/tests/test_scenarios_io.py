"""Scenario generators and the text file format."""

import pytest

from venroute import (
    DomainError,
    ScenarioFormatError,
    Scenario,
    dumps_scenario,
    generate_corridor,
    generate_grid,
    generate_random,
    loads_scenario,
    load_scenario,
    save_scenario,
)
from venroute.scenarios import DEFAULT_PARAMS


class TestGenerators:
    def test_grid_shape(self):
        sc = generate_grid(4, 4, 10.0, 60.0, 20, ("const", 0.1), seed=0)
        assert len(sc.network.junctions) == 16
        assert len(sc.network.arcs) == 48  # 24 grid edges, both directions
        assert len(sc.routes) == 20
        assert sc.source == "j01" and sc.destination == "j16"
        # 10 km at 60 km/h -> 600 s per arc
        assert all(a.delay_s == pytest.approx(600.0) for a in sc.network.arcs)
        assert all(r.flow == 0.1 for r in sc.routes)

    def test_grid_deterministic(self):
        a = generate_grid(4, 4, 10.0, 60.0, 20, ("uniform", 0.1, 0.3), seed=7)
        b = generate_grid(4, 4, 10.0, 60.0, 20, ("uniform", 0.1, 0.3), seed=7)
        assert a == b
        c = generate_grid(4, 4, 10.0, 60.0, 20, ("uniform", 0.1, 0.3), seed=8)
        assert a != c

    def test_grid_validates_size(self):
        with pytest.raises(DomainError):
            generate_grid(1, 4, 10.0, 60.0, 5, ("const", 0.1), seed=0)

    def test_random_shape_and_determinism(self):
        a = generate_random(8, 0.4, 3, 12, seed=5)
        b = generate_random(8, 0.4, 3, 12, seed=5)
        assert a == b
        assert len(a.network.junctions) == 8
        assert a.source != a.destination
        assert all(1 <= len(r.arcs) <= 3 for r in a.routes)

    def test_random_validates_density(self):
        with pytest.raises(DomainError):
            generate_random(6, 0.0, 3, 5, seed=0)
        with pytest.raises(DomainError):
            generate_random(6, 1.2, 3, 5, seed=0)

    def test_corridor_scale(self):
        sc = generate_corridor(seed=0)
        assert len(sc.network.junctions) == 1000
        assert len(sc.network.arcs) == 2500  # 1250 roads, both directions
        assert len(sc.routes) == 4800
        assert sc.params.window_s == 72000.0
        assert generate_corridor(seed=0) == sc

    def test_scenario_validation(self):
        sc = generate_grid(2, 2, 10.0, 60.0, 3, ("const", 0.1), seed=0)
        with pytest.raises(DomainError):
            Scenario(
                name="x",
                seed=0,
                network=sc.network,
                routes=sc.routes,
                params=DEFAULT_PARAMS,
                source="j1",
                destination="j1",
            )
        with pytest.raises(DomainError):
            Scenario(
                name="x",
                seed=0,
                network=sc.network,
                routes=sc.routes,
                params=DEFAULT_PARAMS,
                source="ghost",
                destination="j4",
            )

    def test_with_target(self):
        sc = generate_grid(2, 2, 10.0, 60.0, 3, ("const", 0.1), seed=0)
        assert sc.target_kwh is None
        assert sc.with_target(12.5).target_kwh == 12.5


class TestFileFormat:
    def test_round_trip_identity(self, tmp_path):
        sc = generate_grid(3, 3, 10.0, 60.0, 8, ("uniform", 0.1, 0.3), seed=3)
        sc = sc.with_target(42.0)
        path = tmp_path / "scenario.txt"
        save_scenario(sc, path)
        loaded = load_scenario(path)
        assert loaded == sc

    def test_save_is_canonical(self, tmp_path):
        sc = generate_random(6, 0.4, 3, 6, seed=1)
        text = dumps_scenario(sc)
        assert dumps_scenario(loads_scenario(text)) == text

    def test_length_speed_arc_form(self):
        text = (
            "[meta]\nname = demo\nseed = 0\n"
            "[params]\nw_kwh = 1.0\nzc = 0.9\nzd = 1.0\nT_s = 18000.0\n"
            "[endpoints]\ns = a\nt = b\n"
            "[junctions]\na\nb\n"
            "[arcs]\nab a b length_km=30 speed_kmh=60\n"
            "[routes]\nr1 flow_ev_per_s=0.1 arcs=ab\n"
        )
        sc = loads_scenario(text)
        assert sc.network.arc_by_id["ab"].delay_s == pytest.approx(1800.0)

    def test_optional_target(self):
        base = (
            "[meta]\nname = demo\nseed = 0\n"
            "[params]\nw_kwh = 1.0\nzc = 0.9\nzd = 1.0\nT_s = 18000.0\n"
            "[endpoints]\ns = a\nt = b\nx_target_kwh = 7.5\n"
            "[junctions]\na\nb\n"
            "[arcs]\nab a b delay_s=60\n"
            "[routes]\nr1 flow_ev_per_s=0.1 arcs=ab\n"
        )
        assert loads_scenario(base).target_kwh == 7.5

    @pytest.mark.parametrize(
        "mutation,needle",
        [
            ("[arcs]\nab a b\n", "line"),  # missing delay fields
            ("[arcs]\nab a b delay_s=abc\n", "number"),
            ("[routes]\nr1 arcs=ab\n", "flow_ev_per_s"),
            ("[bogus]\n", "unknown section"),
            ("stray line\n", "before any section"),
        ],
    )
    def test_malformed_input_reports_context(self, mutation, needle):
        if mutation.startswith("["):
            text = mutation
            if "arcs" in mutation or "routes" in mutation:
                text = (
                    "[meta]\nname = d\nseed = 0\n"
                    "[params]\nw_kwh = 1.0\nzc = 0.9\nzd = 1.0\nT_s = 18000.0\n"
                    "[endpoints]\ns = a\nt = b\n"
                    "[junctions]\na\nb\n" + mutation
                )
        else:
            text = mutation
        with pytest.raises(ScenarioFormatError) as err:
            loads_scenario(text)
        assert needle in str(err.value)

    def test_missing_sections_reported(self):
        with pytest.raises(ScenarioFormatError) as err:
            loads_scenario("[meta]\nname = d\n")
        assert "seed" in str(err.value)
