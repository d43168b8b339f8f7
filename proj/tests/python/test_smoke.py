"""Smoke tests for the Python bindings and the CLI report schema."""

import json
import math
import os
import pathlib
import subprocess

import jsonschema
import numpy as np
import pytest

import netabs


def test_graph_roundtrip_and_spectrum():
    g = netabs.complete_graph(5)
    assert g.n == 5 and g.m == 10
    assert g.is_connected()
    lam = netabs.eigenvalues(g)
    assert lam[0] == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(lam[1:], 5.0)
    assert netabs.lambda2(g) == pytest.approx(5.0)

    text = netabs.format_edge_list(g)
    g2 = netabs.parse_edge_list(text)
    assert g2.edges() == g.edges()


def test_h2_closed_form_on_triangle():
    g = netabs.complete_graph(3)
    assert netabs.measure_value("h2", g) == pytest.approx(
        0.5773502691896258, rel=1e-12
    )
    # Order-2 singular-value norm agrees with the noise norm on any graph.
    r = netabs.gnm_random(9, 16, 3)
    assert netabs.measure_value("hp:2", r) == pytest.approx(
        netabs.measure_value("h2", r), rel=1e-10
    )


def test_measure_table_and_pinning():
    g = netabs.gnm_random(12, 24, 1)
    rows = netabs.measure_table(g)
    assert [r["name"] for r in rows] == netabs.default_measure_names(12)
    assert all(r["value"] > 0.0 for r in rows)

    # Pinning the entropy-bound parameter to a reference graph makes the
    # value comparable across graphs; for parameter-free measures it is a
    # no-op.
    denser = netabs.gnm_random(12, 40, 2)
    pinned = netabs.measure_value("gamma:2", denser, pinned_to=g)
    assert math.isfinite(pinned) and pinned > 0.0
    assert netabs.measure_value("h2", denser, pinned_to=g) == pytest.approx(
        netabs.measure_value("h2", denser), rel=1e-14
    )


def test_link_mass_identity():
    g = netabs.gnm_random(25, 70, 5)
    r = netabs.effective_resistances(g)
    mass = sum(w * r[i, j] for i, j, w in g.edges())
    assert mass == pytest.approx(g.n - 1, rel=1e-10)


def test_abstraction_is_deterministic_and_certified():
    g = netabs.gnm_random(30, 150, 2)
    a = netabs.abstract_until(g, 0.65, seed=4)
    b = netabs.abstract_until(g, 0.65, seed=4, threads=8)
    assert a.certified and b.certified
    assert a.epsilon_certified == b.epsilon_certified
    assert a.graph_s.edges() == b.graph_s.edges()
    assert a.epsilon_certified <= 0.65
    assert netabs.loewner_epsilon(g, a.graph_s) == pytest.approx(
        a.epsilon_certified, abs=1e-12
    )

    netabs.fill_loss_table(a, g, ["h2", "zeta:1", "hankel"])
    rows = a.loss_table()
    assert [r["name"] for r in rows] == ["h2", "zeta:1", "hankel"]
    assert all(r["relative_loss"] <= a.epsilon_certified + 1e-9 for r in rows)


def test_error_bounds_order():
    g = netabs.gnm_random(20, 80, 7)
    res = netabs.abstract_until(g, 0.6, seed=1)
    assert res.certified
    rep = netabs.h2_error_report(g, res.graph_s, res.epsilon_certified)
    assert rep["exact"] <= rep["trace_bound"] + 1e-8
    assert rep["trace_bound"] <= rep["relative_bound_absolute"] + 1e-8
    assert netabs.relative_error_bound(0.5) == pytest.approx(
        math.sqrt(1.4), abs=1e-12
    )


def test_simulation_smoke():
    g = netabs.complete_graph(3)
    st = netabs.simulate_first_order(g, trials=4, seed=9)
    assert st["trials"] == 4
    assert len(st["h2_sq"]["per_trial"]) == 4
    assert st["h2_sq"]["mean"] > 0.0
    again = netabs.simulate_first_order(g, trials=4, seed=9)
    assert st["h2_sq"]["per_trial"] == again["h2_sq"]["per_trial"]


def test_design_demo_closed_forms():
    sol = netabs.l1_optimum(10, 1.0, 2.0)
    assert sol["cost"] == pytest.approx(18.0, abs=1e-9)
    assert sol["w_remaining"] == pytest.approx(0.05, abs=1e-12)
    assert sol["sparsity_l0"] == 90
    assert netabs.l0_lower_bound(10, 1.0, 2.0) == pytest.approx(
        18.0, abs=1e-9
    )


def test_invalid_input_maps_to_value_error():
    with pytest.raises(ValueError):
        netabs.Graph(3, [(0, 0, 1.0)])
    with pytest.raises(ValueError):
        netabs.abstract_until(netabs.path_graph(4), 5.0, seed=0)


def test_cli_report_matches_schema(tmp_path):
    cli = os.environ.get("NETABS_CLI")
    src = os.environ.get("NETABS_SOURCE_DIR")
    if not cli or not src:
        pytest.skip("NETABS_CLI / NETABS_SOURCE_DIR not set")

    graph_file = tmp_path / "g.txt"
    report_file = tmp_path / "report.json"
    gen = subprocess.run(
        [cli, "generate", "gnm", "--n", "30", "--m", "150", "--seed", "2",
         "--out", str(graph_file)],
        capture_output=True, text=True,
    )
    assert gen.returncode == 0, gen.stderr
    run = subprocess.run(
        [cli, "abstract", str(graph_file), "--epsilon", "0.65", "--seed",
         "4", "--out", str(report_file)],
        capture_output=True, text=True,
    )
    assert run.returncode == 0, run.stderr

    report = json.loads(report_file.read_text())
    schema_path = (
        pathlib.Path(src) / "schemas" / "abstraction_report.schema.json"
    )
    schema = json.loads(schema_path.read_text())
    jsonschema.validate(report, schema)
    assert report["certified"] is True

    # The library reproduces the CLI run exactly (same seed path).
    g = netabs.read_edge_list(str(graph_file))
    res = netabs.abstract_until(g, 0.65, seed=4)
    assert res.epsilon_certified == report["epsilon_certified"]
    assert res.graph_s.m == report["m_abstract"]
