import math

import pytest

import origami


def test_angle_round_trip():
    for flag in ("M", "V"):
        for beta_deg in (40.0, 75.0, 120.0):
            beta = math.radians(beta_deg)
            delta = origami.transition_delta(beta, 0.7 * math.pi, flag)
            assert origami.shape_angle(delta, 0.7, flag) == pytest.approx(beta, abs=1e-12)
    assert origami.initial_alpha(math.pi) == pytest.approx(math.pi / 2, abs=1e-15)


def test_fold_limit_and_fitness():
    theta = origami.max_fold_angle(3.0, 2.2, 0.4)
    assert math.degrees(theta) == pytest.approx(146.6, abs=0.05)
    assert origami.fitness_formula(120.0, 0.0, 0.0, 0) == 60.0
    assert origami.fitness_formula(120.0, 0.0, 0.0, 2) == pytest.approx(52.0, abs=1e-12)


def test_bad_flag_raises_domain_error():
    with pytest.raises(origami.OrigamiError) as err:
        origami.transition_delta(1.0, 1.0, "X")
    assert origami.error_info(err.value)["type"] == "domain"


def test_project_round_trip_and_fold():
    project = origami.template_project("miura")
    assert origami.normalize_project(project) == project
    folded = origami.fold(project, 0.0)
    flat = origami.fold(project, 1.0)
    assert folded and flat
    assert origami.check_routing(project)["ok"]


def test_synthesize_and_evaluate():
    project = origami.template_project("arm")
    project, report = origami.synthesize(project, 10.0, 2)
    assert "pattern" in project
    fitness = origami.evaluate(project)
    assert fitness["fitness"] <= 60.0
    end = origami.fold(project, 1.2)
    assert math.dist(end["projected_endpoint"], end["planar_endpoint"]) < 1e-6


def test_schema_error_carries_path():
    with pytest.raises(origami.OrigamiError) as err:
        origami.evaluate(origami.template_project("empty"))
    info = origami.error_info(err.value)
    assert info["type"] == "schema" and info["path"] == "/design"


def test_optimize_is_seeded():
    project = origami.template_project("arm")
    _, a = origami.optimize(project, runs=2, generations=20, seed=5)
    _, b = origami.optimize(project, runs=2, generations=20, seed=5)
    assert a == b
    assert len(a["runs"]) == 2


def test_simulate_prefix():
    result = origami.simulate(origami.template_project("miura"), max_states=10)
    thetas = [s["fold_theta"] for s in result["states"]]
    assert len(thetas) == 10
    assert all(b >= a for a, b in zip(thetas, thetas[1:]))


def test_cli_in_process(tmp_path):
    code, out, _ = origami.run_cli("--help")
    assert code == 0 and "fabricate" in out
    code, _, err = origami.run_cli("evaluate", str(tmp_path / "missing.json"))
    assert code == 2 and err
