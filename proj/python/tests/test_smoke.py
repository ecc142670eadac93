import math

import pytest

import approxmin as am

SPIKE = "n=1; x1 == 0 : -1 ; else : abs(x1)"


def test_function_eval():
    f = am.Function("n=1; else : abs(x1 - 1)")
    assert f.dim == 1
    assert f([3.0]) == 2.0
    g = am.Function("n=1; x1 >= 0 : x1 ; else : inf")
    assert g([-1.0]) == math.inf


def test_parse_error():
    with pytest.raises(am.ParseError):
        am.Function("n=1; else : sqrt(x1)")
    with pytest.raises(am.ApproxminError):
        am.Function("n=1; else : x2")


def test_spike_notions():
    f = am.Function(SPIKE)
    X = am.Domain.full(1)
    assert am.check_notion("eps-min", f, X, [0.5], eps=2)["status"] == "holds-on-sample"
    usual = am.check_notion("usual-min", f, X, [0.5])
    assert usual["status"] == "fails"
    assert usual["witness"]["point"] == [0.0]
    assert am.check_lsc(f, [0.0])["status"] == "holds-on-sample"
    assert am.check_continuity(f, [0.0])["status"] == "fails"


def test_eps_zero_matches_usual():
    f = am.Function("n=1; else : (x1 - 0.5)^2")
    X = am.Domain.interval(-1, 1)
    for x in (-1.0, 0.0, 0.5, 1.0):
        a = am.check_notion("eps-min", f, X, [x], eps=0)
        b = am.check_notion("usual-min", f, X, [x])
        assert a["status"] == b["status"]


def test_subdiff_abs():
    s = am.clarke_subdiff(am.Function("n=1; else : abs(x1)"), [0.0])
    lo, hi = sorted(v[0] for v in s["hull"])
    assert lo == pytest.approx(-1, abs=1e-6)
    assert hi == pytest.approx(1, abs=1e-6)
    d = am.clarke_dirderiv(am.Function("n=1; else : abs(x1)"), [0.0], [1.0])
    assert d["value"] == pytest.approx(1, abs=1e-9)


def test_not_lipschitz():
    f = am.Function("n=1; x1 >= 0 : x1 ; else : inf")
    with pytest.raises(am.NotLipschitzError):
        am.local_lipschitz(f, [0.0], 0.5)


def test_normal_cone_halfline():
    X = am.Domain.box([0.0], [math.inf])
    assert am.normal_cone(X, [0.0])["generators"] == [[-1.0]]
    assert am.normal_cone(X, [1.0])["kind"] == "trivial"


def test_ekeland_parabola():
    f = am.Function("n=1; else : x1^2")
    X = am.Domain.interval(-2, 2)
    c = am.ekeland_search(f, X, [0.5], 0.25, 1.0)
    assert c["valid"]
    assert abs(c["x_lambda"][0] - 0.5) <= 1.0
    assert c["f_x_lambda"] <= c["f_x0"]


def test_vector_problem():
    vp = am.VectorProblem([am.Function("n=1; else : x1"), am.Function("n=1; else : -x1")], [], am.Domain.interval(-1, 1))
    assert am.check_efficient(vp, [0.3])["status"] == "holds-on-sample"
    a = am.alpha_from_lipschitz(vp, [0.3])
    assert len(a["alpha"]) == 2
    assert am.check_quasi_efficient(vp, [0.3], a["alpha"], a["delta"])["status"] == "holds-on-sample"


def test_fritz_john():
    vp = am.VectorProblem([am.Function("n=1; else : x1")], [am.Function("n=1; else : -x1")], am.Domain.full(1))
    c = am.check_fritz_john(vp, [0.5], [2.0], [1.0], [0.0])
    assert c["residual"] <= 1e-9
    m = am.find_multipliers(vp, [0.0], [0.1])
    assert m["success"]


def test_composite_distance():
    r = am.composite_set_distance([(1.0, [[3.0]])], 1.0, [], 1)
    assert r["distance"] == pytest.approx(2.0, abs=1e-9)
    r = am.composite_set_distance([(2.0, [[1.0, 3.0]])], 0.0, [[-1.0, 0.0]], 2)
    assert r["distance"] == pytest.approx(6.0, abs=1e-6)


def test_corpus_and_audit():
    plan = am.SamplePlan()
    plan.threads = 2
    run = am.run_corpus(am.corpus_dir(), plan)
    assert run["failed"] == 0
    assert run["passed"] > 100
    rep = am.audit("eps-quasi-min", am.corpus_dir(), eps=1.0)
    assert not rep["qualified"]
    assert rep["conditions"][1]["outcome"] == "violated"


def test_plan_validation():
    plan = am.SamplePlan()
    plan.ratio = 1.5
    with pytest.raises(am.ApproxminError):
        plan.validate()
    plan.ratio = 0.5
    plan.window = ([0.0], [1.0])
    assert plan.window == ([0.0], [1.0])
