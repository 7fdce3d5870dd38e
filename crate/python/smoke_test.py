"""Smoke test for the blcsim extension module.

Build and run:
    cargo build -p blcsim-py --release
    cp target/release/libblcsim_py.so python/blcsim.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import blcsim


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    t, x1, _, _ = blcsim.boost((1.0, 0.0, 0.0, 0.0), 0.5)
    assert close(t, math.cosh(0.5), 1e-12) and close(x1, -math.sinh(0.5), 1e-12)
    s2, kind = blcsim.interval((0, 0, 0, 0), (0, 1, 0, 0))
    assert kind == "spacelike" and s2 < 0

    sc = blcsim.Scenario.preset("figure1")
    src = sc.source()
    assert close(src[0], -1.809, 0.002), src
    a1 = (-1.0, 0.0, 0.0, 0.0)
    b2 = blcsim.worldline_event(0.5, -0.933)
    assert close(blcsim.proper_time_between(src, a1), 0.8, 0.002)

    verdict, *_ = blcsim.consistency_check(a1, b2, "blc", 0.5)
    assert verdict == "consistent", verdict
    frac, first = blcsim.inconsistency_scan("inst", [0.5, 1.0], [-1.0, 1.0])
    assert first is not None and frac < 1.0
    frac, first = blcsim.inconsistency_scan("blc", [0.5, 1.0], [-1.0, 1.0])
    assert first is None and frac == 1.0
    assert close(blcsim.blc_slope_limit([10.0])[0], 0.99991, 1e-5)

    r = sc.run_trial(0)
    assert r.first in ("A", "B")
    assert set(r.signs) <= {-1, 1}
    assert "decision" in r.to_text()
    assert sc.run_trial(0).to_text() == r.to_text()

    est, analytic, se = blcsim.chsh_value(trials=100_000, seed=3)
    assert close(analytic, 2 * math.sqrt(2), 1e-9)
    assert abs(est - analytic) < 5 * se + 0.01, (est, se)

    stats = sc.with_run(trials=200, seed=1).run_ensemble()
    assert "[counts]" in stats
    assert "<svg" in sc.diagram_svg("B")

    try:
        blcsim.Scenario("[nope]\n")
    except ValueError:
        pass
    else:
        raise AssertionError("bad config accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
