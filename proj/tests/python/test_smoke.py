"""Smoke test for the Python package: a few end-to-end calls with known answers.

Plain asserts so the file runs under any interpreter without extra packages:
    PYTHONPATH=build/python python3 tests/python/test_smoke.py
"""

import math
import sys

import pgap


def close(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def main():
    # Exact integral of (x1+x2)^2 over a unit box based at (1,1).
    row = pgap.integrate(
        {"kind": "power", "c": [1.0, 1.0], "q": 2},
        {"kind": "box", "v0": [1.0, 1.0], "u": 1.0},
    )
    assert row["method"] == "multinomial", row
    assert close(row["value"], 55.0 / 6.0), row

    # String specs are accepted as-is.
    row2 = pgap.integrate(
        '{"kind": "power", "c": [1.0, 1.0], "q": 2}',
        '{"kind": "box", "v0": [1.0, 1.0], "u": 1.0}',
    )
    assert row2 == row, (row, row2)

    # The rational-lane golden instance: f = x^2 on [1, 2].
    report = pgap.analyze(
        {"kind": "power", "c": [1.0], "q": 2}, {"kind": "box", "v0": [1.0], "u": 1.0}
    )
    assert close(report["volP"], 1.0 / 18.0, 1e-12), report
    assert close(report["volP0"], 0.25, 1e-12), report
    assert close(report["delta"], 7.0 / 36.0, 1e-12), report
    assert close(report["ratio"], 7.0 / 9.0, 1e-12), report
    assert report["muKind"] == "envelope", report

    # Delta is independent of mu.
    d_env = report["volP0"] - report["volP"]
    d = pgap.delta({"kind": "power", "c": [1.0], "q": 2}, {"kind": "box", "v0": [1.0], "u": 1.0})
    assert close(d, d_env, 1e-12), (d, d_env)

    # Exponential family d=1: closed-form volumes.
    exp_report = pgap.analyze(
        {"kind": "exp", "c": [1.0]}, {"kind": "box", "v0": [1.0], "u": 1.0}
    )
    e = math.e
    vol_p0 = exp_report["volP0"]
    assert close(exp_report["delta"], 0.24734520248425512, 1e-11), exp_report
    assert close(exp_report["ratio"], exp_report["delta"] / vol_p0, 1e-12), exp_report

    # Sweep: scaled ratio approaches 2 from below for exp d=1 under the envelope.
    rows = pgap.ratio_sweep({"kind": "exp", "c": [1.0]}, [1.0], [10.0, 20.0, 40.0])
    scaled = [r["scaledRatio"] for r in rows]
    assert scaled[0] < scaled[1] < scaled[2] < 2.0, scaled
    assert all(r["theoretical"] == 2.0 for r in rows), rows
    assert close(scaled[2], 80.0 / 43.0, 1e-12), scaled

    # Envelope cells over a box: one cell per coordinate order.
    env = pgap.envelope(
        {"kind": "power", "c": [1.0, 1.0], "q": 2}, {"kind": "box", "v0": [1.0, 1.0], "u": 2.0}
    )
    assert len(env["cells"]) == 2, env
    assert env["box"]["kind"] == "box", env

    # Trend statistic separates the families.
    trend = pgap.check_sufficient_condition(
        {"kind": "exp", "c": [1.0, 1.0]}, [1.0, 1.0], [5.0, 10.0, 20.0]
    )
    assert trend["decreasing"] and trend["satisfied"], trend

    # Identity suite.
    verdict = pgap.verify()
    assert verdict["pass"] is True, verdict
    assert verdict["exitCode"] == 0, verdict
    assert len(verdict["checks"]) == 8, verdict

    # Bad specs raise ValueError, not a crash.
    try:
        pgap.integrate({"kind": "power", "c": [1.0]}, {"kind": "box", "v0": [1.0], "u": 1.0})
    except ValueError:
        pass
    else:
        raise AssertionError("missing exponent must raise")

    print("python smoke test: all checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
