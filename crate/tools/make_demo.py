#!/usr/bin/env python3
"""Generate the bundled synthetic demo dataset (fixtures/demo_mobile_os.csv).

Seven synthetic vendors follow smooth logistic/hump curves over 36 quarters
(2007Q1..2015Q4): an early leader ("alpha") declines while a challenger
("beta") rises past it, with a designed leader flip at 2011Q1. The final
four quarters are designed so that the leader holds > 80% of units and the
four largest vendors hold > 99% together.

The numbers are synthetic. They are not Gartner data or any vendor's
actual figures.

Usage: python3 tools/make_demo.py
Writes: crates/concentration/fixtures/demo_mobile_os.csv
"""

import math
import os

QUARTERS = 36  # 2007Q1 .. 2015Q4
TOTAL_UNITS = 100_000  # thousands of units per quarter, before rounding


def quarter_label(t: int) -> str:
    year = 2007 + t // 4
    q = t % 4 + 1
    return f"{year}Q{q}"


def logistic(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def vendor_weights(t: int) -> dict:
    """Raw (unnormalized) share weights for vendors present in quarter t."""
    w = {}
    # early leader, declines to a small floor
    w["alpha"] = 0.02 + 0.50 * logistic(-(t - 16) / 3.0)
    # challenger, enters 2008Q3, rises to dominance
    if t >= 6:
        w["beta"] = 0.82 * logistic((t - 17) / 2.8)
    # steady mid-size vendor, enters 2007Q3
    if t >= 2:
        w["gamma"] = 0.10 + 0.05 * logistic((t - 10) / 4.0)
    # second decliner, present throughout with a small floor
    w["delta"] = 0.004 + 0.26 * logistic(-(t - 12) / 3.0)
    # early mid-size vendor, exits after 2012Q2
    if t <= 21:
        w["epsilon"] = 0.005 + 0.115 * logistic(-(t - 8) / 2.5)
    # short-lived niche vendor, 2010Q2 .. 2013Q3
    if 13 <= t <= 26:
        w["zeta"] = 0.004 + 0.022 * math.exp(-(((t - 19) / 4.0) ** 2))
    # late entrant, small but growing
    if t >= 18:
        w["eta"] = 0.004 + 0.012 * logistic((t - 24) / 3.0)
    return w


def main() -> None:
    out_dir = os.path.join(
        os.path.dirname(__file__), "..", "crates", "concentration", "fixtures"
    )
    out_path = os.path.normpath(os.path.join(out_dir, "demo_mobile_os.csv"))

    lines = ["quarter,vendor,units"]
    leaders = []
    for t in range(QUARTERS):
        w = vendor_weights(t)
        w_min = min(w.values())
        w["others"] = min(0.4 * w_min, 0.05)
        total_w = sum(w.values())
        units = {v: round(TOTAL_UNITS * wv / total_w) for v, wv in w.items()}
        # keep the demo warning-free: the residual bucket stays strictly
        # below the smallest named vendor
        named_min = min(u for v, u in units.items() if v != "others")
        if units["others"] >= named_min:
            units["others"] = named_min - 1
        assert all(u >= 1 for u in units.values()), (t, units)

        label = quarter_label(t)
        for vendor in ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta"]:
            if vendor in units:
                lines.append(f"{label},{vendor},{units[vendor]}")
        lines.append(f"{label},others,{units['others']}")

        named = {v: u for v, u in units.items() if v != "others"}
        total = sum(units.values())
        leader = max(sorted(named), key=lambda v: named[v])
        leaders.append(leader)
        top_share = named[leader] / total
        top4 = sum(sorted(named.values(), reverse=True)[:4]) / total

        # designed-shape checks
        if t >= 32:
            assert top_share > 0.8, (label, top_share)
            assert top4 > 0.99, (label, top4)

    # exactly one leader flip, at 2011Q1 (t = 16)
    flips = [t for t in range(1, QUARTERS) if leaders[t] != leaders[t - 1]]
    assert flips == [16], flips
    assert leaders[15] == "alpha" and leaders[16] == "beta"

    with open(out_path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out_path} ({len(lines) - 1} rows, {QUARTERS} quarters)")
    print(f"leader flip at {quarter_label(16)}; last-quarter leader share "
          f"checks passed for 2015Q1..2015Q4")


if __name__ == "__main__":
    main()
