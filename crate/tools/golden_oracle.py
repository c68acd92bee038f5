#!/usr/bin/env python3
"""Independent oracle for the duopoly_flip golden files.

Recomputes the full analysis report for fixtures/duopoly_flip.csv from
first principles (plain spreadsheet-style arithmetic, no shared code with
the Rust implementation) and writes the golden outputs that the CLI must
reproduce byte-for-byte:

  fixtures/duopoly_flip.csv         the input fixture itself
  fixtures/duopoly_flip_report.csv  expected `analyze --format csv` stdout
  fixtures/duopoly_flip_report.txt  expected `analyze --format table` stdout

Usage: python3 tools/golden_oracle.py
"""

import math
import os

FIXTURE_DIR = os.path.normpath(
    os.path.join(os.path.dirname(__file__), "..", "crates", "concentration", "fixtures")
)

# 8 quarters, two named vendors plus a constant 5% residual bucket.
# The leader flips from alpha to beta at the fifth quarter (2014Q1).
DUOPOLY = [
    ("2013Q1", [("alpha", 600.0), ("beta", 350.0)], 50.0),
    ("2013Q2", [("alpha", 550.0), ("beta", 400.0)], 50.0),
    ("2013Q3", [("alpha", 520.0), ("beta", 430.0)], 50.0),
    ("2013Q4", [("alpha", 500.0), ("beta", 450.0)], 50.0),
    ("2014Q1", [("alpha", 450.0), ("beta", 500.0)], 50.0),
    ("2014Q2", [("alpha", 400.0), ("beta", 550.0)], 50.0),
    ("2014Q3", [("alpha", 350.0), ("beta", 600.0)], 50.0),
    ("2014Q4", [("alpha", 300.0), ("beta", 650.0)], 50.0),
]

GAP_THRESHOLDS = [1.0, 3.5]
K = 4


def fmt6(x: float) -> str:
    return f"{x:.6f}"


def fmt_threshold(t: float) -> str:
    # mirror Rust's `{}` Display for simple thresholds: 1.0 -> "1", 3.5 -> "3.5"
    if t == int(t):
        return str(int(t))
    return repr(t)


def analyze_quarter(named, residual_units):
    """Everything the report needs for one quarter, from raw units."""
    total = 0.0
    for _, u in named:
        total = total + u
    total = total + residual_units

    shares = [(v, u / total) for v, u in named]
    # descending share, ties by name ascending
    shares.sort(key=lambda e: (-e[1], e[0]))
    residual = residual_units / total

    lower = 0.0
    for _, s in shares:
        lower = lower + s * s

    if residual == 0.0:
        upper = lower
    else:
        s_m = shares[-1][1]
        if residual <= s_m:
            upper = lower + residual * residual
        else:
            q = math.floor(residual / s_m)  # exact-ratio guard irrelevant here
            rem = residual - s_m * q
            upper = lower + s_m * s_m * q + rem * rem

    if residual > 0.0 and len(shares) < K:
        cr4 = None
    else:
        cr4 = 0.0
        for _, s in shares[:K]:
            cr4 = cr4 + s

    top_vendor, top_share = shares[0]

    gap = (upper - lower) / lower * 100.0 if lower > 0.0 else 0.0
    return {
        "lower": lower,
        "upper": upper,
        "gap": gap,
        "cr4": cr4,
        "top_vendor": top_vendor,
        "top_share": top_share,
    }


def classify_hhi(v: float) -> str:
    if v < 0.15:
        return "unconcentrated"
    if v <= 0.25:
        return "moderately_concentrated"
    return "highly_concentrated"


def classify_cr4(v: float) -> str:
    if v == 0.0:
        return "perfect_competition"
    if v < 0.4:
        return "effective_competition"
    if v <= 0.6:
        return "loose_oligopoly"
    return "tight_oligopoly"


def hhi_class_field(lower: float, upper: float) -> str:
    lo, hi = classify_hhi(lower), classify_hhi(upper)
    return lo if lo == hi else f"{lo}..{hi}"


def main() -> None:
    rows = []
    gaps = []
    leaders = []
    for quarter, named, residual_units in DUOPOLY:
        r = analyze_quarter(named, residual_units)
        rows.append((quarter, r))
        gaps.append(r["gap"])
        leaders.append(r["top_vendor"])

    max_gap = max(gaps)
    fractions = [
        (t, sum(1 for g in gaps if g < t) / len(gaps)) for t in GAP_THRESHOLDS
    ]
    crossovers = [
        (rows[i][0], leaders[i - 1], leaders[i])
        for i in range(1, len(rows))
        if leaders[i] != leaders[i - 1]
    ]

    # ---- input fixture ----
    fixture = ["quarter,vendor,units"]
    for quarter, named, residual_units in DUOPOLY:
        for v, u in named:
            fixture.append(f"{quarter},{v},{u:g}")
        fixture.append(f"{quarter},others,{residual_units:g}")
    write("duopoly_flip.csv", fixture)

    # ---- CSV report golden ----
    csv_lines = [
        "quarter,hhi_lower,hhi_upper,gap_pct,cr4,top_vendor,top_share,hhi_class,cr4_class"
    ]
    for quarter, r in rows:
        cr4_s = fmt6(r["cr4"]) if r["cr4"] is not None else ""
        cr4_class = classify_cr4(r["cr4"]) if r["cr4"] is not None else ""
        csv_lines.append(
            f"{quarter},{fmt6(r['lower'])},{fmt6(r['upper'])},{fmt6(r['gap'])},"
            f"{cr4_s},{r['top_vendor']},{fmt6(r['top_share'])},"
            f"{hhi_class_field(r['lower'], r['upper'])},{cr4_class}"
        )
    csv_lines.append(f"# max_gap_pct,{fmt6(max_gap)}")
    for t, frac in fractions:
        csv_lines.append(f"# fraction_below,{fmt_threshold(t)},{fmt6(frac)}")
    csv_lines.append(f"# crossovers,{len(crossovers)}")
    for quarter, prev, new in crossovers:
        csv_lines.append(f"# crossover,{quarter},{prev},{new}")
    write("duopoly_flip_report.csv", csv_lines)

    # ---- table report golden ----
    hdr = (
        f"{'quarter':<8} {'hhi_lower':>10} {'hhi_upper':>10} {'gap_pct':>10} "
        f"{'cr4':>10}  {'top_vendor':<12} {'top_share':>10}  "
        f"{'hhi_class':<24} cr4_class"
    )
    txt = [hdr]
    for quarter, r in rows:
        cr4_s = fmt6(r["cr4"]) if r["cr4"] is not None else "-"
        cr4_class = classify_cr4(r["cr4"]) if r["cr4"] is not None else "-"
        txt.append(
            f"{quarter:<8} {fmt6(r['lower']):>10} {fmt6(r['upper']):>10} "
            f"{fmt6(r['gap']):>10} {cr4_s:>10}  {r['top_vendor']:<12} "
            f"{fmt6(r['top_share']):>10}  "
            f"{hhi_class_field(r['lower'], r['upper']):<24} {cr4_class}"
        )
    txt.append("")
    txt.append(f"max_gap_pct: {fmt6(max_gap)}")
    for t, frac in fractions:
        txt.append(f"fraction_below({fmt_threshold(t)}%): {fmt6(frac)}")
    txt.append(f"crossovers: {len(crossovers)}")
    for quarter, prev, new in crossovers:
        txt.append(f"  {quarter}: {prev} -> {new}")
    write("duopoly_flip_report.txt", txt)

    print(f"max_gap_pct = {fmt6(max_gap)}")
    for t, frac in fractions:
        print(f"fraction_below({fmt_threshold(t)}%) = {fmt6(frac)}")
    print(f"crossovers = {crossovers}")


def write(name: str, lines) -> None:
    path = os.path.join(FIXTURE_DIR, name)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
