"""Walk through the 4x3 example: chart equations, singular points, tau, report.

    python demos/four_by_three.py
"""

from pathlib import Path

from tjurina.report import build_report, load_input
from tjurina.transform import analyze_transform, tau_upstairs, transform_chart_equations

DATA = Path(__file__).resolve().parent.parent / "data"

doc = load_input(str(DATA / "m4x3.txt"))
P = doc.presentation()
print(f"type t = {P.t}, a {P.matrix.rows}x{P.matrix.cols} presentation")

for i in range(1, P.t + 1):
    print(f"\nchart {i}:")
    for h in transform_chart_equations(P, i):
        print("   ", h)

charts = analyze_transform(P)
an = tau_upstairs(P, charts)
print("\nchart  points  tau_new")
for c in an.charts:
    print(f"{c.index:>5}  {c.points:>6}  {c.tau_new:>7}")
print(f"total: {an.points} points, tau_up = {an.tau_upstairs}")

rep = build_report(doc, experimental=True, timings=False)
print(f"\nbetti {tuple(rep.betti)}  flags {' '.join(rep.flags)}")
print(rep.note)
