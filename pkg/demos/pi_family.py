"""The Pi_k series: smooth transforms, k singular points in the fiber, growing tau.

    python demos/pi_family.py [K]
"""

import sys
from pathlib import Path

from tjurina.deformation import fiber_smoothness, h1_tangent, tau_downstairs
from tjurina.report import load_input
from tjurina.transform import tau_upstairs

DATA = Path(__file__).resolve().parent.parent / "data"
K = int(sys.argv[1]) if len(sys.argv) > 1 else 5

print(" k  tau_down  tau_up  h1  points(e=1)")
for k in range(1, K + 1):
    doc = load_input(str(DATA / f"pi{k}.txt"))
    P = doc.presentation()
    down, up = tau_downstairs(P), tau_upstairs(P).tau_upstairs
    fiber = fiber_smoothness(doc.family(), {"e": 1})
    print(f"{k:>2}  {down:>8}  {up:>6}  {h1_tangent(down, up):>2}  {fiber.points:>11}")
