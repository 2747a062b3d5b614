"""Flat and non-flat Tjurina modifications in families.

    python demos/flatness.py
"""

from pathlib import Path

from tjurina.deformation import fiber_smoothness, flatness_check
from tjurina.report import load_input

DATA = Path(__file__).resolve().parent.parent / "data"

for name in ("fatpoint", "pi2"):
    DP = load_input(str(DATA / f"{name}.txt")).family()
    v = flatness_check(DP)
    print(f"{name}: {v.status}")
    if v.witness is not None:
        print(f"  unliftable relation: {v.witness}")
    for note in v.notes:
        print(f"  {note}")

DP = load_input(str(DATA / "m4x3_family.txt")).family()
for e in (0, 1):
    f = fiber_smoothness(DP, {"e": e})
    print(f"4x3 family, fiber at e={e}: {f.status}")
