"""
The feasibility region in the (rho1, delta2) plane
==================================================

Four masks: (a) left energy inequality, (b) right energy inequality,
(c) delta1 > 0 and (d) their conjunction. Pass ``--plot`` to draw them with
matplotlib if it is installed.
"""

import sys

import numpy as np

from eulerfan import witness_data, witness_law, scan_region

scan = scan_region(witness_data(), witness_law())
print("grid", scan.shape, "points in (d):", int((scan.d == 1).sum()))

# along the column closest to rho1 = 15/7, (a) switches off near delta2 = 51/35
col = scan.nearest_column(15 / 7)
a = scan.a[col]
edge = scan.delta2[np.argmax(a != 1)]
print(f"column rho1 = {scan.rho1[col]:.3f}: (a) stops holding at delta2 = {edge:.3f} (51/35 = {51/35:.4f})")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 4, figsize=(16, 4), sharey=True)
    extent = [scan.rho1[0], scan.rho1[-1], scan.delta2[0], scan.delta2[-1]]
    for ax, mask, title in zip(axes, (scan.a, scan.b, scan.c, scan.d), "abcd"):
        # 0 fails, 1 holds, 2 marginal
        ax.imshow(mask.T, origin="lower", extent=extent, aspect="auto", cmap="viridis", vmin=0, vmax=2)
        ax.plot(15 / 7, 51 / 35, "r+", ms=12)
        ax.set_title(f"({title})")
        ax.set_xlabel("rho1")
    axes[0].set_ylabel("delta2")
    plt.tight_layout()
    plt.show()
