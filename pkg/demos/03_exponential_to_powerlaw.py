"""The exponential era ends: survival crosses over to t^-3.

For the state tuned to the spectral singularity (k_c = 9 pi / 2) the slowest
exponential term |C_1^2| e^{-Gamma_1 t} eventually dips below the t^{-3/2}
amplitude tail; past that crossing S(t) follows a pure inverse cube.
"""
import math
import pathlib
import sys

import numpy as np

from deltashell import (DeltaShellPotential, SineInitialState, build_expansion,
                        lifetime, survival_series, transition_time)
from deltashell.io import survival_to_csv

out_dir = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out_dir.mkdir(parents=True, exist_ok=True)

pot = DeltaShellPotential(b=4.5 * math.pi, a=1.0)
init = SineInitialState.from_wavenumber(4.5 * math.pi)
ctx = build_expansion(pot, init, 40)
tau = lifetime(ctx.pole_set)

t_tr = transition_time(ctx.overlaps, ctx.pole_set)
print(f"lifetime tau = {tau:.5f}")
print(f"exponential/power-law crossing: t_tr = {t_tr:.4f} = {t_tr / tau:.2f} tau")

t = np.geomspace(0.1 * tau, 120 * tau, 4000)
series = survival_series(pot, init, t, 40, context=ctx)

for lo, hi, label in [(2, 5, "exponential era"), (50, 100, "power-law era")]:
    m = (t >= lo * tau) & (t <= hi * tau)
    s_lin = np.polyfit(t[m], np.log(series.S[m]), 1)[0]
    s_log = np.polyfit(np.log(t[m]), np.log(series.S[m]), 1)[0]
    print(f"  [{lo:3d}, {hi:3d}] tau ({label}): d lnS/dt = {s_lin:8.3f},"
          f"  d lnS/d lnt = {s_log:7.3f}")
print(f"  (compare -Gamma_1 = {-ctx.pole_set.by_index(1).width:.3f} and the cube law -3)")

path = out_dir / "survival_singular_state_long.csv"
path.write_text(survival_to_csv(series, {"b": pot.b, "a": pot.a, "k_c": init.k_c,
                                         "n_pole_pairs": 40, "spacing": "log"}))
print(f"wrote {path}")
