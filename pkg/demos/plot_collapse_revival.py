"""
Collapse and revival with coherent fields
=========================================

Both cavities hold coherent states with mean photon number 20. Averaging
the block signal over the Poisson weights makes the oscillation dephase
after roughly sqrt(2)/g and rephase near 2 pi |alpha|/g. The two initial
Bell assignments give mirror-image signals with the same detected times.
"""
import numpy as np

from djcm import CoherentConfig, SystemParams, detect_collapse_revival, ensemble_inversion

params = SystemParams(g_A=1.0, g_B=1.0)
times = np.linspace(0.0, 50.0, 20000)

series = {}
for case in ("I", "II"):
    cfg = CoherentConfig(alpha_sq=20.0, case=case)
    series[case] = ensemble_inversion(params, cfg, times)
    result = detect_collapse_revival(series[case], g=1.0, alpha_sq=20.0)
    print(f"case {case}: collapse {result.t_collapse_est:.3f} "
          f"(predicted {result.t_collapse_pred:.3f}), "
          f"revival {result.t_revival_est:.3f} (predicted {result.t_revival_pred:.3f})")

# Summing over both photon numbers independently averages two independent
# frequency draws instead of doubling one, which narrows the spread, so the
# envelope decays later.
product = ensemble_inversion(params, CoherentConfig(alpha_sq=20.0,
                                                    mode_coupling="independent_product"),
                             times[:4000])
twin = detect_collapse_revival(series["I"], g=1.0, alpha_sq=20.0)
wide = detect_collapse_revival(product, g=1.0, alpha_sq=20.0)
print(f"collapse, twin weighting {twin.t_collapse_est:.3f}, "
      f"product weighting {wide.t_collapse_est:.3f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(2, 1, sharex=True, figsize=(7, 5))
    for ax, (case, s) in zip(axes, series.items()):
        ax.plot(s.times, s.W_A, lw=0.5, label="site A")
        ax.plot(s.times, s.W_B, lw=0.5, label="site B")
        ax.set_ylabel(f"case {case}")
    axes[0].legend(loc="upper right")
    axes[-1].set_xlabel("g t")
    fig.savefig("collapse_revival.png", dpi=120)
