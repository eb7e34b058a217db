"""Commensurability ratio xi_k and the pulse imperfections it predicts.

Time molecules of group k form where xi_k(eps, g) crosses an even integer.
Inverting xi_k = ell gives the imperfection to dial in; detection on a
fine sweep confirms the predicted value falls inside the detected band.
"""

import numpy as np

from floquet_tm import (
    ChainConfig,
    StroboscopicTrace,
    SweepAxis,
    SweepSpec,
    detect_flat_regions,
    run_sweep,
    tm_epsilon_for,
    xi,
)

g = 0.05

print("xi_k curves at g = 0.05:")
for eps in (0.0, 0.0433, 0.0707, 0.0968, 0.1225):
    print(f"  eps = {eps:.4f}: xi_1 = {xi(1, eps, g):6.3f}, xi_2 = {xi(2, eps, g):6.3f}")

print("\neven-integer crossings (k, ell) -> eps:")
for k, ell in [(1, 6), (1, 8), (1, 10), (2, 10), (2, 12)]:
    pred = tm_epsilon_for(k, ell, g)
    print(
        f"  xi_{k} = {ell:2d} at eps = {pred.epsilon:.6f} "
        f"(omega1/omega2 = {pred.omega1 / pred.omega2:.4f})"
    )

# Where does detection actually fire? Sweep finely around the first crossing.
spec = SweepSpec(
    base=ChainConfig(2, coupling=g),
    axis=SweepAxis.EPSILON_UNIFORM,
    values=tuple(np.linspace(0.035, 0.055, 41)),
    n_max=150,
)
grid = run_sweep(spec)
band = []
for i, value in enumerate(spec.values):
    row = StroboscopicTrace(
        steps=np.arange(spec.n_max + 1),
        polarization=grid.polarization[i],
        entropy=grid.entropy[i],
        n_qubits=2,
    )
    if detect_flat_regions(row):
        band.append(value)

pred = tm_epsilon_for(1, 6, g)
print(
    f"\ndetected band [{min(band):.4f}, {max(band):.4f}] "
    f"contains the predicted eps = {pred.epsilon:.4f}: {min(band) <= pred.epsilon <= max(band)}"
)
