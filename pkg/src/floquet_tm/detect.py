"""Detection and labeling of time-molecule flat regions in stroboscopic
traces: maximal runs of near-zero total polarization, optionally gated on a
high mean entanglement entropy."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .analysis import xi
from .dynamics import StroboscopicTrace

DEFAULT_WINDOW = 10
THRESHOLD_PER_QUBIT = 0.075
DEFAULT_ENTROPY_FLOOR = 0.6
GROUP_MATCH_RADIUS = 0.5


@dataclass(frozen=True)
class TmInterval:
    """One detected flat region [n_start, n_end] (inclusive), its duration
    in periods, the mean |polarization| and mean entropy inside it, and an
    optional commensurability label (k, l)."""

    n_start: int
    n_end: int
    duration: int
    mean_abs_polarization: float
    mean_entropy: float | None
    label: tuple[int, int] | None = None

    @property
    def center(self) -> float:
        return 0.5 * (self.n_start + self.n_end)


def detect_flat_regions(
    trace: StroboscopicTrace,
    window: int = DEFAULT_WINDOW,
    threshold: float | None = None,
    entropy_floor: float | None = None,
) -> list[TmInterval]:
    """Maximal runs of consecutive periods with |<sigma_z>| < threshold, at
    least ``window`` periods long, and (when the trace carries entropy)
    with mean entropy >= entropy_floor.

    ``threshold`` defaults to 0.075 per qubit (0.15 for two qubits);
    ``entropy_floor`` defaults to 0.6 when entropy data is present and is
    disabled otherwise. A trace shorter than ``window`` yields no
    intervals.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    if threshold is None:
        threshold = THRESHOLD_PER_QUBIT * trace.n_qubits
    if threshold <= 0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    has_entropy = trace.entropy is not None
    if entropy_floor is None:
        entropy_floor = DEFAULT_ENTROPY_FLOOR if has_entropy else 0.0

    pol = np.abs(trace.polarization)
    length = pol.size
    intervals: list[TmInterval] = []
    i = 0
    while i < length:
        if pol[i] < threshold:
            j = i
            while j + 1 < length and pol[j + 1] < threshold:
                j += 1
            if j - i + 1 >= window:
                mean_ent = float(np.mean(trace.entropy[i : j + 1])) if has_entropy else None
                if not (has_entropy and entropy_floor > 0.0 and mean_ent < entropy_floor):
                    intervals.append(
                        TmInterval(
                            n_start=i,
                            n_end=j,
                            duration=j - i + 1,
                            mean_abs_polarization=float(np.mean(pol[i : j + 1])),
                            mean_entropy=mean_ent,
                        )
                    )
            i = j + 1
        else:
            i += 1
    return intervals


def _distance_to_even(value: float) -> float:
    return abs(value - 2.0 * round(value / 2.0))


def label_intervals(
    intervals: list[TmInterval],
    g: float,
    epsilon: float,
    k_max: int = 4,
) -> list[TmInterval]:
    """Assign (k, l) labels by nearest commensurability group.

    k minimizes the distance of xi_k(epsilon, g) to an even integer over
    k <= k_max; l counts the intervals in time order. Intervals stay
    unlabeled when no xi_k comes within 0.5 of an even integer.
    """
    if g <= 0:
        raise ValueError(f"labeling requires g > 0, got {g}")
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if not intervals:
        return []
    ordered = sorted(intervals, key=lambda iv: iv.n_start)
    distances = [(_distance_to_even(xi(k, epsilon, g)), k) for k in range(1, k_max + 1)]
    best_distance, best_k = min(distances)
    if best_distance > GROUP_MATCH_RADIUS:
        return [replace(iv, label=None) for iv in ordered]
    return [replace(iv, label=(best_k, pos)) for pos, iv in enumerate(ordered, start=1)]
