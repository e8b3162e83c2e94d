"""Shared randomized-draw helpers for the cross-validation tests.

Samples cover every built-in symbol family over the box
beta in +-[0.1, 10], gamma in [0.1, 10], k in [0.05, 5].

The eligibility predicates state when a desk-scale oracle comparison
(a = 0.01, xi = 0.001, N = 32) is meaningful:

* ``try_expand``      -- the small-amplitude expansion exists and its
                         coefficients have not started to blow up near
                         a resonance;
* ``window_isolates`` -- the two sideband branches sit inside the
                         reporting window while every other branch
                         stays at least twice outside it, so the
                         window filter reads off exactly the
                         modulational pair;
* ``trusted``         -- quantitative use of the projected 2x2 model
                         additionally requires its detuning ratio to
                         stay small (see mi_index.detuning_ratio) and
                         the predicted growth to be resolvable above
                         the detection threshold yet still within the
                         small-amplitude regime.
"""

from __future__ import annotations

import numpy as np

import ostwave as ow
from ostwave import floquet_hill

DESK_A = 0.01
DESK_XI = 1e-3
DESK_N = 32

# growth band resolvable at desk scale: 10x the 1e-8 detection
# threshold on the low side, bounded by the regime on the high side
GROWTH_LO = 1e-7
GROWTH_HI = 1e-3
TRUST_MAX = 0.05


def draw_symbol(rng: np.random.Generator) -> ow.DispersionSymbol:
    which = int(rng.integers(0, 6))
    if which == 0:
        return ow.make_symbol("kdv")
    if which == 1:
        return ow.make_symbol("fkdv", {"delta": float(rng.uniform(0.75, 2.5))})
    if which == 2:
        return ow.make_symbol("ilw")
    if which == 3:
        return ow.make_symbol("whitham")
    if which == 4:
        return ow.make_symbol("kdv_st", {"T": float(rng.uniform(0.0, 0.8))})
    return ow.make_symbol("whitham_st", {"T": float(rng.uniform(0.01, 0.8))})


def draw_model(rng: np.random.Generator):
    """One random (symbol, params, k) from the sampling box."""
    s = draw_symbol(rng)
    beta = float(rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-1.0, 1.0))
    gamma = float(10.0 ** rng.uniform(-1.0, 1.0))
    k = float(np.exp(rng.uniform(np.log(0.05), np.log(5.0))))
    return s, ow.ModelParams(beta=beta, gamma=gamma), k


def try_expand(s, p, k):
    """expand() result, or None for resonant / near-resonant draws."""
    try:
        if ow.check_resonance(s, p, k):
            return None
        wave = ow.expand(s, p, k)
    except ow.ResonanceError:
        return None
    if abs(wave.A2) > 5.0 or abs(wave.A3) > 50.0:
        return None
    return wave


def window_isolates(wave, xi: float, window: float, n_span: int = DESK_N) -> bool:
    """Window captures the sideband pair and excludes all other branches."""
    sideband = max(
        abs(floquet_hill.unperturbed_eigenvalue(wave, n, xi)) for n in (-1, 1)
    )
    others = min(
        abs(floquet_hill.unperturbed_eigenvalue(wave, n, xi))
        for n in range(-n_span, n_span + 1)
        if n not in (-1, 1)
    )
    return sideband <= 0.5 * window and others > 2.0 * window


def draw_hill_ready(rng, a: float = DESK_A, xi: float = DESK_XI):
    """Draw until the desk-scale oracle comparison is meaningful.

    Returns (symbol, params, k, wave, window).
    """
    while True:
        s, p, k = draw_model(rng)
        wave = try_expand(s, p, k)
        if wave is None:
            continue
        window = floquet_hill.default_window(p)
        if not window_isolates(wave, xi, window):
            continue
        return s, p, k, wave, window


def trusted(wave, a: float = DESK_A, xi: float = DESK_XI) -> bool:
    """Quadratic prediction usable quantitatively at (a, xi)."""
    g = ow.growth_rate_leading(wave, a, xi)
    if not (GROWTH_LO <= g <= GROWTH_HI):
        return False
    return ow.detuning_ratio(wave, a, xi) <= TRUST_MAX


def draw_unstable_trusted(rng, a: float = DESK_A, xi: float = DESK_XI):
    """Draw an unstable sample inside the projected model's trust region.

    Returns (symbol, params, k, wave, window).
    """
    while True:
        s, p, k, wave, window = draw_hill_ready(rng, a, xi)
        if ow.index(s, p, k).classification != "unstable":
            continue
        if not trusted(wave, a, xi):
            continue
        return s, p, k, wave, window
