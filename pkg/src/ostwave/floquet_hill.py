"""Independent spectral oracle for sideband stability.

Perturbations of a periodic wave of the form e^{i xi z} v(z), with v
2pi-periodic and xi the Floquet exponent, satisfy a linear eigenvalue
problem with periodic coefficients.  Truncating v to Fourier modes
n in [-N, N] turns that into a dense matrix pencil

    lambda D v = -L v,
    D = diag(i (n + xi)),
    L_nm = -k^2 (n+xi)^2 [ (-c + beta m(k (n+xi))) delta_nm + 2 w_{n-m} ]
           - gamma delta_nm,

where w_j are the exponential Fourier coefficients of the truncated
profile and the symbol is evaluated through its even extension.  Since
xi > 0 keeps every n + xi nonzero, D is invertible and the spectrum is
that of -D^{-1} L.  Eigenvalues are reported inside a window around the
origin; the window deliberately excludes fast oscillatory branches so
that max |Re lambda| measures sideband growth alone.

This module never consults the projected 2x2 system — it is the
cross-check for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .stokes import A_MAX, StokesWave, speed

__all__ = [
    "FloquetProblem",
    "FloquetSpectrum",
    "assemble",
    "spectrum",
    "max_growth",
    "default_window",
    "unperturbed_eigenvalue",
    "convergence_study",
]

DEFAULT_N = 32


def default_window(p) -> float:
    """Window radius that isolates the two slow sideband branches."""
    return 0.25 * min(p.gamma, 1.0)


@dataclass(frozen=True)
class FloquetProblem:
    """One truncated sideband eigenproblem: wave + amplitude + offset + size."""

    wave: StokesWave
    a: float
    xi: float
    N: int = DEFAULT_N

    def __post_init__(self):
        if not 0.0 < self.xi <= 0.5:
            raise ValueError("Floquet exponent xi must lie in (0, 1/2]")
        if self.N < 8:
            raise ValueError("mode truncation N must be >= 8")
        if abs(self.a) > A_MAX:
            raise ValueError(f"amplitude |a| <= {A_MAX} required, got {self.a}")


@dataclass(frozen=True)
class FloquetSpectrum:
    """Eigenvalues inside the reporting window, with the growth summary."""

    eigenvalues: np.ndarray = field(repr=False)
    window_radius: float
    max_real_in_window: float
    N: int


def assemble(problem: FloquetProblem):
    """Build (L, D) for the truncated pencil lambda D v = -L v."""
    wave, a, xi, N = problem.wave, problem.a, problem.xi, problem.N
    sym, p = wave.symbol, wave.params
    k = wave.k
    c = speed(wave, a)

    n = np.arange(-N, N + 1)
    nu = n + xi
    D = np.diag(1j * nu)

    size = 2 * N + 1
    # multiplication operator by 2w: Toeplitz bands from the profile modes
    cos_amp = wave.fourier_coefficients(a)  # cosine amplitudes w_0..w_3
    conv = np.zeros((size, size))
    for j in (1, 2, 3):
        wj = 0.5 * cos_amp[j]  # exponential coefficient at modes +-j
        idx = np.arange(size - j)
        conv[idx + j, idx] += 2.0 * wj
        conv[idx, idx + j] += 2.0 * wj

    diag_term = -c + p.beta * sym.m_even(k * nu)
    L = np.diag(diag_term.astype(complex))
    L += conv
    L *= -(k * k) * (nu * nu)[:, None]
    L -= p.gamma * np.eye(size)
    return L, D


def spectrum(problem: FloquetProblem, window_radius: float) -> FloquetSpectrum:
    """Eigenvalues of -D^{-1} L filtered to |lambda| <= window_radius."""
    if not window_radius > 0:
        raise ValueError("window_radius must be positive")
    L, D = assemble(problem)
    nu = np.arange(-problem.N, problem.N + 1) + problem.xi
    try:
        eig = np.linalg.eigvals(-L / (1j * nu)[:, None])
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise RuntimeError(
            "eigenvalue solve failed; try a smaller truncation N or a "
            "different Floquet exponent xi"
        ) from exc
    # deterministic ordering regardless of LAPACK's internal return order
    eig = eig[np.lexsort((eig.real, eig.imag))]
    inside = eig[np.abs(eig) <= window_radius]
    max_real = float(np.max(np.abs(inside.real))) if inside.size else 0.0
    return FloquetSpectrum(
        eigenvalues=inside,
        window_radius=float(window_radius),
        max_real_in_window=max_real,
        N=problem.N,
    )


def max_growth(
    wave: StokesWave,
    a: float,
    xi: float,
    N: int = DEFAULT_N,
    window: float | None = None,
) -> float:
    """Largest |Re lambda| inside the sideband window (0 if none)."""
    if window is None:
        window = default_window(wave.params)
    return spectrum(FloquetProblem(wave, a, xi, N), window).max_real_in_window


def unperturbed_eigenvalue(wave: StokesWave, n: int, xi: float) -> complex:
    """Closed-form eigenvalue of the zero-amplitude pencil at mode n.

    lambda_n = i [ gamma (nu - 1/nu) + beta k^2 nu (m(k) - m(k nu)) ],
    nu = n + xi.  Derived by solving the diagonal a = 0 pencil row for
    lambda; the spectrum tests require bit-level agreement of the dense
    solve with this formula.
    """
    sym, p = wave.symbol, wave.params
    k = wave.k
    nu = n + xi
    if nu == 0:
        raise ValueError("n + xi must be nonzero")
    return 1j * (
        p.gamma * (nu - 1.0 / nu) + p.beta * k * k * nu * (sym.m(k) - sym.m_even(k * nu))
    )


def convergence_study(wave: StokesWave, a: float, xi: float, N_list, window: float | None = None):
    """Tabulate max_growth against truncation size.

    Returns a list of dicts {N, max_growth, diff} with diff the absolute
    change from the previous row (None on the first).
    """
    sizes = list(N_list)
    if sizes != sorted(sizes):
        raise ValueError("N_list must be ascending")
    rows = []
    prev = None
    for N in sizes:
        g = max_growth(wave, a, xi, N=N, window=window)
        rows.append({"N": int(N), "max_growth": g, "diff": None if prev is None else abs(g - prev)})
        prev = g
    return rows
