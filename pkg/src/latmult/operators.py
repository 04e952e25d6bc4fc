"""Multiplier and pseudo-differential operators on Z^n.

Operators are applied either on the frequency side (quadrature of the
xi-integral against the dft of the input) or on the kernel side (exact
convolution).  Finite sections are dense matrices on a window; the l^1 ->
l^{p,inf} and l^1 -> l^p operator norms come for free from the kernel, since
both equal the corresponding norm of k = F^{-1} m and are attained by delta
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lattice import (
    LatticeSequence,
    Window,
    convolve,
    neg_index,
    sequence,
)
from .norms import lp_norm, weak_norm
from .torus import TorusGrid, TorusSamples, dft, inverse_dft

MATRIX_CAP = 4096


@dataclass(frozen=True)
class MultiplierSymbol:
    """Bounded evaluator xi in [0,1)^dim -> complex."""

    dim: int
    eval: Callable[[np.ndarray], complex]


@dataclass(frozen=True)
class PdoSymbol:
    """Evaluator (n', xi) -> complex for a pseudo-differential operator."""

    dim: int
    eval: Callable[[tuple, np.ndarray], complex]


def multiplier_as_pdo(m: MultiplierSymbol) -> PdoSymbol:
    return PdoSymbol(m.dim, lambda n, xi: m.eval(xi))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Finite section of an operator: dense (out point, in point) matrix."""

    window: Window
    entries: np.ndarray

    def __post_init__(self):
        side = self.window.cardinality
        if self.entries.shape != (side, side):
            raise ValueError(
                f"matrix shape {self.entries.shape} != window side {side}"
            )


def sample_multiplier(m: MultiplierSymbol, grid: TorusGrid) -> TorusSamples:
    if m.dim != grid.dim:
        raise ValueError("dimension mismatch")
    vals = np.array([m.eval(x) for x in grid.nodes()], dtype=np.complex128)
    return TorusSamples(grid, vals)


def apply_multiplier(
    m: MultiplierSymbol, f: LatticeSequence, grid: TorusGrid, out: Window
) -> LatticeSequence:
    """t_m f(n) = (1/M^n) sum_j e^{2 pi i n.xi_j} m(xi_j) (dft f)(xi_j)."""
    if m.dim != f.dim:
        raise ValueError("dimension mismatch")
    F = dft(f, grid)
    MF = TorusSamples(grid, sample_multiplier(m, grid).values * F.values)
    return inverse_dft(MF, out)


def apply_by_kernel(k: LatticeSequence, f: LatticeSequence) -> LatticeSequence:
    """Kernel-side application t f(n) = sum_m k(n-m) f(m)."""
    return convolve(k, f)


def apply_pdo(
    a: PdoSymbol, f: LatticeSequence, grid: TorusGrid, out: Window
) -> LatticeSequence:
    """t_a f(n) = (1/M^n) sum_j e^{2 pi i n.xi_j} a(n, xi_j) (dft f)(xi_j)."""
    if a.dim != f.dim:
        raise ValueError("dimension mismatch")
    F = dft(f, grid)
    nodes = grid.nodes()
    entries = {}
    for n in out.points():
        sym = np.array([a.eval(n, x) for x in nodes], dtype=np.complex128)
        phase = np.exp(2j * np.pi * (nodes @ np.array(n, dtype=np.float64)))
        entries[n] = np.sum(phase * sym * F.values) / grid.node_count
    return sequence(out.dim, entries)


def pdo_matrix(
    a: PdoSymbol, window: Window, grid: TorusGrid, cap: int = MATRIX_CAP
) -> OperatorMatrix:
    """Dense finite section: entry (n, n'') = quadrature of e^{2pi i(n-n'').xi} a(n, xi)."""
    if window.cardinality > cap:
        raise ValueError(f"window cardinality {window.cardinality} exceeds cap {cap}")
    pts = np.array(window.points(), dtype=np.float64)
    nodes = grid.nodes()
    phase_out = np.exp(2j * np.pi * (pts @ nodes.T))
    sym = np.array(
        [[a.eval(tuple(int(c) for c in n), x) for x in nodes] for n in pts],
        dtype=np.complex128,
    )
    phase_in = np.exp(-2j * np.pi * (pts @ nodes.T))
    entries = (phase_out * sym) @ phase_in.T / grid.node_count
    return OperatorMatrix(window, entries)


def apply_matrix(A: OperatorMatrix, f: LatticeSequence) -> LatticeSequence:
    pts = A.window.points()
    vec = np.array([f[p] for p in pts], dtype=np.complex128)
    out = A.entries @ vec
    return sequence(A.window.dim, zip(pts, out))


@dataclass(frozen=True)
class OpNormEstimate:
    """Operator-norm value with a truncation certificate.

    certified=False means l^1 mass escaped the dilated kernel window, so the
    value is only a lower bound on the true norm over all of Z^n.
    """

    value: float
    certified: bool
    discarded_mass: float


def _kernel_with_certificate(
    m: MultiplierSymbol, grid: TorusGrid, window: Window
) -> tuple[LatticeSequence, bool, float]:
    # Kernel computed on a 3x-radius window; the margin shell must carry
    # less than 1e-9 of the total l^1 mass for the truncation to be certified.
    wide = window.dilate(3)
    k = inverse_dft(sample_multiplier(m, grid), wide)
    total = lp_norm(k, 1)
    shell = sum(abs(v) for i, v in k.entries.items() if i not in window)
    certified = total == 0 or shell < 1e-9 * total
    return k, certified, shell


def opnorm_l1_weakp(
    m: MultiplierSymbol, p: float, grid: TorusGrid, window: Window
) -> OpNormEstimate:
    """||t_m||_{B(l^1, l^{p,inf})} = weak norm of the kernel F^{-1} m."""
    k, certified, shell = _kernel_with_certificate(m, grid, window)
    return OpNormEstimate(weak_norm(k, p), certified, shell)


def opnorm_l1_lp(
    m: MultiplierSymbol, p: float, grid: TorusGrid, window: Window
) -> OpNormEstimate:
    """||t_m||_{B(l^1, l^p)} = l^p norm of the kernel F^{-1} m."""
    k, certified, shell = _kernel_with_certificate(m, grid, window)
    return OpNormEstimate(lp_norm(k, p), certified, shell)


def opnorm_l2(A: OperatorMatrix, tol: float = 1e-10, max_iter: int = 2000) -> float:
    """Largest singular value by power iteration on A*A.

    Deterministic all-ones start, Rayleigh-quotient stopping at relative tol.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    return float(np.sqrt(_top_eig_hermitian(
        A.entries.conj().T @ A.entries, tol=tol, max_iter=max_iter
    )[0]))


def _top_eig_hermitian(
    B: np.ndarray,
    tol: float,
    max_iter: int,
    orth: np.ndarray | None = None,
) -> tuple[float, np.ndarray]:
    """Top eigenpair of Hermitian PSD B, optionally deflated against `orth`."""
    side = B.shape[0]

    def project(v):
        if orth is not None and orth.shape[1] > 0:
            v = v - orth @ (orth.conj().T @ v)
        return v

    # All-ones start; fall back to basis vectors if it dies under deflation.
    starts = [np.ones(side, dtype=np.complex128)] + [
        np.eye(side, dtype=np.complex128)[:, i] for i in range(side)
    ]
    v = None
    for cand in starts:
        cand = project(cand)
        nrm = np.linalg.norm(cand)
        if nrm > 1e-12:
            v = cand / nrm
            break
    if v is None:
        return 0.0, np.zeros(side, dtype=np.complex128)

    rayleigh = float(np.real(v.conj() @ B @ v))
    for _ in range(max_iter):
        w = project(B @ v)
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0, v
        v = w / nrm
        new = float(np.real(v.conj() @ B @ v))
        if abs(new - rayleigh) <= tol * max(abs(new), 1e-300):
            return max(new, 0.0), v
        rayleigh = new
    raise RuntimeError(f"power iteration did not converge in {max_iter} iterations")


def conjugation_residual(
    a: PdoSymbol, grid: TorusGrid, window: Window
) -> float:
    """Max entrywise deviation between the finite section of t_m and F^{-1} A* F.

    The periodic operator A acts on grid samples with frequency set equal to
    the window, using the symbol a_per(x, k) = conj(a(-k, x)); small residual
    certifies the conjugation identity numerically.
    """
    if a.dim != grid.dim or a.dim != window.dim:
        raise ValueError("dimension mismatch")
    direct = pdo_matrix(a, window, grid).entries

    nodes = grid.nodes()
    freqs = np.array(window.points(), dtype=np.float64)
    n_nodes = grid.node_count
    # a_per[j, k] = conj(a(-k, x_j))
    a_per = np.array(
        [
            [a.eval(neg_index(tuple(int(c) for c in k)), x) for k in freqs]
            for x in nodes
        ],
        dtype=np.complex128,
    ).conj()
    synth = np.exp(2j * np.pi * (nodes @ freqs.T))        # x-synthesis phases
    analy = np.exp(-2j * np.pi * (freqs @ nodes.T)) / n_nodes  # torus Fourier coeffs
    A_grid = (synth * a_per) @ analy

    pts = np.array(window.points(), dtype=np.float64)
    fwd = np.exp(-2j * np.pi * (nodes @ pts.T))            # lattice dft, window -> grid
    inv = np.exp(2j * np.pi * (pts @ nodes.T)) / n_nodes   # quadrature inverse
    conjugated = inv @ A_grid.conj().T @ fwd
    return float(np.max(np.abs(direct - conjugated)))


def save_matrix_csv(A: OperatorMatrix, path) -> None:
    """CSV export (row,col,re,im) with a window header line."""
    w = A.window
    with open(path, "w") as fh:
        fh.write(
            f"dim={w.dim},lo={':'.join(map(str, w.lo))},hi={':'.join(map(str, w.hi))}\n"
        )
        fh.write("row,col,re,im\n")
        side = w.cardinality
        for i in range(side):
            for j in range(side):
                v = A.entries[i, j]
                fh.write(f"{i},{j},{v.real!r},{v.imag!r}\n")
