"""Discrete fractional integral operators on Z.

The operator with parameters (k, lambda, gamma) convolves with the kernel
supported on the k-th powers m^k, m >= 1, with values m^{-lambda - i gamma}.
Closed-form strong and weak norms, boundedness classification, symbol partial
sums and the L^{2k} norm probe all live here.  Divergent norms are reported
through an explicit flag, never as a floating-point infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeSequence, Window, sequence
from .torus import TorusGrid, TorusSamples, lq_torus_norm


@dataclass(frozen=True)
class FractionalParams:
    """(power, decay, oscillation) = the textbook parameters (k, lambda, gamma)."""

    power: int
    decay: float
    oscillation: float = 0.0

    def __post_init__(self):
        if self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")
        if not 0 < self.decay <= 1:
            raise ValueError(f"decay must lie in (0, 1], got {self.decay}")


@dataclass(frozen=True)
class NormResult:
    """A norm value that may diverge; `value` is None iff divergent."""

    divergent: bool
    value: float | None = None

    def __float__(self) -> float:
        if self.divergent:
            raise ValueError("divergent norm has no finite value")
        return self.value


def fractional_kernel(params: FractionalParams, max_m: int) -> LatticeSequence:
    """Truncated kernel: value m^{-decay} e^{-i gamma ln m} at m^power, m <= max_m."""
    if max_m < 1:
        raise ValueError(f"max_m must be >= 1, got {max_m}")
    k, lam, gam = params.power, params.decay, params.oscillation
    m = np.arange(1, max_m + 1, dtype=np.float64)
    vals = m ** (-lam) * np.exp(-1j * gam * np.log(m))
    return LatticeSequence(
        1, {(int(i) ** k,): complex(v) for i, v in zip(range(1, max_m + 1), vals)}
    )


def apply_fractional(
    params: FractionalParams, f: LatticeSequence, out: Window
) -> LatticeSequence:
    """Exact application on an output window: sum over m with n - m^power in supp(f).

    For each support point only finitely many shifts land inside the window,
    so there is no truncation error.
    """
    if f.dim != 1 or out.dim != 1:
        raise ValueError("fractional operators act on dimension-1 sequences")
    k, lam, gam = params.power, params.decay, params.oscillation
    hi = out.hi[0]
    entries: dict[tuple, complex] = {}
    for (s,), v in f.entries.items():
        m = 1
        while s + m**k <= hi:
            n = s + m**k
            if n >= out.lo[0]:
                w = v * m ** (-lam) * np.exp(-1j * gam * math.log(m))
                entries[(n,)] = entries.get((n,), 0j) + complex(w)
            m += 1
    return sequence(1, entries)


def weak_norm_closed_form(params: FractionalParams, p: float) -> NormResult:
    """Weak-l^{p,inf} norm of the full kernel: 1 when decay >= 1/p, else divergent.

    The alpha-supremum collapses to sup_{m>=1} m^{1/p - decay} because the
    rearranged kernel magnitudes are exactly j^{-decay}.
    """
    if p <= 1:
        raise ValueError(f"p must be > 1, got {p}")
    if params.decay >= 1.0 / p:
        return NormResult(divergent=False, value=1.0)
    return NormResult(divergent=True)


def zeta(s: float, terms: int = 10**6) -> float:
    """Riemann zeta for s > 1 by partial sum plus Euler-Maclaurin tail.

    Tail = N^{1-s}/(s-1) - N^{-s}/2 + s N^{-s-1}/12 - s(s+1)(s+2) N^{-s-3}/720;
    the first omitted term is O(s^5 N^{-s-5}), far below 1e-10 for s >= 1.1
    and N = 10^6.
    """
    if s <= 1:
        raise ValueError(f"zeta partial-sum evaluation needs s > 1, got {s}")
    n = np.arange(1, terms + 1, dtype=np.float64)
    partial = float(np.sum(n**-s))
    N = float(terms)
    tail = (
        N ** (1 - s) / (s - 1)
        - N**-s / 2.0
        + s * N ** (-s - 1) / 12.0
        - s * (s + 1) * (s + 2) * N ** (-s - 3) / 720.0
    )
    return partial + tail


def strong_norm_closed_form(params: FractionalParams, p: float) -> NormResult:
    """l^p norm of the full kernel: zeta(decay*p)^{1/p} when decay*p > 1."""
    if p <= 1:
        raise ValueError(f"p must be > 1, got {p}")
    s = params.decay * p
    if s <= 1:
        return NormResult(divergent=True)
    return NormResult(divergent=False, value=zeta(s) ** (1.0 / p))


@dataclass(frozen=True)
class TypeVerdict:
    weak_1p: bool
    strong_1p: bool


def classify_weak_and_strong(params: FractionalParams, p: float) -> TypeVerdict:
    """Weak type (1,p) iff decay >= 1/p; l^1 -> l^p bounded iff decay > 1/p."""
    if p <= 1:
        raise ValueError(f"p must be > 1, got {p}")
    return TypeVerdict(
        weak_1p=params.decay >= 1.0 / p, strong_1p=params.decay > 1.0 / p
    )


def classify_conjecture1(p: float, q: float, lam: float, k: int) -> bool:
    """Predicted l^q -> l^p boundedness for the fractional operator.

    Conjunction of 1/p <= 1/q - (1-lam)/k with 1/p < lam and 1/q > 1 - lam.
    At q = 1 this reduces to the proven strong-type threshold lam > 1/p.
    """
    if not (1 <= q < p):
        raise ValueError(f"need 1 <= q < p, got q={q}, p={p}")
    if not 0 < lam < 1:
        raise ValueError(f"need 0 < lam < 1, got {lam}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return (
        1.0 / p <= 1.0 / q - (1.0 - lam) / k
        and 1.0 / p < lam
        and 1.0 / q > 1.0 - lam
    )


@dataclass(frozen=True, eq=False)
class SymbolPartialSum:
    """Partial sum of the fractional symbol with its L^2 truncation tail.

    l2_tail bounds the L^2(T) distance to the full symbol via Parseval; it is
    None when decay <= 1/2 (the tail series diverges there).
    """

    samples: TorusSamples
    terms: int
    l2_tail: float | None


def symbol_partial_sum(
    params: FractionalParams, terms: int, grid: TorusGrid
) -> SymbolPartialSum:
    """sum_{m<=terms} e^{-2 pi i m^power xi} / m^{decay + i oscillation} on the grid."""
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    if grid.dim != 1:
        raise ValueError("fractional symbols live on the 1-dimensional torus")
    k, lam, gam = params.power, params.decay, params.oscillation
    m = np.arange(1, terms + 1, dtype=np.float64)
    coeff = m ** (-lam) * np.exp(-1j * gam * np.log(m))
    powers = np.array([float(i**k) for i in range(1, terms + 1)])
    xi = grid.nodes()[:, 0]
    vals = np.exp(-2j * np.pi * np.outer(xi, powers)) @ coeff
    if lam > 0.5:
        s = 2.0 * lam
        N = float(terms)
        tail_sq = (
            N ** (1 - s) / (s - 1)
            - N**-s / 2.0
            + s * N ** (-s - 1) / 12.0
        )
        tail = math.sqrt(max(tail_sq, 0.0))
    else:
        tail = None
    return SymbolPartialSum(TorusSamples(grid, vals), terms, tail)


def kstar_norm_probe(
    k: int, lam: float, terms: int, grid: TorusGrid
) -> float:
    """L^{2k}(T) norm of the truncated symbol, the Hypothesis-K* diagnostic.

    Purely a probe: no convergence in `terms` is asserted anywhere.  The grid
    must resolve the top frequency terms^k.
    """
    if not 0.5 < lam < 1:
        raise ValueError(f"lam must lie in (1/2, 1), got {lam}")
    if grid.resolution < 2 * terms**k:
        raise ValueError(
            f"resolution {grid.resolution} too small for top frequency "
            f"{terms ** k}; need at least {2 * terms ** k}"
        )
    ps = symbol_partial_sum(FractionalParams(k, lam), terms, grid)
    return lq_torus_norm(ps.samples, 2.0 * k)
