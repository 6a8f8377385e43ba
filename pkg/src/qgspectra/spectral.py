"""Characteristic-polynomial coefficients and their variance, numerically.

Three quantities live here: the coefficient vector of det(U - zeta I) for
one evolution matrix, the Monte Carlo k-average of |a_n|^2, and the
principal-minor oracle sum_{|I|=n} |det S_I|^2 that the k-average
converges to when the bond lengths are incommensurate.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .quantize import BondLengths, BondScattering

DEFAULT_K_MAX = 1e5
_UNITARITY_GATE = 1e-6


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Coefficients of det(U - zeta I) = sum_n values[n] zeta^(B-n).

    values[0] = (-1)^B and |values[B]| = 1 for unitary U; for B even the
    self-inversive symmetry reads values[n] = values[B] * conj(values[B-n]).
    """

    values: np.ndarray
    k: float | None = None

    @property
    def degree(self) -> int:
        return int(self.values.size - 1)


def _coefficients_from_eigenvalues(eigenvalues: np.ndarray) -> np.ndarray:
    """Expand prod_i (lambda_i - zeta) for a stack of eigenvalue rows.

    Input (M, B), output (M, B+1) with column n holding the coefficient of
    zeta^(B-n).  The product is evaluated at the (B+1)-st roots of unity
    and inverted by a DFT.  Multiplying the factors out coefficient by
    coefficient is exact in theory but explodes for unimodular spectra:
    partial products over phase-clustered eigenvalue subsets have
    coefficients up to binomial(B/2, B/4) that cancel only at the very
    end, wiping out all precision near B ~ 100.  Point values stay O(1),
    so interpolation keeps every coefficient near machine accuracy.
    """
    M, B = eigenvalues.shape
    K = B + 1
    points = np.exp(2j * np.pi * np.arange(K) / K)
    values = np.ones((M, K), dtype=complex)
    for i in range(B):
        values *= eigenvalues[:, i, None] - points[np.newaxis, :]
    # p(zeta) = sum_m c_m zeta^m; forward DFT of the point values / K
    c = np.fft.fft(values, axis=-1) / K
    c[:, B] = (-1.0) ** B  # leading coefficient is exact for any spectrum
    return c[:, ::-1]


def char_poly_coefficients(
    U: np.ndarray, k: float | None = None, require_unitary: bool = True
) -> CoefficientVector:
    """All B+1 coefficients of det(U - zeta I) via the eigenvalue product.

    Expanding from eigenvalues keeps every coefficient accurate even where
    direct expansion of the determinant would lose digits.  Grossly
    non-unitary input is rejected unless ``require_unitary`` is switched
    off (useful only for negative controls).
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("U must be a square matrix")
    if require_unitary:
        B = U.shape[0]
        defect = float(np.linalg.norm(U.conj().T @ U - np.eye(B)))
        if defect > _UNITARITY_GATE:
            raise ValueError(f"input is not unitary (defect {defect:.3e})")
    eigenvalues = np.linalg.eigvals(U)
    values = _coefficients_from_eigenvalues(eigenvalues[np.newaxis, :])[0]
    return CoefficientVector(values=values, k=k)


def riemann_siegel_residual(coefficients: CoefficientVector) -> float:
    """Max deviation from the self-inversive symmetry
    a_n = a_B conj(a_{B-n}); near machine precision for unitary input."""
    a = coefficients.values
    return float(np.max(np.abs(a - a[-1] * np.conj(a[::-1]))))


@dataclass(frozen=True)
class VarianceEstimate:
    """Monte Carlo estimate of <|a_n|^2> with its standard error."""

    n: int
    mean: float
    std_error: float
    samples: int
    seed: int
    k_max: float


def mc_variance(
    S: BondScattering,
    lengths: BondLengths,
    n_set: Iterable[int] | None = None,
    samples: int = 100_000,
    seed: int = 0,
    k_max: float = DEFAULT_K_MAX,
    *,
    threads: int = 1,
    batch_size: int | None = None,
) -> list[VarianceEstimate]:
    """Average |a_n|^2 over k drawn uniformly from [0, k_max).

    A counter-based generator keyed on ``seed`` fixes the k sample, and
    per-batch partial sums are reduced in batch order, so results are
    bit-identical for a given (samples, seed, k_max) regardless of thread
    count.  Eigenvalue failures of individual batches propagate.
    """
    B = S.num_bonds
    if len(lengths) != B:
        raise ValueError("scattering matrix and length vector disagree on the bond count")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if not k_max > 0:
        raise ValueError("k_max must be positive")
    if S.unitarity_defect() > _UNITARITY_GATE:
        raise ValueError("scattering matrix is not unitary")
    ns = sorted(range(B + 1) if n_set is None else {int(n) for n in n_set})
    if ns and not (0 <= ns[0] and ns[-1] <= B):
        raise ValueError(f"coefficient indices must lie in 0..{B}")

    rng = np.random.Generator(np.random.Philox(key=seed))
    ks = rng.uniform(0.0, float(k_max), samples)
    if batch_size is None:
        batch_size = max(256, min(16384, 4_000_000 // (B * B)))
    starts = range(0, samples, batch_size)

    matrix = S.matrix
    length_values = lengths.values

    def run_batch(start: int) -> tuple[np.ndarray, np.ndarray]:
        k_batch = ks[start : start + batch_size]
        phases = np.exp(1j * np.outer(k_batch, length_values))
        U = matrix[np.newaxis, :, :] * phases[:, np.newaxis, :]
        eigenvalues = np.linalg.eigvals(U)
        power = np.abs(_coefficients_from_eigenvalues(eigenvalues)) ** 2
        return power.sum(axis=0), (power * power).sum(axis=0)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run_batch, starts))
    else:
        partials = [run_batch(s) for s in starts]

    total = np.zeros(B + 1)
    total_sq = np.zeros(B + 1)
    for part_sum, part_sq in partials:  # fixed order: independent of scheduling
        total += part_sum
        total_sq += part_sq

    out = []
    for n in ns:
        mean = total[n] / samples
        var = max(0.0, (total_sq[n] - samples * mean * mean) / (samples - 1))
        out.append(
            VarianceEstimate(
                n=n,
                mean=float(mean),
                std_error=float(math.sqrt(var / samples)),
                samples=samples,
                seed=seed,
                k_max=float(k_max),
            )
        )
    return out


def subset_contribution(
    S: BondScattering, subset: Iterable[int]
) -> tuple[float, int | None]:
    """(|det S_I|^2, N) for one bond subset I.

    N counts the vertices with two subset bonds through them.  Unbalanced
    subsets have a structurally zero minor and return (0.0, None).
    """
    graph = S.graph
    subset_t = tuple(sorted({int(b) for b in subset}))
    for b in subset_t:
        if not 0 <= b < S.num_bonds:
            raise ValueError(f"unknown bond id {b}")
    ins: dict[int, int] = {}
    outs: dict[int, int] = {}
    for b in subset_t:
        outs[graph.origin(b)] = outs.get(graph.origin(b), 0) + 1
        ins[graph.terminus(b)] = ins.get(graph.terminus(b), 0) + 1
    if ins != outs:
        return 0.0, None
    N = sum(1 for c in ins.values() if c == 2)
    if not subset_t:
        return 1.0, 0
    idx = np.array(subset_t)
    minor = S.matrix[np.ix_(idx, idx)]
    return float(abs(np.linalg.det(minor)) ** 2), N


def minor_sum_variance(S: BondScattering, n: int) -> float:
    """Oracle: sum_{|I|=n} |det S_I|^2 over all n-bond principal minors.

    Exhaustive over binomial(B, n) subsets, determinants evaluated in
    batches; this is the incommensurate-lengths limit of the k-average.
    """
    B = S.num_bonds
    if not 0 <= n <= B:
        raise ValueError(f"n must lie in 0..{B}")
    if n == 0:
        return 1.0
    chunk = max(1, 4_000_000 // (n * n))
    total = 0.0
    combos = itertools.combinations(range(B), n)
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.array(block)
        minors = S.matrix[idx[:, :, np.newaxis], idx[:, np.newaxis, :]]
        total += float(np.sum(np.abs(np.linalg.det(minors)) ** 2))
    return total


def exhaustive_minor_count(B: int, n: int) -> int:
    """Number of principal minors the oracle would visit."""
    return math.comb(B, n)
