"""DFT quantization of 4-regular directed graphs.

Every vertex scatters waves between its two incoming and two outgoing
bonds through the 2x2 discrete-Fourier-transform block.  Assembled
bond-to-bond these blocks form the unitary scattering matrix S, and
together with a vector of incommensurate bond lengths the evolution
operator U(k) = S diag(e^{i k L_b}).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import DirectedGraph, VertexPorts, validate_graph, vertex_ports

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


def dft_vertex_matrix() -> np.ndarray:
    """The 2x2 DFT scattering block, (1/sqrt 2) [[1, 1], [1, -1]].

    Unitary, and democratic: every entry has squared modulus 1/2.  The
    single negative amplitude couples the second in-port to the second
    out-port.
    """
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _INV_SQRT2


def transition_sign(graph: DirectedGraph, bond: int, next_bond: int) -> int:
    """Sign of the scattering amplitude for the step ``bond -> next_bond``.

    -1 exactly when both bonds sit in the second port slot at the shared
    vertex, +1 otherwise; the amplitude itself is this sign times
    1/sqrt(2).  Raises if ``next_bond`` does not start where ``bond`` ends.
    """
    v = graph.terminus(bond)
    if graph.origin(next_bond) != v:
        raise ValueError(f"bonds {bond} -> {next_bond} are not adjacent")
    ports = vertex_ports(graph)
    negative = ports.in_index(v, bond) == 1 and ports.out_index(v, next_bond) == 1
    return -1 if negative else 1


@dataclass(frozen=True, eq=False)
class BondScattering:
    """Unitary B x B bond scattering matrix with its port convention.

    ``matrix[b_out, b_in]`` is the amplitude for entering the vertex along
    ``b_in`` and leaving along ``b_out``; it is nonzero only when ``b_in``
    ends where ``b_out`` starts.
    """

    graph: DirectedGraph
    ports: VertexPorts
    matrix: np.ndarray

    @property
    def num_bonds(self) -> int:
        return self.graph.num_bonds

    def unitarity_defect(self) -> float:
        B = self.matrix.shape[0]
        return float(np.linalg.norm(self.matrix.conj().T @ self.matrix - np.eye(B)))


def build_bond_scattering(graph: DirectedGraph) -> BondScattering:
    """Assemble S from the per-vertex DFT blocks.

    Port slots are positions in the ascending bond-id tuples of
    :class:`VertexPorts`; entry signs therefore agree with
    :func:`transition_sign` by construction.
    """
    report = validate_graph(graph)
    if not report.passed:
        raise ValueError("graph failed validation: " + "; ".join(report.problems))
    ports = report.ports
    sigma = dft_vertex_matrix()
    B = graph.num_bonds
    matrix = np.zeros((B, B), dtype=complex)
    for v in range(graph.vertex_count):
        for col, b_in in enumerate(ports.in_bonds[v]):
            for row, b_out in enumerate(ports.out_bonds[v]):
                matrix[b_out, b_in] = sigma[row, col]
    matrix.flags.writeable = False
    return BondScattering(graph=graph, ports=ports, matrix=matrix)


@dataclass(frozen=True, eq=False)
class BondLengths:
    """Positive, pairwise-distinct bond lengths (the diagonal of L)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float).copy()
        if values.ndim != 1 or values.size == 0:
            raise ValueError("lengths must form a nonempty 1-d vector")
        if not np.all(values > 0):
            raise ValueError("lengths must be strictly positive")
        if np.unique(values).size != values.size:
            raise ValueError("lengths must be pairwise distinct")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


def sample_bond_lengths(
    graph: DirectedGraph, seed: int, interval: tuple[float, float] = (1.0, 2.0)
) -> BondLengths:
    """Draw B i.i.d. uniform lengths from [low, high); deterministic in seed.

    Rational relations between machine reals are measure zero; exact
    collisions, the one case that matters downstream, are removed by
    resampling (itself part of the deterministic stream).
    """
    low, high = float(interval[0]), float(interval[1])
    if not (0 < low < high):
        raise ValueError("interval must satisfy 0 < low < high")
    rng = np.random.default_rng(seed)
    values = rng.uniform(low, high, graph.num_bonds)
    while np.unique(values).size != values.size:  # astronomically rare
        values = rng.uniform(low, high, graph.num_bonds)
    return BondLengths(values=values)


def load_lengths(path: str | Path) -> BondLengths | None:
    """Read the optional ``"lengths"`` entry of a graph JSON file."""
    data = json.loads(Path(path).read_text())
    if "lengths" not in data:
        return None
    return BondLengths(values=np.asarray(data["lengths"], dtype=float))


def evolution_operator(S: BondScattering, lengths: BondLengths, k: float) -> np.ndarray:
    """U(k) = S diag(e^{i k L_b}); unitary for real k."""
    if len(lengths) != S.num_bonds:
        raise ValueError("scattering matrix and length vector disagree on the bond count")
    phases = np.exp(1j * float(k) * lengths.values)
    return S.matrix * phases[np.newaxis, :]


@dataclass(frozen=True, eq=False)
class EvolutionOperator:
    """Callable k -> U(k), bundling a scattering matrix with bond lengths."""

    scattering: BondScattering
    lengths: BondLengths

    def __post_init__(self) -> None:
        if len(self.lengths) != self.scattering.num_bonds:
            raise ValueError("scattering matrix and length vector disagree on the bond count")

    def __call__(self, k: float) -> np.ndarray:
        return evolution_operator(self.scattering, self.lengths, k)
