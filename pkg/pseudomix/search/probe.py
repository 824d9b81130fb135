"""
Pair probes: product vectors built from one or two basis vectors.

On each factor the probe family holds every basis vector d_p and, for
p < q, the superpositions (d_p + d_q) / sqrt(2) and (d_p + i d_q) / sqrt(2).
If every probe has zero expectation the operator is zero, so the best probe
always certifies a nonzero product-diagonal component.
"""

from itertools import combinations
import logging
from typing import NamedTuple

import numpy as np

from pseudomix.linalg import HermitianState
from pseudomix.search.config import SearchResult
from pseudomix.split import UnitaryPair, objective, two_level_unitary

logger = logging.getLogger(__name__)

PROBE_PHASES = (0.0, np.pi / 2)


class Probe(NamedTuple):
    p: int
    q: int | None = None
    phi: float = 0.0

    def vector(self, d: int) -> np.ndarray:
        return self.completion(d)[:, self.p]

    def completion(self, d: int) -> np.ndarray:
        """A unitary whose column p is this probe (two-level rotation in the identity)."""
        if self.q is None:
            return np.eye(d, dtype=np.complex128)
        return two_level_unitary(d, self.p, self.q, np.pi / 2, self.phi)


def probe_family(d: int) -> list[Probe]:
    """Basis vectors first, then the two-element superpositions."""
    probes = [Probe(p) for p in range(d)]
    for p, q in combinations(range(d), 2):
        probes.extend(Probe(p, q, phi) for phi in PROBE_PHASES)
    return probes


def probe_expectations(
    M: HermitianState,
) -> tuple[np.ndarray, list[Probe], list[Probe]]:
    """<e (x) f|M|e (x) f> for every probe pair, as an (n1, n2) real array."""
    d1, d2 = M.dims.d1, M.dims.d2
    probes1, probes2 = probe_family(d1), probe_family(d2)
    E = np.array([probe.vector(d1) for probe in probes1])
    F = np.array([probe.vector(d2) for probe in probes2])
    values = np.einsum(
        "ai,bj,ijkl,ak,bl->ab", E.conj(), F.conj(), M.tensor(), E, F, optimize=True
    ).real
    return values, probes1, probes2


def pair_probe(M: HermitianState) -> SearchResult:
    """Basis completing the probe pair with the largest |expectation|."""
    values, probes1, probes2 = probe_expectations(M)
    a, b = np.unravel_index(int(np.argmax(np.abs(values))), values.shape)
    first, second = probes1[a], probes2[b]
    basis = UnitaryPair(
        u=first.completion(M.dims.d1), v=second.completion(M.dims.d2)
    )
    expectation = float(values[a, b])
    logger.debug(f"Best probe {first} x {second} with expectation {expectation:.3e}")
    return SearchResult(
        basis=basis,
        objective=objective(M, basis),
        used_probe_fallback=True,
        probe_expectation=expectation,
    )
