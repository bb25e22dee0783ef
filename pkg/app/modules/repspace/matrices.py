from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ..algebra import StructurePolynomial
from ..common.export import dense_matrix_csv
from ..common.rational import format_fraction
from .module import LoweringModule


@dataclass(frozen=True)
class OperatorTriple:
    n0: np.ndarray
    nplus: np.ndarray
    nminus: np.ndarray
    labels: List[str]
    weights: Tuple[Fraction, ...]
    truncated: bool

    @property
    def size(self) -> int:
        return self.n0.shape[0]

    @property
    def interior(self) -> int:
        """Number of leading levels on which the band is not cut."""
        return self.size - 1 if self.truncated else self.size


def ladder_matrices(mod: LoweringModule) -> OperatorTriple:
    weights = tuple(mod.weights())
    amplitudes = np.sqrt(mod.s_array()[1:])
    nplus = np.diag(amplitudes, k=-1) if amplitudes.size else np.zeros((1, 1))
    return OperatorTriple(
        n0=np.diag([float(w) for w in weights]),
        nplus=nplus,
        nminus=nplus.T.copy(),
        labels=[f"|{format_fraction(w)}>" for w in weights],
        weights=weights,
        truncated=not mod.is_finite,
    )


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def interior_residual(matrix: np.ndarray, interior: int) -> float:
    if interior <= 0:
        return 0.0
    return float(np.max(np.abs(matrix[:interior, :interior])))


def commutator_residual(t: OperatorTriple, f: StructurePolynomial) -> float:
    """max |[N+, N-] - f(N0)| away from the truncation level, over max(1, max |f(N0)|)."""
    values = np.array([float(f(w)) for w in t.weights])
    scale = max(1.0, float(np.max(np.abs(values))))
    return interior_residual(commutator(t.nplus, t.nminus) - np.diag(values), t.interior) / scale


def triple_to_csv(t: OperatorTriple, which: str) -> str:
    matrices = {"n0": t.n0, "nplus": t.nplus, "nminus": t.nminus}
    if which not in matrices:
        raise KeyError(f"unknown operator {which!r}; expected one of {sorted(matrices)}")
    return dense_matrix_csv(matrices[which])
