"""Self-contained numerical kernels: composite quadrature and a Hermitian eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidRule, NumericalFailure

HERMITIAN_TOL = 1e-12
"Relative Frobenius tolerance for both the input symmetry check and convergence."


@dataclass(frozen=True)
class QuadratureRule:
    """Composite rule over equispaced nodes; Simpson needs an odd node count."""

    kind: str  # "trapezoid" or "simpson"
    nodes: int

    def __post_init__(self) -> None:
        if self.kind not in ("trapezoid", "simpson"):
            raise InvalidRule(f"unknown rule kind {self.kind!r}")
        if self.nodes < 3:
            raise InvalidRule(f"need at least 3 nodes, got {self.nodes}")
        if self.kind == "simpson" and self.nodes % 2 == 0:
            raise InvalidRule(f"composite Simpson needs an odd node count, got {self.nodes}")


def integrate(f: Callable[[float], float], a: float, b: float, rule: QuadratureRule) -> float:
    """Composite trapezoid/Simpson estimate of the integral of f over [a, b].

    Exact for polynomials of degree <= 1 (trapezoid) or <= 3 (Simpson).
    """
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    n = rule.nodes
    h = (b - a) / (n - 1)
    ys = [f(a + i * h) for i in range(n)]
    ys[-1] = f(b)  # avoid drift at the right endpoint
    if rule.kind == "trapezoid":
        total = 0.5 * (ys[0] + ys[-1]) + sum(ys[1:-1])
        return h * total
    total = ys[0] + ys[-1] + 4.0 * sum(ys[1:-1:2]) + 2.0 * sum(ys[2:-1:2])
    return h * total / 3.0


def hermitian_eigenvalues(
    M: np.ndarray,
    tol: float = HERMITIAN_TOL,
    max_sweeps: int = 100,
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi rotations.

    Each sweep visits every upper-triangle pivot and applies the unitary
    2x2 rotation that annihilates it; off-diagonal mass decreases
    monotonically and the iteration stops once its Frobenius norm falls
    below ``tol`` times the matrix norm.

    Raises
    ------
    ValueError
        If the input is not square or not Hermitian to HERMITIAN_TOL.
    NumericalFailure
        If the sweep budget is exhausted before convergence.
    """
    A = np.array(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    fro = float(np.linalg.norm(A))
    if fro == 0.0:
        return np.zeros(n)
    herm_dev = float(np.linalg.norm(A - A.conj().T))
    if herm_dev > HERMITIAN_TOL * fro:
        raise ValueError(f"matrix is not Hermitian: relative deviation {herm_dev / fro:.3e}")
    A = 0.5 * (A + A.conj().T)
    if n == 1:
        return np.array([A[0, 0].real])

    target = tol * fro
    # Pivots this small cannot push the off-norm above target even all together.
    skip = target / (2.0 * n)

    for _ in range(max_sweeps):
        off = _offdiag_norm(A)
        if off <= target:
            break
        for q in range(1, n):
            for p in range(0, q):
                m = abs(A[p, q])
                if m <= skip:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                u = A[p, q] / m
                tau = (aqq - app) / (2.0 * m)
                if tau >= 0.0:
                    t = -1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- U^H A U with U = I except the (p, q) block [[c, -s u], [s conj(u), c]].
                U2 = np.array([[c, -s * u], [s * np.conj(u), c]])
                A[:, [p, q]] = A[:, [p, q]] @ U2
                A[[p, q], :] = U2.conj().T @ A[[p, q], :]
                A[p, p] = app + t * m
                A[q, q] = aqq - t * m
                A[p, q] = 0.0
                A[q, p] = 0.0
    else:
        if _offdiag_norm(A) > target:
            raise NumericalFailure(
                f"Jacobi iteration did not converge within {max_sweeps} sweeps"
            )

    eig = np.real(np.diag(A)).copy()
    eig[::-1].sort()
    return eig


def _offdiag_norm(A: np.ndarray) -> float:
    d = np.diag(np.diag(A))
    return float(np.linalg.norm(A - d))
