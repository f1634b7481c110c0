"""
Exact integer linear algebra on IntMatrix.

Rank comes from fraction-free (Bareiss) elimination and the characteristic
polynomial from the division-free Berkowitz recurrence, so no rational or
floating arithmetic ever decides a nullity. A Jacobi rotation solver provides
float eigenvalues for the interlacing checks.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from netlap.core import IntMatrix, SignedGraph, net_laplacian
from netlap.errors import InputError, NumericError
from netlap.settings import get_settings


class CharPoly(BaseModel):
    """det(xI - M) = sum_k coeffs[k] * x**k."""

    model_config = ConfigDict(frozen=True)

    coeffs: tuple[int, ...] = Field(description="c_0 .. c_n, lowest degree first")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def trailing_zeros(self) -> int:
        """Multiplicity of the root 0."""
        count = 0
        for c in self.coeffs:
            if c != 0:
                break
            count += 1
        return count

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            power = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            magnitude = "" if abs(c) == 1 and k > 0 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{magnitude}{power}"))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(f" {sign} {body}" for sign, body in terms[1:])


class SpectralSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    rank: int
    nullity: int
    inertia: tuple[int, int, int] = Field(description="(positive, negative, zero) eigenvalue counts")
    eigenvalues: tuple[float, ...] = Field(description="float eigenvalues, non-increasing")


def rank_exact(M: IntMatrix) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    a = M.rows()
    n = M.order
    rank = 0
    previous_pivot = 1
    for col in range(n):
        pivot_row = next((r for r in range(rank, n) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != rank:
            a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        pivot_line = a[rank]
        for r in range(rank + 1, n):
            line = a[r]
            factor = line[col]
            for c in range(col + 1, n):
                # exact division (Sylvester's identity)
                line[c] = (pivot * line[c] - factor * pivot_line[c]) // previous_pivot
            line[col] = 0
        previous_pivot = pivot
        rank += 1
        if rank == n:
            break
    return rank


def nullity(g: SignedGraph) -> int:
    """Multiplicity of 0 as an eigenvalue of the net Laplacian."""
    return g.n - rank_exact(net_laplacian(g))


def rank(g: SignedGraph) -> int:
    return rank_exact(net_laplacian(g))


def char_poly(M: IntMatrix) -> CharPoly:
    """
    Characteristic polynomial by Berkowitz's algorithm.

    Grows the leading principal submatrix one row at a time; the new
    polynomial is a lower-triangular Toeplitz product with the old one, with
    first column (1, -a, -R S, -R A S, ..., -R A^(k-1) S). Integer arithmetic
    only.
    """
    a = M.entries
    n = M.order
    if n == 0:
        return CharPoly(coeffs=(1,))
    poly = [1, -a[0][0]]  # highest degree first
    for k in range(1, n):
        row = a[k][:k]
        column = [a[i][k] for i in range(k)]
        toeplitz = [1, -a[k][k]]
        vector = column
        for _ in range(k):
            toeplitz.append(-sum(r * x for r, x in zip(row, vector)))
            vector = [sum(a[i][j] * vector[j] for j in range(k)) for i in range(k)]
        poly = [
            sum(toeplitz[i - j] * poly[j] for j in range(max(0, i - k - 1), min(i, k) + 1))
            for i in range(k + 2)
        ]
    return CharPoly(coeffs=tuple(reversed(poly)))


def _sign_variations(values: list[int]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def inertia(M: IntMatrix) -> tuple[int, int, int]:
    """
    Exact (positive, negative, zero) eigenvalue counts of a symmetric matrix.

    The spectrum is real, so Descartes' rule of signs on the characteristic
    polynomial counts the positive roots exactly.
    """
    if not M.is_symmetric():
        raise InputError("inertia needs a symmetric matrix")
    poly = char_poly(M)
    zeros = poly.trailing_zeros()
    positive = _sign_variations(list(reversed(poly.coeffs[zeros:])))
    return positive, M.order - positive - zeros, zeros


def spectral_radius_bound(M: IntMatrix) -> int:
    """Largest absolute row sum; bounds every eigenvalue in modulus."""
    return max((sum(abs(x) for x in row) for row in M.entries), default=0)


def zero_tolerance(M: IntMatrix) -> float:
    return get_settings().zero_tolerance * (1 + spectral_radius_bound(M))


def eigenvalues_float(M: IntMatrix) -> list[float]:
    """
    All eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, sorted
    non-increasing. Raises NumericError if the sweeps do not converge or a
    residual |Mv - lambda v| stays above tolerance.
    """
    if not M.is_symmetric():
        raise InputError("eigenvalues_float needs a symmetric matrix")
    n = M.order
    if n == 0:
        return []
    settings = get_settings()
    a = np.array(M.entries, dtype=float)
    v = np.eye(n)
    scale = 1.0 + spectral_radius_bound(M)
    converged = False
    for _ in range(settings.jacobi_max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= 1e-12 * scale:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    if not converged:
        raise NumericError(
            f"Jacobi sweeps did not converge after {settings.jacobi_max_sweeps} sweeps", M.rows()
        )

    values = np.diag(a).copy()
    original = np.array(M.entries, dtype=float)
    residuals = np.linalg.norm(original @ v - v * values, axis=0)
    if float(np.max(residuals)) > settings.zero_tolerance * scale:
        raise NumericError(f"eigen residual {float(np.max(residuals)):.3e} above tolerance", M.rows())
    return sorted((float(x) for x in values), reverse=True)


def float_nullity(M: IntMatrix) -> int:
    tol = zero_tolerance(M)
    return sum(1 for x in eigenvalues_float(M) if abs(x) <= tol)


def spectral_summary(g: SignedGraph) -> SpectralSummary:
    L = net_laplacian(g)
    r = rank_exact(L)
    return SpectralSummary(
        rank=r,
        nullity=g.n - r,
        inertia=inertia(L),
        eigenvalues=tuple(eigenvalues_float(L)),
    )
