"""Finite-dimensional quotients ``S/I`` (``I`` zero-dimensional) as F_p vector
spaces on a standard monomial basis, with multiplication matrices.

Used to compute colons and local components by linear algebra instead of
further Groebner bases.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

import numpy as np

from .polycore import Poly


def rref_mod_p(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of ``A`` over F_p and the pivot columns."""
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def matmul_mod_p(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p``; float64 BLAS when every partial sum stays below 2^53."""
    if A.shape[1] * (p - 1) ** 2 < 2 ** 53:
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.rint(C).astype(np.int64) % p
    return (A @ B) % p


def rank_mod_p(A: np.ndarray, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{v : A v = 0}`` over F_p, one vector per row."""
    rows, cols = A.shape
    R, piv = rref_mod_p(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-R[i, fc]) % p
    return out


class ArtinianQuotient:
    """``S/I`` for a zero-dimensional ideal ``I``."""

    def __init__(self, I, limit: int = 5000):
        self.ideal = I
        self.ring = I.ring
        self.p = I.ring.p
        self.G = I.gb()
        self.basis = self.G.standard_monomials(limit=limit)
        self.index: Dict[tuple, int] = {m: k for k, m in enumerate(self.basis)}
        self._var_mats: Dict[int, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Poly) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in self.G.reduce(f)._d.items():
            v[self.index[m]] = c
        return v

    def element(self, v) -> Poly:
        return Poly(self.ring, {self.basis[k]: int(c) for k, c in enumerate(v) if c})

    def var_matrix(self, i: int) -> np.ndarray:
        """Matrix of multiplication by ``x_i``; column ``k`` is the image of basis element ``k``."""
        M = self._var_mats.get(i)
        if M is None:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            for k, m in enumerate(self.basis):
                nm = m[:i] + (m[i] + 1,) + m[i + 1:]
                j = self.index.get(nm)
                if j is not None:
                    M[j, k] = 1
                else:
                    M[:, k] = self.coords(self.ring.monomial(nm))
            self._var_mats[i] = M
        return M

    def matrix_of(self, g: Poly) -> np.ndarray:
        """Multiplication by ``g``, assembled from the variable matrices."""
        p = self.p
        g = self.G.reduce(g)
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        powers: Dict[Tuple[int, int], np.ndarray] = {}

        def var_power(i: int, e: int) -> np.ndarray:
            key = (i, e)
            if key not in powers:
                powers[key] = self.var_matrix(i) if e == 1 else matmul_mod_p(var_power(i, e - 1), self.var_matrix(i), p)
            return powers[key]

        for m, c in g._d.items():
            T = np.eye(self.dim, dtype=np.int64)
            for i, e in enumerate(m):
                if e:
                    T = matmul_mod_p(T, var_power(i, e), p)
            out = (out + c * T) % p
        return out

    def annihilator_lifts(self, g: Poly) -> List[Poly]:
        """Elements ``h`` spanning ``{h : g h ∈ I}`` modulo ``I``."""
        K = nullspace_mod_p(self.matrix_of(g), self.p)
        return [self.element(v) for v in K]

    def stable_exponent(self, i: int) -> int:
        """A power ``k`` (of two, or 0) with ``ker x_i^k = ker x_i^(2k)``; such
        ``k`` is at least the nilpotency index of ``x_i`` on every local factor
        where ``x_i`` is nilpotent, and at most twice that index."""
        p = self.p
        P = self.var_matrix(i)
        r = rank_mod_p(P, p)
        if r == self.dim:
            return 0
        k = 1
        while k <= self.dim:
            P2 = matmul_mod_p(P, P, p)
            r2 = rank_mod_p(P2, p)
            if r2 == r:
                return k
            P, r, k = P2, r2, 2 * k
        return k
