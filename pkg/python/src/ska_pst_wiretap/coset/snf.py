# -*- coding: utf-8 -*-
#
# This file is part of the SKA PST WIRETAP project
#
# Distributed under the terms of the BSD 3-clause new license.
# See LICENSE for more info.
"""
This module provides the Smith normal form of a non-singular integer matrix.

An integer matrix ``B`` is reduced to ``D = P B Q`` with ``P`` and ``Q``
unimodular and ``D`` diagonal with ``d_1 | d_2 | ... | d_n``, by elementary
row and column operations. The inverses of ``P`` and ``Q`` are tracked along
the way so that ``B = U D V`` with ``U = P^-1`` and ``V = Q^-1`` is available
without a matrix inversion. All arithmetic uses Python integers.
"""

from __future__ import annotations

__all__ = [
    "SmithNormalForm",
    "smith_normal_form",
]

import logging
from dataclasses import dataclass
from typing import List, Literal, Sequence

import nptyping as npt
import numpy as np
from ska_pst_wiretap.errors import InvalidLatticeError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@dataclass(kw_only=True, frozen=True, eq=False)
class SmithNormalForm:
    """
    Data class modelling the Smith normal form ``B = U D V``.

    :ivar u: the unimodular left factor.
    :vartype u: npt.NDArray[Literal["N, N"], npt.Int64]
    :ivar d: the diagonal entries ``d_1 | d_2 | ... | d_n``, all positive.
    :vartype d: npt.NDArray[Literal["N"], npt.Int64]
    :ivar v: the unimodular right factor.
    :vartype v: npt.NDArray[Literal["N, N"], npt.Int64]
    :ivar u_inv: the inverse of ``u``.
    :vartype u_inv: npt.NDArray[Literal["N, N"], npt.Int64]
    :ivar v_inv: the inverse of ``v``.
    :vartype v_inv: npt.NDArray[Literal["N, N"], npt.Int64]
    """

    u: npt.NDArray[Literal["N, N"], npt.Int64]
    d: npt.NDArray[Literal["N"], npt.Int64]
    v: npt.NDArray[Literal["N, N"], npt.Int64]
    u_inv: npt.NDArray[Literal["N, N"], npt.Int64]
    v_inv: npt.NDArray[Literal["N, N"], npt.Int64]

    @property
    def diagonal(self: SmithNormalForm) -> npt.NDArray[Literal["N, N"], npt.Int64]:
        """Get ``D`` as a square matrix."""
        return np.diag(self.d)

    @property
    def index(self: SmithNormalForm) -> int:
        """Get ``|det B|``, the product of the diagonal entries."""
        return int(np.prod([int(x) for x in self.d], dtype=object))

    def reconstruct(self: SmithNormalForm) -> npt.NDArray[Literal["N, N"], npt.Int64]:
        """Get ``U D V``."""
        return self.u @ self.diagonal @ self.v


class _SmithReducer:
    """Reduces an integer matrix in place while tracking the transforms."""

    def __init__(self: _SmithReducer, matrix: IntMatrix) -> None:
        n = len(matrix)
        self.n = n
        self.a = [list(row) for row in matrix]
        self.p = _identity(n)
        self.p_inv = _identity(n)
        self.q = _identity(n)
        self.q_inv = _identity(n)

    # row operations act as a <- E a, p <- E p, p_inv <- p_inv E^-1
    def _swap_rows(self: _SmithReducer, i: int, j: int) -> None:
        for m in (self.a, self.p):
            (m[i], m[j]) = (m[j], m[i])
        for row in self.p_inv:
            (row[i], row[j]) = (row[j], row[i])

    def _add_row(self: _SmithReducer, src: int, dst: int, k: int) -> None:
        for m in (self.a, self.p):
            m[dst] = [x + k * y for (x, y) in zip(m[dst], m[src])]
        for row in self.p_inv:
            row[src] -= k * row[dst]

    def _negate_row(self: _SmithReducer, i: int) -> None:
        for m in (self.a, self.p):
            m[i] = [-x for x in m[i]]
        for row in self.p_inv:
            row[i] = -row[i]

    # column operations act as a <- a F, q <- q F, q_inv <- F^-1 q_inv
    def _swap_cols(self: _SmithReducer, i: int, j: int) -> None:
        for m in (self.a, self.q):
            for row in m:
                (row[i], row[j]) = (row[j], row[i])
        (self.q_inv[i], self.q_inv[j]) = (self.q_inv[j], self.q_inv[i])

    def _add_col(self: _SmithReducer, src: int, dst: int, k: int) -> None:
        for m in (self.a, self.q):
            for row in m:
                row[dst] += k * row[src]
        self.q_inv[src] = [x - k * y for (x, y) in zip(self.q_inv[src], self.q_inv[dst])]

    def _pivot(self: _SmithReducer, t: int) -> bool:
        """Move the smallest non-zero entry of the trailing block to (t, t)."""
        candidates = [(abs(self.a[i][j]), i, j) for i in range(t, self.n) for j in range(t, self.n) if self.a[i][j] != 0]
        if not candidates:
            return False
        (_, i, j) = min(candidates)
        if i != t:
            self._swap_rows(t, i)
        if j != t:
            self._swap_cols(t, j)
        return True

    def _clear(self: _SmithReducer, t: int) -> bool:
        """Reduce row and column t by the pivot; True when both are cleared."""
        a = self.a
        pivot = a[t][t]
        for i in range(t + 1, self.n):
            if a[i][t] != 0:
                self._add_row(t, i, -(a[i][t] // pivot))
        for j in range(t + 1, self.n):
            if a[t][j] != 0:
                self._add_col(t, j, -(a[t][j] // pivot))

        return all(a[i][t] == 0 for i in range(t + 1, self.n)) and all(a[t][j] == 0 for j in range(t + 1, self.n))

    def run(self: _SmithReducer) -> None:
        for t in range(self.n):
            if not self._pivot(t):
                raise InvalidLatticeError("the relation matrix is singular")

            while True:
                if not self._clear(t):
                    self._pivot(t)
                    continue

                # divisibility: fold a row with a non-multiple into row t and start again
                pivot = self.a[t][t]
                offender = next(
                    (i for i in range(t + 1, self.n) if any(self.a[i][j] % pivot for j in range(t + 1, self.n))),
                    None,
                )
                if offender is None:
                    break
                self._add_row(offender, t, 1)

            if self.a[t][t] < 0:
                self._negate_row(t)


def smith_normal_form(matrix: Sequence[Sequence[int]] | npt.NDArray) -> SmithNormalForm:
    """
    Get the Smith normal form of a non-singular square integer matrix.

    :param matrix: the integer matrix ``B``.
    :return: ``U``, ``D``, ``V`` (and the inverses of ``U`` and ``V``) with ``B = U D V``.
    :raises InvalidLatticeError: if the matrix is singular.
    """
    rows = [[int(x) for x in row] for row in np.asarray(matrix)]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise InvalidLatticeError(f"expected a non-empty square matrix, got {n} rows")

    reducer = _SmithReducer(rows)
    reducer.run()

    d = [reducer.a[i][i] for i in range(n)]
    assert _matmul(_matmul(reducer.p, rows), reducer.q) == [
        [d[i] if i == j else 0 for j in range(n)] for i in range(n)
    ], "expected P B Q to be diagonal"

    logger.debug(f"Smith normal form diagonal {d}")
    return SmithNormalForm(
        u=np.array(reducer.p_inv, dtype=np.int64),
        d=np.array(d, dtype=np.int64),
        v=np.array(reducer.q_inv, dtype=np.int64),
        u_inv=np.array(reducer.p, dtype=np.int64),
        v_inv=np.array(reducer.q, dtype=np.int64),
    )
