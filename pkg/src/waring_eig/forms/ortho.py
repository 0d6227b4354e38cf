"""Exact complex-orthogonal matrices and their action on forms and points."""

from __future__ import annotations

import random
from typing import Sequence

from ..exactnum import ExactMatrix, GaussRat, det_exact, inverse_exact
from .binary import BForm
from .nform import NForm, ProjPoint


class OrthoMatrix:
    """A with AᵀA = I over Q(i).  Complex orthogonal, not unitary."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: ExactMatrix):
        if matrix.rows != matrix.cols:
            raise ValueError("orthogonal matrix must be square")
        if not (matrix.T @ matrix) == ExactMatrix.identity(matrix.rows):
            raise ValueError("matrix is not orthogonal: A^T A != I")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("OrthoMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "OrthoMatrix":
        return cls(ExactMatrix.from_rows(rows))

    @classmethod
    def identity(cls, n: int) -> "OrthoMatrix":
        return cls(ExactMatrix.identity(n))

    @property
    def size(self) -> int:
        return self.matrix.rows

    def __getitem__(self, ij) -> GaussRat:
        return self.matrix[ij]

    def __matmul__(self, other: "OrthoMatrix") -> "OrthoMatrix":
        return OrthoMatrix(self.matrix @ other.matrix)

    def __eq__(self, other):
        return isinstance(other, OrthoMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @property
    def T(self) -> "OrthoMatrix":
        return OrthoMatrix(self.matrix.T)

    def det(self) -> GaussRat:
        return det_exact(self.matrix)

    def to_rows(self):
        return self.matrix.to_rows()

    def __repr__(self):
        return f"OrthoMatrix({self.matrix!r})"


def cayley(S) -> OrthoMatrix:
    """(I - S)(I + S)^{-1} for skew-symmetric S; raises if I + S is singular."""
    S = S if isinstance(S, ExactMatrix) else ExactMatrix.from_rows(S)
    if not (S.T == S.scale(-1)):
        raise ValueError("Cayley transform needs a skew-symmetric matrix")
    eye = ExactMatrix.identity(S.rows)
    return OrthoMatrix((eye - S) @ inverse_exact(eye + S))


def random_ortho(size: int, rng_seed: int | None = None, *, complex_entries: bool = True,
                 allow_reflection: bool = True, max_entry: int = 3) -> OrthoMatrix:
    rng = random.Random(rng_seed)
    while True:
        rows = [[GaussRat(0)] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                re = rng.randint(-max_entry, max_entry)
                im = rng.randint(-max_entry, max_entry) if complex_entries else 0
                den = rng.randint(1, max_entry)
                rows[i][j] = GaussRat(re, im) / den
                rows[j][i] = -rows[i][j]
        try:
            A = cayley(rows)
        except ZeroDivisionError:
            continue
        if allow_reflection and size and rng.random() < 0.5:
            R = ExactMatrix.from_rows([[(-1 if i == j == 0 else int(i == j)) for j in range(size)]
                                       for i in range(size)])
            A = OrthoMatrix(A.matrix @ R)
        return A


def _check(A: OrthoMatrix, nvars: int):
    if A.size != nvars:
        raise ValueError(f"matrix size {A.size} does not match {nvars} variables")


def ortho_act(A: OrthoMatrix, F):
    """(A·F)(x) = F(Aᵀx)."""
    binary = isinstance(F, BForm)
    G = F.to_nform() if binary else F
    if not isinstance(G, NForm):
        raise TypeError("ortho_act expects a BForm or NForm")
    _check(A, G.nvars)
    n = G.nvars
    images = [NForm.linear([A[j, i] for j in range(n)]) for i in range(n)]
    out = G.substitute(images)
    return BForm.from_nform(out) if binary else out


def ortho_act_point(A: OrthoMatrix, p: ProjPoint) -> ProjPoint:
    _check(A, len(p.coords))
    n = A.size
    if p.exact:
        return ProjPoint([sum((A[i, j] * p.coords[j] for j in range(n)), GaussRat(0)) for i in range(n)])
    z = p.to_complex()
    return ProjPoint([sum(complex(A[i, j]) * z[j] for j in range(n)) for i in range(n)], exact=False)
