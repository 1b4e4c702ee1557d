"""Rational regular orthogonal matrices stored exactly.

A RatRegOrtho holds the integer matrix num = l*Q together with the positive
denominator l, kept in lowest terms, so the denominator IS the level of Q.
Orthogonality (num^T num = l^2 I) and regularity (row and column sums all
equal l) are enforced at construction; nothing downstream needs to re-check
them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConjugationError
from .graphs import Graph, walk_matrix
from .intmat import IntMatrix, adjugate, content, det


@dataclass(frozen=True)
class RatRegOrtho:
    num: IntMatrix
    den: int

    def __post_init__(self):
        n = self.num.rows
        if not self.num.is_square:
            raise ValueError("matrix must be square")
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        if content(self.num, self.den) != 1:
            raise ValueError("entries and denominator are not in lowest terms")
        l2 = self.den * self.den
        gram = self.num.T @ self.num
        if gram != IntMatrix.diag([l2] * n):
            raise ValueError("matrix is not orthogonal after scaling")
        ones = (1,) * n
        target = (self.den,) * n
        if self.num.mat_vec(ones) != target or self.num.T.mat_vec(ones) != target:
            raise ValueError("matrix is not regular (row/column sums differ from den)")

    @classmethod
    def from_fraction(cls, num: IntMatrix, den: int) -> "RatRegOrtho":
        """Build from an unreduced (matrix, denominator) pair."""
        if den == 0:
            raise ValueError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = content(num, den)
        if g > 1:
            num = num.map(lambda x: x // g)
            den //= g
        return cls(num, den)

    @classmethod
    def identity(cls, n: int) -> "RatRegOrtho":
        return cls(IntMatrix.identity(n), 1)

    @classmethod
    def from_permutation(cls, perm: tuple[int, ...]) -> "RatRegOrtho":
        """The level-1 matrix carrying a graph to its relabeling v -> perm[v]
        (P[i, perm[i]] = 1, so P^T A P is the relabeled adjacency)."""
        n = len(perm)
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[i][j] = 1
        return cls(IntMatrix(rows), 1)

    @property
    def n(self) -> int:
        return self.num.rows

    @property
    def level(self) -> int:
        return self.den

    def is_permutation(self) -> bool:
        return self.den == 1

    def canonical_key(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """(level, columns of num sorted lex): constant on {Q P : P permutation}."""
        return self.den, tuple(sorted(self.num.T.data))


def level(q: RatRegOrtho) -> int:
    """Smallest positive integer k such that k*Q is integral."""
    return q.den


def from_pair(g: Graph, h: Graph) -> RatRegOrtho:
    """The unique rational regular orthogonal Q with Q^T A(G) Q = A(H).

    Requires g controllable and the pair generalized cospectral; both are
    verified through the construction itself (transpose of
    W(H) W(G)^{-1}, computed exactly via the adjugate over one shared
    denominator, then post-checked).
    """
    if g.n != h.n:
        raise ValueError("graphs have different orders")
    wg = walk_matrix(g)
    d = det(wg)
    if d == 0:
        raise ValueError("first graph is not controllable")
    wh = walk_matrix(h)
    numt = wh @ adjugate(wg)  # d * Q^T
    try:
        q = RatRegOrtho.from_fraction(numt.T, d)
    except ValueError as exc:
        raise ValueError(
            "graphs are not generalized cospectral (no regular orthogonal "
            f"similarity exists: {exc})"
        ) from exc
    # conjugation identity in exact arithmetic
    if q.num.T @ g.adjacency() @ q.num != (q.den * q.den) * h.adjacency():
        raise ValueError(
            "graphs are not generalized cospectral (conjugation identity fails)"
        )
    return q


def conjugate(q: RatRegOrtho, g: Graph) -> Graph:
    """The graph H with A(H) = Q^T A(G) Q, refusing any non-0-1 result.

    Exact equality only: num^T A num must be den^2 times a symmetric 0-1
    matrix with zero diagonal, otherwise Q is not in the admissible set of G.
    """
    if q.n != g.n:
        raise ValueError("size mismatch between matrix and graph")
    b = q.num.T @ g.adjacency() @ q.num
    d2 = q.den * q.den
    n = g.n
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            x = b[i, j]
            if x == 0:
                row.append(0)
            elif x == d2:
                row.append(1)
            else:
                raise ConjugationError(
                    f"conjugated entry ({i},{j}) is {x}, not in {{0, {d2}}}; "
                    "the matrix does not carry this graph to a graph"
                )
        adj.append(tuple(row))
    try:
        return Graph(tuple(adj))
    except ValueError as exc:
        raise ConjugationError(f"conjugated matrix is not an adjacency matrix: {exc}") from exc


def walk_matrix_transport(q: RatRegOrtho, g: Graph) -> IntMatrix:
    """num^T W(G), which equals den * W(H) for H = conjugate(q, g)."""
    return q.num.T @ walk_matrix(g)
