"""Smith normal forms with transforms, over Z and over Z/p^kZ.

Both routines return the full (U, S, V) triple with U*M*V = S in the stated
ring. Over Z the transforms are unimodular; over Z/p^kZ their determinants
are units, and every nonzero invariant factor is normalized to a pure prime
power p^c with 0 <= c < k.

On top of the forms sit the module-theoretic helpers: solvability of
M x = b over Z/p^kZ, kernel structure, the "does M z = 0 have a unit-entry
solution mod p^k" test, and basis extension inside free submodules.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

from .arith import is_prime, v_p
from .errors import InvariantError
from .intmat import IntMatrix


@dataclass(frozen=True)
class ModPK:
    """Ring tag for Z/p^kZ."""

    p: int
    k: int

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def __repr__(self):
        return f"Z/{self.p}^{self.k}Z"


@dataclass(frozen=True)
class SnfResult:
    """U @ M @ V == S, with S in Smith normal form.

    ``ring`` is None for Z, or a ModPK tag. ``invariant_factors`` lists the
    nonzero diagonal entries d_1 | d_2 | ... | d_r.
    """

    ring: ModPK | None
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def factor_at(self, i: int) -> int:
        """d_i with 1-based index, zero beyond the rank."""
        if not 1 <= i <= min(self.S.rows, self.S.cols):
            raise IndexError(f"invariant factor index {i} out of range")
        return self.invariant_factors[i - 1] if i <= self.rank else 0


@dataclass(frozen=True)
class KernelShape:
    """Kernel of M over Z/p^kZ as a direct sum of cyclic modules.

    ker(M) decomposes as  (+)_i Z/p^{c_i}Z  (+)  (Z/p^kZ)^{free_rank},
    with c_i the nonzero exponents among the invariant factors. When the
    kernel is free (no torsion), ``free_basis`` holds an explicit basis.
    """

    torsion_exponents: tuple[int, ...]
    free_rank: int
    modulus: int
    free_basis: tuple[tuple[int, ...], ...] | None

    @property
    def size(self) -> int:
        total = self.modulus ** self.free_rank
        p = _prime_of_modulus(self.modulus)
        for c in self.torsion_exponents:
            total *= p ** c
        return total


def _prime_of_modulus(q: int) -> int:
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    raise ValueError("modulus must be a prime power > 1")


# ---------------------------------------------------------------------------
# SNF over Z
# ---------------------------------------------------------------------------


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _row_sub(m, dst, src, q):
    if q:
        src_row = m[src]
        dst_row = m[dst]
        for j in range(len(dst_row)):
            dst_row[j] -= q * src_row[j]


def _col_sub(m, dst, src, q):
    if q:
        for row in m:
            row[dst] -= q * row[src]


def _row_add(m, dst, src):
    src_row = m[src]
    dst_row = m[dst]
    for j in range(len(dst_row)):
        dst_row[j] += src_row[j]


def _neg_row(m, i):
    m[i] = [-x for x in m[i]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) = a*x + b*y, g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _gcdex_rows(s, a_mats, t, i):
    """Unimodular 2-row transform making s[i][t] = 0, s[t][t] = gcd.

    Applied to s and, identically, to every matrix in a_mats.
    """
    a, b = s[t][t], s[i][t]
    if b == 0:
        return
    if a and b % a == 0:
        q = b // a
        for m in (s, *a_mats):
            _row_sub(m, i, t, q)
        return
    g, x, y = _xgcd(a, b)
    af, bf = a // g, b // g
    for m in (s, *a_mats):
        rt, ri = m[t], m[i]
        m[t] = [x * p + y * q for p, q in zip(rt, ri)]
        m[i] = [-bf * p + af * q for p, q in zip(rt, ri)]


def _gcdex_cols(s, a_mats, t, j):
    """Column analogue of _gcdex_rows: zero s[t][j], gcd into s[t][t]."""
    a, b = s[t][t], s[t][j]
    if b == 0:
        return
    if a and b % a == 0:
        q = b // a
        for m in (s, *a_mats):
            _col_sub(m, j, t, q)
        return
    g, x, y = _xgcd(a, b)
    af, bf = a // g, b // g
    for m in (s, *a_mats):
        for row in m:
            p, q = row[t], row[j]
            row[t] = x * p + y * q
            row[j] = -bf * p + af * q


def snf_int(m: IntMatrix) -> SnfResult:
    """Smith normal form over Z with unimodular transforms.

    Pivoting picks the smallest nonzero absolute value in the remaining
    block; rows and columns are cleared with one-shot extended-gcd
    transforms, which keeps intermediate entries from the exponential
    blowup of repeated Euclidean sweeps. Invariant factors come out
    positive.
    """
    nr, nc = m.rows, m.cols
    s = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # smallest nonzero |entry| in the trailing block
        piv = None
        best = None
        for i in range(t, nr):
            row = s[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            _swap_rows(s, t, piv[0])
            _swap_rows(u, t, piv[0])
        if piv[1] != t:
            _swap_cols(s, t, piv[1])
            _swap_cols(v, t, piv[1])

        # alternate gcd-clearing passes; each dirty pass strictly divides
        # the pivot down, so this stabilizes after O(log) rounds
        while True:
            for i in range(t + 1, nr):
                _gcdex_rows(s, (u,), t, i)
            if all(s[t][j] == 0 for j in range(t + 1, nc)):
                break
            for j in range(t + 1, nc):
                _gcdex_cols(s, (v,), t, j)
            if all(s[i][t] == 0 for i in range(t + 1, nr)):
                break

        # pivot must divide the whole trailing block
        pivot = s[t][t]
        offender = None
        for i in range(t + 1, nr):
            row = s[i]
            for j in range(t + 1, nc):
                if row[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            _row_add(s, t, offender)
            _row_add(u, t, offender)
            continue  # re-reduce with the same slot t

        if pivot < 0:
            _neg_row(s, t)
            _neg_row(u, t)
        t += 1

    factors = tuple(s[i][i] for i in range(t))
    return SnfResult(None, IntMatrix(u), IntMatrix(s), IntMatrix(v), factors)


# ---------------------------------------------------------------------------
# SNF over Z/p^kZ
# ---------------------------------------------------------------------------


def _val_mod(x: int, p: int, k: int) -> int:
    """Valuation of a residue in [0, p^k); the zero residue gets k."""
    if x == 0:
        return k
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def snf_mod_pk(m: IntMatrix, p: int, k: int) -> SnfResult:
    """Smith normal form over the local ring Z/p^kZ.

    Entries are reduced mod p^k; each nonzero invariant factor comes out as
    an exact power p^c with 0 <= c < k, and det(U), det(V) are units.
    p = 2 is accepted (the form is ring-correct) but flagged, since the
    downstream level-bound rules only consume odd primes.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    if p == 2:
        warnings.warn(
            "snf_mod_pk at p = 2: the form is valid over Z/2^kZ, but no "
            "level-bound rule consumes it",
            stacklevel=2,
        )
    q = p ** k
    nr, nc = m.rows, m.cols
    s = [[x % q for x in row] for row in m.data]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    factors = []
    limit = min(nr, nc)
    for t in range(limit):
        piv = None
        best = k
        for i in range(t, nr):
            row = s[i]
            for j in range(t, nc):
                val = _val_mod(row[j], p, k)
                if val < best:
                    best = val
                    piv = (i, j)
                    if val == 0:
                        break
            if best == 0:
                break
        if piv is None:
            break
        if piv[0] != t:
            _swap_rows(s, t, piv[0])
            _swap_rows(u, t, piv[0])
        if piv[1] != t:
            _swap_cols(s, t, piv[1])
            _swap_cols(v, t, piv[1])

        pv = best
        unit = s[t][t] // p ** pv
        uinv = pow(unit, -1, q)
        s[t] = [(uinv * x) % q for x in s[t]]
        u[t] = [(uinv * x) % q for x in u[t]]
        pivot = p ** pv  # == s[t][t]

        for i in range(t + 1, nr):
            x = s[i][t]
            if x:
                c = x // pivot  # exact: pivot had minimal valuation
                row_i, row_t = s[i], s[t]
                for j in range(nc):
                    row_i[j] = (row_i[j] - c * row_t[j]) % q
                ui, ut = u[i], u[t]
                for j in range(nr):
                    ui[j] = (ui[j] - c * ut[j]) % q
        for j in range(t + 1, nc):
            x = s[t][j]
            if x:
                c = x // pivot
                for row in s:
                    row[j] = (row[j] - c * row[t]) % q
                for row in v:
                    row[j] = (row[j] - c * row[t]) % q
        factors.append(pivot)

    return SnfResult(ModPK(p, k), IntMatrix(u), IntMatrix(s), IntMatrix(v), tuple(factors))


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of the projection of m over the field Z/pZ."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return snf_mod_pk(m, p, 1).rank


# ---------------------------------------------------------------------------
# Linear systems, kernels, and bases over Z/p^kZ
# ---------------------------------------------------------------------------


def solvable_mod_pk(
    m: IntMatrix, b: tuple[int, ...] | list[int], p: int, k: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide M x = b over Z/p^kZ; return (solvable, one solution or None).

    Solvability is decided by comparing the invariant factors of M and of
    the augmented matrix (M, b); a solution is then read off through the
    transforms, x = V * S^+ * U * b, with per-coordinate divisibility.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    q = p ** k
    res = snf_mod_pk(m, p, k)
    res_aug = snf_mod_pk(m.augment_column(b), p, k)
    if res.invariant_factors != res_aug.invariant_factors:
        return False, None

    c = res.U.mat_vec(b)
    z = [0] * m.cols
    r = res.rank
    for i in range(m.rows):
        ci = c[i] % q
        if i < r:
            d = res.invariant_factors[i]
            if ci % d:
                raise InvariantError("factor match promised solvability, division failed")
            z[i] = ci // d
        elif ci:
            raise InvariantError("factor match promised solvability, residual row nonzero")
    x = tuple(val % q for val in res.V.mat_vec(z))
    if tuple(val % q for val in m.mat_vec(x)) != tuple(val % q for val in b):
        raise InvariantError("extracted solution does not satisfy the system")
    return True, x


def kernel_shape(m: IntMatrix, p: int, k: int) -> KernelShape:
    """Structure of ker(M) over Z/p^kZ from the invariant factors.

    Torsion exponents are the nonzero c_i; the free rank is n - r. When the
    kernel is free, an explicit basis (columns of V past the rank) is
    attached.
    """
    q = p ** k
    res = snf_mod_pk(m, p, k)
    exps = tuple(v_p(d, p) if d != 1 else 0 for d in res.invariant_factors)
    torsion = tuple(c for c in exps if c >= 1)
    free_rank = m.cols - res.rank
    basis = None
    if not torsion:
        basis = tuple(
            tuple(x % q for x in res.V.column(j))
            for j in range(res.rank, m.cols)
        )
    return KernelShape(torsion, free_rank, q, basis)


def dn_test(m: IntMatrix, p: int, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """Does M z = 0 (mod p^k) admit a solution with z != 0 (mod p)?

    For an m x n integral matrix with m >= n this holds exactly when p^k
    divides the n-th invariant factor over Z; the witness is the last
    column of the right transform.
    """
    if m.rows < m.cols:
        raise ValueError("matrix must have at least as many rows as columns")
    q = p ** k
    res = snf_int(m)
    n = m.cols
    d_n = res.factor_at(n)
    if d_n != 0 and d_n % q != 0:
        return False, None
    z = res.V.column(n - 1)
    if all(x % p == 0 for x in z):
        raise InvariantError("unimodular transform produced a column divisible by p")
    if any(x % q for x in m.mat_vec(z)):
        raise InvariantError("witness fails M z = 0 mod p^k")
    return True, tuple(x % q for x in z)


def _pivot_rows_mod_p(columns: list[list[int]], nrows: int, p: int) -> list[int] | None:
    """Row indices pivoting the given columns over Z/pZ; None if dependent."""
    work = [[c[i] % p for c in columns] for i in range(nrows)]
    used: list[int] = []
    for col in range(len(columns)):
        pivot_row = None
        for i in range(nrows):
            if i not in used and work[i][col] % p:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        used.append(pivot_row)
        inv = pow(work[pivot_row][col], -1, p)
        work[pivot_row] = [(inv * x) % p for x in work[pivot_row]]
        for i in range(nrows):
            if i != pivot_row and work[i][col]:
                f = work[i][col]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[pivot_row])]
    return used


def extend_basis(
    vectors: list[tuple[int, ...]],
    free_module_basis: list[tuple[int, ...]],
    p: int,
    k: int,
) -> list[tuple[int, ...]]:
    """Extend independent vectors of a free submodule of (Z/p^kZ)^n to a basis.

    Inputs must lie in the module spanned by ``free_module_basis`` and be
    linearly independent (checked via their projections mod p). The
    completion keeps the inputs and appends suitable original basis vectors,
    chosen so the full coordinate matrix is invertible mod p.
    """
    q = p ** k
    rank = len(free_module_basis)
    if len(vectors) > rank:
        raise ValueError("more vectors than the module rank")
    basis_mat = IntMatrix.from_columns(free_module_basis)

    coords = []
    for vec in vectors:
        ok, x = solvable_mod_pk(basis_mat, vec, p, k)
        if not ok:
            raise ValueError("vector does not lie in the given free module")
        coords.append(list(x))

    if not vectors:
        return list(free_module_basis)

    pivots = _pivot_rows_mod_p(coords, rank, p)
    if pivots is None:
        raise ValueError("vectors are linearly dependent mod p")
    if len(vectors) == rank:
        return list(vectors)

    complement = [i for i in range(rank) if i not in pivots]
    completion = [free_module_basis[i] for i in complement]

    # final safety: coordinates of the completed set must be invertible mod p
    full = [list(c) for c in coords]
    for i in complement:
        e = [0] * rank
        e[i] = 1
        full.append(e)
    if _pivot_rows_mod_p(full, rank, p) is None:
        raise InvariantError("completed set is not a basis mod p")
    out = list(vectors) + [tuple(x % q for x in w) for w in completion]
    return out
