"""Complete desk-scale enumeration of the admissible orthogonal matrices.

Every scaled column v of an admissible matrix at level l must satisfy the
lattice conditions

    v.v = l^2,   e.v = l,   W^T v = 0 (mod l),

so the search first enumerates that finite candidate set exactly (kernel
residues of W^T mod l from the integer Smith form, then a bounded box walk
per residue with norm pruning), and then assembles full matrices column by
column under the running compatibility checks

    v_i . v_j = 0,   v_i^T A v_j in {0, l^2},   v_i^T A v_i = 0.

Columns are chosen in strictly increasing lexicographic order, which picks
exactly one representative from each right-permutation class {Q P}. Two
assembly backends (plain backtracking and a bitset clique builder over the
precomputed compatibility graph) cross-validate each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import SearchCapExceeded
from .graphs import Graph, isomorphic, walk_matrix
from .intmat import IntMatrix, dot
from .ortho import RatRegOrtho, conjugate
from .snf import snf_int

CANDIDATE_CAP = 10**6
NODE_CAP = 10**8


@dataclass(frozen=True)
class MateClass:
    """One admissible matrix up to column permutation, with its mate graph."""

    q: RatRegOrtho
    mate: Graph
    level: int
    isomorphic_to_input: bool

    @property
    def is_permutation_class(self) -> bool:
        return self.level == 1

    def canonical_key(self):
        return self.q.canonical_key()


def enumerate_columns(
    g: Graph,
    level: int,
    *,
    walk: IntMatrix | None = None,
    cap: int = CANDIDATE_CAP,
) -> list[tuple[int, ...]]:
    """All integer vectors v with v.v = level^2, e.v = level, W^T v = 0 mod level.

    The congruence confines v mod level to the kernel of W^T, read off the
    integer Smith form; each residue class is then walked coordinate by
    coordinate with exact norm/sum pruning (every entry satisfies
    |v_i| <= level). The result is lexicographically sorted and complete.
    """
    if level < 1:
        raise ValueError("level must be positive")
    w = walk if walk is not None else walk_matrix(g)
    n = g.n
    res = snf_int(w.T)
    if res.rank < n:
        raise ValueError("graph is not controllable")

    # kernel of W^T mod level: y_i ranges over multiples of level/gcd(d_i, level)
    gcds = [gcd(d, level) for d in res.invariant_factors]
    total = 1
    for gi in gcds:
        total *= gi
        if total > cap:
            raise SearchCapExceeded(
                f"kernel of W^T mod {level} has more than {cap} residue classes"
            )

    v_cols = res.V.T.data  # row i = column i of V
    lvl2 = level * level
    out: list[tuple[int, ...]] = []

    def box_walk(residue: tuple[int, ...]):
        # options per coordinate: all x = residue_i (mod level), |x| <= level
        options = []
        for r in residue:
            opts = [r, r - level] if r else [0, -level, level]
            options.append(sorted(opts))
        chosen = [0] * n

        def rec(idx: int, norm_left: int, sum_left: int):
            if idx == n:
                if norm_left == 0 and sum_left == 0:
                    out.append(tuple(chosen))
                    if len(out) > cap:
                        raise SearchCapExceeded(
                            f"more than {cap} column candidates at level {level}"
                        )
                return
            k = n - idx - 1  # coordinates after this one
            for x in options[idx]:
                nl = norm_left - x * x
                if nl < 0:
                    continue
                sl = sum_left - x
                # Cauchy-Schwarz: remaining sum needs sl^2 <= k * remaining norm
                if sl * sl > k * nl:
                    continue
                chosen[idx] = x
                rec(idx + 1, nl, sl)

        rec(0, lvl2, level)

    # iterate kernel residues y, map to v = V y mod level
    idx = [0] * n
    while True:
        y = [idx[i] * (level // gcds[i]) for i in range(n)]
        residue = tuple(
            sum(v_cols[j][i] * y[j] for j in range(n) if y[j]) % level
            for i in range(n)
        )
        box_walk(residue)
        for i in range(n):
            idx[i] += 1
            if idx[i] < gcds[i]:
                break
            idx[i] = 0
        else:
            break

    out.sort()
    return out


def _compatible(u, v, au, lvl2) -> bool:
    return dot(u, v) == 0 and dot(au, v) in (0, lvl2)


def _assemble_backtrack(cands, a_cands, n, lvl2, node_cap):
    """DFS over strictly increasing candidate indices with running checks."""
    m = len(cands)
    results = []
    chosen: list[int] = []
    row_norms = [0] * n
    nodes = 0

    def rec(start: int):
        nonlocal nodes
        if len(chosen) == n:
            results.append(tuple(chosen))
            return
        need = n - len(chosen)
        for j in range(start, m - need + 1):
            nodes += 1
            if nodes > node_cap:
                raise SearchCapExceeded(f"assembly explored more than {node_cap} nodes")
            v = cands[j]
            ok = True
            for i in chosen:
                if not _compatible(cands[i], v, a_cands[i], lvl2):
                    ok = False
                    break
            if not ok:
                continue
            bumped = []
            for r in range(n):
                nr = row_norms[r] + v[r] * v[r]
                if nr > lvl2:
                    for rr, old in bumped:
                        row_norms[rr] = old
                    ok = False
                    break
                bumped.append((r, row_norms[r]))
                row_norms[r] = nr
            if not ok:
                continue
            chosen.append(j)
            rec(j + 1)
            chosen.pop()
            for rr, old in bumped:
                row_norms[rr] = old

    rec(0)
    return results


def _assemble_clique(cands, a_cands, n, lvl2, node_cap):
    """Bitset n-clique enumeration over the precomputed compatibility graph."""
    m = len(cands)
    masks = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if _compatible(cands[i], cands[j], a_cands[i], lvl2):
                masks[i] |= 1 << j
    results = []
    nodes = 0

    def rec(chosen: list[int], allowed: int):
        nonlocal nodes
        if len(chosen) == n:
            results.append(tuple(chosen))
            return
        if len(chosen) + allowed.bit_count() < n:
            return
        rest = allowed
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            nodes += 1
            if nodes > node_cap:
                raise SearchCapExceeded(f"assembly explored more than {node_cap} nodes")
            chosen.append(j)
            rec(chosen, allowed & masks[j] & ~((1 << (j + 1)) - 1))
            chosen.pop()

    rec([], (1 << m) - 1)
    return results


def search_mates(
    g: Graph,
    levels: list[int] | tuple[int, ...],
    *,
    backend: str = "backtrack",
    candidate_cap: int = CANDIDATE_CAP,
    node_cap: int = NODE_CAP,
) -> list[MateClass]:
    """All admissible matrices of g with level in ``levels``, one per
    right-permutation class, each verified and paired with its mate graph.

    A matrix assembled at level l whose entries share a factor with l is a
    lower-level matrix in disguise and is skipped; it shows up (exactly
    once) when its true level is searched.
    """
    w = walk_matrix(g)
    a = g.adjacency()
    n = g.n
    classes: list[MateClass] = []
    seen = set()
    for level in sorted(set(int(x) for x in levels)):
        lvl2 = level * level
        cands = enumerate_columns(g, level, walk=w, cap=candidate_cap)
        cands = [v for v in cands if dot(a.mat_vec(v), v) == 0]
        if len(cands) < n:
            continue
        a_cands = [a.mat_vec(v) for v in cands]
        if backend == "backtrack":
            picks = _assemble_backtrack(cands, a_cands, n, lvl2, node_cap)
        elif backend == "clique":
            picks = _assemble_clique(cands, a_cands, n, lvl2, node_cap)
        else:
            raise ValueError(f"unknown backend {backend!r}")
        for pick in picks:
            num = IntMatrix.from_columns([cands[j] for j in pick])
            shared = gcd(level, *(x for x in num.entries))
            if shared != 1:
                continue  # true level is level/shared; found in its own pass
            q = RatRegOrtho(num, level)
            key = q.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            mate = conjugate(q, g)
            classes.append(MateClass(q, mate, level, isomorphic(g, mate)))
    return classes


def dedupe(classes: list[MateClass]) -> list[MateClass]:
    """Quotient by right multiplication with permutations: canonical form is
    the column-sorted scaled matrix; first representative wins."""
    seen = set()
    out = []
    for cls in classes:
        key = cls.canonical_key()
        if key not in seen:
            seen.add(key)
            out.append(cls)
    return out


def distinct_mate_graphs(classes: list[MateClass]) -> list[Graph]:
    """The non-isomorphic mate graphs among classes not isomorphic to the input."""
    reps: list[Graph] = []
    for cls in classes:
        if cls.isomorphic_to_input:
            continue
        if not any(isomorphic(cls.mate, r) for r in reps):
            reps.append(cls.mate)
    return reps
