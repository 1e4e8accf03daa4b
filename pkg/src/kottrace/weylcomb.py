"""Permutations, parabolic double cosets and their theta-twisted versions.

A double coset S_lam w S_mu is determined by its contingency matrix
M[i][j] = |Lam_i ∩ w(Gam_j)|, where Lam_i are the value blocks of lam and
Gam_j the position blocks of mu.  Enumerating matrices instead of
permutations is what keeps n = 12 instant.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .heckefun import CompositionData, compositions

__all__ = [
    "Permutation",
    "CosetMatrix",
    "Tableau",
    "inversions",
    "theta_conjugate",
    "coset_matrix",
    "permutation_from_matrix",
    "min_double_coset_rep",
    "has_trivial_intersection",
    "tableau",
    "margin_matrices",
    "enumerate_G_PQ",
    "enumerate_G_theta_PQ",
    "epsilon_p_theta",
    "theta_stable_parabolics",
    "brute_force_G_PQ",
    "brute_force_G_theta_PQ",
    "double_coset",
]


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """One-line notation, 1-based: ``images[i-1] = w(i)``."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images!r} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, ``(self * other)(i) = self(other(i))``."""
        if other.n != self.n:
            raise ValueError("permutations of different degree")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return Permutation(inv)

    def to_json(self) -> list[int]:
        return list(self.images)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"


@dataclass(frozen=True, slots=True)
class CosetMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.entries))

    def is_zero_one(self) -> bool:
        return all(x <= 1 for r in self.entries for x in r)

    def rotated(self) -> "CosetMatrix":
        return CosetMatrix(self.rows, self.cols, tuple(tuple(r[::-1]) for r in self.entries[::-1]))


@dataclass(frozen=True, slots=True)
class Tableau:
    """A lam-tableau of type mu: row i lists, in increasing order of the values
    in Lam_i, the mu-block that w^{-1} sends each value to (1-based)."""

    shape: CompositionData
    rows: tuple[tuple[int, ...], ...]

    def type_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for r in self.rows:
            for x in r:
                counts[x] = counts.get(x, 0) + 1
        return counts

    def rows_distinct(self) -> bool:
        return all(len(set(r)) == len(r) for r in self.rows)

    def rows_strictly_increasing(self) -> bool:
        return all(all(a < b for a, b in zip(r, r[1:])) for r in self.rows)


def _comp(x: CompositionData | Sequence[int]) -> tuple[int, ...]:
    return x.parts if isinstance(x, CompositionData) else CompositionData(x).parts


def _block_index(blocks: tuple[int, ...]) -> list[int]:
    """0-based block number of each 0-based index."""
    out = []
    for b, size in enumerate(blocks):
        out.extend([b] * size)
    return out


def _as_perm(w: Permutation | Sequence[int]) -> Permutation:
    return w if isinstance(w, Permutation) else Permutation(w)


def inversions(w: Permutation | Sequence[int]) -> int:
    """Number of pairs i < j with w(i) > w(j); equals the Coxeter length."""
    im = _as_perm(w).images
    return sum(1 for i in range(len(im)) for j in range(i + 1, len(im)) if im[i] > im[j])


def theta_conjugate(w: Permutation | Sequence[int]) -> Permutation:
    """theta(w)(i) = n + 1 - w(n + 1 - i), i.e. conjugation by the longest element."""
    w = _as_perm(w)
    n = w.n
    return Permutation(n + 1 - w(n + 1 - i) for i in range(1, n + 1))


def _check_pair(lam, mu) -> tuple[tuple[int, ...], tuple[int, ...]]:
    lam, mu = _comp(lam), _comp(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"compositions {lam} and {mu} have different totals")
    return lam, mu


def coset_matrix(w: Permutation | Sequence[int], lam, mu) -> CosetMatrix:
    lam, mu = _check_pair(lam, mu)
    w = _as_perm(w)
    if w.n != sum(lam):
        raise ValueError("permutation degree does not match the compositions")
    row_of = _block_index(lam)
    col_of = _block_index(mu)
    m = [[0] * len(mu) for _ in lam]
    for pos, val in enumerate(w.images):
        m[row_of[val - 1]][col_of[pos]] += 1
    return CosetMatrix(len(lam), len(mu), tuple(map(tuple, m)))


def permutation_from_matrix(matrix: CosetMatrix | Sequence[Sequence[int]], lam, mu) -> Permutation:
    """The shortest element of the double coset with the given contingency matrix.

    Inside each mu-block, positions are filled with values from Lam_1, then
    Lam_2, ...; each Lam_i hands out its values in increasing order.
    """
    lam, mu = _check_pair(lam, mu)
    entries = matrix.entries if isinstance(matrix, CosetMatrix) else tuple(map(tuple, matrix))
    if tuple(sum(r) for r in entries) != lam or tuple(sum(c) for c in zip(*entries)) != mu:
        raise ValueError("matrix margins do not match (lam, mu)")
    next_val = [sum(lam[:i]) + 1 for i in range(len(lam))]
    images = []
    for j in range(len(mu)):
        for i in range(len(lam)):
            for _ in range(entries[i][j]):
                images.append(next_val[i])
                next_val[i] += 1
    return Permutation(images)


def min_double_coset_rep(w: Permutation | Sequence[int], lam, mu) -> Permutation:
    return permutation_from_matrix(coset_matrix(w, lam, mu), lam, mu)


def has_trivial_intersection(w: Permutation | Sequence[int], lam, mu) -> bool:
    """S_mu ∩ w^{-1} S_lam w = {1}, tested on transpositions inside mu-blocks."""
    lam, mu = _check_pair(lam, mu)
    w = _as_perm(w)
    row_of = _block_index(lam)
    start = 0
    for size in mu:
        seen = set()
        for pos in range(start, start + size):
            b = row_of[w.images[pos] - 1]
            if b in seen:
                return False
            seen.add(b)
        start += size
    return True


def tableau(w: Permutation | Sequence[int], lam, mu) -> Tableau:
    lam, mu = _check_pair(lam, mu)
    winv = _as_perm(w).inverse()
    col_of = _block_index(mu)
    rows, start = [], 1
    for size in lam:
        rows.append(tuple(col_of[winv(v) - 1] + 1 for v in range(start, start + size)))
        start += size
    return Tableau(CompositionData(lam), tuple(rows))


def _rows_with_sum(total: int, caps: Sequence[int], bound: int | None) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    room = sum(caps[1:]) if bound is None else sum(min(c, bound) for c in caps[1:])
    top = caps[0] if bound is None else min(caps[0], bound)
    for x in range(min(total, top), -1, -1):
        if total - x > room:
            break
        for rest in _rows_with_sum(total - x, caps[1:], bound):
            yield (x, *rest)


def margin_matrices(lam, mu, zero_one: bool = False) -> Iterator[CosetMatrix]:
    """All non-negative integer matrices with row sums lam and column sums mu."""
    lam, mu = _check_pair(lam, mu)
    bound = 1 if zero_one else None

    def rec(i: int, caps: tuple[int, ...], acc: list) -> Iterator[CosetMatrix]:
        if i == len(lam):
            if not any(caps):
                yield CosetMatrix(len(lam), len(mu), tuple(acc))
            return
        for row in _rows_with_sum(lam[i], caps, bound):
            acc.append(row)
            yield from rec(i + 1, tuple(c - x for c, x in zip(caps, row)), acc)
            acc.pop()

    yield from rec(0, mu, [])


def _theta_zero_one_matrices(lam: tuple[int, ...], mu: tuple[int, ...]) -> Iterator[CosetMatrix]:
    """0/1 margin matrices invariant under 180-degree rotation.

    Only the top half of the rows is free; row k+1-i is row i reversed.
    """
    k, t = len(lam), len(mu)
    half = k // 2

    def add(caps, row, twice):
        rev = row[::-1]
        return tuple(c - x - (y if twice else 0) for c, x, y in zip(caps, row, rev))

    def rec(i: int, caps: tuple[int, ...], acc: list) -> Iterator[CosetMatrix]:
        if i == half:
            if k % 2:
                for row in _rows_with_sum(lam[half], caps, 1):
                    if row == row[::-1] and add(caps, row, False) == (0,) * t:
                        yield _mirror(acc, row)
            elif not any(caps):
                yield _mirror(acc, None)
            return
        for row in _rows_with_sum(lam[i], caps, 1):
            left = add(caps, row, True)
            if min(left, default=0) < 0:
                continue
            acc.append(row)
            yield from rec(i + 1, left, acc)
            acc.pop()

    def _mirror(top: list, middle) -> CosetMatrix:
        rows = list(top)
        if middle is not None:
            rows.append(middle)
        rows.extend(r[::-1] for r in reversed(top))
        return CosetMatrix(k, t, tuple(rows))

    yield from rec(0, mu, [])


@lru_cache(maxsize=4096)
def _g_pq(lam: tuple[int, ...], mu: tuple[int, ...]) -> tuple[Permutation, ...]:
    return tuple(sorted(permutation_from_matrix(m, lam, mu) for m in margin_matrices(lam, mu)))


@lru_cache(maxsize=4096)
def _g_theta_pq(lam: tuple[int, ...], mu: tuple[int, ...]) -> tuple[Permutation, ...]:
    return tuple(sorted(permutation_from_matrix(m, lam, mu) for m in _theta_zero_one_matrices(lam, mu)))


def enumerate_G_PQ(lam, mu) -> list[Permutation]:
    """Minimal-length representatives of S_lam \\ S_n / S_mu, sorted."""
    return list(_g_pq(*_check_pair(lam, mu)))


def enumerate_G_theta_PQ(lam, mu) -> list[Permutation]:
    """theta-fixed minimal representatives with S_mu ∩ w^{-1} S_lam w trivial."""
    lam, mu = _check_pair(lam, mu)
    if lam != lam[::-1] or mu != mu[::-1]:
        raise ValueError("theta-twisted cosets need palindromic compositions")
    return list(_g_theta_pq(lam, mu))


def epsilon_p_theta(blocks) -> int:
    """(-1)^{floor(k/2)} for a theta-stable parabolic with k blocks."""
    parts = _comp(blocks)
    if parts != parts[::-1]:
        raise ValueError(f"{parts} is not palindromic")
    return -1 if (len(parts) // 2) % 2 else 1


def theta_stable_parabolics(n: int) -> list[CompositionData]:
    """Palindromic compositions of n, fewest blocks first."""
    return [c for c in compositions(n) if c.is_palindromic()]


# brute force ---------------------------------------------------------------


def double_coset(w: Permutation | Sequence[int], lam, mu) -> set[Permutation]:
    """S_lam w S_mu by breadth-first search over simple reflections."""
    lam, mu = _check_pair(lam, mu)
    w = _as_perm(w)
    row_of, col_of = _block_index(lam), _block_index(mu)
    n = w.n
    seen = {w.images}
    todo = deque([w.images])
    while todo:
        im = todo.popleft()
        nbrs = []
        for a in range(1, n):
            if row_of[a - 1] == row_of[a]:
                nbrs.append(tuple(a + 1 if x == a else a if x == a + 1 else x for x in im))
            if col_of[a - 1] == col_of[a]:
                lst = list(im)
                lst[a - 1], lst[a] = lst[a], lst[a - 1]
                nbrs.append(tuple(lst))
        for nb in nbrs:
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return {Permutation(x) for x in seen}


def _rank_of(images: Sequence[int]) -> int:
    n = len(images)
    rank, fact = 0, 1
    digits = []
    for i in range(n):
        digits.append(sum(1 for j in range(i + 1, n) if images[j] < images[i]))
    for i in range(n - 1, -1, -1):
        rank += digits[i] * fact
        fact *= n - i
    return rank


def brute_force_G_PQ(lam, mu, impl: str | None = None) -> set[Permutation]:
    """{w in S_n : w is shortest in S_lam w S_mu}, scanning all n! elements."""
    lam, mu = _check_pair(lam, mu)
    best = _kernels.double_coset_min_ranks(lam, mu, impl)
    perms = _kernels.all_permutations(sum(lam))
    idx = np.flatnonzero(best == np.arange(best.size))
    return {Permutation(perms[r] + 1) for r in idx}


def brute_force_G_theta_PQ(lam, mu, impl: str | None = None) -> set[Permutation]:
    """Shortest w with w^theta = w and trivial intersection, scanning all n!."""
    lam, mu = _check_pair(lam, mu)
    best = _kernels.double_coset_min_ranks(lam, mu, impl)
    perms = _kernels.all_permutations(sum(lam))
    out = set()
    for r in np.flatnonzero(best == np.arange(best.size)):
        w = Permutation(perms[r] + 1)
        if best[_rank_of(theta_conjugate(w).images)] != r:
            continue
        if has_trivial_intersection(w, lam, mu):
            out.add(w)
    return out
