"""Array kernels for exhaustive work over all of S_n.

Two interchangeable implementations: numba-compiled loops and vectorized
numpy.  ``KOTTRACE_BACKEND=numpy`` forces the fallback; the default is numba
when it imports.  Permutations are rows of an (n!, n) int64 array of 0-based
images, in lexicographic order, so a row's index is its Lehmer rank.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


__all__ = [
    "HAVE_NUMBA",
    "backend",
    "set_backend",
    "all_permutations",
    "perm_ranks",
    "inversion_counts",
    "double_coset_min_ranks",
]


@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    perms.setflags(write=False)
    return perms.reshape(-1, n)


def _factorials(n: int) -> np.ndarray:
    out = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        out[i] = out[i + 1] * (n - 1 - i)
    return out


# numba ---------------------------------------------------------------------


@njit(cache=True)
def _ranks_nb(perms, fact):
    m, n = perms.shape
    out = np.zeros(m, dtype=np.int64)
    for r in range(m):
        acc = 0
        for i in range(n):
            smaller = 0
            for j in range(i + 1, n):
                if perms[r, j] < perms[r, i]:
                    smaller += 1
            acc += smaller * fact[i]
        out[r] = acc
    return out


@njit(cache=True)
def _inversions_nb(perms):
    m, n = perms.shape
    out = np.zeros(m, dtype=np.int64)
    for r in range(m):
        c = 0
        for i in range(n):
            for j in range(i + 1, n):
                if perms[r, i] > perms[r, j]:
                    c += 1
        out[r] = c
    return out


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _min_ranks_nb(perms, fact, left_gens, right_gens):
    m, n = perms.shape
    parent = np.arange(m)
    inv = _inversions_nb(perms)
    pos = np.empty(n, dtype=np.int64)
    img = np.empty(n, dtype=np.int64)
    for r in range(m):
        for i in range(n):
            pos[perms[r, i]] = i
        # u * w: swap the values a, a+1
        for g in range(left_gens.shape[0]):
            a = left_gens[g]
            for i in range(n):
                img[i] = perms[r, i]
            img[pos[a]] = a + 1
            img[pos[a + 1]] = a
            acc = 0
            for i in range(n):
                smaller = 0
                for j in range(i + 1, n):
                    if img[j] < img[i]:
                        smaller += 1
                acc += smaller * fact[i]
            ra, rb = _find(parent, r), _find(parent, acc)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        # w * v: swap the positions b, b+1
        for g in range(right_gens.shape[0]):
            b = right_gens[g]
            for i in range(n):
                img[i] = perms[r, i]
            img[b] = perms[r, b + 1]
            img[b + 1] = perms[r, b]
            acc = 0
            for i in range(n):
                smaller = 0
                for j in range(i + 1, n):
                    if img[j] < img[i]:
                        smaller += 1
                acc += smaller * fact[i]
            ra, rb = _find(parent, r), _find(parent, acc)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    best = np.full(m, -1, dtype=np.int64)
    for r in range(m):
        root = _find(parent, r)
        b = best[root]
        if b < 0 or inv[r] < inv[b]:
            best[root] = r
    out = np.empty(m, dtype=np.int64)
    for r in range(m):
        out[r] = best[_find(parent, r)]
    return out


# numpy ---------------------------------------------------------------------


def _ranks_np(perms: np.ndarray, fact: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    smaller = (perms[:, None, :] < perms[:, :, None]) & upper
    return smaller.sum(axis=2) @ fact


def _inversions_np(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    return ((perms[:, :, None] > perms[:, None, :]) & upper).sum(axis=(1, 2))


def _min_ranks_np(perms, fact, left_gens, right_gens):
    m = perms.shape[0]
    rows = np.arange(m)
    neighbours = []
    for a in left_gens:
        img = perms.copy()
        img[perms == a] = a + 1
        img[perms == a + 1] = a
        neighbours.append(_ranks_np(img, fact))
    for b in right_gens:
        img = perms.copy()
        img[:, [b, b + 1]] = img[:, [b + 1, b]]
        neighbours.append(_ranks_np(img, fact))
    labels = rows.copy()
    while True:
        new = labels
        for nb in neighbours:
            new = np.minimum(new, labels[nb])
        new = new[new]
        if np.array_equal(new, labels):
            break
        labels = new
    inv = _inversions_np(perms)
    order = np.lexsort((rows, inv, labels))
    first = np.ones(m, dtype=bool)
    first[1:] = labels[order][1:] != labels[order][:-1]
    best = np.empty(m, dtype=np.int64)
    best[labels[order][first]] = order[first]
    return best[labels]


# dispatch ------------------------------------------------------------------

_IMPLS = {
    "numba": (_ranks_nb, _inversions_nb, _min_ranks_nb),
    "numpy": (_ranks_np, _inversions_np, _min_ranks_np),
}

_backend = os.environ.get("KOTTRACE_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
if _backend not in _IMPLS or (_backend == "numba" and not HAVE_NUMBA):
    _backend = "numpy"


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


def _impl(name: str | None):
    name = name or _backend
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}")
    return _IMPLS[name]


def perm_ranks(perms: np.ndarray, impl: str | None = None) -> np.ndarray:
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    return _impl(impl)[0](perms, _factorials(perms.shape[1]))


def inversion_counts(perms: np.ndarray, impl: str | None = None) -> np.ndarray:
    return _impl(impl)[1](np.ascontiguousarray(perms, dtype=np.int64))


def _block_gens(blocks: tuple[int, ...]) -> np.ndarray:
    gens, start = [], 0
    for b in blocks:
        gens.extend(range(start, start + b - 1))
        start += b
    return np.array(gens, dtype=np.int64)


def double_coset_min_ranks(lam: tuple[int, ...], mu: tuple[int, ...], impl: str | None = None) -> np.ndarray:
    """For each w in S_n (by rank), the rank of the shortest element of S_lam w S_mu.

    Computed by brute force: connected components of S_n under the simple
    reflections of S_lam acting on the left and S_mu on the right.
    """
    n = sum(lam)
    if sum(mu) != n:
        raise ValueError("compositions of different n")
    perms = all_permutations(n)
    return _impl(impl)[2](perms, _factorials(n), _block_gens(lam), _block_gens(mu))
