"""Kottwitz functions at the level of their Satake polynomials.

Polynomials in the variables Y_1..Y_n stand for unramified Hecke functions on
GL_n(E).  Constant terms along a standard parabolic are recorded as
``ConstantTermExpansion`` objects: a list of extended compositions, each
carrying its power of q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .exactpoly import AffineExp, HalfInt, LaurentPoly, ZERO_EXP

__all__ = [
    "CompositionData",
    "ExtendedComposition",
    "ConstantTermExpansion",
    "KottwitzChoice",
    "compositions",
    "extended_compositions",
    "satake_phi",
    "satake_f_gu",
    "gu_weyl_action",
    "kottwitz_dispatch",
    "constant_term_exponent",
    "constant_term",
    "theta_truncation_holds",
    "truncated_constant_term",
    "truncated_constant_term_levi",
    "truncated_satake_flat",
]


@dataclass(frozen=True, slots=True)
class CompositionData:
    """An ordered tuple of positive integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(parts)
        if not parts or any(not isinstance(x, int) or isinstance(x, bool) or x < 1 for x in parts):
            raise ValueError(f"composition parts must be positive integers, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def is_palindromic(self) -> bool:
        return self.parts == self.parts[::-1]

    def offsets(self) -> list[int]:
        """Start index (0-based) of each block."""
        out, acc = [], 0
        for x in self.parts:
            out.append(acc)
            acc += x
        return out


@dataclass(frozen=True, slots=True)
class ExtendedComposition:
    """An ordered tuple of non-negative integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(parts)
        if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in parts):
            raise ValueError(f"extended composition parts must be non-negative, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def is_palindromic(self) -> bool:
        return self.parts == self.parts[::-1]


def _as_comp(blocks: CompositionData | Sequence[int]) -> CompositionData:
    return blocks if isinstance(blocks, CompositionData) else CompositionData(blocks)


def _check_ns(n: int, s: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(s, int) or not 0 <= s <= n:
        raise ValueError(f"s must satisfy 0 <= s <= n, got s={s!r}, n={n}")


def compositions(n: int) -> list[CompositionData]:
    """All 2^(n-1) compositions of n, coarsest first."""
    out = []
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(CompositionData(parts))
    out.sort(key=lambda c: (len(c), [-x for x in c.parts]))
    return out


def extended_compositions(s: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Tuples (s_1..s_k) with sum s and 0 <= s_i <= bounds[i], in lex-descending order."""
    k = len(bounds)
    if k == 0:
        if s == 0:
            yield ()
        return
    room = sum(bounds[1:])
    for first in range(min(s, bounds[0]), -1, -1):
        if s - first > room:
            break
        for rest in extended_compositions(s - first, bounds[1:]):
            yield (first, *rest)


ALPHA = AffineExp.alpha(1)


@lru_cache(maxsize=None)
def satake_phi(n: int, s: int) -> LaurentPoly:
    """q^{alpha s(n-s)} * e_s(Y_1^alpha, ..., Y_n^alpha)."""
    _check_ns(n, s)
    prefactor = AffineExp.alpha(s * (n - s))
    terms = {}
    for subset in itertools.combinations(range(n), s):
        vec = tuple(ALPHA if j in subset else ZERO_EXP for j in range(n))
        terms[(vec, prefactor, False)] = 1
    return LaurentPoly(n, terms)


@lru_cache(maxsize=None)
def satake_f_gu(n: int, s: int) -> LaurentPoly:
    """Satake polynomial of the unitary-similitude Kottwitz function.

    Variable 0 is the similitude variable X, variables 1..k are X_1..X_k with
    k = n // 2.  Position i > n - k folds to X_{n+1-i}^{-1}; for odd n the
    middle position is 1.
    """
    _check_ns(n, s)
    k = n // 2
    nv = k + 1
    # exponent vector contributed by position i (1-based)
    slot = []
    for i in range(1, n + 1):
        vec = [ZERO_EXP] * nv
        if i <= k:
            vec[i] = ALPHA
        elif i > n - k:
            vec[n + 1 - i] = -ALPHA
        slot.append(vec)
    prefactor = AffineExp.alpha(s * (n - s))
    terms: dict = {}
    for subset in itertools.combinations(range(n), s):
        vec = [ZERO_EXP] * nv
        vec[0] = ALPHA
        for i in subset:
            vec = [a + b for a, b in zip(vec, slot[i])]
        key = (tuple(vec), prefactor, False)
        terms[key] = terms.get(key, 0) + 1
    return LaurentPoly(nv, terms)


def gu_weyl_action(poly: LaurentPoly, signs: Sequence[int], perm: Sequence[int]) -> LaurentPoly:
    """Act by (signs, perm) in {+-1}^k x| S_k on a polynomial in X, X_1..X_k.

    ``perm`` is 0-based on the k unitary variables, sending X_j to X_perm[j];
    a sign -1 at j inverts X_j.  The similitude variable X is fixed.
    """
    k = poly.num_vars - 1
    if len(signs) != k or sorted(perm) != list(range(k)):
        raise ValueError("action data does not match the number of unitary variables")
    flipped = poly.invert_vars(j + 1 for j, e in enumerate(signs) if e == -1)
    return flipped.permute_vars([0] + [perm[j] + 1 for j in range(k)])


class KottwitzChoice(NamedTuple):
    """Which phi_{n a s} to trace, and the power of p that multiplies it."""

    n: int
    alpha: int
    s: int
    p_exponent: HalfInt


def kottwitz_dispatch(n: int, s: int, alpha: int) -> KottwitzChoice:
    _check_ns(n, s)
    if not isinstance(alpha, int) or alpha < 1:
        raise ValueError("alpha must be a positive integer")
    if n != 2 * s:
        return KottwitzChoice(n, alpha, s, HalfInt(0))
    if alpha % 2 == 0:
        return KottwitzChoice(n, alpha // 2, s, HalfInt(0))
    # p^{-(alpha/2) s(n-s)}: twice the exponent is -alpha s (n-s)
    return KottwitzChoice(n, alpha, s, HalfInt(-alpha * s * (n - s)))


def constant_term_exponent(n: int, s: int, blocks: Sequence[int], ext: Sequence[int]) -> AffineExp:
    """alpha * C with C = s(n-s) - sum s_i(n_i - s_i)."""
    c = s * (n - s) - sum(si * (ni - si) for ni, si in zip(blocks, ext))
    return AffineExp.alpha(c)


@dataclass(frozen=True, slots=True)
class ConstantTermExpansion:
    """Sum over summands of q^{q_exponent} * (tensor of phi_{n_i alpha s_i})."""

    blocks: CompositionData
    summands: tuple[tuple[ExtendedComposition, AffineExp], ...]

    def __len__(self) -> int:
        return len(self.summands)

    def ext_comps(self) -> list[tuple[int, ...]]:
        return [e.parts for e, _ in self.summands]

    def as_dict(self) -> dict[tuple[int, ...], AffineExp]:
        return {e.parts: x for e, x in self.summands}

    def to_poly(self) -> LaurentPoly:
        """Recombine into one Laurent polynomial in the n block-concatenated variables."""
        n = self.blocks.total
        offsets = self.blocks.offsets()
        total = LaurentPoly.zero(n)
        for ext, qexp in self.summands:
            term = LaurentPoly.q_power(qexp, n)
            for ni, si, off in zip(self.blocks, ext, offsets):
                term = term * satake_phi(ni, si).embed(n, off)
            total = total + term
        return total

    def to_json(self) -> dict:
        return {
            "blocks": list(self.blocks.parts),
            "summands": [{"ext_comp": list(e.parts), "q_exp": x.to_json()} for e, x in self.summands],
        }


def _expansion(blocks: CompositionData, pairs: Iterable[tuple[tuple[int, ...], AffineExp]]) -> ConstantTermExpansion:
    return ConstantTermExpansion(blocks, tuple((ExtendedComposition(e), x) for e, x in pairs))


def constant_term(n: int, s: int, blocks: CompositionData | Sequence[int]) -> ConstantTermExpansion:
    """Constant term of phi_{n alpha s} along the standard parabolic of ``blocks``."""
    _check_ns(n, s)
    blocks = _as_comp(blocks)
    if blocks.total != n:
        raise ValueError(f"blocks {blocks.parts} do not sum to n={n}")
    return _expansion(
        blocks,
        ((e, constant_term_exponent(n, s, blocks.parts, e)) for e in extended_compositions(s, blocks.parts)),
    )


def theta_truncation_holds(ext: Sequence[int], skip: Iterable[int] = ()) -> bool:
    """Partial sums of s_j - s_{k+1-j} are positive at every i in 1..k-1 not in ``skip``."""
    k = len(ext)
    skipped = set(skip)
    acc = 0
    for i in range(1, k):
        acc += ext[i - 1] - ext[k - i]
        if i not in skipped and acc <= 0:
            return False
    return True


def truncated_constant_term(n: int, s: int, blocks: CompositionData | Sequence[int]) -> ConstantTermExpansion:
    """Constant term restricted by the theta-twisted obtuse-chamber condition."""
    full = constant_term(n, s, blocks)
    return ConstantTermExpansion(
        full.blocks, tuple((e, x) for e, x in full.summands if theta_truncation_holds(e.parts))
    )


def truncated_constant_term_levi(
    levi_blocks: CompositionData | Sequence[int],
    s_per_block: ExtendedComposition | Sequence[int],
    sub_blocks: CompositionData | Sequence[int],
) -> ConstantTermExpansion:
    """Truncated constant term of a tensor of phi's on a theta-stable Levi.

    ``sub_blocks`` refines ``levi_blocks``; the filter is skipped at the
    boundaries between Levi blocks.  The result is indexed by the
    concatenated extended composition over ``sub_blocks``.
    """
    levi = _as_comp(levi_blocks)
    svec = tuple(s_per_block)
    sub = _as_comp(sub_blocks)
    if len(svec) != len(levi):
        raise ValueError("one s value per Levi block is required")
    if sub.total != levi.total:
        raise ValueError("sub-blocks must partition the same n")
    chunks: list[tuple[int, ...]] = []
    boundaries: list[int] = []
    pos = 0
    for ni, si in zip(levi, svec):
        if not 0 <= si <= ni:
            raise ValueError(f"s value {si} out of range for block of size {ni}")
        start, acc = pos, 0
        while acc < ni:
            if pos >= len(sub):
                raise ValueError("sub-blocks do not refine the Levi blocks")
            acc += sub[pos]
            pos += 1
        if acc != ni:
            raise ValueError("sub-blocks do not refine the Levi blocks")
        chunks.append(sub.parts[start:pos])
        boundaries.append(pos)
    pairs = []
    per_block = [list(extended_compositions(si, ch)) for si, ch in zip(svec, chunks)]
    for choice in itertools.product(*per_block):
        ext = tuple(itertools.chain.from_iterable(choice))
        if not theta_truncation_holds(ext, skip=boundaries):
            continue
        c = ZERO_EXP
        for ni, si, ch, part in zip(levi, svec, chunks, choice):
            c = c + constant_term_exponent(ni, si, ch, part)
        pairs.append((ext, c))
    return _expansion(sub, pairs)


def truncated_satake_flat(n: int, s: int, blocks: CompositionData | Sequence[int]) -> LaurentPoly:
    """Truncated constant term computed directly from q^{alpha s(n-s)} e_s.

    A monomial of satake_phi(n, s) is kept, with its global prefactor, when
    its per-block degree vector passes the theta filter.  This is the second,
    independent route to the same polynomial as
    ``truncated_constant_term(...).to_poly()``.
    """
    _check_ns(n, s)
    blocks = _as_comp(blocks)
    if blocks.total != n:
        raise ValueError(f"blocks {blocks.parts} do not sum to n={n}")
    owner = [b for b, size in enumerate(blocks) for _ in range(size)]
    terms = {}
    for subset in itertools.combinations(range(n), s):
        counts = [0] * len(blocks)
        for j in subset:
            counts[owner[j]] += 1
        if not theta_truncation_holds(counts):
            continue
        vec = tuple(ALPHA if j in subset else ZERO_EXP for j in range(n))
        terms[(vec, AffineExp.alpha(s * (n - s)), False)] = 1
    return LaurentPoly(n, terms)
