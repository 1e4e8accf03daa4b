"""Twisted compact traces of induced Steinberg products and the point count.

The trace of the truncated Kottwitz function against
pi = Ind_P(⊗ St_{n_i}(eps_i)) is a sum over theta-stable standard parabolics
Q and theta-fixed coset representatives w in G^theta_{P,Q}; each summand is
the truncated constant term along Q evaluated at the w-permuted Hecke matrix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Literal, Sequence

from .exactpoly import AffineExp, HalfInt, LaurentPoly, QuadSurd, RationalLike, parse_rational
from .heckefun import (
    CompositionData,
    extended_compositions,
    kottwitz_dispatch,
    theta_truncation_holds,
    truncated_constant_term,
)
from .weylcomb import Permutation, enumerate_G_theta_PQ, epsilon_p_theta, theta_stable_parabolics

__all__ = [
    "SteinbergProductRep",
    "SignedHeckeMatrix",
    "TraceResult",
    "GlobalInput",
    "SignFunction",
    "borel_normalized_sign",
    "unit_sign",
    "hecke_matrix",
    "trace_summands",
    "twisted_compact_trace",
    "steinberg_shortcut",
    "point_count",
    "parity_relation_check",
]

Char = Literal["trivial", "quadratic"]


@dataclass(frozen=True, slots=True)
class SteinbergProductRep:
    blocks: CompositionData
    chars: tuple[Char, ...]

    def __init__(self, blocks: CompositionData | Sequence[int], chars: Iterable[Char] | None = None):
        blocks = blocks if isinstance(blocks, CompositionData) else CompositionData(blocks)
        chars = tuple(chars) if chars is not None else ("trivial",) * len(blocks)
        if len(chars) != len(blocks):
            raise ValueError("one character per block is required")
        if any(c not in ("trivial", "quadratic") for c in chars):
            raise ValueError(f"characters must be 'trivial' or 'quadratic', got {chars!r}")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "chars", chars)

    @classmethod
    def steinberg(cls, n: int) -> "SteinbergProductRep":
        return cls((n,))

    @property
    def n(self) -> int:
        return self.blocks.total

    def is_theta_stable(self) -> bool:
        """Blocks and characters both read the same backwards."""
        return self.blocks.is_palindromic() and self.chars == self.chars[::-1]

    def to_json(self) -> dict:
        return {"blocks": list(self.blocks.parts), "chars": list(self.chars)}


@dataclass(frozen=True, slots=True)
class SignedHeckeMatrix:
    entries: tuple[tuple[int, HalfInt], ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def permuted(self, w: Permutation) -> tuple[tuple[int, HalfInt], ...]:
        """(entry_{w(1)}, ..., entry_{w(n)})."""
        return tuple(self.entries[w(i) - 1] for i in range(1, w.n + 1))

    def to_json(self) -> list[list[int]]:
        return [[s, t.twice] for s, t in self.entries]


def hecke_matrix(rep: SteinbergProductRep) -> SignedHeckeMatrix:
    """Exponents (n_i-1)/2, ..., (1-n_i)/2 per block; sign -1 on quadratic blocks."""
    entries = []
    for size, ch in zip(rep.blocks, rep.chars):
        sign = -1 if ch == "quadratic" else 1
        block = [(sign, HalfInt(size - 1 - 2 * j)) for j in range(size)]
        assert sum(t.twice for _, t in block) == 0
        entries.extend(block)
    return SignedHeckeMatrix(tuple(entries))


SignFunction = Callable[[CompositionData, Permutation, SteinbergProductRep], int]


def borel_normalized_sign(q: CompositionData, w: Permutation, rep: SteinbergProductRep) -> int:
    """Default eps_{Q,w}: the constant eps_{B,theta} = (-1)^{floor(n/2)}.

    This rescales A_theta on every representation of GL_n by the same sign,
    chosen so that the Steinberg trace carries no overall sign.
    """
    return -1 if (rep.n // 2) % 2 else 1


def unit_sign(q: CompositionData, w: Permutation, rep: SteinbergProductRep) -> int:
    """eps_{Q,w} = +1 throughout (A_theta = f -> f o theta without rescaling)."""
    return 1


@dataclass(frozen=True)
class TraceResult:
    """A trace as a polynomial in q and q^alpha, plus its value when (p, alpha) is fixed."""

    poly: LaurentPoly
    value: Fraction | None = None
    p: int | None = None
    alpha: int | None = None

    def evaluated(self, p: int, alpha: int) -> "TraceResult":
        return TraceResult(self.poly, self.poly.evaluate_q(alpha, Fraction(p) ** 2), p, alpha)

    def to_json(self) -> list[dict] | str:
        if self.value is not None:
            return str(self.value)
        return [
            {"coefficient": str(c), "q_exp": qexp.to_json(), "sign_parity": parity}
            for (_, qexp, parity), c in self.poly.terms()
        ]

    def __str__(self) -> str:
        return str(self.value) if self.value is not None else str(self.poly)


def _check_rep(n: int, s: int, rep: SteinbergProductRep) -> None:
    if not isinstance(n, int) or n < 1 or not isinstance(s, int) or not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n with n >= 1, got n={n!r}, s={s!r}")
    if rep.n != n:
        raise ValueError(f"representation has size {rep.n}, expected {n}")
    if not rep.is_theta_stable():
        raise ValueError("blocks and characters must be palindromic for a theta-stable inducing datum")


def trace_summands(
    n: int, s: int, rep: SteinbergProductRep, sign: SignFunction | None = None
) -> list[tuple[CompositionData, Permutation, int, LaurentPoly]]:
    """Each (Q, w, eps_{Q,theta} * eps_{Q,w}, specialized truncated constant term)."""
    _check_rep(n, s, rep)
    sign = sign or borel_normalized_sign
    point = hecke_matrix(rep)
    out = []
    for q in theta_stable_parabolics(n):
        expansion = truncated_constant_term(n, s, q)
        if not len(expansion):
            continue
        reps = enumerate_G_theta_PQ(rep.blocks, q)
        if not reps:
            continue
        poly = expansion.to_poly()
        eps_q = epsilon_p_theta(q)
        for w in reps:
            e = sign(q, w, rep)
            if e not in (1, -1):
                raise ValueError("sign function must return +1 or -1")
            out.append((q, w, eps_q * e, poly.specialize(point.permuted(w))))
    return out


def twisted_compact_trace(
    n: int,
    s: int,
    rep: SteinbergProductRep,
    *,
    p: int | None = None,
    alpha: int | None = None,
    alpha_parity: int | None = None,
    sign: SignFunction | None = None,
) -> TraceResult:
    """Tr_theta(C_theta_c phi_{n alpha s}, pi A_theta) as a polynomial in q^alpha.

    With ``p`` and ``alpha`` the value at q = p^2 is filled in.  With only
    ``alpha_parity`` the (-1)^alpha flags are folded into the coefficients.
    """
    total = LaurentPoly.zero(0)
    for _, _, e, poly in trace_summands(n, s, rep, sign):
        total = total + poly * e
    return _finish(total, p, alpha, alpha_parity)


def _finish(total: LaurentPoly, p, alpha, alpha_parity) -> TraceResult:
    if (p is None) != (alpha is None):
        raise ValueError("numeric mode needs both p and alpha")
    if alpha_parity is not None:
        if alpha_parity not in (0, 1):
            raise ValueError("alpha_parity must be 0 (even) or 1 (odd)")
        if alpha is not None and alpha % 2 != alpha_parity:
            raise ValueError("alpha_parity contradicts alpha")
        total = total.resolve_parity(alpha_parity)
    result = TraceResult(total)
    if p is not None:
        _check_prime(p)
        result = result.evaluated(p, alpha)
    return result


def steinberg_shortcut(
    n: int,
    s: int,
    *,
    p: int | None = None,
    alpha: int | None = None,
    alpha_parity: int | None = None,
) -> TraceResult:
    """Trace against St_n read off the Borel alone.

    Sum over 0/1 vectors (s_1..s_n) with sum s passing the theta filter of
    q^{alpha (s(n-s) + sum_{s_i = 1} (n+1-2i)/2)}.
    """
    if not isinstance(n, int) or n < 1 or not isinstance(s, int) or not 0 <= s <= n:
        raise ValueError(f"need 0 <= s <= n with n >= 1, got n={n!r}, s={s!r}")
    terms: dict = {}
    for ext in extended_compositions(s, (1,) * n):
        if not theta_truncation_holds(ext):
            continue
        twice = 2 * s * (n - s) + sum(n + 1 - 2 * i for i, x in enumerate(ext, 1) if x)
        key = ((), AffineExp(0, twice), False)
        terms[key] = terms.get(key, 0) + 1
    return _finish(LaurentPoly(0, terms), p, alpha, alpha_parity)


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be a prime, got {p!r}")


@dataclass(frozen=True)
class GlobalInput:
    n: int
    s: int
    p: int
    alpha: int
    ker1: int
    terms: tuple[tuple[SteinbergProductRep, Fraction], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if not isinstance(self.alpha, int) or self.alpha < 1:
            raise ValueError("alpha must be a positive integer")
        if not isinstance(self.ker1, int) or self.ker1 < 1:
            raise ValueError("ker1 must be a positive integer")
        if not isinstance(self.n, int) or self.n < 1 or not isinstance(self.s, int) or not 0 <= self.s <= self.n:
            raise ValueError("need 0 <= s <= n with n >= 1")
        clean = []
        for rep, coeff in self.terms:
            if rep.n != self.n:
                raise ValueError(f"representation of size {rep.n} in a count for n={self.n}")
            clean.append((rep, parse_rational(coeff)))
        object.__setattr__(self, "terms", tuple(clean))

    def with_alpha(self, alpha: int) -> "GlobalInput":
        return GlobalInput(self.n, self.s, self.p, alpha, self.ker1, self.terms)


def point_count(data: GlobalInput, sign: SignFunction | None = None) -> QuadSurd:
    """ker1 * p^{e} * sum N_pi Tr(phi, pi) with the Kottwitz function chosen by dispatch.

    The value lies in Q(sqrt p): for n = 2s and odd alpha, e can be half-integral.
    """
    choice = kottwitz_dispatch(data.n, data.s, data.alpha)
    total = Fraction(0)
    for rep, coeff in data.terms:
        tr = twisted_compact_trace(choice.n, choice.s, rep, p=data.p, alpha=choice.alpha, sign=sign)
        total += coeff * tr.value
    result = QuadSurd.prime_power(data.p, choice.p_exponent.twice, data.ker1 * total)
    if not (result.is_rational and result.rational.denominator == 1):
        warnings.warn(f"point count {result} is not an integer; check the supplied N_pi", stacklevel=2)
    return result


def parity_relation_check(data: GlobalInput, k: int, sign: SignFunction | None = None) -> bool:
    """count(alpha = 2k) == p^{(k/2) s(n-s)} * count(alpha = k)."""
    if data.n != 2 * data.s:
        raise ValueError("the parity relation needs n = 2s")
    if not isinstance(k, int) or k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        even = point_count(data.with_alpha(2 * k), sign)
        odd = point_count(data.with_alpha(k), sign)
    return even == odd * QuadSurd.prime_power(data.p, k * data.s * (data.n - data.s))
