"""Zelevinsky segments and multisegments over (1/2)Z.

A segment <x, y> is the string x, x+1, ..., y.  The order on multisegments is
generated by elementary operations, which replace two linked segments by
their union and intersection.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

from .exactpoly import HalfInt, RationalLike, parse_rational

__all__ = [
    "Segment",
    "Multisegment",
    "ComplexTwist",
    "SpehSpec",
    "CThetaElement",
    "is_linked",
    "precedes",
    "elementary_operations",
    "linked_pair_count",
    "poset_below",
    "theta_dual",
    "speh_multisegment",
    "rho_multisegment",
    "is_fully_steinberg",
    "is_theta_stable",
    "reduce_to_theta_type",
    "enumerate_C_theta",
    "DEFAULT_LENGTH_BOUND",
]

DEFAULT_LENGTH_BOUND = 12


@dataclass(frozen=True, order=True, slots=True)
class Segment:
    begin: HalfInt
    end: HalfInt

    def __post_init__(self) -> None:
        diff = self.end.twice - self.begin.twice
        if diff < 0 or diff % 2:
            raise ValueError(f"<{self.begin},{self.end}> is not a segment")

    @classmethod
    def of(cls, begin: RationalLike, end: RationalLike) -> "Segment":
        return cls(HalfInt.of(begin), HalfInt.of(end))

    @property
    def length(self) -> int:
        return (self.end.twice - self.begin.twice) // 2 + 1

    def contains(self, other: "Segment") -> bool:
        return self.begin <= other.begin and other.end <= self.end

    def dual(self) -> "Segment":
        return Segment(-self.end, -self.begin)

    def is_self_dual(self) -> bool:
        return self.begin.twice == -self.end.twice

    def to_json(self) -> list[int]:
        return [self.begin.twice, self.end.twice]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Segment":
        if len(data) != 2:
            raise ValueError("a segment is [begin_twice, end_twice]")
        return cls(HalfInt(int(data[0])), HalfInt(int(data[1])))

    def __str__(self) -> str:
        return f"<{self.begin},{self.end}>"


@dataclass(frozen=True, order=True, slots=True)
class Multisegment:
    """Multiset of segments, stored sorted so equality is multiset equality."""

    segments: tuple[Segment, ...]

    def __init__(self, segments: Iterable[Segment] = ()):
        object.__setattr__(self, "segments", tuple(sorted(segments)))

    @classmethod
    def of(cls, *pairs: tuple[RationalLike, RationalLike]) -> "Multisegment":
        return cls(Segment.of(a, b) for a, b in pairs)

    def __iter__(self) -> Iterator[Segment]:
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)

    @property
    def total_length(self) -> int:
        return sum(s.length for s in self.segments)

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self.segments]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> "Multisegment":
        return cls(Segment.from_json(x) for x in data)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.segments)) + "}"


def is_linked(a: Segment, b: Segment) -> bool:
    """Neither contains the other and the union is again a segment."""
    if (a.begin.twice - b.begin.twice) % 2:
        return False
    if a.contains(b) or b.contains(a):
        return False
    # union is a string iff there is no gap between the two
    return b.begin.twice <= a.end.twice + 2 and a.begin.twice <= b.end.twice + 2


def precedes(a: Segment, b: Segment) -> bool:
    """a precedes b: linked and b starts later."""
    return is_linked(a, b) and b.begin > a.begin


def linked_pair_count(m: Multisegment) -> int:
    segs = m.segments
    return sum(1 for i in range(len(segs)) for j in range(i + 1, len(segs)) if is_linked(segs[i], segs[j]))


def elementary_operations(m: Multisegment) -> list[Multisegment]:
    """Every multisegment reached by one elementary operation, sorted, without repeats."""
    segs = m.segments
    out = set()
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            a, b = segs[i], segs[j]
            if not is_linked(a, b):
                continue
            lo, hi = (a, b) if a.begin < b.begin else (b, a)
            rest = list(segs[:i]) + list(segs[i + 1 : j]) + list(segs[j + 1 :])
            rest.append(Segment(lo.begin, hi.end))
            if hi.begin <= lo.end:
                rest.append(Segment(hi.begin, lo.end))
            out.add(Multisegment(rest))
    return sorted(out)


def poset_below(m: Multisegment, max_length: int = DEFAULT_LENGTH_BOUND) -> set[Multisegment]:
    """All b <= m, i.e. the closure of {m} under elementary operations."""
    if m.total_length > max_length:
        raise ValueError(f"total length {m.total_length} exceeds the bound {max_length}")
    return set(_closure(m))


_CLOSURE_CACHE: dict[Multisegment, frozenset[Multisegment]] = {}


def _closure(m: Multisegment) -> frozenset[Multisegment]:
    hit = _CLOSURE_CACHE.get(m)
    if hit is not None:
        return hit
    seen = {m}
    frontier = [m]
    while frontier:
        nxt = []
        for x in frontier:
            for y in elementary_operations(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    result = frozenset(seen)
    _CLOSURE_CACHE[m] = result
    return result


def theta_dual(m: Multisegment) -> Multisegment:
    return Multisegment(s.dual() for s in m.segments)


def is_theta_stable(m: Multisegment) -> bool:
    return theta_dual(m) == m


def is_fully_steinberg(m: Multisegment) -> bool:
    return all(s.is_self_dual() for s in m.segments)


def _positive(name: str, v: int) -> None:
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ValueError(f"{name} must be a positive integer, got {v!r}")


def speh_multisegment(x: int, y: int) -> Multisegment:
    """y segments of length x centred at (y-1)/2, (y-3)/2, ..., (1-y)/2."""
    _positive("x", x)
    _positive("y", y)
    segs = []
    for j in range(1, y + 1):
        begin_twice = (1 - x) + (y - (2 * j - 1))
        segs.append(Segment(HalfInt(begin_twice), HalfInt(begin_twice + 2 * (x - 1))))
    return Multisegment(segs)


def rho_multisegment(x: int, y: int) -> Multisegment:
    """Nested self-dual segments <-(x+y)/2 + j, (x+y)/2 - j>, j = 1..min(x, y)."""
    _positive("x", x)
    _positive("y", y)
    return Multisegment(
        Segment(HalfInt(-(x + y) + 2 * j), HalfInt((x + y) - 2 * j)) for j in range(1, min(x, y) + 1)
    )


@dataclass(frozen=True, slots=True)
class ComplexTwist:
    """The character |det|^{i d + e} with real d and e in (-1/2, 1/2)."""

    d: Fraction
    e: Fraction = Fraction(0)

    def __init__(self, d: RationalLike, e: RationalLike = 0):
        d, e = parse_rational(d), parse_rational(e)
        if not -Fraction(1, 2) < e < Fraction(1, 2):
            raise ValueError("e must lie in (-1/2, 1/2)")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "e", e)

    def inverse(self) -> "ComplexTwist":
        return ComplexTwist(-self.d, -self.e)

    def is_trivial(self) -> bool:
        return self.d == 0 and self.e == 0


Twist = Literal["trivial", "quadratic"] | ComplexTwist


@dataclass(frozen=True, slots=True)
class SpehSpec:
    x: int
    y: int
    twist: Twist = "trivial"

    def __post_init__(self) -> None:
        _positive("x", self.x)
        _positive("y", self.y)
        if not isinstance(self.twist, ComplexTwist) and self.twist not in ("trivial", "quadratic"):
            raise ValueError(f"unknown twist {self.twist!r}")

    @property
    def theta_type(self) -> bool:
        return self.twist in ("trivial", "quadratic")


def reduce_to_theta_type(factors: Sequence[SpehSpec]) -> list[SpehSpec]:
    """Strip complex twists that pair off with their inverses on equal (x, y)."""
    out = list(factors)
    pending: dict[int, SpehSpec] = {}
    for i, f in enumerate(out):
        if not isinstance(f.twist, ComplexTwist):
            continue
        if f.twist.is_trivial():
            out[i] = SpehSpec(f.x, f.y, "trivial")
            continue
        partner = next(
            (
                j
                for j, g in pending.items()
                if (g.x, g.y) == (f.x, f.y) and g.twist == f.twist.inverse()
            ),
            None,
        )
        if partner is None:
            pending[i] = f
        else:
            del pending[partner]
            out[i] = SpehSpec(f.x, f.y, "trivial")
            out[partner] = SpehSpec(f.x, f.y, "trivial")
    if pending:
        bad = next(iter(pending.values()))
        raise ValueError(f"twist {bad.twist} on Speh({bad.x},{bad.y}) has no theta-dual partner")
    return out


@dataclass(frozen=True, slots=True)
class CThetaElement:
    factors: tuple[Multisegment, ...]
    kind: Literal["I", "II", "III"]

    def to_json(self) -> dict:
        return {"factors": [m.to_json() for m in self.factors], "type": self.kind}


def _kind(factors: Sequence[Multisegment]) -> Literal["I", "II", "III"]:
    if not all(is_theta_stable(b) for b in factors):
        return "III"
    if all(is_fully_steinberg(b) for b in factors):
        return "I"
    return "II"


def enumerate_C_theta(pi: Sequence[SpehSpec], max_length: int = DEFAULT_LENGTH_BOUND) -> list[CThetaElement]:
    """theta-stable tuples (b_1..b_k) with b_i <= Speh(x_i, y), each tagged I/II/III.

    Stability is tested on the multiset of (segment, twist) pairs of the whole
    product, so a factor may be non-stable if a partner factor mirrors it.
    """
    if any(not f.theta_type for f in pi):
        raise ValueError("enumerate_C_theta needs trivial or quadratic twists")
    total = sum(f.x * f.y for f in pi)
    if total > max_length:
        raise ValueError(f"total length {total} exceeds the bound {max_length}")
    posets = [sorted(_closure(speh_multisegment(f.x, f.y))) for f in pi]
    twists = [f.twist for f in pi]
    out = []

    def rec(i: int, chosen: list[Multisegment]) -> None:
        if i == len(pi):
            bag = Counter((s, t) for b, t in zip(chosen, twists) for s in b)
            dual = Counter({(s.dual(), t): c for (s, t), c in bag.items()})
            if bag == dual:
                out.append(CThetaElement(tuple(chosen), _kind(chosen)))
            return
        for b in posets[i]:
            chosen.append(b)
            rec(i + 1, chosen)
            chosen.pop()

    rec(0, [])
    return out
