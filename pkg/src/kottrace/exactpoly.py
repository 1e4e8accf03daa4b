"""Exact arithmetic: half-integers, exponents affine in alpha, Laurent polynomials.

Every exponent is stored in halves so that ``3`` in a ``twice`` field means 3/2.
Nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "HalfInt",
    "AffineExp",
    "LaurentPoly",
    "QuadSurd",
    "poly_add",
    "poly_mul",
    "poly_eval_signed",
    "exact_power",
    "parse_rational",
]

RationalLike = int | Fraction | str


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as a rational")


@dataclass(frozen=True, order=True, slots=True)
class HalfInt:
    """An element of (1/2)Z stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, value: RationalLike) -> "HalfInt":
        frac = parse_rational(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return cls(int(doubled))

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def scale(self, k: int) -> "HalfInt":
        return HalfInt(self.twice * k)

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, order=True, slots=True)
class AffineExp:
    """The exponent ``const + coeff * alpha``, both parts in halves."""

    const_twice: int = 0
    alpha_twice: int = 0

    @classmethod
    def of(cls, const: RationalLike = 0, alpha_coeff: RationalLike = 0) -> "AffineExp":
        return cls(HalfInt.of(const).twice, HalfInt.of(alpha_coeff).twice)

    @classmethod
    def alpha(cls, coeff: RationalLike = 1) -> "AffineExp":
        return cls.of(0, coeff)

    @property
    def const_part(self) -> HalfInt:
        return HalfInt(self.const_twice)

    @property
    def alpha_coeff(self) -> HalfInt:
        return HalfInt(self.alpha_twice)

    def __add__(self, other: "AffineExp") -> "AffineExp":
        return AffineExp(self.const_twice + other.const_twice, self.alpha_twice + other.alpha_twice)

    def __sub__(self, other: "AffineExp") -> "AffineExp":
        return AffineExp(self.const_twice - other.const_twice, self.alpha_twice - other.alpha_twice)

    def __neg__(self) -> "AffineExp":
        return AffineExp(-self.const_twice, -self.alpha_twice)

    def scale(self, k: int) -> "AffineExp":
        return AffineExp(self.const_twice * k, self.alpha_twice * k)

    def is_zero(self) -> bool:
        return self.const_twice == 0 and self.alpha_twice == 0

    def resolve(self, alpha: int) -> Fraction:
        return Fraction(self.const_twice + self.alpha_twice * alpha, 2)

    def to_json(self) -> list[int]:
        return [self.const_twice, self.alpha_twice]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "AffineExp":
        if len(data) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
            raise ValueError(f"affine exponent must be two integers, got {data!r}")
        return cls(data[0], data[1])

    def __str__(self) -> str:
        c, a = self.const_part.value, self.alpha_coeff.value
        if a == 0:
            return str(c)
        alpha = {1: "α", -1: "-α"}.get(a, f"{a}α")
        if c == 0:
            return alpha
        return f"{c}+{alpha}" if c > 0 else f"{alpha}{c}"


ZERO_EXP = AffineExp()

# (per-variable exponents, q exponent, tracks (-1)^alpha)
TermKey = tuple[tuple[AffineExp, ...], AffineExp, bool]


def _integer_root(x: int, k: int) -> int | None:
    # only power-of-two roots arise from half-integer exponent lattices
    if k & (k - 1):
        return None
    while k > 1:
        r = math.isqrt(x)
        if r * r != x:
            return None
        x, k = r, k // 2
    return x


def exact_power(base: Fraction, exponent: Fraction) -> Fraction:
    """``base ** exponent`` as an exact rational, or ValueError if irrational."""
    if base <= 0:
        raise ValueError("base must be positive")
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** int(exponent)
    k = exponent.denominator
    num = _integer_root(base.numerator, k)
    den = _integer_root(base.denominator, k)
    if num is None or den is None:
        raise ValueError(f"{base}^{exponent} is not rational")
    return Fraction(num, den) ** exponent.numerator


class LaurentPoly:
    """Multivariate Laurent polynomial with exponents affine in alpha.

    A term is ``coeff * (-1)^(alpha*parity) * q^e * prod_j Y_j^{e_j}``.
    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[TermKey, RationalLike] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = num_vars
        clean: dict[TermKey, Fraction] = {}
        for key, coeff in (terms or {}).items():
            exps, qexp, parity = key
            if len(exps) != num_vars:
                raise ValueError("exponent vector length does not match num_vars")
            c = parse_rational(coeff)
            if c:
                k = (tuple(exps), qexp, bool(parity))
                clean[k] = clean.get(k, Fraction(0)) + c
                if not clean[k]:
                    del clean[k]
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict[TermKey, Fraction]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, num_vars: int = 0) -> "LaurentPoly":
        return cls._raw(num_vars, {})

    @classmethod
    def constant(cls, c: RationalLike = 1, num_vars: int = 0) -> "LaurentPoly":
        return cls(num_vars, {((ZERO_EXP,) * num_vars, ZERO_EXP, False): c})

    @classmethod
    def monomial(
        cls,
        num_vars: int,
        exps: Mapping[int, AffineExp] | Sequence[AffineExp] = (),
        q_exp: AffineExp = ZERO_EXP,
        coeff: RationalLike = 1,
        parity: bool = False,
    ) -> "LaurentPoly":
        """Single term; ``exps`` maps 0-based variable index to exponent."""
        vec = [ZERO_EXP] * num_vars
        items = exps.items() if isinstance(exps, Mapping) else enumerate(exps)
        for j, e in items:
            vec[j] = e
        return cls(num_vars, {(tuple(vec), q_exp, parity): coeff})

    @classmethod
    def variable(cls, j: int, num_vars: int, exp: AffineExp = AffineExp.of(1)) -> "LaurentPoly":
        return cls.monomial(num_vars, {j: exp})

    @classmethod
    def q_power(cls, exp: AffineExp, num_vars: int = 0) -> "LaurentPoly":
        return cls.monomial(num_vars, (), exp)

    # inspection

    def terms(self) -> list[tuple[TermKey, Fraction]]:
        """Terms in canonical (lexicographic) order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[TermKey, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.num_vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    # ring operations

    def _coerce(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.num_vars != self.num_vars:
                raise ValueError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")
            return other
        return LaurentPoly.constant(parse_rational(other), self.num_vars)

    def __add__(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.num_vars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: RationalLike) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: "LaurentPoly | RationalLike") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = parse_rational(other)
            if not c:
                return LaurentPoly.zero(self.num_vars)
            return LaurentPoly._raw(self.num_vars, {k: v * c for k, v in self._terms.items()})
        other = self._coerce(other)
        out: dict[TermKey, Fraction] = {}
        for (e1, q1, p1), c1 in self._terms.items():
            for (e2, q2, p2), c2 in other._terms.items():
                k = (tuple(a + b for a, b in zip(e1, e2)), q1 + q2, p1 != p2)
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return LaurentPoly._raw(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("only non-negative powers of polynomials")
        result = LaurentPoly.constant(1, self.num_vars)
        for _ in range(k):
            result = result * self
        return result

    # structural maps

    def embed(self, num_vars: int, offset: int) -> "LaurentPoly":
        """View this polynomial inside a larger ring, variable j going to j + offset."""
        if offset < 0 or offset + self.num_vars > num_vars:
            raise ValueError("embedding does not fit")
        pad_l = (ZERO_EXP,) * offset
        pad_r = (ZERO_EXP,) * (num_vars - offset - self.num_vars)
        return LaurentPoly._raw(
            num_vars, {(pad_l + e + pad_r, q, p): c for (e, q, p), c in self._terms.items()}
        )

    def permute_vars(self, perm: Sequence[int]) -> "LaurentPoly":
        """Send variable j to variable perm[j] (0-based)."""
        if sorted(perm) != list(range(self.num_vars)):
            raise ValueError("not a permutation of the variables")
        out = {}
        for (e, q, p), c in self._terms.items():
            vec = [ZERO_EXP] * self.num_vars
            for j, x in enumerate(e):
                vec[perm[j]] = x
            out[(tuple(vec), q, p)] = c
        return LaurentPoly._raw(self.num_vars, out)

    def invert_vars(self, which: Iterable[int]) -> "LaurentPoly":
        """Substitute Y_j -> Y_j^{-1} for the listed variables."""
        flip = set(which)
        out = {}
        for (e, q, p), c in self._terms.items():
            vec = tuple(-x if j in flip else x for j, x in enumerate(e))
            out[(vec, q, p)] = c
        return LaurentPoly._raw(self.num_vars, out)

    def resolve_parity(self, alpha_parity: int) -> "LaurentPoly":
        """Fold the (-1)^alpha flags into coefficients for a known parity of alpha."""
        odd = alpha_parity % 2 == 1
        out: dict[TermKey, Fraction] = {}
        for (e, q, p), c in self._terms.items():
            k = (e, q, False)
            v = out.get(k, 0) + (-c if (p and odd) else c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.num_vars, out)

    def monomial_degrees(self) -> list[AffineExp]:
        """Total variable degree of each term, in canonical order."""
        degs = []
        for (e, _, _), _ in self.terms():
            total = ZERO_EXP
            for x in e:
                total = total + x
            degs.append(total)
        return degs

    def specialize(self, point: Iterable[tuple[int, HalfInt | RationalLike]]) -> "LaurentPoly":
        """Substitute Y_j -> sign_j * q^{t_j} keeping alpha symbolic.

        Signs raised to alpha-dependent powers become parity flags.  Fails if
        an exponent leaves the half-integer lattice or a negative sign meets a
        non-integral power.
        """
        pts = [(int(s), t if isinstance(t, HalfInt) else HalfInt.of(t)) for s, t in point]
        if len(pts) != self.num_vars:
            raise ValueError(f"point has {len(pts)} entries, polynomial has {self.num_vars} variables")
        out: dict[TermKey, Fraction] = {}
        for (e, qexp, parity), c in self._terms.items():
            for (sign, t), x in zip(pts, e):
                if x.is_zero():
                    continue
                c2, a2 = x.const_twice * t.twice, x.alpha_twice * t.twice
                if c2 % 2 or a2 % 2:
                    raise ValueError("exponent leaves the half-integer lattice")
                qexp = qexp + AffineExp(c2 // 2, a2 // 2)
                if sign == -1:
                    if x.const_twice % 2 or x.alpha_twice % 2:
                        raise ValueError("negative sign raised to a non-integral power")
                    if (x.const_twice // 2) % 2:
                        c = -c
                    if (x.alpha_twice // 2) % 2:
                        parity = not parity
                elif sign != 1:
                    raise ValueError("signs must be +1 or -1")
            k = ((), qexp, parity)
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(0, out)

    # evaluation

    def evaluate(self, point: Iterable[tuple[int, HalfInt | RationalLike]], alpha: int, q: RationalLike) -> Fraction:
        return poly_eval_signed(self, point, alpha, q)

    def evaluate_q(self, alpha: int, q: RationalLike) -> Fraction:
        """Evaluate a polynomial in zero variables."""
        if self.num_vars:
            raise ValueError("polynomial still has variables")
        return poly_eval_signed(self, (), alpha, q)

    # serialization

    def to_records(self) -> list[dict]:
        return [
            {
                "coefficient": str(c),
                "q_exponent": q.to_json(),
                "var_exponents": [x.to_json() for x in e],
                "sign_parity": p,
            }
            for (e, q, p), c in self.terms()
        ]

    @classmethod
    def from_records(cls, num_vars: int, records: Iterable[Mapping]) -> "LaurentPoly":
        terms: dict[TermKey, Fraction] = {}
        for rec in records:
            e = tuple(AffineExp.from_json(x) for x in rec["var_exponents"])
            k = (e, AffineExp.from_json(rec["q_exponent"]), bool(rec.get("sign_parity", False)))
            terms[k] = terms.get(k, Fraction(0)) + parse_rational(rec["coefficient"])
        return cls(num_vars, terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.num_vars}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (e, q, p), c in self.terms():
            factors = []
            if p:
                factors.append("(-1)^α")
            if not q.is_zero():
                factors.append(f"q^{{{q}}}")
            for j, x in enumerate(e):
                if not x.is_zero():
                    factors.append(f"Y{j + 1}" if x == AffineExp.of(1) else f"Y{j + 1}^{{{x}}}")
            body = "·".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}·{body}")
        return " + ".join(parts)


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def _sign_power(sign: int, exponent: Fraction) -> int:
    if sign == 1:
        return 1
    if exponent.denominator != 1:
        raise ValueError("negative base raised to a non-integer exponent")
    return -1 if exponent.numerator % 2 else 1


def poly_eval_signed(
    p: LaurentPoly,
    point: Iterable[tuple[int, HalfInt | RationalLike]],
    alpha: int,
    q: RationalLike,
) -> Fraction:
    """Substitute Y_j -> sign_j * q^{t_j} at a concrete alpha and q.

    ``point`` is a sequence of (sign, exponent) pairs, one per variable.
    """
    pts = [(int(s), t.value if isinstance(t, HalfInt) else parse_rational(t)) for s, t in point]
    if len(pts) != p.num_vars:
        raise ValueError(f"point has {len(pts)} entries, polynomial has {p.num_vars} variables")
    if any(s not in (1, -1) for s, _ in pts):
        raise ValueError("signs must be +1 or -1")
    if not isinstance(alpha, int) or alpha < 1:
        raise ValueError("alpha must be a positive integer")
    qq = parse_rational(q)
    if qq <= 0:
        raise ValueError("q must be positive")
    total = Fraction(0)
    for (e, qexp, parity), c in p._terms.items():
        sign = -1 if (parity and alpha % 2) else 1
        power = qexp.resolve(alpha)
        for (s, t), x in zip(pts, e):
            if x.is_zero():
                continue
            ex = x.resolve(alpha)
            sign *= _sign_power(s, ex)
            power += ex * t
        total += c * sign * exact_power(qq, power)
    return total


@dataclass(frozen=True, slots=True)
class QuadSurd:
    """The exact number ``rational + surd * sqrt(radicand)``.

    Point counts pick up half-integral powers of p in one dispatch case, so
    they live in Q(sqrt(p)) rather than Q.
    """

    rational: Fraction
    surd: Fraction
    radicand: int

    def __post_init__(self) -> None:
        if self.radicand < 2 or math.isqrt(self.radicand) ** 2 == self.radicand:
            raise ValueError("radicand must be a non-square integer > 1")

    @classmethod
    def of(cls, value: RationalLike, radicand: int) -> "QuadSurd":
        return cls(parse_rational(value), Fraction(0), radicand)

    @classmethod
    def prime_power(cls, p: int, twice_exp: int, coeff: RationalLike = 1) -> "QuadSurd":
        """``coeff * p^(twice_exp/2)``."""
        c = parse_rational(coeff)
        whole, half = divmod(twice_exp, 2)
        base = c * Fraction(p) ** whole
        return cls(Fraction(0), base, p) if half else cls(base, Fraction(0), p)

    def _check(self, other: "QuadSurd") -> None:
        if other.radicand != self.radicand:
            raise ValueError("different radicands")

    def __add__(self, other: "QuadSurd | RationalLike") -> "QuadSurd":
        if not isinstance(other, QuadSurd):
            return QuadSurd(self.rational + parse_rational(other), self.surd, self.radicand)
        self._check(other)
        return QuadSurd(self.rational + other.rational, self.surd + other.surd, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.rational, -self.surd, self.radicand)

    def __sub__(self, other: "QuadSurd | RationalLike") -> "QuadSurd":
        return self + (-other if isinstance(other, QuadSurd) else -parse_rational(other))

    def __mul__(self, other: "QuadSurd | RationalLike") -> "QuadSurd":
        if not isinstance(other, QuadSurd):
            c = parse_rational(other)
            return QuadSurd(self.rational * c, self.surd * c, self.radicand)
        self._check(other)
        a, b, c, d = self.rational, self.surd, other.rational, other.surd
        return QuadSurd(a * c + b * d * self.radicand, a * d + b * c, self.radicand)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.surd == 0 and self.rational == other
        if not isinstance(other, QuadSurd):
            return NotImplemented
        if self.radicand != other.radicand:
            return self.surd == other.surd == 0 and self.rational == other.rational
        return self.rational == other.rational and self.surd == other.surd

    def __hash__(self) -> int:
        if self.surd == 0:
            return hash(self.rational)
        return hash((self.rational, self.surd, self.radicand))

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    def to_fraction(self) -> Fraction:
        if self.surd:
            raise ValueError(f"{self} is irrational")
        return self.rational

    def __str__(self) -> str:
        if self.surd == 0:
            return str(self.rational)
        s = f"{self.surd}*sqrt({self.radicand})"
        if self.rational == 0:
            return s
        return f"{self.rational}+{s}" if self.surd > 0 else f"{self.rational}{s}"
