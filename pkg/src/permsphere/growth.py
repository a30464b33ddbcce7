"""Counting polynomials in the guarded binomial basis, and closed forms.

The binomial basis is the source of truth: a term (c, m, q) denotes
c * [n+q-m choose q] with the i < 0 guard, so evaluation is an exact count
for *every* n >= 1, not only in the polynomial range n >= N(R).  The
monomial expansion over exact rationals is a derived view.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .enumeration import attainable_radii, beta_table, size_bound
from .metrics import L1, MetricId
from .perm import guarded_binom


class _NotCovered:
    """Sentinel: the requested parameters fall outside every closed-form family."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_COVERED"

    def __bool__(self) -> bool:
        return False


NOT_COVERED = _NotCovered()


@dataclass(frozen=True)
class BinomialPoly:
    """Sum of terms c * [n+q-m choose q]; coefficients are positive counts."""

    terms: tuple[tuple[int, int, int], ...]  # (coefficient, m, q), sorted by (q, m)
    metric: str = "l1"
    radius: int = 0

    def __post_init__(self) -> None:
        cleaned = {}
        for coef, m, q in self.terms:
            if coef < 0:
                raise ValueError(f"negative coefficient {coef} at (m={m}, q={q})")
            if coef == 0:
                continue
            if (m, q) in cleaned:
                raise ValueError(f"duplicate term at (m={m}, q={q})")
            cleaned[(m, q)] = coef
        ordered = tuple(
            (cleaned[(m, q)], m, q) for (m, q) in sorted(cleaned, key=lambda mq: (mq[1], mq[0]))
        )
        object.__setattr__(self, "terms", ordered)

    @property
    def degree(self) -> int:
        return max((q for _, _, q in self.terms), default=0)

    def coefficient(self, m: int, q: int) -> int:
        for coef, tm, tq in self.terms:
            if (tm, tq) == (m, q):
                return coef
        return 0

    def evaluate(self, n: int) -> int:
        """Guarded evaluation: exact for every n >= 1."""
        return sum(c * guarded_binom(n + q - m, q) for c, m, q in self.terms)

    def evaluate_unguarded(self, n: int) -> int:
        """Plain binomial evaluation; only valid in the polynomial range."""
        total = 0
        for c, m, q in self.terms:
            i = n + q - m
            prod = 1
            for t in range(q):
                prod *= i - t
            total += c * prod // math.factorial(q)
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, m, q in sorted(self.terms, key=lambda t: (-t[2], t[1])):
            if q == 0:
                parts.append(str(c))
            else:
                shift = m - q
                arg = f"n-{shift}" if shift > 0 else "n"
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}[{arg} choose {q}]")
        return " + ".join(parts)

    def as_dict(self) -> dict:
        return {
            "metric": self.metric,
            "radius": self.radius,
            "basis": "binomial",
            "terms": [{"coef": str(c), "m": m, "q": q} for c, m, q in self.terms],
        }


@dataclass(frozen=True)
class RationalPoly:
    """Monomial-basis polynomial with exact rational coefficients, ascending."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, n: int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * n + c
        return total

    @property
    def denominator(self) -> int:
        d = 1
        for c in self.coefficients:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    @property
    def integer_coefficients(self) -> tuple[int, ...]:
        """Coefficients of denominator * poly, all integers."""
        d = self.denominator
        out = []
        for c in self.coefficients:
            scaled = c * d
            assert scaled.denominator == 1
            out.append(scaled.numerator)
        return tuple(out)

    def __str__(self) -> str:
        def mono(i: int) -> str:
            return "1" if i == 0 else ("n" if i == 1 else f"n^{i}")

        num = []
        for i in range(self.degree, -1, -1):
            c = self.integer_coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if num else "")
            mag = abs(c)
            body = mono(i) if (mag == 1 and i > 0) else (str(mag) if i == 0 else f"{mag}n" if i == 1 else f"{mag}n^{i}")
            num.append(f"{sign}{body}" if not num else f" {sign} {body}")
        inner = "".join(num) or "0"
        d = self.denominator
        return inner if d == 1 else f"({inner})/{d}"

    def as_dict(self) -> dict:
        return {
            "denominator": str(self.denominator),
            "coefficients": [str(c) for c in self.integer_coefficients],
        }


# -- construction from the beta tables ------------------------------------


def sphere_polynomial(metric: MetricId, radius: int) -> BinomialPoly:
    """The counting polynomial for spheres of the given radius."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius == 0:
        return BinomialPoly(((1, 0, 0),), metric.name, 0)
    if metric.kind == "l1" and radius % 2 == 1:
        return BinomialPoly((), metric.name, radius)
    bound = size_bound(metric, radius)
    table = beta_table(metric)
    terms = []
    for q in range(1, bound + 1):
        for m in range(2 * q, q + bound + 1):
            b = table.beta(radius, m, q)
            if b:
                terms.append((b, m, q))
    return BinomialPoly(tuple(terms), metric.name, radius)


def ball_polynomial(metric: MetricId, radius: int) -> BinomialPoly:
    """The counting polynomial for balls: constant 1 plus the alpha terms."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    table = beta_table(metric)
    acc: dict[tuple[int, int], int] = {(0, 0): 1}
    for r in attainable_radii(metric, radius):
        bound = size_bound(metric, r)
        for q in range(1, bound + 1):
            for m in range(2 * q, q + bound + 1):
                b = table.beta(r, m, q)
                if b:
                    acc[(m, q)] = acc.get((m, q), 0) + b
    terms = tuple((c, m, q) for (m, q), c in acc.items())
    return BinomialPoly(terms, metric.name, radius)


def eval_guarded(poly: BinomialPoly, n: int) -> int:
    return poly.evaluate(n)


def to_rational(poly: BinomialPoly) -> RationalPoly:
    """Exact monomial expansion; valid as a count for n >= N(R)."""
    coeffs = [Fraction(0)]
    for c, m, q in poly.terms:
        # binom(n+q-m, q) = (1/q!) * prod_{t=0..q-1} (n + q - m - t)
        term = [Fraction(c, math.factorial(q))]
        for t in range(q):
            shift = q - m - t
            term = _poly_mul_linear(term, shift)
        coeffs = _poly_add(coeffs, term)
    return RationalPoly(tuple(coeffs))


def _poly_mul_linear(coeffs: list[Fraction], shift: int) -> list[Fraction]:
    """Multiply by (n + shift)."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] += c
        out[i] += c * shift
    return out


def _poly_add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [
        (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
        for i in range(n)
    ]


# -- closed forms for l1 --------------------------------------------------


def closed_form_beta(k: int, m: int, q: int):
    """beta_{l1}(2k, m, q) from a covered closed-form family, else NOT_COVERED.

    The boundary cases with a negative power of 3 are evaluated through an
    exact rational intermediate and asserted to come out integral.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if q < 1 or m < 2 * q:
        return 0
    if m - q > k:
        return 0
    # Spheres of maximal radius in S_m, and emptiness beyond the maximum.
    r, odd = divmod(m, 2)
    k_max = r * r + (r if odd else 0)
    if k > k_max:
        return 0
    if k == k_max and m >= 2:
        if q != 1:
            return 0
        count = math.factorial(r) ** 2
        return (2 * r + 1) * count if odd else count
    if m == k + q:
        return math.comb(k - 1, q - 1) * 3 ** (k - q)
    if m == k + q - 1:
        if q > k - 3:
            return 0
        return 4 * (k - 3) * math.comb(k - 4, q - 1) * 3 ** (k - q - 3)
    if m == k + q - 2:
        if q > k - 5:
            return 0
        inner = (k - 6) * guarded_binom(k - 7, q - 1) + 15 * guarded_binom(k - 6, q - 1)
        value = Fraction(4 * (k - 5) * inner) * Fraction(3) ** (k - q - 6)
        assert value.denominator == 1, f"non-integer closed form at (k={k}, m={m}, q={q})"
        return value.numerator
    if q == k - 8 and m == 2 * k - 12 and k >= 9:
        return 36 * (k - 8)
    if m == k + q - 3:
        if q > k - 7:
            return 0
        d = k - q
        value = (
            Fraction(4 * (k - 7) * guarded_binom(k - 8, q - 1) * (8 * d * d + 60 * d - 137))
            * Fraction(3) ** (k - q - 10)
        )
        assert value.denominator == 1, f"non-integer closed form at (k={k}, m={m}, q={q})"
        return value.numerator
    return NOT_COVERED


def q_polynomial(k: int) -> BinomialPoly:
    """The truncation of the l1 sphere polynomial to the cells m >= k+q-3,
    plus the single stray cell (m, q) = (2k-12, k-8) for k >= 9.

    Identical to the full sphere polynomial for k <= 9.
    """
    if k < 1:
        raise ValueError("k must be positive")
    table = beta_table(L1)
    acc: dict[tuple[int, int], int] = {}
    for q in range(1, k + 1):
        for m in range(max(2 * q, k + q - 3), k + q + 1):
            b = table.beta(2 * k, m, q)
            if b:
                acc[(m, q)] = acc.get((m, q), 0) + b
    if k >= 9:
        acc[(2 * k - 12, k - 8)] = acc.get((2 * k - 12, k - 8), 0) + 36 * (k - 8)
    terms = tuple((c, m, q) for (m, q), c in acc.items())
    return BinomialPoly(terms, "l1", 2 * k)


def r_polynomial(k: int) -> BinomialPoly:
    """The m = k + q slice of the l1 sphere polynomial, in closed form.

    Exact for k <= 3; agrees with the full polynomial on high-degree terms.
    """
    if k < 1:
        raise ValueError("k must be positive")
    terms = tuple(
        (math.comb(k - 1, q - 1) * 3 ** (k - q), k + q, q) for q in range(1, k + 1)
    )
    return BinomialPoly(terms, "l1", 2 * k)


def series_coefficients(k: int, count: int) -> list[int]:
    """First count+1 Taylor coefficients of X^{k+1} (2X-3)^{k-1} / (X-1)^{k+1}.

    Exact long division; coefficient n equals the guarded evaluation of the
    m = k + q slice polynomial at n.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if count < 0:
        raise ValueError("count must be nonnegative")
    # numerator: X^{k+1} * (2X - 3)^{k-1}
    num = [0] * (k + 1) + [
        math.comb(k - 1, j) * (2**j) * ((-3) ** (k - 1 - j)) for j in range(k)
    ]
    # denominator: (X - 1)^{k+1}
    den = [math.comb(k + 1, j) * ((-1) ** (k + 1 - j)) for j in range(k + 2)]
    coeffs = []
    for n in range(count + 1):
        s = num[n] if n < len(num) else 0
        for j in range(1, min(n, k + 1) + 1):
            s -= den[j] * coeffs[n - j]
        quot, rem = divmod(s, den[0])
        assert rem == 0, "series division left a remainder"
        coeffs.append(quot)
    return coeffs


# -- Hamming spheres ------------------------------------------------------


@lru_cache(maxsize=None)
def derangements(j: int) -> int:
    """D_j via the exact recurrence D_j = (j-1)(D_{j-1} + D_{j-2})."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    if j == 0:
        return 1
    if j == 1:
        return 0
    return (j - 1) * (derangements(j - 1) + derangements(j - 2))


def hamming_sphere(n: int, j: int) -> int:
    """#{u in S_n : H(u) = j} = D_j * C(n, j)."""
    if n < 0 or j < 0:
        raise ValueError("n and j must be nonnegative")
    return derangements(j) * math.comb(n, j)


def leading_term_check(k: int) -> bool:
    """True iff the l1 sphere polynomial at radius 2k has leading term
    exactly 1 * [n-k choose k] and every other term of lower degree."""
    if k < 1:
        raise ValueError("k must be positive")
    poly = sphere_polynomial(L1, 2 * k)
    top = [(c, m, q) for c, m, q in poly.terms if q == k]
    return top == [(1, 2 * k, k)]
