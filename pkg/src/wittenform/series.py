"""Degree-truncated multivariate formal power series over exact rationals.

A series with degree cap N stores only terms of total degree strictly less
than N; "A congruent to B mod h^N" means all coefficients of total degree
< N agree. Terms of degree >= cap are unknowable after truncation, so
requesting them raises rather than returning 0.

Cohomology classes act on h through the intersection form: a class k stored
as a lattice vector contributes the linear form sum_j pairing(k, e_j) h_j.
The identification is exact because the form is unimodular.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch, TruncationError
from .lattice import IntersectionForm

Exponents = tuple[int, ...]

_TERM_RE = re.compile(r"^h(\d+)\^(\d+)$")
_HEADER_RE = re.compile(r"^series vars=(\d+) cap=(\d+)$")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class FormalSeries:
    """Sparse canonical truncated polynomial: exponent tuple -> Fraction.

    Instances are treated as immutable values; every operation returns a new
    series. Zero coefficients and terms at or above the degree cap are never
    stored.
    """

    __slots__ = ("num_vars", "degree_cap", "terms")

    def __init__(self, num_vars: int, degree_cap: int,
                 terms: Optional[Mapping[Exponents, Fraction]] = None):
        if num_vars < 0 or degree_cap < 0:
            raise ValueError("num_vars and degree_cap must be non-negative")
        self.num_vars = num_vars
        self.degree_cap = degree_cap
        clean: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != num_vars:
                    raise DimensionMismatch(
                        f"exponent tuple {exps} does not have {num_vars} entries")
                if sum(exps) >= degree_cap:
                    continue
                c = _as_fraction(coeff)
                if c != 0:
                    clean[tuple(int(e) for e in exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, degree_cap: int) -> "FormalSeries":
        return cls(num_vars, degree_cap)

    @classmethod
    def constant(cls, value, num_vars: int, degree_cap: int) -> "FormalSeries":
        return cls(num_vars, degree_cap, {(0,) * num_vars: _as_fraction(value)})

    @classmethod
    def one(cls, num_vars: int, degree_cap: int) -> "FormalSeries":
        return cls.constant(1, num_vars, degree_cap)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        exps = tuple(int(e) for e in exponents)
        if len(exps) != self.num_vars:
            raise DimensionMismatch("exponent tuple has wrong length")
        if sum(exps) >= self.degree_cap:
            raise TruncationError(
                f"degree {sum(exps)} >= cap {self.degree_cap}: truncated away")
        return self.terms.get(exps, Fraction(0))

    def support_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and self.degree_cap == other.degree_cap
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self.degree_cap,
                     tuple(sorted(self.terms.items()))))

    # -- ring operations -----------------------------------------------------

    def _match(self, other: "FormalSeries") -> int:
        if self.num_vars != other.num_vars:
            raise DimensionMismatch(
                f"series in {self.num_vars} and {other.num_vars} variables")
        return min(self.degree_cap, other.degree_cap)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalSeries.constant(other, self.num_vars, self.degree_cap)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        cap = self._match(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + c
        return FormalSeries(self.num_vars, cap, out)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(self.num_vars, self.degree_cap,
                            {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FormalSeries.constant(other, self.num_vars, self.degree_cap)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return FormalSeries(self.num_vars, self.degree_cap,
                                {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, FormalSeries):
            return NotImplemented
        cap = self._match(other)
        # bucket by total degree so pairs that truncate away are never formed
        buckets_a = self._degree_buckets()
        buckets_b = other._degree_buckets()
        out: dict[Exponents, Fraction] = {}
        for da, items_a in buckets_a:
            if da >= cap:
                break
            for db, items_b in buckets_b:
                if da + db >= cap:
                    break
                for ea, ca in items_a:
                    for eb, cb in items_b:
                        key = tuple(x + y for x, y in zip(ea, eb))
                        prev = out.get(key)
                        out[key] = ca * cb if prev is None else prev + ca * cb
        return FormalSeries(self.num_vars, cap, out)

    def _degree_buckets(self):
        buckets: dict[int, list] = {}
        for exps, coeff in self.terms.items():
            buckets.setdefault(sum(exps), []).append((exps, coeff))
        return sorted(buckets.items())

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = FormalSeries.one(self.num_vars, self.degree_cap)
        for _ in range(n):
            result = result * self
        return result

    # -- truncation-aware operations ------------------------------------------

    def truncate_to(self, n: int) -> "FormalSeries":
        if n > self.degree_cap:
            raise TruncationError(
                f"cannot extend cap {self.degree_cap} to {n}")
        return FormalSeries(self.num_vars, n, self.terms)

    def homogeneous_part(self, d: int) -> "HomogeneousPolynomial":
        if d >= self.degree_cap:
            raise TruncationError(
                f"degree {d} >= cap {self.degree_cap}: truncated away")
        part = {e: c for e, c in self.terms.items() if sum(e) == d}
        return HomogeneousPolynomial(self.num_vars, self.degree_cap, part, degree=d)

    def congruent_mod_degree(self, other: "FormalSeries", n: int) -> bool:
        """True iff all coefficients of total degree < n agree."""
        if self.num_vars != other.num_vars:
            raise DimensionMismatch("variable counts differ")
        if n > self.degree_cap or n > other.degree_cap:
            raise TruncationError(
                f"cannot certify congruence mod degree {n} with caps "
                f"{self.degree_cap} and {other.degree_cap}")
        return first_difference(self, other, n) is None

    def derivative(self, var: int) -> "FormalSeries":
        """Formal partial derivative; the cap drops by one."""
        if not 0 <= var < self.num_vars:
            raise DimensionMismatch(f"no variable with index {var}")
        out: dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            key = exps[:var] + (e - 1,) + exps[var + 1:]
            out[key] = c * e
        return FormalSeries(self.num_vars, max(self.degree_cap - 1, 0), out)

    # -- canonical text form ---------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_text(self) -> str:
        lines = [f"series vars={self.num_vars} cap={self.degree_cap}"]
        if not self.terms:
            lines.append("0")
        for exps, coeff in self.sorted_terms():
            factors = " ".join(
                f"h{i + 1}^{e}" for i, e in enumerate(exps) if e)
            lines.append(f"{coeff} * {factors}" if factors else f"{coeff}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "FormalSeries":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise ValueError("empty series text")
        header = _HEADER_RE.match(lines[0])
        if not header:
            raise ValueError(f"bad series header: {lines[0]!r}")
        num_vars, cap = int(header.group(1)), int(header.group(2))
        terms: dict[Exponents, Fraction] = {}
        body = [ln for ln in lines[1:] if ln]
        if body == ["0"]:
            body = []
        for line in body:
            exps, coeff = _parse_term(line, num_vars)
            if exps in terms:
                raise ValueError(f"duplicate monomial in series text: {line!r}")
            terms[exps] = coeff
        return cls(num_vars, cap, terms)

    def __repr__(self):
        body = " + ".join(
            f"{c}*{e}" for e, c in self.sorted_terms()[:4])
        extra = "" if len(self.terms) <= 4 else f" (+{len(self.terms) - 4} terms)"
        return f"FormalSeries<{body or '0'}{extra}>"


def _parse_term(line: str, num_vars: int) -> tuple[Exponents, Fraction]:
    if " * " in line:
        coeff_str, mono_str = line.split(" * ", 1)
        exps = [0] * num_vars
        for factor in mono_str.split():
            m = _TERM_RE.match(factor)
            if not m:
                raise ValueError(f"bad monomial factor: {factor!r}")
            idx, power = int(m.group(1)) - 1, int(m.group(2))
            if not 0 <= idx < num_vars:
                raise ValueError(f"variable h{idx + 1} out of range")
            exps[idx] += power
    else:
        coeff_str = line
        exps = [0] * num_vars
    return tuple(exps), Fraction(coeff_str)


class HomogeneousPolynomial(FormalSeries):
    """A FormalSeries whose stored terms all share one total degree."""

    __slots__ = ("degree",)

    def __init__(self, num_vars, degree_cap, terms=None, degree: int = 0):
        super().__init__(num_vars, degree_cap, terms)
        if degree >= degree_cap:
            raise TruncationError(f"degree {degree} >= cap {degree_cap}")
        for exps in self.terms:
            if sum(exps) != degree:
                raise ValueError(
                    f"term of degree {sum(exps)} in a degree-{degree} polynomial")
        self.degree = degree


def first_difference(a: FormalSeries, b: FormalSeries, n: int
                     ) -> Optional[tuple[Exponents, Fraction, Fraction]]:
    """First monomial of total degree < n (degree, then lex order) whose
    coefficients differ, or None if congruent."""
    keys = {e for e in a.terms if sum(e) < n} | {e for e in b.terms if sum(e) < n}
    for exps in sorted(keys, key=lambda e: (sum(e), e)):
        ca = a.terms.get(exps, Fraction(0))
        cb = b.terms.get(exps, Fraction(0))
        if ca != cb:
            return exps, ca, cb
    return None


# ---------------------------------------------------------------------------
# generators used by every series formula

def linear_series(form: IntersectionForm, k: Sequence[int],
                  degree_cap: int) -> FormalSeries:
    """The linear form <k, h> = sum_j pairing(k, e_j) h_j."""
    dual = form.dual_coefficients(k)
    n = form.rank
    terms = {}
    for j, c in enumerate(dual):
        if c:
            exps = tuple(1 if i == j else 0 for i in range(n))
            terms[exps] = Fraction(c)
    return FormalSeries(n, degree_cap, terms)


def quadratic_series(form: IntersectionForm, degree_cap: int) -> FormalSeries:
    """The quadratic form Q(h, h) = sum_{j,k} gram_jk h_j h_k."""
    n = form.rank
    terms: dict[Exponents, Fraction] = {}
    for i in range(n):
        for j in range(i, n):
            g = form.gram[i][j]
            if not g:
                continue
            exps = [0] * n
            exps[i] += 1
            exps[j] += 1
            terms[tuple(exps)] = Fraction(g if i == j else 2 * g)
    return FormalSeries(n, degree_cap, terms)


def _exp(p: FormalSeries) -> FormalSeries:
    # requires zero constant term, so powers gain degree and the loop stops
    if (0,) * p.num_vars in p.terms:
        raise ValueError("exp of a series with nonzero constant term")
    result = FormalSeries.one(p.num_vars, p.degree_cap)
    term = result
    n = 1
    while True:
        term = term * p * Fraction(1, n)
        if term.is_zero():
            return result
        result = result + term
        n += 1


def exp_linear(form: IntersectionForm, k: Sequence[int],
               degree_cap: int) -> FormalSeries:
    """exp(<k, h>) truncated: sum_{n < cap} <k, h>^n / n!."""
    return _exp(linear_series(form, k, degree_cap))


def exp_quadratic(form: IntersectionForm, degree_cap: int) -> FormalSeries:
    """exp(Q(h, h) / 2) truncated: sum_{2n < cap} (Q/2)^n / n!."""
    return _exp(quadratic_series(form, degree_cap) * Fraction(1, 2))
