"""Formal finite sums over exact coefficient semirings, and their algebras.

A formal sum is a finite map from opaque element keys to nonzero coefficients
drawn from one of four semirings: nonnegative rationals, rationals, Gaussian
(complex) rationals, and the rational unit interval.  Sums over the unit
interval may additionally carry a distribution flag, meaning the coefficients
add up to exactly 1.  All arithmetic is exact -- floats never enter this
module -- so the functor/monad laws hold on the nose and are tested by
literal equality.

The monad structure is the usual one for weighted finite support: ``unit``
is a single term with coefficient one, ``fmap`` pushes keys forward (merging
collisions additively), and ``flatten`` multiplies outer coefficients through
inner sums.  Algebra carriers interpret sums in an actual module or convex
set, e.g. matrices under real combinations or densities under convex ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Iterable

__all__ = [
    "Semiring",
    "QC",
    "FormalSum",
    "AlgebraCarrier",
    "AlgebraError",
    "SemiringMismatch",
    "CoefficientOverflow",
    "NotDistribution",
    "formal_sum",
    "unit",
    "fmap",
    "flatten",
    "scale",
    "interpret",
    "matrix_module_carrier",
    "convex_state_carrier",
    "unit_interval_carrier",
    "monad_law_suite",
]


class AlgebraError(Exception):
    pass


class SemiringMismatch(AlgebraError):
    """Operands live over different coefficient semirings."""


class CoefficientOverflow(AlgebraError):
    """A bounded coefficient type left its range (unit interval only)."""


class NotDistribution(AlgebraError):
    """A convex-only operation received a sum without the distribution flag."""


@dataclass(frozen=True)
class QC:
    """Gaussian rational: an exact complex number re + im*i over Fraction."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"QC({self.re}, {self.im})"


_QC_ZERO = QC(Fraction(0), Fraction(0))
_QC_ONE = QC(Fraction(1), Fraction(0))


class Semiring(Enum):
    NONNEG_RATIONAL = "nonneg-rational"
    RATIONAL = "rational"
    COMPLEX_RATIONAL = "complex-rational"
    UNIT_INTERVAL = "unit-interval-rational"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def _coerce(semiring: Semiring, value) -> Fraction | QC:
    """Validate and normalize a coefficient for the given semiring."""
    if semiring == Semiring.COMPLEX_RATIONAL:
        if isinstance(value, QC):
            return value
        if isinstance(value, complex):
            return QC(Fraction(value.real), Fraction(value.imag))
        return QC(Fraction(value), Fraction(0))
    if isinstance(value, QC):
        if value.im != 0:
            raise ValueError(f"coefficient {value!r} is not real for {semiring.value}")
        value = value.re
    coeff = Fraction(value)
    if semiring == Semiring.NONNEG_RATIONAL and coeff < 0:
        raise ValueError(f"coefficient {coeff} negative in {semiring.value}")
    if semiring == Semiring.UNIT_INTERVAL and not (0 <= coeff <= 1):
        raise CoefficientOverflow(f"coefficient {coeff} outside [0, 1]")
    return coeff


def _zero(semiring: Semiring):
    return _QC_ZERO if semiring == Semiring.COMPLEX_RATIONAL else Fraction(0)


def _one(semiring: Semiring):
    return _QC_ONE if semiring == Semiring.COMPLEX_RATIONAL else Fraction(1)


def _add(semiring: Semiring, a, b):
    total = a + b
    if semiring == Semiring.UNIT_INTERVAL and total > 1:
        raise CoefficientOverflow(f"coefficient sum {total} left [0, 1]")
    return total


def _mul(semiring: Semiring, a, b):
    return a * b


def _key_order(key) -> tuple:
    return (type(key).__name__, repr(key))


@dataclass(frozen=True)
class FormalSum:
    """Immutable formal sum; build through :func:`formal_sum` or :func:`unit`.

    ``terms`` is a tuple of (key, coefficient) pairs in a canonical order
    with no zero coefficients, so structural equality is semantic equality.
    """

    semiring: Semiring
    terms: tuple[tuple[Any, Any], ...]
    distribution: bool = False

    def coeff(self, key):
        for k, c in self.terms:
            if k == key:
                return c
        return _zero(self.semiring)

    def support(self) -> tuple:
        return tuple(k for k, _ in self.terms)

    def total(self):
        result = _zero(self.semiring)
        for _, c in self.terms:
            result = result + c
        return result

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"FormalSum<{self.semiring.value}>(0)"
        body = " + ".join(f"{c}|{k!r}>" for k, c in self.terms)
        return f"FormalSum<{self.semiring.value}>({body})"


def formal_sum(
    semiring: Semiring,
    pairs: Iterable[tuple[Any, Any]],
    distribution: bool = False,
) -> FormalSum:
    """Build a formal sum, merging duplicate keys and dropping zeros.

    With ``distribution=True`` (unit-interval coefficients only) the
    coefficients must add up to exactly 1.
    """
    if distribution and semiring != Semiring.UNIT_INTERVAL:
        raise NotDistribution("the distribution flag requires unit-interval coefficients")
    acc: dict = {}
    for key, raw in pairs:
        coeff = _coerce(semiring, raw)
        if key in acc:
            acc[key] = _add(semiring, acc[key], coeff)
        else:
            acc[key] = coeff
    items = tuple(sorted(((k, c) for k, c in acc.items() if c), key=lambda kv: _key_order(kv[0])))
    result = FormalSum(semiring, items, distribution)
    if distribution and result.total() != 1:
        raise NotDistribution(f"distribution coefficients sum to {result.total()}, not 1")
    return result


def unit(key, semiring: Semiring = Semiring.RATIONAL, distribution: bool = False) -> FormalSum:
    """The sum 1|key> (a point distribution when flagged)."""
    return formal_sum(semiring, [(key, _one(semiring))], distribution)


def fmap(f: Callable[[Any], Any], s: FormalSum) -> FormalSum:
    """Push keys forward through f, summing coefficients over collisions."""
    return formal_sum(s.semiring, ((f(k), c) for k, c in s.terms), s.distribution)


def scale(coefficient, s: FormalSum) -> FormalSum:
    """Multiply every coefficient (left factor drawn from the same semiring).

    The distribution flag survives only when the factor is exactly 1.
    """
    c0 = _coerce(s.semiring, coefficient)
    return formal_sum(
        s.semiring,
        ((k, _mul(s.semiring, c0, c)) for k, c in s.terms),
        distribution=s.distribution and c0 == _one(s.semiring),
    )


def flatten(ss: FormalSum) -> FormalSum:
    """Monad multiplication: a sum of sums collapses by multiplying through.

    Every key of ``ss`` must itself be a FormalSum over the same semiring
    (SemiringMismatch otherwise); the distribution flag survives because a
    convex combination of distributions is a distribution.
    """
    pairs = []
    for inner, outer_coeff in ss.terms:
        if not isinstance(inner, FormalSum):
            raise SemiringMismatch(f"flatten expects sums of sums, found key {inner!r}")
        if inner.semiring != ss.semiring:
            raise SemiringMismatch(
                f"inner sum over {inner.semiring.value} inside outer {ss.semiring.value}"
            )
        for key, c in inner.terms:
            pairs.append((key, _mul(ss.semiring, outer_coeff, c)))
    distribution = ss.distribution and all(inner.distribution for inner, _ in ss.terms)
    return formal_sum(ss.semiring, pairs, distribution)


# --- algebra carriers -------------------------------------------------------


@dataclass(frozen=True)
class AlgebraCarrier:
    """A place where formal sums can be evaluated.

    ``kind`` is "module" (interprets any sum over ``semiring``) or "convex"
    (interprets distributions only).  ``resolve`` maps keys to carrier
    elements; ``add``/``smul`` are the carrier's own operations, with smul
    taking the coefficient as float/complex.
    """

    kind: str
    semiring: Semiring
    resolve: Callable[[Any], Any]
    add: Callable[[Any, Any], Any]
    smul: Callable[[Any, Any], Any]
    zero: Any = None

    def __post_init__(self):
        if self.kind not in ("module", "convex"):
            raise ValueError(f"unknown carrier kind {self.kind!r}")


def _numeric(coeff):
    return complex(coeff) if isinstance(coeff, QC) else coeff


def interpret(carrier: AlgebraCarrier, s: FormalSum):
    """Evaluate a formal sum in the carrier.

    Module carriers require a matching semiring; convex carriers require the
    distribution flag (NotDistribution otherwise) and compute the actual
    convex combination.
    """
    if carrier.kind == "module":
        if s.semiring != carrier.semiring:
            raise SemiringMismatch(
                f"sum over {s.semiring.value} fed to a {carrier.semiring.value} module"
            )
        acc = carrier.zero
        for key, coeff in s.terms:
            term = carrier.smul(_numeric(coeff), carrier.resolve(key))
            acc = term if acc is None else carrier.add(acc, term)
        return acc

    if not s.distribution:
        raise NotDistribution("convex carriers interpret distributions only")
    acc = None
    for key, coeff in s.terms:
        term = carrier.smul(_numeric(coeff), carrier.resolve(key))
        acc = term if acc is None else carrier.add(acc, term)
    return acc


def matrix_module_carrier(dim: int, env: dict, semiring: Semiring = Semiring.RATIONAL) -> AlgebraCarrier:
    """Square matrices of a fixed dimension as a module over the semiring."""
    import numpy as np

    zero = np.zeros((dim, dim), dtype=np.complex128)
    return AlgebraCarrier(
        kind="module",
        semiring=semiring,
        resolve=lambda key: env[key],
        add=lambda x, y: x + y,
        smul=lambda c, x: c * x,
        zero=zero,
    )


def convex_state_carrier(env: dict) -> AlgebraCarrier:
    """Named states (matrices, vectors, scalars) under convex combination."""
    return AlgebraCarrier(
        kind="convex",
        semiring=Semiring.UNIT_INTERVAL,
        resolve=lambda key: env[key],
        add=lambda x, y: x + y,
        smul=lambda c, x: float(c) * x,
    )


def unit_interval_carrier() -> AlgebraCarrier:
    """The unit interval itself, keyed by exact rationals, as a convex set."""
    return AlgebraCarrier(
        kind="convex",
        semiring=Semiring.UNIT_INTERVAL,
        resolve=lambda key: float(key),
        add=lambda x, y: x + y,
        smul=lambda c, x: float(c) * x,
    )


# --- exhaustive law checking ------------------------------------------------

_GRID = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
_GRID_COMPLEX = tuple(QC(Fraction(g), Fraction(0)) for g in _GRID) + (QC(Fraction(0), Fraction(1)),)
_GRID_UNIT = (Fraction(0), Fraction(1, 2), Fraction(1))


def _grid_for(semiring: Semiring):
    if semiring == Semiring.COMPLEX_RATIONAL:
        return _GRID_COMPLEX
    if semiring == Semiring.UNIT_INTERVAL:
        return _GRID_UNIT
    return _GRID


def _enumerate_sums(semiring: Semiring, carrier: tuple, distribution: bool) -> list[FormalSum]:
    from itertools import product

    grid = _grid_for(semiring)
    sums = []
    for coeffs in product(grid, repeat=len(carrier)):
        if distribution and sum(coeffs, Fraction(0)) != 1:
            continue
        sums.append(formal_sum(semiring, zip(carrier, coeffs), distribution))
    return sums


def _enumerate_layered(semiring: Semiring, base: list, distribution: bool, cap: int) -> list[FormalSum]:
    """Sums over ``base`` with grid coefficients and support <= 2, capped."""
    from itertools import combinations, product

    grid = _grid_for(semiring)
    base = list(dict.fromkeys(base))
    seen: dict[FormalSum, None] = {}
    supports = [(x,) for x in base] + list(combinations(base, 2))
    for support in supports:
        for coeffs in product(grid, repeat=len(support)):
            if distribution and sum(coeffs, Fraction(0)) != 1:
                continue
            seen.setdefault(formal_sum(semiring, zip(support, coeffs), distribution))
            if len(seen) >= cap:
                return list(seen)
    return list(seen)


def monad_law_suite(max_carrier: int = 3) -> dict:
    """Exhaustively check the monad laws over small carriers and exact grids.

    For every semiring (plus the distribution variant of the unit interval)
    and every carrier of size <= max_carrier, checks with literal equality:

      flatten(unit(s)) == s                 for every grid sum s
      flatten(fmap(unit, s)) == s           for every grid sum s
      flatten(flatten(t)) == flatten(fmap(flatten, t))
                                            for every double sum t of
                                            support <= 2 with grid
                                            coefficients over a deterministic
                                            pool of single sums

    Returns {"checked": n, "skipped": m, "violations": [...]}; a violation
    records the semiring, law, and offending sum.  Unit-interval coefficients
    are not closed under addition, so a composite can overflow [0, 1] on
    either side of a law; such instances fall outside the partial structure
    and are counted as skipped rather than compared.
    """
    violations: list[dict] = []
    checked = 0
    skipped = 0

    def record(semiring: Semiring, law: str, culprit: FormalSum) -> None:
        violations.append({"semiring": semiring.value, "law": law, "sum": repr(culprit)})

    configs = [(s, False) for s in Semiring] + [(Semiring.UNIT_INTERVAL, True)]
    for semiring, distribution in configs:
        for size in range(1, max_carrier + 1):
            carrier = tuple("abc"[:size])
            level1 = _enumerate_sums(semiring, carrier, distribution)

            for s in level1:
                checked += 1
                if flatten(unit(s, semiring, distribution)) != s:
                    record(semiring, "flatten-unit-outer", s)
                if flatten(fmap(lambda x: unit(x, semiring, distribution), s)) != s:
                    record(semiring, "flatten-unit-inner", s)

            # Associativity needs triple-nested sums; build them over
            # deterministic capped pools so the coefficient grid stays
            # exhaustive at every level.
            pool1 = level1[: min(len(level1), 6)]
            pool2 = _enumerate_layered(semiring, pool1, distribution, cap=8)
            level3 = _enumerate_layered(semiring, pool2, distribution, cap=64)
            for t in level3:
                try:
                    lhs = flatten(flatten(t))
                    rhs = flatten(fmap(flatten, t))
                except CoefficientOverflow:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    record(semiring, "flatten-associativity", t)

    return {"checked": checked, "skipped": skipped, "violations": violations}
