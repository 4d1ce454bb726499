"""Trace pairings between operators and linear functionals, both directions.

Every operator A induces a functional on its dual family: bounded operators
pair through tr(A B^dagger) (conjugate-linear in B), the self-adjoint /
positive families pair through tr(A B), effects pair against densities and
densities against effects, both landing in [0, 1].  The reverse direction
reconstructs the operator from black-box evaluations only: the functional is
probed on matrix units and on the spectral probe operators demanded by a
chain of extension steps, never inspected structurally.

Reconstruction chain (each step reduces to the previous kind):

  bounded        A[j, k] = f(|j><k|)
  self-adjoint   extend f to f'(B) = (f(B + B') + i f(iB - iB')) / 2
                 with B' = B^dagger, invert as bounded, symmetrize
  positive       extend by splitting: f'(B) = f(B_pos) - f(B_neg)
  effect         functional lives on densities; extend to positives by
                 f'(B) = tr(B) * f(B / tr(B)), f'(0) = 0
  density        functional lives on effects; extend to positives by
                 f'(B) = n * f(B / n) for an integer n >= max eigenvalue
                 (the result must not depend on n, which is checked)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    EIG_TOL,
    DimensionMismatch,
    as_matrix,
    dagger,
    hermitian_eig,
    outer_unit,
    trace,
)
from .operators import OperatorKind, classify, pos_neg_split, sample


class DualityError(Exception):
    """Base class for duality-layer failures."""


class KindMismatch(DualityError):
    """Operator or functional does not belong to the stated kind."""


class ContractViolation(DualityError):
    """A black-box functional failed its linearity/affinity spot-check."""


class NotInKind(DualityError):
    """The reconstructed operator fails classification for the target kind."""


#: Kinds that take part in the duality (projections do not get their own
#: pairing; they embed into effects).
DUAL_KINDS = (
    OperatorKind.BOUNDED,
    OperatorKind.SELF_ADJOINT,
    OperatorKind.POSITIVE,
    OperatorKind.EFFECT,
    OperatorKind.DENSITY,
)


@dataclass(frozen=True)
class Functional:
    """A black-box scalar functional on one operator family.

    ``kind`` names the family of the operator that induced (or should be
    recovered from) the functional; the probing domain is the dual family
    (densities for kind=effect, effects for kind=density, the family itself
    otherwise).  ``eval`` must be pure.
    """

    kind: OperatorKind
    dim: int
    eval: Callable[[np.ndarray], complex]
    note: str = field(default="", compare=False)

    def __call__(self, B: np.ndarray) -> complex:
        return complex(self.eval(B))


def hs_forward(kind: OperatorKind, A: np.ndarray, tol: float = DEFAULT_TOL) -> Functional:
    """The trace-pairing functional induced by A within its kind.

    Raises KindMismatch when A does not classify as ``kind`` at tolerance
    ``tol``.  For the bounded kind the pairing is B |-> tr(A B^dagger); for
    every other kind it is B |-> tr(A B).
    """
    if kind not in DUAL_KINDS:
        raise KindMismatch(f"kind {kind} has no trace pairing")
    A = as_matrix(A)
    if not classify(A, tol).has(kind):
        raise KindMismatch(f"operator does not classify as {kind.value} at tol={tol}")
    Astar = A.copy()
    n = A.shape[0]

    if kind == OperatorKind.BOUNDED:
        def evaluate(B: np.ndarray) -> complex:
            B = as_matrix(B)
            if B.shape[0] != n:
                raise DimensionMismatch(f"probe dim {B.shape[0]} != functional dim {n}")
            return trace(Astar @ dagger(B))
    else:
        def evaluate(B: np.ndarray) -> complex:
            B = as_matrix(B)
            if B.shape[0] != n:
                raise DimensionMismatch(f"probe dim {B.shape[0]} != functional dim {n}")
            return trace(Astar @ B)

    return Functional(kind, n, evaluate, note=f"trace pairing against a {kind.value} operator")


# --- reconstruction ---------------------------------------------------------


def _invert_bounded(f: Callable[[np.ndarray], complex], dim: int) -> np.ndarray:
    A = np.empty((dim, dim), dtype=np.complex128)
    for j in range(dim):
        for k in range(dim):
            A[j, k] = complex(f(outer_unit(j, k, dim)))
    return A


def _extend_sa(f: Callable[[np.ndarray], complex]) -> Callable[[np.ndarray], complex]:
    def g(B: np.ndarray) -> complex:
        Bd = dagger(B)
        return 0.5 * (complex(f(B + Bd)) + 1j * complex(f(1j * B - 1j * Bd)))

    return g


def _extend_pos(f: Callable[[np.ndarray], complex]) -> Callable[[np.ndarray], complex]:
    def g(B: np.ndarray) -> complex:
        P, N = _split_cached(B)
        return complex(f(P)) - complex(f(N))

    return g


def _extend_effect_functional(f, tol: float) -> Callable[[np.ndarray], complex]:
    # f is defined on densities; extend along scaling to all positives.
    def g(B: np.ndarray) -> complex:
        t = trace(B).real
        if t <= tol:
            return 0.0
        return t * complex(f(B / t))

    return g


def _extend_density_functional(f, tol: float) -> Callable[[np.ndarray], complex]:
    # f is defined on effects; divide by an integer ceiling of the top
    # eigenvalue to land in [0, I], and verify the choice does not matter.
    def g(B: np.ndarray) -> complex:
        hi = _max_eig_cached(B)
        n = max(1, math.ceil(hi - 1e-12))
        v1 = n * complex(f(B / n))
        v2 = (n + 1) * complex(f(B / (n + 1)))
        if abs(v1 - v2) > tol * max(1.0, abs(v1)):
            raise ContractViolation(
                "functional is not scaling-compatible: "
                f"{n}*f(B/{n}) = {v1:.12g} but {n + 1}*f(B/{n + 1}) = {v2:.12g}"
            )
        return v1

    return g


@lru_cache(maxsize=8192)
def _split_cached_bytes(dim: int, buf: bytes) -> tuple[np.ndarray, np.ndarray]:
    B = np.frombuffer(buf, dtype=np.complex128).reshape(dim, dim)
    P, N = pos_neg_split(B, tol=DEFAULT_TOL)
    P.setflags(write=False)
    N.setflags(write=False)
    return P, N


def _split_cached(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # The extension chain splits the same standard probe operators for every
    # inversion at a given dimension; memoize on the matrix bytes.
    B = np.ascontiguousarray(B, dtype=np.complex128)
    return _split_cached_bytes(B.shape[0], B.tobytes())


@lru_cache(maxsize=8192)
def _max_eig_cached_bytes(dim: int, buf: bytes) -> float:
    B = np.frombuffer(buf, dtype=np.complex128).reshape(dim, dim)
    H = (B + B.conj().T) / 2.0
    return float(hermitian_eig(H, tol=EIG_TOL).eigenvalues[0])


def _max_eig_cached(B: np.ndarray) -> float:
    B = np.ascontiguousarray(B, dtype=np.complex128)
    return _max_eig_cached_bytes(B.shape[0], B.tobytes())


_SPOT_DOMAIN = {
    OperatorKind.BOUNDED: OperatorKind.BOUNDED,
    OperatorKind.SELF_ADJOINT: OperatorKind.SELF_ADJOINT,
    OperatorKind.POSITIVE: OperatorKind.POSITIVE,
    OperatorKind.EFFECT: OperatorKind.DENSITY,
    OperatorKind.DENSITY: OperatorKind.EFFECT,
}


def _frozen(A: np.ndarray) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.complex128)
    A.setflags(write=False)
    return A


@lru_cache(maxsize=256)
def _spot_probes(kind: OperatorKind, dim: int):
    """Deterministic probe set for the linearity spot-check.

    The probes (and their combinations) are fixed per kind and dimension, so
    they are built once; only the black-box evaluations vary per functional.
    """
    rng = np.random.default_rng(0x5D0A11CE)
    domain = _SPOT_DOMAIN[kind]
    probes = []
    for _ in range(16):
        s1 = int(rng.integers(0, 2**62))
        s2 = int(rng.integers(0, 2**62))
        B = sample(domain, dim, s1)
        C = sample(domain, dim, s2)
        if kind == OperatorKind.BOUNDED:
            z = complex(rng.standard_normal(), rng.standard_normal())
            combo = z * B + C
        elif kind == OperatorKind.SELF_ADJOINT:
            z = float(rng.standard_normal())
            combo = z * B + C
        elif kind == OperatorKind.POSITIVE:
            z = abs(float(rng.standard_normal()))
            combo = z * B + C
        elif kind == OperatorKind.EFFECT:
            z = float(rng.uniform())
            combo = z * B + (1.0 - z) * C
        else:  # DENSITY: probe the scalar action and binary additivity
            z = float(rng.uniform())
            combo = (z * B, B / 2.0 + C / 2.0)
        if isinstance(combo, tuple):
            combo = tuple(_frozen(M) for M in combo)
        else:
            combo = _frozen(combo)
        probes.append((_frozen(B), _frozen(C), z, combo))
    return tuple(probes)


def _spot_check(f: Functional, tol: float) -> None:
    """Probe the functional's linearity contract on 16 fixed random instances.

    The contract depends on the kind: conjugate-linearity for bounded,
    real-linearity (with real values) for self-adjoint, nonnegative-linearity
    for positive, convex affinity into [0, 1] for effect, and [0, 1]-module
    behaviour (with f(I) = 1) for density.
    """
    kind = f.kind

    def fail(msg: str, residual: float) -> None:
        raise ContractViolation(f"{kind.value} functional failed {msg} (residual {residual:.3e})")

    for B, C, z, combo in _spot_probes(kind, f.dim):
        if kind == OperatorKind.BOUNDED:
            lhs = f(combo)
            rhs = complex(z).conjugate() * f(B) + f(C)
            scale = max(1.0, abs(lhs), abs(rhs))
            if abs(lhs - rhs) > tol * scale:
                fail("conjugate-linearity", abs(lhs - rhs))
        elif kind == OperatorKind.SELF_ADJOINT:
            lhs = f(combo)
            rhs = z * f(B) + f(C)
            scale = max(1.0, abs(lhs), abs(rhs))
            if abs(lhs - rhs) > tol * scale:
                fail("real-linearity", abs(lhs - rhs))
            if abs(f(B).imag) > tol * scale:
                fail("real-valuedness", abs(f(B).imag))
        elif kind == OperatorKind.POSITIVE:
            lhs = f(combo)
            rhs = z * f(B) + f(C)
            scale = max(1.0, abs(lhs), abs(rhs))
            if abs(lhs - rhs) > tol * scale:
                fail("nonnegative-linearity", abs(lhs - rhs))
            if f(B).real < -tol * scale:
                fail("nonnegativity", -f(B).real)
        elif kind == OperatorKind.EFFECT:
            lhs = f(combo)
            rhs = z * f(B) + (1.0 - z) * f(C)
            if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                fail("affinity on densities", abs(lhs - rhs))
            v = f(B)
            if v.real < -tol or v.real > 1.0 + tol or abs(v.imag) > tol:
                fail("valuation in [0, 1]", max(-v.real, v.real - 1.0, abs(v.imag)))
        else:  # DENSITY
            scaled, half_sum = combo
            lhs = f(scaled)
            rhs = z * f(B)
            if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
                fail("scalar action", abs(lhs - rhs))
            lhs2 = f(half_sum)
            rhs2 = f(B / 2.0) + f(C / 2.0)
            if abs(lhs2 - rhs2) > tol * max(1.0, abs(lhs2)):
                fail("additivity on summable effects", abs(lhs2 - rhs2))
            v = f(B)
            if v.real < -tol or v.real > 1.0 + tol or abs(v.imag) > tol:
                fail("valuation in [0, 1]", max(-v.real, v.real - 1.0, abs(v.imag)))

    if kind == OperatorKind.DENSITY:
        v = f(np.eye(f.dim, dtype=np.complex128))
        if abs(v - 1.0) > tol * 10.0:
            fail("normalisation f(I) = 1", abs(v - 1.0))


_CHECK_KIND = {
    OperatorKind.SELF_ADJOINT: OperatorKind.SELF_ADJOINT,
    OperatorKind.POSITIVE: OperatorKind.POSITIVE,
    OperatorKind.EFFECT: OperatorKind.EFFECT,
    OperatorKind.DENSITY: OperatorKind.DENSITY,
}


def hs_inverse(kind: OperatorKind, f: Functional, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Reconstruct the operator inducing the functional f within ``kind``.

    The functional is treated as a black box: it is spot-checked for its
    kind's linearity contract (ContractViolation on failure), then probed on
    matrix units and on the spectral probe operators required by the
    extension chain.  If the reconstructed operator does not classify as
    ``kind``, NotInKind is raised -- that signals f was not induced by any
    operator of this kind.
    """
    if kind not in DUAL_KINDS:
        raise KindMismatch(f"kind {kind} has no trace pairing")
    if f.kind != kind:
        raise KindMismatch(f"functional is tagged {f.kind.value}, not {kind.value}")
    if f.dim < 1:
        raise KindMismatch("functional must carry a positive dimension")
    _spot_check(f, tol)

    dim = f.dim
    if kind == OperatorKind.BOUNDED:
        return _invert_bounded(f, dim)

    if kind == OperatorKind.SELF_ADJOINT:
        g = _extend_sa(f)
    elif kind == OperatorKind.POSITIVE:
        g = _extend_sa(_extend_pos(f))
    elif kind == OperatorKind.EFFECT:
        g = _extend_sa(_extend_pos(_extend_effect_functional(f, tol)))
    else:  # DENSITY
        g = _extend_sa(_extend_pos(_extend_density_functional(f, tol)))

    A = _invert_bounded(g, dim)
    A = (A + A.conj().T) / 2.0

    check = _CHECK_KIND[kind]
    if not classify(A, tol).has(check):
        raise NotInKind(
            f"reconstructed operator does not classify as {check.value} at tol={tol}"
        )
    return A


def naturality_check(C: np.ndarray, A: np.ndarray, B: np.ndarray, tol: float = DEFAULT_TOL) -> float:
    """Residual of the pairing's naturality square for conjugation by C.

    Pairing tr(. (.)^dagger): moving C across the pairing must not change the
    value, i.e. tr(C^dagger A C B^dagger) = tr(A (C B C^dagger)^dagger).
    Returns the absolute difference; the caller compares against a tolerance.
    """
    C = as_matrix(C)
    A = as_matrix(A)
    B = as_matrix(B)
    if not (C.shape == A.shape == B.shape):
        raise DimensionMismatch("naturality_check requires equal dimensions")
    lhs = trace(dagger(C) @ A @ C @ dagger(B))
    rhs = trace(A @ dagger(C @ B @ dagger(C)))
    return abs(lhs - rhs)


__all__ = [
    "DualityError",
    "KindMismatch",
    "ContractViolation",
    "NotInKind",
    "DUAL_KINDS",
    "Functional",
    "hs_forward",
    "hs_inverse",
    "naturality_check",
]
