"""Effect-algebra instances and the axiom hunter.

Each stock instance gets its hand-checked examples plus a full law_suite
pass; a deliberately broken instance (wrong orthosupplement) checks that the
suite actually finds counterexamples instead of rubber-stamping.
"""

from fractions import Fraction

import numpy as np
import pytest

from hsdual.effect import (
    EffectInstance,
    law_suite,
    make_effects,
    make_powerset,
    make_projections,
    make_unit_interval,
)
from hsdual.duality import Functional, hs_forward, hs_inverse
from hsdual.linalg import approx_eq, identity, zeros
from hsdual.operators import OperatorKind, sample

from conftest import mat


# --- unit interval -----------------------------------------------------------


def test_interval_partial_sum():
    inst = make_unit_interval()
    assert inst.ovee(Fraction(3, 10), Fraction(2, 5)) == Fraction(7, 10)
    assert inst.ovee(Fraction(3, 5), Fraction(3, 5)) is None
    assert inst.orth(Fraction(3, 10)) == Fraction(7, 10)


def test_interval_universe_enumerates_low_denominators():
    inst = make_unit_interval(max_denominator=8)
    assert Fraction(0) in inst.universe and Fraction(1) in inst.universe
    assert Fraction(3, 7) in inst.universe
    assert all(0 <= x <= 1 for x in inst.universe)


def test_interval_scalar_action():
    inst = make_unit_interval()
    assert inst.scalar_mul(Fraction(1, 2), Fraction(1, 2)) == Fraction(1, 4)


def test_interval_law_suite_exhaustive():
    report = law_suite(make_unit_interval())
    assert report.all_pass
    # exhaustive over the 23-element universe: 23^2 pairs, 23^3 triples
    assert report.entry("commutativity").checked == 23**2
    assert report.entry("associativity").checked == 23**3


# --- powerset ------------------------------------------------------------------


def test_powerset_disjoint_union():
    inst = make_powerset(3)
    assert inst.ovee(frozenset({0}), frozenset({1})) == frozenset({0, 1})
    assert inst.ovee(frozenset({0}), frozenset({0})) is None
    assert inst.orth(frozenset()) == frozenset({0, 1, 2})


def test_powerset_law_suite():
    report = law_suite(make_powerset(3))
    assert report.all_pass


def test_powerset_rejects_silly_sizes():
    with pytest.raises(ValueError):
        make_powerset(0)
    with pytest.raises(ValueError):
        make_powerset(17)


# --- operator effects ------------------------------------------------------------


def test_effects_sum_when_below_identity():
    inst = make_effects(2)
    a = mat([[0.3, 0], [0, 0.2]])
    b = mat([[0.5, 0], [0, 0.5]])
    assert approx_eq(inst.ovee(a, b), mat([[0.8, 0], [0, 0.7]]), 1e-12)


def test_effects_identity_is_maximal():
    inst = make_effects(2)
    assert inst.ovee(identity(2), mat([[0.1, 0], [0, 0]])) is None
    assert inst.ovee(identity(2), zeros(2)) is not None


def test_effects_orthosupplement_of_scaled_identity():
    inst = make_effects(2)
    half = inst.scalar_mul(Fraction(1, 2), identity(2))
    assert approx_eq(inst.orth(half), 0.5 * identity(2), 1e-12)


def test_effects_law_suite_dim2():
    report = law_suite(make_effects(2), samples=200, seed=0)
    assert report.all_pass, report.to_json()


def test_projections_orthogonal_rank_ones(p0, p1):
    inst = make_projections(2)
    assert approx_eq(inst.ovee(p0, p1), identity(2), 1e-12)
    assert inst.ovee(p0, p0) is None
    assert approx_eq(inst.ovee(inst.orth(p0), p0), identity(2), 1e-12)


def test_projections_have_no_scalar_action():
    assert make_projections(2).scalar_mul is None


def test_projections_law_suite_dim3():
    report = law_suite(make_projections(3), samples=200, seed=1)
    assert report.all_pass, report.to_json()


# --- the suite catches planted bugs ----------------------------------------------


def _broken_interval() -> EffectInstance:
    # wrong orthosupplement: 1 - x/2 instead of 1 - x
    good = make_unit_interval()
    return EffectInstance(
        name="broken-interval",
        zero=good.zero,
        one=good.one,
        ovee=good.ovee,
        orth=lambda x: 1 - x / 2,
        eq=good.eq,
        scalar_mul=good.scalar_mul,
        sampler=good.sampler,
        universe=good.universe,
        describe=str,
    )


def test_law_suite_catches_wrong_orthosupplement():
    report = law_suite(_broken_interval())
    assert not report.all_pass
    unique = report.entry("orthosupplement-unique")
    assert not unique.passed
    assert unique.counterexample is not None
    # the bogus complement only works at x = 0, so existence breaks too
    assert not report.entry("orthosupplement-exists").passed


def test_law_report_json_shape():
    obj = law_suite(make_powerset(2)).to_json()
    assert obj["instance"] == "powerset-2"
    assert obj["pass"] is True
    assert {e["law"] for e in obj["laws"]} >= {
        "zero-unit",
        "commutativity",
        "associativity",
        "orthosupplement-exists",
        "orthosupplement-unique",
        "one-maximal",
    }


# --- pointwise structure on affine maps -------------------------------------------
#
# Affine maps from densities to [0, 1] themselves form an effect module:
# pointwise (+) and scalar action preserve affinity.  Exercised through the
# duality layer, which rejects non-affine functionals.


def test_pointwise_sum_of_affine_maps_stays_affine():
    dim = 2
    E1 = 0.4 * sample(OperatorKind.EFFECT, dim, 5)
    E2 = 0.4 * sample(OperatorKind.EFFECT, dim, 6)
    f1 = hs_forward(OperatorKind.EFFECT, E1)
    f2 = hs_forward(OperatorKind.EFFECT, E2)

    pointwise = Functional(
        OperatorKind.EFFECT, dim, lambda rho: f1(rho) + f2(rho), note="pointwise sum"
    )
    recovered = hs_inverse(OperatorKind.EFFECT, pointwise)
    assert approx_eq(recovered, E1 + E2, 1e-8)


def test_pointwise_scalar_action_on_affine_maps():
    dim = 2
    E = sample(OperatorKind.EFFECT, dim, 7)
    f = hs_forward(OperatorKind.EFFECT, E)
    scaled = Functional(OperatorKind.EFFECT, dim, lambda rho: 0.25 * f(rho))
    assert approx_eq(hs_inverse(OperatorKind.EFFECT, scaled), 0.25 * E, 1e-8)
