from __future__ import annotations

import random
from fractions import Fraction

import pytest

from oracles import brute_idempotent_count
from cartierlab.artinian import (
    component_count,
    components_over_subring,
    idempotent_decomposition,
    is_field_algebra,
    is_reduced,
    minimal_polynomial,
    nilradical_span,
    primitive_element_presentation,
    quotient_algebra,
    radical_generators,
)
from cartierlab.errors import NotFiniteOverSubring, NotZeroDimensional, UNKNOWN
from cartierlab.polycore import (
    GREVLEX,
    Ideal,
    PolyRing,
    PrimeField,
    QQ,
    SimpleExtensionField,
    parse_polynomial,
)
from cartierlab.polycore import unipoly as up


def algebra(field, variables, texts):
    ring = PolyRing(field, variables, GREVLEX)
    return quotient_algebra(ring, Ideal(ring, [parse_polynomial(t, ring) for t in texts]))


def test_staircase_bases():
    a = algebra(QQ, ["t"], ["t^2 - 1"])
    assert a.dim == 2 and a.basis == ((0,), (1,))
    b = algebra(QQ, ["x", "y"], ["x^2", "x*y", "y^2"])
    assert b.dim == 3
    c = algebra(QQ, ["t"], ["t^3 - t"])
    assert c.dim == 3
    d = algebra(QQ, [], [])
    assert d.dim == 1


def test_not_zero_dimensional_names_variable():
    ring = PolyRing(QQ, ["x", "y"], GREVLEX)
    with pytest.raises(NotZeroDimensional) as err:
        quotient_algebra(ring, Ideal(ring, [parse_polynomial("x^2", ring)]))
    assert err.value.variable == "y"


def test_multiplication_is_commutative_and_associative():
    a = algebra(QQ, ["x", "y"], ["x^2 - y", "y^2 - 1"])
    elems = [a.basis_element(i) for i in range(a.dim)]
    for u in elems:
        for v in elems:
            assert a.mul(u, v) == a.mul(v, u)
            for w in elems:
                assert a.mul(a.mul(u, v), w) == a.mul(u, a.mul(v, w))


def test_minimal_polynomial_examples():
    a = algebra(QQ, ["t"], ["t^2 - 1"])
    one = a.one()
    m = minimal_polynomial(a, one)
    assert m == (Fraction(-1), Fraction(1))  # z - 1
    t = a.variable_element("t")
    assert minimal_polynomial(a, t) == (Fraction(-1), Fraction(0), Fraction(1))


def test_minimal_polynomial_by_dependence_oracle():
    # a = t + t^2 in QQ[t]/(t^3 - t): powers are 1, a, a^2 = 2t + 2t^2 = 2a,
    # so the first dependence gives z^2 - 2z
    a = algebra(QQ, ["t"], ["t^3 - t"])
    elem = a.from_poly(parse_polynomial("t + t^2", a.ring))
    sq = a.mul(elem, elem)
    assert sq == a.scale(Fraction(2), elem)  # the dependence the oracle finds
    m = minimal_polynomial(a, elem)
    assert m == (Fraction(0), Fraction(-2), Fraction(1))
    assert a.eval_upoly(m, elem) == a.zero()
    assert len(m) - 1 <= a.dim


def test_idempotents_t2_minus_1():
    a = algebra(QQ, ["t"], ["t^2 - 1"])
    dec = idempotent_decomposition(a)
    assert dec.count == 2
    t = a.variable_element("t")
    half = Fraction(1, 2)
    e1 = a.scale(half, a.add(a.one(), t))
    e2 = a.scale(half, a.sub(a.one(), t))
    assert set(dec.idempotents) == {e1, e2}


def test_idempotents_local_and_node_fiber():
    assert component_count(algebra(QQ, ["t"], ["t^2"])) == 1
    assert component_count(algebra(QQ, ["t"], ["t^2 - 1", "t^3 - t"])) == 2


def test_decomposition_invariants():
    a = algebra(QQ, ["x", "u"], ["x^2 + 1", "u^2 + 1"])
    dec = idempotent_decomposition(a)
    assert dec.count == 2
    total = a.zero()
    for e in dec.idempotents:
        assert a.mul(e, e) == e
        assert not a.is_zero_elem(e)
        total = a.add(total, e)
    assert total == a.one()
    for i, e in enumerate(dec.idempotents):
        for f in dec.idempotents[i + 1:]:
            assert a.is_zero_elem(a.mul(e, f))


def test_component_count_against_f5_enumeration():
    """Idempotent counts over F_5 match exhaustive enumeration (10 algebras)."""
    f5 = PrimeField(5)
    rng = random.Random(55)
    cases = 0
    while cases < 10:
        # random univariate quotient of dimension <= 4 plus an optional nil line
        deg = rng.randint(1, 4)
        coeffs = [rng.randrange(5) for _ in range(deg)] + [1]
        ring = PolyRing(f5, ["t"], GREVLEX)
        poly = ring.zero()
        for i, c in enumerate(coeffs):
            if c:
                poly = poly + ring.monomial((i,), f5.from_int(c))
        if poly.total_degree() < 1:
            continue
        alg = quotient_algebra(ring, Ideal(ring, [poly]))
        if alg.dim > 4:
            continue
        count = component_count(alg)
        assert count is not UNKNOWN
        assert count == brute_idempotent_count(5, alg.dim, alg.mul)
        cases += 1


def test_product_with_connected_factor_doubles_components():
    # QQ[u]/(u^2-u) tensored with three connected algebras
    for extra in (["t^2"], ["t^3"], ["t^2 + 1"]):
        a = algebra(QQ, ["u", "t"], ["u^2 - u"] + extra)
        assert component_count(a) == 2


def test_reducedness_and_radicals():
    a = algebra(QQ, ["t"], ["t^2"])
    assert not is_reduced(a)
    gens = radical_generators(a)
    assert [str(g) for g in gens] == ["t"]
    span = nilradical_span(a)
    assert len(span) == 1
    b = algebra(QQ, ["t"], ["t^2 - 1"])
    assert is_reduced(b)
    assert nilradical_span(b) == []


def test_field_detection_and_primitive_element():
    a = algebra(QQ, ["x"], ["x^2 + 1"])
    assert is_field_algebra(a) is True
    K = primitive_element_presentation(a)
    assert isinstance(K, SimpleExtensionField)
    assert up.udeg(K.min_poly) == 2
    b = algebra(QQ, ["x"], ["x^2 - 1"])
    assert is_field_algebra(b) is False
    c = algebra(QQ, [], [])
    assert is_field_algebra(c) is True
    assert primitive_element_presentation(c) == QQ


def test_components_over_subring_cases():
    ring = PolyRing(QQ, ["b", "e"], GREVLEX)
    split = Ideal(ring, [parse_polynomial("e^2 - e", ring)])
    assert components_over_subring(ring, split, ["b"]) == 2
    twisted = Ideal(ring, [parse_polynomial("e^2 - e - 3*b", ring)])
    assert components_over_subring(ring, twisted, ["b"]) == 1
    domain_ring = PolyRing(QQ, ["b"], GREVLEX)
    assert components_over_subring(domain_ring, Ideal(domain_ring, []), ["b"]) == 1


def test_components_over_subring_non_integral_is_unknown():
    # y^2 - x^2 over QQ[x]: the generic idempotents have denominator 2x
    ring = PolyRing(QQ, ["x", "y"], GREVLEX)
    ideal = Ideal(ring, [parse_polynomial("y^2 - x^2", ring)])
    assert components_over_subring(ring, ideal, ["x"]) is UNKNOWN


def test_components_over_subring_requires_finiteness():
    ring = PolyRing(QQ, ["b", "e"], GREVLEX)
    with pytest.raises(NotFiniteOverSubring):
        components_over_subring(ring, Ideal(ring, []), ["b"])
    with pytest.raises(NotFiniteOverSubring):
        components_over_subring(ring, Ideal(ring, []), ["b", "e"])
