"""Zero-dimensional quotient rings as finite-dimensional algebras.

A FiniteAlgebra carries the monomial staircase basis and the multiplication
table of R = ring/ideal. Connected components are counted by splitting the
identity into primitive idempotents: probe elements in a fixed order, take
the squarefree part of the minimal polynomial, split it into coprime factors,
build an approximate idempotent from a Bezout identity, and lift it until it
is exactly idempotent. Unknown is a first-class outcome; a count is only
reported when every block is proven connected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CartierlabError,
    FactorSearchLimit,
    NotFiniteOverSubring,
    NotZeroDimensional,
    ProbeExhausted,
    UNKNOWN,
    ZeroRingError,
)
from .polycore import unipoly as up
from .polycore.factor import squarefree_factors
from .polycore.fields import PrimeField, RationalField, RationalFunctionField
from .polycore.groebner import Ideal
from .polycore.linalg import first_dependence, rref
from .polycore.rings import GREVLEX, Polynomial, PolyRing


class FiniteAlgebra:
    """ring/ideal with a staircase basis and structure constants."""

    def __init__(self, ring: PolyRing, ideal: Ideal):
        if ideal.ring != ring:
            raise CartierlabError("ideal belongs to a different ring")
        gb = ideal.groebner()
        if len(gb) == 1 and gb[0].is_constant():
            raise ZeroRingError("quotient by the unit ideal")
        lead = [g.leading_term()[0] for g in gb]
        bounds = []
        for i, name in enumerate(ring.variables):
            pure = [
                exp[i]
                for exp in lead
                if exp[i] > 0 and all(e == 0 for j, e in enumerate(exp) if j != i)
            ]
            if not pure:
                raise NotZeroDimensional(name)
            bounds.append(min(pure))
        basis = []
        for exps in itertools.product(*(range(b) for b in bounds)):
            if not any(all(l <= e for l, e in zip(lt, exps)) for lt in lead):
                basis.append(exps)
        basis.sort(key=ring.order.key)
        self.ring = ring
        self.ideal = ideal
        self.field = ring.field
        self.basis = tuple(basis)
        self.dim = len(basis)
        self._index = {exp: i for i, exp in enumerate(basis)}
        self._table: dict[tuple[int, int], tuple] = {}

    # -- elements ------------------------------------------------------------

    def zero(self) -> tuple:
        return (self.field.zero(),) * self.dim

    def one(self) -> tuple:
        return self.basis_element(0)

    def basis_element(self, i: int) -> tuple:
        return tuple(
            self.field.one() if j == i else self.field.zero() for j in range(self.dim)
        )

    def from_poly(self, f: Polynomial) -> tuple:
        nf = self.ideal.normal_form(f)
        coords = [self.field.zero()] * self.dim
        for exp, c in nf.terms().items():
            coords[self._index[exp]] = c
        return tuple(coords)

    def to_poly(self, a: tuple) -> Polynomial:
        total = self.ring.zero()
        for c, exp in zip(a, self.basis):
            if not self.field.is_zero(c):
                total = total + self.ring.monomial(exp, c)
        return total

    def scalar(self, c) -> tuple:
        return (c,) + (self.field.zero(),) * (self.dim - 1)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.field.add(x, y) for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.field.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a: tuple) -> tuple:
        return tuple(self.field.mul(c, x) for x in a)

    def _basis_product(self, i: int, j: int) -> tuple:
        if i > j:
            i, j = j, i
        cached = self._table.get((i, j))
        if cached is None:
            exp = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
            cached = self.from_poly(self.ring.monomial(exp, self.field.one()))
            self._table[(i, j)] = cached
        return cached

    def mul(self, a: tuple, b: tuple) -> tuple:
        out = [self.field.zero()] * self.dim
        for i, ca in enumerate(a):
            if self.field.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                if self.field.is_zero(cb):
                    continue
                c = self.field.mul(ca, cb)
                for k, s in enumerate(self._basis_product(i, j)):
                    if not self.field.is_zero(s):
                        out[k] = self.field.add(out[k], self.field.mul(c, s))
        return tuple(out)

    def pow(self, a: tuple, n: int) -> tuple:
        result = self.one()
        while n > 0:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero_elem(self, a: tuple) -> bool:
        return all(self.field.is_zero(c) for c in a)

    def eval_upoly(self, coeffs: tuple, a: tuple, unit: tuple | None = None) -> tuple:
        """Evaluate a univariate coefficient tuple at a, with a^0 := unit."""
        unit = self.one() if unit is None else unit
        acc = self.zero()
        power = unit
        for c in coeffs:
            acc = self.add(acc, self.scale(c, power))
            power = self.mul(power, a)
        return acc

    def is_unit(self, a: tuple) -> bool:
        m = minimal_polynomial(self, a)
        return not self.field.is_zero(m[0])

    def inverse(self, a: tuple) -> tuple:
        m = minimal_polynomial(self, a)
        if self.field.is_zero(m[0]):
            raise ZeroDivisionError("element is not a unit")
        tail = tuple(m[1:])  # m(a) = 0  =>  a * tail(a) = -m[0]
        scale = self.field.neg(self.field.inv(m[0]))
        return self.scale(scale, self.eval_upoly(tail, a))

    def variable_element(self, name: str) -> tuple:
        return self.from_poly(self.ring.variable(name))

    def describe(self) -> str:
        gens = ", ".join(str(g) for g in self.ideal.generators) or "0"
        return f"{self.ring.describe()}/({gens})"


def quotient_algebra(ring: PolyRing, ideal: Ideal) -> FiniteAlgebra:
    """The staircase-basis presentation of a zero-dimensional quotient."""
    return FiniteAlgebra(ring, ideal)


def minimal_polynomial(alg: FiniteAlgebra, a: tuple) -> tuple:
    """Monic least-degree m with m(a) = 0, as a coefficient tuple."""
    powers = [alg.one()]
    for _ in range(alg.dim):
        powers.append(alg.mul(powers[-1], a))
    dep = first_dependence(alg.field, [list(p) for p in powers])
    if dep is None:  # cannot happen: dim+1 vectors in dim dimensions
        raise CartierlabError("no dependence among element powers")
    k, coeffs = dep
    return tuple(alg.field.neg(c) for c in coeffs) + (alg.field.one(),)


def minimal_polynomial_as_poly(alg: FiniteAlgebra, a: tuple,
                               variable: str = "z") -> Polynomial:
    ring = PolyRing(alg.field, [variable], GREVLEX)
    coeffs = minimal_polynomial(alg, a)
    total = ring.zero()
    for i, c in enumerate(coeffs):
        total = total + ring.monomial((i,), c)
    return total


# -- idempotents --------------------------------------------------------------


@dataclass(frozen=True)
class IdempotentDecomposition:
    algebra: FiniteAlgebra
    idempotents: tuple
    count: int


def _probe_stream(alg: FiniteAlgebra):
    for i in range(1, alg.dim):
        yield alg.basis_element(i)
    for i in range(1, alg.dim):
        for j in range(i + 1, alg.dim):
            yield alg.add(alg.basis_element(i), alg.basis_element(j))


def _relative_minimal_polynomial(alg: FiniteAlgebra, unit: tuple, a: tuple) -> tuple:
    powers = [unit]
    for _ in range(alg.dim):
        powers.append(alg.mul(powers[-1], a))
    k, coeffs = first_dependence(alg.field, [list(p) for p in powers])
    return tuple(alg.field.neg(c) for c in coeffs) + (alg.field.one(),)


def _hensel_idempotent(alg: FiniteAlgebra, h: tuple) -> tuple:
    for _ in range(alg.dim + 2):
        square = alg.mul(h, h)
        if square == h:
            return h
        # h <- 3h^2 - 2h^3
        three = alg.field.from_int(3)
        two = alg.field.from_int(2)
        h = alg.sub(alg.scale(three, square), alg.scale(two, alg.mul(square, h)))
    if alg.mul(h, h) == h:
        return h
    raise CartierlabError("idempotent lifting failed to converge")  # pragma: no cover


def _split_block(alg: FiniteAlgebra, unit: tuple) -> list[tuple]:
    limit_hit = False
    for probe in _probe_stream(alg):
        a = alg.mul(unit, probe)
        m = _relative_minimal_polynomial(alg, unit, a)
        sq = up.usquarefree_part(alg.field, m)
        try:
            factors = squarefree_factors(alg.field, sq)
        except FactorSearchLimit:
            limit_hit = True
            continue
        if len(factors) < 2:
            continue
        g1 = factors[0]
        g2 = (alg.field.one(),)
        for f in factors[1:]:
            g2 = up.umul(alg.field, g2, f)
        _, _, v = up.uxgcd(alg.field, g1, g2)
        h = alg.eval_upoly(up.umul(alg.field, v, g2), a, unit=unit)
        h = _hensel_idempotent(alg, h)
        if alg.is_zero_elem(h) or h == unit:
            raise CartierlabError("splitting produced a trivial idempotent")  # pragma: no cover
        return _split_block(alg, h) + _split_block(alg, alg.sub(unit, h))
    if limit_hit:
        raise ProbeExhausted(
            "no splitting element found and a factor search hit its cap"
        )
    return [unit]


def idempotent_decomposition(alg: FiniteAlgebra) -> IdempotentDecomposition:
    """Primitive idempotents summing to 1; count = connected components."""
    parts = _split_block(alg, alg.one())
    return IdempotentDecomposition(alg, tuple(parts), len(parts))


def component_count(alg: FiniteAlgebra):
    """Number of connected components of Spec, or Unknown."""
    try:
        return idempotent_decomposition(alg).count
    except ProbeExhausted:
        return UNKNOWN


# -- reducedness and radicals ---------------------------------------------------


def variable_minimal_polynomials(alg: FiniteAlgebra) -> list[tuple]:
    return [
        minimal_polynomial(alg, alg.variable_element(v)) for v in alg.ring.variables
    ]


def radical_generators(alg: FiniteAlgebra) -> list[Polynomial]:
    """Extra generators presenting the reduced quotient (variable eliminants)."""
    gens = []
    for name, m in zip(alg.ring.variables, variable_minimal_polynomials(alg)):
        sq = up.usquarefree_part(alg.field, m)
        if up.udeg(sq) < up.udeg(m):
            total = alg.ring.zero()
            var = alg.ring.variable(name)
            power = alg.ring.one()
            for c in sq:
                total = total + power.scale(c)
                power = power * var
            gens.append(total)
    return gens


def is_reduced(alg: FiniteAlgebra) -> bool:
    return all(
        up.udeg(up.usquarefree_part(alg.field, m)) == up.udeg(m)
        for m in variable_minimal_polynomials(alg)
    )


def is_field_algebra(alg: FiniteAlgebra):
    """True/False when decidable, Unknown when a factor cap blocks the count."""
    if not is_reduced(alg):
        return False
    count = component_count(alg)
    if count is UNKNOWN:
        return UNKNOWN
    return count == 1


def nilradical_span(alg: FiniteAlgebra) -> list[tuple]:
    """Vectors spanning the nilradical as a subspace (possibly empty)."""
    gens = radical_generators(alg)
    if not gens:
        return []
    rows = []
    for g in gens:
        coords = alg.from_poly(g)
        for i in range(alg.dim):
            rows.append(list(alg.mul(coords, alg.basis_element(i))))
    reduced, _ = rref(alg.field, rows)
    return [tuple(row) for row in reduced]


def primitive_element_presentation(alg: FiniteAlgebra):
    """Present a field algebra as the base field or a simple extension.

    Returns a Field, or None when no probe is primitive.
    """
    from .polycore.fields import SimpleExtensionField

    if alg.dim == 1:
        return alg.field
    taken = set(alg.ring.variables) | set(alg.field.symbol_names())
    name = "g"
    while name in taken:
        name += "_"
    for probe in _probe_stream(alg):
        m = minimal_polynomial(alg, probe)
        if up.udeg(m) == alg.dim:
            return SimpleExtensionField(alg.field, m, generator=name)
    return None


# -- fibers that are finite over a polynomial subring ---------------------------


def move_variable_to_field(ring: PolyRing, ideal: Ideal, free: str):
    """Rebuild ring/ideal over the rational function field in `free`."""
    if free not in ring.variables:
        raise CartierlabError(f"unknown variable {free!r}")
    if not isinstance(ring.field, (RationalField, PrimeField)):
        raise NotFiniteOverSubring(
            "free variables require a QQ or FP(p) coefficient field"
        )
    K = RationalFunctionField(ring.field, free)
    keep = [v for v in ring.variables if v != free]
    new_ring = PolyRing(K, keep, GREVLEX)
    free_idx = ring.variables.index(free)
    new_gens = []
    for g in ideal.generators:
        out: dict = {}
        for exp, c in g.terms().items():
            e_free = exp[free_idx]
            rest = tuple(e for i, e in enumerate(exp) if i != free_idx)
            coeff = K.make(
                up.uscale(ring.field, c, (ring.field.zero(),) * e_free + (ring.field.one(),)),
                (ring.field.one(),),
            )
            if rest in out:
                coeff = K.add(out[rest], coeff)
            if K.is_zero(coeff):
                out.pop(rest, None)
            else:
                out[rest] = coeff
        new_gens.append(Polynomial(new_ring, out))
    return new_ring, Ideal(new_ring, new_gens)


def components_over_subring(ring: PolyRing, ideal: Ideal, free_variables):
    """Components of ring/ideal when it is finite over k[free variable].

    The count is certified only when every primitive idempotent of the
    generic-fiber algebra has polynomial coordinates and lifts to an exact
    idempotent of the quotient; otherwise the result is Unknown.
    """
    free = list(free_variables)
    if len(free) != 1:
        raise NotFiniteOverSubring(
            "exactly one free variable is supported (single function-field level)"
        )
    new_ring, new_ideal = move_variable_to_field(ring, ideal, free[0])
    try:
        alg = quotient_algebra(new_ring, new_ideal)
    except NotZeroDimensional as exc:
        raise NotFiniteOverSubring(str(exc)) from None
    except ZeroRingError:
        raise NotFiniteOverSubring(
            "the quotient is torsion over the chosen subring"
        ) from None
    try:
        decomp = idempotent_decomposition(alg)
    except ProbeExhausted:
        return UNKNOWN
    K = alg.field
    free_idx = ring.variables.index(free[0])
    keep_idx = [i for i in range(len(ring.variables)) if i != free_idx]
    for e in decomp.idempotents:
        if not all(K.is_polynomial(c) for c in e):
            return UNKNOWN
        # lift back and certify idempotency in the original quotient
        lift = ring.zero()
        for c, exp in zip(e, alg.basis):
            if K.is_zero(c):
                continue
            num = K.numerator(c)
            for power, base_c in enumerate(num):
                if ring.field.is_zero(base_c):
                    continue
                full = [0] * len(ring.variables)
                full[free_idx] = power
                for pos, i in enumerate(keep_idx):
                    full[i] = exp[pos]
                lift = lift + ring.monomial(tuple(full), base_c)
        if not ideal.contains_poly(lift * lift - lift):
            return UNKNOWN
    return decomp.count


# -- exhaustive enumeration over prime fields -----------------------------------


def iter_all_elements(alg: FiniteAlgebra):
    """All elements of an algebra over a prime field (use with a size guard)."""
    if not isinstance(alg.field, PrimeField):
        raise CartierlabError("exhaustive enumeration needs a prime field")
    for coords in itertools.product(range(alg.field.p), repeat=alg.dim):
        yield tuple(coords)
