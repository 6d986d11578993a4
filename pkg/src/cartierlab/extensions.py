"""Presented ring extensions A into B: membership, witnesses, conductors.

A presentation carries both quotient rings, the images of A's variables in
B, and optional hints (finiteness, birationality, module generators with
fraction representations, and externally supplied Picard deviation ranks).
Construction always checks well-definedness and, unless the injectivity
check runs out of budget under assume_injective, that the kernel is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .artinian import nilradical_span, quotient_algebra
from .errors import (
    CartierlabError,
    CertificateFailure,
    DegenerateExtension,
    InjectivityError,
    MissingHints,
    NotZeroDimensional,
    PairBudgetExceeded,
    WellDefinednessError,
    ZeroRingError,
)
from .polycore.groebner import (
    Ideal,
    colon,
    eliminate,
    ideal_equals,
    ideal_sum,
    intersect,
)
from .polycore.linalg import rref
from .polycore.rings import GREVLEX, MonomialOrder, Polynomial, PolyRing


@dataclass(frozen=True)
class Hints:
    finite: bool | None = None
    birational: bool | None = None
    module_generators: tuple | None = None  # B-elements
    fractions: tuple | None = None  # (generator, numerator, denominator) triples
    lpic_A_rank: int | None = None
    lpic_B_rank: int | None = None
    lpic_kernel_rank: int | None = None

    def consumed(self) -> list[str]:
        out = []
        for name in (
            "finite",
            "birational",
            "module_generators",
            "fractions",
            "lpic_A_rank",
            "lpic_B_rank",
            "lpic_kernel_rank",
        ):
            if getattr(self, name) is not None:
                out.append(name)
        return out


@dataclass(frozen=True)
class SubalgebraMembership:
    element: Polynomial
    member: bool
    preimage: Polynomial | None = None


@dataclass(frozen=True)
class WitnessCheck:
    element: Polynomial
    is_witness: bool
    details: tuple


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "_"
    return name


class ExtensionPresentation:
    def __init__(
        self,
        a_ring: PolyRing,
        a_ideal: Ideal,
        b_ring: PolyRing,
        b_ideal: Ideal,
        images: dict,
        hints: Hints | None = None,
        assume_injective: bool = False,
    ):
        if a_ring.field != b_ring.field:
            raise CartierlabError("source and target must share a coefficient field")
        if set(images) != set(a_ring.variables):
            raise CartierlabError("images must cover exactly the source variables")
        for v, img in images.items():
            if img.ring != b_ring:
                raise CartierlabError(f"image of {v!r} is not in the target ring")
        self.a_ring = a_ring
        self.a_ideal = a_ideal
        self.b_ring = b_ring
        self.b_ideal = b_ideal
        self.images = dict(images)
        self.hints = hints or Hints()
        self.warnings: tuple[str, ...] = ()
        self._membership_cache: tuple | None = None
        self._contains_memo: dict = {}

        # well-definedness: relations of A map to zero in B
        for g in a_ideal.generators:
            if not b_ideal.contains_poly(self.substitute(g)):
                raise WellDefinednessError(
                    f"relation {g} does not map to zero in the target"
                )
        # injectivity: the contraction of B's ideal must equal A's ideal
        try:
            contraction = self.contraction_ideal()
            if not ideal_equals(contraction, a_ideal):
                raise InjectivityError(
                    "the map has a kernel: contraction is strictly larger than "
                    "the stated relations"
                )
        except PairBudgetExceeded:
            if not assume_injective:
                raise
            self.warnings = ("injectivity assumed: elimination exceeded the pair budget",)

    # -- plumbing -------------------------------------------------------------

    def substitute(self, a_poly: Polynomial) -> Polynomial:
        """Image of an A-polynomial, reduced in B."""
        if a_poly.ring != self.a_ring:
            raise CartierlabError("polynomial is not in the source ring")
        return self.b_ideal.normal_form(a_poly.substitute(self.b_ring, self.images))

    def _membership_ring(self):
        """Combined ring (B variables first, then tags) with its basis."""
        if self._membership_cache is None:
            field = self.b_ring.field
            taken = set(self.b_ring.variables) | set(field.symbol_names())
            tags = []
            for v in self.a_ring.variables:
                t = _fresh(v, taken)
                taken.add(t)
                tags.append(t)
            nb = self.b_ring.nvars()
            if tags:
                order = MonomialOrder("block", nb) if nb else GREVLEX
            else:
                order = MonomialOrder("lex") if nb else GREVLEX
            work = PolyRing(field, tuple(self.b_ring.variables) + tuple(tags), order)
            gens = [g.map_variables(work) for g in self.b_ideal.generators]
            for tag, v in zip(tags, self.a_ring.variables):
                gens.append(work.variable(tag) - self.images[v].map_variables(work))
            ideal = Ideal(work, gens)
            ideal.groebner()
            self._membership_cache = (work, tags, ideal)
        return self._membership_cache

    def contraction_ideal(self) -> Ideal:
        """Kernel of k[A-variables] -> B, as an ideal of A's ring."""
        work, tags, ideal = self._membership_ring()
        eliminated = eliminate(ideal, list(self.b_ring.variables))
        gens = []
        for g in eliminated.generators:
            gens.append(Polynomial(self.a_ring, g.terms()))
        return Ideal(self.a_ring, gens)

    def contains(self, b_elem: Polynomial) -> SubalgebraMembership:
        """Subalgebra membership with a preimage certificate."""
        if b_elem.ring != self.b_ring:
            raise CartierlabError("element is not in the target ring")
        key = self.b_ideal.normal_form(b_elem)
        memo = self._contains_memo.get(key)
        if memo is not None:
            return memo
        work, tags, ideal = self._membership_ring()
        nb = self.b_ring.nvars()
        nf = ideal.normal_form(key.map_variables(work))
        if nf.involves(range(nb)):
            result = SubalgebraMembership(key, False, None)
        else:
            pre_terms = {exp[nb:]: c for exp, c in nf.terms().items()}
            preimage = Polynomial(self.a_ring, pre_terms)
            result = SubalgebraMembership(key, True, preimage)
        self._contains_memo[key] = result
        return result

    def is_identity_onto(self) -> bool:
        """True when the images generate all of B (A = B as subrings)."""
        return all(
            self.contains(self.b_ring.variable(v)).member
            for v in self.b_ring.variables
        )

    def describe(self) -> str:
        a = ", ".join(str(g) for g in self.a_ideal.generators) or "0"
        b = ", ".join(str(g) for g in self.b_ideal.generators) or "0"
        return (
            f"{self.a_ring.describe()}/({a}) -> {self.b_ring.describe()}/({b})"
        )


# -- witnesses -----------------------------------------------------------------


def is_seminormal_witness(ext: ExtensionPresentation, b: Polynomial) -> WitnessCheck:
    """b is a witness when b^2 and b^3 lie in A but b does not."""
    m1 = ext.contains(b)
    m2 = ext.contains(b * b)
    m3 = ext.contains(b * b * b)
    return WitnessCheck(b, m2.member and m3.member and not m1.member, (m1, m2, m3))


def is_anodal_witness(ext: ExtensionPresentation, b: Polynomial) -> WitnessCheck:
    """b is a witness when b^2 - b and b^3 - b^2 lie in A but b does not."""
    b2, b3 = b * b, b * b * b
    m1 = ext.contains(b)
    m2 = ext.contains(b2 - b)
    m3 = ext.contains(b3 - b2)
    return WitnessCheck(b, m2.member and m3.member and not m1.member, (m1, m2, m3))


_WITNESS_TESTS = {
    "seminormal": is_seminormal_witness,
    "anodal": is_anodal_witness,
}


def _graded_monomials(ring: PolyRing, bound: int):
    import itertools

    n = ring.nvars()
    if n == 0:
        yield ring.one()
        return
    for total in range(bound + 1):
        for exps in sorted(
            e for e in itertools.product(range(total + 1), repeat=n) if sum(e) == total
        ):
            yield ring.monomial(exps)


def _coordinate_rows(polys, order_key):
    monomials = sorted({e for p in polys for e in p.terms()}, key=order_key, reverse=True)
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [p.ring.field.zero()] * len(monomials)
        for e, c in p.terms().items():
            row[index[e]] = c
        rows.append(row)
    return rows, monomials


def witness_candidates(ext: ExtensionPresentation, bound: int):
    """Deterministic candidate stream: monomials, then echelon complements."""
    field = ext.b_ring.field
    nf_monomials = []
    seen = set()
    for m in _graded_monomials(ext.b_ring, bound):
        nf = ext.b_ideal.normal_form(m)
        if nf.is_zero() or nf in seen:
            continue
        seen.add(nf)
        nf_monomials.append(nf)
        yield nf
    # complement of the A-span inside the span of the candidates
    a_images = []
    for am in _graded_monomials(ext.a_ring, bound):
        a_images.append(ext.substitute(am))
    combined = nf_monomials + [p for p in a_images if not p.is_zero()]
    rows, monomials = _coordinate_rows(combined, ext.b_ring.order.key)
    a_rows = rows[len(nf_monomials):]
    a_ech, a_pivots = rref(field, a_rows)
    residuals = []
    for row in rows[: len(nf_monomials)]:
        vec = list(row)
        for arow, piv in zip(a_ech, a_pivots):
            c = vec[piv]
            if not field.is_zero(c):
                vec = [field.sub(x, field.mul(c, y)) for x, y in zip(vec, arow)]
        if any(not field.is_zero(x) for x in vec):
            residuals.append(vec)
    ech, _ = rref(field, residuals)
    for vec in ech:
        terms = {}
        for m, c in zip(monomials, vec):
            if not field.is_zero(c):
                terms[m] = c
        poly = Polynomial(ext.b_ring, terms)
        if poly not in seen:
            yield poly


@dataclass(frozen=True)
class ClosureResult:
    extension: ExtensionPresentation
    adjoined: tuple
    exhausted: bool


def adjoin_element(ext: ExtensionPresentation, b: Polynomial,
                   name_base: str = "w") -> ExtensionPresentation:
    """Extend A's presentation by one element of B (full kernel recomputed)."""
    taken = (
        set(ext.a_ring.variables)
        | set(ext.b_ring.variables)
        | set(ext.a_ring.field.symbol_names())
    )
    w = _fresh(name_base + str(len(ext.a_ring.variables) + 1), taken)
    new_a_ring = PolyRing(ext.a_ring.field, tuple(ext.a_ring.variables) + (w,), GREVLEX)
    images = dict(ext.images)
    images[w] = ext.b_ideal.normal_form(b)

    field = ext.b_ring.field
    taken2 = set(ext.b_ring.variables) | set(field.symbol_names())
    tags = []
    for v in new_a_ring.variables:
        t = _fresh(v, taken2)
        taken2.add(t)
        tags.append(t)
    nb = ext.b_ring.nvars()
    order = MonomialOrder("block", nb) if nb else GREVLEX
    work = PolyRing(field, tuple(ext.b_ring.variables) + tuple(tags), order)
    gens = [g.map_variables(work) for g in ext.b_ideal.generators]
    for tag, v in zip(tags, new_a_ring.variables):
        gens.append(work.variable(tag) - images[v].map_variables(work))
    kernel = eliminate(Ideal(work, gens), list(ext.b_ring.variables))
    new_ideal = Ideal(new_a_ring, [Polynomial(new_a_ring, g.terms()) for g in kernel.generators])
    return ExtensionPresentation(
        new_a_ring, new_ideal, ext.b_ring, ext.b_ideal, images, hints=ext.hints
    )


def closure_search(ext: ExtensionPresentation, kind: str,
                   degree_bound: int) -> ClosureResult:
    """Adjoin witnesses of the given kind up to the degree bound, to a fixpoint.

    The result contains no witness below the bound; this is bound-complete,
    not a proof that the enlarged ring is closed in B.
    """
    if kind not in _WITNESS_TESTS:
        raise CartierlabError(f"unknown closure kind {kind!r}")
    if degree_bound < 1:
        raise CartierlabError("degree bound must be at least 1")
    test = _WITNESS_TESTS[kind]
    current = ext
    adjoined: list[Polynomial] = []
    changed = True
    while changed:
        changed = False
        for cand in witness_candidates(current, degree_bound):
            if current.contains(cand).member:
                continue
            check = test(current, cand)
            if check.is_witness:
                current = adjoin_element(current, cand)
                adjoined.append(cand)
                changed = True
                break
    exhausted = not current.is_identity_onto()
    return ClosureResult(current, tuple(adjoined), exhausted)


# -- conductor -----------------------------------------------------------------


def conductor(ext: ExtensionPresentation) -> Ideal:
    """The largest ideal of B contained in A, as an ideal of A's ring.

    Requires module generators with fraction representations p/q over A;
    computed as the intersection of the colon ideals (q) : p and certified
    elementwise by membership of generator * module generator.
    """
    hints = ext.hints
    if not hints.birational:
        raise MissingHints("conductor needs the birational hint")
    if hints.module_generators is None:
        raise MissingHints("conductor needs module generators for B over A")
    fractions = {g: (n, d) for g, n, d in (hints.fractions or ())}
    result: Ideal | None = None
    for gen in hints.module_generators:
        if gen not in fractions:
            if ext.contains(gen).member:
                continue  # generator already inside A constrains nothing
            raise MissingHints(f"module generator {gen} has no fraction hint")
        num, den = fractions[gen]
        base = ideal_sum(ext.a_ideal, Ideal(ext.a_ring, [den]))
        quot = colon(base, Ideal(ext.a_ring, [num]))
        result = quot if result is None else intersect(result, quot)
    if result is None:
        result = Ideal(ext.a_ring, [ext.a_ring.one()])
    result = Ideal(ext.a_ring, list(result.groebner()))
    for g in result.generators:
        g_in_b = ext.substitute(g)
        for gen in hints.module_generators:
            if not ext.contains(ext.b_ideal.normal_form(g_in_b * gen)).member:
                raise CertificateFailure(
                    f"conductor generator {g} times {gen} escapes the subring"
                )
    return result


def reduce_mod_conductor(ext: ExtensionPresentation) -> ExtensionPresentation:
    """Quotient both sides by the conductor (an ideal on either side)."""
    cond = conductor(ext)
    if cond.is_unit_ideal():
        raise DegenerateExtension("unit conductor: the extension is an equality")
    new_a_ideal = ideal_sum(ext.a_ideal, cond)
    pushed = [ext.substitute(g) for g in cond.generators]
    new_b_ideal = ideal_sum(ext.b_ideal, Ideal(ext.b_ring, pushed))
    hints = Hints(finite=ext.hints.finite, module_generators=ext.hints.module_generators)
    return ExtensionPresentation(
        ext.a_ring, new_a_ideal, ext.b_ring, new_b_ideal, ext.images, hints=hints
    )


# -- nilpotent comparison --------------------------------------------------------


@dataclass(frozen=True)
class NilComparison:
    status: str  # equal | differ | unknown
    reason: str
    witness: Polynomial | None = None


def nil_comparison(ext: ExtensionPresentation) -> NilComparison:
    """Compare the nilradicals: equal exactly when every nilpotent of B lies in A."""
    if ext.b_ideal.is_zero_ideal():
        return NilComparison("equal", "target is a free polynomial ring (reduced)")
    try:
        alg = quotient_algebra(ext.b_ring, ext.b_ideal)
    except (NotZeroDimensional, ZeroRingError):
        return NilComparison(
            "unknown", "target is not presented as a finite-dimensional algebra"
        )
    span = nilradical_span(alg)
    if not span:
        return NilComparison("equal", "target is reduced")
    for vec in span:
        poly = alg.to_poly(vec)
        if not ext.contains(poly).member:
            return NilComparison(
                "differ", f"nilpotent {poly} of the target lies outside the subring",
                witness=poly,
            )
    return NilComparison("equal", "every nilpotent of the target lies in the subring")
