"""Homology of the cover C and of the surface S = (C × E)/G, and Aut_ℤ(S).

H₁(C) comes from Reidemeister-Schreier rewriting of the orbifold group of
B = C/G over the kernel of the monodromy. A central element z of G acts
trivially on H₁(S, ℤ) when every commutator [lift(z), lift(g)] vanishes in
the coinvariants H₁(C, ℤ)_G. π₁(S) is the preimage of the diagonal under
π^orb(C/G) × π^orb(E/G) → G × G.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .fpgroup import (DirectProductGroup, abelianization, check_homomorphism,
                      commutator, direct_product, exponent_vector, orbifold_presentation,
                      rewrite_subgroup)
from .linalg import AbelianInvariants, QuotientMap, abelian_invariants
from .monodromy import (EllipticBranchDatum, MonodromyDatum, MonodromyError, genus_C,
                        validate, validate_branch)


class InvariantsError(ValueError):
    pass


class GroupMismatch(InvariantsError):
    pass


class HomologyNotFree(InvariantsError):
    pass


class InconsistentFractions(InvariantsError):
    pass


def h1_orb(h, local_orders) -> AbelianInvariants:
    return abelianization(orbifold_presentation(h, local_orders)).invariants


# -- H₁(C) and its coinvariants ------------------------------------------------

class CoinvariantSpace:
    """H₁(C, ℤ)_G with coordinates for words of π₁(C).

    ``two_step`` (default) first abelianizes π₁(C), checks it is free, and
    then divides by the differences g·u - u. The one-step variant divides
    the free abelian group on the Schreier generators by both sets of rows at
    once; both give the same group.
    """

    def __init__(self, d: MonodromyDatum, generator_order=None, two_step=True):
        validate(d)
        self.datum = d
        f = d.quotient_map()
        self.schreier = sd = rewrite_subgroup(f, None, generator_order)
        n = sd.n_generators
        relator_rows = sd.relation_rows()
        self.h1C = QuotientMap(n, relator_rows)
        g = genus_C(d)
        inv = self.h1C.invariants
        if inv.torsion or inv.free_rank != 2 * g:
            raise HomologyNotFree(f"H1(C) = {inv}, expected free of rank {2 * g}")
        # conjugation by each source generator x on each Schreier generator u
        conj_rows = []
        for x in range(1, f.source.n_generators + 1):
            for i in range(n):
                u = sd.generator_word(i)
                conj_rows.append(sd.rewrite_vector(commutator((x,), u)))
        self.two_step = two_step
        if two_step:
            rows = [self.h1C(v) for v in conj_rows]
            self._outer = QuotientMap(inv.free_rank, rows)
        else:
            self._outer = QuotientMap(n, relator_rows + conj_rows)
        self.conjugation_rows = conj_rows

    @property
    def invariants(self) -> AbelianInvariants:
        return self._outer.invariants

    def coordinates_of_vector(self, v):
        if self.two_step:
            return self._outer(self.h1C(v))
        return self._outer(v)

    def coordinates(self, w):
        """Coordinates of a word of π^orb lying in π₁(C)."""
        return self.coordinates_of_vector(self.schreier.rewrite_vector(w, 0))

    def is_zero(self, w):
        return not any(self.coordinates(w))


def h1C_coinvariants(d: MonodromyDatum, generator_order=None, two_step=True) -> CoinvariantSpace:
    return CoinvariantSpace(d, generator_order, two_step)


def h1C(d: MonodromyDatum, generator_order=None) -> AbelianInvariants:
    sd = rewrite_subgroup(validate(d).quotient_map(), None, generator_order)
    return abelian_invariants(sd.n_generators, sd.relation_rows())


@dataclass(frozen=True)
class TrivialActionResult:
    elements: tuple          # the subgroup K, in group enumeration order
    accepted: tuple          # central elements passing the commutator test
    rejected: tuple

    @property
    def order(self):
        return len(self.elements)


def trivial_action_subgroup(d: MonodromyDatum, generator_order=None, two_step=True,
                            space: Optional[CoinvariantSpace] = None) -> TrivialActionResult:
    """Central elements whose commutators with every lift vanish in H₁(C)_G."""
    cs = space or CoinvariantSpace(d, generator_order, two_step)
    G = d.group
    sd = cs.schreier
    lift = {g: w for g, w in zip(sd.coset_elements, sd.transversal)}
    accepted = []
    rejected = []
    for z in G.center():
        if z == G.identity:
            continue
        l1 = lift[z]
        if all(cs.is_zero(commutator(l1, lift[g])) for g in G.elements):
            accepted.append(z)
        else:
            rejected.append(z)
    K = G.generated_subgroup(accepted)
    elements = tuple(g for g in G.elements if g in K)
    return TrivialActionResult(elements, tuple(accepted), tuple(rejected))


# -- π₁(S) and H₁(S) -------------------------------------------------------------

def pi1_S_schreier(d: MonodromyDatum, e: EllipticBranchDatum, generator_order=None):
    validate(d)
    validate_branch(e)
    if e.group != d.group:
        raise GroupMismatch("the two monodromies take values in different groups")
    G = d.group
    P = direct_product(d.presentation(), e.presentation())
    GG = DirectProductGroup(G, G)
    images = [(g, G.identity) for g in d.images] + [(G.identity, g) for g in e.gamma_images]
    f = check_homomorphism(P, GG, images)
    n1 = len(d.images)
    if generator_order is not None and len(generator_order) == n1:
        # an order on the generators of π^orb(C/G) alone; the E side keeps its order
        generator_order = list(generator_order) + list(range(n1 + 1, P.n_generators + 1))
    return rewrite_subgroup(f, GG.diagonal(), generator_order)


def pi1_S_presentation(d: MonodromyDatum, e: EllipticBranchDatum, generator_order=None):
    return pi1_S_schreier(d, e, generator_order).subgroup_presentation()


def h1_S(d: MonodromyDatum, e: EllipticBranchDatum, generator_order=None) -> AbelianInvariants:
    sd = pi1_S_schreier(d, e, generator_order)
    return abelian_invariants(sd.n_generators, sd.relation_rows())


def h1_E(e: EllipticBranchDatum) -> AbelianInvariants:
    """H₁ of the elliptic curve recovered from the branch datum; must be ℤ²."""
    validate_branch(e)
    sd = rewrite_subgroup(e.quotient_map())
    return abelian_invariants(sd.n_generators, sd.relation_rows())


# -- Aut_ℤ(S) -------------------------------------------------------------------

def abelian_structure(G, elements) -> AbelianInvariants:
    """Invariant factors of a finite abelian subgroup given by its elements."""
    orders = [G.element_order(g) for g in elements]
    n = len(elements)
    primes = []
    m = n
    p = 2
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    # per prime, the partition from counts of elements killed by p^i
    factors = []
    for p in primes:
        counts = []
        i = 0
        while True:
            c = sum(1 for o in orders if (p ** i) % o == 0)
            counts.append(c)
            if c == n or (i and c == counts[-2] and c != 1):
                break
            i += 1
        # number of cyclic factors of order >= p^i is log_p(counts[i]/counts[i-1])
        parts = []
        for i in range(1, len(counts)):
            ratio = counts[i] // counts[i - 1]
            e = 0
            while ratio > 1:
                ratio //= p
                e += 1
            parts.append(e)
        # parts[i-1] = #factors with exponent >= i
        exps = []
        for i in range(len(parts)):
            nxt = parts[i + 1] if i + 1 < len(parts) else 0
            exps += [i + 1] * (parts[i] - nxt)
        factors.append(sorted((p ** x for x in exps), reverse=True))
    width = max((len(f) for f in factors), default=0)
    inv = []
    for j in range(width):
        d = 1
        for f in factors:
            if j < len(f):
                d *= f[j]
        inv.append(d)
    return AbelianInvariants(0, tuple(sorted(inv)))


@dataclass
class AutZReport:
    K: tuple
    C: tuple
    certainty: str
    rules: list = field(default_factory=list)
    h1_S: Optional[AbelianInvariants] = None
    C_structure: Optional[AbelianInvariants] = None

    @property
    def K_order(self):
        return len(self.K)

    @property
    def C_order(self):
        return len(self.C)

    @property
    def exact(self):
        return self.certainty == "Exact"


def aut_z_report(d: MonodromyDatum, e: EllipticBranchDatum, generator_order=None,
                 trivial: Optional[TrivialActionResult] = None,
                 h1: Optional[AbelianInvariants] = None) -> AutZReport:
    G = d.group
    if trivial is None:
        trivial = trivial_action_subgroup(d, generator_order)
    rules = [f"commutator test on H1(C)_G: the trivially acting central subgroup K has order {trivial.order}"]
    K = trivial.elements
    if d.h >= 2:
        C = tuple(g for g in K if G.is_translation(g))
        rules.append("base genus >= 2: only translations can act trivially on H2(S), so C = K ∩ T")
    else:
        C = K
    if h1 is None:
        h1 = h1_S(d, e, generator_order)
    certainty = "UpperBound"
    if len(C) == 1:
        certainty = "Exact"
        rules.append("candidate group is trivial")
    elif d.h == 1 and len(G.spec.translation_invariants().torsion) <= 1 and any(
            len(G.generated_subgroup([g])) == G.spec.translation_order for g in d.gamma_images):
        certainty = "Exact"
        rules.append("base genus 1, T cyclic and generated by a local monodromy: "
                     "trivial action on H1 extends to H2")
    elif d.h >= 2 and h1.is_torsion_free:
        certainty = "Exact"
        rules.append("H1(S) is torsion free: rational and integral triviality agree")
    else:
        rules.append("no exactness rule applies: C is an upper bound")
    return AutZReport(K, C, certainty, rules, h1, abelian_structure(G, C))


# -- pseudo-elliptic surfaces -------------------------------------------------------

@dataclass(frozen=True)
class PseudoEllipticDatum:
    """Fractional translations ``x_i`` in coordinates of a basis of Λ."""

    h: int
    xs: tuple
    orders: Optional[tuple] = None

    def __post_init__(self):
        xs = tuple((Fraction(a), Fraction(b)) for a, b in self.xs)
        object.__setattr__(self, "xs", xs)
        actual = tuple(lcm(a.denominator, b.denominator) for a, b in xs)
        if self.orders is not None and tuple(self.orders) != actual:
            raise InconsistentFractions(f"recorded orders {tuple(self.orders)} but x_i have orders {actual}")
        object.__setattr__(self, "orders", actual)
        if any(m < 2 for m in actual):
            raise InconsistentFractions("each x_i must be a nonzero class modulo the lattice")
        if sum(a for a, _ in xs) != 0 or sum(b for _, b in xs) != 0:
            raise InconsistentFractions("the x_i do not sum to zero")


def pseudo_elliptic_h1(p: PseudoEllipticDatum) -> AbelianInvariants:
    """(ℤ^{2h} ⊕ Λ ⊕ ⊕ℤγ_i) / ⟨Σγ_i, m_i γ_i - m_i x_i⟩."""
    k = len(p.xs)
    n = 2 * p.h + 2 + k
    lam = 2 * p.h
    rows = []
    if k:
        rows.append([0] * (2 * p.h + 2) + [1] * k)
    for i, ((a, b), m) in enumerate(zip(p.xs, p.orders)):
        row = [0] * n
        row[lam] = -int(m * a)
        row[lam + 1] = -int(m * b)
        row[lam + 2 + i] = m
        rows.append(row)
    return abelian_invariants(n, rows)


def exceptional_pseudo_elliptic_datum(m) -> PseudoEllipticDatum:
    """Four branch points: two equal half periods and a pair of opposite order-m points."""
    half = (Fraction(1, 2), Fraction(0))
    third = (Fraction(0), Fraction(1, m))
    last = (-2 * half[0] - third[0], -2 * half[1] - third[1])
    return PseudoEllipticDatum(0, (half, half, third, last))


def pseudo_elliptic_exception(n, h, gammas, as_orders=False) -> bool:
    """Whether a translation action of ℤ/n with local monodromies ``gammas`` is the exceptional one.

    ``gammas`` are elements of ℤ/n. With ``as_orders`` they are instead a
    signed order pattern such as ``(2, 2, 3, -3)``: two equal points of order
    2 and a pair g, -g of order m, written ``m, -m``.
    """
    if h != 0 or len(gammas) != 4 or n % 2:
        return False
    m = n // 2
    if m % 2 == 0 or m < 3:
        return False
    if as_orders:
        return sorted(gammas) == sorted([2, 2, m, -m])
    g = [x % n for x in gammas]
    if sum(g) % n:
        return False

    def order(x):
        return n // _gcd(x, n)

    twos = [x for x in g if order(x) == 2]
    odd = [x for x in g if order(x) == m]
    if len(twos) != 2 or len(odd) != 2:
        return False
    return twos[0] == twos[1] and (odd[0] + odd[1]) % n == 0


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


__all__ = [
    "CoinvariantSpace", "AutZReport", "PseudoEllipticDatum", "TrivialActionResult",
    "h1_orb", "h1C", "h1C_coinvariants", "trivial_action_subgroup", "pi1_S_presentation",
    "pi1_S_schreier", "h1_S", "h1_E", "aut_z_report", "pseudo_elliptic_h1",
    "pseudo_elliptic_exception", "exceptional_pseudo_elliptic_datum", "abelian_structure",
    "GroupMismatch", "HomologyNotFree", "InconsistentFractions", "MonodromyError",
]
