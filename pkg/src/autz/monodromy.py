"""Monodromy data of a G-cover C -> B and their normal forms.

A datum records the images in G of a geometric basis
(a1, b1, ..., ah, bh; c1, ..., ck) of the orbifold group of B = C/G. Branch
images must be translations of the recorded orders, the long relator must
hold, the images must generate G, and C must have genus at least 2.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd
from typing import Optional

from .elliptic import EllipticGroup, GElement, preset
from .fpgroup import check_homomorphism, orbifold_presentation


class MonodromyError(ValueError):
    pass


class RelatorFails(MonodromyError):
    pass


class NotSurjective(MonodromyError):
    pass


class GammaNotTranslation(MonodromyError):
    pass


class GammaWrongOrder(MonodromyError):
    pass


class GenusTooSmall(MonodromyError):
    pass


class NonIntegralGenus(MonodromyError):
    pass


class InvalidParams(MonodromyError):
    pass


class NotNormalizable(MonodromyError):
    pass


class InvalidBranchDatum(MonodromyError):
    pass


@dataclass(frozen=True)
class MonodromyDatum:
    group: EllipticGroup
    h: int
    ab_images: tuple
    gamma_images: tuple = ()
    gamma_orders: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "ab_images", tuple(self.ab_images))
        object.__setattr__(self, "gamma_images", tuple(self.gamma_images))
        if self.gamma_orders is None:
            orders = tuple(self.group.element_order(g) for g in self.gamma_images)
        else:
            orders = tuple(int(m) for m in self.gamma_orders)
        object.__setattr__(self, "gamma_orders", orders)

    @property
    def k(self):
        return len(self.gamma_images)

    @property
    def images(self):
        return self.ab_images + self.gamma_images

    def a(self, i):
        return self.ab_images[2 * (i - 1)]

    def b(self, i):
        return self.ab_images[2 * (i - 1) + 1]

    def presentation(self):
        return orbifold_presentation(self.h, self.gamma_orders)

    def quotient_map(self):
        return check_homomorphism(self.presentation(), self.group, self.images)

    def format(self):
        G = self.group

        def show(g):
            return "0" if g == G.identity else G.format(g)

        head = ", ".join(show(g) for g in self.ab_images)
        if self.gamma_images:
            tail = ", ".join(show(g) for g in self.gamma_images)
            return f"({head}; {tail})"
        return f"({head})"

    def type_string(self):
        orders = ",".join(str(m) for m in self.gamma_orders) or "-"
        return f"({self.h};{orders})"


def datum_from_strings(group, h, ab, gammas=(), orders=None) -> MonodromyDatum:
    """Build a datum from element expressions such as ``"e"``, ``"t*s"``, ``"1"``."""
    G = preset(group) if isinstance(group, str) else group
    return MonodromyDatum(G, h, tuple(G.parse(x) for x in ab), tuple(G.parse(x) for x in gammas),
                          None if orders is None else tuple(orders))


def long_relator_value(d: MonodromyDatum):
    G = d.group
    out = G.identity
    for i in range(1, d.h + 1):
        a, b = d.a(i), d.b(i)
        out = G.mul(out, G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))))
    for g in d.gamma_images:
        out = G.mul(out, g)
    return out


def genus_C(d: MonodromyDatum) -> int:
    chi = Fraction(2 * d.h - 2) + sum(Fraction(m - 1, m) for m in d.gamma_orders)
    twice = d.group.order * chi + 2
    if twice.denominator != 1 or twice.numerator % 2:
        raise NonIntegralGenus(f"2g = {twice} is not an even integer")
    return twice.numerator // 2


def validate(d: MonodromyDatum) -> MonodromyDatum:
    G = d.group
    if d.h < 0:
        raise InvalidParams("genus h must be nonnegative")
    if len(d.ab_images) != 2 * d.h:
        raise InvalidParams(f"expected {2 * d.h} handle images, got {len(d.ab_images)}")
    if len(d.gamma_orders) != d.k:
        raise InvalidParams("one recorded order per branch image required")
    v = long_relator_value(d)
    if v != G.identity:
        raise RelatorFails(f"long relator evaluates to {G.format(v)}, not the identity")
    for j, (g, m) in enumerate(zip(d.gamma_images, d.gamma_orders), 1):
        if not G.is_translation(g):
            raise GammaNotTranslation(f"branch image c{j} = {G.format(g)} is not a translation")
        n = G.element_order(g)
        if m < 2 or n != m:
            raise GammaWrongOrder(f"branch image c{j} = {G.format(g)} has order {n}, recorded {m}")
    H = G.generated_subgroup(d.images)
    if len(H) != G.order:
        raise NotSurjective(f"images generate a subgroup of index {G.order // len(H)}")
    g = genus_C(d)
    if g < 2:
        raise GenusTooSmall(f"the cover has genus {g}; at least 2 is required")
    return d


def is_valid(d):
    try:
        validate(d)
    except MonodromyError:
        return False
    return True


# -- branch data of E -> E/G -------------------------------------------------

@dataclass(frozen=True)
class EllipticBranchDatum:
    group: EllipticGroup
    gamma_images: tuple

    @property
    def orders(self):
        return tuple(self.group.element_order(g) for g in self.gamma_images)

    def presentation(self):
        return orbifold_presentation(0, self.orders)

    def quotient_map(self):
        return check_homomorphism(self.presentation(), self.group, self.gamma_images)

    def format(self):
        return "[" + ", ".join(self.group.format(g) for g in self.gamma_images) + "]"


def validate_branch(e: EllipticBranchDatum) -> EllipticBranchDatum:
    G = e.group
    out = G.identity
    for g in e.gamma_images:
        out = G.mul(out, g)
    if out != G.identity:
        raise InvalidBranchDatum(f"branch images multiply to {G.format(out)}")
    if any(m < 2 for m in e.orders):
        raise InvalidBranchDatum("a branch image is the identity")
    if sum(Fraction(m - 1, m) for m in e.orders) != 2:
        raise InvalidBranchDatum(f"orders {e.orders} do not give a genus-1 cover of the line")
    if len(G.generated_subgroup(e.gamma_images)) != G.order:
        raise InvalidBranchDatum("branch images do not generate the group")
    return e


# preset branch data for E -> E/G = P^1
MONE_PRESETS = {
    "Z3xMu3": ("e", "t*e", "t^2*e"),
    "Z2xMu4": ("e", "t*e", "t*e^2"),
    "Z22xMu2": ("e", "t*e", "s*e", "t*s*e"),
    "Z2xMu2": ("e", "e", "t*e", "t*e"),
    "Sporadic16": ("t*e^2", "t*e", "e"),
}


def branch_from_strings(group, gammas) -> EllipticBranchDatum:
    G = preset(group) if isinstance(group, str) else group
    return EllipticBranchDatum(G, tuple(G.parse(x) for x in gammas))


def preset_branch(group) -> EllipticBranchDatum:
    G = preset(group) if isinstance(group, str) else group
    name = G.preset_name
    if name not in MONE_PRESETS:
        raise InvalidBranchDatum(f"no preset branch datum for group {name!r}")
    return branch_from_strings(G, MONE_PRESETS[name])


# -- moves -----------------------------------------------------------------

def _with_ab(d, ab):
    return replace(d, ab_images=tuple(ab))


def _checked(d):
    try:
        return validate(d)
    except MonodromyError as exc:
        raise InvalidParams(f"move produced an invalid datum: {exc}") from exc


def apply_move(d: MonodromyDatum, move, **params) -> MonodromyDatum:
    """Change of geometric basis.

    ``a``: ``target`` in {"a", "b"}, handle ``i``, branch ``j``, ``sign``:
    a_i <- a_i c_j^sign (or b_i).
    ``b``: ``target``, ``i``, ``sign``: a_i <- a_i b_i^sign or b_i <- b_i a_i^sign.
    ``c``: ``handles`` and/or ``points``: permutations (0-based lists).
    ``d``: ``i`` with 1 <= i < h.
    """
    G = d.group
    ab = list(d.ab_images)
    try:
        if move == "a":
            i, j, sign = params["i"], params["j"], params.get("sign", 1)
            if not (1 <= i <= d.h and 1 <= j <= d.k and sign in (1, -1)):
                raise InvalidParams(f"bad indices for move a: {params}")
            slot = 2 * (i - 1) + (0 if params.get("target", "a") == "a" else 1)
            ab[slot] = G.mul(ab[slot], G.power(d.gamma_images[j - 1], sign))
            return _checked(_with_ab(d, ab))
        if move == "b":
            i, sign = params["i"], params.get("sign", 1)
            if not (1 <= i <= d.h and sign in (1, -1)):
                raise InvalidParams(f"bad indices for move b: {params}")
            ia, ib = 2 * (i - 1), 2 * (i - 1) + 1
            if params.get("target", "a") == "a":
                ab[ia] = G.mul(ab[ia], G.power(ab[ib], sign))
            else:
                ab[ib] = G.mul(ab[ib], G.power(ab[ia], sign))
            return _checked(_with_ab(d, ab))
        if move == "c":
            handles = params.get("handles")
            points = params.get("points")
            out = d
            if handles is not None:
                if sorted(handles) != list(range(d.h)):
                    raise InvalidParams(f"handles must permute 0..{d.h - 1}")
                new = []
                for i in handles:
                    new += [ab[2 * i], ab[2 * i + 1]]
                out = _with_ab(out, new)
            if points is not None:
                if sorted(points) != list(range(d.k)):
                    raise InvalidParams(f"points must permute 0..{d.k - 1}")
                out = replace(out, gamma_images=tuple(d.gamma_images[p] for p in points),
                              gamma_orders=tuple(d.gamma_orders[p] for p in points))
            return _checked(out)
        if move == "d":
            i = params["i"]
            if not 1 <= i < d.h:
                raise InvalidParams(f"move d needs 1 <= i < h, got i={i}")
            ai, bi = ab[2 * i - 2], ab[2 * i - 1]
            aj, bj = ab[2 * i], ab[2 * i + 1]
            ai_inv = G.inv(ai)
            ab[2 * i - 1] = G.mul(G.mul(bi, bj), aj)
            ab[2 * i + 1] = G.mul(bj, ai_inv)
            ab[2 * i] = G.mul(aj, ai_inv)
            return _checked(_with_ab(d, ab))
    except KeyError as exc:
        raise InvalidParams(f"missing parameter {exc} for move {move}") from None
    raise InvalidParams(f"unknown move {move!r}")


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class CaseLabel:
    tag: str
    minimal: bool = False

    @property
    def is_normal(self):
        return self.tag != "NotNormal"

    def __str__(self):
        return self.tag


NOT_NORMAL = CaseLabel("NotNormal")


def _generates_T(G, elements):
    T = G.generated_subgroup(elements)
    return len(T) == G.spec.translation_order


def _is_sporadic(G):
    return G.r == 4 and G.order == 16 and not G.is_abelian()


def classify(d: MonodromyDatum) -> CaseLabel:
    G = d.group
    if not d.ab_images:
        return NOT_NORMAL
    a1 = d.ab_images[0]
    if any(g.k for g in d.ab_images[1:]) or any(g.k for g in d.gamma_images):
        return NOT_NORMAL
    if _is_sporadic(G):
        if a1.t != (0, 0) or a1.k % 2 == 0:
            return NOT_NORMAL
        return _classify_sporadic(d)
    if not G.is_abelian():
        return NOT_NORMAL
    if a1.t != (0, 0) or gcd(a1.k, G.r) != 1:
        return NOT_NORMAL
    return _classify_abelian(d)


def _classify_abelian(d):
    G = d.group
    zero = G.identity
    h, k = d.h, d.k
    r = G.r
    if h not in (1, 2):
        return NOT_NORMAL
    tors = G.spec.translation_invariants().torsion
    v4 = r == 2 and tors == (2, 2)
    cyclic = len(tors) <= 1
    b1 = d.b(1)
    gam = d.gamma_images
    a2 = d.a(2) if h == 2 else zero
    b2 = d.b(2) if h == 2 else zero
    tag = None
    if h == 1 or (a2 == zero and b2 == zero):
        if b1 == zero and k >= 2 and _generates_T(G, gam[:2]):
            tag = "I-1"
        elif k == 0 and h == 2 and _generates_T(G, [b1]):
            tag = "I-2"
        elif v4 and k >= 2 and b1 != zero and gam[0] not in (zero, b1) and len(set(gam)) == 1:
            tag = "I-3"
    elif k == 0:
        if v4 and b1 != zero and a2 not in (zero, b1) and b2 in (zero, b1):
            tag = "II"
        elif v4 and b1 == zero and _generates_T(G, [a2, b2]):
            tag = "II-1"
        elif cyclic and b1 == zero and _generates_T(G, [a2]) and b2 == zero:
            tag = "II-2"
        elif cyclic and _generates_T(G, [b1]) and a2 != zero and b2 == zero:
            tag = "II-3"
    elif v4 and k >= 2 and k % 2 == 0:
        e2 = gam[0]
        if (len(set(gam)) == 1 and e2 != zero and a2 not in (zero, e2)
                and b1 in (zero, a2) and b2 == zero):
            tag = "III"
    if tag is None:
        return NOT_NORMAL
    if h == 2:
        minimal = (k == 0 and tag in ("I-2", "II", "II-1", "II-2", "II-3")) or (tag == "III" and k == 2)
    else:
        minimal = ((k == 2 and tag == "I-1" and r in (2, 3, 4)) or (k == 2 and tag == "I-3")
                   or (k == 3 and tag == "I-1" and r == 2))
    return CaseLabel(tag, minimal)


def _classify_sporadic(d):
    G = d.group
    zero = G.identity
    eps = GElement((0, 0), 1)
    T = [g for g in G.translations() if g != zero]
    fixed = [g for g in T if G.mul(G.mul(eps, g), G.inv(eps)) == g]
    if len(fixed) != 1:
        return NOT_NORMAL
    c = fixed[0]
    N = {g for g in T if g != c}
    h, k = d.h, d.k
    gam = d.gamma_images
    ab = d.ab_images
    b1 = d.b(1)
    same = len(set(gam)) == 1
    tag = None
    minimal_h = None
    if k >= 1 and h in (1, 2):
        rest_trivial = all(g == zero for g in ab[2:])
        if rest_trivial:
            total = zero
            for g in gam[2:]:
                total = G.mul(total, g)
            if b1 == zero and k >= 3 and gam[0] in N and gam[1] in N and gam[0] != gam[1] and total == c:
                tag, minimal_h = f"III-{k}", None
            elif b1 == zero and k % 2 == 0 and same and gam[0] in N:
                tag, minimal_h = f"IV-{k}", (1 if k == 2 else None)
            elif b1 in N and k % 2 == 1 and same and gam[0] == c:
                tag, minimal_h = f"V-{k}", (1 if k == 1 else None)
        if tag is None and h == 2 and d.a(2) == zero:
            b2 = d.b(2)
            if b1 == zero and b2 in N and k % 2 == 0 and same and gam[0] in N and gam[0] != b2:
                tag, minimal_h = f"V*-{k}", (2 if k == 2 else None)
            elif b1 == zero and b2 in N and k % 2 == 0 and same and gam[0] == c:
                tag, minimal_h = f"V**-{k}", (2 if k == 2 else None)
            elif b1 in N and b2 == b1 and k % 2 == 1 and same and gam[0] == c:
                tag, minimal_h = f"V***-{k}", (2 if k == 1 else None)
    elif k == 0 and h == 2:
        a2, b2 = d.a(2), d.b(2)
        if b1 == zero and {a2, b2} == N:
            tag = "VI"
        elif b1 == c and a2 in N and b2 == zero:
            tag = "VI*"
        elif b1 == c and {a2, b2} == N:
            tag = "VI**"
        elif b1 == zero and a2 in N and b2 == zero:
            tag = "VIII"
        minimal_h = 2
    elif k == 0 and h == 3 and d.b(1) == zero and d.b(2) == zero and d.b(3) == zero:
        a2, a3 = d.a(2), d.a(3)
        if a2 == c and a3 in N:
            tag = "VII"
        elif {a2, a3} == N:
            tag = "VII*"
        minimal_h = 3
    if tag is None:
        return NOT_NORMAL
    return CaseLabel(tag, minimal_h == h)


# -- simplification ----------------------------------------------------------

def _drop_points(d, keep, merged=None):
    """Keep branch points ``keep`` (indices); optionally replace one by a new image."""
    gam = list(d.gamma_images)
    if merged is not None:
        idx, g = merged
        gam[idx] = g
    new = tuple(gam[i] for i in keep)
    return replace(d, gamma_images=new, gamma_orders=tuple(d.group.element_order(g) for g in new))


def simplification_candidates(d: MonodromyDatum):
    """Yield ``(step, description, datum)`` in the order they are tried."""
    G = d.group
    k = d.k
    gam = d.gamma_images
    # (iii) an adjacent pair cancelling, last pair first
    for j in range(k - 2, -1, -1):
        if G.mul(gam[j], gam[j + 1]) == G.identity:
            keep = [i for i in range(k) if i not in (j, j + 1)]
            yield "iii", f"remove cancelling pair c{j + 1}, c{j + 2}", _drop_points(d, keep)
    # (ii) merge an adjacent pair into one nontrivial point, right to left
    for j in range(k - 2, -1, -1):
        g = G.mul(gam[j], gam[j + 1])
        if g != G.identity:
            keep = [i for i in range(k) if i != j + 1]
            yield "ii", f"merge c{j + 1}, c{j + 2}", _drop_points(d, keep, (j, g))
    # (i) drop the last handle when it maps trivially
    if d.h >= 2 and d.a(d.h) == G.identity and d.b(d.h) == G.identity:
        yield "i", f"drop handle {d.h}", replace(d, h=d.h - 1, ab_images=d.ab_images[:-2])


def simplify(d: MonodromyDatum, max_steps=100):
    """Reduce ``d`` to a minimal normal form; returns ``(datum, label, steps)``.

    Each step is ``(kind, description, datum_after)``; every intermediate
    datum is valid.
    """
    validate(d)
    steps = []
    label = classify(d)
    while not label.minimal:
        if len(steps) >= max_steps:
            raise NotNormalizable("no minimal form reached within the step limit")
        for kind, text, cand in simplification_candidates(d):
            if is_valid(cand):
                steps.append((kind, text, cand))
                d = cand
                label = classify(d)
                break
        else:
            raise NotNormalizable(f"{d.format()} ({label}) admits no further simplification step")
    return d, label, steps
