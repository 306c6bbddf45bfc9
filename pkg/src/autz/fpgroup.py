"""Finitely presented groups mapped onto finite groups.

Words are tuples of nonzero ints: ``k`` is generator ``k`` (1-based) and
``-k`` its inverse. Subgroups of finite index are handled through a Schreier
transversal over right cosets ``D q``, and subgroup presentations come from
Reidemeister-Schreier rewriting.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

from .linalg import AbelianInvariants, QuotientMap

Word = tuple


class FpGroupError(Exception):
    pass


class RelatorViolation(FpGroupError):
    def __init__(self, index, relator, value):
        self.index = index
        self.relator = relator
        self.value = value
        super().__init__(f"relator {index} {relator} maps to {value}, not the identity")


class NotSurjective(FpGroupError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"images generate a subgroup of index {index}")


class NotInSubgroup(FpGroupError):
    pass


class NotASubgroup(FpGroupError):
    pass


# -- words ---------------------------------------------------------------

def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w):
    return tuple(-x for x in reversed(w))


def commutator(a, b):
    """``[a, b] = a b a^-1 b^-1`` for words ``a`` and ``b``."""
    return tuple(a) + tuple(b) + inverse(a) + inverse(b)


def power(w, n):
    if n < 0:
        return inverse(w) * (-n)
    return tuple(w) * n


def exponent_vector(w, n):
    v = [0] * n
    for x in w:
        if x > 0:
            v[x - 1] += 1
        else:
            v[-x - 1] -= 1
    return v


# -- presentations -------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        rels = tuple(tuple(int(x) for x in r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            for x in r:
                if x == 0 or abs(x) > self.n_generators:
                    raise ValueError(f"letter {x} out of range in relator {r}")
        labels = tuple(self.labels) or tuple(f"x{i + 1}" for i in range(self.n_generators))
        if len(labels) != self.n_generators:
            raise ValueError("one label per generator required")
        object.__setattr__(self, "labels", labels)

    def format_word(self, w):
        if not w:
            return "1"
        return "*".join(self.labels[x - 1] if x > 0 else self.labels[-x - 1] + "^-1" for x in w)


def orbifold_presentation(h, local_orders) -> Presentation:
    """Orbifold group of genus ``h`` with cone points of the given orders.

    Generators ``a1, b1, ..., ah, bh, c1, ..., ck``; relators are
    ``[a1,b1]...[ah,bh] c1...ck`` followed by ``cj^mj``.
    """
    if h < 0:
        raise ValueError("genus must be nonnegative")
    orders = [int(m) for m in local_orders]
    if any(m < 2 for m in orders):
        raise ValueError(f"local orders must be >= 2, got {orders}")
    labels = []
    long = []
    for i in range(h):
        a, b = 2 * i + 1, 2 * i + 2
        labels += [f"a{i + 1}", f"b{i + 1}"]
        long += commutator((a,), (b,))
    k = len(orders)
    for j in range(k):
        labels.append(f"c{j + 1}")
        long.append(2 * h + j + 1)
    rels = []
    if long:
        rels.append(tuple(long))
    for j, m in enumerate(orders):
        rels.append((2 * h + j + 1,) * m)
    return Presentation(2 * h + k, tuple(rels), tuple(labels))


def direct_product(p1: Presentation, p2: Presentation) -> Presentation:
    n1 = p1.n_generators
    shifted = tuple(tuple(x + n1 if x > 0 else x - n1 for x in r) for r in p2.relators)
    cross = tuple(commutator((i,), (n1 + j,))
                  for i in range(1, n1 + 1) for j in range(1, p2.n_generators + 1))
    labels = tuple(f"{l}_1" for l in p1.labels) + tuple(f"{l}_2" for l in p2.labels)
    return Presentation(n1 + p2.n_generators, p1.relators + shifted + cross, labels)


@dataclass(frozen=True)
class Abelianization:
    presentation: Presentation
    quotient: Any  # QuotientMap

    @property
    def invariants(self) -> AbelianInvariants:
        return self.quotient.invariants

    def coordinates(self, w):
        return self.quotient(exponent_vector(w, self.presentation.n_generators))

    def generator_coordinates(self):
        return [self.coordinates((i,)) for i in range(1, self.presentation.n_generators + 1)]


def abelianization(p: Presentation) -> Abelianization:
    rows = [exponent_vector(r, p.n_generators) for r in p.relators]
    return Abelianization(p, QuotientMap(p.n_generators, rows))


# -- finite groups ---------------------------------------------------------

class FiniteGroup:
    """Interface consumed by the rewriting code.

    Subclasses provide ``elements`` (deterministic order), ``identity``,
    ``mul`` and ``inv``; elements must be hashable.
    """

    elements: list
    identity: Any

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    @property
    def order(self):
        return len(self.elements)

    def index_of(self, g):
        try:
            lookup = self._index
        except AttributeError:
            lookup = self._index = {e: i for i, e in enumerate(self.elements)}
        return lookup[g]

    def power(self, g, n):
        if n < 0:
            g, n = self.inv(g), -n
        out = self.identity
        for _ in range(n):
            out = self.mul(out, g)
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def generated_subgroup(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def center(self):
        els = self.elements
        return [z for z in els if all(self.mul(z, g) == self.mul(g, z) for g in els)]

    def is_abelian(self):
        els = self.elements
        return all(self.mul(a, b) == self.mul(b, a) for a in els for b in els)


class DirectProductGroup(FiniteGroup):
    def __init__(self, g1: FiniteGroup, g2: FiniteGroup):
        self.factors = (g1, g2)
        self.elements = [(a, b) for a in g1.elements for b in g2.elements]
        self.identity = (g1.identity, g2.identity)

    def mul(self, x, y):
        g1, g2 = self.factors
        return (g1.mul(x[0], y[0]), g2.mul(x[1], y[1]))

    def inv(self, x):
        g1, g2 = self.factors
        return (g1.inv(x[0]), g2.inv(x[1]))

    def diagonal(self):
        return frozenset((a, a) for a in self.factors[0].elements)


class CyclicGroup(FiniteGroup):
    def __init__(self, n):
        self.n = n
        self.elements = list(range(n))
        self.identity = 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n


# -- homomorphisms ---------------------------------------------------------

@dataclass(frozen=True)
class FiniteQuotientMap:
    source: Presentation
    target: Any  # FiniteGroup
    images: tuple

    def image(self, w):
        G = self.target
        out = G.identity
        for x in w:
            g = self.images[x - 1] if x > 0 else G.inv(self.images[-x - 1])
            out = G.mul(out, g)
        return out


def check_homomorphism(p: Presentation, target, images, require_surjective=True) -> FiniteQuotientMap:
    images = tuple(images)
    if len(images) != p.n_generators:
        raise ValueError(f"{len(images)} images for {p.n_generators} generators")
    f = FiniteQuotientMap(p, target, images)
    for i, r in enumerate(p.relators):
        v = f.image(r)
        if v != target.identity:
            raise RelatorViolation(i, p.format_word(r), v)
    if require_surjective:
        H = target.generated_subgroup(images)
        if len(H) != target.order:
            raise NotSurjective(target.order // len(H))
    return f


# -- Schreier transversal and rewriting --------------------------------------

@dataclass
class SchreierData:
    qmap: FiniteQuotientMap
    subgroup: frozenset
    coset_elements: list          # one target element per coset (its representative's image)
    transversal: list             # representative word per coset, identity coset first
    action: list                  # action[c][x-1] = coset of (coset c) * x
    gen_index: dict               # (c, x) -> Schreier generator index, absent if trivial
    schreier_generators: list     # (c, x) pairs in index order
    relators: list = field(default_factory=list)

    @property
    def index(self):
        return len(self.transversal)

    @property
    def n_generators(self):
        return len(self.schreier_generators)

    def generator_word(self, i):
        """Schreier generator ``i`` as a word in the source generators."""
        c, x = self.schreier_generators[i]
        return free_reduce(self.transversal[c] + (x,) + inverse(self.transversal[self.action[c][x - 1]]))

    def _scan(self, w, start):
        c = start
        out = []
        act = self.action
        inv_act = self._inverse_action
        gi = self.gen_index
        for l in w:
            if l > 0:
                s = gi.get((c, l))
                if s is not None:
                    out.append(s + 1)
                c = act[c][l - 1]
            else:
                c = inv_act[c][-l - 1]
                s = gi.get((c, -l))
                if s is not None:
                    out.append(-(s + 1))
        return tuple(out), c

    def rewrite(self, w, start=0):
        """Rewrite ``w`` read from coset ``start``; it must return to that coset."""
        out, end = self._scan(w, start)
        if end != start:
            raise NotInSubgroup(f"word does not close up at coset {start}")
        return out

    def rewrite_vector(self, w, start=0):
        v = [0] * self.n_generators
        for s in self.rewrite(w, start):
            if s > 0:
                v[s - 1] += 1
            else:
                v[-s - 1] -= 1
        return v

    def expand(self, w):
        out = []
        for s in w:
            g = self.generator_word(abs(s) - 1)
            out.extend(g if s > 0 else inverse(g))
        return free_reduce(out)

    def subgroup_presentation(self) -> Presentation:
        rels = tuple(free_reduce(r) for r in self.relators)
        labels = tuple(f"s{i + 1}" for i in range(self.n_generators))
        return Presentation(self.n_generators, tuple(r for r in rels if r), labels)

    def relation_rows(self):
        n = self.n_generators
        return [exponent_vector(r, n) for r in self.relators]


def _coset_key(G, D, g, index_of):
    return min(index_of(G.mul(d, g)) for d in D)


def schreier_transversal(f: FiniteQuotientMap, D, generator_order: Sequence[int] = None,
                         with_relators=True) -> SchreierData:
    """BFS over right cosets ``D q``; also the complete rewriting data.

    Generators are tried in ``generator_order`` (1-based, default natural),
    each first as itself then as its inverse, so the transversal is
    prefix-closed with the empty word on the identity coset.
    """
    G = f.target
    D = frozenset(D) if D is not None else frozenset([G.identity])
    if G.identity not in D:
        raise NotASubgroup("subgroup must contain the identity")
    for a in D:
        if G.inv(a) not in D or any(G.mul(a, b) not in D for b in D):
            raise NotASubgroup("subset is not closed under the group law")
    n = f.source.n_generators
    order = list(generator_order) if generator_order is not None else list(range(1, n + 1))
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"generator_order must permute 1..{n}")
    index_of = G.index_of
    if len(D) == 1:
        def key(g):
            return index_of(g)
    else:
        Dl = sorted(D, key=index_of)

        def key(g):
            return _coset_key(G, Dl, g, index_of)
    ims = f.images
    inv_ims = tuple(G.inv(g) for g in ims)
    coset_of = {key(G.identity): 0}
    elements = [G.identity]
    words = [()]
    edges = {}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in order:
            for sign in (1, -1):
                g = G.mul(elements[c], ims[x - 1] if sign > 0 else inv_ims[x - 1])
                k = key(g)
                if k not in coset_of:
                    coset_of[k] = len(elements)
                    elements.append(g)
                    words.append(words[c] + (sign * x,))
                    edges[coset_of[k]] = (c, sign * x)
                    queue.append(coset_of[k])
    N = len(elements)
    if N * len(D) != G.order:
        raise NotASubgroup("cosets do not partition the group; images may not generate it")
    action = [[coset_of[key(G.mul(elements[c], ims[x]))] for x in range(n)] for c in range(N)]
    inverse_action = [[0] * n for _ in range(N)]
    for c in range(N):
        for x in range(n):
            inverse_action[action[c][x]][x] = c
    # a pair (c, x) is trivial when the transversal already contains the edge
    tree = set()
    for c, (parent, l) in edges.items():
        tree.add((parent, l) if l > 0 else (c, -l))
    gens = []
    gen_index = {}
    for c in range(N):
        for x in range(1, n + 1):
            if (c, x) not in tree:
                gen_index[(c, x)] = len(gens)
                gens.append((c, x))
    sd = SchreierData(f, D, elements, words, action, gen_index, gens)
    sd._inverse_action = inverse_action
    if with_relators:
        for r in f.source.relators:
            for c in range(N):
                sd.relators.append(sd.rewrite(r, c))
    return sd


def rewrite_subgroup(f: FiniteQuotientMap, D=None, generator_order=None) -> SchreierData:
    return schreier_transversal(f, D, generator_order, with_relators=True)


def rewrite_word(sd: SchreierData, w):
    """Rewrite a word lying in the subgroup as a word in Schreier generators."""
    if sd.coset_elements and sd.qmap.image(w) not in sd.subgroup:
        raise NotInSubgroup("word maps outside the subgroup")
    return sd.rewrite(w, 0)


def subgroup_abelianization(sd: SchreierData) -> QuotientMap:
    return QuotientMap(sd.n_generators, sd.relation_rows())
