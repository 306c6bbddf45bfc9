"""Finite groups G = T ⋊ μ_r acting on an elliptic curve by affine maps.

The lattice Λ_T = ℤ[x]/P_r(x) is coordinatized by the basis {1, x}, so a
translation is an integer pair and ε = x acts through the 2×2 matrix M.
T = ℤ² / Λ where Λ is the column span of an integer matrix L.
"""

from dataclasses import dataclass
from typing import NamedTuple

from .fpgroup import FiniteGroup, Presentation, commutator
from .linalg import (AbelianInvariants, abelian_invariants, determinant,
                     hermite_normal_form, smith_diagonal)


class EllipticGroupError(ValueError):
    pass


class UnsupportedR(EllipticGroupError):
    pass


class DegenerateLattice(EllipticGroupError):
    pass


class LatticeNotInvariant(EllipticGroupError):
    pass


class InconsistentIndex(EllipticGroupError):
    pass


# multiplication by x on the basis {1, x}
ACTION_MATRICES = {
    2: ((-1, 0), (0, -1)),
    3: ((0, -1), (1, -1)),
    4: ((0, -1), (1, 0)),
    6: ((0, -1), (1, 1)),
}


def _mat_vec(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def _mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def action_matrix(r):
    try:
        return ACTION_MATRICES[r]
    except KeyError:
        raise UnsupportedR(f"r must be one of 2, 3, 4, 6 (got {r})") from None


def action_powers(r):
    M = action_matrix(r)
    out = [((1, 0), (0, 1))]
    for _ in range(r - 1):
        out.append(_mat_mul(M, out[-1]))
    return out


@dataclass(frozen=True)
class EllipticGroupSpec:
    """``r`` and the columns of ``L`` (a basis of Λ inside Λ_T), stored in Hermite form."""

    r: int
    L: tuple

    def __post_init__(self):
        action_matrix(self.r)
        rows = [list(row) for row in self.L]
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise DegenerateLattice("L must be a 2x2 integer matrix")
        if determinant(rows) == 0:
            raise DegenerateLattice(f"L = {rows} has determinant 0")
        H = hermite_normal_form(rows)
        object.__setattr__(self, "L", H.entries)
        M = action_matrix(self.r)
        for j in range(2):
            col = _mat_vec(M, (self.L[0][j], self.L[1][j]))
            if self.reduce(col) != (0, 0):
                raise LatticeNotInvariant(f"x maps lattice column {j} outside the lattice")

    @classmethod
    def from_columns(cls, r, *columns):
        (a, b), (c, d) = columns
        return cls(r, ((a, c), (b, d)))

    @property
    def M(self):
        return action_matrix(self.r)

    @property
    def translation_order(self):
        return abs(self.L[0][0] * self.L[1][1])

    def reduce(self, v):
        """Canonical residue of ``v`` modulo the lattice (Hermite residue)."""
        (a, _), (b, c) = self.L
        t0, t1 = v
        q = t0 // a
        t0 -= q * a
        t1 -= q * b
        return (t0, t1 % c)

    def translation_invariants(self) -> AbelianInvariants:
        return abelian_invariants(2, [list(r) for r in self.L])

    def is_abelian(self):
        # (M - I) Λ_T ⊆ Λ
        M = self.M
        return all(self.reduce((M[0][j] - (j == 0), M[1][j] - (j == 1))) == (0, 0) for j in range(2))


class GElement(NamedTuple):
    """The affine map z ↦ x^k z + t, with ``t`` a canonical residue."""

    t: tuple
    k: int

    def __str__(self):
        return f"({self.t[0]},{self.t[1]};{self.k})"


class EllipticGroup(FiniteGroup):
    def __init__(self, spec: EllipticGroupSpec, names=None):
        self.spec = spec
        self.r = spec.r
        self._pow = action_powers(spec.r)
        (a, _), (_, c) = spec.L
        self.elements = [GElement((t0, t1), k) for t0 in range(a) for t1 in range(c)
                         for k in range(spec.r)]
        self.identity = GElement((0, 0), 0)
        self.names = dict(names or {})
        self.names.setdefault("e", GElement((0, 0), 1 % spec.r))
        self.names.setdefault("1", self.identity)
        self.preset_name = None

    def __eq__(self, other):
        if not isinstance(other, EllipticGroup):
            return NotImplemented
        return self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"EllipticGroup(r={self.r}, L={self.spec.L})"

    def mul(self, g, h):
        Mk = self._pow[g.k]
        s = _mat_vec(Mk, h.t)
        return GElement(self.spec.reduce((g.t[0] + s[0], g.t[1] + s[1])), (g.k + h.k) % self.r)

    def inv(self, g):
        k = (-g.k) % self.r
        s = _mat_vec(self._pow[k], g.t)
        return GElement(self.spec.reduce((-s[0], -s[1])), k)

    def translation(self, v):
        return GElement(self.spec.reduce(v), 0)

    def epsilon(self):
        return self.names["e"]

    def translations(self):
        return [g for g in self.elements if g.k == 0]

    def is_translation(self, g):
        return g.k == 0

    def parse(self, text):
        """Parse a product like ``"t*s*e^2"`` of named elements; ``"1"`` is the identity."""
        out = self.identity
        text = text.replace(" ", "")
        if not text:
            raise EllipticGroupError("empty element expression")
        for factor in text.split("*"):
            name, _, exp = factor.partition("^")
            if name not in self.names:
                raise EllipticGroupError(f"unknown element name {name!r}")
            n = int(exp) if exp else 1
            out = self.mul(out, self.power(self.names[name], n))
        return out

    def format(self, g):
        """Display ``g`` as a translation word followed by a power of ``e``."""
        if g == self.identity:
            return "1"
        for n, v in self.names.items():
            if n != "1" and v == g:
                return n
        tail = "" if g.k == 0 else ("e" if g.k == 1 else f"e^{g.k}")
        target = GElement(g.t, 0)
        if target == self.identity:
            return tail
        gens = [n for n, v in self.names.items() if v.k == 0 and v != self.identity]
        frontier = {self.identity: ""}
        seen = {self.identity}
        while frontier:
            nxt = {}
            for h, word in frontier.items():
                for n in gens:
                    x = self.mul(h, self.names[n])
                    if x in seen:
                        continue
                    seen.add(x)
                    w = f"{word}*{n}" if word else n
                    if x == target:
                        w = _collapse_powers(w)
                        return f"{w}*{tail}" if tail else w
                    nxt[x] = w
            frontier = nxt
        return str(g)


def _collapse_powers(word):
    parts = word.split("*")
    out = []
    for p in parts:
        if out and out[-1][0] == p:
            out[-1][1] += 1
        else:
            out.append([p, 1])
    return "*".join(p if n == 1 else f"{p}^{n}" for p, n in out)


def make_group(spec: EllipticGroupSpec, names=None) -> EllipticGroup:
    return EllipticGroup(spec, names)


def center(G: FiniteGroup):
    return G.center()


def translations(G: EllipticGroup):
    return G.translations()


def index_m(r, a, b):
    if r == 3:
        m = a * a + b * b - a * b
    elif r == 4:
        m = a * a + b * b
    elif r == 6:
        m = a * a + b * b + a * b
    else:
        raise UnsupportedR(f"index m is only defined for r in 3, 4, 6 (got {r})")
    if m == 0:
        raise InconsistentIndex("(a', b') must be nonzero")
    return m


def from_index_data(r, m1, m2, a=None, b=None) -> EllipticGroupSpec:
    """Lattice Λ = m2·η·Λ_T with η = a + b x for r >= 3; Λ = diag(m1, m2) for r = 2."""
    if r == 2:
        if m2 <= 0 or m1 % m2:
            raise InconsistentIndex(f"need m2 | m1, got m1={m1}, m2={m2}")
        spec = EllipticGroupSpec(2, ((m1, 0), (0, m2)))
    else:
        if m2 <= 0 or m1 != m2 * index_m(r, a, b):
            raise InconsistentIndex(f"m1/m2 must equal {index_m(r, a, b)} for (a', b') = ({a}, {b})")
        eta = (m2 * a, m2 * b)
        x_eta = _mat_vec(action_matrix(r), eta)
        spec = EllipticGroupSpec.from_columns(r, eta, x_eta)
    want = sorted(d for d in (m1, m2) if d != 1)
    got = sorted(d for d in smith_diagonal([list(row) for row in spec.L]) if d != 1)
    if got != want:
        raise InconsistentIndex(f"translation group has invariants {got}, expected {want}")
    return spec


def gcal_ab(r) -> AbelianInvariants:
    """Abelianization of Λ_T ⋊ μ_r: coinvariants of Λ_T plus ℤ/r."""
    M = action_matrix(r)
    rows = [[M[0][j] - (j == 0), M[1][j] - (j == 1), 0] for j in range(2)]
    rows.append([0, 0, r])
    return abelian_invariants(3, rows)


def gcal_presentation(r) -> Presentation:
    """⟨e1, e2, ε | [e1,e2], ε^r, ε e_j ε^-1 (x e_j)^-1⟩."""
    M = action_matrix(r)
    rels = [commutator((1,), (2,)), (3,) * r]
    for j in range(2):
        image = []
        for i, c in enumerate((M[0][j], M[1][j])):
            image += [i + 1] * c if c >= 0 else [-(i + 1)] * (-c)
        inv_image = tuple(-x for x in reversed(image))
        rels.append((3, j + 1, -3) + inv_image)
    return Presentation(3, tuple(rels), ("e1", "e2", "eps"))


def lattice_coinvariants(spec: EllipticGroupSpec) -> AbelianInvariants:
    """Λ / (x - 1)Λ, with x acting on Λ in the basis given by the columns of L."""
    L = spec.L
    det = L[0][0] * L[1][1] - L[0][1] * L[1][0]
    adj = ((L[1][1], -L[0][1]), (-L[1][0], L[0][0]))
    A = _mat_mul(adj, _mat_mul(spec.M, L))
    A = tuple(tuple(v // det for v in row) for row in A)
    rows = [[A[0][j] - (j == 0), A[1][j] - (j == 1)] for j in range(2)]
    return abelian_invariants(2, rows)


# -- the groups occurring in the classification ---------------------------

def _named(r, L_columns, **extra):
    spec = EllipticGroupSpec.from_columns(r, *L_columns)
    G = EllipticGroup(spec)
    for name, v in extra.items():
        G.names[name] = G.translation(v)
    return G


def preset(name) -> EllipticGroup:
    """Named groups: ``Z3xMu3``, ``Z2xMu4``, ``Z22xMu2``, ``Z2xMu2``, ``Sporadic16``."""
    G = _preset(name)
    G.preset_name = "Sporadic16" if name == "sporadic" else name
    return G


def _preset(name):
    if name == "Z3xMu3":
        # Λ = (1 - x)Λ_T
        return _named(3, [(1, -1), (1, 2)], t=(1, 0))
    if name == "Z2xMu4":
        # Λ = (1 + x)Λ_T
        return _named(4, [(1, 1), (-1, 1)], t=(1, 0))
    if name == "Z22xMu2":
        return _named(2, [(2, 0), (0, 2)], t=(1, 0), s=(0, 1))
    if name == "Z2xMu2":
        return _named(2, [(2, 0), (0, 1)], t=(1, 0))
    if name in ("Sporadic16", "sporadic"):
        # E[2] ⋊ μ_4; s = x t and c = t + s is fixed by x
        return _named(4, [(2, 0), (0, 2)], t=(1, 0), s=(0, 1), c=(1, 1))
    raise EllipticGroupError(f"unknown group preset {name!r}")


PRESETS = ("Z3xMu3", "Z2xMu4", "Z22xMu2", "Z2xMu2", "Sporadic16")
