import itertools
import random
from fractions import Fraction as F
from math import lcm

import pytest

from autz.catalog import LIST_I, LIST_II
from autz.elliptic import preset
from autz.fpgroup import abelianization, commutator
from autz.invariants import (CoinvariantSpace, GroupMismatch, InconsistentFractions,
                             PseudoEllipticDatum, abelian_structure, aut_z_report,
                             exceptional_pseudo_elliptic_datum, h1_E, h1_orb, h1_S, h1C,
                             pi1_S_presentation, pseudo_elliptic_exception, pseudo_elliptic_h1,
                             trivial_action_subgroup)
from autz.linalg import AbelianInvariants
from autz.monodromy import branch_from_strings, datum_from_strings, genus_C, preset_branch

CATALOG = LIST_I + LIST_II


def test_h1_orb():
    assert h1_orb(1, (5,)) == AbelianInvariants(2)
    # ℤ/2 ⊕ ℤ/2 ⊕ ℤ/3 ⊕ ℤ/3 modulo the diagonal element of order 6
    assert h1_orb(0, (2, 2, 3, 3)) == AbelianInvariants(0, (6,))
    assert h1_orb(0, (3, 3, 3)) == AbelianInvariants(0, (3, 3))


def _h1_orb_order(orders):
    """|⊕ℤ/m_i| divided by the order of the diagonal element (1, ..., 1)."""
    total = 1
    for m in orders:
        total *= m
    return total // lcm(*orders)


@pytest.mark.parametrize("orders", [(2, 2, 2, 2), (2, 3, 6), (3, 3, 3), (2, 4, 4), (4, 4, 2, 2)])
def test_h1_orb_torsion_order_matches_enumeration(orders):
    assert h1_orb(0, orders).torsion_order == _h1_orb_order(orders)


def test_h1C_and_coinvariants_small_case():
    d = datum_from_strings("Z2xMu2", 1, ["e", "1"], ["t", "t"])
    assert h1C(d) == AbelianInvariants(6)
    cs = CoinvariantSpace(d)
    assert cs.h1C.invariants == AbelianInvariants(6)
    # the coinvariants keep a class of order 2, the relation 2(x - y) = 0
    assert cs.invariants == AbelianInvariants(2, (2,))


def _kernel_words(d, rng, n=3):
    f = d.quotient_map()
    ngen = f.source.n_generators
    out = []
    while len(out) < n:
        w = tuple(rng.choice([1, -1]) * rng.randint(1, ngen) for _ in range(rng.randint(1, 8)))
        if f.image(w) == f.target.identity:
            out.append(w)
    return out


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.label)
def test_two_step_and_one_step_agree(entry):
    d = entry.datum()
    a = CoinvariantSpace(d, two_step=True)
    b = CoinvariantSpace(d, two_step=False)
    assert a.invariants == b.invariants
    rng = random.Random(hash(entry.label) & 0xffff)
    words = _kernel_words(d, rng)
    for w in words:
        assert a.is_zero(w) == b.is_zero(w)
    # equal classes stay equal under both constructions
    for w1, w2 in itertools.combinations(words, 2):
        diff = w1 + tuple(-x for x in reversed(w2))
        assert a.is_zero(diff) == b.is_zero(diff)
    assert trivial_action_subgroup(d, space=a).elements == trivial_action_subgroup(d, space=b).elements


def test_trivial_action_examples():
    d = datum_from_strings("Z3xMu3", 2, ["e", "t", "1", "1"])
    assert trivial_action_subgroup(d).order == 9
    d = datum_from_strings("Z2xMu4", 1, ["e", "1"], ["t", "t"])
    K = trivial_action_subgroup(d)
    G = d.group
    assert K.order == 2 and set(K.elements) == {G.identity, G.parse("e^2")}
    d = datum_from_strings("Z22xMu2", 1, ["e", "1"], ["t", "s", "t*s"])
    assert trivial_action_subgroup(d).order == 1


def test_criterion_rejects_translations_for_two_point_case():
    d = datum_from_strings("Z3xMu3", 1, ["e", "1"], ["t", "t^2"])
    res = trivial_action_subgroup(d)
    G = d.group
    assert res.order == 1
    assert {G.format(z) for z in res.rejected} == {"t", "t^2", "e", "e^2", "t*e", "t*e^2",
                                                    "t^2*e", "t^2*e^2"}
    # the commutator of the lift of t with the lift of e is a nonzero class
    cs = CoinvariantSpace(d)
    lift = dict(zip(cs.schreier.coset_elements, cs.schreier.transversal))
    assert not cs.is_zero(commutator(lift[G.parse("t")], lift[G.parse("e")]))


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.label)
def test_catalog_counts_and_torsion(entry):
    d, e = entry.datum(), entry.branch()
    K = trivial_action_subgroup(d)
    assert K.order == entry.expected_count
    h1 = h1_S(d, e)
    assert h1.free_rank == 2 * d.h
    if entry.expected_torsion is not None:
        assert h1.torsion == entry.expected_torsion
    rep = aut_z_report(d, e, trivial=K, h1=h1)
    Z = set(d.group.center())
    assert set(rep.C) <= set(rep.K) <= Z
    assert rep.C_order == entry.expected_autz_order
    assert rep.certainty == entry.expected_certainty


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.label)
def test_report_independent_of_generator_order(entry):
    d, e = entry.datum(), entry.branch()
    n = 2 * d.h + d.k
    base = aut_z_report(d, e)
    rev = aut_z_report(d, e, generator_order=list(range(n, 0, -1)))
    assert (base.K, base.C, base.certainty, base.h1_S) == (rev.K, rev.C, rev.certainty, rev.h1_S)


def test_h1_S_examples():
    d = datum_from_strings("Z2xMu4", 1, ["e", "1"], ["t", "t"])
    assert h1_S(d, preset_branch("Z2xMu4")) == AbelianInvariants(2, (2, 2))
    d = datum_from_strings("Z2xMu2", 1, ["e", "1"], ["t", "t"])
    e = branch_from_strings("Z2xMu2", ["e", "e", "t*e", "t*e"])
    assert h1_S(d, e) == AbelianInvariants(2, (2, 4))
    d = datum_from_strings("Z3xMu3", 2, ["e", "t", "1", "1"])
    assert h1_S(d, preset_branch("Z3xMu3")) == AbelianInvariants(4)


def test_pi1_S_presentation():
    d = datum_from_strings("Z3xMu3", 2, ["e", "t", "1", "1"])
    p = pi1_S_presentation(d, preset_branch("Z3xMu3"))
    assert abelianization(p).invariants == AbelianInvariants(4)
    with pytest.raises(GroupMismatch):
        pi1_S_presentation(d, preset_branch("Z2xMu4"))


@pytest.mark.parametrize("name", ["Z3xMu3", "Z2xMu4", "Z22xMu2", "Z2xMu2", "Sporadic16"])
def test_branch_kernel_is_a_torus(name):
    assert h1_E(preset_branch(name)) == AbelianInvariants(2)


def test_report_rules():
    d = datum_from_strings("Z2xMu4", 1, ["e", "1"], ["t", "t"])
    rep = aut_z_report(d, preset_branch("Z2xMu4"))
    assert rep.exact and rep.C_structure == AbelianInvariants(0, (2,))
    assert any("generated by a local monodromy" in r for r in rep.rules)
    d = datum_from_strings("Z3xMu3", 2, ["e", "t", "1", "1"])
    rep = aut_z_report(d, preset_branch("Z3xMu3"))
    assert rep.exact and rep.C_structure == AbelianInvariants(0, (3,))
    assert any("torsion free" in r for r in rep.rules)
    d = datum_from_strings("Z2xMu2", 2, ["e", "t", "1", "1"])
    rep = aut_z_report(d, preset_branch("Z2xMu2"))
    assert rep.certainty == "UpperBound" and rep.C_order == 2


def test_abelian_structure():
    S = preset("Sporadic16")
    assert abelian_structure(S, S.center()) == AbelianInvariants(0, (2, 2))
    G = preset("Z3xMu3")
    assert abelian_structure(G, G.elements) == AbelianInvariants(0, (3, 3))
    H = preset("Z2xMu4")
    assert abelian_structure(H, H.elements) == AbelianInvariants(0, (2, 4))
    assert abelian_structure(H, [H.identity]) == AbelianInvariants(0)


# -- pseudo-elliptic ------------------------------------------------------------------

@pytest.mark.parametrize("m", [3, 5, 7])
def test_exceptional_pattern_is_torsion_free(m):
    p = exceptional_pseudo_elliptic_datum(m)
    assert p.orders == (2, 2, m, m)
    assert pseudo_elliptic_h1(p) == AbelianInvariants(2)


def test_genus_one_two_points_rejected():
    x = (F(1, 2), F(0))
    with pytest.raises(InconsistentFractions):
        PseudoEllipticDatum(1, (x, x))


def test_pseudo_elliptic_no_branch_points():
    assert pseudo_elliptic_h1(PseudoEllipticDatum(3, ())) == AbelianInvariants(8)


def test_pseudo_elliptic_errors():
    with pytest.raises(InconsistentFractions):
        PseudoEllipticDatum(0, ((F(1, 2), 0), (F(1, 2), 0)), orders=(2, 4))
    with pytest.raises(InconsistentFractions):
        PseudoEllipticDatum(0, ((1, 0), (-1, 0)))


def test_pseudo_elliptic_opposite_half_periods():
    # two opposite points of order 2 and genus 1: γ_1 becomes a half period
    x = (F(1, 2), F(0))
    p = PseudoEllipticDatum(1, (x, (-x[0], -x[1])))
    assert pseudo_elliptic_h1(p) == AbelianInvariants(4)


def test_exception_detector():
    assert pseudo_elliptic_exception(6, 0, (3, 3, 2, 4))
    assert pseudo_elliptic_exception(6, 0, (2, 2, 3, -3), as_orders=True)
    assert pseudo_elliptic_exception(10, 0, (5, 5, 4, 6))
    assert not pseudo_elliptic_exception(6, 1, (3, 3, 2, 4))
    assert not pseudo_elliptic_exception(4, 0, (2, 2, 2, 2))
    assert not pseudo_elliptic_exception(8, 0, (4, 4, 2, 6))
    assert not pseudo_elliptic_exception(6, 0, (3, 3, 2, 2))
    assert not pseudo_elliptic_exception(6, 0, (3, 3, 3, 3))


def test_genus_of_catalog_cover_is_at_least_two():
    assert all(genus_C(e.datum()) >= 2 for e in CATALOG)
