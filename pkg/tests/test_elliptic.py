import itertools
from math import gcd

import pytest

from autz.elliptic import (PRESETS, DegenerateLattice, EllipticGroup, EllipticGroupSpec,
                           InconsistentIndex, LatticeNotInvariant, UnsupportedR, action_powers,
                           center, from_index_data, gcal_ab, gcal_presentation, index_m,
                           lattice_coinvariants, make_group, preset, translations)
from autz.fpgroup import abelianization
from autz.linalg import AbelianInvariants, smith_diagonal


def group_axioms(G):
    els = G.elements
    assert len(set(els)) == len(els)
    for a in els:
        assert G.mul(a, G.identity) == a == G.mul(G.identity, a)
        assert G.mul(a, G.inv(a)) == G.identity
    for a, b, c in itertools.product(els, repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


@pytest.mark.parametrize("name", PRESETS)
def test_preset_axioms(name):
    group_axioms(preset(name))


def test_action_matrices():
    charpoly = {3: (1, 1), 4: (0, 1), 6: (-1, 1)}  # x² + c1 x + c0 as (c1, c0)
    for r in (2, 3, 4, 6):
        pw = action_powers(r)
        M = pw[1]
        assert pw[0] == ((1, 0), (0, 1))
        assert all(p != pw[0] for p in pw[1:])
        Mr = pw[-1]
        assert tuple(tuple(sum(Mr[i][k] * M[k][j] for k in range(2)) for j in range(2))
                     for i in range(2)) == pw[0]
        if r >= 3:
            tr = M[0][0] + M[1][1]
            det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
            assert (-tr, det) == charpoly[r]


def test_make_group_examples():
    G = make_group(EllipticGroupSpec.from_columns(3, (1, -1), (1, 2)))
    assert G.order == 9 and G.is_abelian()
    S = make_group(EllipticGroupSpec(4, ((2, 0), (0, 2))))
    assert S.order == 16 and not S.is_abelian()
    H = make_group(EllipticGroupSpec(2, ((2, 0), (0, 1))))
    assert H.order == 4 and H.is_abelian()


def test_spec_errors():
    with pytest.raises(DegenerateLattice):
        EllipticGroupSpec(2, ((1, 2), (2, 4)))
    with pytest.raises(LatticeNotInvariant):
        EllipticGroupSpec(3, ((2, 0), (0, 1)))
    with pytest.raises(UnsupportedR):
        EllipticGroupSpec(5, ((1, 0), (0, 1)))


def test_abelian_criterion_matches_brute_force():
    for r in (2, 3, 4, 6):
        for a, b, c in itertools.product(range(1, 4), range(0, 3), range(1, 4)):
            try:
                spec = EllipticGroupSpec(r, ((a, 0), (b, c)))
            except LatticeNotInvariant:
                continue
            assert spec.is_abelian() == EllipticGroup(spec).is_abelian()


def test_center_examples():
    G = preset("Z3xMu3")
    assert len(center(G)) == G.order
    S = preset("Sporadic16")
    Z = center(S)
    assert len(Z) == 4
    c = S.parse("c")
    assert set(Z) == {S.identity, c, S.parse("e^2"), S.mul(c, S.parse("e^2"))}
    H = make_group(EllipticGroupSpec(2, ((4, 0), (0, 1))))
    assert len(center(H)) == 2


def test_translations():
    assert len(translations(make_group(EllipticGroupSpec(3, ((1, 0), (0, 1)))))) == 1
    assert len(translations(preset("Z3xMu3"))) == 3
    assert len(translations(preset("Sporadic16"))) == 4


def test_index_m():
    assert index_m(3, 1, -1) == 3
    assert index_m(4, 1, 1) == 2
    assert index_m(6, 1, 0) == 1
    with pytest.raises(UnsupportedR):
        index_m(2, 1, 1)


def test_from_index_data():
    assert from_index_data(3, 3, 1, 1, -1) == preset("Z3xMu3").spec
    assert from_index_data(2, 2, 2) == preset("Z22xMu2").spec
    assert from_index_data(4, 2, 1, 1, 1) == preset("Z2xMu4").spec
    assert [d for d in smith_diagonal([list(r) for r in from_index_data(3, 3, 1, 1, -1).L])] == [1, 3]
    with pytest.raises(InconsistentIndex):
        from_index_data(3, 4, 1, 1, -1)
    with pytest.raises(InconsistentIndex):
        from_index_data(2, 3, 2)


def test_gcal_ab():
    expected = {2: (2, 2, 2), 3: (3, 3), 4: (2, 4), 6: (6,)}
    for r, torsion in expected.items():
        assert gcal_ab(r) == AbelianInvariants(0, torsion)
        assert abelianization(gcal_presentation(r)).invariants == gcal_ab(r)


def test_lattice_coinvariants():
    assert lattice_coinvariants(EllipticGroupSpec(3, ((1, 0), (0, 1)))) == AbelianInvariants(0, (3,))


def _sweep_specs():
    out = []
    for r in (3, 4, 6):
        for a, b in itertools.product(range(-2, 3), repeat=2):
            if gcd(a, b) != 1:
                continue
            for m2 in (1, 2, 3):
                m1 = m2 * index_m(r, a, b)
                if m1 * m2 > 40:
                    continue
                out.append((r, m1, m2, a, b, from_index_data(r, m1, m2, a, b)))
    for m1, m2 in [(1, 1), (2, 1), (3, 1), (4, 1), (4, 2), (6, 2), (6, 3)]:
        out.append((2, m1, m2, None, None, from_index_data(2, m1, m2)))
    return out


def test_center_classification_sweep():
    specs = _sweep_specs()
    nonabelian = 0
    for r, m1, m2, a, b, spec in specs:
        G = make_group(spec)
        Z = center(G)
        ZT = [z for z in Z if G.is_translation(z)]
        if G.is_abelian():
            assert len(Z) == G.order
            continue
        nonabelian += 1
        assert len(Z) <= 4
        if r == 2:
            # Z(G) ∩ T = T[2], a subgroup of (ℤ/2)²
            assert len(ZT) in (1, 2, 4)
            assert all(G.element_order(z) <= 2 for z in ZT)
        elif r == 3:
            want = 3 if (m2 * (a + b)) % 3 == 0 else 1
            assert len(ZT) == want
        elif r == 4:
            want = 2 if m1 % 2 == 0 else 1
            assert len(ZT) == want
        else:
            assert len(ZT) == 1
    assert nonabelian >= 20


def test_format_and_parse_roundtrip():
    for name in PRESETS:
        G = preset(name)
        for g in G.elements:
            assert G.parse(G.format(g)) == g
