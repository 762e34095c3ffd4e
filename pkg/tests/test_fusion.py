import pytest

from fusionkit import catalog
from fusionkit import perm as P
from fusionkit.fusion import (MalformedFusionSystem, brute_force_fusion_systems,
                              centric_subgroups, coprime_automorphism_subgroups,
                              enumerate_saturated_fusion_systems, f_conjugacy_classes,
                              fusion_abelian, fusion_of_group, inner_fusion, is_fully_centralized,
                              is_fully_normalized, is_fusion_system, is_saturated,
                              is_saturated_abelian, isomorphism_classes)
from fusionkit.groups import automorphism_group, sylow
from conftest import sub


@pytest.fixture
def f_s3():
    G = catalog.symmetric(3)
    return fusion_of_group(G, sylow(G, 3), 3)


@pytest.fixture
def f_s4(s4, d8_in_s4):
    return fusion_of_group(s4, d8_in_s4, 2)


def test_s3_automorphisms(f_s3):
    assert len(f_s3.aut(f_s3.top)) == 2


def test_inner_fusion_of_p_group():
    d8 = catalog.dihedral(8)
    F = fusion_of_group(d8, d8, 2)
    assert F == inner_fusion(d8, 2)
    # only conjugations: Aut_F(S) = Inn(D8) of order 4
    assert len(F.aut(F.top)) == 4


def test_s4_normal_v4_automorphisms(f_s4, v4_normal):
    assert len(f_s4.aut(v4_normal)) == 6


def test_abelian_construction_matches_group(f_s3):
    c3 = f_s3.S
    W = automorphism_group(c3)
    assert fusion_abelian(W, c3, 3) == f_s3
    assert fusion_abelian(W.trivial, c3, 3) == inner_fusion(c3, 3)
    v4 = catalog.elementary_abelian(2, 2)
    F = fusion_abelian(sylow(automorphism_group(v4), 3), v4, 2)
    assert len(F.aut(F.top)) == 3
    with pytest.raises(ValueError):
        fusion_abelian(automorphism_group(v4), v4, 2)


def test_fusion_axioms_hold_for_groups(f_s3, f_s4):
    assert is_fusion_system(f_s3)[0]
    assert is_fusion_system(f_s4)[0]


def test_removed_inner_map_is_reported(f_s4):
    key = next(k for k, v in f_s4.homs.items() if k[0] == k[1] and len(v) > 1)
    homs = dict(f_s4.homs)
    homs[key] = frozenset(sorted(homs[key])[1:])
    ok, bad = is_fusion_system(f_s4.with_homs(homs))
    assert not ok
    assert any(v[0].startswith("a:") for v in bad) or any(v[0] == "identity" for v in bad)


def test_missing_conjugation_is_condition_a():
    d8 = catalog.dihedral(8)
    F = inner_fusion(d8, 2)
    homs = dict(F.homs)
    homs[(F.top, F.top)] = frozenset({F.subs[F.top].elements})
    ok, bad = is_fusion_system(F.with_homs(homs))
    assert not ok and ("a: missing Hom_S", F.top, F.top) in bad


def test_non_injective_map_is_rejected(f_s3):
    homs = dict(f_s3.homs)
    i = f_s3.top
    S = f_s3.subs[i]
    homs[(i, i)] = homs[(i, i)] | {tuple(S.identity for _ in S.elements)}
    ok, bad = is_fusion_system(f_s3.with_homs(homs))
    assert not ok and any(v[0] == "a: not in Inj" for v in bad)
    with pytest.raises(MalformedFusionSystem):
        is_saturated(f_s3.with_homs(homs))


def test_fully_normalized_transpositions(f_s4, s4):
    t13, t24 = sub(s4, "(1 3)"), sub(s4, "(2 4)")
    cls = next(c for c in f_conjugacy_classes(f_s4) if f_s4.index_of(t13) in c)
    assert f_s4.index_of(t24) in cls
    assert is_fully_normalized(f_s4, t13) and is_fully_normalized(f_s4, t24)
    assert is_fully_centralized(f_s4, t13)


def test_conjugacy_classes_partition(f_s4):
    classes = f_conjugacy_classes(f_s4)
    flat = sorted(i for c in classes for i in c)
    assert flat == list(range(len(f_s4.subs)))


def test_saturation_examples(f_s4, s4, v4_normal, f_s3):
    assert is_saturated(f_s4).saturated
    rep = is_saturated(fusion_of_group(s4, v4_normal, 2))
    assert not rep.saturated
    (i, why), = rep.axiom_I_failures
    assert (why["aut_S"], why["aut_F"]) == (1, 6)
    d8 = catalog.dihedral(8)
    assert is_saturated(inner_fusion(d8, 2)).saturated
    assert is_saturated_abelian(f_s3)
    assert is_saturated_abelian(inner_fusion(f_s3.S, 3))


def test_abelian_saturation_rejects_p_automorphisms():
    # Z/2 x Z/2 inside D8: the swap is an order-2 automorphism of V4
    d8 = catalog.dihedral(8)
    v4 = next(H for H in d8.subgroups() if H.order == 4 and not any(P.order(x) == 4 for x in H))
    F = fusion_of_group(d8, v4, 2)
    assert not is_saturated_abelian(F)
    assert not is_saturated(F).saturated


def test_centric_subgroups(f_s4, s4):
    cs = centric_subgroups(f_s4)
    assert len(cs) == 4
    expected = [sub(s4, t) for t in ("(1 2 3 4)", "(1 2)(3 4); (1 3)(2 4)",
                                     "(1 3); (2 4)", "(1 2 3 4); (1 3)")]
    assert sorted(cs) == sorted(expected)
    assert sub(s4, "(1 3)(2 4)") not in cs


def test_abelian_centrics_only_top(f_s3):
    v4 = catalog.elementary_abelian(2, 2)
    F = fusion_abelian(sylow(automorphism_group(v4), 3), v4, 2)
    assert centric_subgroups(F) == [F.S]
    assert centric_subgroups(f_s3) == [f_s3.S]


def test_inner_fusion_centrics_are_self_centralizing():
    from fusionkit.groups import centralizer
    d8 = catalog.dihedral(8)
    F = inner_fusion(d8, 2)
    expect = [H for H in d8.subgroups() if centralizer(d8, H).element_set <= H.element_set]
    assert centric_subgroups(F) == expect


@pytest.mark.parametrize("S,p,count", [
    (catalog.cyclic(2), 2, 1),
    (catalog.cyclic(3), 3, 2),
    (catalog.cyclic(4), 2, 1),
    (catalog.elementary_abelian(2, 2), 2, 2),
])
def test_abelian_classification(S, p, count):
    # Aut(Z/4) = Z/2 and Aut(V4) = GL(2,2) has a single subgroup of order 3
    systems = enumerate_saturated_fusion_systems(S, p)
    assert len(systems) == count == len(coprime_automorphism_subgroups(S, p))


def test_brute_force_counts():
    # Over V4 a fusion system is Aut_F(S) <= GL(2,2) together with an equivalence relation
    # on the three order-2 subgroups coarser than the Aut_F(S)-orbits: 5 + 3*2 + 1 + 1 = 13.
    v4 = catalog.elementary_abelian(2, 2)
    everything = brute_force_fusion_systems(v4, 2)
    assert len(everything) == 13
    assert all(is_fusion_system(F)[0] for F in everything)
    assert sum(is_saturated(F).saturated for F in everything) == 2
    assert len(brute_force_fusion_systems(catalog.cyclic(4), 2)) == 2


def test_isomorphism_classes():
    v4 = catalog.elementary_abelian(2, 2)
    assert len(isomorphism_classes(enumerate_saturated_fusion_systems(v4, 2))) == 2
    assert isomorphism_classes([]) == []


def test_rejects_non_p_subgroup(s3):
    with pytest.raises(ValueError):
        fusion_of_group(s3, s3, 3)
