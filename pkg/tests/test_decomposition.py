import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracle import Plain
from orthosps import errors
from orthosps.classical import classify
from orthosps.decomposition import (
    MorphismPair,
    component,
    components,
    decomposition_morphism,
    direct_union,
    lemma_suite,
    verify_morphism,
)
from orthosps.generators import compose_shuffled, gen_boolean, gen_mo


def test_component_whole_system(mo2):
    c = component(mo2, mo2.sps.top)
    assert c.osps == mo2
    assert c.prop_embedding == tuple(range(6))
    assert c.state_embedding == (0, 1, 2, 3)


def test_component_boolean_block(b2):
    c = component(b2, 1)
    assert c.osps.states == ("s1",)
    assert c.osps.sets == (0, 1)


def test_component_rejects_non_classical_state(mo2):
    with pytest.raises(errors.NotAClassicalState):
        component(mo2, 1)


def test_component_of_double_mo2(mo2):
    du = direct_union([mo2, mo2]).osps
    c = component(du, du.sps.index_of(0b1111))
    assert len(c.osps.sets) == 6
    assert c.osps.states == ("0:p1", "0:q1", "0:p2", "0:q2")
    assert c.osps.sets == mo2.sets
    assert c.osps.partner == mo2.partner


def test_components_counts(mo2):
    assert len(components(mo2)) == 1
    comps = components(gen_boolean(3))
    assert [(c.osps.sps.n_states, len(c.osps.sets)) for c in comps] == [(1, 2)] * 3
    comps = components(direct_union([mo2, gen_mo(3)]).osps)
    assert sorted(len(c.osps.sets) for c in comps) == [6, 8]


def test_direct_union_examples(mo2):
    x = gen_boolean(2)
    single = direct_union([x]).osps
    assert single.states == ("0:s1", "0:s2")
    assert single.sets == x.sets and single.partner == x.partner

    du = direct_union([mo2, mo2])
    assert du.osps.sps.n_states == 8 and len(du.osps.sets) == 36
    assert len(classify(du.osps).classical) == 4

    du = direct_union([gen_boolean(1), mo2])
    assert du.osps.sps.n_states == 5 and len(du.osps.sets) == 12


def test_direct_union_errors(mo2):
    with pytest.raises(errors.EmptyPartsList):
        direct_union([])
    with pytest.raises(errors.ProductTooLarge):
        direct_union([mo2, mo2], cap=35)


def test_direct_union_cap_env(mo2, monkeypatch):
    monkeypatch.setenv("ORTHOSPS_PRODUCT_CAP", "10")
    with pytest.raises(errors.ProductTooLarge):
        direct_union([mo2, mo2])


def test_direct_union_componentwise(mo2):
    parts = [mo2, gen_boolean(2)]
    du = direct_union(parts)
    sps = du.osps.sps
    for a in range(len(sps.sets)):
        ta = du.prop_tuple[a]
        assert du.prop_tuple[du.osps.partner[a]] == tuple(p.partner[x] for p, x in zip(parts, ta))
        for b in range(len(sps.sets)):
            tb = du.prop_tuple[b]
            assert du.prop_tuple[sps.meet2(a, b)] == tuple(p.sps.meet2(x, y) for p, x, y in zip(parts, ta, tb))
            assert du.prop_tuple[sps.join2(a, b)] == tuple(p.sps.join2(x, y) for p, x, y in zip(parts, ta, tb))
            assert sps.leq(a, b) == all(p.sps.leq(x, y) for p, x, y in zip(parts, ta, tb))


def test_decomposition_morphism_mo2(mo2):
    du, pair, comps = decomposition_morphism(mo2)
    assert len(comps) == 1
    assert pair.m == (0, 1, 2, 3)
    assert pair.n == tuple(range(6))
    assert verify_morphism(pair, mo2, du.osps).passed


def test_decomposition_morphism_boolean(b2):
    du, pair, comps = decomposition_morphism(b2)
    assert len(comps) == 2
    a = du.index_of_tuple((1, 0))
    assert b2.sps.sets[pair.n[a]] == 0b01


def test_identity_morphism(mo2):
    pair = MorphismPair(tuple(range(4)), tuple(range(6)))
    assert verify_morphism(pair, mo2, mo2).passed


def test_swapped_m_fails(mo2):
    x = compose_shuffled([mo2, mo2], 42)
    du, pair, _ = decomposition_morphism(x)
    m = list(pair.m)
    # swap two states from different blocks
    data = classify(x)
    p = 0
    q = next(s for s in range(8) if data.omega_of[s] != data.omega_of[p])
    m[p], m[q] = m[q], m[p]
    rep = verify_morphism(MorphismPair(tuple(m), pair.n), x, du.osps)
    assert rep["m_bijective"].passed and rep["n_bijective"].passed
    assert not rep["membership"].passed
    w = rep["membership"].witnesses[0]
    assert w["state"] in (x.states[p], x.states[q])
    assert w["in_target"] != w["in_source"]


def test_non_bijective_maps_reported(mo2):
    rep = verify_morphism(MorphismPair((0, 0, 1, 2), tuple(range(6))), mo2, mo2)
    assert not rep["m_bijective"].passed
    assert rep["membership"].checked == 0


@pytest.mark.parametrize("osps", [
    gen_mo(2),
    gen_boolean(3),
    direct_union([gen_mo(2), gen_mo(3)]).osps,
])
def test_lemma_suite_examples(osps):
    rep = lemma_suite(osps)
    assert rep.passed, rep.lines()
    names = {c.name for c in rep.checks}
    assert {"class01", "class02", "class03", "class03b", "class04", "class04b",
            "class05", "class06", "class06_disjoint", "corollary_partition", "class08"} <= names


def test_lemma_suite_detects_broken_classical_pairing(b3):
    # hand an inconsistent system to the suite: classical data from b3, but a wrong partner
    from orthosps.ortho import OrthoSPS

    bad = OrthoSPS(b3.sps, tuple(range(len(b3.sets))))
    bad._memo["classical"] = classify(b3)
    rep = lemma_suite(bad)
    assert not rep.passed


POOL = [gen_boolean(1), gen_boolean(2), gen_mo(2), gen_mo(3)]
part_lists = st.lists(st.sampled_from(POOL), min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(part_lists, st.integers(0, 2**64 - 1))
def test_round_trip(parts, seed):
    x = compose_shuffled(parts, seed)
    du, pair, comps = decomposition_morphism(x)
    rep = verify_morphism(pair, x, du.osps)
    assert rep.passed, rep.lines()
    # component orthogonality is the ambient relation restricted to the block
    for c in comps:
        emb = c.state_embedding
        for i, j in itertools.product(range(len(emb)), repeat=2):
            assert c.osps.orthogonal(i, j) == x.orthogonal(emb[i], emb[j])


@settings(max_examples=25, deadline=None)
@given(part_lists)
def test_counting_identities(parts):
    du = direct_union(parts).osps
    assert len(classify(du).omega) == sum(len(classify(p).omega) for p in parts)
    size = 1
    for p in parts:
        size *= len(p.sets)
    assert len(du.sets) == size


@settings(max_examples=15, deadline=None)
@given(st.lists(st.sampled_from([gen_mo(2), gen_mo(3), gen_mo(4)]), min_size=1, max_size=3))
def test_compose_decompose_consistency(parts):
    du = direct_union(parts)
    comps = components(du.osps)
    assert len(comps) == len(parts)
    for c in comps:
        origins = {du.state_origin[s] for s in c.state_embedding}
        (i,) = {o[0] for o in origins}
        part = parts[i]
        # property bijection part -> component via tagged state sets
        by_mask = {}
        for a, s in enumerate(part.sps.sets):
            tagged = {f"{i}:{part.sps.states[k]}" for k in range(part.sps.n_states) if s >> k & 1}
            by_mask[frozenset(tagged)] = a
        plain = Plain(c.osps)
        image = [by_mask[x] for x in plain.family]
        assert sorted(image) == list(range(len(part.sets)))
        for b, x in enumerate(plain.family):
            assert image[c.osps.partner[b]] == part.partner[image[b]]
