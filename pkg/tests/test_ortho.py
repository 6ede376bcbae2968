import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracle import Plain
from orthosps import errors
from orthosps.core import validate_sps
from orthosps.generators import compose_shuffled, gen_boolean, gen_mo
from orthosps.ortho import (
    OrthoSPS,
    cartan_violation,
    orthogonal_by_scan,
    symmetry_report,
    validate_ortho,
)


def idx(sps, *labels):
    pos = {s: i for i, s in enumerate(sps.states)}
    m = 0
    for x in labels:
        m |= 1 << pos[x]
    return sps.index_of(m)


def brute_force_valid(plain):
    """Independent check of the four laws on label sets."""
    fam, perp, top = plain.family, plain.perp, plain.sigma
    if any(perp[perp[a]] != a for a in fam):
        return "Eq.4"
    if any(a <= b and not perp[b] <= perp[a] for a in fam for b in fam):
        return "Eq.5"
    for a in fam:
        if plain.meet([a, perp[a]]) != frozenset() or plain.join([a, perp[a]]) != top:
            return "Eq.6"
    for a in fam:
        if not plain.ortho_set(a) <= perp[a]:
            return "Eq.7"
    return None


def test_boolean_complement_valid(b2):
    assert b2.partner == (3, 2, 1, 0)


def test_mo2_standard_pairing_valid(mo2):
    assert brute_force_valid(Plain(mo2)) is None


def test_mo2_p1_p2_pairing(mo2):
    # pairing {p1}<->{p2}, {q1}<->{q2} is another orthocomplementation of MO2
    sps = mo2.sps
    p1, q1, p2, q2 = (idx(sps, s) for s in ("p1", "q1", "p2", "q2"))
    partner = {0: sps.top, sps.top: 0, p1: p2, p2: p1, q1: q2, q2: q1}
    osps = validate_ortho(sps, partner)
    assert brute_force_valid(Plain(osps)) is None
    assert osps.orthogonal(0, 2) and not osps.orthogonal(0, 1)


def test_not_involutive(mo2):
    partner = list(mo2.partner)
    partner[1] = 1
    with pytest.raises(errors.NotInvolutive) as ei:
        validate_ortho(mo2.sps, partner)
    assert ei.value.witness["property"] == "{q1}"


def test_not_antitone(b2):
    # identity map is involutive but reverses nothing
    with pytest.raises(errors.NotAntitone) as ei:
        validate_ortho(b2.sps, [0, 1, 2, 3])
    assert ei.value.witness["a"] == "{}"


def test_complement_law(b2):
    # complement after swapping s1 and s2: involutive and antitone, but {s1} -> {s1}
    with pytest.raises(errors.ComplementLawFailed) as ei:
        validate_ortho(b2.sps, [3, 1, 2, 0])
    assert ei.value.witness["property"] == "{s1}"


def test_cartan_violation_on_unvalidated_map(b2):
    # identity "complement": every pair of states is orthogonal via the top property
    bogus = OrthoSPS(b2.sps, (0, 1, 2, 3))
    plain = Plain(bogus)
    expected = next(
        (a, sorted(plain.ortho_set(x) - plain.perp[x])[0])
        for a, x in enumerate(plain.family)
        if not plain.ortho_set(x) <= plain.perp[x]
    )
    a, q = cartan_violation(bogus)
    assert (a, b2.sps.states[q]) == expected


def _involutions(n):
    def rec(rest, cur):
        if not rest:
            yield tuple(cur[i] for i in range(n))
            return
        a = rest[0]
        for b in rest:
            cur[a], cur[b] = b, a
            yield from rec([x for x in rest if x not in (a, b)], cur)
    yield from rec(list(range(n)), {})


def test_orthocom_implied_on_three_states():
    # every intersection-closed family on 3 states, every involutive partner table
    full = 0b111
    seen = 0
    for r in range(0, 7):
        for inner in itertools.combinations(range(1, full), r):
            try:
                sps = validate_sps(["a", "b", "c"], [0, *inner, full])
            except errors.ValidationError:
                continue
            for partner in _involutions(len(sps.sets)):
                try:
                    validate_ortho(sps, partner)
                    seen += 1
                except (errors.NotAntitone, errors.ComplementLawFailed):
                    pass
    assert seen > 0


def test_partner_map_errors(b2):
    with pytest.raises(errors.PartnerMapError):
        validate_ortho(b2.sps, [3, 2, 1])
    with pytest.raises(errors.PartnerMapError):
        validate_ortho(b2.sps, {0: 3, 3: 0})
    with pytest.raises(errors.PartnerMapError):
        validate_ortho(b2.sps, [3, 2, 1, 7])


def test_orthogonal_examples(mo2, b2):
    assert mo2.orthogonal(0, 1)  # p1 ⊥ q1
    assert not mo2.orthogonal(0, 2)  # p1, p2
    assert not b2.orthogonal(0, 0)
    with pytest.raises(errors.IndexOutOfRange):
        mo2.orthogonal(0, 4)


def test_ortho_set_examples(mo2, b2):
    assert mo2.ortho_set(0) == mo2.sps.full
    assert mo2.ortho_set(0b0001) == 0b0010
    assert b2.ortho_set(0b01) == 0b10


@pytest.mark.parametrize("osps", [gen_mo(2), gen_boolean(2), gen_mo(4), gen_boolean(3)])
def test_symmetry_report(osps):
    rep = symmetry_report(osps)
    assert rep.passed
    assert rep["irreflexive"].checked == osps.sps.n_states


POOL = [gen_boolean(1), gen_boolean(2), gen_mo(2), gen_mo(3)]
instances = st.builds(
    lambda idx_, seed: compose_shuffled([POOL[i] for i in idx_], seed),
    st.lists(st.integers(0, 3), min_size=1, max_size=3),
    st.integers(0, 2**64 - 1),
)


@settings(max_examples=30, deadline=None)
@given(instances)
def test_ortho_invariants(osps):
    sps = osps.sps
    plain = Plain(osps)
    n = len(sps)
    for a in range(n):
        b = osps.partner[a]
        assert osps.ortho_set(sps.sets[a]) == sps.sets[b]
        assert sps.sets[a] & sps.sets[b] == 0
    for a, b in itertools.product(range(n), repeat=2):
        if sps.leq(a, b):
            assert sps.leq(osps.partner[b], osps.partner[a])
    for p, q in itertools.product(range(sps.n_states), repeat=2):
        got = osps.orthogonal(p, q)
        assert got == osps.orthogonal(q, p)
        assert got == orthogonal_by_scan(osps, p, q)
        assert got == plain.orthogonal(sps.states[p], sps.states[q])


@settings(max_examples=30, deadline=None)
@given(instances, st.integers(0, 2**64 - 1))
def test_orthocom_never_fails_after_antitone(osps, seed):
    from orthosps.rng import SplitMix64

    rng = SplitMix64(seed)
    n = len(osps.sets)
    order = list(range(n))
    rng.shuffle(order)
    partner = list(range(n))
    for i in range(0, n - 1, 2):
        partner[order[i]], partner[order[i + 1]] = order[i + 1], order[i]
    bogus = OrthoSPS(osps.sps, tuple(partner))
    try:
        validate_ortho(osps.sps, partner)
    except (errors.NotAntitone, errors.ComplementLawFailed):
        return
    assert cartan_violation(bogus) is None
