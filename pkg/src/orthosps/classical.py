"""Classical properties, classical states and the classical system."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import errors
from .core import atoms_of, is_atomistic_on, members, validate_sps
from .ortho import OrthoSPS, validate_ortho
from .report import Report
from .rng import SplitMix64

#: Below this many classical properties every subset is checked for closure.
EXHAUSTIVE_SUBSET_LIMIT = 12
RANDOM_SUBSETS = 1000
#: Below this many classical states every subset of Ω is rebuilt from the witness formula.
EXHAUSTIVE_OMEGA_LIMIT = 16


@dataclass(frozen=True)
class ClassicalData:
    """Classical structure of an :class:`OrthoSPS`.

    ``omega`` lists the classical states as ambient property indices in
    canonical order; ``omega_of[p]`` is the classical state of state ``p``;
    ``kappa_c[a]`` is a bitmask over positions in ``omega``.
    """

    classical: tuple[int, ...]
    omega_of: tuple[int, ...]
    omega: tuple[int, ...]
    kappa_c: dict[int, int]

    def omega_position(self, prop: int) -> int:
        return self.omega.index(prop)


def is_classical(osps: OrthoSPS, a: int) -> bool:
    sps = osps.sps
    return sps.kappa(a) | sps.sets[osps.partner[a]] == sps.full


def classical_properties(osps: OrthoSPS) -> tuple[int, ...]:
    return classify(osps).classical


def classical_state(osps: OrthoSPS, p: int) -> int:
    osps.sps.check_state(p)
    return classify(osps).omega_of[p]


def classify(osps: OrthoSPS) -> ClassicalData:
    cached = osps._memo.get("classical")
    if cached is not None:
        return cached
    sps = osps.sps
    full = sps.full
    sets = sps.sets
    classical = tuple(
        a for a in range(len(sets)) if sets[a] | sets[osps.partner[a]] == full
    )
    omega_of = []
    for p in range(sps.n_states):
        m = full
        for a in classical:
            if sets[a] >> p & 1:
                m &= sets[a]
        omega_of.append(sps.index_of(m))
    omega = tuple(sorted(set(omega_of)))
    pos = {w: i for i, w in enumerate(omega)}
    kappa_c = {}
    for a in classical:
        m = 0
        for p in members(sets[a]):
            m |= 1 << pos[omega_of[p]]
        kappa_c[a] = m
    data = ClassicalData(classical, tuple(omega_of), omega, kappa_c)
    osps._memo["classical"] = data
    return data


def kappa_c(osps: OrthoSPS, a: int) -> int:
    """Classical Cartan map; only defined on classical properties."""
    data = classify(osps)
    if a not in data.kappa_c:
        raise errors.NotClassicalProperty(
            f"{osps.sps.label(a)} is not classical", {"property": osps.sps.label(a)}
        )
    return data.kappa_c[a]


@dataclass(frozen=True)
class ClassicalSPS:
    """The classical system over Ω.

    Roster labels are ``w0, w1, ...``; ``omega[i]`` is the ambient property
    behind ``wi`` and ``source[j]`` the ambient classical property behind
    family member ``j``.
    """

    osps: OrthoSPS
    omega: tuple[int, ...]
    source: tuple[int, ...]


def classical_sps(osps: OrthoSPS) -> ClassicalSPS:
    data = classify(osps)
    labels = [f"w{i}" for i in range(len(data.omega))]
    raw = [data.kappa_c[a] for a in data.classical]
    try:
        sps = validate_sps(labels, raw)
        where = {m: sps.index_of(m) for m in raw}
        partner = {where[data.kappa_c[a]]: where[data.kappa_c[osps.partner[a]]]
                   for a in data.classical}
        cl = validate_ortho(sps, partner)
    except (errors.ValidationError, KeyError) as exc:
        raise errors.InternalTheoremViolation(
            f"classical system failed validation: {exc}"
        ) from exc
    source = [0] * len(sps.sets)
    for a in data.classical:
        source[where[data.kappa_c[a]]] = a
    return ClassicalSPS(cl, data.omega, tuple(source))


def _subset_families(items, rng: SplitMix64, limit=EXHAUSTIVE_SUBSET_LIMIT,
                     n_random=RANDOM_SUBSETS):
    """All subsets when small, else all pairs and triples plus seeded random subsets."""
    items = list(items)
    if len(items) <= limit:
        for r in range(len(items) + 1):
            yield from itertools.combinations(items, r)
        return
    yield from itertools.combinations(items, 2)
    yield from itertools.combinations(items, 3)
    for _ in range(n_random):
        chosen = [x for x in items if rng.below(2)]
        yield tuple(chosen)


def verify_classical_theorems(osps: OrthoSPS, seed: int = 0) -> Report:
    """Check the structure of C, Ω and κ_c claim by claim."""
    sps = osps.sps
    data = classify(osps)
    C = data.classical
    Cset = set(C)
    lab = sps.label
    rep = Report("classical", info={"classical_properties": len(C), "classical_states": len(data.omega)})

    closed = rep.check("closed_meet_join")
    rng = SplitMix64(seed)
    for fam in _subset_families(C, rng):
        m = sps.meet(fam)
        j = sps.join(fam)
        closed.record(m in Cset and j in Cset,
                      lambda: {"family": [lab(a) for a in fam], "meet": lab(m), "join": lab(j)})
    closed_perp = rep.check("closed_ortho")
    for a in C:
        closed_perp.record(osps.partner[a] in Cset, lambda: {"property": lab(a)})

    spsv = rep.check("classical_sps_valid")
    try:
        classical_sps(osps)
        spsv.record(True)
    except errors.InternalTheoremViolation as exc:
        spsv.record(False, lambda: exc.to_dict())

    atom_chk = rep.check("omega_atoms")
    c_atoms = set(atoms_of(sps, C))
    for w in data.omega:
        atom_chk.record(w in c_atoms, lambda: {"classical_state": lab(w)})

    atomistic = rep.check("atomistic")
    atomistic.record(is_atomistic_on(sps, C), lambda: {"lattice": "C"})

    contains = rep.check("state_in_own_omega")
    for p in range(sps.n_states):
        contains.record(sps.sets[data.omega_of[p]] >> p & 1 == 1,
                        lambda: {"state": sps.states[p]})

    pair = rep.check("omega_pairwise_orthogonal")
    for w, v in itertools.combinations(data.omega, 2):
        pair.record(sps.leq(w, osps.partner[v]), lambda: {"omega": lab(w), "omega2": lab(v)})

    bij = rep.check("kappa_c_bijective")
    images = [data.kappa_c[a] for a in C]
    bij.record(len(C) == 2 ** len(data.omega),
               lambda: {"|C|": len(C), "|Omega|": len(data.omega)})
    bij.record(len(set(images)) == len(images), lambda: {"duplicate_images": True})

    comp = rep.check("kappa_c_complement")
    all_omega = (1 << len(data.omega)) - 1
    for a in C:
        comp.record(data.kappa_c[osps.partner[a]] == all_omega & ~data.kappa_c[a],
                    lambda: {"property": lab(a)})

    surj = rep.check("surjectivity_witness")
    k = len(data.omega)
    if k <= EXHAUSTIVE_OMEGA_LIMIT:
        targets = range(1 << k)
    else:
        r2 = SplitMix64(seed ^ 0x5EED)
        targets = [r2.next_u64() & all_omega for _ in range(RANDOM_SUBSETS)]
    for A in targets:
        a = surjectivity_witness(osps, A)
        surj.record(a in Cset and data.kappa_c[a] == A,
                    lambda: {"subset": [f"w{i}" for i in members(A)], "property": lab(a)})
    return rep


def surjectivity_witness(osps: OrthoSPS, subset: int) -> int:
    """Meet of ``ω^⊥`` over the classical states outside ``subset`` (a bitmask over Ω)."""
    data = classify(osps)
    outside = [data.omega[i] for i in range(len(data.omega)) if not subset >> i & 1]
    return osps.sps.meet(osps.partner[w] for w in outside)
