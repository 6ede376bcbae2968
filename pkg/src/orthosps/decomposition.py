"""Nonclassical components, direct unions and the decomposition isomorphism."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Sequence

from . import errors
from .classical import classify
from .core import members, validate_sps
from .ortho import OrthoSPS, validate_ortho
from .report import Report
from .rng import SplitMix64

DEFAULT_PRODUCT_CAP = 100_000
CAP_ENV = "ORTHOSPS_PRODUCT_CAP"

#: class08 tuples are enumerated exhaustively up to this many, else sampled.
TUPLE_EXHAUSTIVE_LIMIT = 100_000
TUPLE_SAMPLES = 10_000
FAMILY_SAMPLES = 1000
FAMILY_MAX_SIZE = 5


def product_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_PRODUCT_CAP


@dataclass(frozen=True)
class Component:
    osps: OrthoSPS
    omega: int
    prop_embedding: tuple[int, ...]
    state_embedding: tuple[int, ...]


def component(osps: OrthoSPS, omega: int) -> Component:
    """The subsystem of properties below the classical state ``omega``."""
    data = classify(osps)
    if omega not in data.omega:
        raise errors.NotAClassicalState(
            f"{osps.sps.label(omega)} is not a classical state",
            {"property": osps.sps.label(omega)},
        )
    sps = osps.sps
    block = sps.sets[omega]
    state_emb = members(block)
    local = {p: i for i, p in enumerate(state_emb)}

    def localize(mask):
        out = 0
        for p in members(mask):
            out |= 1 << local[p]
        return out

    props = [a for a, s in enumerate(sps.sets) if s & block == s]
    raw = [localize(sps.sets[a]) for a in props]
    names = None
    if sps.names is not None:
        names = [sps.names[a] for a in props]
    try:
        sub = validate_sps([sps.states[p] for p in state_emb], raw, names)
        pos = {a: sub.index_of(localize(sps.sets[a])) for a in props}
        partner = {pos[a]: pos[sps.meet2(osps.partner[a], omega)] for a in props}
        sub_o = validate_ortho(sub, partner)
    except (errors.ValidationError, KeyError) as exc:
        raise errors.InternalTheoremViolation(
            f"component below {sps.label(omega)} failed validation: {exc}"
        ) from exc
    prop_emb = [0] * len(sub.sets)
    for a in props:
        prop_emb[pos[a]] = a
    return Component(sub_o, omega, tuple(prop_emb), state_emb)


def components(osps: OrthoSPS) -> list[Component]:
    return [component(osps, w) for w in classify(osps).omega]


@dataclass(frozen=True)
class DirectUnionSPS:
    """Direct union with bookkeeping.

    ``state_origin[s]`` is ``(part, state in part)``; ``prop_tuple[a]`` holds
    one property index per part.
    """

    osps: OrthoSPS
    parts: tuple[OrthoSPS, ...]
    state_origin: tuple[tuple[int, int], ...]
    prop_tuple: tuple[tuple[int, ...], ...]

    def index_of_tuple(self, t: Sequence[int]) -> int:
        lookup = self.osps._memo.get("tuple_index")
        if lookup is None:
            lookup = {tp: i for i, tp in enumerate(self.prop_tuple)}
            self.osps._memo["tuple_index"] = lookup
        return lookup[tuple(t)]


def direct_union(parts: Sequence[OrthoSPS], cap: int | None = None) -> DirectUnionSPS:
    """Disjoint union of states with the componentwise product of families."""
    parts = tuple(parts)
    if not parts:
        raise errors.EmptyPartsList("direct union of no parts")
    cap = product_cap() if cap is None else cap
    size = 1
    for part in parts:
        size *= len(part.sps.sets)
    if size > cap:
        raise errors.ProductTooLarge(
            f"direct union would have {size} properties (cap {cap})",
            {"size": size, "cap": cap},
        )

    states = []
    origin = []
    offsets = []
    for i, part in enumerate(parts):
        offsets.append(len(states))
        for j, label in enumerate(part.sps.states):
            states.append(f"{i}:{label}")
            origin.append((i, j))

    shifted = [[s << off for s in part.sps.sets] for part, off in zip(parts, offsets)]
    tuples = list(itertools.product(*(range(len(p.sps.sets)) for p in parts)))
    raw = []
    for t in tuples:
        m = 0
        for i, a in enumerate(t):
            m |= shifted[i][a]
        raw.append(m)

    sps = validate_sps(states, raw)
    canon_tuple: list[tuple[int, ...]] = [()] * len(tuples)
    where = {}
    for t, m in zip(tuples, raw):
        idx = sps.index_of(m)
        canon_tuple[idx] = t
        where[t] = idx
    partner = {
        where[t]: where[tuple(p.partner[a] for p, a in zip(parts, t))] for t in tuples
    }
    osps = validate_ortho(sps, partner)
    du = DirectUnionSPS(osps, parts, tuple(origin), tuple(canon_tuple))
    osps._memo["tuple_index"] = where
    return du


@dataclass(frozen=True)
class MorphismPair:
    """``m`` maps source states to target states; ``n`` maps target properties to source properties."""

    m: tuple[int, ...]
    n: tuple[int, ...]


def decomposition_morphism(osps: OrthoSPS) -> tuple[DirectUnionSPS, MorphismPair, list[Component]]:
    """Direct union of the components of ``osps`` with the explicit maps.

    ``m`` sends each state to its tagged copy, ``n`` sends each tuple of
    component properties to the ambient property whose state set is the
    union of their state sets.
    """
    comps = components(osps)
    du = direct_union([c.osps for c in comps])
    sps = osps.sps

    offsets = []
    total = 0
    for c in comps:
        offsets.append(total)
        total += len(c.state_embedding)
    m = [-1] * sps.n_states
    for ci, c in enumerate(comps):
        for j, p in enumerate(c.state_embedding):
            m[p] = offsets[ci] + j

    n = []
    for t in du.prop_tuple:
        u = 0
        for ci, a in enumerate(t):
            u |= sps.sets[comps[ci].prop_embedding[a]]
        idx = sps.index_of(u)
        if idx is None:
            raise errors.InternalTheoremViolation(
                f"union {sps.format_set(u)} of component properties is not a property"
            )
        n.append(idx)
    return du, MorphismPair(tuple(m), tuple(n)), comps


def verify_morphism(pair: MorphismPair, source: OrthoSPS, target: OrthoSPS) -> Report:
    """Check that ``pair`` is an ortho-preserving isomorphism ``source -> target``.

    ``pair.m`` is indexed by source states, ``pair.n`` by target properties.
    """
    ssps, tsps = source.sps, target.sps
    rep = Report("morphism")
    m, n = pair.m, pair.n

    mb = rep.check("m_bijective")
    mb.record(len(m) == ssps.n_states, lambda: {"domain": len(m), "states": ssps.n_states})
    mb.record(all(0 <= x < tsps.n_states for x in m) and sorted(m) == list(range(tsps.n_states)),
              lambda: {"image": [tsps.states[x] if 0 <= x < tsps.n_states else x for x in m]})

    nb = rep.check("n_bijective")
    nb.record(len(n) == len(tsps.sets), lambda: {"domain": len(n), "properties": len(tsps.sets)})
    nb.record(all(0 <= x < len(ssps.sets) for x in n) and sorted(n) == list(range(len(ssps.sets))),
              lambda: {"image_size": len(set(n)), "properties": len(ssps.sets)})

    mem = rep.check("membership")
    ortho = rep.check("ortho_preserved")
    if not (mb.passed and nb.passed):
        mem.note = ortho.note = "skipped: maps are not total bijections"
        return rep
    for a in range(len(tsps.sets)):
        ta = tsps.sets[a]
        sa = ssps.sets[n[a]]
        for p in range(ssps.n_states):
            lhs = bool(ta >> m[p] & 1)
            rhs = bool(sa >> p & 1)
            mem.record(lhs == rhs, lambda: {
                "state": ssps.states[p], "mapped_state": tsps.states[m[p]],
                "property": tsps.label(a), "image": ssps.label(n[a]),
                "in_target": lhs, "in_source": rhs,
            })
        ortho.record(n[target.partner[a]] == source.partner[n[a]], lambda: {
            "property": tsps.label(a),
            "n_of_perp": ssps.label(n[target.partner[a]]),
            "perp_of_n": ssps.label(source.partner[n[a]]),
        })
    return rep


def lemma_suite(osps: OrthoSPS, seed: int = 0) -> Report:
    """Evaluate the distributivity-type identities around classical properties."""
    sps = osps.sps
    data = classify(osps)
    C = data.classical
    Omega = data.omega
    L = range(len(sps.sets))
    sets = sps.sets
    perp = osps.partner
    meet2, join2, lab = sps.meet2, sps.join2, sps.label
    rng = SplitMix64(seed)
    rep = Report("lemmas", info={"properties": len(sets), "classical_properties": len(C),
                                 "classical_states": len(Omega)})

    c01 = rep.check("class01", note="x = (x∧a) ∨ (x∧a^⊥)")
    c02 = rep.check("class02", note="κ(x) = κ(x∧a) ∪ κ(x∧a^⊥)")
    c04b = rep.check("class04b", note="a = (a∧x) ∨ (a∧x^⊥)")
    for a in C:
        ap = perp[a]
        for x in L:
            xa, xap = meet2(x, a), meet2(x, ap)
            c01.record(join2(xa, xap) == x,
                       lambda: {"x": lab(x), "a": lab(a), "rhs": lab(join2(xa, xap))})
            c02.record(sets[x] == sets[xa] | sets[xap], lambda: {"x": lab(x), "a": lab(a)})
            ax, axp = meet2(a, x), meet2(a, perp[x])
            c04b.record(join2(ax, axp) == a, lambda: {"x": lab(x), "a": lab(a)})

    c03b = rep.check("class03b", note="(x∨y)^⊥ = (x^⊥∧a) ∨ (y^⊥∧a^⊥) for x ≤ a, y ≤ a^⊥")
    c03 = rep.check("class03", note="(x∨y)∧a = x for x ≤ a, y ≤ a^⊥")
    for a in C:
        ap = perp[a]
        xs, ys = sps.below(a), sps.below(ap)
        for x in xs:
            for y in ys:
                xy = join2(x, y)
                rhs = join2(meet2(perp[x], a), meet2(perp[y], ap))
                c03b.record(perp[xy] == rhs,
                            lambda: {"x": lab(x), "y": lab(y), "a": lab(a),
                                     "lhs": lab(perp[xy]), "rhs": lab(rhs)})
                c03.record(meet2(xy, a) == x,
                           lambda: {"x": lab(x), "y": lab(y), "a": lab(a)})

    c04 = rep.check("class04", note="a ∧ (∨ x_i) = ∨ (a ∧ x_i)")
    families = list(itertools.combinations(L, 2))
    n_props = len(sets)
    for _ in range(FAMILY_SAMPLES):
        size = 1 + rng.below(FAMILY_MAX_SIZE)
        families.append(tuple(rng.sample(range(n_props), min(size, n_props))))
    for a in C:
        sa = sets[a]
        for fam in families:
            u = 0
            for x in fam:
                u |= sets[x]
            lhs = sps.index_of(sa & sets[sps.closure(u)])
            v = 0
            for x in fam:
                v |= sa & sets[x]
            rhs = sps.closure(v)
            c04.record(lhs == rhs, lambda: {"a": lab(a), "family": [lab(x) for x in fam]})

    c05 = rep.check("class05", note="a = ∨_ω (a∧ω)")
    c06 = rep.check("class06", note="κ(a) = ∪_ω κ(a∧ω)")
    c06d = rep.check("class06_disjoint", note="a∧ω ⊥ a∧ω' and κ-disjoint for ω ≠ ω'")
    for a in L:
        parts = [meet2(a, w) for w in Omega]
        u = 0
        for x in parts:
            u |= sets[x]
        c05.record(sps.closure(u) == a, lambda: {"a": lab(a)})
        c06.record(u == sets[a], lambda: {"a": lab(a)})
        for (i, x), (j, y) in itertools.combinations(enumerate(parts), 2):
            ok = sps.leq(x, perp[y]) and sets[x] & sets[y] == 0
            c06d.record(ok, lambda: {"a": lab(a), "omega": lab(Omega[i]), "omega2": lab(Omega[j])})

    cor = rep.check("corollary_partition", note="Σ is the disjoint union of the κ(ω)")
    u = 0
    for w in Omega:
        cor.record(sets[w] != 0, lambda: {"empty_block": lab(w)})
        cor.record(u & sets[w] == 0, lambda: {"overlapping_block": lab(w)})
        u |= sets[w]
    cor.record(u == sps.full, lambda: {"uncovered": sps.format_set(sps.full & ~u)})

    c08 = rep.check("class08", note="κ(∨ a_ω) = ∪ κ(a_ω) for a_ω ≤ ω, pairwise disjoint")
    below = [sps.below(w) for w in Omega]
    total = 1
    for b in below:
        total *= len(b)
    if total <= TUPLE_EXHAUSTIVE_LIMIT:
        tuples = itertools.product(*below)
    else:
        c08.note += " (sampled)"
        tuples = (tuple(b[rng.below(len(b))] for b in below) for _ in range(TUPLE_SAMPLES))
    for t in tuples:
        u = 0
        disjoint = True
        for x in t:
            disjoint = disjoint and u & sets[x] == 0
            u |= sets[x]
        c08.record(disjoint and sets[sps.closure(u)] == u,
                   lambda: {"tuple": [lab(x) for x in t]})
    return rep
