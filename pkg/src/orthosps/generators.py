"""Known-valid instances, seeded relabeling and axiom-breaking mutations.

Random instances are never sampled directly: valid orthocomplemented
families are too sparse.  They are always assembled from the fixed blocks
below with :func:`compose_shuffled`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import errors
from .core import MAX_STATES, SPS, members, validate_sps
from .decomposition import direct_union
from .ortho import OrthoSPS, validate_ortho
from .rng import SplitMix64

MUTATIONS = ("drop_set", "break_involution", "shrink_top", "unpair_ortho")

#: Error kind each mutation is guaranteed to trigger.
EXPECTED_ERRORS = {
    "drop_set": ("NotIntersectionClosed",),
    "break_involution": ("NotInvolutive",),
    "shrink_top": ("MissingTop",),
    "unpair_ortho": ("ComplementLawFailed", "OrthoComFailed"),
}


@dataclass
class RawInstance:
    """An unvalidated instance: masks plus a partner table in list order."""

    states: list[str]
    sets: list[int]
    partner: list[int]
    names: list[str | None] | None = None


def build(raw: RawInstance) -> OrthoSPS:
    """Validate a raw instance into an :class:`OrthoSPS`."""
    sps = validate_sps(raw.states, raw.sets, raw.names)
    if len(raw.partner) != len(raw.sets):
        raise errors.PartnerMapError(
            f"partner table has {len(raw.partner)} entries for {len(raw.sets)} properties"
        )
    pos = [sps.index_of(m) for m in raw.sets]
    partner = {}
    for i, j in enumerate(raw.partner):
        if not 0 <= j < len(raw.sets):
            raise errors.PartnerMapError(
                f"orthocomplement of property {i} is out of range", {"property": i, "partner": j}
            )
        partner[pos[i]] = pos[j]
    return validate_ortho(sps, partner)


def to_raw(osps: OrthoSPS) -> RawInstance:
    sps = osps.sps
    return RawInstance(
        list(sps.states),
        list(sps.sets),
        list(osps.partner),
        list(sps.names) if sps.names is not None else None,
    )


def _check_size(n: int) -> None:
    if n > MAX_STATES:
        raise errors.CapExceeded(f"{n} states exceeds the cap of {MAX_STATES}",
                                 {"states": n, "cap": MAX_STATES})


def gen_boolean(n: int) -> OrthoSPS:
    """Power set of ``n`` states with set complement."""
    if n < 1:
        raise ValueError("n must be at least 1")
    _check_size(n)
    full = (1 << n) - 1
    sets = list(range(1 << n))
    return build(RawInstance([f"s{i + 1}" for i in range(n)], sets,
                             [full ^ m for m in sets]))


def gen_mo(k: int) -> OrthoSPS:
    """MO_k: bottom, top and 2k atoms p_i, q_i with p_i ⊥ q_i."""
    if k < 2:
        raise ValueError("k must be at least 2")
    _check_size(2 * k)
    states = []
    for i in range(1, k + 1):
        states += [f"p{i}", f"q{i}"]
    full = (1 << 2 * k) - 1
    sets = [0, full] + [1 << i for i in range(2 * k)]
    partner = [1, 0] + [2 + (i ^ 1) for i in range(2 * k)]
    return build(RawInstance(states, sets, partner))


def compose_shuffled(parts: Sequence[OrthoSPS], seed: int) -> OrthoSPS:
    """Direct union of ``parts`` with states and properties permuted by ``seed``.

    States are renamed ``s0, s1, ...`` after the permutation and property
    names are dropped, so nothing of the component structure survives.
    """
    du = direct_union(parts).osps
    rng = SplitMix64(seed)
    n = du.sps.n_states
    order = list(range(n))
    rng.shuffle(order)
    new_pos = [0] * n
    for new, old in enumerate(order):
        new_pos[old] = new

    def move(mask):
        out = 0
        for p in members(mask):
            out |= 1 << new_pos[p]
        return out

    props = list(range(len(du.sps.sets)))
    rng.shuffle(props)
    at = {a: i for i, a in enumerate(props)}
    raw = RawInstance(
        [f"s{i}" for i in range(n)],
        [move(du.sps.sets[a]) for a in props],
        [at[du.partner[a]] for a in props],
    )
    return build(raw)


def droppable_sets(sps: SPS) -> list[int]:
    """Interior properties that are the intersection of two other properties."""
    sets = sps.sets
    out = []
    for c in range(1, len(sets) - 1):
        target = sets[c]
        found = False
        for i in range(len(sets)):
            if i == c or sets[i] & target != target:
                continue
            for j in range(i + 1, len(sets)):
                if j != c and sets[i] & sets[j] == target:
                    found = True
                    break
            if found:
                break
        if found:
            out.append(c)
    return out


def _without(raw: RawInstance, drop: int) -> RawInstance:
    keep = [i for i in range(len(raw.sets)) if i != drop]
    pos = {old: new for new, old in enumerate(keep)}
    partner = []
    for i in keep:
        j = raw.partner[i]
        partner.append(pos[j] if j in pos else pos[i])
    names = [raw.names[i] for i in keep] if raw.names is not None else None
    return RawInstance(list(raw.states), [raw.sets[i] for i in keep], partner, names)


def _transposed_ortho(osps: OrthoSPS, p: int, q: int) -> list[int] | None:
    """``a ↦ σ(a)^⊥`` for the state swap σ = (p q), when σ is a family automorphism commuting with ⊥."""
    sps = osps.sps
    swap_bits = (1 << p) | (1 << q)

    def sigma(mask):
        if bool(mask >> p & 1) != bool(mask >> q & 1):
            return mask ^ swap_bits
        return mask

    image = []
    for s in sps.sets:
        t = sps.index_of(sigma(s))
        if t is None:
            return None
        image.append(t)
    if image == list(range(len(sps.sets))):
        return None
    for a in range(len(sps.sets)):
        if image[osps.partner[a]] != osps.partner[image[a]]:
            return None
    return [osps.partner[image[a]] for a in range(len(sps.sets))]


def mutate(osps: OrthoSPS, kind: str, seed: int = 0) -> RawInstance:
    """Return an unvalidated copy of ``osps`` that violates one specific axiom.

    ``drop_set`` removes an interior set that is the intersection of two
    others; ``break_involution`` makes one property its own complement;
    ``shrink_top`` removes the full set; ``unpair_ortho`` composes ⊥ with a
    state-swap automorphism so that involution and antitonicity survive but
    the complement law or the Cartan condition fails.
    """
    if kind not in MUTATIONS:
        raise ValueError(f"unknown mutation {kind!r}; choose from {MUTATIONS}")
    rng = SplitMix64(seed)
    raw = to_raw(osps)
    sps = osps.sps

    if kind == "drop_set":
        cands = droppable_sets(sps)
        if not cands:
            raise errors.MutationInapplicable(
                "no interior property is the intersection of two others",
                {"mutation": kind},
            )
        return _without(raw, cands[rng.below(len(cands))])

    if kind == "shrink_top":
        return _without(raw, sps.top)

    if kind == "break_involution":
        a = rng.below(len(raw.sets))
        raw.partner[a] = a
        return raw

    pairs = [(p, q) for p in range(sps.n_states) for q in range(p + 1, sps.n_states)]
    rng.shuffle(pairs)
    for p, q in pairs:
        partner = _transposed_ortho(osps, p, q)
        if partner is None:
            continue
        try:
            validate_ortho(sps, partner)
        except (errors.ComplementLawFailed, errors.OrthoComFailed):
            raw.partner = partner
            return raw
        except errors.ValidationError:
            continue
    raise errors.MutationInapplicable(
        "no state swap yields an involutive antitone map violating the complement law",
        {"mutation": kind},
    )
