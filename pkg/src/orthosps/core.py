"""Finite state property systems as intersection-closed families of state sets.

A property is identified with the set of states in which it is actual, so the
property lattice *is* the family of those sets ordered by inclusion.  State
sets are stored as int bitmasks over roster positions (bit ``i`` is state
``i``).  Members are kept in canonical order: by cardinality, then by the
sorted tuple of member positions.  With that order ``∅`` is always index 0 and
the full set is always the last index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import errors

#: Largest roster accepted by :func:`validate_sps`.
MAX_STATES = 64


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> tuple[int, ...]:
    """Positions of set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    ms = members(mask)
    return (len(ms), ms)


@dataclass(frozen=True)
class SPS:
    """A validated state property system.

    Build instances through :func:`validate_sps`; the constructor trusts its
    arguments.
    """

    states: tuple[str, ...]
    sets: tuple[int, ...]
    names: tuple[str | None, ...] | None = None
    _index: dict = field(default_factory=dict, compare=False, repr=False)
    _closure: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index.update((m, i) for i, m in enumerate(self.sets))

    # -- basic shape -------------------------------------------------------

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_props(self) -> int:
        return len(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    @property
    def full(self) -> int:
        return (1 << len(self.states)) - 1

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.sets) - 1

    def kappa(self, a: int) -> int:
        self._check_prop(a)
        return self.sets[a]

    def index_of(self, mask: int) -> int | None:
        return self._index.get(mask)

    def _check_prop(self, a: int) -> None:
        if not 0 <= a < len(self.sets):
            raise errors.IndexOutOfRange(
                f"property index {a} out of range 0..{len(self.sets) - 1}",
                {"index": a},
            )

    def check_state(self, p: int) -> None:
        if not 0 <= p < len(self.states):
            raise errors.IndexOutOfRange(
                f"state index {p} out of range 0..{len(self.states) - 1}",
                {"index": p},
            )

    # -- labels ------------------------------------------------------------

    def set_labels(self, mask: int) -> list[str]:
        return [self.states[i] for i in members(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.set_labels(mask)) + "}"

    def label(self, a: int) -> str:
        """Property name if one was given, else its state set."""
        if self.names is not None and self.names[a] is not None:
            return self.names[a]
        return self.format_set(self.sets[a])

    # -- order and lattice operations ---------------------------------------

    def leq(self, a: int, b: int) -> bool:
        self._check_prop(a)
        self._check_prop(b)
        sa = self.sets[a]
        return sa & self.sets[b] == sa

    def meet(self, indices: Iterable[int]) -> int:
        m = self.full
        for a in indices:
            self._check_prop(a)
            m &= self.sets[a]
        return self._index[m]

    def join(self, indices: Iterable[int]) -> int:
        u = 0
        for a in indices:
            self._check_prop(a)
            u |= self.sets[a]
        return self.closure(u)

    def meet2(self, a: int, b: int) -> int:
        return self._index[self.sets[a] & self.sets[b]]

    def join2(self, a: int, b: int) -> int:
        return self.closure(self.sets[a] | self.sets[b])

    def closure(self, mask: int) -> int:
        """Index of the smallest family member containing ``mask``."""
        hit = self._index.get(mask)
        if hit is not None:
            return hit
        hit = self._closure.get(mask)
        if hit is None:
            c = self.full
            for s in self.sets:
                if s & mask == mask:
                    c &= s
            hit = self._index[c]
            self._closure[mask] = hit
        return hit

    def below(self, a: int) -> list[int]:
        """All properties ``x`` with ``x <= a``."""
        sa = self.sets[a]
        return [i for i, s in enumerate(self.sets) if s & sa == s]

    # -- atoms ---------------------------------------------------------------

    def atoms(self) -> list[int]:
        return atoms_of(self, range(len(self.sets)))

    def is_atomistic(self) -> bool:
        return is_atomistic_on(self, range(len(self.sets)))


def atoms_of(sps: SPS, subset: Iterable[int]) -> list[int]:
    """Minimal non-bottom elements of ``subset`` under inclusion."""
    pool = [a for a in subset if sps.sets[a] != 0]
    out = []
    for a in pool:
        sa = sps.sets[a]
        if not any(b != a and sps.sets[b] & sa == sps.sets[b] for b in pool):
            out.append(a)
    return out


def is_atomistic_on(sps: SPS, subset: Iterable[int]) -> bool:
    """Every non-bottom element of ``subset`` is the join of the atoms of ``subset`` below it.

    Joins are taken in the ambient family, which is correct whenever
    ``subset`` is closed under joins.
    """
    subset = list(subset)
    atoms = atoms_of(sps, subset)
    for a in subset:
        sa = sps.sets[a]
        if sa == 0:
            continue
        under = [t for t in atoms if sps.sets[t] & sa == sps.sets[t]]
        if sps.join(under) != a:
            return False
    return True


def validate_sps(
    states: Sequence[str],
    raw_sets: Sequence[int],
    names: Sequence[str | None] | None = None,
    max_states: int = MAX_STATES,
) -> SPS:
    """Check the axioms and return the canonical :class:`SPS`.

    Checks run in a fixed order: roster, duplicate properties, bottom, top,
    intersection closure.  The first failure is raised with a witness.
    """
    states = tuple(states)
    if not states:
        raise errors.EmptyRoster("state roster is empty")
    if len(states) > max_states:
        raise errors.RosterTooLarge(
            f"{len(states)} states exceeds the cap of {max_states}",
            {"states": len(states), "cap": max_states},
        )
    seen: dict[str, int] = {}
    for i, s in enumerate(states):
        if s in seen:
            raise errors.DuplicateStateLabel(
                f"state label {s!r} appears twice", {"label": s, "positions": [seen[s], i]}
            )
        seen[s] = i

    full = (1 << len(states)) - 1
    if names is not None and len(names) != len(raw_sets):
        raise ValueError("names and raw_sets differ in length")

    def fmt(mask):
        return "{" + ",".join(states[i] for i in members(mask)) + "}"

    position: dict[int, int] = {}
    for i, m in enumerate(raw_sets):
        if m < 0 or m & ~full:
            raise errors.StateOutOfRange(
                f"property {i} refers to a state outside the roster", {"property": i}
            )
        if m in position:
            raise errors.DuplicateProperty(
                f"properties {position[m]} and {i} have the same state set {fmt(m)}",
                {"properties": [position[m], i], "kappa": fmt(m)},
            )
        position[m] = i

    if 0 not in position:
        raise errors.MissingBottom("the empty set is not a property", {"kappa": "{}"})
    if full not in position:
        raise errors.MissingTop(
            "the full state set is not a property", {"kappa": fmt(full)}
        )

    order = sorted(range(len(raw_sets)), key=lambda i: canonical_key(raw_sets[i]))
    sets = tuple(raw_sets[i] for i in order)
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            c = a & b
            if c not in position:
                la = _raw_label(names, position[a], fmt(a))
                lb = _raw_label(names, position[b], fmt(b))
                raise errors.NotIntersectionClosed(
                    f"{la} ∩ {lb} = {fmt(c)} is not a property",
                    {"pair": [la, lb], "intersection": fmt(c)},
                )

    canon_names = None
    if names is not None:
        canon_names = tuple(names[i] for i in order)
        if all(n is None for n in canon_names):
            canon_names = None
    return SPS(states, sets, canon_names)


def _raw_label(names, i, fallback):
    if names is not None and names[i] is not None:
        return names[i]
    return fallback
