"""Orthocomplementation on a validated system and the OrthoCom axiom."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from . import errors
from .core import SPS, members
from .report import Report


@dataclass(frozen=True)
class OrthoSPS:
    """A state property system together with its orthocomplement table.

    ``partner[a]`` is the index of ``a``'s orthocomplement.  Build through
    :func:`validate_ortho`.
    """

    sps: SPS
    partner: tuple[int, ...]
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def states(self) -> tuple[str, ...]:
        return self.sps.states

    @property
    def sets(self) -> tuple[int, ...]:
        return self.sps.sets

    def perp(self, a: int) -> int:
        self.sps._check_prop(a)
        return self.partner[a]

    @cached_property
    def orth_rows(self) -> tuple[int, ...]:
        """Row ``p`` is the bitmask of states orthogonal to ``p``."""
        rows = [0] * self.sps.n_states
        sets = self.sps.sets
        for a, s in enumerate(sets):
            comp = sets[self.partner[a]]
            if not comp:
                continue
            for p in members(s):
                rows[p] |= comp
        return tuple(rows)

    def orthogonal(self, p: int, q: int) -> bool:
        self.sps.check_state(p)
        self.sps.check_state(q)
        return bool(self.orth_rows[p] >> q & 1)

    def ortho_set(self, mask: int) -> int:
        """States orthogonal to every member of ``mask`` (all states when empty)."""
        out = self.sps.full
        rows = self.orth_rows
        for p in members(mask):
            out &= rows[p]
        return out


def orthogonal_by_scan(osps: OrthoSPS, p: int, q: int) -> bool:
    """Reference definition, one pass over all properties."""
    sets = osps.sps.sets
    return any(
        sets[a] >> p & 1 and sets[osps.partner[a]] >> q & 1 for a in range(len(sets))
    )


def validate_ortho(sps: SPS, raw_partner: Sequence[int] | Mapping[int, int]) -> OrthoSPS:
    """Verify the orthocomplement laws and the Cartan condition.

    Checked in order: involution, antitonicity, complement law, then
    ``ortho_set(κ(a)) ⊆ κ(a^⊥)``.  The first failure is raised with the
    smallest witness in canonical order.
    """
    n = len(sps.sets)
    if isinstance(raw_partner, Mapping):
        missing = [a for a in range(n) if a not in raw_partner]
        if missing:
            raise errors.PartnerMapError(
                f"no orthocomplement given for {sps.label(missing[0])}",
                {"property": sps.label(missing[0])},
            )
        partner = tuple(raw_partner[a] for a in range(n))
    else:
        if len(raw_partner) != n:
            raise errors.PartnerMapError(
                f"partner table has {len(raw_partner)} entries for {n} properties"
            )
        partner = tuple(raw_partner)
    for a, b in enumerate(partner):
        if not 0 <= b < n:
            raise errors.PartnerMapError(
                f"orthocomplement of {sps.label(a)} is out of range",
                {"property": sps.label(a), "partner": b},
            )

    lab = sps.label
    sets = sps.sets

    for a in range(n):
        if partner[partner[a]] != a:
            raise errors.NotInvolutive(
                f"({lab(a)}^⊥)^⊥ = {lab(partner[partner[a]])} ≠ {lab(a)}",
                {"property": lab(a), "perp": lab(partner[a]),
                 "perp_perp": lab(partner[partner[a]])},
            )

    for a in range(n):
        sa = sets[a]
        for b in range(n):
            if a != b and sa & sets[b] == sa:
                pa, pb = sets[partner[a]], sets[partner[b]]
                if pb & pa != pb:
                    raise errors.NotAntitone(
                        f"{lab(a)} ≤ {lab(b)} but {lab(partner[b])} ≰ {lab(partner[a])}",
                        {"a": lab(a), "b": lab(b),
                         "a_perp": lab(partner[a]), "b_perp": lab(partner[b])},
                    )

    for a in range(n):
        b = partner[a]
        m = sps.meet2(a, b)
        j = sps.join2(a, b)
        if m != sps.bottom or j != sps.top:
            which = "meet" if m != sps.bottom else "join"
            raise errors.ComplementLawFailed(
                f"{lab(a)} ∧ {lab(b)} = {lab(m)}, {lab(a)} ∨ {lab(b)} = {lab(j)}",
                {"property": lab(a), "perp": lab(b), "failed": which,
                 "meet": lab(m), "join": lab(j)},
            )

    osps = OrthoSPS(sps, partner)
    found = cartan_violation(osps)
    if found is not None:
        a, q = found
        raise errors.OrthoComFailed(
            f"state {sps.states[q]} is orthogonal to all of κ({lab(a)}) "
            f"but not in κ({lab(partner[a])})",
            {"property": lab(a), "perp": lab(partner[a]), "state": sps.states[q]},
        )
    for a in range(n):
        lhs = osps.ortho_set(sets[a])
        rhs = sets[partner[a]]
        if rhs & ~lhs:
            q = members(rhs & ~lhs)[0]
            raise errors.InternalTheoremViolation(
                f"κ({lab(partner[a])}) ⊄ κ({lab(a)})^⊥ at state {sps.states[q]}",
                {"property": lab(a), "state": sps.states[q]},
            )
    return osps


def cartan_violation(osps: OrthoSPS) -> tuple[int, int] | None:
    """First ``(property, state)`` with the state in ``κ(a)^⊥`` but not in ``κ(a^⊥)``.

    Works on any partner table, validated or not.  For finite systems that
    already satisfy involution and antitonicity this always returns ``None``:
    every property is the join of the strongest properties of its states, so
    ``κ(a)^⊥`` and ``κ(a^⊥)`` coincide.  The check is kept as a guard.
    """
    sets = osps.sps.sets
    for a in range(len(sets)):
        extra = osps.ortho_set(sets[a]) & ~sets[osps.partner[a]]
        if extra:
            return a, members(extra)[0]
    return None


def symmetry_report(osps: OrthoSPS) -> Report:
    """Consistency diagnostics for the state orthogonality relation."""
    sps = osps.sps
    rep = Report("orthogonality")
    sym = rep.check("symmetric")
    self_o = rep.check("irreflexive")
    cartan = rep.check("ortho_set_equality", note="κ(a)^⊥ = κ(a^⊥) for every property")
    names = sps.states
    for p in range(sps.n_states):
        self_o.record(not osps.orthogonal(p, p), lambda: {"state": names[p]})
        for q in range(p + 1, sps.n_states):
            sym.record(
                osps.orthogonal(p, q) == osps.orthogonal(q, p),
                lambda: {"p": names[p], "q": names[q]},
            )
    for a in range(len(sps.sets)):
        cartan.record(
            osps.ortho_set(sps.sets[a]) == sps.sets[osps.partner[a]],
            lambda: {"property": sps.label(a)},
        )
    return rep
