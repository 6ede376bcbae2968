"""JSON instance documents.

Example::

    {
      "format_version": "1",
      "states": ["s1", "s2"],
      "properties": [
        {"kappa": [], "perp": 3},
        {"kappa": ["s1"], "perp": 2},
        {"kappa": ["s2"], "perp": 1},
        {"kappa": ["s1", "s2"], "perp": 0}
      ]
    }

``perp`` is a property name when the target property is named, otherwise a
zero-based position in ``properties``.  Order, meets and joins are never
stored; they follow from the ``kappa`` lists.
"""

from __future__ import annotations

import json
from typing import Any

from . import errors
from .generators import RawInstance
from .ortho import OrthoSPS

FORMAT_VERSION = "1"


def serialize(osps: OrthoSPS) -> str:
    """Canonical text: states in roster order, properties in family order."""
    sps = osps.sps
    names = sps.names
    lines = [
        "{",
        f'  "format_version": {json.dumps(FORMAT_VERSION)},',
        f'  "states": {_dump(list(sps.states))},',
        '  "properties": [',
    ]
    recs = []
    for a, mask in enumerate(sps.sets):
        rec: dict[str, Any] = {}
        if names is not None and names[a] is not None:
            rec["name"] = names[a]
        rec["kappa"] = sps.set_labels(mask)
        b = osps.partner[a]
        rec["perp"] = names[b] if names is not None and names[b] is not None else b
        recs.append("    " + _dump(rec))
    lines.append(",\n".join(recs))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def serialize_raw(raw: RawInstance) -> str:
    """Same layout for an unvalidated instance, in its own list order."""
    names = raw.names
    recs = []
    for a, mask in enumerate(raw.sets):
        rec: dict[str, Any] = {}
        if names is not None and names[a] is not None:
            rec["name"] = names[a]
        rec["kappa"] = [raw.states[i] for i in range(len(raw.states)) if mask >> i & 1]
        b = raw.partner[a]
        rec["perp"] = names[b] if names is not None and names[b] is not None else b
        recs.append("    " + _dump(rec))
    return "\n".join([
        "{",
        f'  "format_version": {json.dumps(FORMAT_VERSION)},',
        f'  "states": {_dump(list(raw.states))},',
        '  "properties": [',
        ",\n".join(recs),
        "  ]",
        "}",
    ]) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def parse(text: str) -> RawInstance:
    """Parse a document into an unvalidated :class:`RawInstance`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.DocumentSyntaxError(
            f"{exc.msg} at line {exc.lineno} column {exc.colno}",
            line=exc.lineno, column=exc.colno,
        ) from exc
    if not isinstance(doc, dict):
        raise errors.DocumentSyntaxError("top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise errors.VersionMismatch(
            f"format_version {version!r} is not supported (expected {FORMAT_VERSION!r})",
            {"found": version, "expected": FORMAT_VERSION},
        )
    states = doc.get("states")
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise errors.DocumentSyntaxError('"states" must be a list of strings')
    props = doc.get("properties")
    if not isinstance(props, list):
        raise errors.DocumentSyntaxError('"properties" must be a list')

    state_pos = {s: i for i, s in enumerate(states)}
    names: list[str | None] = []
    sets = []
    perps = []
    for i, rec in enumerate(props):
        if not isinstance(rec, dict):
            raise errors.DocumentSyntaxError(f"property {i} must be an object", {"property": i})
        unknown = set(rec) - {"name", "kappa", "perp"}
        if unknown:
            raise errors.DocumentSyntaxError(
                f"property {i} has unknown keys {sorted(unknown)}", {"property": i}
            )
        name = rec.get("name")
        if name is not None and not isinstance(name, str):
            raise errors.DocumentSyntaxError(f"property {i} name must be a string", {"property": i})
        kappa = rec.get("kappa")
        if not isinstance(kappa, list) or not all(isinstance(s, str) for s in kappa):
            raise errors.DocumentSyntaxError(
                f'property {i} "kappa" must be a list of state labels', {"property": i}
            )
        mask = 0
        for s in kappa:
            if s not in state_pos:
                raise errors.UnknownStateLabel(
                    f"property {i} refers to unknown state {s!r}", {"property": i, "state": s}
                )
            mask |= 1 << state_pos[s]
        if "perp" not in rec:
            raise errors.DocumentSyntaxError(f'property {i} lacks "perp"', {"property": i})
        perp = rec["perp"]
        if isinstance(perp, bool) or not isinstance(perp, (int, str)):
            raise errors.DocumentSyntaxError(
                f'property {i} "perp" must be a name or an index', {"property": i}
            )
        names.append(name)
        sets.append(mask)
        perps.append(perp)

    by_name: dict[str, int] = {}
    for i, name in enumerate(names):
        if name is None:
            continue
        if name in by_name:
            raise errors.DocumentSyntaxError(
                f"property name {name!r} used twice", {"name": name}
            )
        by_name[name] = i

    partner = []
    for i, ref in enumerate(perps):
        if isinstance(ref, str):
            if ref not in by_name:
                raise errors.DanglingPerpReference(
                    f"property {i} has perp {ref!r}, which names no property",
                    {"property": i, "perp": ref},
                )
            partner.append(by_name[ref])
        else:
            if not 0 <= ref < len(sets):
                raise errors.DanglingPerpReference(
                    f"property {i} has perp index {ref} out of range",
                    {"property": i, "perp": ref},
                )
            partner.append(ref)

    return RawInstance(list(states), sets, partner,
                       names if any(n is not None for n in names) else None)


def load(path) -> RawInstance:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(osps: OrthoSPS, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(osps))
