"""Named function configurations shipped with the package.

The catalog (presets.json) holds every branch-product configuration the
experiments run on: the Markov pairs with touching real supports, the
disjoint- and coincident-branch-point pairs, the branch-collision sweep, the
[1, f, f^2] families, the quartic-root/cube-root/sixth-root single functions,
and the two-point branch pairs.  Entries carry a digits_hint (an inferred
default, not a requirement) and a prose note.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .series import FunctionSpec, SpecError

__all__ = ["Preset", "presets", "get_preset"]

MODE_ARITY = {"pade": 1, "hermite_pade": 2, "two_point": 2}


@dataclass(frozen=True)
class Preset:
    name: str
    mode: str
    functions: tuple[FunctionSpec, ...]
    digits_hint: int | None = None
    note: str = ""

    def __post_init__(self):
        if self.mode not in MODE_ARITY:
            raise SpecError(f"unknown mode {self.mode!r}")
        if len(self.functions) != MODE_ARITY[self.mode]:
            raise SpecError(
                f"preset {self.name!r}: mode {self.mode} needs "
                f"{MODE_ARITY[self.mode]} function(s), got {len(self.functions)}"
            )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "digits_hint": self.digits_hint,
            "note": self.note,
            "functions": [f.to_json() for f in self.functions],
        }


def _load() -> dict[str, Preset]:
    raw = json.loads(resources.files("hpzeros").joinpath("presets.json").read_text("utf-8"))
    catalog: dict[str, Preset] = {}
    for entry in raw["presets"]:
        preset = Preset(
            name=entry["name"],
            mode=entry["mode"],
            functions=tuple(FunctionSpec.from_json(f) for f in entry["functions"]),
            digits_hint=entry.get("digits_hint"),
            note=entry.get("note", ""),
        )
        if preset.name in catalog:
            raise SpecError(f"duplicate preset name {preset.name!r}")
        catalog[preset.name] = preset
    return catalog


_CATALOG: dict[str, Preset] | None = None


def presets() -> dict[str, Preset]:
    """The full named catalog, loaded once per process."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _load()
    return _CATALOG


def get_preset(name: str) -> Preset:
    catalog = presets()
    if name not in catalog:
        known = ", ".join(sorted(catalog))
        raise KeyError(f"unknown preset {name!r}; known presets: {known}")
    return catalog[name]
