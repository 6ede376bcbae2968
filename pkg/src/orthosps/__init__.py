"""Finite orthocomplemented state property systems and their decomposition
into nonclassical components over the classical states."""

from .classical import (
    ClassicalData,
    ClassicalSPS,
    classical_properties,
    classical_sps,
    classical_state,
    classify,
    is_classical,
    kappa_c,
    verify_classical_theorems,
)
from .core import SPS, validate_sps
from .decomposition import (
    Component,
    DirectUnionSPS,
    MorphismPair,
    component,
    components,
    decomposition_morphism,
    direct_union,
    lemma_suite,
    verify_morphism,
)
from .generators import RawInstance, build, compose_shuffled, gen_boolean, gen_mo, mutate
from .io import parse, serialize
from .ortho import OrthoSPS, symmetry_report, validate_ortho

__all__ = [
    "ClassicalData", "ClassicalSPS", "Component", "DirectUnionSPS", "MorphismPair",
    "OrthoSPS", "RawInstance", "SPS", "build", "classical_properties", "classical_sps",
    "classical_state", "classify", "component", "components", "compose_shuffled",
    "decomposition_morphism", "direct_union", "gen_boolean", "gen_mo", "is_classical",
    "kappa_c", "lemma_suite", "mutate", "parse", "serialize", "symmetry_report",
    "validate_ortho", "validate_sps", "verify_classical_theorems", "verify_morphism",
]
