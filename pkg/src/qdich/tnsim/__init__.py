"""Exact marginals and sampling for QAOA instances of interaction degree at most 2."""

from .components import Component, ComponentKind, canonical_ordering, decompose
from .contraction import LayerSchedule, component_marginal, layer_schedule, marginal
from .cutwidth import CutProfile, cut_width
from .sampler import ChainRuleSampler, sample

__all__ = [
    "ChainRuleSampler",
    "Component",
    "ComponentKind",
    "CutProfile",
    "LayerSchedule",
    "canonical_ordering",
    "component_marginal",
    "cut_width",
    "decompose",
    "layer_schedule",
    "marginal",
    "sample",
]
