"""Finite semitopologies: point classification, witness functions,
semiframe duality, three-valued logic and SAT/HORNSAT bridges."""

from ._backend import BACKEND
from .core import (CATALOG_NAMES, Semitopology, SemitopologyError, all_semitopologies,
                   catalog, closure, from_generators, from_json, interior)
from .witness import WitnessFunction, from_semitopology, witness_opens
from .antisep import classify, classify_point, community, intertwined, kernel, topen_partition

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CATALOG_NAMES", "Semitopology", "SemitopologyError", "WitnessFunction",
    "all_semitopologies", "catalog", "classify", "classify_point", "closure", "community",
    "from_generators", "from_json", "from_semitopology", "interior", "intertwined",
    "kernel", "topen_partition", "witness_opens",
]
