"""Chain-cover sorting and the non-messing-up property of finite posets.

Element ids are 0-based, as in the C++ library.
"""

import json

from ._nmu import (
    Error,
    InvalidCoverError,
    Poset,
    SizeLimitError,
    brute_force_n2,
    canonical_key,
    chain_poset,
    chain_sort,
    enumerate_posets,
    format_poset,
    grid_cover_pair,
    grid_poset,
    nmu_check,
    parse_poset,
)
from . import _nmu


def classify(poset):
    """Theorem-based verdicts for N2, N2' and N2'' as a dict."""
    return json.loads(_nmu._classify_json(poset))


def oracle(max_n=6, connected_only=False, jobs=1):
    """Classifier against brute force; returns (records, summary)."""
    lines, summary = _nmu._oracle_json(max_n, connected_only, jobs)
    return [json.loads(line) for line in lines.splitlines()], json.loads(summary)


__all__ = [
    "Error",
    "InvalidCoverError",
    "Poset",
    "SizeLimitError",
    "brute_force_n2",
    "canonical_key",
    "chain_poset",
    "chain_sort",
    "classify",
    "enumerate_posets",
    "format_poset",
    "grid_cover_pair",
    "grid_poset",
    "nmu_check",
    "oracle",
    "parse_poset",
]
