"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise (or
when ``ABMAPS_PURE_PYTHON=1``) the pure-Python twin is used. Both expose
max_clique, hom_search, pair_profile and count_violations with identical
results.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("ABMAPS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    impl = _compiled
    BACKEND = "compiled"
else:
    impl = _kernels_py
    BACKEND = "python"

NO_PAIR = _kernels_py.NO_PAIR


def max_clique(rows, lower: int, budget: int):
    return impl.max_clique(rows, lower, budget)


def hom_search(src_rows, dst_rows, order, pin_first: bool, budget: int):
    return impl.hom_search(src_rows, dst_rows, order, pin_first, budget)


def pair_profile(images, k: int):
    return impl.pair_profile(images, k)


def count_violations(images, members, a: int, b: int) -> int:
    return int(impl.count_violations(images, members, a, b))
