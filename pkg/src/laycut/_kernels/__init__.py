"""Kernel backend selection.

Two interchangeable implementations of the hot search kernels exist: the
compiled extension ``_core`` (Cython) and the pure-Python reference ``pure``.
Both expose ``solve_knapsack`` and ``construct_lay`` with identical, bit-exact
behavior. The compiled one is preferred when importable; set
``LAYCUT_BACKEND=pure`` or ``LAYCUT_BACKEND=ext`` to force a choice.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _core as ext  # type: ignore[attr-defined]
except ImportError:  # extension not built; pure fallback
    ext = None  # type: ignore[assignment]

_BACKENDS = {"pure": pure}
if ext is not None:
    _BACKENDS["ext"] = ext


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str):
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None


_requested = os.environ.get("LAYCUT_BACKEND", "").strip().lower()
if _requested:
    active = get_backend(_requested)  # unknown or unbuilt name fails loudly
else:
    active = _BACKENDS.get("ext", pure)

BACKEND: str = "ext" if active is not pure else "pure"
