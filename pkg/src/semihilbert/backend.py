"""Selection between the compiled sweep kernel and the numpy fallback.

The compiled extension is preferred when importable.  ``use`` switches the
active backend globally; it exists for tests and benchmarks and is not
thread-safe, so leave it alone in library code.
"""

from __future__ import annotations

from . import _sweep_fallback

try:
    from . import _sweepkern
except ImportError:  # pragma: no cover - depends on the build
    _sweepkern = None

_ACTIVE = _sweepkern if _sweepkern is not None else _sweep_fallback


def available() -> tuple[str, ...]:
    """Names of the importable backends."""
    names = []
    if _sweepkern is not None:
        names.append(_sweepkern.name)
    names.append(_sweep_fallback.name)
    return tuple(names)


def current() -> str:
    """Name of the active backend."""
    return _ACTIVE.name


def get(name_: str):
    """Backend module by name ('compiled' or 'python')."""
    if name_ == _sweep_fallback.name:
        return _sweep_fallback
    if _sweepkern is not None and name_ == _sweepkern.name:
        return _sweepkern
    raise ValueError(f"backend {name_!r} is not available")


def use(name_: str) -> None:
    """Switch the active backend (test/benchmark hook)."""
    global _ACTIVE
    _ACTIVE = get(name_)


def sweep_extremes(B, grid_points: int, refine_tol: float, max_refine_iters: int):
    """Delegate to the active backend."""
    return _ACTIVE.sweep_extremes(B, grid_points, refine_tol, max_refine_iters)
