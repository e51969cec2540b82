"""Single-line fault injection used by the mutation test harness.

Each named fault corrupts one step of the core algebra.  The verification
suites are required to catch every one of them; production code runs with
the set empty.  Activating or clearing faults bumps a generation counter so
weight caches built under a different fault set are discarded.
"""

from contextlib import contextmanager

FAULTS = (
    "cube-weight-parity-offset",   # cube weight off by one on odd-dimensional cubes
    "delta-coface-shift-sign",     # coboundary shifts the base corner the wrong way
    "b-parity-skip",               # B drops every other fiber of the collapsed coordinate
    "c-drop-quadratic",            # exponent formula loses its quadratic term
    "c-always-first-case",         # exponent formula ignores the case analysis
)

_active: set = set()
generation = 0


def is_active(name: str) -> bool:
    return name in _active


def any_active() -> bool:
    return bool(_active)


def activate(name: str) -> None:
    global generation
    if name not in FAULTS:
        raise ValueError("unknown fault %r" % name)
    _active.add(name)
    generation += 1


def clear() -> None:
    global generation
    if _active:
        _active.clear()
        generation += 1


@contextmanager
def injected(name: str):
    """Context manager enabling a single fault; always clears on exit."""
    activate(name)
    try:
        yield
    finally:
        clear()
