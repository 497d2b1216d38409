"""End-to-end helpers: arrangement -> monodromy -> presentation."""
from __future__ import annotations

from .geometry import Arrangement, require_valid, shear_to_generic
from .monodromy import Monodromy, sort_events
from .presentation import Presentation, basepoint_move, zvk


def monodromy_of(arr: Arrangement, shear: bool = True) -> Monodromy:
    require_valid(arr)
    if shear:
        arr = shear_to_generic(arr)
    return sort_events(arr, validated=True)


def presentation_of(arr: Arrangement, shear: bool = True) -> tuple[Monodromy, Presentation]:
    mono = monodromy_of(arr, shear)
    return mono, zvk(mono)


def move_basepoint(p: Presentation, mono: Monodromy, event_index: int, side: str) -> Presentation:
    """Relocate the base point just left or just right of event x_{event_index}.

    The base point walks leftwards from its default position, one event at a time.
    """
    if not 1 <= event_index <= len(mono.events):
        raise ValueError(f"no event x{event_index}")
    last = event_index if side == "left" else event_index - 1
    pos = 0
    for ev in mono.events[:last]:
        mv = basepoint_move(p, mono, ev, "left", pos)
        p, pos = mv.presentation, mv.position
    return p
