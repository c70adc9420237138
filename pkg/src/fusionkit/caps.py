"""Resource caps shared by every module.

Caps fail loudly: exceeding one raises :class:`CapError` instead of
truncating a search.
"""

import json
import os
from dataclasses import asdict, dataclass, fields, replace


class CapError(RuntimeError):
    """A resource cap was exceeded."""


@dataclass(frozen=True)
class Caps:
    max_group_order: int = 10000
    max_sylow_order: int = 256
    max_aut_order: int = 256
    max_functor_candidates: int = 10000
    max_functor_objects: int = 12

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")

    def override(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self):
        return asdict(self)


def default_caps():
    """Defaults, with ``FUSIONKIT_CAPS`` (a JSON object) applied on top."""
    raw = os.environ.get("FUSIONKIT_CAPS")
    caps = Caps()
    if raw:
        caps = caps.override(**json.loads(raw))
    return caps


CAPS = default_caps()


def set_caps(caps):
    """Replace the process-wide caps; returns the previous value."""
    global CAPS
    old, CAPS = CAPS, caps
    return old
