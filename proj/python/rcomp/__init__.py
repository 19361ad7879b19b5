"""Online run-length BWT construction."""

from ._rcomp import (
    DEFAULT_ALPHA,
    SENTINEL,
    Builder,
    CorruptState,
    InvalidAlpha,
    MalformedFile,
    MalformedRlbwt,
    RcompError,
    SentinelInput,
    build,
    bwt_reference,
    dumps,
    invert,
    loads,
)

__all__ = [
    "DEFAULT_ALPHA",
    "SENTINEL",
    "Builder",
    "CorruptState",
    "InvalidAlpha",
    "MalformedFile",
    "MalformedRlbwt",
    "RcompError",
    "SentinelInput",
    "build",
    "bwt_reference",
    "dumps",
    "invert",
    "loads",
    "render",
]


def render(runs):
    """Format runs as '(a,1)(b,2)...', using '$' for the sentinel."""
    return "".join("({},{})".format("$" if s == SENTINEL else chr(s - 1), n) for s, n in runs)
