"""Streaming edge coloring toolkit."""

from ._core import (
    StreamColorError,
    bench,
    color_offline,
    generate,
    kout,
    palette_period,
    run,
    stream_edges,
    verify,
)

__all__ = [
    "StreamColorError",
    "bench",
    "color_offline",
    "generate",
    "kout",
    "palette_period",
    "run",
    "stream_edges",
    "verify",
]
