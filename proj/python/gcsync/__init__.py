"""Golay-assisted frame and frequency synchronization core."""

from ._gcsync import (
    GcsyncError,
    build_frame,
    golay_verify,
    pn_sequence,
    simulate_and_sync,
    training_pair,
)

__all__ = [
    "GcsyncError",
    "build_frame",
    "golay_verify",
    "pn_sequence",
    "simulate_and_sync",
    "training_pair",
]
