"""
Seed derivation.

Every random stream of a run is derived from the master seed and a tuple of
integer keys, so results do not depend on scheduling order.
"""

from enum import IntEnum

import numpy as np


class Stream(IntEnum):
    """Tags separating the independent random streams of a run."""

    PARTITION = 0
    SPLIT = 1
    DEV_SET = 2
    TEST_SET = 3
    INIT = 4
    SELECTION = 5
    LOCAL_TRAINING = 6
    SUBSAMPLE = 7
    SYNTHETIC = 8


def derive_seed(*keys: int) -> int:
    """Deterministic 64-bit seed from non-negative integer keys."""
    sequence = np.random.SeedSequence([int(key) for key in keys])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def run_seed(master_seed: int, repeat_index: int) -> int:
    """Seed of one repetition of an experiment."""
    return derive_seed(master_seed, repeat_index)


def gateway_stream_seed(seed: int, gateway_id: int, round_index: int) -> int:
    """Seed of one gateway's local training in one global round."""
    return derive_seed(seed, Stream.LOCAL_TRAINING, gateway_id, round_index)


def stream_rng(seed: int, stream: Stream, *keys: int) -> np.random.Generator:
    """Generator of one tagged stream, optionally keyed further."""
    return np.random.default_rng(derive_seed(seed, stream, *keys))
