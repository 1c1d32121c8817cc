"""Named random substreams derived from one root seed."""

import zlib

import numpy as np

DEFAULT_SEED = 1337


def substream_seed(root, name, *index):
    """Return a 64-bit integer seed for the stream ``name`` (plus optional indices)."""
    key = (zlib.crc32(name.encode("utf-8")),) + tuple(int(i) for i in index)
    ss = np.random.SeedSequence(int(root) & 0xFFFFFFFFFFFFFFFF, spawn_key=key)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def substream(root, name, *index):
    return np.random.default_rng(substream_seed(root, name, *index))
