"""Named, independently seeded random streams."""
import zlib

import numpy as np


def derive_seed(master_seed: int, case_id: int, stream: str) -> int:
    """Deterministic 64-bit seed for (master seed, case id, stream name)."""
    entropy = [int(master_seed), int(case_id), zlib.crc32(stream.encode("utf-8"))]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])


def make_rng(master_seed: int, case_id: int, stream: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, case_id, stream))
