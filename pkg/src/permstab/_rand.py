"""Deterministic, platform-independent random streams.

All randomness flows from one 64-bit seed: a stream is keyed by the seed
plus an arbitrary tuple of labels, hashed with SHA-256 into a generator
seed.  Streams for different keys are independent, and the same key
always yields the same sequence, so instances can run in any order or in
parallel without changing results.
"""

from __future__ import annotations

import hashlib
import random
from typing import Any


def stream(seed: int, *key: Any) -> random.Random:
    material = repr((int(seed), key)).encode()
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))
