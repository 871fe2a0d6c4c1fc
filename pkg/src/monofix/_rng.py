"""Deterministic seed derivation.

Every random choice in the library flows from one root seed through labelled
children, so repeated runs with the same seed reproduce byte for byte.
"""
from __future__ import annotations

import hashlib
import random


def derive_seed(root: int, label: str) -> int:
    digest = hashlib.sha256(f"{root}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def child_rng(root: int, label: str) -> random.Random:
    return random.Random(derive_seed(root, label))
