"""The seeded random graph corpus used by the property and selfcheck suites."""

from __future__ import annotations

from .generators import random_strongly_connected
from .graph import DiGraph

CORPUS_SIZE = 50
DENSITIES = (0.0, 0.15, 0.3, 0.5, 0.8)


def corpus_params(size: int = CORPUS_SIZE) -> list[tuple[int, float, int]]:
    """(n, density, seed) triples; n cycles through 4..7, density through DENSITIES.

    The two cycles have coprime lengths, so every (n, density) combination
    shows up at least twice in the default 50 graphs.
    """
    return [(4 + k % 4, DENSITIES[k % len(DENSITIES)], 1000 + k) for k in range(size)]


def random_corpus(size: int = CORPUS_SIZE) -> list[tuple[str, DiGraph]]:
    return [
        (f"random:{n},{density},{seed}", random_strongly_connected(n, density, seed))
        for n, density, seed in corpus_params(size)
    ]
