"""
Seeded, platform-independent selection of basis elements.

The generator is splitmix64: a 64-bit state advanced by a fixed odd constant
and passed through a fixed mixing function. Index i of the sample is the i-th
distinct draw reduced modulo the population size.
"""
from typing import Iterator, List, Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int) -> Iterator[int]:
    state = seed & MASK64
    while True:
        state = (state + GOLDEN_GAMMA) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def sample_indices(population: int, size: int, seed: int) -> List[int]:
    """Up to ``size`` distinct indices in range(population), sorted."""
    if size >= population:
        return list(range(population))
    chosen: set[int] = set()
    for value in splitmix64(seed):
        chosen.add(value % population)
        if len(chosen) == size:
            break
    return sorted(chosen)


def sample(items: Sequence[T], size: int, seed: int) -> List[T]:
    return [items[i] for i in sample_indices(len(items), size, seed)]
