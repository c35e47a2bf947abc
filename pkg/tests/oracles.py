"""Independent brute-force oracles for the test suite.

Everything here recomputes results from first principles (full enumeration,
linear-space products) without touching the library's own enumeration or
dynamic-programming internals, so the two sides can check each other.
"""

from __future__ import annotations

import numpy as np


def collapse_plain(tokens) -> tuple[int, ...]:
    out = []
    prev = None
    for t in tokens:
        if t != prev:
            out.append(t)
        prev = t
    return tuple(x for x in out if x != 0)


def _all_alignments(n_frames: int, n_tokens: int, chunk: int = 1 << 19):
    total = n_tokens**n_frames
    shape = (n_tokens,) * n_frames
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        yield np.stack(np.unravel_index(idx, shape), axis=1)


def brute_label_probs(probs: np.ndarray) -> dict[tuple[int, ...], float]:
    """Probability of every reachable label, by grouping all alignments.

    Linear-space products (fine at oracle scale), grouped by the collapsed
    label of each alignment. Values over all labels sum to 1 for any
    row-stochastic input.
    """
    n_frames, n_tokens = probs.shape
    frame_idx = np.arange(n_frames)
    acc: dict[tuple[int, ...], float] = {}
    for rows in _all_alignments(n_frames, n_tokens):
        prods = probs[frame_idx, rows].prod(axis=1)
        for row, p in zip(rows.tolist(), prods.tolist()):
            key = collapse_plain(row)
            acc[key] = acc.get(key, 0.0) + p
    return acc


def brute_argmax_label(label_probs: dict) -> tuple[int, ...]:
    """Most probable label; exact ties go to the lexicographically smallest."""
    best = max(label_probs.values())
    return min(k for k, v in label_probs.items() if v == best)


def random_stochastic(rng: np.random.Generator, n_frames: int, n_tokens: int) -> np.ndarray:
    return rng.dirichlet(np.ones(n_tokens), size=n_frames)


def random_confident(
    rng: np.random.Generator, n_frames: int, n_tokens: int, floor: float = 0.75
) -> np.ndarray:
    """Rows with one dominant token of probability >= floor (no per-frame ties).

    Mimics the confident per-frame distributions that trained sequence models
    emit; on such input the per-frame argmax path dominates its label's mass.
    """
    m = np.empty((n_frames, n_tokens))
    for t in range(n_frames):
        dom = int(rng.integers(n_tokens))
        p = float(rng.uniform(floor, 0.995))
        rest = rng.dirichlet(np.ones(n_tokens - 1)) * (1.0 - p)
        m[t] = np.insert(rest, dom, p)
    return m
