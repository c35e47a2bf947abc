"""Exact sequence probability of a label under per-frame token probabilities.

The probability of a label sequence is the sum, over every frame-level
alignment that collapses to it, of the product of per-frame token
probabilities. Two independent routes compute it:

prob_brute_force()          -- enumerates the full token^frames space and
                               filters (small inputs only; the test oracle).
prob_forward()              -- dynamic program over the blank-augmented label;
                               works for arbitrary lengths.
ctc_loss()                  -- negative log of prob_forward.
best_alignment_brute_force()-- argmax single alignment for a label, by the
                               same enumeration (oracle for decoder output).
enumerate_alignments()      -- the filtered alignment set itself.

The brute-force routes deliberately share no recurrence with the forward pass
so each can check the other.
"""

from __future__ import annotations

import numpy as np

from .core import BLANK_ID, Alphabet, InvalidTokenError, ProbMatrix, TokenSeq, collapse
from .logspace import NEG_INF, log_add, log_matrix, log_sum

#: Enumeration guards: the oracle refuses inputs beyond this scale.
MAX_ORACLE_FRAMES = 16
MAX_ORACLE_SPACE = 2**24

_CHUNK_ROWS = 1 << 18


class OracleSizeError(ValueError):
    """The brute-force enumeration would exceed its scale guard."""


class NoAlignmentError(ValueError):
    """No alignment of the requested length collapses to the label."""


def _check_label(label, alphabet: Alphabet) -> TokenSeq:
    label = tuple(int(t) for t in label)
    for tok in label:
        alphabet.validate_token(tok)
        if tok == BLANK_ID:
            raise InvalidTokenError("label sequences must be blank-free")
    return label


def _check_oracle_scale(n_frames: int, n_tokens: int) -> None:
    if n_frames > MAX_ORACLE_FRAMES or n_tokens**n_frames > MAX_ORACLE_SPACE:
        raise OracleSizeError(
            f"{n_tokens}^{n_frames} alignments exceed the oracle guard "
            f"(frames <= {MAX_ORACLE_FRAMES}, space <= 2^24)"
        )


def _matching_alignments_array(label: TokenSeq, n_frames: int, n_tokens: int) -> np.ndarray:
    """All alignments of length n_frames collapsing to label, as an int array.

    Walks the full n_tokens**n_frames space in lexicographic order, in chunks,
    and keeps rows whose non-blank run heads spell the label. A run head is a
    frame holding a non-blank token that differs from the previous frame's
    token; the run heads of an alignment, in order, are exactly its collapse.
    """
    shape = (n_tokens,) * n_frames
    total = n_tokens**n_frames
    lab = np.asarray(label, dtype=np.int64)
    n_lab = lab.size
    matches = []
    for lo in range(0, total, _CHUNK_ROWS):
        hi = min(lo + _CHUNK_ROWS, total)
        rows = np.stack(
            np.unravel_index(np.arange(lo, hi, dtype=np.int64), shape), axis=1
        )
        nonblank = rows != BLANK_ID
        head = nonblank.copy()
        head[:, 1:] &= rows[:, 1:] != rows[:, :-1]
        counts = head.sum(axis=1)
        cand = counts == n_lab
        if not cand.any():
            continue
        rows = rows[cand]
        head = head[cand]
        if n_lab == 0:
            matches.append(rows)
            continue
        spelled = rows[head].reshape(-1, n_lab)
        rows = rows[(spelled == lab).all(axis=1)]
        if rows.size:
            matches.append(rows)
    if not matches:
        return np.empty((0, n_frames), dtype=np.int64)
    return np.concatenate(matches, axis=0)


def enumerate_alignments(label, n_frames: int, alphabet: Alphabet) -> list[TokenSeq]:
    """Every alignment of the given length that collapses to the label.

    Found by filtering the full alphabet^frames enumeration, so it is
    independent of any dynamic-programming shortcut. Raises OracleSizeError
    beyond the scale guard. The returned list is in lexicographic order and
    may be empty (e.g. two equal adjacent labels cannot fit in two frames).
    """
    label = _check_label(label, alphabet)
    _check_oracle_scale(n_frames, alphabet.size)
    rows = _matching_alignments_array(label, n_frames, alphabet.size)
    return [tuple(int(t) for t in row) for row in rows]


def _alignment_log_probs(m: ProbMatrix, rows: np.ndarray) -> np.ndarray:
    log_p = log_matrix(m.probs)
    frame_idx = np.arange(m.frames)
    with np.errstate(invalid="ignore"):
        return log_p[frame_idx, rows].sum(axis=1)


def prob_brute_force(m: ProbMatrix, label, alphabet: Alphabet) -> float:
    """Probability of the label by explicit enumeration (log-space sum).

    Returns 0.0 when no alignment exists. Subject to the oracle scale guard.
    """
    label = _check_label(label, alphabet)
    _check_oracle_scale(m.frames, alphabet.size)
    rows = _matching_alignments_array(label, m.frames, alphabet.size)
    if rows.shape[0] == 0:
        return 0.0
    return float(np.exp(log_sum(_alignment_log_probs(m, rows))))


def best_alignment_brute_force(
    m: ProbMatrix, label, alphabet: Alphabet
) -> tuple[TokenSeq, float]:
    """Most probable single alignment for the label, with its probability.

    Ties resolve to the lexicographically smallest token sequence (the
    enumeration is lexicographic and argmax keeps the first maximum).
    Raises NoAlignmentError when the label cannot be embedded at all.
    """
    label = _check_label(label, alphabet)
    _check_oracle_scale(m.frames, alphabet.size)
    rows = _matching_alignments_array(label, m.frames, alphabet.size)
    if rows.shape[0] == 0:
        raise NoAlignmentError(f"label {label} has no alignment in {m.frames} frames")
    scores = _alignment_log_probs(m, rows)
    best = int(np.argmax(scores))
    return tuple(int(t) for t in rows[best]), float(np.exp(scores[best]))


def log_prob_forward(m: ProbMatrix, label, alphabet: Alphabet) -> float:
    """Log-probability of the label via the forward pass.

    Runs over the blank-augmented state sequence blank,y1,blank,y2,...,blank.
    A state may be entered from itself, its predecessor, or (for a non-blank
    state whose label differs from the one two back) from two states back --
    the last rule is what forbids silently merging equal adjacent labels.
    """
    label = _check_label(label, alphabet)
    log_p = log_matrix(m.probs)
    t_total = m.frames
    if len(label) == 0:
        return float(log_p[:, BLANK_ID].sum())
    aug = np.empty(2 * len(label) + 1, dtype=np.int64)
    aug[0::2] = BLANK_ID
    aug[1::2] = label
    n_states = aug.size
    can_skip = np.zeros(n_states, dtype=bool)
    can_skip[3::2] = aug[3::2] != aug[1:-2:2]

    alpha = np.full(n_states, NEG_INF)
    alpha[0] = log_p[0, BLANK_ID]
    alpha[1] = log_p[0, aug[1]]
    shifted = np.empty(n_states)
    skipped = np.empty(n_states)
    for t in range(1, t_total):
        shifted[0] = NEG_INF
        shifted[1:] = alpha[:-1]
        skipped[:2] = NEG_INF
        skipped[2:] = alpha[:-2]
        skipped[~can_skip] = NEG_INF
        stacked = np.stack((alpha, shifted, skipped))
        hi = stacked.max(axis=0)
        with np.errstate(invalid="ignore"):
            merged = hi + np.log(np.exp(stacked - hi).sum(axis=0))
        merged[hi == NEG_INF] = NEG_INF
        alpha = merged + log_p[t, aug]
    return log_add(float(alpha[-1]), float(alpha[-2]))


def prob_forward(m: ProbMatrix, label, alphabet: Alphabet) -> float:
    """Probability of the label via the forward pass; 0.0 when impossible."""
    lp = log_prob_forward(m, label, alphabet)
    return float(np.exp(lp)) if lp != NEG_INF else 0.0


def ctc_loss(m: ProbMatrix, label, alphabet: Alphabet) -> float:
    """Negative log-probability of the label; +inf when the label is impossible."""
    lp = log_prob_forward(m, label, alphabet)
    return float("inf") if lp == NEG_INF else -lp
