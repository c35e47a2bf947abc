"""Sliding-window decoding of long recordings into sparse detections.

Long probability streams are decoded window by window, the per-window
alignments are fused frame-wise by majority vote, and maximal non-blank runs
of the voted stream become one detection each, stamped at the run's median
frame. Unlike gap-constrained peak pickers, nothing here enforces a minimum
spacing between detections.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BLANK_ID, Alphabet, ParameterError, ProbMatrix, TokenSeq
from .decode import extended_prefix_beam_search, greedy_decode

DECODE_METHODS = ("greedy", "extended-beam")


class CoverageError(ValueError):
    """A frame is covered by no window alignment."""


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window geometry in frames."""

    window_frames: int
    stride_frames: int
    sample_rate_hz: float

    def __post_init__(self) -> None:
        if self.window_frames < 1:
            raise ParameterError(f"window must span >= 1 frame, got {self.window_frames}")
        if not 1 <= self.stride_frames <= self.window_frames:
            raise ParameterError(
                f"stride must be in [1, window] frames, got {self.stride_frames}"
            )
        if self.sample_rate_hz <= 0:
            raise ParameterError(f"sample rate must be positive, got {self.sample_rate_hz}")

    @classmethod
    def from_seconds(
        cls, window_s: float, sample_rate_hz: float, stride_s: float | None = None
    ) -> "WindowSpec":
        """Build a spec from seconds; stride defaults to half the window."""
        window = max(1, round(window_s * sample_rate_hz))
        stride = window // 2 if stride_s is None else round(stride_s * sample_rate_hz)
        return cls(window, max(1, stride), sample_rate_hz)


@dataclass(frozen=True)
class Detection:
    """One detected event: class, frame index, and time in seconds."""

    class_id: int
    frame: int
    time_s: float

    def __post_init__(self) -> None:
        if self.class_id == BLANK_ID:
            raise ParameterError("detections carry event classes, not blank")


def slide_windows(m: ProbMatrix, spec: WindowSpec) -> list[tuple[int, ProbMatrix]]:
    """Split a recording into (start_frame, window) pairs covering every frame.

    Windows start at 0, stride, 2*stride, ...; when the stride grid does not
    land a window exactly on the final frame, one extra window is anchored to
    end there. Recordings shorter than the window yield a single full-length
    window.
    """
    total = m.frames
    if total <= spec.window_frames:
        return [(0, m)]
    last_start = total - spec.window_frames
    starts = list(range(0, last_start + 1, spec.stride_frames))
    if starts[-1] != last_start:
        starts.append(last_start)
    return [(s, m.window(s, s + spec.window_frames)) for s in starts]


def majority_vote(
    alignments: list[tuple[int, TokenSeq]], total_frames: int, alphabet: Alphabet
) -> np.ndarray:
    """Fuse overlapping window alignments into one frame-level token stream.

    Each frame takes the token voted by the most windows covering it. A frame
    whose lead is shared (including a class tied with blank) falls back to
    blank: disagreeing windows should not fabricate an event. Raises
    CoverageError if any frame has no vote.
    """
    counts = np.zeros((total_frames, alphabet.size), dtype=np.int64)
    for start, tokens in alignments:
        idx = np.asarray(tokens, dtype=np.int64)
        if start < 0 or start + idx.size > total_frames:
            raise ParameterError(
                f"alignment at {start} (+{idx.size}) falls outside {total_frames} frames"
            )
        counts[np.arange(start, start + idx.size), idx] += 1
    uncovered = np.flatnonzero(counts.sum(axis=1) == 0)
    if uncovered.size:
        raise CoverageError(f"frame {uncovered[0]} received no window vote")
    best = counts.max(axis=1)
    tied = (counts == best[:, None]).sum(axis=1) > 1
    return np.where(tied, BLANK_ID, counts.argmax(axis=1))


def eventize(frame_tokens, sample_rate_hz: float) -> list[Detection]:
    """Collapse a frame-level token stream into sparse detections.

    Every maximal run of one non-blank token becomes a single detection at the
    run's median frame (the lower of the two middles for even runs).
    """
    tokens = np.asarray(frame_tokens, dtype=np.int64)
    if tokens.size == 0:
        return []
    boundaries = np.flatnonzero(np.diff(tokens)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [tokens.size]))
    detections = []
    for lo, hi in zip(starts, ends):
        cls = int(tokens[lo])
        if cls == BLANK_ID:
            continue
        frame = int(lo + (hi - 1 - lo) // 2)
        detections.append(Detection(cls, frame, frame / sample_rate_hz))
    return detections


def detect_pipeline(
    m: ProbMatrix,
    spec: WindowSpec,
    alphabet: Alphabet,
    method: str = "extended-beam",
    beam_width: int = 3,
) -> list[Detection]:
    """Full recording-to-detections pipeline.

    Slides windows over the recording, decodes each window's top alignment
    (greedy or extended beam search), majority-votes the overlapping
    alignments frame-wise, and eventizes the voted stream.
    """
    if method not in DECODE_METHODS:
        raise ParameterError(f"method must be one of {DECODE_METHODS}, got {method!r}")
    aligned = []
    for start, window in slide_windows(m, spec):
        if method == "greedy":
            result = greedy_decode(window, alphabet)
        else:
            result = extended_prefix_beam_search(window, alphabet, beam_width)
        aligned.append((start, result.top.alignment))
    voted = majority_vote(aligned, m.frames, alphabet)
    return eventize(voted, m.sample_rate_hz)
