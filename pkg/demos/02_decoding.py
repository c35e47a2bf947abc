"""Greedy decoding versus prefix beam search, with and without alignments.

Greedy decoding takes the single most probable token per frame, which can
pick a label whose total probability (summed over all of its alignments) is
inferior. Prefix beam search tracks that summed mass per candidate label and
finds the better one, but forgets where events sit in time. The extended
search keeps, for every candidate label, its best alignment ending in blank
and in non-blank, so the winning label comes out with event timings attached.
"""

import numpy as np

from ctcdetect import (
    Alphabet,
    ProbMatrix,
    extended_prefix_beam_search,
    greedy_decode,
    prefix_beam_search,
    prob_brute_force,
)

alphabet = Alphabet.from_names(("E", "D"))
matrix = ProbMatrix(
    np.array(
        [
            [0.30, 0.50, 0.20],
            [0.25, 0.60, 0.15],
            [0.60, 0.20, 0.20],
            [0.40, 0.35, 0.25],
            [0.50, 0.40, 0.10],
            [0.30, 0.30, 0.40],
            [0.10, 0.20, 0.70],
            [0.20, 0.30, 0.50],
        ]
    ),
    sample_rate_hz=1.0,
)


def fmt(tokens):
    return "".join(alphabet.name_of(t) for t in tokens)


greedy = greedy_decode(matrix, alphabet).top
print("Greedy decoding:")
print(f"  alignment {fmt(greedy.alignment)} -> label [{fmt(greedy.label)}]")
print(f"  its label's true probability: "
      f"{prob_brute_force(matrix, greedy.label, alphabet):.4f}\n")

print("Prefix beam search (width 3) ranks whole labels by summed mass:")
for label, prob in prefix_beam_search(matrix, alphabet, 3):
    print(f"  [{fmt(label) or '-'}]  retained mass {prob:.4f}  "
          f"(exact {prob_brute_force(matrix, label, alphabet):.4f})")
print("  ... but returns no alignment, so no event timings.\n")

ext = extended_prefix_beam_search(matrix, alphabet, 3).top
print("Extended prefix beam search returns the alignment too:")
print(f"  label [{fmt(ext.label)}] via alignment {fmt(ext.alignment)}")
print(f"  alignment probability {ext.alignment_probability:.5f}\n")

print("With an effectively unlimited width nothing is pruned and the")
print("search is exact:")
full = extended_prefix_beam_search(matrix, alphabet, 10_000)
top = full.top
print(f"  top label [{fmt(top.label)}] mass {top.probability:.8f} "
      f"= exact {prob_brute_force(matrix, top.label, alphabet):.8f}")
print(f"  mass summed over all {len(full.hypotheses)} surviving labels: "
      f"{sum(h.probability for h in full.hypotheses):.12f}")
