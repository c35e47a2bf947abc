"""Alignments, labels, and exact sequence probability.

A frame-level alignment assigns one token per frame; collapsing it (merge
repeats, drop blanks) yields the event label sequence. Many alignments
collapse to the same label, and the probability of a label is the summed
probability of all of them. This walks a small eight-frame example through
the collapse rule, the brute-force enumeration, and the forward pass.
"""

import numpy as np

from ctcdetect import (
    Alphabet,
    ProbMatrix,
    collapse,
    ctc_loss,
    enumerate_alignments,
    prob_brute_force,
    prob_forward,
)

alphabet = Alphabet.from_names(("E", "D"))
E, D = 1, 2

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

print("One alignment per frame, collapsed to its label:")
alignment = (E, E, 0, E, E, D, D, D)
names = [alphabet.name_of(t) for t in alignment]
label = collapse(alignment, alphabet)
print(f"  {names} -> {[alphabet.name_of(t) for t in label]}")
print("  note [E]+blank+[E] stays two events: ", end="")
print(collapse((E, 0, E), alphabet), "\n")

print("All 8-frame alignments that collapse to [E, E, D]:")
members = enumerate_alignments((E, E, D), matrix.frames, alphabet)
print(f"  {len(members)} alignments; the first three:")
for a in members[:3]:
    print("   ", "".join(alphabet.name_of(t) for t in a))
print()

print("Label probability = sum over those alignments of per-frame products:")
for label in ((E, D), (E, E, D)):
    pretty = ",".join(alphabet.name_of(t) for t in label)
    bf = prob_brute_force(matrix, label, alphabet)
    fw = prob_forward(matrix, label, alphabet)
    print(f"  p([{pretty}]) = {bf:.8f} (enumeration) = {fw:.8f} (forward pass)")
print()

print("The training loss is the negative log of that probability:")
print(f"  loss([E,E,D]) = {ctc_loss(matrix, (E, E, D), alphabet):.4f}")
print(f"  loss of an impossible label (two E in two frames) = "
      f"{ctc_loss(ProbMatrix(matrix.probs[:2]), (E, E), alphabet)}")
