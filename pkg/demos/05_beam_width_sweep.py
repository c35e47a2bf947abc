"""How beam width changes the decoded answer.

Width 1 degenerates to following the locally best token per frame; wider
beams remember alternative labels and combine the probability mass of their
alignments. On confident streams the answer stops changing at small widths,
which is why a small default width is enough in practice.
"""

import numpy as np

from ctcdetect import Alphabet, ProbMatrix, SyntheticScript, gen_synthetic, sweep_beam_width

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

print("Ambiguous eight-frame stream:")
print(f"{'width':>6}  {'top label':<12} {'retained mass':>13}")
for row in sweep_beam_width(matrix, alphabet, (1, 2, 3, 5, 10, 100)):
    label = ",".join(alphabet.name_of(t) for t in row.top_label)
    print(f"{row.beam_width:>6}  [{label}]{'':<{max(0, 10 - len(label))}} "
          f"{row.top_probability:>13.4f}")
print("""
Width 1 answers [E,D] like greedy decoding; width 3 finds [E,E,D], whose
summed mass is higher. Mid widths can wobble (pruning cuts labels unevenly)
before wide beams settle on the exact answer.
""")

noisy_script = SyntheticScript(
    total_frames=300,
    events=((1, 40), (2, 100), (1, 160), (1, 230)),
    noise_level=0.02,
    seed=3,
)
noisy, truth = gen_synthetic(noisy_script, alphabet, sample_rate_hz=10.0)
print("Lightly noisy synthetic recording, scored against its script:")
print(f"{'width':>6}  {'top label':<14} {'F1':>5}")
from ctcdetect import WindowSpec

spec = WindowSpec.from_seconds(8.0, 10.0)
for row in sweep_beam_width(noisy, alphabet, (1, 2, 3, 5), window_spec=spec, ground_truth=truth):
    label = ",".join(alphabet.name_of(t) for t in row.top_label)
    print(f"{row.beam_width:>6}  [{label}]{'':<{max(0, 12 - len(label))}} {row.f1:>5.2f}")
print("""
Confident streams decode the same at every width. Heavy diffuse noise is a
different regime: a label pools the mass of a spurious event over every
background frame of a window, so wide beams start preferring labels with
extra events while width 1 (greedy) only reacts to frames a class outright
wins. Keep windows short or probabilities confident when widening the beam.
""")
