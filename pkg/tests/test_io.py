import json

import numpy as np
import pytest

from ctcdetect import Alphabet, Detection, GroundTruthEvent, gen_synthetic, SyntheticScript
from ctcdetect.io import (
    FormatError,
    read_detections_csv,
    read_gt_csv,
    read_prob_csv,
    read_sidecar_rate,
    read_velocity_csv,
    write_detections_csv,
    write_gt_csv,
    write_prob_csv,
)

from conftest import D, E


class TestProbCsv:
    def test_round_trip_with_sidecar(self, tmp_path, worked_matrix, worked_alphabet):
        path = tmp_path / "probs.csv"
        write_prob_csv(path, worked_matrix, worked_alphabet)
        m, alphabet = read_prob_csv(path)
        assert alphabet.class_names == ("E", "D")
        assert m.sample_rate_hz == worked_matrix.sample_rate_hz
        assert np.allclose(m.probs, worked_matrix.probs, atol=1e-12)

    def test_explicit_rate_wins_over_sidecar(self, tmp_path, worked_matrix, worked_alphabet):
        path = tmp_path / "probs.csv"
        write_prob_csv(path, worked_matrix, worked_alphabet)
        m, _ = read_prob_csv(path, sample_rate_hz=25.0)
        assert m.sample_rate_hz == 25.0

    def test_missing_sidecar_is_none(self, tmp_path):
        assert read_sidecar_rate(tmp_path / "nope.csv") is None

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("frame,p_blank,p_E\n0,0.5,0.5\n")
        with pytest.raises(FormatError):
            read_prob_csv(path)

    def test_bad_value_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,p_blank,p_E\n0,0.5,0.5\n1,oops,0.5\n")
        with pytest.raises(FormatError, match=":3"):
            read_prob_csv(path)

    def test_renormalize_passthrough(self, tmp_path):
        path = tmp_path / "near.csv"
        path.write_text("t,p_blank,p_E\n0,0.5002,0.5\n")
        m, _ = read_prob_csv(path, renormalize=True)
        assert m.probs.sum() == pytest.approx(1.0, abs=1e-12)

    def test_corrupt_sidecar_rejected(self, tmp_path, worked_matrix, worked_alphabet):
        path = tmp_path / "probs.csv"
        write_prob_csv(path, worked_matrix, worked_alphabet)
        (tmp_path / "probs.csv.json").write_text("{not json")
        with pytest.raises(FormatError):
            read_prob_csv(path)


class TestDetectionCsv:
    def test_round_trip(self, tmp_path, worked_alphabet):
        path = tmp_path / "dets.csv"
        detections = [Detection(E, 10, 1.0), Detection(D, 64, 6.4)]
        write_detections_csv(path, detections, worked_alphabet)
        rows = read_detections_csv(path)
        assert rows == [(10, 1.0, "E"), (64, 6.4, "D")]

    def test_header_checked(self, tmp_path):
        path = tmp_path / "dets.csv"
        path.write_text("a,b,c\n")
        with pytest.raises(FormatError):
            read_detections_csv(path)


class TestGtCsv:
    def test_round_trip(self, tmp_path, worked_alphabet):
        path = tmp_path / "gt.csv"
        events = [GroundTruthEvent(E, 9, 11), GroundTruthEvent(D, 39, 41)]
        write_gt_csv(path, events, worked_alphabet)
        assert read_gt_csv(path) == [(9, 11, "E"), (39, 41, "D")]


class TestVelocityCsv:
    def test_reads_series(self, tmp_path):
        path = tmp_path / "gyro.csv"
        path.write_text("t,roll_dps\n0,1.5\n1,-2.0\n")
        series = read_velocity_csv(path)
        assert series.tolist() == [1.5, -2.0]

    def test_empty_rejected(self, tmp_path):
        path = tmp_path / "gyro.csv"
        path.write_text("t,roll_dps\n")
        with pytest.raises(FormatError):
            read_velocity_csv(path)
