"""Evaluation and diagnostics: chrF++, compression, FLOPs, modality gap."""

from .chrf import chrf_pp, chrf_pp_corpus, score_stats, sentence_stats
from .compression import LineStats, compression_ratio, corpus_stats, line_stats
from .flops import (
    FlopsReport,
    encoder_flops,
    flops_estimate,
    flops_ratio,
    lm_flops,
    transformer_flops,
)
from .gap import GapReport, centroid_distance, modality_gap, probe_accuracy

__all__ = [
    "chrf_pp",
    "chrf_pp_corpus",
    "score_stats",
    "sentence_stats",
    "LineStats",
    "compression_ratio",
    "corpus_stats",
    "line_stats",
    "FlopsReport",
    "encoder_flops",
    "flops_estimate",
    "flops_ratio",
    "lm_flops",
    "transformer_flops",
    "GapReport",
    "centroid_distance",
    "modality_gap",
    "probe_accuracy",
]
