"""Analytic FLOPs model for the encoder and decoder pipelines.

Counts follow the usual transformer budget with one multiply-accumulate
as two FLOPs: per layer, the four attention projections cost 8*T*d^2,
the score/value products 4*T^2*d, and the feedforward 4*T*d*d_ff.
Only matrix products are counted; softmax, norms, and activations are
dropped as lower-order terms.

Generation is modeled as a prefill pass over the prompt followed by
incremental decode steps against a key/value cache, so decode step t
attends over prompt + t positions.  The fallback encoder runs exactly
once per prompt: later decode steps reuse the cached word encodings,
so its cost does not scale with the generated length.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..encoder import EncoderConfig
from ..lm import LMConfig


@dataclass(frozen=True)
class FlopsReport:
    encoder_flops: float
    lm_flops: float

    @property
    def total(self) -> float:
        return self.encoder_flops + self.lm_flops


def attention_flops(seq_len: int, d_model: int) -> float:
    return 8.0 * seq_len * d_model * d_model + 4.0 * seq_len * seq_len * d_model


def feedforward_flops(seq_len: int, d_model: int, d_ff: int) -> float:
    return 4.0 * seq_len * d_model * d_ff


def transformer_flops(seq_len: int, d_model: int, d_ff: int, n_layers: int) -> float:
    return n_layers * (
        attention_flops(seq_len, d_model) + feedforward_flops(seq_len, d_model, d_ff)
    )


def encoder_flops(config: EncoderConfig, n_units: int, n_words: int) -> float:
    """One encoder pass over ``n_units`` patches or bytes pooled into
    ``n_words`` word vectors.  Byte mode embeds by table lookup, so only
    pixel mode pays the input projection."""
    trunk = transformer_flops(n_units, config.d_model, config.d_ff, config.n_layers)
    in_proj = 0.0
    if config.mode == "pixel":
        patch_dim = config.patch_size * config.patch_size * config.channels
        in_proj = 2.0 * n_units * patch_dim * config.d_model
    out_proj = 2.0 * n_words * config.d_model * config.d_lm
    return trunk + in_proj + out_proj


def lm_flops(config: LMConfig, prompt_len: int, generated_len: int) -> float:
    """Prefill plus cached incremental decoding, with the output head
    applied once per generated token."""
    total = transformer_flops(prompt_len, config.d_model, config.d_ff, config.n_layers)
    for step in range(1, generated_len + 1):
        context = prompt_len + step
        per_layer = (
            8.0 * config.d_model * config.d_model
            + 4.0 * context * config.d_model
            + 4.0 * config.d_model * config.d_ff
        )
        total += config.n_layers * per_layer
        total += 2.0 * config.d_model * config.vocab_size
    return total


def flops_estimate(
    lm_config: LMConfig,
    prompt_len: int,
    generated_len: int,
    encoder_config: EncoderConfig | None = None,
    encoder_units: int = 0,
    encoder_words: int = 0,
) -> FlopsReport:
    """Total cost of one generation.  Pass ``encoder_config`` with the
    unit/word counts for the fallback pipelines; leave it ``None`` for
    the vocabulary-only baseline."""
    enc = 0.0
    if encoder_config is not None:
        enc = encoder_flops(encoder_config, encoder_units, encoder_words)
    return FlopsReport(
        encoder_flops=enc,
        lm_flops=lm_flops(lm_config, prompt_len, generated_len),
    )


def flops_ratio(pixels: FlopsReport, base: FlopsReport) -> float:
    """Pipeline-vs-baseline cost ratio; > 1 means the pipeline is dearer."""
    return pixels.total / base.total
