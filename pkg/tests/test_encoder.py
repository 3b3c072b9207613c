"""Fallback encoder: block attention, pooling, byte flattening."""

import numpy as np
import pytest
import torch

from pixfall.encoder import (
    EncoderConfig,
    FallbackEncoder,
    block_attention_mask,
    byte_sequence,
    count_parameters,
)
from pixfall.errors import PositionOverflow, SequenceTooLong
from pixfall.textrender.render import RenderConfig, render_sequence
from pixfall.textrender.segment import Word, pretokenize


def small_config(mode="pixel", **overrides):
    base = dict(
        mode=mode, patch_size=12, d_model=32, n_layers=2, n_heads=4,
        d_ff=64, d_lm=48,
    )
    base.update(overrides)
    return EncoderConfig(**base)


def encode_text(encoder, text, patch_size=12):
    if encoder.cfg.mode == "pixel":
        seq = render_sequence(pretokenize(text), RenderConfig(patch_size=patch_size))
        return encoder.forward(
            torch.from_numpy(seq.patches).to(encoder.input_proj.weight.dtype),
            torch.from_numpy(seq.positional_ids),
            seq.word_offsets,
        )
    ids, positions, offsets = byte_sequence(pretokenize(text))
    return encoder.forward(ids, positions, offsets)


def test_output_one_vector_per_word():
    torch.manual_seed(0)
    encoder = FallbackEncoder(small_config())
    out = encode_text(encoder, "Happy dog runs")
    assert out.shape == (3, 48)


def test_word_vectors_independent_of_neighbors():
    """Block attention and per-word pooling make each word's vector a
    function of that word alone."""
    torch.manual_seed(1)
    encoder = FallbackEncoder(small_config())
    encoder.eval()
    with torch.no_grad():
        joint = encode_text(encoder, "Happy dog runs")
        for i, word in enumerate(("Happy", "dog", "runs")):
            solo = encode_text(encoder, word)
            rel = float(
                (joint[i] - solo[0]).norm() / solo[0].norm().clamp_min(1e-12)
            )
            assert rel < 1e-6, f"word {word}: rel err {rel}"


def test_cross_word_perturbation_bitwise_inert():
    """In float64 a perturbed neighbor leaves other words' outputs
    bitwise unchanged: their attention blocks never see it."""
    torch.manual_seed(2)
    encoder = FallbackEncoder(small_config()).double()
    encoder.eval()
    seq = render_sequence(pretokenize("Happy dog"), RenderConfig(patch_size=12))
    patches = torch.from_numpy(seq.patches).double()
    positions = torch.from_numpy(seq.positional_ids)
    base = encoder.forward(patches, positions, seq.word_offsets)
    perturbed = patches.clone()
    start, length = seq.word_offsets[1]
    perturbed[start : start + length] += 0.37
    out = encoder.forward(perturbed, positions, seq.word_offsets)
    assert torch.equal(out[0], base[0])
    assert not torch.equal(out[1], base[1])


def test_byte_mode_word_independence():
    torch.manual_seed(3)
    encoder = FallbackEncoder(small_config(mode="byte")).double()
    encoder.eval()
    joint = encode_text(encoder, "кот dog")
    solo = encode_text(encoder, "кот")
    assert torch.allclose(joint[0], solo[0], atol=1e-12, rtol=1e-12)


def test_byte_sequence_ascii_fixture():
    ids, positions, offsets = byte_sequence([Word("A")])
    assert ids.tolist() == [0x41]
    assert offsets == [(0, 1)]
    assert positions.tolist() == [0]


def test_byte_sequence_three_codepoint_devanagari():
    # each codepoint in the block is 3 UTF-8 bytes
    ids, _, offsets = byte_sequence([Word("कखग")])
    assert ids.shape[0] == 9
    assert offsets == [(0, 9)]


def test_byte_sequence_hindi_sentence():
    """The three-word sentence occupies 59 bytes with separators; the
    words alone flatten to 57 byte units."""
    words = pretokenize("क्योंकि दुनिया मिलाना")
    ids, positions, offsets = byte_sequence(words)
    assert ids.shape[0] == 57
    assert offsets == [(0, 21), (21, 18), (39, 18)]
    assert positions.tolist()[:3] == [0, 1, 2]
    assert positions.tolist()[21] == 0


def test_positions_reset_per_word_in_byte_mode():
    _, positions, offsets = byte_sequence(pretokenize("ab cde"))
    assert positions.tolist() == [0, 1, 0, 1, 2]
    assert offsets == [(0, 2), (2, 3)]


def test_sequence_cap_enforced():
    torch.manual_seed(0)
    encoder = FallbackEncoder(small_config(mode="byte", max_sequence=8))
    with pytest.raises(SequenceTooLong):
        encode_text(encoder, "abcdefghi")


def test_position_table_overflow():
    torch.manual_seed(0)
    encoder = FallbackEncoder(small_config(mode="byte", max_word_positions=4))
    with pytest.raises(PositionOverflow):
        encode_text(encoder, "abcdef")


def test_block_attention_mask_structure():
    mask = block_attention_mask([(0, 2), (2, 3)], 5)
    finite = torch.isfinite(mask)
    expected = torch.zeros(5, 5, dtype=torch.bool)
    expected[0:2, 0:2] = True
    expected[2:5, 2:5] = True
    assert torch.equal(finite, expected)
    assert float(mask[finite].abs().max()) == 0.0


def test_projections_are_bias_free():
    encoder = FallbackEncoder(small_config())
    assert encoder.input_proj.bias is None
    assert encoder.out_proj.bias is None


def test_parameter_count_closed_form():
    """Closed form: input projection P^2*C*d, positions 64*d, per layer
    4d^2 + 2*d*dff + dff + 9d (projections with bias, two layer norms),
    final norm 2d, output projection d*d_lm."""
    cfg = small_config()
    encoder = FallbackEncoder(cfg)
    d, dff, L = cfg.d_model, cfg.d_ff, cfg.n_layers
    per_layer = 4 * d * d + 2 * d * dff + dff + 9 * d
    expected = (
        cfg.patch_size ** 2 * cfg.channels * d
        + cfg.max_word_positions * d
        + L * per_layer
        + 2 * d
        + d * cfg.d_lm
    )
    assert count_parameters(encoder) == expected
    assert (
        count_parameters(encoder, include_output_projection=False)
        == expected - d * cfg.d_lm
    )


def test_byte_mode_parameter_count():
    cfg = small_config(mode="byte")
    encoder = FallbackEncoder(cfg)
    d, dff, L = cfg.d_model, cfg.d_ff, cfg.n_layers
    per_layer = 4 * d * d + 2 * d * dff + dff + 9 * d
    expected = (
        256 * d
        + cfg.max_word_positions * d
        + L * per_layer
        + 2 * d
        + d * cfg.d_lm
    )
    assert count_parameters(encoder) == expected


def test_mode_validation():
    with pytest.raises(ValueError):
        EncoderConfig(mode="glyph")
    with pytest.raises(ValueError):
        EncoderConfig(d_model=30, n_heads=4)


def test_encode_patches_entry_point():
    torch.manual_seed(4)
    encoder = FallbackEncoder(small_config(patch_size=24))
    seq = render_sequence(pretokenize("Happy dog"), RenderConfig())
    out = encoder.encode_patches(seq)
    assert out.shape == (2, 48)


def test_deterministic_forward():
    torch.manual_seed(5)
    encoder = FallbackEncoder(small_config())
    encoder.eval()
    a = encode_text(encoder, "кот ковре")
    b = encode_text(encoder, "кот ковре")
    assert torch.equal(a, b)
