"""Central-difference gradient checking for tiny model configurations.

Each configuration builds a miniature pipeline in float64 (render or
byte-flatten two words, encode them, inject the vectors into a small
decoder, take cross-entropy and optionally the alignment loss, with or
without adapters on the attention projections) and compares autograd
gradients against central finite differences at sampled coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from pixfall.encoder import EncoderConfig, FallbackEncoder, byte_sequence
from pixfall.lm import DecoderLM, LMConfig, SoftSegment, VocabSegment
from pixfall.textrender.render import RenderConfig, render_sequence
from pixfall.textrender.segment import Word
from pixfall.training.dora import attach_dora
from pixfall.training.losses import align_loss

H = 1e-5
REL_TOL = 1e-4


@dataclass
class CheckConfig:
    mode: str = "pixel"  # encoder input mode
    d_model: int = 8
    n_heads: int = 2
    n_layers: int = 1
    d_lm: int = 8
    use_ce: bool = True
    use_align: bool = False
    use_dora: bool = False
    seed: int = 0


def _word_inputs(mode: str, words: list[Word]):
    if mode == "pixel":
        seq = render_sequence(words, RenderConfig(patch_size=8))
        return (
            torch.from_numpy(seq.patches).double(),
            torch.from_numpy(seq.positional_ids),
            seq.word_offsets,
        )
    ids, positions, offsets = byte_sequence(words)
    return ids, positions, offsets


def build_case(cfg: CheckConfig):
    """Returns (loss_fn, params) for one configuration."""
    torch.manual_seed(cfg.seed)
    enc_cfg = EncoderConfig(
        mode=cfg.mode,
        patch_size=8,
        d_model=cfg.d_model,
        n_layers=cfg.n_layers,
        n_heads=cfg.n_heads,
        d_ff=2 * cfg.d_model,
        d_lm=cfg.d_lm,
    )
    encoder = FallbackEncoder(enc_cfg).double()
    lm_cfg = LMConfig(
        vocab_size=24,
        d_model=cfg.d_lm,
        n_layers=cfg.n_layers,
        n_heads=2,
        d_ff=2 * cfg.d_lm,
        max_positions=32,
    )
    lm = DecoderLM(lm_cfg)
    adapters = []
    if cfg.use_dora:
        adapters = attach_dora(lm, rank=2, alpha=4.0, dropout=0.0)
        lm.eval()
    lm.double()
    words = [Word("ab"), Word("cde")]
    inputs, positions, offsets = _word_inputs(cfg.mode, words)
    target_ids = [3, 7, 5]
    align_targets = lm.tok_embed.weight[torch.tensor([2, 9])].detach().clone()

    def loss_fn() -> torch.Tensor:
        encoded = encoder.forward(inputs, positions, offsets)
        total = torch.zeros((), dtype=torch.float64)
        if cfg.use_ce:
            mixed = [
                VocabSegment([1]),
                SoftSegment(encoded),
                VocabSegment([2]),
                VocabSegment(target_ids, target_span=True),
            ]
            total = total + lm.loss_ce(mixed)
        if cfg.use_align:
            total = total + align_loss(encoded, align_targets)
        return total

    params = list(encoder.parameters())
    if cfg.use_dora:
        for adapter in adapters:
            params.extend(adapter.adapter_parameters())
    return loss_fn, params


def max_relative_error(cfg: CheckConfig, probes_per_param: int = 2) -> float:
    """Autograd vs central differences; returns the worst relative error."""
    loss_fn, params = build_case(cfg)
    for p in params:
        p.grad = None
    loss = loss_fn()
    loss.backward()
    rng = torch.Generator().manual_seed(cfg.seed + 1)
    worst = 0.0
    for p in params:
        if p.grad is None:
            continue
        flat = p.detach().reshape(-1)
        grad = p.grad.reshape(-1)
        n = flat.shape[0]
        for _ in range(probes_per_param):
            i = int(torch.randint(n, (1,), generator=rng))
            orig = float(flat[i])
            with torch.no_grad():
                flat[i] = orig + H
                up = float(loss_fn())
                flat[i] = orig - H
                down = float(loss_fn())
                flat[i] = orig
            numeric = (up - down) / (2 * H)
            analytic = float(grad[i])
            denom = max(abs(numeric), abs(analytic), 1e-8)
            worst = max(worst, abs(numeric - analytic) / denom)
    return worst


def all_check_configs() -> list[CheckConfig]:
    configs = []
    seed = 0
    for mode in ("pixel", "byte"):
        for use_ce, use_align in ((True, False), (False, True), (True, True)):
            for use_dora in (False, True):
                for d_model, n_heads in ((8, 2), (12, 3)):
                    configs.append(
                        CheckConfig(
                            mode=mode,
                            d_model=d_model,
                            n_heads=n_heads,
                            d_lm=8,
                            use_ce=use_ce,
                            use_align=use_align,
                            use_dora=use_dora,
                            seed=seed,
                        )
                    )
                    seed += 1
    return configs
