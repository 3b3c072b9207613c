"""Two-stage training over translation pairs.

Stage 1 pretrains the fallback encoder against a frozen language
model; stage 2 trains the encoder jointly with DoRA adapters on the
LM's attention projections while the base LM weights stay frozen.
Freezing is verified bitwise by hashing weights before and after.
The vocabulary-expansion baseline reuses the same loop: its stage 1
trains only the freshly added embedding and output rows, and the plain
baseline skips straight to adapter finetuning.

Every training example is one sequence:

    <bos> [source segments] <sep> <txt> [target ids] <eos>

where the source segments come from the modality router (soft fallback
rows for non-ASCII words, byte-pair ids for ASCII) and loss applies to
the target ids and the closing <eos>.  Cross-entropy is pooled over all
loss positions in the batch, which matches padding the sequences to a
common length with PAD excluded from loss.  When the alignment
objective is enabled, fallback word vectors additionally regress onto
the embedding rows of their aligned single-token target words.
"""

from __future__ import annotations

import csv
import math
import os
import time
from dataclasses import dataclass

import torch

from ..checkpoint import save_encoder, save_lm, sha256_module
from ..data import ParallelCorpus, SplitMix64
from ..encoder import FallbackEncoder
from ..errors import DivergenceError
from ..interleave import SoftPlan, plan_mixed, realize_mixed
from ..lm import DecoderLM, MixedSequence, SoftSegment, VocabSegment
from ..textrender.render import RenderConfig, render_sequence
from ..textrender.segment import Word
from ..tokenizer import BPETokenizer
from .dora import DoraLinear
from .losses import align_loss, total_loss
from .optim import AdamWState, adamw_step
from .schedule import lr_at


@dataclass
class TrainConfig:
    stage: str = "pretrain"  # "pretrain" | "finetune"
    total_steps: int = 1000
    batch_size: int = 8
    peak_lr: float = 3e-4
    min_lr: float = 3e-5
    warmup_ratio: float = 0.10
    dora_rank: int = 32
    dora_alpha: float = 64.0
    dora_dropout: float = 0.05
    align_loss: bool = True
    seed: int = 0
    mode: str = "pixel"  # pixel | byte | vocab+ | base
    interleave: str = "ascii-split"  # off | ascii-split | force-pixels
    modality_prefix: bool = False
    new_rows_start: int = 0  # vocab+ mode: trainable row band [start, stop)
    new_rows_stop: int = 0
    checkpoint_every: int = 200
    log_path: str | None = None
    checkpoint_dir: str | None = None

    def __post_init__(self):
        if self.stage not in ("pretrain", "finetune"):
            raise ValueError(f"stage must be pretrain or finetune, got {self.stage!r}")
        if not 0 < self.min_lr <= self.peak_lr:
            raise ValueError("need 0 < min_lr <= peak_lr")
        if not 0 < self.warmup_ratio < 1:
            raise ValueError("warmup_ratio must be in (0, 1)")
        if self.mode not in ("pixel", "byte", "vocab+", "base"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.interleave not in ("off", "ascii-split", "force-pixels"):
            raise ValueError(f"unknown interleave mode {self.interleave!r}")
        if self.mode == "vocab+" and not 0 <= self.new_rows_start < self.new_rows_stop:
            raise ValueError("vocab+ mode needs a trainable row band")


class WordEncoderCache:
    """Caches per-word rendered patches so repeated words re-render for
    free; encoding still runs fresh because weights change every step."""

    def __init__(self, encoder: FallbackEncoder, render_config: RenderConfig):
        self.encoder = encoder
        self.render_config = render_config
        self._patches: dict[str, object] = {}

    def _word_units(self, word: Word):
        """(inputs, positions) for one word: patches or byte ids."""
        if self.encoder.cfg.mode == "pixel":
            seq = self._patches.get(word.text)
            if seq is None:
                seq = render_sequence([word], self.render_config)
                self._patches[word.text] = seq
            return (
                torch.from_numpy(seq.patches),
                torch.from_numpy(seq.positional_ids),
            )
        data = word.text.encode("utf-8")
        return (
            torch.tensor(list(data), dtype=torch.long),
            torch.arange(len(data), dtype=torch.long),
        )

    def _forward_words(self, words: list[Word]) -> torch.Tensor:
        units = [self._word_units(w) for w in words]
        offsets = []
        start = 0
        for inputs, _ in units:
            n = inputs.shape[0]
            offsets.append((start, n))
            start += n
        inputs = torch.cat([u for u, _ in units], dim=0)
        positions = torch.cat([p for _, p in units], dim=0)
        return self.encoder.forward(inputs, positions, offsets)

    def encode(self, words: list[Word]) -> torch.Tensor:
        return self.encode_many([words])[0]

    def encode_many(self, word_lists: list[list[Word]]) -> list[torch.Tensor]:
        """One encoder pass over many word lists, chunked to the
        encoder's sequence cap; returns one row tensor per list."""
        flat = [w for lst in word_lists for w in lst]
        if not flat:
            return [torch.zeros(0, self.encoder.cfg.d_lm) for _ in word_lists]
        cap = self.encoder.cfg.max_sequence
        rows = []
        group: list[Word] = []
        group_units = 0
        for w in flat:
            n = self._word_units(w)[0].shape[0]
            if group and group_units + n > cap:
                rows.append(self._forward_words(group))
                group, group_units = [], 0
            group.append(w)
            group_units += n
        rows.append(self._forward_words(group))
        all_rows = torch.cat(rows, dim=0)
        out = []
        pos = 0
        for lst in word_lists:
            out.append(all_rows[pos : pos + len(lst)])
            pos += len(lst)
        return out


def _source_plan(
    source,
    tokenizer,
    mode,
    interleave: str = "ascii-split",
    modality_prefix: bool = False,
):
    if mode in ("pixel", "byte") and interleave != "off":
        return plan_mixed(
            source,
            tokenizer,
            force_pixels=interleave == "force-pixels",
            prefix_tokens=modality_prefix,
        )
    return [VocabSegment(tokenizer.encode(source))]


def build_example_plan(
    source: str,
    target: str,
    tokenizer: BPETokenizer,
    mode: str,
    interleave: str = "ascii-split",
    modality_prefix: bool = False,
) -> list:
    """Example structure with fallback spans still unencoded."""
    bos = tokenizer.special_id("<bos>")
    eos = tokenizer.special_id("<eos>")
    sep = tokenizer.special_id("<sep>")
    txt = tokenizer.special_id("<txt>")
    return (
        [VocabSegment([bos])]
        + _source_plan(source, tokenizer, mode, interleave, modality_prefix)
        + [VocabSegment([sep]), VocabSegment([txt])]
        + [VocabSegment(tokenizer.encode(target) + [eos], target_span=True)]
    )


def _realize(plan: list, encode_words) -> MixedSequence:
    rows = [encode_words(item.words) for item in plan if isinstance(item, SoftPlan)]
    return realize_mixed(plan, rows)


def build_example(
    source: str,
    target: str,
    tokenizer: BPETokenizer,
    encode_words,
    mode: str,
    interleave: str = "ascii-split",
    modality_prefix: bool = False,
) -> MixedSequence:
    plan = build_example_plan(
        source, target, tokenizer, mode, interleave, modality_prefix
    )
    return _realize(plan, encode_words)


def translation_prompt(
    source: str,
    tokenizer: BPETokenizer,
    encode_words,
    mode: str,
    interleave: str = "ascii-split",
    modality_prefix: bool = False,
) -> MixedSequence:
    """The example prefix up to (and including) the target's txt marker."""
    bos = tokenizer.special_id("<bos>")
    sep = tokenizer.special_id("<sep>")
    txt = tokenizer.special_id("<txt>")
    plan = (
        [VocabSegment([bos])]
        + _source_plan(source, tokenizer, mode, interleave, modality_prefix)
        + [VocabSegment([sep]), VocabSegment([txt])]
    )
    return _realize(plan, encode_words)


def _alignment_rows(
    mixed: MixedSequence,
    source: str,
    target: str,
    alignment: list[tuple[int, int]] | None,
    tokenizer: BPETokenizer,
    lm: DecoderLM,
) -> list[tuple[torch.Tensor, torch.Tensor]]:
    """Pairs (h, e) for fallback words whose aligned target word is a
    single byte-pair token; multi-token words have no single row to
    mimic and are skipped."""
    if alignment is None:
        return []
    soft_rows: list[torch.Tensor] = []
    for seg in mixed:
        if isinstance(seg, SoftSegment):
            soft_rows.extend(seg.vectors)
    source_words = source.split()
    if len(soft_rows) != len(source_words):
        # some source words were vocabulary-routed; indices would shift
        return []
    target_words = target.split()
    pairs = []
    for i, j in alignment:
        if i >= len(soft_rows) or j >= len(target_words):
            continue
        ids = tokenizer.encode(target_words[j])
        if len(ids) != 1:
            continue
        pairs.append((soft_rows[i], lm.tok_embed.weight[ids[0]]))
    return pairs


@dataclass
class StepLog:
    step: int
    lr: float
    loss_ce: float
    loss_align: float
    seconds: float


class TrainLogger:
    def __init__(self, path: str | None):
        self.rows: list[StepLog] = []
        self._fh = None
        self._writer = None
        if path:
            self._fh = open(path, "w", newline="", encoding="utf-8")
            self._writer = csv.writer(self._fh)
            self._writer.writerow(["step", "lr", "loss_ce", "loss_align", "seconds"])

    def log(self, row: StepLog) -> None:
        self.rows.append(row)
        if self._writer:
            self._writer.writerow(
                [row.step, f"{row.lr:.10g}", f"{row.loss_ce:.6f}",
                 f"{row.loss_align:.6f}", f"{row.seconds:.3f}"]
            )
            self._fh.flush()

    def close(self) -> None:
        if self._fh:
            self._fh.close()


def _batch_indices(n: int, batch_size: int, total_steps: int, seed: int):
    """Seeded with-replacement batch sampler, fixed order per seed."""
    rng = SplitMix64(seed ^ 0xBA7C4)
    for _ in range(total_steps):
        yield [rng.randint(n) for _ in range(batch_size)]


class _RowFreezer:
    """Keeps every row outside the trainable band bitwise fixed.

    Vocabulary-expansion mode trains only the newly added embedding and
    head rows; the base byte-pair rows below the band and the relocated
    special-token rows above it must not drift, so their values are
    restored after each optimizer step rather than trusting masked
    gradients alone."""

    def __init__(self, tensors: list[torch.Tensor], start: int, stop: int):
        self.tensors = tensors
        self.start = start
        self.stop = stop
        self.saved_head = [t[:start].detach().clone() for t in tensors]
        self.saved_tail = [t[stop:].detach().clone() for t in tensors]

    def mask_grads(self) -> None:
        for t in self.tensors:
            if t.grad is not None:
                t.grad[: self.start] = 0.0
                t.grad[self.stop :] = 0.0

    def restore(self) -> None:
        with torch.no_grad():
            for t, head, tail in zip(self.tensors, self.saved_head, self.saved_tail):
                t[: self.start] = head
                t[self.stop :] = tail


def _save_state(
    out_dir: str,
    tag: str,
    encoder: FallbackEncoder | None,
    lm: DecoderLM,
    step: int,
    config: TrainConfig,
) -> str:
    """Write checkpoints under a shared prefix and return the prefix."""
    os.makedirs(out_dir, exist_ok=True)
    prefix = os.path.join(out_dir, f"{tag}-step{step}")
    dora = None
    if config.stage == "finetune":
        dora = {
            "rank": config.dora_rank,
            "alpha": config.dora_alpha,
            "dropout": config.dora_dropout,
        }
    save_lm(f"{prefix}-lm.pxfw", lm, dora)
    if encoder is not None:
        save_encoder(f"{prefix}-encoder.pxfw", encoder)
    return prefix


def _run_steps(
    encoder: FallbackEncoder | None,
    lm: DecoderLM,
    params: list[torch.Tensor],
    corpus: ParallelCorpus,
    tokenizer: BPETokenizer,
    render_config: RenderConfig,
    config: TrainConfig,
    tag: str,
    row_freezer: _RowFreezer | None = None,
) -> list[StepLog]:
    torch.manual_seed(config.seed)
    logger = TrainLogger(config.log_path)
    state = AdamWState()
    cache = WordEncoderCache(encoder, render_config) if encoder is not None else None
    last_good: str | None = None
    start_time = time.monotonic()
    try:
        for step, batch in enumerate(
            _batch_indices(len(corpus), config.batch_size, config.total_steps, config.seed)
        ):
            lr = lr_at(
                step, config.total_steps, config.peak_lr, config.min_lr, config.warmup_ratio
            )
            plans = [
                build_example_plan(
                    *corpus.pairs[idx],
                    tokenizer,
                    config.mode,
                    config.interleave,
                    config.modality_prefix,
                )
                for idx in batch
            ]
            if cache is not None:
                word_lists = [
                    item.words
                    for plan in plans
                    for item in plan
                    if isinstance(item, SoftPlan)
                ]
                all_rows = iter(cache.encode_many(word_lists))
                mixed_batch = [
                    realize_mixed(
                        plan,
                        [next(all_rows) for item in plan if isinstance(item, SoftPlan)],
                    )
                    for plan in plans
                ]
            else:
                mixed_batch = [realize_mixed(plan, []) for plan in plans]
            align_pairs = []
            if config.align_loss and config.mode in ("pixel", "byte"):
                for idx, mixed in zip(batch, mixed_batch):
                    source, target = corpus.pairs[idx]
                    alignment = (
                        corpus.alignments[idx] if corpus.alignments is not None else None
                    )
                    align_pairs.extend(
                        _alignment_rows(mixed, source, target, alignment, tokenizer, lm)
                    )
            ce_sum, ce_count = lm.loss_ce_batch(
                mixed_batch, tokenizer.special_id("<pad>")
            )
            loss_ce = ce_sum / ce_count
            if align_pairs:
                h = torch.stack([p[0] for p in align_pairs])
                e = torch.stack([p[1] for p in align_pairs]).detach()
                loss_align = align_loss(h, e)
            else:
                loss_align = torch.zeros(())
            loss = total_loss(loss_ce, loss_align, config.align_loss)
            if not math.isfinite(float(loss.detach())):
                raise DivergenceError(step, last_good)
            for p in params:
                p.grad = None
            loss.backward()
            if row_freezer is not None:
                row_freezer.mask_grads()
            grads = [p.grad for p in params]
            adamw_step(params, grads, state, lr)
            if row_freezer is not None:
                row_freezer.restore()
            logger.log(
                StepLog(
                    step=step,
                    lr=lr,
                    loss_ce=float(loss_ce.detach()),
                    loss_align=float(loss_align.detach()),
                    seconds=time.monotonic() - start_time,
                )
            )
            if config.checkpoint_dir and (step + 1) % config.checkpoint_every == 0:
                last_good = _save_state(
                    config.checkpoint_dir, tag, encoder, lm, step + 1, config
                )
    finally:
        logger.close()
    return logger.rows


def train_stage1(
    encoder: FallbackEncoder | None,
    lm: DecoderLM,
    corpus: ParallelCorpus,
    tokenizer: BPETokenizer,
    config: TrainConfig,
    render_config: RenderConfig | None = None,
) -> list[StepLog]:
    """Pretraining pass.

    Fallback modes train the encoder against the fully frozen LM; the
    vocabulary-expansion mode instead trains the newly added embedding
    and output-head rows while everything else stays frozen.
    """
    render_config = render_config or RenderConfig()
    lm.requires_grad_(False)
    lm.eval()
    row_freezer = None
    if config.mode in ("pixel", "byte"):
        if encoder is None:
            raise ValueError(f"{config.mode} mode needs a fallback encoder")
        encoder.train()
        before = sha256_module(lm)
        params = [p for p in encoder.parameters() if p.requires_grad]
        frozen_check = lambda: sha256_module(lm)
    elif config.mode == "vocab+":
        lm.tok_embed.weight.requires_grad_(True)
        lm.lm_head.weight.requires_grad_(True)
        params = [lm.tok_embed.weight, lm.lm_head.weight]
        row_freezer = _RowFreezer(params, config.new_rows_start, config.new_rows_stop)
        before = sha256_module(lm, exclude_substrings=("tok_embed", "lm_head"))
        frozen_check = lambda: sha256_module(
            lm, exclude_substrings=("tok_embed", "lm_head")
        )
    else:
        raise ValueError("base mode has no pretraining stage")
    rows = _run_steps(
        encoder, lm, params, corpus, tokenizer, render_config, config, "stage1",
        row_freezer=row_freezer,
    )
    if before != frozen_check():
        raise AssertionError("frozen LM weights changed during stage 1")
    if row_freezer is not None:
        lm.requires_grad_(False)
    return rows


_ADAPTER_KEYS = ("lora_a", "lora_b", "magnitude")


def train_stage2(
    encoder: FallbackEncoder | None,
    lm: DecoderLM,
    adapters: list[DoraLinear],
    corpus: ParallelCorpus,
    tokenizer: BPETokenizer,
    config: TrainConfig,
    render_config: RenderConfig | None = None,
) -> list[StepLog]:
    """Joint finetuning: encoder (when present) plus adapters train,
    base LM weights stay bitwise frozen."""
    render_config = render_config or RenderConfig()
    lm.requires_grad_(False)
    for adapter in adapters:
        for p in adapter.adapter_parameters():
            p.requires_grad_(True)
    lm.train()
    params = []
    row_freezer = None
    exclude = list(_ADAPTER_KEYS)
    if encoder is not None:
        encoder.train()
        params.extend(p for p in encoder.parameters() if p.requires_grad)
    if config.mode == "vocab+":
        lm.tok_embed.weight.requires_grad_(True)
        lm.lm_head.weight.requires_grad_(True)
        params.extend([lm.tok_embed.weight, lm.lm_head.weight])
        row_freezer = _RowFreezer(
            [lm.tok_embed.weight, lm.lm_head.weight],
            config.new_rows_start,
            config.new_rows_stop,
        )
        exclude.extend(["tok_embed", "lm_head"])
    for adapter in adapters:
        params.extend(adapter.adapter_parameters())
    before = sha256_module(lm, exclude_substrings=tuple(exclude))
    rows = _run_steps(
        encoder, lm, params, corpus, tokenizer, render_config, config, "stage2",
        row_freezer=row_freezer,
    )
    after = sha256_module(lm, exclude_substrings=tuple(exclude))
    if before != after:
        raise AssertionError("base LM weights changed during stage 2")
    return rows
