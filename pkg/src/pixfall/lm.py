"""Decoder-only language model over mixed input segments.

The model consumes a flat sequence built from two segment kinds:
vocabulary segments carry token ids looked up in the embedding table,
and soft segments carry precomputed embedding rows (the fallback
encoder's word vectors) injected directly at the input.  Cross-entropy
loss is taken only at positions covered by a vocabulary segment whose
``target_span`` flag is set; soft segments can never be targets because
they have no token identity to predict.

Generation is beam search with KV caching; a beam of one is greedy
decoding, and the usual sampling knobs (temperature, top-k, top-p) are
available behind ``do_sample`` but default to off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import torch
from torch import nn

from .errors import (
    EmptyLossMask,
    InvalidTarget,
    NumericalError,
    PositionOverflow,
    UnknownToken,
)

_IGNORE = -100


@dataclass
class LMConfig:
    vocab_size: int
    d_model: int = 128
    n_layers: int = 4
    n_heads: int = 4
    d_ff: int = 512
    max_positions: int = 512

    def __post_init__(self):
        if self.d_model % self.n_heads != 0:
            raise ValueError(
                f"d_model {self.d_model} not divisible by n_heads {self.n_heads}"
            )


@dataclass
class VocabSegment:
    ids: list[int]
    target_span: bool = False


@dataclass
class SoftSegment:
    vectors: torch.Tensor  # (k, d_model)
    target_span: bool = False


MixedSequence = list


@dataclass
class _Cache:
    """Per-layer key/value tensors of shape (B, heads, T, head_dim)."""

    keys: list = field(default_factory=list)
    values: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.keys[0].shape[2] if self.keys else 0

    def expand(self, n: int) -> "_Cache":
        return _Cache(
            keys=[k.expand(n, -1, -1, -1).clone() for k in self.keys],
            values=[v.expand(n, -1, -1, -1).clone() for v in self.values],
        )

    def select(self, rows: torch.Tensor) -> "_Cache":
        return _Cache(
            keys=[k[rows] for k in self.keys],
            values=[v[rows] for v in self.values],
        )


class _DecoderBlock(nn.Module):
    def __init__(self, cfg: LMConfig):
        super().__init__()
        self.ln1 = nn.LayerNorm(cfg.d_model)
        self.ln2 = nn.LayerNorm(cfg.d_model)
        self.attn_q = nn.Linear(cfg.d_model, cfg.d_model)
        self.attn_k = nn.Linear(cfg.d_model, cfg.d_model)
        self.attn_v = nn.Linear(cfg.d_model, cfg.d_model)
        self.attn_o = nn.Linear(cfg.d_model, cfg.d_model)
        self.ff1 = nn.Linear(cfg.d_model, cfg.d_ff)
        self.ff2 = nn.Linear(cfg.d_ff, cfg.d_model)
        self.n_heads = cfg.n_heads
        self.head_dim = cfg.d_model // cfg.n_heads

    def _split(self, x: torch.Tensor) -> torch.Tensor:
        b, t, _ = x.shape
        return x.view(b, t, self.n_heads, self.head_dim).transpose(1, 2)

    def forward(self, x, layer: int, cache: _Cache | None = None):
        b, t, d = x.shape
        h = self.ln1(x)
        q = self._split(self.attn_q(h))
        k = self._split(self.attn_k(h))
        v = self._split(self.attn_v(h))
        past = 0
        if cache is not None:
            if layer < len(cache.keys):
                past = cache.keys[layer].shape[2]
                k = torch.cat([cache.keys[layer], k], dim=2)
                v = torch.cat([cache.values[layer], v], dim=2)
                cache.keys[layer] = k
                cache.values[layer] = v
            else:
                cache.keys.append(k)
                cache.values.append(v)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_dim)
        # causal: new position i (absolute past+i) sees keys 0..past+i
        total = past + t
        causal = torch.arange(total, device=x.device)[None, :] > (
            past + torch.arange(t, device=x.device)[:, None]
        )
        scores = scores.masked_fill(causal, float("-inf"))
        attn = torch.softmax(scores, dim=-1)
        out = (attn @ v).transpose(1, 2).reshape(b, t, d)
        x = x + self.attn_o(out)
        x = x + self.ff2(torch.nn.functional.gelu(self.ff1(self.ln2(x))))
        return x


class DecoderLM(nn.Module):
    def __init__(self, cfg: LMConfig):
        super().__init__()
        self.cfg = cfg
        self.tok_embed = nn.Embedding(cfg.vocab_size, cfg.d_model)
        self.pos_embed = nn.Embedding(cfg.max_positions, cfg.d_model)
        self.blocks = nn.ModuleList(_DecoderBlock(cfg) for _ in range(cfg.n_layers))
        self.ln_f = nn.LayerNorm(cfg.d_model)
        self.lm_head = nn.Linear(cfg.d_model, cfg.vocab_size, bias=False)

    def embed_mixed(self, mixed: MixedSequence) -> tuple[torch.Tensor, torch.Tensor]:
        """Flatten segments to input rows and per-position target ids.

        Returns ``(embeddings, targets)`` where ``targets[t]`` is the
        token id to predict at position t for target-span positions and
        -100 elsewhere.
        """
        rows = []
        targets = []
        for seg in mixed:
            if isinstance(seg, SoftSegment):
                if seg.target_span:
                    raise InvalidTarget("soft segments cannot carry loss targets")
                if seg.vectors.ndim != 2 or seg.vectors.shape[1] != self.cfg.d_model:
                    raise InvalidTarget(
                        f"soft segment must be (k, {self.cfg.d_model}), "
                        f"got {tuple(seg.vectors.shape)}"
                    )
                rows.append(seg.vectors)
                targets.extend([_IGNORE] * seg.vectors.shape[0])
            else:
                for i in seg.ids:
                    if not 0 <= i < self.cfg.vocab_size:
                        raise UnknownToken(
                            f"id {i} outside vocabulary of {self.cfg.vocab_size}"
                        )
                ids = torch.tensor(seg.ids, dtype=torch.long)
                rows.append(self.tok_embed(ids))
                targets.extend(seg.ids if seg.target_span else [_IGNORE] * len(seg.ids))
        emb = torch.cat(rows, dim=0)
        if emb.shape[0] > self.cfg.max_positions:
            raise PositionOverflow(
                f"sequence of {emb.shape[0]} exceeds context {self.cfg.max_positions}"
            )
        return emb, torch.tensor(targets, dtype=torch.long)

    def forward(self, emb: torch.Tensor, cache: _Cache | None = None) -> torch.Tensor:
        """Logits for embedded inputs; (T, d) -> (T, vocab) or batched."""
        squeeze = emb.ndim == 2
        if squeeze:
            emb = emb[None]
        b, t, _ = emb.shape
        start = cache.length if cache is not None else 0
        if start + t > self.cfg.max_positions:
            raise PositionOverflow(
                f"sequence of {start + t} exceeds context {self.cfg.max_positions}"
            )
        pos = torch.arange(start, start + t, device=emb.device)
        x = emb + self.pos_embed(pos)[None]
        for layer, block in enumerate(self.blocks):
            x = block(x, layer, cache)
        logits = self.lm_head(self.ln_f(x))
        if not torch.isfinite(logits).all():
            raise NumericalError("non-finite values in logits")
        return logits[0] if squeeze else logits

    def loss_ce(self, mixed: MixedSequence) -> torch.Tensor:
        emb, targets = self.embed_mixed(mixed)
        logits = self.forward(emb)
        # predict targets[t] from position t-1
        shifted = targets[1:]
        keep = shifted != _IGNORE
        if not bool(keep.any()):
            raise EmptyLossMask("no loss positions in sequence")
        return torch.nn.functional.cross_entropy(
            logits[:-1][keep], shifted[keep]
        )

    def loss_ce_stats(self, mixed: MixedSequence) -> tuple[torch.Tensor, int]:
        """Summed loss and position count, for pooling across a batch."""
        emb, targets = self.embed_mixed(mixed)
        logits = self.forward(emb)
        shifted = targets[1:]
        keep = shifted != _IGNORE
        if not bool(keep.any()):
            raise EmptyLossMask("no loss positions in sequence")
        total = torch.nn.functional.cross_entropy(
            logits[:-1][keep], shifted[keep], reduction="sum"
        )
        return total, int(keep.sum())

    def loss_ce_batch(
        self, batch: list[MixedSequence], pad_id: int
    ) -> tuple[torch.Tensor, int]:
        """Pooled summed loss over a padded batch in one forward pass.

        Sequences pad to the batch maximum with PAD-token rows, which
        carry no loss and, being right-aligned, cannot influence any
        loss position through the causal mask.
        """
        pieces = [self.embed_mixed(m) for m in batch]
        t_max = max(e.shape[0] for e, _ in pieces)
        pad_row = self.tok_embed(torch.tensor([pad_id]))
        embs = []
        tgts = []
        for emb, targets in pieces:
            n_pad = t_max - emb.shape[0]
            if n_pad:
                emb = torch.cat([emb, pad_row.expand(n_pad, -1)], dim=0)
                targets = torch.cat(
                    [targets, torch.full((n_pad,), _IGNORE, dtype=torch.long)]
                )
            embs.append(emb)
            tgts.append(targets)
        logits = self.forward(torch.stack(embs))
        shifted = torch.stack(tgts)[:, 1:]
        keep = shifted != _IGNORE
        if not bool(keep.any()):
            raise EmptyLossMask("no loss positions in batch")
        total = torch.nn.functional.cross_entropy(
            logits[:, :-1][keep], shifted[keep], reduction="sum"
        )
        return total, int(keep.sum())

    @torch.no_grad()
    def generate(
        self,
        prompt: MixedSequence,
        max_new_tokens: int,
        eos_id: int,
        beam_size: int = 2,
        length_penalty: float = 1.0,
        temperature: float = 1.0,
        top_k: int | None = None,
        top_p: float | None = None,
        do_sample: bool = False,
        seed: int | None = None,
    ) -> list[int]:
        """Decode a continuation, returning generated ids without EOS."""
        emb, _ = self.embed_mixed(prompt)
        if do_sample:
            if beam_size != 1:
                raise ValueError("sampling requires beam_size=1")
            return self._sample(emb, max_new_tokens, eos_id, temperature, top_k, top_p, seed)
        cache = _Cache()
        logits = self.forward(emb[None], cache)[0, -1]
        logprobs = torch.log_softmax(logits, dim=-1)
        top = torch.topk(logprobs, min(beam_size, logprobs.shape[0]))
        cache = cache.expand(len(top.indices))
        beams = [
            {"ids": [int(tok)], "score": float(lp)}
            for tok, lp in zip(top.indices, top.values)
        ]
        done: list[tuple[float, list[int]]] = []
        for _ in range(max_new_tokens - 1):
            alive = [i for i, b in enumerate(beams) if b["ids"][-1] != eos_id]
            for b in beams:
                if b["ids"][-1] == eos_id:
                    done.append(self._finalize(b, eos_id, length_penalty))
            if not alive:
                beams = []
                break
            rows = torch.tensor(alive)
            cache = cache.select(rows)
            beams = [beams[i] for i in alive]
            last = torch.tensor([[b["ids"][-1]] for b in beams])
            logits = self.forward(self.tok_embed(last), cache)[:, -1]
            logprobs = torch.log_softmax(logits, dim=-1)
            width = min(beam_size, logprobs.shape[-1])
            cand_lp, cand_tok = torch.topk(logprobs, width, dim=-1)
            pool = []
            for bi, b in enumerate(beams):
                for ci in range(width):
                    pool.append(
                        (b["score"] + float(cand_lp[bi, ci]), bi, int(cand_tok[bi, ci]))
                    )
            pool.sort(key=lambda x: -x[0])
            pool = pool[:beam_size]
            rows = torch.tensor([bi for _, bi, _ in pool])
            cache = cache.select(rows)
            beams = [
                {"ids": beams[bi]["ids"] + [tok], "score": score}
                for score, bi, tok in pool
            ]
        for b in beams:
            done.append(self._finalize(b, eos_id, length_penalty))
        done.sort(key=lambda x: -x[0])
        return done[0][1]

    @staticmethod
    def _finalize(beam: dict, eos_id: int, length_penalty: float) -> tuple[float, list[int]]:
        """Score by full beam length, emit ids without the trailing EOS."""
        ids = beam["ids"]
        norm = max(1, len(ids)) ** length_penalty
        out = ids[:-1] if ids and ids[-1] == eos_id else ids
        return beam["score"] / norm, out

    def _sample(self, emb, max_new_tokens, eos_id, temperature, top_k, top_p, seed):
        gen = torch.Generator()
        if seed is not None:
            gen.manual_seed(seed)
        cache = _Cache()
        out: list[int] = []
        x = emb[None]
        for _ in range(max_new_tokens):
            logits = self.forward(x, cache)[0, -1] / max(temperature, 1e-6)
            if top_k is not None:
                kth = torch.topk(logits, min(top_k, logits.shape[-1])).values[-1]
                logits = logits.masked_fill(logits < kth, float("-inf"))
            if top_p is not None:
                sorted_logits, order = torch.sort(logits, descending=True)
                probs = torch.softmax(sorted_logits, dim=-1)
                cum = torch.cumsum(probs, dim=-1)
                cut = cum - probs > top_p
                sorted_logits = sorted_logits.masked_fill(cut, float("-inf"))
                logits = torch.full_like(logits, float("-inf")).scatter(
                    0, order, sorted_logits
                )
            probs = torch.softmax(logits, dim=-1)
            tok = int(torch.multinomial(probs, 1, generator=gen))
            if tok == eos_id:
                break
            out.append(tok)
            x = self.tok_embed(torch.tensor([[tok]]))
        return out
