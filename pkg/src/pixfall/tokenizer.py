"""Byte-level BPE tokenizer.

Ids 0..255 are the raw bytes; every learned merge appends one id.  Text
is chunked at whitespace boundaries before merging, and whitespace runs
are chunks of their own, so decoding is an exact inverse of encoding
for any input.  Training greedily merges the highest-frequency adjacent
pair; ties break on the lexicographically smallest (left, right) byte
strings, which makes training deterministic.

The model-side vocabulary appends six special ids after the byte-pair
ids, in the fixed order below.
"""

from __future__ import annotations

import re

import torch

from .errors import EmptyCorpus, InvalidTarget, UnknownToken

SPECIALS = ("<pad>", "<bos>", "<eos>", "<sep>", "<img>", "<txt>")

_CHUNK_RE = re.compile(r"\s+|\S+")


def _chunks(text: str) -> list[bytes]:
    return [c.encode("utf-8") for c in _CHUNK_RE.findall(text)]


class BPETokenizer:
    def __init__(self, merges: list[tuple[bytes, bytes]] | None = None):
        self.merges: list[tuple[bytes, bytes]] = list(merges or [])
        self._rebuild()

    def _rebuild(self) -> None:
        self.vocab: dict[int, bytes] = {i: bytes([i]) for i in range(256)}
        self.rank: dict[tuple[bytes, bytes], int] = {}
        for i, (left, right) in enumerate(self.merges):
            self.rank[(left, right)] = i
            self.vocab[256 + i] = left + right
        self.token_id = {tok: i for i, tok in self.vocab.items()}

    @property
    def vocab_size(self) -> int:
        return len(self.vocab)

    def special_id(self, name: str) -> int:
        return self.vocab_size + SPECIALS.index(name)

    @property
    def model_vocab_size(self) -> int:
        return self.vocab_size + len(SPECIALS)

    def _merge_chunk(self, parts: list[bytes]) -> list[bytes]:
        while len(parts) > 1:
            best = None
            for i in range(len(parts) - 1):
                r = self.rank.get((parts[i], parts[i + 1]))
                if r is not None and (best is None or r < best[0]):
                    best = (r, parts[i], parts[i + 1])
            if best is None:
                break
            _, left, right = best
            merged = []
            i = 0
            while i < len(parts):
                if i + 1 < len(parts) and parts[i] == left and parts[i + 1] == right:
                    merged.append(left + right)
                    i += 2
                else:
                    merged.append(parts[i])
                    i += 1
            parts = merged
        return parts

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for chunk in _chunks(text):
            parts = self._merge_chunk([bytes([b]) for b in chunk])
            ids.extend(self.token_id[p] for p in parts)
        return ids

    def decode(self, ids: list[int], errors: str = "strict") -> str:
        """Byte-concatenate token ids back into text.

        ``errors`` follows :meth:`bytes.decode`; token boundaries need
        not align with UTF-8 character boundaries, so generated ids can
        form invalid sequences worth decoding with ``"replace"``.
        """
        data = b""
        for i in ids:
            tok = self.vocab.get(int(i))
            if tok is None:
                raise UnknownToken(f"id {int(i)} outside vocabulary of {self.vocab_size}")
            data += tok
        return data.decode("utf-8", errors=errors)

    def token_count(self, text: str) -> int:
        """Number of byte-pair tokens ``text`` encodes to."""
        return len(self.encode(text))

    @classmethod
    def train(cls, texts: list[str], vocab_size: int) -> "BPETokenizer":
        """Learn merges until the vocabulary reaches ``vocab_size`` ids.

        Training stops early once no adjacent pair occurs at least
        twice; merging a pair seen only once cannot compress anything.
        """
        if vocab_size <= 256:
            raise InvalidTarget(f"vocab_size must exceed 256, got {vocab_size}")
        chunk_counts: dict[bytes, int] = {}
        for text in texts:
            for chunk in _chunks(text):
                chunk_counts[chunk] = chunk_counts.get(chunk, 0) + 1
        if not chunk_counts:
            raise EmptyCorpus("no chunks in training corpus")
        tok = cls()
        tok._continue_training(
            {tuple(bytes([b]) for b in c): n for c, n in chunk_counts.items()},
            vocab_size,
        )
        return tok

    def _continue_training(
        self, parted: dict[tuple[bytes, ...], int], vocab_size: int
    ) -> None:
        while self.vocab_size < vocab_size:
            pair_counts: dict[tuple[bytes, bytes], int] = {}
            for parts, n in parted.items():
                for i in range(len(parts) - 1):
                    pair = (parts[i], parts[i + 1])
                    pair_counts[pair] = pair_counts.get(pair, 0) + n
            if not pair_counts:
                break
            best = min(pair_counts, key=lambda p: (-pair_counts[p], p[0], p[1]))
            if pair_counts[best] < 2:
                break
            self.merges.append(best)
            self._rebuild()
            updated: dict[tuple[bytes, ...], int] = {}
            for parts, n in parted.items():
                merged = []
                i = 0
                while i < len(parts):
                    if (
                        i + 1 < len(parts)
                        and parts[i] == best[0]
                        and parts[i + 1] == best[1]
                    ):
                        merged.append(best[0] + best[1])
                        i += 2
                    else:
                        merged.append(parts[i])
                        i += 1
                key = tuple(merged)
                updated[key] = updated.get(key, 0) + n
            parted = updated

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("BPEV1\n")
            fh.write(f"merges {len(self.merges)}\n")
            for left, right in self.merges:
                fh.write(f"{left.hex()} {right.hex()}\n")
            fh.write(f"tokens {len(self.vocab)}\n")
            for i in sorted(self.vocab):
                fh.write(f"{i}\t{self.vocab[i].hex()}\n")

    @classmethod
    def load(cls, path: str) -> "BPETokenizer":
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "BPEV1":
                raise ValueError(f"bad vocabulary header {header!r}")
            tag, n = fh.readline().split()
            if tag != "merges":
                raise ValueError("expected merges section")
            merges = []
            for _ in range(int(n)):
                left, right = fh.readline().split()
                merges.append((bytes.fromhex(left), bytes.fromhex(right)))
            tok = cls(merges)
            tag, m = fh.readline().split()
            if tag != "tokens":
                raise ValueError("expected tokens section")
            for _ in range(int(m)):
                ident, hexval = fh.readline().split("\t")
                if tok.vocab[int(ident)] != bytes.fromhex(hexval.strip()):
                    raise ValueError(f"token table mismatch at id {ident}")
        return tok


def merge_vocabs(base: BPETokenizer, new: BPETokenizer) -> BPETokenizer:
    """Union of two vocabularies, base ids preserved.

    Base merges keep their order and ids; merges from ``new`` append
    afterwards in their own order, skipping any whose product byte
    string already exists (the base merge chain can still build it), so
    every token byte string stays unique.
    """
    merges = list(base.merges)
    existing = {tok for tok in base.vocab.values()}
    for left, right in new.merges:
        product = left + right
        if product in existing:
            continue
        merges.append((left, right))
        existing.add(product)
    return BPETokenizer(merges)


def expand_vocab(base: BPETokenizer, new: BPETokenizer, lm, seed: int, init: str = "random"):
    """Merge a newly trained vocabulary into the base one and grow the
    model's embedding and output rows to match.

    Tokens already in the base keep their ids and their embedding rows
    bitwise.  Genuinely new tokens get fresh ids; their input-embedding
    and output-head rows are drawn from N(0, sigma^2) with sigma the
    standard deviation of the corresponding base byte-pair rows
    (``init="random"``) or set to the mean base row (``init="mean"``).
    Special tokens stay at the end of the id space, so their rows move
    to the new tail positions unchanged in value.

    Returns ``(merged vocabulary, expanded model)``.
    """
    from .lm import DecoderLM, LMConfig

    if init not in ("random", "mean"):
        raise ValueError(f"init must be 'random' or 'mean', got {init!r}")
    merged = merge_vocabs(base, new)
    n_base = base.vocab_size
    n_new = merged.vocab_size - n_base
    old_cfg = lm.cfg
    new_cfg = LMConfig(
        vocab_size=old_cfg.vocab_size + n_new,
        d_model=old_cfg.d_model,
        n_layers=old_cfg.n_layers,
        n_heads=old_cfg.n_heads,
        d_ff=old_cfg.d_ff,
        max_positions=old_cfg.max_positions,
    )
    expanded = DecoderLM(new_cfg)
    old_state = lm.state_dict()
    new_state = expanded.state_dict()
    gen = torch.Generator().manual_seed(seed)
    for name, tensor in old_state.items():
        if name in ("tok_embed.weight", "lm_head.weight"):
            base_rows = tensor[:n_base]
            grown = torch.empty(
                (new_cfg.vocab_size, tensor.shape[1]), dtype=tensor.dtype
            )
            grown[:n_base] = base_rows
            if n_new:
                if init == "random":
                    sigma = float(base_rows.std())
                    grown[n_base : n_base + n_new] = (
                        torch.randn(n_new, tensor.shape[1], generator=gen) * sigma
                    )
                else:
                    grown[n_base : n_base + n_new] = base_rows.mean(dim=0)
            grown[n_base + n_new :] = tensor[n_base:]
            new_state[name] = grown
        else:
            new_state[name] = tensor
    expanded.load_state_dict(new_state)
    return merged, expanded
