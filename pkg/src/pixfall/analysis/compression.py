"""Token-per-word compression statistics.

The fallback network feeds the LM one vector per word, while a BPE
tokenizer may need many tokens for the same text; the ratio of the two
counts measures how much shorter the fallback input is.  A vocabulary
with no merges for a script over-segments every multi-byte character
into raw bytes, which is what drives the ratio far above one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from ..errors import EmptyCorpus
from ..textrender.segment import whitespace_segmenter
from ..tokenizer import BPETokenizer


@dataclass(frozen=True)
class LineStats:
    text: str
    n_tokens: int
    n_words: int
    n_bytes: int

    @property
    def ratio(self) -> float:
        return self.n_tokens / self.n_words if self.n_words else float("nan")


def line_stats(
    line: str,
    tokenizer: BPETokenizer,
    segmenter: Callable[[str], List[str]] = whitespace_segmenter,
) -> LineStats:
    words = [t for t in segmenter(line) if t]
    return LineStats(
        text=line,
        n_tokens=tokenizer.token_count(line),
        n_words=len(words),
        n_bytes=len(line.encode("utf-8")),
    )


def corpus_stats(
    lines: Sequence[str],
    tokenizer: BPETokenizer,
    segmenter: Callable[[str], List[str]] = whitespace_segmenter,
) -> Tuple[List[LineStats], float]:
    """Per-line statistics plus the pooled corpus ratio
    (total tokens / total words, not the mean of per-line ratios)."""
    stats = [line_stats(line, tokenizer, segmenter) for line in lines]
    total_words = sum(s.n_words for s in stats)
    if total_words == 0:
        raise EmptyCorpus("corpus contains no words")
    total_tokens = sum(s.n_tokens for s in stats)
    return stats, total_tokens / total_words


def compression_ratio(
    lines: Sequence[str],
    tokenizer: BPETokenizer,
    segmenter: Callable[[str], List[str]] = whitespace_segmenter,
) -> float:
    return corpus_stats(lines, tokenizer, segmenter)[1]
