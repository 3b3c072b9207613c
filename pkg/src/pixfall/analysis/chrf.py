"""chrF++ translation metric.

Character n-gram F-scores (orders 1..6) blended with word n-gram
scores (orders 1..2), beta = 2 so recall weighs four times precision.
Character statistics run over the string with all whitespace removed,
so character n-grams cross word boundaries; word statistics split a
single leading or trailing punctuation mark into its own token.  The
per-order F-scores are averaged over the orders where at least one
side has any n-grams.
"""

from __future__ import annotations

import string
from collections import Counter
from typing import List, Sequence, Tuple

from ..errors import EmptyReference, ShapeError

CHAR_ORDER = 6
WORD_ORDER = 2
_PUNCT = frozenset(string.punctuation)

# (hypothesis total, reference total, matched) per n-gram order.
Stats = List[Tuple[int, int, int]]


def _char_profile(text: str, order: int) -> Counter:
    glued = "".join(text.split())
    return Counter(glued[i : i + order] for i in range(len(glued) - order + 1))


def _split_punct(token: str) -> List[str]:
    if len(token) > 1 and token[-1] in _PUNCT:
        return [token[:-1], token[-1]]
    if len(token) > 1 and token[0] in _PUNCT:
        return [token[0], token[1:]]
    return [token]


def _word_profile(text: str, order: int) -> Counter:
    tokens = [piece for raw in text.split() for piece in _split_punct(raw)]
    return Counter(
        tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1)
    )


def _overlap(hyp: Counter, ref: Counter) -> Tuple[int, int, int]:
    return (sum(hyp.values()), sum(ref.values()), sum((hyp & ref).values()))


def sentence_stats(hypothesis: str, reference: str) -> Stats:
    """N-gram totals and matches for one hypothesis/reference pair."""
    stats = [
        _overlap(_char_profile(hypothesis, n), _char_profile(reference, n))
        for n in range(1, CHAR_ORDER + 1)
    ]
    stats.extend(
        _overlap(_word_profile(hypothesis, n), _word_profile(reference, n))
        for n in range(1, WORD_ORDER + 1)
    )
    return stats


def score_stats(stats: Stats, beta: float = 2.0) -> float:
    """F-score in [0, 100] from per-order statistics.

    Orders where neither side has any n-grams are skipped; orders with
    n-grams but no matches contribute zero.
    """
    weight = beta * beta
    f_sum = 0.0
    seen = 0
    for hyp_total, ref_total, match in stats:
        if hyp_total == 0 and ref_total == 0:
            continue
        seen += 1
        if match == 0:
            continue
        precision = match / hyp_total
        recall = match / ref_total
        f_sum += (1.0 + weight) * precision * recall / (weight * precision + recall)
    return 100.0 * f_sum / seen if seen else 0.0


def chrf_pp(hypothesis: str, reference: str, beta: float = 2.0) -> float:
    if not reference:
        raise EmptyReference("reference must be non-empty")
    return score_stats(sentence_stats(hypothesis, reference), beta)


def chrf_pp_corpus(
    hypotheses: Sequence[str], references: Sequence[str], beta: float = 2.0
) -> float:
    """Corpus-level score: n-gram statistics pool across all pairs
    before the F computation, so long pairs weigh more than short ones."""
    if len(hypotheses) != len(references):
        raise ShapeError(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not references:
        raise EmptyReference("reference corpus must be non-empty")
    totals = [(0, 0, 0)] * (CHAR_ORDER + WORD_ORDER)
    for hypothesis, reference in zip(hypotheses, references):
        if not reference:
            raise EmptyReference("reference line must be non-empty")
        stats = sentence_stats(hypothesis, reference)
        totals = [
            (a + x, b + y, c + z) for (a, b, c), (x, y, z) in zip(totals, stats)
        ]
    return score_stats(totals, beta)
