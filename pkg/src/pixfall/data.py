"""Corpus files and synthetic task generation.

Everything here must reproduce bit-for-bit across platforms, so random
choices come from a SplitMix64 generator (pure 64-bit integer
arithmetic, constants below) rather than a float-based RNG.

The cipher task is a desk-scale stand-in for translation: target
sentences are drawn from a small English vocabulary and each letter of
a source word is substituted through a fixed seeded bijection into a
non-ASCII block covered by the embedded font.  Applying the inverse
substitution recovers the target exactly, so perfect translations are
achievable and scores are interpretable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyCorpus, EmptyField, MissingTab


class SplitMix64:
    """Deterministic 64-bit generator (SplitMix64 finalizer).

    state' = state + 0x9E3779B97F4A7C15; output mixes the new state by
    xor-shift-multiply with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
    """

    _MASK = 0xFFFFFFFFFFFFFFFF

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq):
        return seq[self.randint(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def coin(self, p: float) -> bool:
        """True with probability p, using 53 high bits for the uniform."""
        return (self.next_u64() >> 11) / float(1 << 53) < p


@dataclass
class ParallelCorpus:
    pairs: list[tuple[str, str]] = field(default_factory=list)
    alignments: list[list[tuple[int, int]]] | None = None

    def __len__(self) -> int:
        return len(self.pairs)


def load_tsv(path: str) -> ParallelCorpus:
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "\t" not in line:
                raise MissingTab(lineno)
            source, target = line.split("\t", 1)
            if not source or not target:
                raise EmptyField(lineno)
            pairs.append((source, target))
    if not pairs:
        raise EmptyCorpus(f"no pairs in {path}")
    return ParallelCorpus(pairs=pairs)


def save_tsv(path: str, corpus: ParallelCorpus) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for source, target in corpus.pairs:
            fh.write(f"{source}\t{target}\n")


def load_alignments(path: str) -> list[list[tuple[int, int]]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            pairs = []
            for item in line.split():
                i, j = item.split("-")
                pairs.append((int(i), int(j)))
            out.append(pairs)
    return out


def save_alignments(path: str, alignments: list[list[tuple[int, int]]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pairs in alignments:
            fh.write(" ".join(f"{i}-{j}" for i, j in pairs) + "\n")


# Small English-like vocabulary for synthetic sentences; all lowercase
# ASCII so the cipher image is fully non-ASCII.
WORDS = (
    "the", "a", "cat", "dog", "bird", "fish", "man", "woman", "child",
    "house", "tree", "river", "stone", "sky", "road", "book", "door",
    "sees", "finds", "takes", "gives", "holds", "makes", "likes",
    "near", "under", "over", "with", "from", "into", "small", "big",
    "old", "new", "red", "green", "dark", "warm", "quiet", "every",
)

# Source letters map into one of these blocks; both are covered by the
# embedded font and both are multi-byte in UTF-8.
_SCRIPT_BLOCKS = {
    "cyrillic": [chr(c) for c in range(0x0430, 0x0450)],
    "devanagari": [chr(c) for c in range(0x0915, 0x0939)],
}


def _sentence(rng: SplitMix64) -> list[str]:
    length = 3 + rng.randint(6)
    return [rng.choice(WORDS) for _ in range(length)]


def make_cipher(seed: int, script: str) -> dict[str, str]:
    """Fixed bijective letter substitution for a generation seed."""
    if script == "identity":
        return {}
    if script not in _SCRIPT_BLOCKS:
        raise ValueError(f"unknown script {script!r}")
    letters = sorted(set("".join(WORDS)))
    pool = list(_SCRIPT_BLOCKS[script])
    if len(pool) < len(letters):
        raise ValueError(f"script block too small for {len(letters)} letters")
    rng = SplitMix64(seed ^ 0xC1FE12)
    rng.shuffle(pool)
    return {ch: pool[i] for i, ch in enumerate(letters)}


def apply_cipher(word: str, cipher: dict[str, str]) -> str:
    return "".join(cipher.get(ch, ch) for ch in word)


def invert_cipher(cipher: dict[str, str]) -> dict[str, str]:
    return {v: k for k, v in cipher.items()}


def gen_cipher_task(
    n_pairs: int,
    seed: int,
    script: str = "cyrillic",
    permute: bool = False,
) -> ParallelCorpus:
    """Synthetic translation pairs with gold word alignments.

    Targets are random sentences over :data:`WORDS`; sources apply the
    fixed letter substitution and, with ``permute``, a seeded per-pair
    word shuffle.  Alignment entry i-j links source word i to target
    word j ("0-0 1-1 ..." when unpermuted).
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    cipher = make_cipher(seed, script)
    rng = SplitMix64(seed)
    pairs = []
    alignments = []
    for _ in range(n_pairs):
        target_words = _sentence(rng)
        order = list(range(len(target_words)))
        if permute:
            rng.shuffle(order)
        source_words = [apply_cipher(target_words[j], cipher) for j in order]
        pairs.append((" ".join(source_words), " ".join(target_words)))
        alignments.append([(i, j) for i, j in enumerate(order)])
    return ParallelCorpus(pairs=pairs, alignments=alignments)


def gen_codeswitch_task(
    n_pairs: int,
    seed: int,
    ratio: float,
    script: str = "cyrillic",
) -> ParallelCorpus:
    """Cipher pairs where each source word stays ASCII with probability
    ``ratio`` under a seeded per-word coin; the rest are ciphered."""
    if not 0.0 <= ratio <= 1.0:
        raise ValueError("ratio must be within [0, 1]")
    cipher = make_cipher(seed, script)
    rng = SplitMix64(seed)
    pairs = []
    alignments = []
    for _ in range(n_pairs):
        target_words = _sentence(rng)
        source_words = [
            w if rng.coin(ratio) else apply_cipher(w, cipher) for w in target_words
        ]
        pairs.append((" ".join(source_words), " ".join(target_words)))
        alignments.append([(i, i) for i in range(len(target_words))])
    return ParallelCorpus(pairs=pairs, alignments=alignments)


def ascii_word_fraction(corpus: ParallelCorpus) -> float:
    total = 0
    ascii_n = 0
    for source, _ in corpus.pairs:
        for word in source.split():
            total += 1
            if all(ord(c) <= 0x7F for c in word):
                ascii_n += 1
    return ascii_n / total if total else 0.0
