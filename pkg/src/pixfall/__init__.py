"""Pixel-rendered fallback word encoder for decoder-only language models.

Words outside a frozen byte-pair vocabulary are rendered into character
pixel patches, encoded by a small transformer into one vector per word,
and injected into the decoder's input embedding sequence.  The package
also ships a byte-window variant of the encoder, a vocabulary-expansion
baseline, the two-stage training loop (alignment pretraining, then
low-rank decomposed adaptation), and analysis tools for translation
quality, token compression, analytic cost, and the soft-vs-vocab
embedding gap.
"""

from .data import ParallelCorpus, gen_cipher_task, gen_codeswitch_task
from .encoder import EncoderConfig, FallbackEncoder
from .lm import DecoderLM, LMConfig
from .tokenizer import BPETokenizer, expand_vocab, merge_vocabs
from .training.loop import TrainConfig, train_stage1, train_stage2

__version__ = "0.1.0"

__all__ = [
    "BPETokenizer",
    "DecoderLM",
    "EncoderConfig",
    "FallbackEncoder",
    "LMConfig",
    "ParallelCorpus",
    "TrainConfig",
    "expand_vocab",
    "gen_cipher_task",
    "gen_codeswitch_task",
    "merge_vocabs",
    "train_stage1",
    "train_stage2",
    "__version__",
]
