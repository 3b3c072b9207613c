"""Shared fixtures for the test suite."""

from __future__ import annotations

import pytest
import torch

from pixfall.tokenizer import BPETokenizer

# Sentences reused wherever a small trained vocabulary is needed; mixed
# scripts so byte pairs from each range exist.
TRAIN_TEXTS = [
    "the cat sat on the mat",
    "the dog sat near the door",
    "a bird finds the river",
    "every child takes a book",
    "кот сидел на ковре",
    "собака у двери",
    "नमस्ते दुनिया",
]


@pytest.fixture(scope="session")
def tokenizer():
    return BPETokenizer.train(TRAIN_TEXTS, 320)


@pytest.fixture(autouse=True)
def _single_thread():
    """Keep tiny-tensor tests off the thread pool scheduler."""
    n = torch.get_num_threads()
    torch.set_num_threads(max(1, min(n, 4)))
    yield
    torch.set_num_threads(n)


@pytest.fixture
def announce(capfd):
    """Print a line straight to the terminal, bypassing capture."""

    def _announce(line: str) -> None:
        with capfd.disabled():
            print(line, flush=True)

    return _announce
