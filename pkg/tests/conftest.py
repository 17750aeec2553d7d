from __future__ import annotations

import pytest

from seedcorpus import build_corpus, build_extended_corpus


@pytest.fixture(scope="session")
def corpus():
    """The seeded primary corpus: Z/4, Z/8, Z/9, Z/25, lengths up to 8."""
    return build_corpus()


@pytest.fixture(scope="session")
def extended_corpus():
    """Primary corpus plus Z/125 and polynomial-backend rings."""
    return build_extended_corpus()
