import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prudens import corpus


@pytest.fixture(scope="session")
def corpus_games():
    return corpus.load_corpus()


def small_games(count, start=0, **bounds):
    """Deterministic stream of small random games for differential tests."""
    from prudens import generator
    defaults = dict(max_players=2, max_strategies=4, max_histories=6)
    defaults.update(bounds)
    return [generator.generate_game(9_000_000 + 17 * k, **defaults)
            for k in range(start, start + count)]
