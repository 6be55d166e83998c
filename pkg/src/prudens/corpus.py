"""Access to the bundled ``.seqgame`` corpus.

The directory can be overridden with the ``PRUDENS_CORPUS`` environment
variable; file arguments that do not resolve in the working directory are
looked up there as well.
"""

import os
from pathlib import Path

from . import dsl

ENV_VAR = "PRUDENS_CORPUS"


def corpus_dir():
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "corpus"


def corpus_paths():
    return sorted(corpus_dir().glob("*.seqgame"))


def resolve(name):
    """Resolve a game path: as given, then relative to the corpus."""
    p = Path(name)
    if p.exists():
        return p
    candidate = corpus_dir() / name
    if candidate.exists():
        return candidate
    return p


def load_corpus():
    """Name -> Game for every bundled document."""
    return {path.stem: dsl.load(path) for path in corpus_paths()}
