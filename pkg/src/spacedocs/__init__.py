"""Space-document analytics: QA, quiz generation, terminology gap, novelty."""

__version__ = "0.1.0"

from . import corpus, index, kgraph, lexicon, novelty, qa, quizgen, termgap  # noqa: F401
