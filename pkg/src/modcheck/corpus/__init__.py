"""Class diagrams and modal object diagrams shipped with the package."""

from pathlib import Path


def corpus_path(*parts: str) -> Path:
    """Path of a bundled corpus file, e.g. ``corpus_path("ms1", "mod1.1.od")``."""
    return Path(__file__).parent.joinpath(*parts)
