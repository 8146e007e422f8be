"""Versioned expectations transcribed from the classification tables."""

import json
from importlib import resources


def load(name):
    """Load ``<name>.json`` (or a relative path below this package)."""
    ref = resources.files(__name__).joinpath(name if name.endswith(".json") else name + ".json")
    return json.loads(ref.read_text(encoding="utf-8"))


def path(name):
    return resources.files(__name__).joinpath(name)
