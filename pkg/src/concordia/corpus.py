"""Bundled test links.

The directory can be replaced by setting ``CONCORDIA_CORPUS``.
"""

import os
from pathlib import Path

from .link import parse_pd

_BUNDLED = Path(__file__).with_name("corpus")


def corpus_dir():
    env = os.environ.get("CONCORDIA_CORPUS")
    return Path(env) if env else _BUNDLED


def names():
    return sorted(p.stem for p in corpus_dir().glob("*.pd"))


def path(name):
    p = corpus_dir() / f"{name}.pd"
    if not p.exists():
        raise FileNotFoundError(f"no corpus link {name!r} in {corpus_dir()}")
    return p


def load(name):
    return parse_pd(path(name).read_text())


def load_all():
    return {n: load(n) for n in names()}
