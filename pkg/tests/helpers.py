from gradedtraces.config import parse_file
from gradedtraces.nichols import build
from gradedtraces.runner import load_setup, resolve_config


def setup_of(name):
    return load_setup(parse_file(resolve_config(name)))


_ALGEBRAS = {}


def algebra(name, cap=40):
    if name not in _ALGEBRAS:
        s = setup_of(name)
        _ALGEBRAS[name] = (s, build(s.braiding, cap))
    return _ALGEBRAS[name]
