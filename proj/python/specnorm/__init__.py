"""Exact half-space lattices, finite distributive lattices and bounded
homomorphism constructions.

Documents follow the same JSON schemas as the command-line tool. Vector
entries may be given as ints, fractions.Fraction or "p/q" strings.
"""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, ResourceGuard

FORMAT = _core.FORMAT

__all__ = [
    "FORMAT",
    "InputError",
    "ResourceGuard",
    "entail",
    "canon",
    "leq",
    "lattice_check",
    "lattice_dot",
    "hom_check",
    "construct",
    "verify_trace",
]


def _plain(doc):
    if isinstance(doc, Fraction):
        return str(doc)
    if isinstance(doc, dict):
        return {k: _plain(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [_plain(v) for v in doc]
    return doc


def _arg(doc):
    # Strings pass through: inline JSON, a file path or a built-in lattice id.
    if isinstance(doc, str):
        return doc
    return json.dumps(_plain(doc))


def _answer(pair):
    verdict, text = pair
    return verdict, json.loads(text)


def entail(a_side, b_side):
    """Whether the open half-spaces of a_side meet inside the union of those
    of b_side. Returns (holds, report) with a certificate or witness."""
    return _answer(_core.entail(_arg(list(a_side)), _arg(list(b_side))))


def canon(term):
    return _answer(_core.canon(_arg(term)))[1]["term"]


def leq(lhs, rhs):
    return _answer(_core.leq(_arg(lhs), _arg(rhs)))


def lattice_check(lattice):
    """(distributive and completely normal, report)."""
    return _answer(_core.lattice_check(_arg(lattice)))


def lattice_dot(lattice):
    return _core.lattice_dot(_arg(lattice))


def hom_check(hom, bound=None):
    return _answer(_core.hom_check(_arg(hom), bound))


def construct(lattice, stages=None, seed=None, lambda_cap=None, base=None):
    """Runs the staged construction. Returns (trace as JSON lines, report)."""
    cap = None if lambda_cap is None else str(lambda_cap)
    trace, report = _core.construct(_arg(lattice), stages, seed, cap, None if base is None else _arg(base))
    return trace, json.loads(report)


def verify_trace(trace, window=100):
    return _answer(_core.verify_trace(trace, window))
