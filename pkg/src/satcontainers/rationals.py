"""Exact rational parsing/formatting and canonical JSON emission.

Every weight and threshold in this package is a `fractions.Fraction`; floats
appear only in reporting fields that never feed back into control flow.
JSON output is canonicalized (sorted keys, fixed separators) so identical
invocations are byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction


def parse_fraction(text: str) -> Fraction:
    """Parse 'a/b' or a plain integer string into an exact Fraction."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def fraction_str(value: Fraction) -> str:
    """Serialize a rational as an explicit 'numerator/denominator' string."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, stable separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
