"""Vertices of S(G, t) as words of base-vertex ids.

A word is a plain ``tuple`` of ints ``(u_1, ..., u_t)``, most significant
letter first.  The dense index of a word is its mixed-radix value
``sum(u_i * n**(t - i))``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

Word = tuple[int, ...]

#: highest level accepted anywhere in the library
MAX_LEVEL = 62


class PrefixSplit(NamedTuple):
    """First differing position ``j`` (1-based, ``t + 1`` if equal) and the shared prefix."""

    j: int
    shared_prefix: Word


def check_level(t: int) -> None:
    if not 1 <= t <= MAX_LEVEL:
        raise ValueError(f"level t must be in 1..{MAX_LEVEL}, got {t}")


def make_extreme(x: int, t: int) -> Word:
    check_level(t)
    return (x,) * t


def is_extreme(w: Sequence[int]) -> bool:
    return all(z == w[0] for z in w)


def split_common_prefix(w: Sequence[int], w2: Sequence[int]) -> PrefixSplit:
    if len(w) != len(w2):
        raise ValueError(f"words have different lengths ({len(w)} != {len(w2)})")
    j = 0
    while j < len(w) and w[j] == w2[j]:
        j += 1
    return PrefixSplit(j + 1, tuple(w[:j]))


def check_word(w: Sequence[int], n: int, t: int | None = None) -> Word:
    w = tuple(w)
    if t is not None and len(w) != t:
        raise ValueError(f"word {format_word(w)} has length {len(w)}, expected {t}")
    if not w:
        raise ValueError("words must have at least one letter")
    for z in w:
        if not 0 <= z < n:
            raise ValueError(f"letter {z} out of range 0..{n - 1}")
    return w


def parse_word(text: str, n: int, t: int) -> Word:
    """Parse ``"u1,u2,...,ut"``."""
    try:
        letters = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"malformed word {text!r}: expected comma-separated ids") from None
    return check_word(letters, n, t)


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(z) for z in w)


def word_to_index(w: Sequence[int], n: int) -> int:
    idx = 0
    for z in w:
        idx = idx * n + z
    return idx


def index_to_word(idx: int, n: int, t: int) -> Word:
    letters = [0] * t
    for i in range(t - 1, -1, -1):
        idx, letters[i] = divmod(idx, n)
    return tuple(letters)


def extreme_index(x: int, n: int, t: int) -> int:
    """Dense index of ``x^t``."""
    if n == 1:
        return 0
    return x * (n**t - 1) // (n - 1)
