"""Image-dependent byte keystream derived from ordered triads."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .errors import EmptyImage, InvalidConfig
from .triads import Triad, TriadSet, round_half_away


def pixel_sum(img) -> int:
    """Exact sum of all pixel values."""
    arr = np.asarray(img)
    if arr.size == 0:
        raise EmptyImage("image has no pixels")
    return int(arr.sum(dtype=np.int64))


@dataclass(frozen=True)
class KeystreamParams:
    t: int
    S_P: int

    def __post_init__(self):
        if self.t < 1:
            raise InvalidConfig("t must be a positive integer")
        if self.S_P < 0:
            raise InvalidConfig("S_P must be non-negative")

    @property
    def r(self) -> int:
        return round_half_away(Fraction(self.S_P, self.t))


def keystream(triads: Union[TriadSet, Iterable[Triad]], params: KeystreamParams) -> np.ndarray:
    """beta(j) = (|r*k1 + l1 + k2| + S_P) mod 256 for each triad j, as uint8."""
    if not isinstance(triads, TriadSet):
        triads = TriadSet.from_triads(triads)
    r = params.r
    k1 = triads.k[:, 0]
    k2 = triads.k[:, 1]
    l1 = triads.l[:, 0]
    bound = abs(r) * int(np.abs(k1).max(initial=0)) + int(np.abs(l1).max(initial=0)) + int(np.abs(k2).max(initial=0))
    if bound < 2**62:
        tr = np.abs(r * k1 + l1 + k2)
    else:
        tr = np.abs(r * k1.astype(object) + l1 + k2)
    return ((tr % 256 + params.S_P % 256) % 256).astype(np.uint8)
