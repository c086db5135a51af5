"""Security metrics for S-boxes and cipher images.

S-box metrics follow the conventions common in the dynamic S-box literature,
which differ from textbook definitions in places:

* ``sbox_nl`` is the minimum nonlinearity over the coordinate (single output
  bit) functions, not over all component functions.
* ``sbox_dap`` counts unordered input pairs ``{x, x ^ dx}``, i.e. half the
  difference-table entry, divided by 2**n.
* ``sbox_bic`` reports min/avg/max over output-bit pairs of the avalanche
  probability of their XOR, averaged over the input bits.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Union

import numpy as np

from .errors import DegenerateVariance, DimensionMismatch, EmptyImage
from .sbox import SBox


def _table(s) -> np.ndarray:
    arr = np.asarray(s.forward if isinstance(s, SBox) else s, dtype=np.int64)
    n = len(arr)
    if n & (n - 1) or n < 2:
        raise ValueError("S-box size must be a power of two")
    return arr


def _bits(s: np.ndarray) -> int:
    return len(s).bit_length() - 1


def fwht(values) -> np.ndarray:
    """Walsh-Hadamard transform (natural order, unnormalized) of a length-2^k vector."""
    h = np.array(values, dtype=np.int64)
    n = len(h)
    step = 1
    while step < n:
        h = h.reshape(-1, 2, step)
        h = np.stack([h[:, 0] + h[:, 1], h[:, 0] - h[:, 1]], axis=1)
        step *= 2
    return h.reshape(n)


def walsh_spectrum(f) -> np.ndarray:
    """Walsh spectrum of a Boolean function given by its truth table of 0/1 values."""
    return fwht(1 - 2 * np.asarray(f, dtype=np.int64))


def boolean_nonlinearity(f) -> int:
    n = len(f)
    return int(n // 2 - np.abs(walsh_spectrum(f)).max() // 2)


def sbox_nl(s) -> int:
    s = _table(s)
    return min(boolean_nonlinearity((s >> j) & 1) for j in range(_bits(s)))


def _parity(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    p = np.zeros_like(v)
    while v.any():
        p ^= v & 1
        v >>= 1
    return p


def linear_approximation_table(s) -> np.ndarray:
    """LAT[a, b] = #{x : a.x = b.S(x)} - 2^(n-1)."""
    s = _table(s)
    n = len(s)
    lat = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        lat[:, b] = walsh_spectrum(_parity(s & b)) // 2
    return lat


def sbox_lap(s) -> float:
    lat = linear_approximation_table(s)
    return float(np.abs(lat[1:, 1:]).max() / len(lat))


def difference_distribution_table(s) -> np.ndarray:
    s = _table(s)
    n = len(s)
    x = np.arange(n)
    ddt = np.zeros((n, n), dtype=np.int64)
    for dx in range(n):
        ddt[dx] = np.bincount(s[x ^ dx] ^ s, minlength=n)
    return ddt


def differential_uniformity(s) -> int:
    return int(difference_distribution_table(s)[1:].max())


def sbox_dap(s) -> float:
    s = _table(s)
    return differential_uniformity(s) / 2 / len(s)


def sac_matrix(s) -> np.ndarray:
    """M[i, j] = probability that output bit j flips when input bit i flips."""
    s = _table(s)
    n = _bits(s)
    x = np.arange(len(s))
    m = np.empty((n, n))
    for i in range(n):
        d = s[x ^ (1 << i)] ^ s
        for j in range(n):
            m[i, j] = ((d >> j) & 1).mean()
    return m


def sbox_sac(s) -> tuple[float, float, float]:
    m = sac_matrix(s)
    return float(m.min()), float(m.mean()), float(m.max())


def bic_sac_values(s) -> np.ndarray:
    """Per output-bit pair (j < k): flip probability of bit_j ^ bit_k, averaged over input bits."""
    s = _table(s)
    n = _bits(s)
    x = np.arange(len(s))
    values = []
    for j in range(n):
        for k in range(j + 1, n):
            g = ((s >> j) ^ (s >> k)) & 1
            values.append(np.mean([(g[x ^ (1 << i)] ^ g).mean() for i in range(n)]))
    return np.array(values)


def sbox_bic(s) -> tuple[float, float, float]:
    v = bic_sac_values(s)
    return float(v.min()), float(v.mean()), float(v.max())


@dataclass(frozen=True)
class SBoxMetrics:
    nl: int
    lap: float
    sac_min: float
    sac_avg: float
    sac_max: float
    bic_min: float
    bic_avg: float
    bic_max: float
    dap: float

    def as_dict(self) -> dict:
        return asdict(self)


def sbox_metrics(s) -> SBoxMetrics:
    return SBoxMetrics(sbox_nl(s), sbox_lap(s), *sbox_sac(s), *sbox_bic(s), sbox_dap(s))


# ---- image metrics -------------------------------------------------------

def _image(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.size == 0:
        raise EmptyImage("image has no pixels")
    return arr


def histogram(img) -> np.ndarray:
    return np.bincount(_image(img).ravel(), minlength=256)


def entropy(img) -> float:
    h = histogram(img)
    p = h[h > 0] / h.sum()
    return float(-(p * np.log2(p)).sum())


def chi_square(img) -> float:
    """Chi-square statistic of the 256-bin histogram against the uniform distribution."""
    h = histogram(img)
    expected = h.sum() / 256
    return float(((h - expected) ** 2 / expected).sum())


DIRECTIONS = ("horizontal", "diagonal", "vertical")


def adjacent_pairs(img, direction: str) -> tuple[np.ndarray, np.ndarray]:
    arr = _image(img).astype(np.float64)
    if direction == "horizontal":
        return arr[:, :-1].ravel(), arr[:, 1:].ravel()
    if direction == "vertical":
        return arr[:-1, :].ravel(), arr[1:, :].ravel()
    if direction == "diagonal":
        return arr[:-1, :-1].ravel(), arr[1:, 1:].ravel()
    raise ValueError(f"unknown direction {direction!r}")


def adjacent_correlation(
    img,
    direction: str = "horizontal",
    pairs: Union[int, str, None] = "all",
    seed: Optional[int] = 0,
) -> float:
    """Pearson correlation of adjacent pixel values (population moments).

    With an integer ``pairs`` a random subset of that many pairs is drawn from
    a generator seeded with ``seed``.
    """
    x, y = adjacent_pairs(img, direction)
    if x.size == 0:
        raise EmptyImage(f"no adjacent pixel pairs in the {direction} direction")
    if pairs not in (None, "all"):
        rng = np.random.default_rng(seed)
        idx = rng.choice(x.size, size=min(int(pairs), x.size), replace=False)
        x, y = x[idx], y[idx]
    dx = x - x.mean()
    dy = y - y.mean()
    vx = (dx * dx).mean()
    vy = (dy * dy).mean()
    if vx == 0 or vy == 0:
        raise DegenerateVariance("correlation undefined for constant pixel sequences")
    return float((dx * dy).mean() / math.sqrt(vx * vy))


def _pair(c1, c2) -> tuple[np.ndarray, np.ndarray]:
    a, b = _image(c1), _image(c2)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a, b


def npcr(c1, c2) -> float:
    a, b = _pair(c1, c2)
    return float((a != b).mean())


def uaci(c1, c2) -> float:
    a, b = _pair(c1, c2)
    return float(np.abs(a.astype(np.int64) - b.astype(np.int64)).mean() / 255)


@dataclass(frozen=True)
class ImageMetrics:
    entropy: float
    corr_h: float
    corr_d: float
    corr_v: float
    chi_square: float
    histogram: tuple

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("histogram")
        return d


def image_metrics(img, pairs: Union[int, str] = "all", seed: int = 0) -> ImageMetrics:
    def corr(direction):
        try:
            return adjacent_correlation(img, direction, pairs, seed)
        except DegenerateVariance:
            return float("nan")

    return ImageMetrics(
        entropy(img),
        corr("horizontal"),
        corr("diagonal"),
        corr("vertical"),
        chi_square(img),
        tuple(int(v) for v in histogram(img)),
    )
