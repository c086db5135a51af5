"""Keyed 8x8 S-boxes from naturally ordered Mordell elliptic curves y^2 = x^3 + c over F_p."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidPrime, NotBijective, ZeroConstant


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


def check_prime(p: int) -> None:
    if p < 257 or p % 3 != 2 or not _is_prime(p):
        raise InvalidPrime(f"p={p} must be a prime >= 257 with p = 2 (mod 3)")


def curve_constant(p: int, t: int, S: int) -> int:
    c = (S + t) % p
    if c == 0:
        raise ZeroConstant(
            f"(S + t) mod p is 0 for S={S}, t={t}, p={p}; choose another t or p"
        )
    return c


def mec_points(p: int, c: int) -> np.ndarray:
    """All affine points of y^2 = x^3 + c (mod p), sorted by x then y, as a (p, 2) array.

    For p = 2 (mod 3) cubing permutes F_p, so every y has exactly one x.
    """
    check_prime(p)
    if c % p == 0:
        raise ZeroConstant("curve constant c must be nonzero mod p")
    c %= p
    xs = np.arange(p, dtype=np.int64)
    cubes = (xs * xs % p) * xs % p
    cube_root = np.empty(p, dtype=np.int64)
    cube_root[cubes] = xs
    ys = xs
    x_of_y = cube_root[(ys * ys - c) % p]
    order = np.lexsort((ys, x_of_y))
    return np.stack([x_of_y[order], ys[order]], axis=1)


@dataclass(frozen=True, eq=False)
class SBox:
    forward: np.ndarray
    backward: np.ndarray

    def __post_init__(self):
        self.forward.flags.writeable = False
        self.backward.flags.writeable = False

    def __eq__(self, other):
        return isinstance(other, SBox) and np.array_equal(self.forward, other.forward)

    def __len__(self):
        return len(self.forward)

    def table(self) -> np.ndarray:
        """16x16 layout where input i sits at row i % 16, column i // 16."""
        return self.forward.reshape(16, 16).T

    @classmethod
    def from_forward(cls, forward) -> "SBox":
        return invert_sbox(np.asarray(forward))


def invert_sbox(s) -> SBox:
    forward = np.asarray(s.forward if isinstance(s, SBox) else s, dtype=np.int64)
    n = len(forward)
    if forward.ndim != 1 or sorted(forward.tolist()) != list(range(n)):
        raise NotBijective("S-box is not a permutation")
    backward = np.empty(n, dtype=np.int64)
    backward[forward] = np.arange(n)
    dtype = np.uint8 if n <= 256 else np.int64
    return SBox(forward.astype(dtype), backward.astype(dtype))


def build_sbox(p: int, t: int, S: int) -> SBox:
    """y-coordinates below 256, read off the curve with c = (S + t) mod p in natural order."""
    check_prime(p)
    c = curve_constant(p, t, S)
    ys = mec_points(p, c)[:, 1]
    forward = ys[ys < 256]
    assert len(forward) == 256
    return invert_sbox(forward)
