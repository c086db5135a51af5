"""Encryption and decryption of 8-bit grayscale images.

Images are 2-D ``uint8`` arrays of shape ``(m, n)`` (rows, columns).  The
cipher works on the column-major linearization, so pixel ``i`` (1-based) is
row ``(i - 1) % m``, column ``(i - 1) // m``.
"""

from __future__ import annotations

import dataclasses
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import EmptyImage, InvalidConfig, LengthMismatch, SumMismatchWarning, UnsupportedImage
from .keystream import KeystreamParams, keystream, pixel_sum
from .sbox import SBox, build_sbox, check_prime
from .triads import TriadGenConfig, cached_triads

KEY_BITS = 28

# k3 upper endpoints used for square images of side 256, 512 and 1024.
PAPER_B3 = {256: 691, 512: 3036, 1024: 5071}


def as_gray(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise UnsupportedImage(f"expected a 2-D grayscale raster, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyImage("image has no pixels")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer) or arr.min() < 0 or arr.max() > 255:
            raise UnsupportedImage("pixels must be 8-bit values in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def linearize(img) -> np.ndarray:
    return as_gray(img).ravel(order="F")


def delinearize(values, shape: tuple[int, int]) -> np.ndarray:
    return np.asarray(values, dtype=np.uint8).reshape(shape, order="F")


@dataclass(frozen=True)
class PublicParams:
    """Grid endpoints agreed in the open between sender and receiver."""

    A1: Fraction = Fraction("-1.0541")
    B1: Fraction = Fraction("-0.8514")
    A2: Fraction = Fraction("-1.0541")
    B2: Fraction = Fraction("-0.8514")
    A3: int = 401
    B3: int = 691

    def __post_init__(self):
        for name in ("A1", "B1", "A2", "B2"):
            v = getattr(self, name)
            object.__setattr__(self, name, Fraction(repr(v)) if isinstance(v, float) else Fraction(v))

    @classmethod
    def for_size(cls, m: int) -> "PublicParams":
        """Grid used in the reference experiments for m x m images."""
        try:
            return cls(B3=PAPER_B3[m])
        except KeyError:
            raise InvalidConfig(f"no reference B3 for image side {m}") from None


@dataclass(frozen=True)
class SecretKeys:
    a1: int = 2
    b1: int = 1000
    a2: int = 19
    b2: int = 1000
    a3: int = 5
    delta: int = 1000
    L: int = 90000
    t: int = 2
    p: int = 293
    S_P: Optional[int] = None
    public: PublicParams = dataclasses.field(default_factory=PublicParams)

    SECRET_FIELDS = ("a1", "b1", "a2", "b2", "a3", "delta", "L", "S_P", "t", "p")

    def __post_init__(self):
        for name in self.SECRET_FIELDS:
            v = getattr(self, name)
            if v is None:
                continue
            if v < 0 or v >= 2**KEY_BITS:
                raise InvalidConfig(f"key {name}={v} does not fit in {KEY_BITS} bits")
        check_prime(self.p)

    def with_pixel_sum(self, S_P: int) -> "SecretKeys":
        return dataclasses.replace(self, S_P=S_P)

    def triad_config(self, count: int) -> TriadGenConfig:
        pub = self.public
        return TriadGenConfig(
            A1=pub.A1, B1=pub.B1, A2=pub.A2, B2=pub.B2, A3=pub.A3, B3=pub.B3,
            a1=self.a1, b1=self.b1, a2=self.a2, b2=self.b2, a3=self.a3,
            delta=self.delta, L=self.L, count=count,
        )


def diffuse(img, beta) -> np.ndarray:
    arr = as_gray(img)
    beta = np.asarray(beta, dtype=np.uint8).ravel()
    if beta.size != arr.size:
        raise LengthMismatch(f"keystream has {beta.size} bytes for {arr.size} pixels")
    # uint8 addition wraps modulo 256
    return delinearize(linearize(arr) + beta, arr.shape)


def undiffuse(img, beta) -> np.ndarray:
    arr = as_gray(img)
    beta = np.asarray(beta, dtype=np.uint8).ravel()
    if beta.size != arr.size:
        raise LengthMismatch(f"keystream has {beta.size} bytes for {arr.size} pixels")
    return delinearize(linearize(arr) - beta, arr.shape)


def confuse(img, s: SBox) -> np.ndarray:
    return s.forward[as_gray(img)]


def unconfuse(img, s: SBox) -> np.ndarray:
    return s.backward[as_gray(img)]


def session(shape: tuple[int, int], keys: SecretKeys):
    """Keystream and S-box for an image of the given shape under keys with S_P set."""
    if keys.S_P is None:
        raise InvalidConfig("S_P is required")
    m, n = shape
    triads = cached_triads(keys.triad_config(m * n))
    beta = keystream(triads, KeystreamParams(keys.t, keys.S_P))
    return beta, build_sbox(keys.p, keys.t, keys.S_P)


def encrypt(img, keys: SecretKeys) -> np.ndarray:
    """Encrypt ``img``; S_P is always computed from the image, never taken from ``keys``."""
    arr = as_gray(img)
    beta, s = session(arr.shape, keys.with_pixel_sum(pixel_sum(arr)))
    return confuse(diffuse(arr, beta), s)


def encrypt_with_keys(img, keys: SecretKeys) -> tuple[np.ndarray, SecretKeys]:
    """Like :func:`encrypt` but also return the keys completed with S_P for the receiver."""
    arr = as_gray(img)
    full = keys.with_pixel_sum(pixel_sum(arr))
    beta, s = session(arr.shape, full)
    return confuse(diffuse(arr, beta), s), full


def decrypt(cimg, keys: SecretKeys) -> np.ndarray:
    arr = as_gray(cimg)
    beta, s = session(arr.shape, keys)
    plain = undiffuse(unconfuse(arr, s), beta)
    if pixel_sum(plain) != keys.S_P:
        warnings.warn(
            f"pixel sum of decrypted image ({pixel_sum(plain)}) differs from S_P={keys.S_P}",
            SumMismatchWarning,
            stacklevel=2,
        )
    return plain
