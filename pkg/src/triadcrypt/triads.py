"""Quasi-resonant Rossby/drift wave triads.

Triads are generated from a rational parameterization of exactly resonant
triads by two auxiliary parameters ``(a, b)``.  Each grid point ``(a, b, k3)``
is scaled to integer wave vectors by nearest-integer rounding, which
introduces a small frequency mismatch; triads whose mismatch stays below the
detuning level ``1/delta`` and whose components are bounded by ``L`` are kept.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

import numpy as np

from .errors import InsufficientTriads, InvalidConfig, SingularParameters, ZeroWaveVector

Number = Union[int, float, Fraction]


class RatioTriple(NamedTuple):
    k1_over_k3: float
    l3_over_k3: float
    l1_over_k3: float


def round_half_away(x):
    """Nearest integer with ties rounded away from zero (works on scalars and arrays)."""
    if isinstance(x, np.ndarray):
        return np.copysign(np.floor(np.abs(x) + 0.5), x).astype(np.int64)
    if isinstance(x, Fraction):
        q = math.floor(abs(x) + Fraction(1, 2))
        return q if x >= 0 else -q
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def _denominator_factors(a, b):
    a2 = a * a
    b2 = b * b
    d1 = a2 - 3 * b2 - 1
    d2 = a2 - 3 * b2 - 2 * b + 1
    q = 2 * (11 - 3 * a2) * b2 + (a2 + 1) * (a2 + 1) - 16 * a * b + 9 * (b2 * b2)
    return d1, d2, q


def _ratios(a, b):
    # Powers are spelled as products so scalar and numpy evaluation are bit-identical.
    a2 = a * a
    b2 = b * b
    b4 = b2 * b2
    d1, d2, q = _denominator_factors(a, b)
    s = a2 + b * (2 - 3 * b) + 1
    k1 = (s * s * s) / (d2 * q)
    l3 = (6 * (a2 + a - 1) * b2 - (a + 1) * (a + 1) * (a2 + 1) + 4 * a * b - 9 * b4) / (d1 * d2)
    u = 3 * b2 + 2 * b - 1
    v = 3 * b2 + 1
    poly = (
        a2 * a2 * a2
        + 2 * a2 * a2 * a
        + a2 * a2 * (-9 * b2 - 6 * b + 3)
        - 4 * a2 * a * u
        + 3 * a2 * u * u
        + 2 * a * (9 * b4 + 12 * b2 * b + 14 * b2 - 4 * b + 1)
        - v * v * (3 * b2 + 6 * b - 1)
    )
    l1 = s * poly / (d1 * d2 * q)
    return k1, l3, l1


def _check_singular(a: Number, b: Number) -> None:
    fa, fb = Fraction(a), Fraction(b)
    if any(f == 0 for f in _denominator_factors(fa, fb)):
        raise SingularParameters(f"parameterization is singular at (a, b) = ({a}, {b})")


def hayat_ratios(a: Number, b: Number) -> RatioTriple:
    """Return ``(k1/k3, l3/k3, l1/k3)`` of the exactly resonant triad at ``(a, b)``.

    The singularity test is exact (rational); the ratios are evaluated in
    binary64.
    """
    _check_singular(a, b)
    fa, fb = float(a), float(b)
    try:
        triple = RatioTriple(*_ratios(fa, fb))
    except (ZeroDivisionError, OverflowError):
        raise SingularParameters(f"ratios overflow at (a, b) = ({a}, {b})") from None
    if not all(math.isfinite(v) for v in triple):
        raise SingularParameters(f"non-finite ratios at (a, b) = ({a}, {b})")
    return triple


def dispersion_omega(k: int, l: int) -> float:
    """Rossby wave frequency k / (k^2 + l^2) (Coriolis parameter -1, no deformation term)."""
    if k == 0 and l == 0:
        raise ZeroWaveVector("frequency undefined for the zero wave vector")
    return k / (k * k + l * l)


@dataclass(frozen=True)
class Triad:
    k1: int
    l1: int
    k2: int
    l2: int
    k3: int
    l3: int
    a: Fraction
    b: Fraction
    omega_defect: float

    @property
    def order_key(self) -> tuple:
        return (self.a, self.b, self.k3)

    @property
    def wavenumbers(self) -> tuple[int, int, int, int, int, int]:
        return (self.k1, self.l1, self.k2, self.l2, self.k3, self.l3)


def triad_less(x: Triad, y: Triad) -> bool:
    """The lexicographic order on (a, b, k3); reflexive, so ``triad_less(x, x)`` holds."""
    if x.a != y.a:
        return x.a < y.a
    if x.b != y.b:
        return x.b < y.b
    return x.k3 <= y.k3


def sort_triads(ts: Iterable[Triad]) -> list[Triad]:
    return sorted(ts, key=lambda t: t.order_key)


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        # Decimal literal semantics: 1.0541 means 10541/10000, not the binary double.
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class TriadGenConfig:
    """Grid and acceptance parameters for triad generation.

    ``A1..B2`` bound the auxiliary-parameter grids, stepped by ``a1/b1`` and
    ``a2/b2``; ``k3`` runs from ``A3`` to ``B3`` in steps of ``a3``.
    """

    A1: Fraction
    B1: Fraction
    A2: Fraction
    B2: Fraction
    A3: int
    B3: int
    a1: int
    b1: int
    a2: int
    b2: int
    a3: int
    delta: int
    L: int
    count: int

    def __post_init__(self):
        for name in ("A1", "B1", "A2", "B2"):
            object.__setattr__(self, name, _as_fraction(getattr(self, name)))
        for name in ("a1", "b1", "a2", "b2", "a3", "delta", "L"):
            if int(getattr(self, name)) < 1:
                raise InvalidConfig(f"{name} must be a positive integer")
        if self.A3 < 1:
            raise InvalidConfig("A3 must be >= 1 so that every k3 is positive")
        if self.count < 0:
            raise InvalidConfig("count must be non-negative")
        if self.A1 > self.B1 or self.A2 > self.B2 or self.A3 > self.B3:
            raise InvalidConfig("every grid needs A_i <= B_i")

    @property
    def alpha1(self) -> Fraction:
        return Fraction(self.a1, self.b1)

    @property
    def alpha2(self) -> Fraction:
        return Fraction(self.a2, self.b2)

    def grid_a(self) -> list[Fraction]:
        return _grid(self.A1, self.B1, self.alpha1)

    def grid_b(self) -> list[Fraction]:
        return _grid(self.A2, self.B2, self.alpha2)

    def grid_k3(self) -> np.ndarray:
        return np.arange(self.A3, self.B3 + 1, self.a3, dtype=np.int64)

    @property
    def grid_size(self) -> int:
        return len(self.grid_a()) * len(self.grid_b()) * len(self.grid_k3())


def _grid(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    n = math.floor((stop - start) / step) + 1
    return [start + i * step for i in range(n)]


class TriadSet(Sequence[Triad]):
    """Column-oriented, immutable collection of triads in generation order.

    ``params[param_index[j]]`` is the ``(a, b)`` pair of triad ``j``.
    """

    def __init__(self, params, param_index, k, l, omega_defect):
        self.params: tuple[tuple[Fraction, Fraction], ...] = tuple(params)
        self.param_index = np.asarray(param_index, dtype=np.int64)
        self.k = np.asarray(k, dtype=np.int64).reshape(-1, 3)
        self.l = np.asarray(l, dtype=np.int64).reshape(-1, 3)
        self.omega_defect = np.asarray(omega_defect, dtype=np.float64)
        for arr in (self.param_index, self.k, self.l, self.omega_defect):
            arr.flags.writeable = False

    @classmethod
    def from_triads(cls, ts: Iterable[Triad]) -> "TriadSet":
        ts = list(ts)
        params: dict[tuple[Fraction, Fraction], int] = {}
        idx = [params.setdefault((t.a, t.b), len(params)) for t in ts]
        return cls(
            list(params),
            idx,
            [(t.k1, t.k2, t.k3) for t in ts],
            [(t.l1, t.l2, t.l3) for t in ts],
            [t.omega_defect for t in ts],
        )

    def __len__(self) -> int:
        return len(self.param_index)

    def __getitem__(self, j):
        if isinstance(j, slice):
            return [self[i] for i in range(*j.indices(len(self)))]
        a, b = self.params[self.param_index[j]]
        k1, k2, k3 = (int(v) for v in self.k[j])
        l1, l2, l3 = (int(v) for v in self.l[j])
        return Triad(k1, l1, k2, l2, k3, l3, a, b, float(self.omega_defect[j]))

    def __iter__(self) -> Iterator[Triad]:
        return (self[j] for j in range(len(self)))

    def __eq__(self, other):
        if not isinstance(other, TriadSet):
            return NotImplemented
        return (
            [self.params[i] for i in self.param_index] == [other.params[i] for i in other.param_index]
            and np.array_equal(self.k, other.k)
            and np.array_equal(self.l, other.l)
            and np.array_equal(self.omega_defect, other.omega_defect)
        )

    __hash__ = None


def generate_triads(cfg: TriadGenConfig) -> TriadSet:
    """Collect the first ``cfg.count`` accepted triads in grid order, sorted by (a, b, k3).

    The loop runs over every cached ``(a, b)`` pair and every ``k3`` until the
    requested count is reached.
    """
    params = [(a, b) for a in cfg.grid_a() for b in cfg.grid_b()]
    k3 = cfg.grid_k3()
    if cfg.count == 0:
        return TriadSet(params, [], np.empty((0, 3)), np.empty((0, 3)), [])
    if len(params) * len(k3) < cfg.count:
        raise InsufficientTriads(
            f"grid has {len(params) * len(k3)} points, fewer than the {cfg.count} triads required"
        )
    pa = np.array([float(a) for a, _ in params])
    pb = np.array([float(b) for _, b in params])
    # An exact zero of a factor shows up as a tiny float; only those need the rational test.
    near_zero = np.zeros(len(params), dtype=bool)
    for f in _denominator_factors(pa, pb):
        near_zero |= np.abs(f) < 1e-6
    for i in np.flatnonzero(near_zero):
        _check_singular(*params[i])
    with np.errstate(all="ignore"):
        r_k1, r_l3, r_l1 = _ratios(pa, pb)
    if not (np.isfinite(r_k1).all() and np.isfinite(r_l3).all() and np.isfinite(r_l1).all()):
        raise SingularParameters("non-finite ratios on the (a, b) grid")

    # Rows follow the cached (a, b) order, columns the k3 order.
    k3f = k3.astype(np.float64)
    k1 = round_half_away(np.multiply.outer(r_k1, k3f))
    l3 = round_half_away(np.multiply.outer(r_l3, k3f))
    l1 = round_half_away(np.multiply.outer(r_l1, k3f))
    k3m = np.broadcast_to(k3, k1.shape)
    k2 = k3m - k1
    l2 = l3 - l1

    comps = (k1, l1, k2, l2, k3m, l3)
    in_box = np.ones(k1.shape, dtype=bool)
    for c in comps:
        ac = np.abs(c)
        in_box &= (ac > 0) & (ac < cfg.L)

    with np.errstate(all="ignore"):
        w1 = k1 / (k1 * k1 + l1 * l1)
        w2 = k2 / (k2 * k2 + l2 * l2)
        w3 = k3m / (k3m * k3m + l3 * l3)
        w4 = w3 - w2 - w1
    accept = in_box & (np.abs(w4) < 1.0 / cfg.delta)

    flat = np.flatnonzero(accept.ravel())
    if len(flat) < cfg.count:
        raise InsufficientTriads(
            f"only {len(flat)} triads pass the detuning and bound tests; {cfg.count} required"
        )
    take = flat[: cfg.count]
    rows = take // k1.shape[1]
    k = np.stack([k1.ravel()[take], k2.ravel()[take], k3m.ravel()[take]], axis=1)
    l = np.stack([l1.ravel()[take], l2.ravel()[take], l3.ravel()[take]], axis=1)
    # Grid order is already ascending in (a, b, k3), so it coincides with the sorted order.
    return TriadSet(params, rows, k, l, w4.ravel()[take])


@functools.lru_cache(maxsize=8)
def cached_triads(cfg: TriadGenConfig) -> TriadSet:
    """Memoized :func:`generate_triads`; images of equal size share one triad set."""
    return generate_triads(cfg)
