import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from golden import TRIADS
from triadcrypt.errors import InsufficientTriads, InvalidConfig, SingularParameters, ZeroWaveVector
from triadcrypt.triads import (
    Triad,
    TriadGenConfig,
    TriadSet,
    dispersion_omega,
    generate_triads,
    hayat_ratios,
    round_half_away,
    sort_triads,
    triad_less,
)

A0 = Fraction("-1.0541")


def example_config(count=16, **kw):
    base = dict(
        A1="-1.0541", B1="-0.8514", A2="-1.0541", B2="-0.8514", A3=401, B3=691,
        a1=2, b1=1000, a2=19, b2=1000, a3=5, delta=1000, L=90000, count=count,
    )
    base.update(kw)
    return TriadGenConfig(**base)


def test_round_half_away_from_zero():
    assert round_half_away(Fraction(2589, 2)) == 1295
    assert round_half_away(-2.5) == -3
    assert round_half_away(2.4999) == 2
    assert round_half_away(np.array([0.5, -0.5, 1.5])).tolist() == [1, -1, 2]


def test_ratios_at_origin():
    r = hayat_ratios(0, 0)
    assert r.k1_over_k3 == 1.0
    assert r.l3_over_k3 == 1.0
    assert r.l1_over_k3 == -1.0


@pytest.mark.parametrize("k3, expected", [(401, (-1128, 1152, 1820)), (476, (-1339, 1368, 2161))])
def test_ratios_scale_to_published_triads(k3, expected):
    r = hayat_ratios(A0, A0)
    got = tuple(round_half_away(v * k3) for v in (r.k1_over_k3, r.l1_over_k3, r.l3_over_k3))
    assert got == expected


def test_singular_parameters_raise():
    # a^2 - 3b^2 - 1 = 0 at (1, 0)
    with pytest.raises(SingularParameters):
        hayat_ratios(1, 0)


@settings(max_examples=300, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_unrounded_ratios_are_exactly_resonant(a, b):
    try:
        k1, l3, l1 = hayat_ratios(a, b)
    except SingularParameters:
        return
    vectors = [(k1, l1), (1 - k1, l3 - l1), (1, l3)]
    assume(all(abs(k) + abs(l) > 1e-6 for k, l in vectors))
    w = lambda k, l: k / (k * k + l * l)
    terms = [w(k1, l1), w(1 - k1, l3 - l1), w(1, l3)]
    scale = max(1.0, *(abs(t) for t in terms))
    assert abs(terms[0] + terms[1] - terms[2]) < 1e-9 * scale


def test_dispersion_examples():
    assert dispersion_omega(1, 0) == 1.0
    assert dispersion_omega(0, 5) == 0.0
    assert dispersion_omega(401, 1820) == pytest.approx(401 / (401**2 + 1820**2), rel=1e-15)
    with pytest.raises(ZeroWaveVector):
        dispersion_omega(0, 0)


def test_generate_reproduces_published_table():
    ts = generate_triads(example_config())
    assert [t.wavenumbers for t in ts] == TRIADS
    assert all(t.a == A0 and t.b == A0 for t in ts)


def test_generate_count_zero():
    assert len(generate_triads(example_config(count=0))) == 0


def test_generate_is_deterministic():
    cfg = example_config(count=5000)
    assert generate_triads(cfg) == generate_triads(cfg)


def test_generated_triads_satisfy_invariants():
    cfg = example_config(count=20000, L=2500, delta=5000)
    ts = generate_triads(cfg)
    for t in ts:
        assert t.k1 + t.k2 == t.k3 and t.l1 + t.l2 == t.l3
        assert t.k3 > 0
        assert all(0 < abs(v) < cfg.L for v in t.wavenumbers)
        assert abs(t.omega_defect) < 1 / cfg.delta
        w = dispersion_omega
        assert t.omega_defect == w(t.k3, t.l3) - w(t.k2, t.l2) - w(t.k1, t.l1)


def test_generate_continues_across_parameter_pairs():
    cfg = example_config(count=200)
    ts = generate_triads(cfg)
    assert len({(t.a, t.b) for t in ts}) == 4  # 59 k3 values per pair
    assert [t.order_key for t in ts] == sorted(t.order_key for t in ts)


def test_tight_bound_exhausts_grid():
    with pytest.raises(InsufficientTriads):
        generate_triads(example_config(count=16, L=401))


def test_grid_too_small():
    with pytest.raises(InsufficientTriads):
        generate_triads(example_config(count=10**6))


def test_zero_step_rejected():
    with pytest.raises(InvalidConfig):
        example_config(a3=0)


def test_grid_uses_exact_rationals():
    cfg = example_config()
    a = cfg.grid_a()
    assert a[0] == A0 and a[-1] <= cfg.B1 and a[-1] + cfg.alpha1 > cfg.B1
    assert len(a) == 102 and len(cfg.grid_b()) == 11 and len(cfg.grid_k3()) == 59


def _triad(a, b, k3):
    return Triad(1, 1, k3 - 1, 1, k3, 2, Fraction(a), Fraction(b), 0.0)


def test_triad_less_examples():
    x = _triad(1, 1, 5)
    assert triad_less(x, _triad(1, 1, 5))
    assert not triad_less(_triad(2, 0, 1), _triad(1, 9, 9))
    ts = generate_triads(example_config())
    assert triad_less(ts[0], ts[1])


keys = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 4))


@settings(max_examples=500)
@given(keys, keys, keys)
def test_order_laws(x, y, z):
    tx, ty, tz = (_triad(*v) for v in (x, y, z))
    assert triad_less(tx, tx)
    assert triad_less(tx, ty) or triad_less(ty, tx)
    if triad_less(tx, ty) and triad_less(ty, tx):
        assert x == y
    if triad_less(tx, ty) and triad_less(ty, tz):
        assert triad_less(tx, tz)


def _insertion_sort(ts):
    out = []
    for t in ts:
        i = len(out)
        while i > 0 and not triad_less(out[i - 1], t):
            i -= 1
        out.insert(i, t)
    return out


def test_sort_triads():
    ts = list(generate_triads(example_config()))
    assert sort_triads(reversed(ts)) == ts
    assert sort_triads([]) == []
    rng = random.Random(3)
    sample = [_triad(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(1, 50)) for _ in range(200)]
    assert sort_triads(sample) == _insertion_sort(sample)
    once = sort_triads(sample)
    assert sort_triads(once) == once


def test_triad_set_roundtrip():
    ts = generate_triads(example_config())
    assert TriadSet.from_triads(list(ts)) == ts
    assert ts[2:4] == [ts[2], ts[3]]


def test_singular_grid_point_is_reported():
    cfg = example_config(A1=1, B1="1.1", A2=0, B2="0.1", A3=1, B3=50, a3=1)
    with pytest.raises(SingularParameters):
        generate_triads(cfg)
