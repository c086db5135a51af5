"""Image encryption from quasi-resonant wave triads and Mordell elliptic curve S-boxes."""

__version__ = "0.1.0"

from .analysis import (
    adjacent_correlation,
    chi_square,
    entropy,
    histogram,
    npcr,
    sbox_bic,
    sbox_dap,
    sbox_lap,
    sbox_metrics,
    sbox_nl,
    sbox_sac,
    uaci,
)
from .cipher import PublicParams, SecretKeys, confuse, decrypt, diffuse, encrypt, encrypt_with_keys
from .keystream import KeystreamParams, keystream, pixel_sum
from .sbox import SBox, build_sbox, invert_sbox, mec_points
from .triads import (
    Triad,
    TriadGenConfig,
    TriadSet,
    dispersion_omega,
    generate_triads,
    hayat_ratios,
    sort_triads,
    triad_less,
)
