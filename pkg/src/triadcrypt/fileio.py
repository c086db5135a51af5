"""Binary PGM (P5) codec, key files and CSV writers."""

from __future__ import annotations

import csv
import io
import os
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cipher import PublicParams, SecretKeys
from .errors import InvalidConfig, KeyFileError, MalformedHeader, TruncatedPayload, UnsupportedFormat

_WHITESPACE = b" \t\r\n"


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    tokens = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                end = data.find(b"\n", pos)
                pos = len(data) if end < 0 else end + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if start == pos:
            raise MalformedHeader("unexpected end of PGM header")
        tokens.append(data[start:pos])
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace after PGM header")
    return tokens, pos + 1


def decode_pgm(data: bytes) -> np.ndarray:
    if data[:2] in (b"P1", b"P2", b"P3", b"P4", b"P6", b"P7"):
        raise UnsupportedFormat(f"only binary grayscale P5 is supported, got {data[:2].decode()}")
    if data[:2] != b"P5":
        raise MalformedHeader("not a PGM file (missing P5 magic)")
    tokens, offset = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedHeader("non-integer PGM header field") from None
    if width < 1 or height < 1:
        raise MalformedHeader("PGM dimensions must be positive")
    if maxval != 255:
        raise UnsupportedFormat(f"maxval must be 255, got {maxval}")
    payload = data[offset:offset + width * height]
    if len(payload) < width * height:
        raise TruncatedPayload(f"expected {width * height} pixel bytes, found {len(payload)}")
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width).copy()


def encode_pgm(img) -> bytes:
    arr = np.asarray(img, dtype=np.uint8)
    height, width = arr.shape
    return b"P5\n%d %d\n255\n" % (width, height) + np.ascontiguousarray(arr).tobytes()


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def write_pgm(img, path) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img))


# ---- key files -----------------------------------------------------------

PUBLIC_FIELDS = ("A1", "B1", "A2", "B2", "A3", "B3")
SECRET_FIELDS = ("a1", "b1", "a2", "b2", "a3", "delta", "L", "t", "p", "S_P")


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def format_keys(keys: SecretKeys) -> str:
    lines = [f"{name}={_fmt(getattr(keys.public, name))}" for name in PUBLIC_FIELDS]
    for name in SECRET_FIELDS:
        v = getattr(keys, name)
        if v is not None:
            lines.append(f"{name}={v}")
    return "\n".join(lines) + "\n"


def parse_keys(text: str) -> SecretKeys:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not value:
            raise KeyFileError(f"line {lineno}: expected name=value")
        if name not in PUBLIC_FIELDS and name not in SECRET_FIELDS:
            raise KeyFileError(f"line {lineno}: unknown key {name!r}")
        values[name] = value
    missing = [n for n in PUBLIC_FIELDS + SECRET_FIELDS if n != "S_P" and n not in values]
    if missing:
        raise KeyFileError(f"missing keys: {', '.join(missing)}")
    try:
        public = PublicParams(**{
            n: (Fraction(values[n]) if n in ("A1", "B1", "A2", "B2") else int(values[n]))
            for n in PUBLIC_FIELDS
        })
        secret = {n: int(values[n]) for n in SECRET_FIELDS if n in values}
    except (ValueError, ZeroDivisionError) as exc:
        raise KeyFileError(f"bad key value: {exc}") from None
    try:
        return SecretKeys(public=public, **secret)
    except InvalidConfig as exc:
        raise KeyFileError(str(exc)) from None


def read_keys(path) -> SecretKeys:
    with open(path, encoding="utf-8") as fh:
        return parse_keys(fh.read())


def write_keys(keys: SecretKeys, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_keys(keys))


# ---- CSV -----------------------------------------------------------------

def csv_text(rows: Iterable[Sequence], header: Sequence[str] | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    if header:
        writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def write_text(text: str, path) -> None:
    if path in (None, "-"):
        print(text, end="")
        return
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def sbox_csv(sbox) -> str:
    return csv_text(sbox.table().tolist())


def triads_csv(triads) -> str:
    rows = (
        (repr(float(t.a)), repr(float(t.b)), t.k1, t.l1, t.k2, t.l2, t.k3, t.l3, repr(t.omega_defect))
        for t in triads
    )
    return csv_text(rows, ("a", "b", "k1", "l1", "k2", "l2", "k3", "l3", "omega_defect"))


def metrics_csv(metrics: dict) -> str:
    return csv_text(((k, repr(v) if isinstance(v, float) else v) for k, v in metrics.items()), ("metric", "value"))
