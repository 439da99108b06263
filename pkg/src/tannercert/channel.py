"""MBIOS channel simulation producing exact-rational LLR vectors.

Supported channels: BSC(p) and binary-input AWGN (0 -> +1, 1 -> -1, noise
std sigma).  Real-valued LLRs are quantized at ingestion to the nearest
multiple of 1/D for a configurable denominator D; everything downstream
consumes the quantized rationals exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .codes import TannerCode, check_word
from .errors import InputError

DEFAULT_QUANT_DENOM = 10**6


@dataclass(frozen=True)
class LlrVector:
    """Per-variable log-likelihood ratios as exact rationals (nats)."""

    values: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, idx: int) -> Fraction:
        return self.values[idx]


def llr_from_values(values: Sequence) -> LlrVector:
    """Wrap explicit rationals verbatim (deterministic test injection)."""
    vals = tuple(Fraction(v) for v in values)
    if not vals:
        raise InputError("empty LLR vector")
    return LlrVector(vals)


@dataclass(frozen=True)
class ChannelSpec:
    kind: str  # "bsc" | "awgn"
    p: float = 0.0
    sigma: float = 0.0
    quant_denom: int = DEFAULT_QUANT_DENOM

    def __post_init__(self):
        if self.kind == "bsc":
            if not 0.0 < self.p < 0.5:
                raise InputError(f"BSC crossover p={self.p} outside (0, 1/2)")
        elif self.kind == "awgn":
            if not self.sigma > 0.0:
                raise InputError(f"AWGN sigma={self.sigma} must be positive")
        else:
            raise InputError(f"unknown channel kind {self.kind!r}")
        if self.quant_denom < 1:
            raise InputError("quantization denominator must be >= 1")

    def describe(self) -> str:
        if self.kind == "bsc":
            return f"bsc:p={self.p}"
        return f"awgn:sigma={self.sigma}"


def parse_channel_spec(text: str, quant_denom: int = DEFAULT_QUANT_DENOM) -> ChannelSpec:
    """Parse 'bsc:p=0.1' or 'awgn:sigma=0.8'."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, _, val = item.partition("=")
        try:
            params[key.strip()] = float(val)
        except ValueError as exc:
            raise InputError(f"bad channel parameter {item!r}") from exc
    if kind == "bsc":
        if set(params) != {"p"}:
            raise InputError("bsc channel takes exactly p=<value>")
        return ChannelSpec("bsc", p=params["p"], quant_denom=quant_denom)
    if kind == "awgn":
        if set(params) != {"sigma"}:
            raise InputError("awgn channel takes exactly sigma=<value>")
        return ChannelSpec("awgn", sigma=params["sigma"], quant_denom=quant_denom)
    raise InputError(f"unknown channel {text!r}")


def quantize(value: float, denom: int) -> Fraction:
    """Round to the nearest multiple of 1/denom."""
    return Fraction(round(value * denom), denom)


def bsc_llr(received_bit: int, p: float, denom: int) -> Fraction:
    """ln((1-p)/p) with the sign of the received hard bit."""
    magnitude = quantize(math.log((1.0 - p) / p), denom)
    return magnitude if received_bit == 0 else -magnitude

def awgn_llr(received: float, sigma: float, denom: int) -> Fraction:
    """2y/sigma^2 for BPSK-mapped transmission."""
    return quantize(2.0 * received / (sigma * sigma), denom)


def transmit(code: TannerCode, x: Sequence[int], spec: ChannelSpec, seed: int) -> LlrVector:
    """Draw a channel realization for codeword x and return the quantized LLRs."""
    x = check_word(x, code.n)
    if not code.is_codeword(x):
        raise InputError("transmit requires a codeword")
    rng = random.Random(seed)
    vals = []
    if spec.kind == "bsc":
        for bit in x:
            received = bit ^ (1 if rng.random() < spec.p else 0)
            vals.append(bsc_llr(received, spec.p, spec.quant_denom))
    else:
        for bit in x:
            sent = 1.0 if bit == 0 else -1.0
            received = sent + rng.gauss(0.0, spec.sigma)
            vals.append(awgn_llr(received, spec.sigma, spec.quant_denom))
    return LlrVector(tuple(vals))


def read_llr_file(path: str | Path) -> LlrVector:
    """One rational per line ('3/4', '-2', '0.25'); '#' comments allowed."""
    vals = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals.append(Fraction(line))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"line {lineno}: bad rational {line!r}") from exc
    if not vals:
        raise InputError(f"no LLR values in {path}")
    return LlrVector(tuple(vals))


def format_llr(llr: LlrVector) -> str:
    return "\n".join(str(v) for v in llr.values) + "\n"
