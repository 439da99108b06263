import random
from fractions import Fraction

import pytest

from tannercert.channel import (
    ChannelSpec,
    awgn_llr,
    bsc_llr,
    llr_from_values,
    parse_channel_spec,
    quantize,
    read_llr_file,
    format_llr,
    transmit,
)
from tannercert.errors import InputError


def test_bsc_llr_value_at_p01():
    # ln(0.9/0.1) = ln 9 ~ 2.197225, quantized at 1e-6
    assert bsc_llr(0, 0.1, 10**6) == Fraction(2197225, 10**6)
    assert bsc_llr(1, 0.1, 10**6) == -Fraction(2197225, 10**6)


def test_awgn_llr_unit_sigma():
    assert awgn_llr(1.0, 1.0, 10**6) == Fraction(2)
    assert awgn_llr(-0.75, 1.0, 100) == Fraction(-150, 100)


def test_quantize_rounds_to_grid():
    assert quantize(0.12349, 10**4) == Fraction(1235, 10**4)
    assert quantize(-1.5, 1) == Fraction(-2)  # round-half-even at integer grid


def test_transmit_noiseless_signs_follow_word(six_cycle):
    spec = ChannelSpec("bsc", p=1e-9)
    x = (1, 1, 1)
    llr = transmit(six_cycle, x, spec, seed=3)
    mag = bsc_llr(0, 1e-9, spec.quant_denom)
    assert llr.values == (-mag, -mag, -mag)


def test_transmit_requires_codeword(six_cycle):
    spec = ChannelSpec("bsc", p=0.1)
    with pytest.raises(InputError):
        transmit(six_cycle, (1, 1, 0), spec, seed=0)


def test_transmit_deterministic_and_two_valued(six_cycle):
    spec = ChannelSpec("bsc", p=0.4)
    a = transmit(six_cycle, (0, 0, 0), spec, seed=11)
    b = transmit(six_cycle, (0, 0, 0), spec, seed=11)
    assert a.values == b.values
    mag = bsc_llr(0, 0.4, spec.quant_denom)
    assert set(a.values) <= {mag, -mag}


def test_bsc_flip_symmetry():
    # flipping the transmitted bit flips the LLR sign, seed by seed
    from tannercert.codes import LocalCode, TannerCode, TannerGraph

    code = TannerCode(TannerGraph(3, [(0, 1, 2)]), [LocalCode.repetition(3)])
    spec = ChannelSpec("bsc", p=0.2)
    for seed in range(25):
        zero = transmit(code, (0, 0, 0), spec, seed=seed)
        ones = transmit(code, (1, 1, 1), spec, seed=seed)
        assert tuple(-v for v in zero.values) == ones.values


def test_awgn_transmit_statistics(repetition3):
    spec = ChannelSpec("awgn", sigma=0.5)
    vals = []
    for seed in range(200):
        vals.extend(transmit(repetition3, (0, 0, 0), spec, seed=seed).values)
    mean = sum(float(v) for v in vals) / len(vals)
    # E[2y/sigma^2 | +1 sent] = 2/sigma^2 = 8
    assert abs(mean - 8.0) < 0.5


def test_llr_from_values_exact():
    llr = llr_from_values((1, -1, Fraction(3, 2)))
    assert llr.values == (Fraction(1), Fraction(-1), Fraction(3, 2))
    with pytest.raises(InputError):
        llr_from_values(())


def test_llr_file_roundtrip(tmp_path):
    llr = llr_from_values((Fraction(3, 2), 0, Fraction(-3, 2)))
    path = tmp_path / "llr.txt"
    path.write_text(format_llr(llr) + "# trailing comment\n")
    assert read_llr_file(path).values == llr.values
    (tmp_path / "empty.txt").write_text("# only a comment\n")
    with pytest.raises(InputError):
        read_llr_file(tmp_path / "empty.txt")


def test_parse_channel_spec():
    spec = parse_channel_spec("bsc:p=0.1", quant_denom=100)
    assert (spec.kind, spec.p, spec.quant_denom) == ("bsc", 0.1, 100)
    spec = parse_channel_spec("awgn:sigma=0.8")
    assert (spec.kind, spec.sigma) == ("awgn", 0.8)
    for bad in ("bsc:p=0.6", "bsc", "awgn:sigma=-1", "bec:e=0.5", "bsc:p=x"):
        with pytest.raises(InputError):
            parse_channel_spec(bad)


def test_spec_validation():
    with pytest.raises(InputError):
        ChannelSpec("bsc", p=0.5)
    with pytest.raises(InputError):
        ChannelSpec("awgn", sigma=0.0)
    with pytest.raises(InputError):
        ChannelSpec("bsc", p=0.1, quant_denom=0)


def test_quantization_error_bounded():
    rng = random.Random(5)
    for _ in range(100):
        v = rng.uniform(-5, 5)
        q = quantize(v, 1000)
        assert q.denominator <= 1000
        assert abs(float(q) - v) <= 0.5e-3 + 1e-12
