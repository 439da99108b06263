"""Experiment driver: certificate / ML / LP / cover pipeline over random trials.

Reads a flat key=value config, runs seeded trials, and writes

* results.csv   - deterministic per-trial columns (byte-identical replay),
* results.json  - full records including wall times and the summary,
* figures/*.png - report figures rendered from the records,
* violations/   - full instance dumps for any implication violation.

Implications watched per trial: a certificate must imply a unique ML match
(build-failing), base certificates must survive lifting to random M-covers
(build-failing), and certificates should imply a unique integral LP optimum
(recorded per M; the theory guarantees it only for a sufficiently large,
non-constructive M).

Trials are independent; set TANNER_CERT_THREADS=K to spread them over K
worker processes.  Records are keyed by trial index, so outputs do not
depend on the worker count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import covers as covers_mod
from .certify import certify
from .channel import (
    DEFAULT_QUANT_DENOM,
    ChannelSpec,
    format_llr,
    parse_channel_spec,
    transmit,
)
from .codefile import format_code_file
from .codes import TannerCode, check_word, unpack_bits
from .decoders import codeword_basis, lp_decode, ml_decode
from .errors import BudgetError, InputError
from .generate import generate_code

THREADS_ENV = "TANNER_CERT_THREADS"

_ZERO = Fraction(0)


def parse_omega(spec: str, h: int) -> tuple[Fraction, ...]:
    """Schedule spec: 'uniform:c', 'geometric:r' (r^1..r^h), or a comma list."""
    text = spec.strip()
    kind, sep, rest = text.partition(":")
    try:
        if sep and kind.strip() == "uniform":
            c = Fraction(rest.strip())
            return (c,) * h
        if sep and kind.strip() == "geometric":
            rho = Fraction(rest.strip())
            out = []
            acc = Fraction(1)
            for _ in range(h):
                acc *= rho
                out.append(acc)
            return tuple(out)
        values = tuple(Fraction(tok.strip()) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad schedule spec {spec!r}") from exc
    if len(values) != h:
        raise InputError(f"schedule has {len(values)} entries but h={h}")
    return values


@dataclass(frozen=True)
class ExperimentConfig:
    code_spec: str
    channel: ChannelSpec
    h: int
    omega_spec: str
    i: int
    trials: int
    seed: int
    out_dir: Path
    m_sweep: tuple[int, ...] = ()
    transmit_word: str = "zero"  # or "random"
    run_ml: bool = True
    run_lp: bool = True
    plots: bool = True

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        kv: dict[str, str] = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise InputError(f"line {lineno}: expected key = value")
            kv[key.strip()] = val.strip()
        return cls.from_mapping(kv, base_dir=Path(path).parent)

    @classmethod
    def from_mapping(cls, kv: dict[str, str], base_dir: Path = Path(".")) -> "ExperimentConfig":
        def flag(name: str, default: bool) -> bool:
            val = kv.pop(name, None)
            if val is None:
                return default
            if val not in ("on", "off"):
                raise InputError(f"{name} must be on/off, got {val!r}")
            return val == "on"

        try:
            code_spec = kv.pop("code")
            channel = parse_channel_spec(
                kv.pop("channel"),
                int(kv.pop("quant_denom", str(DEFAULT_QUANT_DENOM))),
            )
            h = int(kv.pop("h"))
            omega_spec = kv.pop("omega")
            i = int(kv.pop("i"))
            trials = int(kv.pop("trials"))
            seed = int(kv.pop("seed"))
            out_dir = base_dir / kv.pop("out", "results")
        except KeyError as exc:
            raise InputError(f"config is missing the {exc.args[0]!r} key") from exc
        m_text = kv.pop("m_sweep", "")
        m_sweep = tuple(int(t) for t in m_text.split(",") if t.strip())
        transmit_word = kv.pop("transmit_word", "zero")
        if transmit_word not in ("zero", "random"):
            raise InputError("transmit_word must be zero or random")
        cfg = cls(
            code_spec=code_spec,
            channel=channel,
            h=h,
            omega_spec=omega_spec,
            i=i,
            trials=trials,
            seed=seed,
            out_dir=out_dir,
            m_sweep=m_sweep,
            transmit_word=transmit_word,
            run_ml=flag("ml", True),
            run_lp=flag("lp", True),
            plots=flag("plots", True),
        )
        if kv:
            raise InputError(f"unknown config keys {sorted(kv)}")
        if cfg.trials < 1 or cfg.h < 1:
            raise InputError("trials and h must be >= 1")
        if any(m < 1 for m in cfg.m_sweep):
            raise InputError("m_sweep entries must be >= 1")
        return cfg

    def describe(self) -> dict:
        return {
            "code": self.code_spec,
            "channel": self.channel.describe(),
            "quant_denom": self.channel.quant_denom,
            "h": self.h,
            "omega": self.omega_spec,
            "i": self.i,
            "trials": self.trials,
            "seed": self.seed,
            "m_sweep": list(self.m_sweep),
            "transmit_word": self.transmit_word,
            "ml": self.run_ml,
            "lp": self.run_lp,
        }


@dataclass
class CoverOutcome:
    m: int
    base_certified: bool
    lifted_certified: bool
    lemma_violation: bool
    lp_violation: bool | None


@dataclass
class TrialRecord:
    trial: int
    seed: int
    certified: bool = False
    boundary: bool = False
    c_star: str = ""
    ml_value: str = ""
    ml_unique: bool | None = None
    ml_match: bool | None = None
    ml_violation: bool | None = None
    lp_value: str = ""
    lp_integral: bool | None = None
    lp_unique: bool | None = None
    lp_match: bool | None = None
    covers: list[CoverOutcome] = field(default_factory=list)
    error: str = ""
    certifier_ns: int = 0
    ml_ns: int = 0
    lp_ns: int = 0
    cover_ns: int = 0


def csv_header(m_sweep: Sequence[int]) -> list[str]:
    cols = [
        "trial", "seed", "certified", "boundary", "c_star",
        "ml_value", "ml_unique", "ml_match", "ml_violation",
        "lp_value", "lp_integral", "lp_unique", "lp_match",
    ]
    for m in m_sweep:
        cols += [
            f"cover{m}_base", f"cover{m}_lifted",
            f"cover{m}_violation", f"lp{m}_violation",
        ]
    cols.append("error")
    return cols


def _cell(value) -> str:
    if value is None or value == "":
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def record_row(rec: TrialRecord, m_sweep: Sequence[int]) -> list[str]:
    row = [
        _cell(rec.trial), _cell(rec.seed), _cell(rec.certified),
        _cell(rec.boundary), _cell(rec.c_star),
        _cell(rec.ml_value), _cell(rec.ml_unique), _cell(rec.ml_match),
        _cell(rec.ml_violation),
        _cell(rec.lp_value), _cell(rec.lp_integral), _cell(rec.lp_unique),
        _cell(rec.lp_match),
    ]
    by_m = {c.m: c for c in rec.covers}
    for m in m_sweep:
        c = by_m.get(m)
        if c is None:
            row += ["-", "-", "-", "-"]
        else:
            row += [
                _cell(c.base_certified), _cell(c.lifted_certified),
                _cell(c.lemma_violation), _cell(c.lp_violation),
            ]
    row.append(_cell(rec.error))
    return row


def trial_seed(seed: int, trial: int) -> int:
    return seed * 1_000_003 + trial


def _pick_codeword(code: TannerCode, basis: list[int], rng_seed: int) -> tuple[int, ...]:
    import random

    rng = random.Random(rng_seed)
    mask = 0
    for b in basis:
        if rng.random() < 0.5:
            mask ^= b
    return unpack_bits(mask, code.n)


def run_trial(code: TannerCode, config: ExperimentConfig,
              omega: tuple[Fraction, ...], basis: list[int],
              trial: int) -> TrialRecord:
    seed = trial_seed(config.seed, trial)
    rec = TrialRecord(trial=trial, seed=seed)
    if config.transmit_word == "zero":
        x = (0,) * code.n
    else:
        x = _pick_codeword(code, basis, seed ^ 0x5EED)
    llr = transmit(code, x, config.channel, seed)

    try:
        t0 = time.perf_counter_ns()
        report = certify(code, x, llr, config.h, omega, config.i)
        rec.certifier_ns = time.perf_counter_ns() - t0
    except (InputError, BudgetError) as exc:
        rec.error = f"certify: {exc}"
        return rec
    rec.certified = report.certified
    rec.boundary = report.boundary
    rec.c_star = str(report.c_star)

    lp_ok = None
    if config.run_ml:
        try:
            t0 = time.perf_counter_ns()
            ml = ml_decode(code, llr)
            rec.ml_ns = time.perf_counter_ns() - t0
            rec.ml_value = str(ml.value)
            rec.ml_unique = ml.unique
            rec.ml_match = ml.best == (x,)
            rec.ml_violation = rec.certified and not (ml.unique and rec.ml_match)
        except BudgetError as exc:
            rec.error = f"ml: {exc}"
    if config.run_lp:
        try:
            t0 = time.perf_counter_ns()
            lp = lp_decode(code, llr)
            rec.lp_ns = time.perf_counter_ns() - t0
            rec.lp_value = str(lp.value)
            rec.lp_integral = lp.integral
            rec.lp_unique = lp.unique
            rec.lp_match = lp.integral and tuple(int(v) for v in lp.z) == x
            lp_ok = lp.integral and lp.unique and rec.lp_match
        except BudgetError as exc:
            rec.error = (rec.error + "; " if rec.error else "") + f"lp: {exc}"

    if config.m_sweep:
        t0 = time.perf_counter_ns()
        for m in config.m_sweep:
            boxed = tuple(w / m for w in omega)
            out = covers_mod.check_cover_optimality(
                code, x, llr, config.h, boxed, config.i, m, seed * 31 + m
            )
            rec.covers.append(CoverOutcome(
                m=m,
                base_certified=out.base.certified,
                lifted_certified=out.lifted.certified,
                lemma_violation=out.violation,
                lp_violation=(out.base.certified and not lp_ok)
                if lp_ok is not None else None,
            ))
        rec.cover_ns = time.perf_counter_ns() - t0
    return rec


def _worker(payload) -> list[dict]:
    config_map, base_dir, lo, hi = payload
    config = ExperimentConfig.from_mapping(dict(config_map), base_dir=Path(base_dir))
    code, omega, basis = _experiment_context(config)
    return [
        _record_to_dict(run_trial(code, config, omega, basis, t))
        for t in range(lo, hi)
    ]


def _experiment_context(config: ExperimentConfig):
    code = generate_code(config.code_spec, config.seed)
    omega = parse_omega(config.omega_spec, config.h)
    basis = codeword_basis(code) if config.transmit_word == "random" else []
    return code, omega, basis


def _record_to_dict(rec: TrialRecord) -> dict:
    out = dict(rec.__dict__)
    out["covers"] = [dict(c.__dict__) for c in rec.covers]
    return out


def _record_from_dict(data: dict) -> TrialRecord:
    covers = [CoverOutcome(**c) for c in data.pop("covers")]
    rec = TrialRecord(**data)
    rec.covers = covers
    return rec


@dataclass
class ExperimentOutcome:
    config: ExperimentConfig
    records: list[TrialRecord]
    summary: dict
    csv_path: Path
    json_path: Path
    figure_paths: list[Path]

    @property
    def failed(self) -> bool:
        return self.summary["ml_violations"] > 0 or self.summary["cover_violations"] > 0


def summarize(records: list[TrialRecord], m_sweep: Sequence[int]) -> dict:
    certified = sum(1 for r in records if r.certified)
    summary = {
        "trials": len(records),
        "certified": certified,
        "boundary": sum(1 for r in records if r.boundary),
        "ml_violations": sum(1 for r in records if r.ml_violation),
        "cover_violations": sum(
            1 for r in records for c in r.covers if c.lemma_violation
        ),
        "lp_violations_by_m": {
            str(m): sum(
                1 for r in records for c in r.covers
                if c.m == m and c.lp_violation
            )
            for m in m_sweep
        },
        "errors": sum(1 for r in records if r.error),
    }
    return summary


def run_experiment(config: ExperimentConfig) -> ExperimentOutcome:
    threads = max(1, int(os.environ.get(THREADS_ENV, "1")))
    if threads == 1:
        code, omega, basis = _experiment_context(config)
        records = [
            run_trial(code, config, omega, basis, t) for t in range(config.trials)
        ]
    else:
        bounds = [
            (config.trials * k // threads, config.trials * (k + 1) // threads)
            for k in range(threads)
        ]
        payloads = [
            (tuple(_config_mapping(config).items()), str(config.out_dir.parent), lo, hi)
            for lo, hi in bounds if hi > lo
        ]
        records = []
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for chunk in pool.map(_worker, payloads):
                records.extend(_record_from_dict(d) for d in chunk)
        records.sort(key=lambda r: r.trial)

    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = summarize(records, config.m_sweep)

    csv_path = out_dir / "results.csv"
    header = csv_header(config.m_sweep)
    lines = [",".join(header)]
    lines += [",".join(record_row(r, config.m_sweep)) for r in records]
    csv_path.write_text("\n".join(lines) + "\n")

    json_path = out_dir / "results.json"
    payload = {
        "config": config.describe(),
        "summary": summary,
        "records": [_record_to_dict(r) for r in records],
    }
    json_path.write_text(json.dumps(payload, indent=2) + "\n")

    _dump_violations(config, records)

    figure_paths: list[Path] = []
    if config.plots:
        from .figures import render_experiment_figures

        figure_paths = render_experiment_figures(records, summary, out_dir / "figures")
    return ExperimentOutcome(config, records, summary, csv_path, json_path, figure_paths)


def _config_mapping(config: ExperimentConfig) -> dict[str, str]:
    ch = config.channel
    return {
        "code": config.code_spec,
        "channel": ch.describe(),
        "quant_denom": str(ch.quant_denom),
        "h": str(config.h),
        "omega": config.omega_spec,
        "i": str(config.i),
        "trials": str(config.trials),
        "seed": str(config.seed),
        "out": os.path.relpath(config.out_dir, config.out_dir.parent),
        "m_sweep": ",".join(str(m) for m in config.m_sweep),
        "transmit_word": config.transmit_word,
        "ml": "on" if config.run_ml else "off",
        "lp": "on" if config.run_lp else "off",
        "plots": "on" if config.plots else "off",
    }


def _dump_violations(config: ExperimentConfig, records: list[TrialRecord]) -> None:
    flagged = [
        r for r in records
        if r.ml_violation or any(c.lemma_violation or c.lp_violation for c in r.covers)
    ]
    if not flagged:
        return
    code, omega, basis = _experiment_context(config)
    root = config.out_dir / "violations"
    root.mkdir(parents=True, exist_ok=True)
    for rec in flagged:
        d = root / f"trial_{rec.trial}"
        d.mkdir(exist_ok=True)
        (d / "code.txt").write_text(format_code_file(code))
        if config.transmit_word == "zero":
            x = (0,) * code.n
        else:
            x = _pick_codeword(code, basis, rec.seed ^ 0x5EED)
        llr = transmit(code, x, config.channel, rec.seed)
        (d / "llr.txt").write_text(format_llr(llr))
        (d / "instance.json").write_text(json.dumps({
            "trial": rec.trial,
            "seed": rec.seed,
            "x": "".join(str(b) for b in x),
            "h": config.h,
            "omega": [str(w) for w in omega],
            "i": config.i,
            "record": _record_to_dict(rec),
        }, indent=2) + "\n")
