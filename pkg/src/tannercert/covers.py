"""M-covers of Tanner graphs: lifting, projection and certificate preservation.

An M-cover replaces every node by M copies and every edge by a perfect
matching between the copy sets, one permutation per base edge.  Cover
variable (v, m) gets index v*M + m, cover local-code node (j, m) keeps the
local code of j; the k-th neighbor of (j, m) is (V_j[k], perm[j][k][m]).
Dropping copy indices recovers the base graph, so degrees are preserved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import CertificateReport, certify
from .channel import LlrVector
from .codes import TannerCode, TannerGraph, check_word
from .errors import InputError

_ZERO = Fraction(0)


@dataclass(frozen=True)
class MCover:
    base: TannerCode
    m: int
    perms: tuple[tuple[tuple[int, ...], ...], ...]  # perms[j][k][copy] -> variable copy
    code: TannerCode

    def var_index(self, v: int, copy: int) -> int:
        return v * self.m + copy


def _build_cover(code: TannerCode, m: int,
                 perms: list[list[tuple[int, ...]]]) -> MCover:
    n, graph = code.n, code.graph
    neighbors = []
    local = []
    for j, vs in enumerate(graph.check_neighbors):
        for copy in range(m):
            neighbors.append(
                tuple(v * m + perms[j][k][copy] for k, v in enumerate(vs))
            )
            local.append(code.local_codes[j])
    cover_graph = TannerGraph(n * m, neighbors)
    cover_code = TannerCode(cover_graph, local)
    frozen = tuple(tuple(tuple(p) for p in pj) for pj in perms)
    return MCover(code, m, frozen, cover_code)


def random_cover(code: TannerCode, m: int, seed: int) -> MCover:
    """Independent uniform permutation per base edge; m=1 is an isomorphic copy."""
    if m < 1:
        raise InputError("cover degree must be >= 1")
    rng = random.Random(seed)
    perms = []
    for vs in code.graph.check_neighbors:
        row = []
        for _ in vs:
            p = list(range(m))
            rng.shuffle(p)
            row.append(tuple(p))
        perms.append(row)
    return _build_cover(code, m, perms)


def cyclic_cover(code: TannerCode, m: int,
                 shifts: Sequence[Sequence[int]] | None = None) -> MCover:
    """Deterministic cover with per-edge cyclic shifts (default all zero)."""
    if m < 1:
        raise InputError("cover degree must be >= 1")
    perms = []
    for j, vs in enumerate(code.graph.check_neighbors):
        row = []
        for k in range(len(vs)):
            s = 0 if shifts is None else int(shifts[j][k]) % m
            row.append(tuple((copy + s) % m for copy in range(m)))
        perms.append(row)
    return _build_cover(code, m, perms)


def lift(values: Sequence, m: int) -> tuple:
    """Replicate each base value onto its M copies."""
    if m < 1:
        raise InputError("cover degree must be >= 1")
    out = []
    for val in values:
        out.extend([val] * m)
    return tuple(out)


def lift_llr(llr: LlrVector, m: int) -> LlrVector:
    return LlrVector(lift(llr.values, m))


def project_down(values: Sequence, m: int) -> tuple[Fraction, ...]:
    """Average the M copies of every base coordinate."""
    if m < 1:
        raise InputError("cover degree must be >= 1")
    if len(values) % m != 0:
        raise InputError(f"length {len(values)} is not a multiple of {m}")
    out = []
    for v in range(len(values) // m):
        out.append(sum((Fraction(values[v * m + c]) for c in range(m)), _ZERO) / m)
    return tuple(out)


@dataclass(frozen=True)
class CoverCheckReport:
    m: int
    base: CertificateReport
    lifted: CertificateReport
    violation: bool

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "base_certified": self.base.certified,
            "base_c_star": str(self.base.c_star),
            "lifted_certified": self.lifted.certified,
            "lifted_c_star": str(self.lifted.c_star),
            "violation": self.violation,
        }


def check_cover_optimality(code: TannerCode, x: Sequence[int], llr: LlrVector,
                           h: int, omega: Sequence, i: int, m: int, seed: int,
                           deterministic: bool = False) -> CoverCheckReport:
    """Certify (x, llr, omega) on the base and the M-lift with schedule M*omega.

    A violation is flagged iff the base certifies and the lifted pair does
    not; the reverse direction carries no claim.
    """
    omega = tuple(Fraction(w) for w in omega)
    if any(not 0 <= w <= Fraction(1, m) for w in omega):
        raise InputError(f"schedule outside the [0, 1/{m}] box")
    x = check_word(x, code.n)
    cover = cyclic_cover(code, m) if deterministic else random_cover(code, m, seed)
    base_report = certify(code, x, llr, h, omega, i)
    lifted_report = certify(
        cover.code,
        lift(x, m),
        lift_llr(llr, m),
        h,
        tuple(m * w for w in omega),
        i,
    )
    return CoverCheckReport(
        m=m,
        base=base_report,
        lifted=lifted_report,
        violation=base_report.certified and not lifted_report.certified,
    )
