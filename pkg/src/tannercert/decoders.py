"""Exhaustive ML decoding and exact LP decoding over the local-simplex formulation.

The LP variables are z in [0,1]^N plus, per local-code node j, one simplex
weight per local codeword; consistency rows tie z restricted to the node's
neighborhood to the convex combination.  The feasible z-region is exactly the
intersection of the convex hulls of the extended local codes, so a solve is
LP decoding over the generalized fundamental polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .channel import LlrVector
from .codes import TannerCode, unpack_bits
from .errors import BudgetError, InputError, SolverFault
from .simplex import OPTIMAL, solve_standard_form

ML_ENUM_CAP = 24
LP_COLUMN_BUDGET = 10**5

_ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# GF(2) plumbing
# ---------------------------------------------------------------------------

def gf2_nullspace(rows: Sequence[int], n: int) -> list[int]:
    """Basis of {x in GF(2)^n : row . x = 0 for all rows}, as bitmasks."""
    pivot_rows: list[tuple[int, int]] = []  # (pivot column, reduced row)
    for row in rows:
        for col, rr in pivot_rows:
            if (row >> col) & 1:
                row ^= rr
        if row == 0:
            continue
        col = row.bit_length() - 1
        for k, (c2, r2) in enumerate(pivot_rows):
            if (r2 >> col) & 1:
                pivot_rows[k] = (c2, r2 ^ row)
        pivot_rows.append((col, row))
    pivot_cols = {c for c, _ in pivot_rows}
    basis = []
    for f in range(n):
        if f in pivot_cols:
            continue
        vec = 1 << f
        for c, r in pivot_rows:
            if (r >> f) & 1:
                vec |= 1 << c
        basis.append(vec)
    for vec in basis:  # cheap check, catches elimination bugs
        assert all((row & vec).bit_count() % 2 == 0 for row in rows)
    return basis


def local_dual_rows(code: TannerCode, j: int) -> list[int]:
    """Parity rows of local code j (dual basis), as length-n_j bitmasks."""
    lc = code.local_codes[j]
    return gf2_nullspace(lc.basis, lc.n)


def global_parity_rows(code: TannerCode) -> list[int]:
    """Local dual rows embedded into length-N bitmask rows."""
    rows = []
    for j, vs in enumerate(code.graph.check_neighbors):
        for dual in local_dual_rows(code, j):
            mask = 0
            for k, v in enumerate(vs):
                if (dual >> k) & 1:
                    mask |= 1 << v
            rows.append(mask)
    return rows


def codeword_basis(code: TannerCode) -> list[int]:
    """GF(2) basis of the full Tanner code, as length-N bitmasks."""
    return gf2_nullspace(global_parity_rows(code), code.n)


def iter_codewords(code: TannerCode, cap: int = ML_ENUM_CAP) -> Iterator[tuple[int, ...]]:
    """All codewords, ascending as bitmask combinations of the basis."""
    if code.n > cap:
        raise BudgetError(
            f"block length {code.n} exceeds exhaustive enumeration cap {cap}"
        )
    basis = codeword_basis(code)
    for sel in range(1 << len(basis)):
        mask = 0
        s = sel
        idx = 0
        while s:
            if s & 1:
                mask ^= basis[idx]
            s >>= 1
            idx += 1
        yield unpack_bits(mask, code.n)


# ---------------------------------------------------------------------------
# ML decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MlResult:
    best: tuple[tuple[int, ...], ...]  # all argmin codewords, sorted
    value: Fraction
    unique: bool

    def to_json_dict(self) -> dict:
        return {
            "value": str(self.value),
            "codewords": ["".join(str(b) for b in w) for w in self.best],
            "unique": self.unique,
        }


def ml_decode(code: TannerCode, llr: LlrVector, cap: int = ML_ENUM_CAP) -> MlResult:
    """Exact minimization of <llr, x> over the full codebook."""
    if len(llr.values) != code.n:
        raise InputError(f"LLR length {len(llr.values)} != block length {code.n}")
    best_val: Fraction | None = None
    best: list[tuple[int, ...]] = []
    for word in iter_codewords(code, cap):
        val = sum((l for b, l in zip(word, llr.values) if b), _ZERO)
        if best_val is None or val < best_val:
            best_val = val
            best = [word]
        elif val == best_val:
            best.append(word)
    assert best_val is not None  # the zero word is always a codeword
    best.sort()
    return MlResult(tuple(best), best_val, len(best) == 1)


# ---------------------------------------------------------------------------
# LP decoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LpResult:
    z: tuple[Fraction, ...]
    value: Fraction
    integral: bool
    unique: bool | None
    pseudocodeword: bool | None

    def to_json_dict(self) -> dict:
        return {
            "value": str(self.value),
            "z": [str(v) for v in self.z],
            "integral": self.integral,
            "unique": self.unique,
            "pseudocodeword": self.pseudocodeword,
        }


def _lp_matrix(code: TannerCode):
    """Columns: z_0..z_{N-1}, then per node j its local codeword weights."""
    n = code.n
    graph = code.graph
    col_words: list[tuple[int, ...]] = []  # sorted local words per node
    col_offset = [n]
    for lc in code.local_codes:
        col_words.append(lc.sorted_words())
        col_offset.append(col_offset[-1] + len(lc.words))
    ncols = col_offset[-1]
    if sum(len(w) for w in col_words) > LP_COLUMN_BUDGET:
        raise BudgetError("extended formulation exceeds the column budget")
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    one = Fraction(1)
    for j, words in enumerate(col_words):
        row = [_ZERO] * ncols
        for w_idx in range(len(words)):
            row[col_offset[j] + w_idx] = one
        rows.append(row)
        rhs.append(one)
        for k, v in enumerate(graph.check_neighbors[j]):
            row = [_ZERO] * ncols
            row[v] = one
            for w_idx, w in enumerate(words):
                if (w >> k) & 1:
                    row[col_offset[j] + w_idx] = -one
            rows.append(row)
            rhs.append(_ZERO)
    return rows, rhs, ncols, col_offset, col_words


def _solve_decoding_lp(code: TannerCode, llr: LlrVector,
                       extra_rows: list[tuple[list[Fraction], Fraction]] | None = None,
                       objective: list[Fraction] | None = None):
    rows, rhs, ncols, col_offset, col_words = _lp_matrix(code)
    if extra_rows:
        for row, val in extra_rows:
            rows.append(row + [_ZERO] * (ncols - len(row)))
            rhs.append(val)
    if objective is None:
        objective = list(llr.values) + [_ZERO] * (ncols - code.n)
    else:
        objective = objective + [_ZERO] * (ncols - len(objective))
    sol = solve_standard_form(objective, rows, rhs)
    if sol.status != OPTIMAL:
        raise SolverFault(f"decoding LP reported {sol.status}")
    return sol, col_offset, col_words


def _check_residuals(code: TannerCode, sol, col_offset, col_words) -> None:
    """Re-verify the extended-formulation constraints on the returned point."""
    x = sol.x
    for j, words in enumerate(col_words):
        gam = [x[col_offset[j] + w_idx] for w_idx in range(len(words))]
        if any(g < 0 for g in gam) or sum(gam, _ZERO) != 1:
            raise SolverFault(f"simplex weights of node {j} are not a distribution")
        for k, v in enumerate(code.graph.check_neighbors[j]):
            combo = sum((g for g, w in zip(gam, words) if (w >> k) & 1), _ZERO)
            if combo != x[v]:
                raise SolverFault(f"consistency violated at node {j}, label {k}")


def lp_decode(code: TannerCode, llr: LlrVector, check_unique: bool = True) -> LpResult:
    """Exact LP decoding; classifies integrality/uniqueness of the optimum."""
    if len(llr.values) != code.n:
        raise InputError(f"LLR length {len(llr.values)} != block length {code.n}")
    sol, col_offset, col_words = _solve_decoding_lp(code, llr)
    _check_residuals(code, sol, col_offset, col_words)
    z = sol.x[: code.n]
    integral = all(v in (0, 1) for v in z)
    if integral and not code.is_codeword([int(v) for v in z]):
        raise SolverFault("integral LP optimum is not a codeword")
    unique: bool | None = None
    pseudo: bool | None = None
    if check_unique:
        unique = lp_unique_optimum(code, llr, z, _known_optimal=True)
        pseudo = (not integral) and unique
    return LpResult(z, sol.value, integral, unique, pseudo)


def _face_rows(code: TannerCode, llr: LlrVector, value: Fraction):
    row = list(llr.values)
    return [(row, value)]


def lp_unique_optimum(code: TannerCode, llr: LlrVector, z_star: Sequence,
                      _known_optimal: bool = False) -> bool:
    """True iff the optimal face of the decoding LP is the single point z_star.

    One auxiliary LP maximizes disagreement on the integral coordinates of
    z_star; fractional coordinates (if any) are pinned by per-coordinate
    min/max solves over the optimal face.
    """
    z_star = tuple(Fraction(v) for v in z_star)
    if len(z_star) != code.n:
        raise InputError("z_star has the wrong length")
    value = sum((l * v for l, v in zip(llr.values, z_star) if v), _ZERO)
    if not _known_optimal:
        ref = lp_decode(code, llr, check_unique=False)
        if ref.value != value:
            raise InputError("z_star is not an optimal LP solution")
        pins = [([Fraction(int(idx == v)) for idx in range(code.n)], z_star[v])
                for v in range(code.n)]
        try:
            _solve_decoding_lp(code, llr, extra_rows=pins,
                               objective=[_ZERO] * code.n)
        except SolverFault as exc:
            raise InputError("z_star is not feasible for the decoding LP") from exc

    face = _face_rows(code, llr, value)
    ones = [v for v in range(code.n) if z_star[v] == 1]
    zeros = [v for v in range(code.n) if z_star[v] == 0]
    fract = [v for v in range(code.n) if 0 < z_star[v] < 1]

    if ones or zeros:
        obj = [_ZERO] * code.n
        for v in ones:
            obj[v] = Fraction(1)
        for v in zeros:
            obj[v] = Fraction(-1)
        sol, _, _ = _solve_decoding_lp(code, llr, extra_rows=face, objective=obj)
        if sol.value != len(ones):
            return False

    for v in fract:
        for sign in (1, -1):
            obj = [_ZERO] * code.n
            obj[v] = Fraction(sign)
            sol, _, _ = _solve_decoding_lp(code, llr, extra_rows=face, objective=obj)
            if sol.x[v] != z_star[v]:
                return False
    return True
