"""Reader/writer for the line-oriented code definition format.

Grammar (``#`` starts a comment, blank lines are ignored):

    N J
    j : v_1 v_2 ... v_nj      one line per local-code node, 0-based variable
                              indices, order = edge labels; each j in 0..J-1
                              exactly once, any order
    code j                    J blocks, in increasing j
    parity                    either the single directive `parity`
    <bitstring>               or one codeword per line, leftmost character =
    ...                       edge label 0

Duplicate neighbors, length mismatches and malformed blocks are rejected.
"""

from __future__ import annotations

from pathlib import Path

from .codes import LocalCode, TannerCode, TannerGraph, pack_bits
from .errors import InputError


def _logical_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def parse_code_file(text: str) -> TannerCode:
    lines = _logical_lines(text)
    if not lines:
        raise InputError("empty code file")
    pos = 0

    def take() -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise InputError("unexpected end of code file")
        item = lines[pos]
        pos += 1
        return item

    lineno, header = take()
    parts = header.split()
    if len(parts) != 2:
        raise InputError(f"line {lineno}: header must be 'N J'")
    try:
        num_vars, num_checks = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise InputError(f"line {lineno}: bad header numbers") from exc

    neighbors: dict[int, tuple[int, ...]] = {}
    for _ in range(num_checks):
        lineno, line = take()
        if ":" not in line:
            raise InputError(f"line {lineno}: expected 'j : v1 v2 ...'")
        left, right = line.split(":", 1)
        try:
            j = int(left.strip())
            vs = tuple(int(tok) for tok in right.split())
        except ValueError as exc:
            raise InputError(f"line {lineno}: bad neighbor line") from exc
        if j in neighbors:
            raise InputError(f"line {lineno}: duplicate node index {j}")
        if not 0 <= j < num_checks:
            raise InputError(f"line {lineno}: node index {j} out of range")
        neighbors[j] = vs
    graph = TannerGraph(num_vars, [neighbors[j] for j in range(num_checks)])

    local_codes: list[LocalCode] = []
    for j in range(num_checks):
        lineno, line = take()
        if line.split() != ["code", str(j)]:
            raise InputError(f"line {lineno}: expected 'code {j}', got {line!r}")
        n_j = len(graph.check_neighbors[j])
        lineno, first = take()
        if first == "parity":
            local_codes.append(LocalCode.parity(n_j))
            continue
        words = []
        entry: tuple[int, str] | None = (lineno, first)
        while entry is not None:
            lineno, word = entry
            if any(ch not in "01" for ch in word):
                raise InputError(f"line {lineno}: bad codeword {word!r}")
            if len(word) != n_j:
                raise InputError(
                    f"line {lineno}: codeword length {len(word)} != degree {n_j}"
                )
            words.append(pack_bits([int(ch) for ch in word]))
            if pos < len(lines) and not lines[pos][1].startswith("code "):
                entry = take()
            else:
                entry = None
        local_codes.append(LocalCode(n_j, words))

    if pos != len(lines):
        raise InputError(f"line {lines[pos][0]}: trailing content")
    return TannerCode(graph, local_codes)


def format_code_file(code: TannerCode) -> str:
    """Inverse of parse_code_file; parity local codes round-trip as `parity`."""
    out = [f"{code.n} {code.graph.num_checks}"]
    for j, vs in enumerate(code.graph.check_neighbors):
        out.append(f"{j} : " + " ".join(str(v) for v in vs))
    for j, lc in enumerate(code.local_codes):
        out.append(f"code {j}")
        if lc == LocalCode.parity(lc.n):
            out.append("parity")
        else:
            for w in lc.sorted_words():
                out.append("".join(str((w >> k) & 1) for k in range(lc.n)))
    return "\n".join(out) + "\n"


def load_code(path: str | Path) -> TannerCode:
    return parse_code_file(Path(path).read_text())


def save_code(code: TannerCode, path: str | Path) -> None:
    Path(path).write_text(format_code_file(code))
