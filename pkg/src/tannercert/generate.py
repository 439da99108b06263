"""Random Tanner-code generation (configuration model) and generator specs.

Generator spec strings, used by the CLI and experiment configs:

    file:PATH
    regular:n=9,dv=2,dc=3[,local=parity]
    irregular:n=8,degrees=3+3+4+4[,local=parity]

Known local-code families: parity (single parity check), repetition, and
hamming74 (the [7,4,3] code; requires degree-7 nodes).  Arbitrary local codes
enter through code definition files.
"""

from __future__ import annotations

import random
from pathlib import Path

from .codes import LocalCode, TannerCode, TannerGraph, pack_bits
from .errors import InputError

_MAX_SHUFFLES = 500


def hamming74() -> LocalCode:
    gens = [
        [1, 0, 0, 0, 1, 1, 0],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]
    words = []
    for sel in range(16):
        w = 0
        for b in range(4):
            if (sel >> b) & 1:
                w ^= pack_bits(gens[b])
        words.append(w)
    return LocalCode(7, words)


def local_family(name: str, length: int) -> LocalCode:
    if name == "parity":
        return LocalCode.parity(length)
    if name == "repetition":
        return LocalCode.repetition(length)
    if name == "hamming74":
        if length != 7:
            raise InputError("hamming74 local codes need degree-7 nodes")
        return hamming74()
    raise InputError(f"unknown local-code family {name!r}")


def _pair_stubs(num_vars: int, var_degrees: list[int], check_degrees: list[int],
                rng: random.Random) -> list[tuple[int, ...]]:
    """Configuration model; reshuffles until no local-code node repeats a variable."""
    var_stubs = [v for v, d in enumerate(var_degrees) for _ in range(d)]
    for _ in range(_MAX_SHUFFLES):
        rng.shuffle(var_stubs)
        neighbors = []
        pos = 0
        ok = True
        for d in check_degrees:
            vs = tuple(var_stubs[pos:pos + d])
            if len(set(vs)) != d:
                ok = False
                break
            neighbors.append(vs)
            pos += d
        if ok:
            return neighbors
    raise InputError("could not draw a simple bipartite graph for these degrees")


def random_regular_code(n: int, dv: int, dc: int, seed: int,
                        local: str = "parity") -> TannerCode:
    """(dv, dc)-regular Tanner code with one local family on every node."""
    if n < 1 or dv < 1 or dc < 2:
        raise InputError("need n >= 1, dv >= 1, dc >= 2")
    if (n * dv) % dc != 0:
        raise InputError(f"n*dv = {n * dv} is not divisible by dc = {dc}")
    num_checks = n * dv // dc
    rng = random.Random(seed)
    neighbors = _pair_stubs(n, [dv] * n, [dc] * num_checks, rng)
    lc = local_family(local, dc)
    return TannerCode(TannerGraph(n, neighbors), [lc] * num_checks)


def random_code_with_degrees(n: int, check_degrees: list[int], seed: int,
                             local: str = "parity") -> TannerCode:
    """Irregular code: given check degrees, variable degrees as even as possible."""
    if not check_degrees:
        raise InputError("need at least one local-code node")
    total = sum(check_degrees)
    if total < n:
        raise InputError("fewer edge stubs than variables (degree-0 variable)")
    base, extra = divmod(total, n)
    var_degrees = [base + 1 if v < extra else base for v in range(n)]
    rng = random.Random(seed)
    neighbors = _pair_stubs(n, var_degrees, check_degrees, rng)
    return TannerCode(
        TannerGraph(n, neighbors),
        [local_family(local, d) for d in check_degrees],
    )


def _parse_params(rest: str) -> dict[str, str]:
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"bad generator parameter {item!r}")
        params[key.strip()] = val.strip()
    return params


def generate_code(spec: str, seed: int) -> TannerCode:
    """Build a TannerCode from a generator spec string (see module docstring)."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "file":
        from .codefile import load_code

        return load_code(Path(rest.strip()))
    params = _parse_params(rest)
    local = params.pop("local", "parity")
    expected = {"regular": {"n", "dv", "dc"}, "irregular": {"n", "degrees"}}
    if kind not in expected:
        raise InputError(f"unknown generator kind {kind!r}")
    if set(params) != expected[kind]:
        raise InputError(
            f"{kind} generator takes {sorted(expected[kind])} (+ optional local), "
            f"got {sorted(params)}"
        )
    try:
        n = int(params["n"])
        if kind == "regular":
            dv, dc = int(params["dv"]), int(params["dc"])
        else:
            degrees = [int(tok) for tok in params["degrees"].split("+")]
    except ValueError as exc:
        raise InputError(f"bad generator parameter value in {spec!r}") from exc
    if kind == "regular":
        return random_regular_code(n, dv, dc, seed, local=local)
    return random_code_with_degrees(n, degrees, seed, local=local)
