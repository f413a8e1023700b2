"""Charge sequences and their interval sums.

Charges are stored 0-based (``values[k-1]`` is the charge of monomer ``k``)
while ``prefix`` keeps the 1-based cumulative sums with ``prefix[0] = 0``.
Integer-valued laws (binary, di-block, tilted binary) keep integer prefixes so
that squared interval charges stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

DIST_TAGS = ("binary", "gaussian", "diblock", "tilted-binary", "tilted-gaussian")
INTEGER_TAGS = ("binary", "diblock", "tilted-binary")


def derive_seed(master_seed: int, stream: int) -> int:
    """Hash ``(master_seed, stream)`` into an independent 64-bit seed."""
    ss = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, int(stream)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ChargeSequence:
    values: np.ndarray
    dist_tag: str
    seed: Optional[int] = None
    prefix: np.ndarray = field(init=False, repr=False)
    sq_prefix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.dist_tag not in DIST_TAGS:
            raise ValueError(f"unknown dist_tag {self.dist_tag!r}")
        vals = np.asarray(self.values)
        if self.dist_tag in INTEGER_TAGS:
            vals = vals.astype(np.int64)
            if not np.all(np.abs(vals) == 1):
                raise ValueError("integer charge laws must take values in {-1, +1}")
        else:
            vals = vals.astype(np.float64)
        prefix = np.zeros(len(vals) + 1, dtype=vals.dtype)
        np.cumsum(vals, out=prefix[1:])
        sq = np.zeros(len(vals) + 1, dtype=vals.dtype)
        np.cumsum(vals * vals, out=sq[1:])
        object.__setattr__(self, "values", _readonly(vals))
        object.__setattr__(self, "prefix", _readonly(prefix))
        object.__setattr__(self, "sq_prefix", _readonly(sq))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def is_integer(self) -> bool:
        return self.dist_tag in INTEGER_TAGS

    def __len__(self) -> int:
        return self.n

    def shift(self, a: int) -> "ChargeSequence":
        """The shifted sequence ``theta^a omega`` (charges ``a+1..n``)."""
        return ChargeSequence(self.values[a:].copy(), self.dist_tag, self.seed)

    def head(self, m: int) -> "ChargeSequence":
        return ChargeSequence(self.values[:m].copy(), self.dist_tag, self.seed)


def _check_n(n: int) -> int:
    if int(n) < 1:
        raise ValueError(f"sequence length must be >= 1, got {n}")
    return int(n)


def make_binary(n: int, seed: int) -> ChargeSequence:
    n = _check_n(n)
    vals = 2 * _rng(seed).integers(0, 2, size=n, dtype=np.int64) - 1
    return ChargeSequence(vals, "binary", int(seed))


def make_gaussian(n: int, seed: int) -> ChargeSequence:
    n = _check_n(n)
    return ChargeSequence(_rng(seed).standard_normal(n), "gaussian", int(seed))


def make_diblock(half_n: int) -> ChargeSequence:
    """``+1`` on monomers ``1..half_n`` and ``-1`` on ``half_n+1..2*half_n``.

    This is the charge-neutral reading of the di-block sequence; with it the
    folded segment ``(i, n+j]`` carries charge ``n - i - j``.
    """
    half_n = _check_n(half_n)
    vals = np.concatenate([np.ones(half_n, np.int64), -np.ones(half_n, np.int64)])
    return ChargeSequence(vals, "diblock", None)


def make_tilted(n: int, delta: float, seed: int, base: str = "binary") -> ChargeSequence:
    """i.i.d. charges under the exponentially tilted law of ``base``.

    Binary: ``P(+1) = e^delta / (e^delta + e^-delta)``.  Gaussian: ``N(delta, 1)``.
    """
    n = _check_n(n)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    rng = _rng(seed)
    if base == "binary":
        p_plus = 1.0 / (1.0 + np.exp(-2.0 * delta))
        vals = np.where(rng.random(n) < p_plus, 1, -1).astype(np.int64)
        return ChargeSequence(vals, "tilted-binary", int(seed))
    if base == "gaussian":
        return ChargeSequence(delta + rng.standard_normal(n), "tilted-gaussian", int(seed))
    raise ValueError(f"unknown base law {base!r}")


def make_charges(dist: str, n: int, seed: int) -> ChargeSequence:
    """Dispatch on a CLI-style distribution name."""
    if dist == "binary":
        return make_binary(n, seed)
    if dist == "gaussian":
        return make_gaussian(n, seed)
    if dist == "diblock":
        if n % 2:
            raise ValueError("di-block sequences have even length")
        return make_diblock(n // 2)
    raise ValueError(f"unknown charge distribution {dist!r}")


def interval_charge(omega: ChargeSequence, a: int, b: int):
    """Total charge ``Omega_(a,b]`` of monomers ``a+1..b``."""
    if not (0 <= a <= b <= omega.n):
        raise IndexError(f"need 0 <= a <= b <= {omega.n}, got a={a}, b={b}")
    val = omega.prefix[b] - omega.prefix[a]
    return int(val) if omega.is_integer else float(val)


def write_charges(omega: ChargeSequence, path) -> None:
    seed = "none" if omega.seed is None else str(omega.seed)
    lines = [f"# dist={omega.dist_tag} n={omega.n} seed={seed}"]
    if omega.is_integer:
        lines += [str(int(v)) for v in omega.values]
    else:
        lines += [repr(float(v)) for v in omega.values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_charges(path) -> ChargeSequence:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("#"):
        raise ValueError("missing charge dump header")
    meta = dict(tok.split("=", 1) for tok in text[0].lstrip("#").split())
    tag = meta["dist"]
    body = [ln for ln in text[1:] if ln.strip()]
    if int(meta["n"]) != len(body):
        raise ValueError("header length does not match body")
    conv = int if tag in INTEGER_TAGS else float
    seed = None if meta.get("seed", "none") == "none" else int(meta["seed"])
    return ChargeSequence(np.array([conv(x) for x in body]), tag, seed)
