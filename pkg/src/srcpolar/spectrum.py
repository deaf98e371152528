"""Polarization spectra and high-entropy index sets.

Three ways to obtain per-index statistics of U^N = X^N G_N:

* exact enumeration of the joint law (hard-capped state budget),
* propagation of the Bhattacharyya bound pair (2z - z^2, z^2), giving
  certified upper bounds that are exact for erasure-type side information,
* Monte-Carlo genie-aided estimation (estimates, never certificates).
"""

import hashlib
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceededError, DomainError, UnsupportedAlphabetError
from .field import FieldSpec
from .scdec import base_llr, genie_llr_profile
from .sources import JointSource, bhattacharyya
from .transform import _forward_rows

METHOD_EXACT = "exact"
METHOD_ZBOUND = "zbound"
METHOD_MC = "mc"

STATE_BUDGET = 1 << 24
_PERM_CHUNK = 1 << 16


@dataclass(frozen=True)
class PolarSpectrum:
    """Per-index h/z values (or bounds/estimates) for one block length."""

    N: int
    method: str
    h: np.ndarray | None
    z: np.ndarray | None
    source_desc: dict | None = None
    samples: int | None = None
    seed: int | None = None

    def write_csv(self, fh) -> None:
        fh.write("index,h,z,method\n")
        for i in range(self.N):
            hval = format(self.h[i], ".17g") if self.h is not None else ""
            zval = format(self.z[i], ".17g") if self.z is not None else ""
            fh.write(f"{i + 1},{hval},{zval},{self.method}\n")


@dataclass(frozen=True)
class HighEntropySet:
    """Index set E(N, R): the ceil(NR) indices of largest z (1-based)."""

    N: int
    rate: float
    indices: tuple
    z_values: tuple
    fingerprint: str
    method: str
    seed: int | None
    source_desc: dict | None

    def complement(self) -> tuple:
        chosen = set(self.indices)
        return tuple(i for i in range(1, self.N + 1) if i not in chosen)

    def to_manifest(self) -> dict:
        return {
            "N": self.N,
            "R": self.rate,
            "indices": list(self.indices),
            "fingerprint": self.fingerprint,
            "method": self.method,
            "seed": self.seed,
            "source": self.source_desc,
        }

    @staticmethod
    def from_manifest(doc: dict) -> "HighEntropySet":
        indices = tuple(int(i) for i in doc["indices"])
        return HighEntropySet(
            N=int(doc["N"]),
            rate=float(doc["R"]),
            indices=indices,
            z_values=(),
            fingerprint=str(doc["fingerprint"]),
            method=str(doc["method"]),
            seed=doc.get("seed"),
            source_desc=doc.get("source"),
        )


def spectrum_fingerprint(source_desc, N: int, method: str, seed) -> str:
    blob = json.dumps(
        {"source": source_desc, "N": N, "method": method, "seed": seed},
        sort_keys=True,
    ).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _check_block_length(N: int) -> int:
    if N < 1 or (N & (N - 1)) != 0:
        raise DomainError(f"N={N} is not a power of two")
    return N.bit_length() - 1


@lru_cache(maxsize=32)
def _transform_permutation(field: FieldSpec, N: int) -> np.ndarray:
    """perm[x_index] = index of x G_N, both in most-significant-first digits."""
    q = field.q
    total = q**N
    weights = q ** np.arange(N - 1, -1, -1, dtype=np.int64)
    perm = np.empty(total, dtype=np.int64)
    for start in range(0, total, _PERM_CHUNK):
        xs = np.arange(start, min(start + _PERM_CHUNK, total), dtype=np.int64)
        digits = (xs[:, None] // weights[None, :]) % q
        perm[start : start + xs.shape[0]] = _forward_rows(field, digits) @ weights
    return perm


def exact_spectrum(s: JointSource, N: int) -> PolarSpectrum:
    """Exact h (and, for q=2, z) spectrum by full enumeration."""
    _check_block_length(N)
    q, ys = s.q, s.y_size
    if (q * ys) ** N > STATE_BUDGET:
        raise BudgetExceededError(
            f"(q*y_size)^N = {(q * ys) ** N} exceeds the {STATE_BUDGET} state budget"
        )
    joint = s.probs
    for _ in range(N - 1):
        joint = np.kron(joint, s.probs)
    # joint is (q^N, ys^N) with symbol 1 as the most significant digit.
    perm = _transform_permutation(s.field, N)
    pu = np.empty_like(joint)
    pu[perm] = joint

    lnq = math.log(q)
    h = np.empty(N)
    z = np.empty(N) if s.field.is_binary else None
    marg = pu
    ent_hi = _entropy_of(marg)
    for i in range(N, 0, -1):
        shaped = marg.reshape(q ** (i - 1), q, ys**N)
        if z is not None:
            z[i - 1] = 2.0 * float(np.sqrt(shaped[:, 0, :] * shaped[:, 1, :]).sum())
        marg = shaped.sum(axis=1)
        ent_lo = _entropy_of(marg)
        h[i - 1] = (ent_hi - ent_lo) / lnq
        ent_hi = ent_lo
    np.clip(h, 0.0, None, out=h)
    if z is not None:
        np.clip(z, 0.0, 1.0, out=z)
    return PolarSpectrum(N=N, method=METHOD_EXACT, h=h, z=z, source_desc=s.description())


def _entropy_of(p: np.ndarray) -> float:
    flat = p.reshape(-1)
    pos = flat[flat > 0]
    return float(-(pos * np.log(pos)).sum())


def zbound_spectrum(s: JointSource, N: int) -> PolarSpectrum:
    """Certified z upper bounds via n levels of (2z - z^2, z^2).

    Index i's branch sequence is read from the bits of i-1, most
    significant first (0 -> minus, 1 -> plus).
    """
    n = _check_block_length(N)
    if not s.field.is_binary:
        raise UnsupportedAlphabetError("z-bound propagation requires q = 2")
    z = np.array([bhattacharyya(s)])
    for _ in range(n):
        nxt = np.empty(2 * z.shape[0])
        nxt[0::2] = 2.0 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    np.clip(z, 0.0, 1.0, out=z)
    return PolarSpectrum(N=N, method=METHOD_ZBOUND, h=None, z=z, source_desc=s.description())


def montecarlo_spectrum(s: JointSource, N: int, samples: int, seed: int) -> PolarSpectrum:
    """Genie-aided Monte-Carlo estimates of the h and z spectra."""
    _check_block_length(N)
    if not s.field.is_binary:
        raise UnsupportedAlphabetError("Monte-Carlo estimation requires q = 2")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    flat = s.probs.reshape(-1)
    draws = rng.choice(flat.shape[0], size=(samples, N), p=flat)
    x = (draws // s.y_size).astype(np.int64)
    y = draws % s.y_size
    u = _forward_rows(s.field, x)
    py = s.p_y()
    # zero-probability side symbols are never drawn; placeholder llr of 0
    llr_table = np.array(
        [base_llr(s, yy) if py[yy] > 0 else 0.0 for yy in range(s.y_size)]
    )
    llrs = genie_llr_profile(llr_table[y], u)
    # -log2 P(true bit): logaddexp(0, -llr) for u=0, logaddexp(0, llr) for u=1
    signed = np.where(u == 0, -llrs, llrs)
    h = np.logaddexp(0.0, signed).mean(axis=0) / math.log(2.0)
    z = (1.0 / np.cosh(0.5 * llrs)).mean(axis=0)
    return PolarSpectrum(
        N=N,
        method=METHOD_MC,
        h=h,
        z=np.clip(z, 0.0, 1.0),
        source_desc=s.description(),
        samples=samples,
        seed=seed,
    )


def build_high_entropy_set(spec: PolarSpectrum, R: float) -> HighEntropySet:
    """Select the ceil(NR) largest-z indices; ties go to the smaller index."""
    if not 0.0 < R <= 1.0:
        raise DomainError(f"rate {R} outside (0, 1]")
    if spec.z is None:
        raise DomainError("spectrum has no z values to select on")
    k = math.ceil(spec.N * R)
    order = np.argsort(-spec.z, kind="stable")
    chosen = np.sort(order[:k])
    return HighEntropySet(
        N=spec.N,
        rate=R,
        indices=tuple(int(i) + 1 for i in chosen),
        z_values=tuple(float(spec.z[i]) for i in chosen),
        fingerprint=spectrum_fingerprint(spec.source_desc, spec.N, spec.method, spec.seed),
        method=spec.method,
        seed=spec.seed,
        source_desc=spec.source_desc,
    )


def polarization_fractions(spec: PolarSpectrum, delta: float) -> dict:
    """Fractions of indices with h > 1-delta (high), h < delta (low), rest (mid)."""
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta {delta} outside (0, 1)")
    if spec.h is None:
        raise DomainError("spectrum has no h values")
    high = float((spec.h > 1.0 - delta).mean())
    low = float((spec.h < delta).mean())
    return {"high": high, "low": low, "mid": 1.0 - high - low}
