"""Joint source models and their information measures.

A JointSource holds the finite table P_{X,Y}(x, y) with X over a size-q
alphabet and Y over a finite alphabet; y_size = 1 encodes "no side
information".  Conditional entropy is reported in base-q units so that it
always lies in [0, 1].
"""

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedAlphabetError
from .field import FieldSpec

_SUM_TOL = 1e-12


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability {p} outside [0,1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _entropy_nats(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


@dataclass(frozen=True)
class JointSource:
    field: FieldSpec
    probs: np.ndarray  # shape (q, y_size)

    def __post_init__(self):
        table = np.asarray(self.probs, dtype=float)
        if table.ndim != 2 or table.shape[0] != self.field.q or table.shape[1] < 1:
            raise DomainError(f"probability table must be q x y_size with q={self.field.q}")
        if (table < 0).any():
            raise DomainError("negative probability entry")
        total = table.sum()
        if abs(total - 1.0) > _SUM_TOL:
            raise DomainError(f"probabilities sum to {total}, not 1")
        table = table / total
        table.setflags(write=False)
        object.__setattr__(self, "probs", table)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def y_size(self) -> int:
        return self.probs.shape[1]

    def p_y(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    def p_x(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def description(self) -> dict:
        """Canonical JSON-ready form, used in fingerprints and manifests."""
        return {
            "q": self.q,
            "y_size": self.y_size,
            "probs": [float(v) for v in self.probs.reshape(-1)],
        }

    def to_json(self) -> str:
        return json.dumps(self.description(), sort_keys=True)

    @staticmethod
    def from_description(desc: dict) -> "JointSource":
        q = int(desc["q"])
        y_size = int(desc["y_size"])
        table = np.asarray(desc["probs"], dtype=float).reshape(q, y_size)
        return JointSource(FieldSpec.for_alphabet(q), table)

    @staticmethod
    def from_json(text: str) -> "JointSource":
        return JointSource.from_description(json.loads(text))

    # Named presets ------------------------------------------------------

    @staticmethod
    def bernoulli(p: float) -> "JointSource":
        """X ~ Ber(p), no side information."""
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"probability {p} outside [0,1]")
        return JointSource(FieldSpec.binary(), np.array([[1.0 - p], [p]]))

    @staticmethod
    def bsc_pair(p: float) -> "JointSource":
        """Uniform X observed through a BSC with crossover p."""
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"probability {p} outside [0,1]")
        table = 0.5 * np.array([[1.0 - p, p], [p, 1.0 - p]])
        return JointSource(FieldSpec.binary(), table)

    @staticmethod
    def bec_pair(eps: float) -> "JointSource":
        """Uniform X observed through a BEC; y = 2 marks the erasure."""
        if not 0.0 <= eps <= 1.0:
            raise DomainError(f"probability {eps} outside [0,1]")
        table = 0.5 * np.array([[1.0 - eps, 0.0, eps], [0.0, 1.0 - eps, eps]])
        return JointSource(FieldSpec.binary(), table)


_PRESET_RE = re.compile(r"^\s*(\w+)\s*\(\s*([0-9.eE+-]+)\s*\)\s*$")

_PRESETS = {
    "bernoulli": JointSource.bernoulli,
    "bsc_pair": JointSource.bsc_pair,
    "bec_pair": JointSource.bec_pair,
}


def parse_preset(text: str) -> JointSource:
    """Parse 'bernoulli(p)', 'bsc_pair(p)' or 'bec_pair(eps)'."""
    m = _PRESET_RE.match(text)
    if not m or m.group(1) not in _PRESETS:
        raise DomainError(f"unknown source preset: {text!r}")
    return _PRESETS[m.group(1)](float(m.group(2)))


def conditional_entropy(s: JointSource) -> float:
    """H(X|Y) in base-q units (lies in [0, 1])."""
    h_joint = _entropy_nats(s.probs.reshape(-1))
    h_y = _entropy_nats(s.p_y())
    return (h_joint - h_y) / math.log(s.q)


def bhattacharyya(s: JointSource) -> float:
    """Z(X|Y) = 2 sum_y P_Y(y) sqrt(P(0|y) P(1|y)); binary X only."""
    if not s.field.is_binary:
        raise UnsupportedAlphabetError("Bhattacharyya parameter requires q = 2")
    z = 2.0 * float(np.sqrt(s.probs[0] * s.probs[1]).sum())
    return min(z, 1.0)


def renyi_entropy(dist, alpha: float) -> float:
    """Renyi entropy of order alpha in bits (alpha > 0, alpha != 1)."""
    p = np.asarray(dist, dtype=float)
    if p.ndim != 1 or (p < 0).any() or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError("invalid probability vector")
    if alpha <= 0 or alpha == 1.0:
        raise DomainError(f"alpha must be positive and != 1, got {alpha}")
    support = p[p > 0]
    return math.log2(float((support**alpha).sum())) / (1.0 - alpha)


@dataclass(frozen=True)
class ZHReport:
    z_sq: float
    h: float
    log1pz: float
    tight: bool


def check_z_h_inequalities(s: JointSource, tol: float = 1e-12) -> ZHReport:
    """Evaluate Z^2 <= H(X|Y) <= log2(1+Z) and report the three values.

    tight is True iff X given every y in the support is deterministic or
    uniform, the exact equality condition of both inequalities.
    """
    if not s.field.is_binary:
        raise UnsupportedAlphabetError("inequality suite requires q = 2")
    z = bhattacharyya(s)
    h = conditional_entropy(s)
    lo, hi = z * z, math.log2(1.0 + z)
    if h < lo - tol or h > hi + tol:
        raise AssertionError(f"Z/H inequality violated: {lo} <= {h} <= {hi}")
    # Equality needs every conditional to be deterministic, or every one
    # uniform; a mixture keeps both inequalities strict (Jensen step).
    all_det = True
    all_unif = True
    py = s.p_y()
    for y in range(s.y_size):
        if py[y] <= 0:
            continue
        p0 = s.probs[0, y] / py[y]
        if min(p0, 1.0 - p0) > tol:
            all_det = False
        if abs(p0 - 0.5) > tol:
            all_unif = False
    return ZHReport(z_sq=lo, h=h, log1pz=hi, tight=all_det or all_unif)
