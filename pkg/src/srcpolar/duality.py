"""Channel coding through the source/channel duality.

A binary-input channel W with uniform inputs induces the source
P_{X,Y}(x,y) = W(y|x)/2; coding at rate R < I(W) over W is compression of
that source at rate 1-R.  The frozen positions are the high-entropy set of
the induced source, filled with a seeded pseudorandom pattern shared by
both ends.
"""

from dataclasses import dataclass

import numpy as np

from .codec import error_bound
from .errors import DomainError
from .field import FieldSpec
from .scdec import SequentialDecoder
from .sources import JointSource, conditional_entropy
from .spectrum import HighEntropySet, PolarSpectrum, build_high_entropy_set, zbound_spectrum
from .transform import SymbolBlock, polar_forward

_ROW_TOL = 1e-12


@dataclass(frozen=True)
class ChannelModel:
    """Binary-input DMC given by a (2, m) transition table W(y|x)."""

    kind: str  # "bsc", "bec" or "dmc"
    table: np.ndarray
    param: float | None = None

    def __post_init__(self):
        t = np.asarray(self.table, dtype=float)
        if t.ndim != 2 or t.shape[0] != 2 or t.shape[1] < 1 or (t < 0).any():
            raise DomainError("channel table must be 2 x m with nonnegative entries")
        if np.abs(t.sum(axis=1) - 1.0).max() > _ROW_TOL:
            raise DomainError("channel rows must each sum to 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @staticmethod
    def bsc(p: float) -> "ChannelModel":
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"crossover {p} outside [0,1]")
        return ChannelModel("bsc", np.array([[1.0 - p, p], [p, 1.0 - p]]), p)

    @staticmethod
    def bec(eps: float) -> "ChannelModel":
        """Outputs 0, 1, and 2 (the erasure symbol)."""
        if not 0.0 <= eps <= 1.0:
            raise DomainError(f"erasure probability {eps} outside [0,1]")
        table = np.array([[1.0 - eps, 0.0, eps], [0.0, 1.0 - eps, eps]])
        return ChannelModel("bec", table, eps)

    @staticmethod
    def dmc(table) -> "ChannelModel":
        return ChannelModel("dmc", np.asarray(table, dtype=float))

    @property
    def output_size(self) -> int:
        return self.table.shape[1]

    def description(self) -> dict:
        return {"kind": self.kind, "table": [float(v) for v in self.table.reshape(-1)]}

    def sample(self, x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Inverse-CDF sampling of outputs for an input bit vector."""
        cdf = np.cumsum(self.table, axis=1)
        r = rng.random(x.shape[0])
        return (r[:, None] >= cdf[x]).sum(axis=1).astype(np.int64)


def induced_source(w: ChannelModel) -> JointSource:
    """The source (X, Y) ~ Q(x) W(y|x) with Q uniform on {0,1}."""
    return JointSource(FieldSpec.binary(), 0.5 * w.table)


def symmetric_capacity(w: ChannelModel) -> float:
    """I(X;Y) in bits under uniform inputs: 1 - H(X|Y) of the induced source."""
    return 1.0 - conditional_entropy(induced_source(w))


@dataclass(frozen=True)
class DualityCode:
    N: int
    rate: float
    channel: ChannelModel
    source: JointSource  # induced source
    frozen_set: HighEntropySet  # high-entropy set of rate 1-R
    frozen_pattern: np.ndarray  # bits on the frozen positions
    pattern_seed: int
    spectrum: PolarSpectrum  # certified z bounds used for the set

    @property
    def data_indices(self) -> tuple:
        return self.frozen_set.complement()

    @property
    def data_size(self) -> int:
        return self.N - len(self.frozen_set.indices)

    def to_manifest(self) -> dict:
        return {
            "N": self.N,
            "R": self.rate,
            "frozen_indices": list(self.frozen_set.indices),
            "pattern_seed": self.pattern_seed,
            "channel": self.channel.description(),
        }


def make_duality_code(w: ChannelModel, N: int, rate: float, pattern_seed: int) -> DualityCode:
    if not 0.0 < rate < 1.0:
        raise DomainError(f"rate {rate} outside (0, 1)")
    src = induced_source(w)
    spec = zbound_spectrum(src, N)
    frozen = build_high_entropy_set(spec, 1.0 - rate)
    rng = np.random.default_rng(pattern_seed)
    pattern = rng.integers(0, 2, size=len(frozen.indices), dtype=np.int64)
    return DualityCode(
        N=N,
        rate=rate,
        channel=w,
        source=src,
        frozen_set=frozen,
        frozen_pattern=pattern,
        pattern_seed=pattern_seed,
        spectrum=spec,
    )


def channel_encode(data: np.ndarray, code: DualityCode) -> SymbolBlock:
    """Assemble u (frozen pattern + data bits) and transmit x = u G_N."""
    data = np.asarray(data, dtype=np.int64)
    if data.shape[0] != code.data_size:
        raise DomainError(f"expected {code.data_size} data bits, got {data.shape[0]}")
    u = np.empty(code.N, dtype=np.int64)
    u[np.asarray(code.frozen_set.indices, dtype=np.int64) - 1] = code.frozen_pattern
    u[np.asarray(code.data_indices, dtype=np.int64) - 1] = data
    return polar_forward(SymbolBlock(code.source.field, u))


def channel_decode(y, code: DualityCode) -> np.ndarray:
    """Sequential decoding with frozen positions known; returns the data bits."""
    y = np.asarray(y, dtype=np.int64)
    if y.shape[0] != code.N:
        raise DomainError(f"received block length {y.shape[0]} != N={code.N}")
    if y.size and (y.min() < 0 or y.max() >= code.channel.output_size):
        raise DomainError("received symbol outside the channel output alphabet")
    known = dict(zip(code.frozen_set.indices, (int(b) for b in code.frozen_pattern)))
    dec = SequentialDecoder(code.source, y)
    u_hat = np.empty(code.N, dtype=np.int64)
    for i in range(1, code.N + 1):
        bit, _ = dec.decide_next(i, known.get(i))
        u_hat[i - 1] = bit
    return u_hat[np.asarray(code.data_indices, dtype=np.int64) - 1]


def simulate(w: ChannelModel, code: DualityCode, trials: int, seed: int) -> dict:
    """Seeded end-to-end trials; reports FER, BER and the union-bound certificate."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    frame_errors = 0
    bit_errors = 0
    k = code.data_size
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        data = rng.integers(0, 2, size=k, dtype=np.int64)
        x = channel_encode(data, code)
        y = w.sample(x.data, rng)
        data_hat = channel_decode(y, code)
        wrong = int((data_hat != data).sum())
        bit_errors += wrong
        frame_errors += wrong > 0
    bound = error_bound(code.frozen_set, code.spectrum)
    return {
        "fer": frame_errors / trials,
        "ber": bit_errors / (trials * k) if k else 0.0,
        "bound": bound,
        "trials": trials,
    }
