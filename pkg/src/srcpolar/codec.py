"""Lossless block compression with side information, plus Slepian-Wolf.

Wire format of one compressed block:

    magic  "PLSC"          4 bytes
    version u8             1 = plain, 2 = with crc32 of the source block
    n       u8             block length is 2^n
    fingerprint            8 bytes (index-set manifest hash prefix)
    payload-bit-count u32  little endian
    [crc32  u32 LE]        version 2 only
    payload                bits in increasing index order, MSB-first
"""

import zlib
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FingerprintMismatchError, FormatError, UnsupportedAlphabetError
from .scdec import SequentialDecoder
from .sources import JointSource, conditional_entropy
from .spectrum import METHOD_MC, HighEntropySet, PolarSpectrum, build_high_entropy_set, zbound_spectrum
from .transform import SymbolBlock, polar_forward, polar_inverse

MAGIC = b"PLSC"
VERSION_PLAIN = 1
VERSION_CRC = 2


@dataclass(frozen=True)
class CompressedBlock:
    version: int
    n: int
    fingerprint: str  # 16 hex chars
    payload: np.ndarray  # bit array, length = payload bit count
    crc: int | None = None

    @property
    def N(self) -> int:
        return 1 << self.n

    def to_bytes(self) -> bytes:
        head = bytearray()
        head += MAGIC
        head.append(self.version)
        head.append(self.n)
        head += bytes.fromhex(self.fingerprint)
        head += len(self.payload).to_bytes(4, "little")
        if self.version == VERSION_CRC:
            head += int(self.crc).to_bytes(4, "little")
        return bytes(head) + np.packbits(self.payload.astype(np.uint8)).tobytes()

    @staticmethod
    def from_bytes(buf: bytes, offset: int = 0) -> tuple["CompressedBlock", int]:
        """Parse one block starting at offset; returns (block, next offset)."""
        if len(buf) < offset + 18:
            raise FormatError("truncated compressed block header")
        if buf[offset : offset + 4] != MAGIC:
            raise FormatError("bad magic; not a compressed block")
        version = buf[offset + 4]
        if version not in (VERSION_PLAIN, VERSION_CRC):
            raise FormatError(f"unsupported block version {version}")
        n = buf[offset + 5]
        fingerprint = buf[offset + 6 : offset + 14].hex()
        nbits = int.from_bytes(buf[offset + 14 : offset + 18], "little")
        pos = offset + 18
        crc = None
        if version == VERSION_CRC:
            crc = int.from_bytes(buf[pos : pos + 4], "little")
            pos += 4
        nbytes = (nbits + 7) // 8
        raw = buf[pos : pos + nbytes]
        if len(raw) < nbytes:
            raise FormatError("truncated compressed block")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[:nbits].astype(np.int64)
        return CompressedBlock(version, n, fingerprint, bits, crc), pos + nbytes


def compress(x: SymbolBlock, hset: HighEntropySet, checksum: bool = False) -> CompressedBlock:
    """u = x G_N; emit u restricted to the high-entropy indices."""
    if not x.field.is_binary:
        raise UnsupportedAlphabetError("compression requires a binary source")
    if x.N != hset.N:
        raise DomainError(f"block length {x.N} != set length {hset.N}")
    u = polar_forward(x).data
    payload = u[np.asarray(hset.indices, dtype=np.int64) - 1]
    crc = zlib.crc32(np.packbits(x.data.astype(np.uint8)).tobytes()) if checksum else None
    version = VERSION_CRC if checksum else VERSION_PLAIN
    return CompressedBlock(version, x.N.bit_length() - 1, hset.fingerprint, payload, crc)


def decompress(
    block: CompressedBlock,
    y,
    hset: HighEntropySet,
    source: JointSource,
) -> SymbolBlock:
    """Sequential reconstruction of x from the payload and side block y."""
    if block.fingerprint != hset.fingerprint:
        raise FingerprintMismatchError(
            f"block fingerprint {block.fingerprint} != set {hset.fingerprint}"
        )
    if block.N != hset.N:
        raise FormatError("block length disagrees with index set")
    if len(block.payload) != len(hset.indices):
        raise FormatError("payload bit count disagrees with index set size")
    known = dict(zip(hset.indices, (int(b) for b in block.payload)))
    dec = SequentialDecoder(source, y, N=hset.N)
    u_hat = np.empty(hset.N, dtype=np.int64)
    for i in range(1, hset.N + 1):
        bit, _ = dec.decide_next(i, known.get(i))
        u_hat[i - 1] = bit
    x_hat = polar_inverse(SymbolBlock(source.field, u_hat))
    if block.version == VERSION_CRC:
        got = zlib.crc32(np.packbits(x_hat.data.astype(np.uint8)).tobytes())
        if got != block.crc:
            raise FormatError("checksum mismatch after decompression")
    return x_hat


def error_bound(hset: HighEntropySet, spec: PolarSpectrum) -> float:
    """Union bound on block error: sum of z over the unselected indices.

    Only certified spectra (exact or zbound) are accepted.
    """
    if spec.method == METHOD_MC:
        raise DomainError("Monte-Carlo estimates are not certificates")
    if spec.z is None:
        raise DomainError("spectrum has no z values")
    if spec.N != hset.N:
        raise DomainError("spectrum and set lengths disagree")
    comp = np.asarray(hset.complement(), dtype=np.int64) - 1
    total = float(spec.z[comp].sum())
    return min(max(total, 0.0), 1.0)


# Slepian-Wolf corner point: decode Y alone, then X given the Y estimate.


@dataclass(frozen=True)
class SWConfig:
    joint: JointSource  # P_{X,Y}, both binary
    y_marginal: JointSource  # P_Y as a source with no side information
    rate_x: float
    rate_y: float
    set_x: HighEntropySet  # built for X given Y
    set_y: HighEntropySet  # built for Y alone

    def to_manifest(self) -> dict:
        return {
            "joint": self.joint.description(),
            "R_x": self.rate_x,
            "R_y": self.rate_y,
            "set_x": self.set_x.to_manifest(),
            "set_y": self.set_y.to_manifest(),
        }


def sw_config(joint: JointSource, N: int, rate_x: float, rate_y: float) -> SWConfig:
    """Build the two z-bound index sets for the corner-point scheme."""
    if not joint.field.is_binary or joint.y_size != 2:
        raise UnsupportedAlphabetError("Slepian-Wolf coding requires binary X and Y")
    y_marg = JointSource(joint.field, joint.p_y().reshape(2, 1))
    h_xy = conditional_entropy(joint)
    h_y = conditional_entropy(y_marg)
    if rate_x <= h_xy:
        raise DomainError(f"R_x={rate_x} must exceed H(X|Y)={h_xy:.6f}")
    if rate_y <= h_y:
        raise DomainError(f"R_y={rate_y} must exceed H(Y)={h_y:.6f}")
    set_x = build_high_entropy_set(zbound_spectrum(joint, N), rate_x)
    set_y = build_high_entropy_set(zbound_spectrum(y_marg, N), rate_y)
    return SWConfig(joint, y_marg, rate_x, rate_y, set_x, set_y)


def sw_encode_x(x: SymbolBlock, cfg: SWConfig) -> CompressedBlock:
    return compress(x, cfg.set_x)


def sw_encode_y(y: SymbolBlock, cfg: SWConfig) -> CompressedBlock:
    return compress(y, cfg.set_y)


def sw_decode(cx: CompressedBlock, cy: CompressedBlock, cfg: SWConfig):
    """Two-stage joint decoding; returns (x_hat, y_hat)."""
    y_hat = decompress(cy, None, cfg.set_y, cfg.y_marginal)
    x_hat = decompress(cx, y_hat.data, cfg.set_x, cfg.joint)
    return x_hat, y_hat


def sw_error_bound(cfg: SWConfig) -> float:
    """Sum of the two stages' union-bound certificates (may exceed 1)."""
    bx = error_bound(cfg.set_x, zbound_spectrum(cfg.joint, cfg.set_x.N))
    by = error_bound(cfg.set_y, zbound_spectrum(cfg.y_marginal, cfg.set_y.N))
    return bx + by
