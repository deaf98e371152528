"""Command-line front end.

Subcommands: spectrum, freeze, compress, decompress, chansim, swsim.
All stochastic commands require --seed and are byte-deterministic given
their inputs.  Output files are written atomically (temp file + rename).
Floats are formatted with 17 significant digits.
"""

import argparse
import io
import json
import os
import re
import sys
import tempfile

import numpy as np

from . import codec, duality, spectrum as spec_mod
from .errors import SrcPolarError
from .sources import JointSource, parse_preset
from .spectrum import HighEntropySet
from .transform import SymbolBlock

_F = lambda v: format(v, ".17g")

# Parallelism cap honored by internal loops; all current paths run
# sequentially, so the cap only bounds what they may use.
POLAR_THREADS = max(1, int(os.environ.get("POLAR_THREADS", "1") or 1))


def _atomic_write(path: str, data: bytes) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-srcpolar-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_source(args) -> JointSource:
    if getattr(args, "preset", None):
        return parse_preset(args.preset)
    if getattr(args, "source", None):
        with open(args.source) as fh:
            return JointSource.from_json(fh.read())
    raise SrcPolarError("one of --preset or --source is required")


_CHAN_RE = re.compile(r"^\s*(bsc|bec)\s*\(\s*([0-9.eE+-]+)\s*\)\s*$")


def _parse_channel(text: str) -> duality.ChannelModel:
    m = _CHAN_RE.match(text)
    if not m:
        raise SrcPolarError(f"unknown channel spec: {text!r} (expected bsc(p) or bec(eps))")
    if m.group(1) == "bsc":
        return duality.ChannelModel.bsc(float(m.group(2)))
    return duality.ChannelModel.bec(float(m.group(2)))


def _compute_spectrum(src, N, method, samples, seed):
    if method == "exact":
        return spec_mod.exact_spectrum(src, N)
    if method == "zbound":
        return spec_mod.zbound_spectrum(src, N)
    if method == "mc":
        if seed is None:
            raise SrcPolarError("--seed is required for the Monte-Carlo method")
        return spec_mod.montecarlo_spectrum(src, N, samples, seed)
    raise SrcPolarError(f"unknown method {method!r}")


def cmd_spectrum(args) -> int:
    src = _load_source(args)
    rows = io.StringIO()
    rows.write("N,index,h,z,method\n")
    fracs = io.StringIO()
    fracs.write("N,delta,high,low,mid\n")
    for N in args.N:
        sp = _compute_spectrum(src, N, args.method, args.samples, args.seed)
        for i in range(N):
            h = _F(sp.h[i]) if sp.h is not None else ""
            z = _F(sp.z[i]) if sp.z is not None else ""
            rows.write(f"{N},{i + 1},{h},{z},{sp.method}\n")
        if sp.h is not None:
            for delta in args.delta:
                fr = spec_mod.polarization_fractions(sp, delta)
                fracs.write(
                    f"{N},{_F(delta)},{_F(fr['high'])},{_F(fr['low'])},{_F(fr['mid'])}\n"
                )
    _atomic_write(args.out, rows.getvalue().encode())
    _atomic_write(args.out + ".fractions.csv", fracs.getvalue().encode())
    return 0


def cmd_freeze(args) -> int:
    src = _load_source(args)
    sp = _compute_spectrum(src, args.N, args.method, args.samples, args.seed)
    hset = spec_mod.build_high_entropy_set(sp, args.R)
    doc = json.dumps(hset.to_manifest(), sort_keys=True, indent=2) + "\n"
    _atomic_write(args.out, doc.encode())
    return 0


def _load_manifest(path: str) -> tuple[HighEntropySet, JointSource]:
    with open(path) as fh:
        doc = json.load(fh)
    hset = HighEntropySet.from_manifest(doc)
    source = JointSource.from_description(doc["source"])
    return hset, source


_PAD_TRAILER = 4  # u32 LE count of zero pad bits appended before encoding


def cmd_compress(args) -> int:
    hset, _source = _load_manifest(args.manifest)
    N = hset.N
    raw = open(args.infile, "rb").read()
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8)).astype(np.int64)
    pad = (-len(bits)) % N
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.int64)])
    out = bytearray()
    field = _source.field
    for start in range(0, len(bits), N):
        block = SymbolBlock(field, bits[start : start + N])
        out += codec.compress(block, hset, checksum=args.checksum).to_bytes()
    out += int(pad).to_bytes(_PAD_TRAILER, "little")
    _atomic_write(args.out, bytes(out))
    return 0


def cmd_decompress(args) -> int:
    hset, source = _load_manifest(args.manifest)
    N = hset.N
    buf = open(args.infile, "rb").read()
    if len(buf) < _PAD_TRAILER:
        raise SrcPolarError("truncated container")
    pad = int.from_bytes(buf[-_PAD_TRAILER:], "little")
    body, pos = buf[:-_PAD_TRAILER], 0
    blocks = []
    while pos < len(body):
        blk, pos = codec.CompressedBlock.from_bytes(body, pos)
        blocks.append(blk)
    side = None
    if args.side:
        side = np.frombuffer(open(args.side, "rb").read(), dtype=np.uint8).astype(np.int64)
        if side.shape[0] != len(blocks) * N:
            raise SrcPolarError("side-information length does not match the container")
    elif source.y_size != 1:
        raise SrcPolarError("--side is required: the source has side information")
    bits = []
    for k, blk in enumerate(blocks):
        y = side[k * N : (k + 1) * N] if side is not None else None
        bits.append(codec.decompress(blk, y, hset, source).data)
    all_bits = np.concatenate(bits) if bits else np.zeros(0, dtype=np.int64)
    if pad:
        all_bits = all_bits[:-pad]
    _atomic_write(args.out, np.packbits(all_bits.astype(np.uint8)).tobytes())
    return 0


def cmd_chansim(args) -> int:
    w = _parse_channel(args.channel)
    rows = io.StringIO()
    rows.write("channel,N,R,trials,fer,ber,bound\n")
    for N in args.N:
        for rate in args.R:
            code = duality.make_duality_code(w, N, rate, args.seed)
            rep = duality.simulate(w, code, args.trials, args.seed)
            rows.write(
                f"{args.channel},{N},{_F(rate)},{args.trials},"
                f"{_F(rep['fer'])},{_F(rep['ber'])},{_F(rep['bound'])}\n"
            )
    _atomic_write(args.out, rows.getvalue().encode())
    return 0


def cmd_swsim(args) -> int:
    joint = _load_source(args)
    cfg = codec.sw_config(joint, args.N, args.rx, args.ry)
    flat = joint.probs.reshape(-1)
    errors = 0
    for t in range(args.trials):
        rng = np.random.default_rng([args.seed, t])
        draws = rng.choice(flat.shape[0], size=args.N, p=flat)
        x = SymbolBlock(joint.field, draws // 2)
        y = SymbolBlock(joint.field, draws % 2)
        x_hat, y_hat = codec.sw_decode(
            codec.sw_encode_x(x, cfg), codec.sw_encode_y(y, cfg), cfg
        )
        if x_hat != x or y_hat != y:
            errors += 1
    bound = codec.sw_error_bound(cfg)
    rows = (
        "N,R_x,R_y,trials,joint_error_rate,bound\n"
        f"{args.N},{_F(args.rx)},{_F(args.ry)},{args.trials},"
        f"{_F(errors / args.trials)},{_F(bound)}\n"
    )
    _atomic_write(args.out, rows.encode())
    return 0


def _add_source_args(p):
    p.add_argument("--preset", help="named source, e.g. bernoulli(0.11) or bsc_pair(0.11)")
    p.add_argument("--source", help="path to a source description JSON file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="srcpolar", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="per-index h/z spectrum and polarization fractions")
    _add_source_args(p)
    p.add_argument("-N", type=int, nargs="+", required=True)
    p.add_argument("--method", choices=["exact", "zbound", "mc"], default="exact")
    p.add_argument("--delta", type=float, nargs="+", default=[0.1])
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("freeze", help="build a high-entropy index-set manifest")
    _add_source_args(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("-R", type=float, required=True)
    p.add_argument("--method", choices=["exact", "zbound", "mc"], default="zbound")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_freeze)

    p = sub.add_parser("compress", help="compress a byte file blockwise")
    p.add_argument("--manifest", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--checksum", action="store_true")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="restore a byte file from a container")
    p.add_argument("--manifest", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--side", help="side-information file, one symbol per byte")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("chansim", help="channel-coding simulation sweep")
    p.add_argument("--channel", required=True, help="bsc(p) or bec(eps)")
    p.add_argument("-N", type=int, nargs="+", required=True)
    p.add_argument("-R", type=float, nargs="+", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_chansim)

    p = sub.add_parser("swsim", help="two-encoder Slepian-Wolf simulation")
    _add_source_args(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--rx", type=float, required=True)
    p.add_argument("--ry", type=float, required=True)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_swsim)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SrcPolarError as exc:
        print(f"srcpolar: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"srcpolar: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
