"""Command-line front end.

File formats
------------
Matrix file: a header ``len k ring`` followed by k rows of symbols (0/1 over
F2, 0/1/2/3 over F2+uF2).  Lines starting with '#' are comments.  Matrices
over F2+uF2 are Gray-mapped before any binary analysis.

Report: ``key: value`` lines in a fixed key order.

Exit codes: 0 success, 1 verification mismatch or failed conditions,
2 input error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from borderedsd import __version__
from borderedsd.alphabet import RingId
from borderedsd.bordered import ConstructionParams, binary_generator, check_conditions, format_params, parse_params
from borderedsd.catalog import verify_all
from borderedsd.gray import gray_generator
from borderedsd.linalg import BinaryMatrix, RingMatrix
from borderedsd.search import SearchConfig, neighbour_sweep, run_search
from borderedsd.selfdual import BinaryCode, is_self_dual, neighbour, pad_vector, type_of
from borderedsd.weights import (
    CLASSIFYING_WEIGHT,
    THREADS_ENV,
    ClassificationError,
    classify_enumerator,
    low_weight_census,
    min_distance_bz,
    min_distance_exhaustive,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2
AUTO_EXHAUSTIVE_MAX_K = 20

REPORT_KEYS = (
    "source", "length", "k", "self_dual", "type", "d", "engine",
    "census", "family", "alpha", "beta", "conditions", "time",
)


class InputError(Exception):
    pass


# --- matrix files -----------------------------------------------------------

@dataclass
class MatrixFile:
    ring: RingId
    rows: list[str]
    length: int
    comments: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def parse(cls, text: str) -> "MatrixFile":
        comments, body = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line[1:].strip())
            else:
                body.append(line)
        if not body:
            raise InputError("matrix file has no header")
        head = body[0].split()
        if len(head) != 3:
            raise InputError(f"header must be 'len k ring', got {body[0]!r}")
        try:
            length, k, ring = int(head[0]), int(head[1]), RingId.parse(head[2])
        except ValueError as exc:
            raise InputError(f"bad header {body[0]!r}: {exc}") from exc
        rows = ["".join(r.split()) for r in body[1:]]
        if len(rows) != k:
            raise InputError(f"header says {k} rows, found {len(rows)}")
        allowed = set("01") if ring is RingId.F2 else set("0123")
        for i, r in enumerate(rows):
            if len(r) != length:
                raise InputError(f"row {i} has length {len(r)}, header says {length}")
            if not set(r) <= allowed:
                raise InputError(f"row {i} has symbols outside {''.join(sorted(allowed))}")
        return cls(ring, rows, length, comments)

    @classmethod
    def read(cls, path: str | Path) -> "MatrixFile":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        return cls.parse(text)

    @classmethod
    def from_binary(cls, M: BinaryMatrix, comments: list[str] | None = None) -> "MatrixFile":
        return cls(RingId.F2, M.row_strings(), M.ncols, list(comments or []))

    def text(self) -> str:
        out = [f"# {c}" for c in self.comments]
        out.append(f"{self.length} {self.k} {self.ring.value}")
        out.extend(self.rows)
        return "\n".join(out) + "\n"

    def binary(self) -> BinaryMatrix:
        if self.ring is RingId.F2:
            return BinaryMatrix.from_strings(self.rows, self.length)
        return gray_generator(RingMatrix.from_strings(self.ring, self.rows))

    def code(self) -> BinaryCode:
        return BinaryCode.from_generator(self.binary())


# --- reports ----------------------------------------------------------------

def format_report(values: dict) -> str:
    unknown = set(values) - set(REPORT_KEYS)
    if unknown:
        raise KeyError(f"unknown report keys {sorted(unknown)}")
    lines = []
    for key in REPORT_KEYS:
        if key not in values:
            continue
        v = values[key]
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, dict):
            v = " ".join(f"{w}:{c}" for w, c in sorted(v.items()))
        elif isinstance(v, float):
            v = f"{v:.3f}"
        elif v is None:
            v = "-"
        lines.append(f"{key}: {v}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        key, sep, value = line.partition(": ")
        if sep:
            out[key] = value
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --- commands ---------------------------------------------------------------

def _params_from_args(args) -> ConstructionParams:
    if args.params:
        lines = [ln for ln in Path(args.params).read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) != 1:
            raise InputError("params file must hold exactly one non-comment line")
        return parse_params(lines[0].split("#", 1)[0])
    missing = [f for f in ("ring", "n", "a", "b", "c", "xi") if getattr(args, f) is None]
    if missing:
        raise InputError("missing flags: " + ", ".join("--" + m for m in missing))
    return ConstructionParams.from_strings(args.ring, args.n, args.lam, args.mu, args.a, args.b, args.c, args.xi)


def cmd_build(args) -> int:
    p = _params_from_args(args)
    report = check_conditions(p)
    if not report.ok:
        for name, ok in report.as_dict().items():
            print(f"{name}: {'pass' if ok else 'FAIL'}", file=sys.stderr)
        return EXIT_MISMATCH
    G = BinaryCode.from_generator(binary_generator(p)).generator
    mf = MatrixFile.from_binary(G, [f"params: {format_params(p)}"])
    _emit(mf.text(), args.output)
    return EXIT_OK


def _source(args) -> str:
    return str(args.matrix)


def cmd_check(args) -> int:
    code = MatrixFile.read(args.matrix).code()
    sd = is_self_dual(code)
    values = {"source": _source(args), "length": code.length, "k": code.k, "self_dual": sd}
    if sd:
        values["type"] = type_of(code).value
    _emit(format_report(values), args.output)
    return EXIT_OK


def _distance(code: BinaryCode, engine: str, threads: int | None) -> tuple[int, str]:
    if engine == "auto":
        engine = "exhaustive" if code.k <= AUTO_EXHAUSTIVE_MAX_K else "bz"
    if engine == "exhaustive":
        return min_distance_exhaustive(code, threads), engine
    return min_distance_bz(code, threads=threads), engine


def cmd_distance(args) -> int:
    code = MatrixFile.read(args.matrix).code()
    t0 = time.perf_counter()
    try:
        d, engine = _distance(code, args.engine, args.threads)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    values = {"source": _source(args), "length": code.length, "k": code.k, "d": d, "engine": engine,
              "time": time.perf_counter() - t0}
    _emit(format_report(values), args.output)
    return EXIT_OK


def cmd_census(args) -> int:
    code = MatrixFile.read(args.matrix).code()
    wmax = args.wmax if args.wmax is not None else CLASSIFYING_WEIGHT.get(code.length)
    if wmax is None:
        raise InputError(f"--wmax is required for length {code.length}")
    if not 0 <= wmax <= code.length:
        raise InputError(f"--wmax must lie in [0, {code.length}]")
    t0 = time.perf_counter()
    profile = low_weight_census(code, wmax, args.threads)
    values = {"source": _source(args), "length": code.length, "k": code.k, "d": profile.min_distance,
              "census": {w: c for w, c in profile.census.items() if w}}
    if code.length in CLASSIFYING_WEIGHT:
        partial = wmax < CLASSIFYING_WEIGHT[code.length]
        try:
            cls = classify_enumerator(profile, partial=partial)
            values.update(family=cls.family, alpha=cls.alpha, beta=cls.beta)
        except ClassificationError:
            values["family"] = "unclassified"
    values["time"] = time.perf_counter() - t0
    _emit(format_report(values), args.output)
    return EXIT_OK


def parse_x0(text: str, size: int) -> list[int]:
    """x0 as a binary string, or as 0x-prefixed hex read most significant bit first."""
    t = text.strip()
    if t.lower().startswith("0x"):
        try:
            val = int(t[2:], 16)
        except ValueError as exc:
            raise InputError(f"bad hex x0 {text!r}") from exc
        if val.bit_length() > size:
            raise InputError(f"x0 does not fit in {size} bits")
        t = format(val, f"0{size}b")
    if not t or set(t) - set("01"):
        raise InputError(f"x0 must be binary or 0x-hex, got {text!r}")
    return [int(ch) for ch in t]


def cmd_neighbour(args) -> int:
    mf = MatrixFile.read(args.matrix)
    code = mf.code()
    x0 = parse_x0(args.x0, code.length // 2)
    try:
        nb = neighbour(code, pad_vector(x0, code.length))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = MatrixFile.from_binary(nb.generator, [f"neighbour of {args.matrix}", "x0: " + "".join(map(str, x0))])
    _emit(out.text(), args.output)
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig.from_file(args.config, seed=args.seed, max_trials=args.max_trials, threads=args.threads)
    except (OSError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if cfg.mode == "neighbour":
        if not cfg.seed_code:
            raise InputError("neighbour mode needs seed_code = <matrix file>")
        seed_path = Path(cfg.seed_code)
        if not seed_path.is_absolute():
            seed_path = Path(args.config).parent / seed_path
        result = neighbour_sweep(MatrixFile.read(seed_path).code(), cfg)
    else:
        result = run_search(cfg)
    lines = [d.describe() for d in result.discoveries]
    if args.out:
        with open(args.out, "a") as fh:
            fh.writelines(line + "\n" for line in lines)
    for line in lines:
        print(line)
    stats = " ".join(f"{k}={v}" for k, v in sorted(result.stats.items()))
    print(f"# {stats}", file=sys.stderr)
    return EXIT_OK


def cmd_verify_catalog(args) -> int:
    def show(rep):
        print(rep.line(), flush=True)

    summary = verify_all(args.depth, threads=args.threads, ids=args.id or None, on_report=show)
    if args.id and not summary.reports:
        raise InputError(f"no catalog entries match {args.id}")
    print(f"{len(summary.reports) - len(summary.failures)}/{len(summary.reports)} passed in {summary.elapsed:.1f}s")
    return EXIT_OK if summary.ok else EXIT_MISMATCH


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help=f"worker threads (default: ${THREADS_ENV} or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="borderedsd", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="assemble a bordered construction")
    b.add_argument("params", nargs="?", help="file holding one 'ring n lam mu a b c xi' line")
    b.add_argument("--ring")
    b.add_argument("--n", type=int)
    b.add_argument("--lambda", dest="lam", default="1")
    b.add_argument("--mu", default="1")
    for name in ("a", "b", "c", "xi"):
        b.add_argument(f"--{name}")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    for name, func, helptext in (
        ("check", cmd_check, "self-duality and type"),
        ("distance", cmd_distance, "minimum distance"),
        ("census", cmd_census, "low-weight coefficients and classification"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("matrix")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)
        if name == "distance":
            p.add_argument("--engine", choices=("auto", "exhaustive", "bz"), default="auto")
        if name == "census":
            p.add_argument("--wmax", type=int)

    nb = sub.add_parser("neighbour", parents=[common], help="neighbour by x = (0, x0)")
    nb.add_argument("matrix")
    nb.add_argument("x0", help="binary string or 0x-prefixed hex")
    nb.add_argument("-o", "--output")
    nb.set_defaults(func=cmd_neighbour)

    s = sub.add_parser("search", parents=[common], help="random search from a key = value config")
    s.add_argument("config")
    s.add_argument("--seed", type=int)
    s.add_argument("--max-trials", type=int)
    s.add_argument("--out", help="append discoveries to this file")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-catalog", parents=[common], help="rebuild and check the embedded catalog")
    v.add_argument("--depth", choices=("fast", "full"), default="fast")
    v.add_argument("--id", action="append", help="restrict to an entry id (repeatable)")
    v.set_defaults(func=cmd_verify_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads is not None and args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
