"""Command-line front end.

Subcommands::

    distver distance CODE --algo cs          minimum distance, JSON result
    distver sample --ensemble A --n 24 ...   seeded code sample + sidecar
    distver exponents --table gamma          CSV tables and curves
    distver replay RUN.manifest.json         re-run and compare payloads

Exit codes: 0 exact answer, 1 input error, 2 truncated or bound-only
result, 3 infeasible exhaustive search, 4 replay produced a different payload.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__, kernels
from .ensembles import GENERATOR_ID, EnsembleSpec, sample_ensemble
from .errors import DistverError, FormatError, InfeasibleError
from .formats import format_alist, format_pauli, load_code, read_syndrome

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_INFEASIBLE, EXIT_MISMATCH = 0, 1, 2, 3, 4

ENSEMBLE_ALIASES = {"A": "A", "B": "B", "random": "random-linear", "stabilizer": "random-stabilizer"}
TABLES = ("nv", "gamma", "fig1", "fig2", "params")
DEFAULT_Q = (2, 3, 4, 5, 8)
DEFAULT_M = ("3", "5", "10", "100", "1000", "inf")
DEFAULT_LM = ((3, 4), (3, 5), (3, 6), (4, 8), (5, 10), (3, 9), (3, 12), (3, 15), (7, 8))


class InputError(DistverError):
    """Bad command-line input (reported with exit code 1)."""


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _file_sha(path: str) -> str:
    return _sha256(Path(path).read_bytes())


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class Run:
    """Payload and bookkeeping produced by one command."""

    def __init__(self, payload: dict[str, bytes], summary: str, code: int = EXIT_OK, seed: int | None = None):
        self.payload = payload
        self.summary = summary
        self.code = code
        self.seed = seed

    @property
    def sha256(self) -> str:
        h = hashlib.sha256()
        for name in sorted(self.payload):
            h.update(name.encode() + b"\0" + self.payload[name] + b"\0")
        return h.hexdigest()


def manifest(command: str, params: dict, inputs: dict[str, str], run: Run, wall: float) -> dict:
    return {
        "command": command,
        "params": params,
        "inputs": inputs,
        "seed": run.seed,
        "generator": GENERATOR_ID,
        "version": __version__,
        "backend": kernels.BACKEND,
        "wall_clock_s": round(wall, 6),
        "result": run.summary,
        "exit_code": run.code,
        "payload_sha256": run.sha256,
    }


# ---------------------------------------------------------------------------
# distance


def _budget(p: dict):
    from .search import SearchBudget

    return SearchBudget(max_weight=p["max_weight"], max_candidates=p["max_candidates"],
                        wall_clock=p["time_limit"], seed=p["seed"], b_max=p["b_max"])


def run_distance(p: dict) -> Run:
    from .search import ENGINES

    quantum = True if p["quantum"] else None
    code = load_code(p["code"], q=p["q"], quantum=quantum)
    algo = p["algo"]
    kwargs = {}
    if algo != "brute":
        kwargs["jobs"] = p["jobs"]
    if algo in ("sw", "cs") and p["theta"] is not None:
        kwargs["theta"] = p["theta"]
    if algo == "cs":
        kwargs["mode"] = p["mode"]
    if p["syndrome"] is not None:
        if algo not in ("brute", "sw", "mb", "cs"):
            raise InputError(f"--syndrome is not supported by --algo {algo}")
        from .search import as_targets

        B = as_targets(code)[0].block
        kwargs["syndrome"] = read_syndrome(p["syndrome"], B.r, B.F.q)
    result = ENGINES[algo](code, _budget(p), **kwargs)
    body = result.to_dict()
    status = EXIT_OK if result.exact or (result.distance is None and not result.truncated) else EXIT_BOUND
    return Run({"result.json": _dumps(body).encode()}, result.summary(), status, p["seed"])


def cmd_distance(args) -> int:
    params = {
        "code": args.code, "algo": args.algo, "quantum": args.quantum, "q": args.q,
        "max_weight": args.max_weight, "max_candidates": args.max_candidates, "time_limit": args.time_limit,
        "seed": args.seed, "jobs": args.jobs, "syndrome": args.syndrome, "b_max": args.b_max,
        "mode": args.mode, "theta": args.theta,
    }
    inputs = {args.code: _file_sha(args.code)}
    if args.syndrome:
        inputs[args.syndrome] = _file_sha(args.syndrome)
    start = time.perf_counter()
    run = run_distance(params)
    man = manifest("distance", params, inputs, run, time.perf_counter() - start)
    envelope = json.loads(run.payload["result.json"])
    envelope["manifest"] = man
    sys.stdout.write(_dumps(envelope))
    if args.manifest:
        Path(args.manifest).write_text(_dumps(man))
    return run.code


# ---------------------------------------------------------------------------
# sample


def run_sample(p: dict) -> Run:
    spec = EnsembleSpec(ENSEMBLE_ALIASES[p["ensemble"]], p["n"], p["l"], p["m"], p["q"], p["k"], p["seed"])
    spec.validate()
    code = sample_ensemble(spec)
    from .codes import StabilizerCode
    from .ensembles import metadata

    if isinstance(code, StabilizerCode):
        text = format_pauli(code, f"random-stabilizer n={spec.n} k={spec.k} seed={spec.seed}")
        fmt = "pauli"
    else:
        text = format_alist(code.H)
        fmt = "alist"
    side = _dumps(metadata(spec, fmt))
    return Run({"code": text.encode(), "sidecar": side.encode()}, f"{spec.kind} n={spec.n} ({fmt})",
               EXIT_OK, spec.seed)


def cmd_sample(args) -> int:
    params = {"ensemble": args.ensemble, "n": args.n, "l": args.l, "m": args.m, "k": args.k, "q": args.q,
              "seed": args.seed, "out": args.out}
    start = time.perf_counter()
    run = run_sample(params)
    out = Path(args.out)
    out.write_bytes(run.payload["code"])
    out.with_name(out.name + ".json").write_bytes(run.payload["sidecar"])
    man = manifest("sample", params, {}, run, time.perf_counter() - start)
    Path(args.manifest or out.with_name(out.name + ".manifest.json")).write_text(_dumps(man))
    print(f"wrote {out} and {out.name}.json ({run.summary})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# exponents


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.6g}"
    return str(x)


def _csv(header: list[str], rows: list[list]) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue().encode()


def _parse_m(tok: str) -> float:
    if tok.lower() in ("inf", "infinity"):
        return math.inf
    try:
        m = int(tok)
    except ValueError:
        raise InputError(f"row weight {tok!r} is not an integer or 'inf'") from None
    if m < 2:
        raise InputError("row weight must be at least 2")
    return m


def _parse_lm(tok: str) -> tuple[int, int]:
    try:
        l, m = (int(x) for x in tok.split(","))
    except ValueError:
        raise InputError(f"--lm expects pairs like 3,6; got {tok!r}") from None
    if not 3 <= l <= m:
        raise InputError(f"--lm {tok}: need 3 <= l <= m")
    return l, m


def _table_nv(p: dict):
    from .search.cluster import enumerate_ai_strings, max_ai_length

    rows = []
    for q in p["q"]:
        for v in range(1, max_ai_length(q) + 2):
            s = enumerate_ai_strings(q, v)
            rows.append([q, v, s.per_value, s.count])
    return ["q", "v", "N_v", "A_v"], rows


def _table_gamma(p: dict):
    from .exponents import gamma_m

    rows = []
    for q in p["q"]:
        for tok in p["m"]:
            c = gamma_m(q, _parse_m(tok), p["stabilizer"])
            rows.append([q, _fmt(c.m) if math.isinf(c.m) else int(c.m), c.rho, c.gamma, c.gamma_bar])
    return ["q", "m", "rho", "gamma", "gamma_bar"], rows


def _grid(n: int) -> list[float]:
    if n < 2:
        raise InputError("--grid needs at least 2 points")
    return [i / (n - 1) for i in range(n)]


def _table_fig1(p: dict):
    from .exponents import ExponentQuery, gv_distance, technique_exponent

    rows = []
    for R in _grid(p["grid"]):
        d = gv_distance(4, R, "stabilizer")
        rows.append([R, d] + [technique_exponent(ExponentQuery(t, "stabilizer", R, d)) for t in ("SW", "MB", "PB", "CS")])
    return ["R", "delta_gv", "F_SW", "F_MB", "F_PB", "F_CS"], rows


def _table_fig2(p: dict):
    from .exponents import (
        ExponentQuery,
        deterministic_generic_exponent,
        deterministic_ldpc_exponent,
        ensemble_params,
        gv_distance,
        technique_exponent,
    )

    rows = []
    for R in _grid(p["grid"]):
        d = gv_distance(2, R)
        rows.append(["gv", None, None, R, d, deterministic_generic_exponent(R),
                     technique_exponent(ExponentQuery("CS", "classical", R, d))])
    for l, m in p["lm"]:
        sp = ensemble_params(l, m)
        rows.append(["ldpc", l, m, sp.rate, sp.delta_star, deterministic_ldpc_exponent(sp),
                     technique_exponent(ExponentQuery("CS", "ldpc-classical"), sp)])
    return ["series", "l", "m", "R", "delta", "F_SW_or_MB", "F_CS"], rows


def _table_params(p: dict):
    from .exponents import ensemble_params

    rows = []
    for l, m in p["lm"]:
        sp = ensemble_params(l, m)
        rows.append([l, m, sp.alpha, sp.rate, sp.delta_star, sp.theta_star])
    return ["l", "m", "alpha", "R", "delta_star", "theta_star"], rows


_TABLES = {"nv": _table_nv, "gamma": _table_gamma, "fig1": _table_fig1, "fig2": _table_fig2, "params": _table_params}


def run_exponents(p: dict) -> Run:
    if p["table"] not in _TABLES:
        raise InputError(f"unknown table {p['table']!r}; expected one of {TABLES}")
    p = dict(p, lm=[_parse_lm(t) for t in p["lm"]])
    header, rows = _TABLES[p["table"]](p)
    return Run({"table.csv": _csv(header, rows)}, f"{p['table']}: {len(rows)} rows")


def cmd_exponents(args) -> int:
    params = {"table": args.table, "q": args.q or list(DEFAULT_Q), "m": args.m or list(DEFAULT_M),
              "lm": args.lm or [f"{l},{m}" for l, m in DEFAULT_LM], "grid": args.grid,
              "stabilizer": args.stabilizer, "out": args.out}
    start = time.perf_counter()
    run = run_exponents(params)
    data = run.payload["table.csv"]
    man = manifest("exponents", params, {}, run, time.perf_counter() - start)
    if args.out:
        Path(args.out).write_bytes(data)
        Path(args.manifest or args.out + ".manifest.json").write_text(_dumps(man))
    else:
        sys.stdout.write(data.decode())
        if args.manifest:
            Path(args.manifest).write_text(_dumps(man))
    return EXIT_OK


# ---------------------------------------------------------------------------
# replay

_RUNNERS = {"distance": run_distance, "sample": run_sample, "exponents": run_exponents}


def _resolve(path: str, base: Path) -> str:
    if Path(path).exists():
        return path
    alt = base / path
    if alt.exists():
        return str(alt)
    raise InputError(f"input file {path} not found")


def cmd_replay(args) -> int:
    try:
        man = json.loads(Path(args.manifest).read_text())
        command, params = man["command"], dict(man["params"])
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"{args.manifest}: not a run manifest ({exc})") from None
    if command not in _RUNNERS:
        raise InputError(f"{args.manifest}: unknown command {command!r}")
    base = Path(args.manifest).resolve().parent
    for key in ("code", "syndrome"):
        if params.get(key):
            path = _resolve(params[key], base)
            if _file_sha(path) != man["inputs"].get(params[key]):
                raise InputError(f"input file {path} differs from the one recorded in the manifest")
            params[key] = path
    if args.jobs is not None and "jobs" in params:
        params["jobs"] = args.jobs
    run = _RUNNERS[command](params)
    same = run.sha256 == man["payload_sha256"]
    print(_dumps({"command": command, "payload_sha256": run.sha256, "recorded": man["payload_sha256"],
                  "identical": same, "result": run.summary}), end="")
    return EXIT_OK if same else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    from .search.common import default_jobs

    ap = argparse.ArgumentParser(prog="distver", description="Minimum-distance verification for linear and quantum codes.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distance", help="compute the minimum distance of a code file")
    d.add_argument("code", help="alist parity-check file or Pauli stabilizer file")
    d.add_argument("--algo", choices=("brute", "sw", "mb", "pb", "cs", "ic"), default="cs")
    d.add_argument("--quantum", action="store_true", help="parse the file as Pauli stabilizer generators")
    d.add_argument("--field", "--q", dest="q", type=int, default=2, help="field order of an alist file")
    d.add_argument("--max-weight", type=_positive, default=None, help="largest weight D to explore")
    d.add_argument("--max-candidates", type=_positive, default=None)
    d.add_argument("--time-limit", type=float, default=None, help="wall-clock budget in seconds")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--jobs", type=_positive, default=default_jobs())
    d.add_argument("--syndrome", default=None, help="file with a syndrome: find the lightest error")
    d.add_argument("--b-max", type=_positive, default=None, help="co-rank cap for covering sets")
    d.add_argument("--mode", choices=("auto", "random", "exhaustive"), default="auto", help="covering family")
    d.add_argument("--theta", type=float, default=None, help="erasure threshold for LDPC window/set sizes")
    d.add_argument("--manifest", default=None, help="also write the run manifest here")
    d.set_defaults(func=cmd_distance)

    s = sub.add_parser("sample", help="draw a seeded code from an ensemble")
    s.add_argument("--ensemble", choices=tuple(ENSEMBLE_ALIASES), required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--l", type=int, default=None)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--manifest", default=None)
    s.set_defaults(func=cmd_sample)

    e = sub.add_parser("exponents", help="CSV tables of complexity exponents")
    e.add_argument("--table", required=True, help=f"one of {', '.join(TABLES)}")
    e.add_argument("--q", type=int, nargs="+", default=None)
    e.add_argument("--m", nargs="+", default=None, help="row weights for the gamma table ('inf' allowed)")
    e.add_argument("--lm", nargs="+", default=None, help="ensemble pairs such as 3,6")
    e.add_argument("--grid", type=int, default=101, help="rate grid size for fig1/fig2")
    e.add_argument("--stabilizer", action="store_true", help="stabilizer counts in the gamma table")
    e.add_argument("--out", default=None, help="CSV path (default stdout)")
    e.add_argument("--manifest", default=None)
    e.set_defaults(func=cmd_exponents)

    r = sub.add_parser("replay", help="re-run a manifest and compare payload hashes")
    r.add_argument("manifest")
    r.add_argument("--jobs", type=_positive, default=None, help="override the recorded job count")
    r.set_defaults(func=cmd_replay)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DistverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
