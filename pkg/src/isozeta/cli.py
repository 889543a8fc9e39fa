"""Command-line entry point: ``isozeta {graph,brandt,zeta,hecke,verify,sweep}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd

from . import graph as graph_mod
from . import verify as verify_mod
from .elliptic import ConsistencyError
from .exact import ContractError, DivisibilityError
from .ffield import is_prime
from .modsym import hecke_charpoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
COMMANDS = ("graph", "brandt", "zeta", "hecke", "verify", "sweep")

log = logging.getLogger("isozeta")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    command: str
    p: int | None = None
    q: int | None = None
    N: int = 1
    ell: int | None = None
    fmt: str | None = None
    out: str | None = None
    seed: int = 0
    jobs: int = 1
    manifest: str | None = None


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def validate(cfg: JobConfig) -> None:
    """Reject bad parameters before any field arithmetic happens."""
    if cfg.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if cfg.N < 1:
        raise UsageError("N must be a positive integer")
    if cfg.command == "sweep":
        _require(cfg.manifest, "--manifest")
        return
    if cfg.command == "hecke":
        ell = _require(cfg.ell, "--ell")
        level = cfg.N * (cfg.q or 1)
        if not is_prime(ell):
            raise UsageError("ell must be prime")
        if level % ell == 0:
            raise UsageError("ell must not divide the level")
        return
    q = _require(cfg.q, "--q")
    if not is_prime(q) or q % 12 != 1:
        raise UsageError("q must be prime ≡ 1 (mod 12)")
    if gcd(q, cfg.N) != 1:
        raise UsageError("N must be prime to q")
    if cfg.command in ("graph", "zeta", "verify"):
        p = _require(cfg.p, "--p")
        if not is_prime(p):
            raise UsageError("p must be prime")
        if p == q:
            raise UsageError("p and q must be distinct")
        if gcd(p, q * cfg.N) != 1:
            raise UsageError("p must be prime to qN")
    if cfg.command == "brandt":
        ell = _require(cfg.ell, "--ell")
        if not is_prime(ell) or gcd(ell, q * cfg.N) != 1:
            raise UsageError("ell must be a prime not dividing qN")


def _dump(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode()


def _check_format(cfg: JobConfig, allowed: tuple, default: str) -> str:
    fmt = cfg.fmt or default
    if fmt not in allowed:
        raise UsageError(f"format {fmt!r} is not available for {cfg.command}; choose from {', '.join(allowed)}")
    return fmt


def _graph(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("json", "dot", "csv"), "json")
    g = graph_mod.build_graph(cfg.q, cfg.p, cfg.N, cfg.seed, cfg.jobs)
    return graph_mod.export_graph(g, fmt), EXIT_OK


def _brandt(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("csv", "json", "text"), "csv")
    vertices = graph_mod.build_vertices(cfg.q, cfg.N, cfg.seed)
    B = graph_mod.brandt_matrix(vertices, cfg.ell, cfg.jobs)
    rows = B.tolist()
    if fmt == "csv":
        return "".join(",".join(map(str, r)) + "\n" for r in rows).encode(), EXIT_OK
    if fmt == "json":
        return _dump({"q": cfg.q, "N": cfg.N, "ell": cfg.ell, "brandt": rows}), EXIT_OK
    width = max(len(str(x)) for r in rows for x in r)
    return "".join(" ".join(f"{x:>{width}}" for x in r) + "\n" for r in rows).encode(), EXIT_OK


def _zeta(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("json", "text"), "json")
    g = graph_mod.build_graph(cfg.q, cfg.p, cfg.N, cfg.seed, cfg.jobs)
    z = graph_mod.ihara_zeta(g)
    if fmt == "json":
        return _dump({"q": cfg.q, "p": cfg.p, "N": cfg.N, "denominator": z.denominator.to_json(),
                      "euler_char_times_2": z.euler_char_times_2}), EXIT_OK
    text = (f"Z(S) = (1 - S^2)^({z.euler_char_times_2}/2) / ({z.denominator.pretty('S')})\n")
    return text.encode(), EXIT_OK


def _hecke(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("json", "text"), "json")
    level = cfg.N * (cfg.q or 1)
    f = hecke_charpoly(level, cfg.ell)
    if fmt == "json":
        return _dump({"level": level, "ell": cfg.ell, "charpoly": [str(c) for c in f.coeffs]}), EXIT_OK
    return f"T_{cfg.ell} on level {level}: {f.pretty('x')}\n".encode(), EXIT_OK


def _verify(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("json", "text"), "text")
    report = verify_mod.run_verification(cfg.p, cfg.q, cfg.N, cfg.seed)
    body = _dump(report.to_json()) if fmt == "json" else report.to_text().encode()
    return body, EXIT_OK if report.passed else EXIT_FAIL


def load_manifest(path: str) -> list[tuple[int, int, int]]:
    """Parameter tuples from {"tuples": [[p, q, N], ...]} and/or {"grid": {"p": [...], ...}}.

    Grid entries violating coprimality are skipped; explicit tuples are kept and
    validated so mistakes surface as usage errors.
    """
    with open(path) as fh:
        data = json.load(fh)
    tuples = [tuple(int(v) for v in t) for t in data.get("tuples", [])]
    grid = data.get("grid")
    if grid:
        for p, q, N in product(grid["p"], grid["q"], grid.get("N", [1])):
            if p != q and gcd(p, q * N) == 1 and gcd(q, N) == 1:
                tuples.append((int(p), int(q), int(N)))
    if not tuples:
        raise UsageError("manifest lists no parameter tuples")
    return tuples


def _verify_job(args) -> dict:
    p, q, N, seed = args
    return verify_mod.run_verification(p, q, N, seed).to_json()


def _sweep(cfg: JobConfig) -> tuple[bytes, int]:
    fmt = _check_format(cfg, ("json", "text"), "json")
    tuples = load_manifest(cfg.manifest)
    for p, q, N in tuples:
        validate(JobConfig("verify", p=p, q=q, N=N))
    jobs = [(p, q, N, cfg.seed) for p, q, N in tuples]
    if cfg.jobs == 1:
        reports = [_verify_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            reports = list(pool.map(_verify_job, jobs))
    passed = all(r["passed"] for r in reports)
    if fmt == "json":
        body = _dump({"passed": passed, "reports": reports})
    else:
        lines = []
        for r in reports:
            par = r["parameters"]
            failed = [c["name"] for c in r["checks"] if not c["passed"]]
            status = "PASS" if r["passed"] else "FAIL " + ",".join(failed)
            lines.append(f"p={par['p']} q={par['q']} N={par['N']}: {status}")
        body = ("\n".join(lines) + "\n").encode()
    return body, EXIT_OK if passed else EXIT_FAIL


HANDLERS = {"graph": _graph, "brandt": _brandt, "zeta": _zeta, "hecke": _hecke,
            "verify": _verify, "sweep": _sweep}


def run(cfg: JobConfig) -> int:
    """Validate, execute and write the artifact; returns the exit status."""
    try:
        validate(cfg)
        body, status = HANDLERS[cfg.command](cfg)
    except (UsageError, ContractError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, DivisibilityError, ArithmeticError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.out:
        with open(cfg.out, "wb") as fh:
            fh.write(body)
    else:
        sys.stdout.buffer.write(body)
        sys.stdout.flush()
    return status


class _JsonLines(logging.Formatter):
    def format(self, record):
        return json.dumps({"level": record.levelname, "logger": record.name, "message": record.getMessage()})


def _configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    if verbose:
        handler.setFormatter(_JsonLines())
        level = logging.DEBUG
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        level = logging.WARNING
    root = logging.getLogger("isozeta")
    root.handlers[:] = [handler]
    root.setLevel(level)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="isogeny degree of the graph (prime)")
    common.add_argument("--q", type=int, help="characteristic, a prime ≡ 1 (mod 12)")
    common.add_argument("--N", type=int, default=1, help="level structure order (default 1)")
    common.add_argument("--ell", type=int, help="Hecke/Brandt prime")
    common.add_argument("--format", dest="fmt", choices=("json", "dot", "csv", "text"))
    common.add_argument("--out", help="write the artifact here instead of stdout")
    common.add_argument("--seed", type=int, help="PRNG seed (default $ISOZETA_SEED or 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--manifest", help="JSON parameter manifest for sweep")
    common.add_argument("-v", "--verbose", action="store_true", help="JSON-lines debug logging on stderr")
    parser = argparse.ArgumentParser(prog="isozeta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "graph": "build the isogeny graph and export it",
        "brandt": "print the Brandt matrix for --ell",
        "zeta": "Ihara zeta function of the graph",
        "hecke": "charpoly of T_ell on cusp forms of level N (times q when given)",
        "verify": "check the zeta identities for (p, q, N)",
        "sweep": "run verify over every tuple of a manifest",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("ISOZETA_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"ISOZETA_SEED must be an integer, got {env!r}") from None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        seed = _seed(args.seed)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = JobConfig(args.command, args.p, args.q, args.N, args.ell, args.fmt, args.out, seed,
                    args.jobs, args.manifest)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
