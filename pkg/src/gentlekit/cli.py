"""Command line entry point: ``gentle-kit <command> ...``.

Exit codes: 0 success or pass, 1 a mathematical check failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import constructions as C
from . import invariants as I
from . import realization as R
from .blossom import ag_structure, blossom
from .qvr import ParseError, emit, parse_qvr
from .quiver import require, threads, validate


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_qvr(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}")
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}")


def _gentle(bq, mode: str = "gentle"):
    try:
        require(bq, mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    return bq


def _ints(text: Optional[str], flag: str) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma separated integers")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gentle-kit", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "structured"], default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help, files=1):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--format", choices=["text", "structured"], default=argparse.SUPPRESS)
        for i in range(files):
            sp.add_argument("file" if files == 1 else f"file{i + 1}")
        return sp

    sp = cmd("validate", "check (local) gentleness")
    sp.add_argument("--mode", choices=["gentle", "locally-gentle"], default="gentle")
    cmd("threads", "permitted/forbidden threads and cycles")
    sp = cmd("invariants", "the AG table")
    sp.add_argument("--graded", action="store_true")
    cmd("blossom", "blossoming, Phi and the deltas")
    sp = cmd("repeat", "finite gentle repetition")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--w")
    sp = cmd("weld", "welding of two quivers", files=2)
    sp.add_argument("--perm")
    sp = cmd("apr", "generalized APR reflection")
    sp.add_argument("--vertex", required=True)
    sp = cmd("hochschild", "Hochschild dimensions from the AG table")
    sp.add_argument("--char", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=8)
    sp = cmd("matrix", "V(A), eta, the triangular model and the cokernel dual")
    sp.add_argument("--k", type=int, default=2)
    cmd("iso", "bound quiver isomorphism", files=2)
    sp = sub.add_parser("gen", help="random gentle quiver")
    sp.add_argument("--format", choices=["text", "structured"], default=argparse.SUPPRESS)
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--arrows", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp = cmd("check", "consistency suite and condition checkers")
    sp.add_argument("--k-max", type=int, default=3)
    sp.add_argument("--char", type=int, default=0)
    return p


def _run(args) -> int:
    out = lambda value: sys.stdout.write(emit(value, args.format))
    c = args.command

    if c == "gen":
        seed = args.seed
        if seed is None:
            env = os.environ.get("GENTLE_KIT_SEED")
            if env is None:
                raise UsageError("gen needs --seed or GENTLE_KIT_SEED")
            try:
                seed = int(env)
            except ValueError:
                raise UsageError("GENTLE_KIT_SEED must be an integer")
        try:
            bq = C.random_gentle(args.vertices, args.arrows, seed)
        except ValueError as exc:
            raise UsageError(str(exc))
        except C.GenerationFailed as exc:
            sys.stderr.write(f"{exc}\n")
            return 1
        out(bq)
        return 0

    if c == "validate":
        bq = _read(args.file)
        try:
            report = validate(bq, args.mode)
        except ValueError as exc:
            raise UsageError(str(exc))
        out(report)
        return 0 if report.passed else 1

    if c == "weld":
        a, b = _gentle(_read(args.file1), "locally-gentle"), _gentle(_read(args.file2), "locally-gentle")
        try:
            out(C.weld(a, b, _ints(args.perm, "--perm")))
        except ValueError as exc:
            raise UsageError(str(exc))
        return 0

    if c == "iso":
        a, b = _read(args.file1), _read(args.file2)
        mapping = C.iso(a, b)
        out({"isomorphic": mapping is not None, "mapping": mapping})
        return 0 if mapping is not None else 1

    bq = _read(args.file)
    if c == "threads":
        out(threads(_gentle(bq, "locally-gentle")))
    elif c == "invariants":
        if args.graded:
            out(I.phi_graded(_gentle(bq, "locally-gentle")))
        else:
            out(I.phi(_gentle(bq)))
    elif c == "blossom":
        out(blossom(_gentle(bq, "locally-gentle")))
    elif c == "repeat":
        _gentle(bq, "locally-gentle")
        try:
            out(C.repeat(bq, args.k, _ints(args.w, "--w")))
        except ValueError as exc:
            raise UsageError(str(exc))
    elif c == "apr":
        _gentle(bq)
        try:
            reflected = C.apr_reflect(bq, args.vertex)
        except ValueError as exc:
            raise UsageError(str(exc))
        out(reflected)
        return 0 if validate(reflected).passed else 1
    elif c == "hochschild":
        _gentle(bq)
        if args.max_n < 0:
            raise UsageError("--max-n must be nonnegative")
        out(I.hochschild_dims(I.phi(bq), bq.chi, args.char, args.max_n))
    elif c == "matrix":
        _gentle(bq)
        if args.k < 1:
            raise UsageError("--k must be positive")
        reports = [R.verify_eta(bq), R.ut_check(bq, args.k)]
        dual = R.cokernel_dual(bq)
        if args.format == "structured":
            out({"va": R.build_va(bq), "reports": reports, "dual": dual})
        else:
            for value in [R.build_va(bq), *reports, dual]:
                out(value)
        return 0 if all(r.passed for r in reports) and dual.passed else 1
    elif c == "check":
        _gentle(bq)
        if args.k_max < 1:
            raise UsageError("--k-max must be positive")
        report = I.consistency_suite(bq, args.k_max)
        conditions = R.check_conditions(bq, args.char)
        if args.format == "structured":
            out({"report": report, "conditions": conditions})
        else:
            out(report)
            out(conditions)
        return 0 if report.passed else 1
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return _run(args)
    except UsageError as exc:
        sys.stderr.write(f"gentle-kit: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
