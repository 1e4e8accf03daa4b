"""JSON front-end.

    kottrace <command> [--input FILE] [--output FILE] [--alpha-parity even|odd] [--threads N]

Each command reads one JSON object of parameters; ``batch`` reads a list of
``{"command": ..., "params": ...}`` records and isolates failures per entry.
Exit status is 0 on success, 2 for usage or schema errors, 3 for domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

import jsonschema

from . import __version__
from .exactpoly import parse_rational
from .heckefun import (
    constant_term,
    satake_f_gu,
    satake_phi,
    truncated_constant_term,
    truncated_constant_term_levi,
)
from .traceeval import (
    GlobalInput,
    SteinbergProductRep,
    borel_normalized_sign,
    hecke_matrix,
    parity_relation_check,
    point_count,
    twisted_compact_trace,
    unit_sign,
)
from .weylcomb import enumerate_G_PQ, enumerate_G_theta_PQ
from .zelring import (
    ComplexTwist,
    Multisegment,
    SpehSpec,
    enumerate_C_theta,
    poset_below,
    speh_multisegment,
    DEFAULT_LENGTH_BOUND,
)

__all__ = ["run", "run_batch", "main", "UsageError", "COMMANDS", "SCHEMAS", "RESPONSE_SCHEMA"]

THREADS_ENV = "KOTTRACE_THREADS"


class UsageError(Exception):
    def __init__(self, message: str, path: str = ""):
        super().__init__(message)
        self.path = path


# schemas -------------------------------------------------------------------

_POS = {"type": "integer", "minimum": 1}
_NONNEG = {"type": "integer", "minimum": 0}
_COMP = {"type": "array", "items": _POS, "minItems": 1}
_EXT = {"type": "array", "items": _NONNEG, "minItems": 1}
_CHARS = {"type": "array", "items": {"enum": ["trivial", "quadratic"]}}
_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_TERM = {
    "type": "object",
    "properties": {"blocks": _COMP, "chars": _CHARS, "N": _RATIONAL},
    "required": ["blocks", "N"],
    "additionalProperties": False,
}
_SEGMENT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}
_SPEH = {
    "type": "object",
    "properties": {
        "x": _POS,
        "y": _POS,
        "twist": {"oneOf": [{"enum": ["trivial", "quadratic"]}, {"type": "object"}]},
    },
    "required": ["x", "y"],
    "additionalProperties": False,
}
_SIGN = {"enum": ["borel", "unit"]}


def _obj(props: dict, required: list[str]) -> dict:
    return {"type": "object", "properties": props, "required": required, "additionalProperties": False}


SCHEMAS: dict[str, dict] = {
    "satake": _obj({"n": _POS, "s": _NONNEG, "group": {"enum": ["gl", "gu"]}}, ["n", "s"]),
    "constant-term": _obj({"n": _POS, "s": _NONNEG, "blocks": _COMP}, ["n", "s", "blocks"]),
    "truncate": {
        "oneOf": [
            _obj({"n": _POS, "s": _NONNEG, "blocks": _COMP}, ["n", "s", "blocks"]),
            _obj(
                {"levi_blocks": _COMP, "s_per_block": _EXT, "sub_blocks": _COMP},
                ["levi_blocks", "s_per_block", "sub_blocks"],
            ),
        ]
    },
    "cosets": _obj({"lambda": _COMP, "mu": _COMP, "theta": {"type": "boolean"}}, ["lambda", "mu"]),
    "poset": {
        "oneOf": [
            _obj({"multisegment": {"type": "array", "items": _SEGMENT}, "max_length": _POS}, ["multisegment"]),
            _obj({"speh": {"type": "array", "items": _POS, "minItems": 2, "maxItems": 2}, "max_length": _POS}, ["speh"]),
            _obj({"factors": {"type": "array", "items": _SPEH, "minItems": 1}, "max_length": _POS}, ["factors"]),
        ]
    },
    "hecke-matrix": _obj({"blocks": _COMP, "chars": _CHARS}, ["blocks"]),
    "trace": _obj(
        {"n": _POS, "s": _NONNEG, "blocks": _COMP, "chars": _CHARS, "p": _POS, "alpha": _POS, "sign": _SIGN},
        ["n", "s", "blocks"],
    ),
    "count": _obj(
        {
            "n": _POS,
            "s": _NONNEG,
            "p": _POS,
            "alpha": _POS,
            "ker1": _POS,
            "terms": {"type": "array", "items": _TERM},
            "sign": _SIGN,
        },
        ["n", "s", "p", "alpha", "ker1", "terms"],
    ),
    "check-parity": _obj(
        {
            "n": _POS,
            "s": _NONNEG,
            "p": _POS,
            "k": _POS,
            "ker1": _POS,
            "terms": {"type": "array", "items": _TERM},
            "sign": _SIGN,
        },
        ["n", "s", "p", "k", "terms"],
    ),
}

RESPONSE_SCHEMA: dict = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "command": {"enum": list(SCHEMAS)},
                "params": {"type": "object"},
                "version": {"type": "string"},
                "result": {},
                "warnings": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["command", "params", "version", "result"],
            "additionalProperties": False,
        },
        {
            "properties": {
                "command": {},
                "version": {"type": "string"},
                "error": _obj(
                    {"kind": {"enum": ["usage", "domain"]}, "message": {"type": "string"}, "path": {"type": "string"}},
                    ["kind", "message"],
                ),
            },
            "required": ["command", "version", "error"],
            "additionalProperties": False,
        },
    ],
}

_SIGNS = {"borel": borel_normalized_sign, "unit": unit_sign}


# handlers ------------------------------------------------------------------


def _rep(d: dict) -> SteinbergProductRep:
    return SteinbergProductRep(d["blocks"], d.get("chars"))


def _global(p: dict, alpha: int) -> GlobalInput:
    terms = tuple((_rep(t), parse_rational(t["N"])) for t in p["terms"])
    return GlobalInput(p["n"], p["s"], p["p"], alpha, p.get("ker1", 1), terms)


def _satake(p: dict, opts: dict) -> Any:
    if p.get("group", "gl") == "gu":
        poly = satake_f_gu(p["n"], p["s"])
    else:
        poly = satake_phi(p["n"], p["s"])
    return {"num_vars": poly.num_vars, "terms": poly.to_records()}


def _constant_term(p: dict, opts: dict) -> Any:
    return constant_term(p["n"], p["s"], p["blocks"]).to_json()


def _truncate(p: dict, opts: dict) -> Any:
    if "levi_blocks" in p:
        return truncated_constant_term_levi(p["levi_blocks"], p["s_per_block"], p["sub_blocks"]).to_json()
    return truncated_constant_term(p["n"], p["s"], p["blocks"]).to_json()


def _cosets(p: dict, opts: dict) -> Any:
    fn = enumerate_G_theta_PQ if p.get("theta", False) else enumerate_G_PQ
    return [w.to_json() for w in fn(p["lambda"], p["mu"])]


def _twist(t: Any):
    if isinstance(t, dict):
        return ComplexTwist(t.get("d", 0), t.get("e", 0))
    return t


def _poset(p: dict, opts: dict) -> Any:
    bound = p.get("max_length", DEFAULT_LENGTH_BOUND)
    if "factors" in p:
        factors = [SpehSpec(f["x"], f["y"], _twist(f.get("twist", "trivial"))) for f in p["factors"]]
        return [e.to_json() for e in enumerate_C_theta(factors, bound)]
    m = speh_multisegment(*p["speh"]) if "speh" in p else Multisegment.from_json(p["multisegment"])
    return [x.to_json() for x in sorted(poset_below(m, bound))]


def _hecke(p: dict, opts: dict) -> Any:
    return hecke_matrix(_rep(p)).to_json()


def _trace(p: dict, opts: dict) -> Any:
    res = twisted_compact_trace(
        p["n"],
        p["s"],
        _rep(p),
        p=p.get("p"),
        alpha=p.get("alpha"),
        alpha_parity=opts.get("alpha_parity"),
        sign=_SIGNS[p.get("sign", "borel")],
    )
    return res.to_json()


def _count(p: dict, opts: dict) -> Any:
    return str(point_count(_global(p, p["alpha"]), _SIGNS[p.get("sign", "borel")]))


def _check_parity(p: dict, opts: dict) -> Any:
    return parity_relation_check(_global(p, p["k"]), p["k"], _SIGNS[p.get("sign", "borel")])


COMMANDS: dict[str, Callable[[dict, dict], Any]] = {
    "satake": _satake,
    "constant-term": _constant_term,
    "truncate": _truncate,
    "cosets": _cosets,
    "poset": _poset,
    "hecke-matrix": _hecke,
    "trace": _trace,
    "count": _count,
    "check-parity": _check_parity,
}


def _validate(command: str, params: Any) -> None:
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}", "command")
    try:
        jsonschema.validate(params, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        path = "params" + "".join(f"[{p!r}]" for p in exc.absolute_path)
        raise UsageError(exc.message, path) from None


def run(request: dict, alpha_parity: int | None = None) -> dict:
    """Validate and execute one request; raises UsageError or ValueError."""
    if not isinstance(request, dict) or "command" not in request:
        raise UsageError("request must be an object with a 'command' field", "")
    command = request["command"]
    params = request.get("params", {})
    _validate(command, params)
    opts = {"alpha_parity": alpha_parity}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = COMMANDS[command](params, opts)
    echo = dict(params)
    if alpha_parity is not None and command == "trace":
        echo["alpha_parity"] = "odd" if alpha_parity else "even"
    response = {"command": command, "params": echo, "version": __version__, "result": result}
    if caught:
        response["warnings"] = [str(w.message) for w in caught]
    return response


def _error_record(request: Any, kind: str, message: str, path: str = "") -> dict:
    command = request.get("command") if isinstance(request, dict) else None
    err = {"kind": kind, "message": message}
    if path:
        err["path"] = path
    return {"command": command, "error": err, "version": __version__}


def _run_safely(request: Any, alpha_parity: int | None) -> dict:
    try:
        return run(request, alpha_parity)
    except UsageError as exc:
        return _error_record(request, "usage", str(exc), exc.path)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        return _error_record(request, "domain", str(exc))


def run_batch(requests: list, alpha_parity: int | None = None, threads: int = 1) -> list[dict]:
    """Run requests independently; output order follows input order."""
    if threads <= 1 or len(requests) <= 1:
        return [_run_safely(r, alpha_parity) for r in requests]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: _run_safely(r, alpha_parity), requests))


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kottrace", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=[*COMMANDS, "batch"])
    parser.add_argument("--input", help="JSON file with the parameters (default: stdin)")
    parser.add_argument("--output", help="write the JSON response here (default: stdout)")
    parser.add_argument("--alpha-parity", choices=["even", "odd"], help="fold (-1)^alpha signs in symbolic traces")
    parser.add_argument(
        "--threads", type=int, default=None, help=f"worker threads for batch (default: ${THREADS_ENV} or 1)"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    parity = None if args.alpha_parity is None else int(args.alpha_parity == "odd")
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                payload = json.load(fh)
        else:
            payload = json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2

    if args.command == "batch":
        if not isinstance(payload, list):
            print("error: batch input must be a JSON list", file=sys.stderr)
            return 2
        response: Any = run_batch(payload, parity, args.threads or _default_threads())
    else:
        try:
            response = run({"command": args.command, "params": payload}, parity)
        except UsageError as exc:
            print(f"usage error at {exc.path or '<root>'}: {exc}", file=sys.stderr)
            return 2
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            print(f"domain error: {exc}", file=sys.stderr)
            return 3

    text = dumps(response)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
