"""Command-line front end.

    fusionkit durfee --shape 9,9,9,7,7,3,3,3,3/5,5,3,3,3,3,2
    fusionkit irreducible -N 2 --module 1@0 --module 1@1 --format json
    fusionkit verify --suite all --max-boxes 4

Exit codes: 0 success, 1 failed verification, 2 usage or input error,
3 size guard rejection.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from flint import fmpq, fmpq_mat

from .diagrams import (
    ShapeError,
    SkewShape,
    durfee_rank_definition,
    enumerate_skew_shapes,
    parse_shape,
    ssyt_count,
)
from .fusion import fusion_element
from .guards import GuardExceeded, current_guards
from .linalg import MatrixRF
from .scalars import rational, rational_str
from .suites import SUITES, run_suite
from .symgroup import GroupRingElement
from .yangian import intertwiner_leading, irreducibility_criterion, module_space, r_matrix, r_matrix_at

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

COMMANDS = ("durfee", "contents", "fusion", "dim", "rmatrix", "intertwiner", "irreducible", "verify", "enumerate")


class UsageError(ValueError):
    pass


@dataclass
class CommandRequest:
    command: str
    shapes: list[SkewShape] = field(default_factory=list)
    N: int | None = None
    modules: list[tuple[SkewShape, fmpq]] = field(default_factory=list)
    z: fmpq | None = None
    suite: str | None = None
    max_boxes: int | None = None
    max_rows: int | None = None
    max_cols: int | None = None
    direction: str = "column"
    fmt: str = "text"
    seed: int = 0
    timing: bool = True


@dataclass
class Report:
    command: str
    inputs: dict
    result: dict
    guards: dict
    elapsed_ms: int | None
    ok: bool = True


# parsing


def parse_module(text: str) -> tuple[SkewShape, fmpq]:
    """``"2,1/1@3/2"``: the last ``@`` separates the shape from z."""
    shape_s, at, z_s = text.rpartition("@")
    if not at:
        raise UsageError(f"module {text!r} lacks '@z'")
    return parse_shape(shape_s), parse_rational(z_s)


def parse_rational(text: str) -> fmpq:
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed rational {text!r}: {e}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--seed", type=int, default=0, help="seed for random sample points")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null (byte-stable output)")

    p = argparse.ArgumentParser(prog="fusionkit", description="Fusion procedure, Yangian intertwiners and irreducibility checks.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def shape_cmd(name: str, help: str, n_shapes: int = 1):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--shape", action="append", required=True, help="skew shape 'lam/mu', e.g. 3,2/1" + (" (give twice)" if n_shapes > 1 else ""))
        return sp

    shape_cmd("durfee", "Durfee rank with convex/concave diagonal box counts")
    shape_cmd("contents", "contents in column-tableau order")
    sp = shape_cmd("fusion", "the fusion element F_w as a group-ring element")
    sp.add_argument("--direction", choices=("column", "prime"), default="column", help="generic direction of the limit")
    sp = shape_cmd("dim", "dimension of V_w inside (C^N)^{⊗n}")
    sp.add_argument("-N", type=int, required=True)
    sp = shape_cmd("rmatrix", "R_{w w'}(u), symbolic or at --at u", 2)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--at", help="evaluate at this rational point")
    sp = shape_cmd("intertwiner", "leading term (u-z)^(-a) I of R_{w w'}(u) at u=z", 2)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--z", required=True, help="rational point")
    sp = sub.add_parser("irreducible", parents=[common], help="irreducibility criterion for a tensor product")
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--module", action="append", required=True, help="module 'lam/mu@z', repeat in tensor order")
    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    sp.add_argument("--max-boxes", type=int, help="cap for every box bound of the suite")
    sp = sub.add_parser("enumerate", parents=[common], help="list skew shapes in normal form")
    sp.add_argument("--max-boxes", type=int, required=True)
    sp.add_argument("--max-rows", type=int)
    sp.add_argument("--max-cols", type=int)
    return p


def parse_request(argv: Sequence[str]) -> CommandRequest:
    """Validate argv; argparse itself exits with code 2 on syntax errors."""
    ns = _build_parser().parse_args(list(argv))
    req = CommandRequest(ns.command, fmt=ns.format, seed=ns.seed, timing=not ns.no_timing)
    try:
        if hasattr(ns, "shape") and ns.shape:
            req.shapes = [parse_shape(s) for s in ns.shape]
        if getattr(ns, "module", None):
            req.modules = [parse_module(m) for m in ns.module]
    except ShapeError as e:
        raise UsageError(str(e)) from None
    want = {"rmatrix": 2, "intertwiner": 2}.get(ns.command, 1)
    if req.shapes and len(req.shapes) != want:
        raise UsageError(f"{ns.command} expects {want} --shape argument(s), got {len(req.shapes)}")
    if getattr(ns, "N", None) is not None:
        if ns.N < 1:
            raise UsageError("N must be at least 1")
        req.N = ns.N
    if getattr(ns, "z", None) is not None:
        req.z = parse_rational(ns.z)
    if getattr(ns, "at", None) is not None:
        req.z = parse_rational(ns.at)
    req.direction = getattr(ns, "direction", "column")
    req.suite = getattr(ns, "suite", None)
    for k in ("max_boxes", "max_rows", "max_cols"):
        v = getattr(ns, k, None)
        if v is not None and v < 1:
            raise UsageError(f"--{k.replace('_', '-')} must be positive")
        setattr(req, k, v)
    return req


def request_to_argv(req: CommandRequest) -> list[str]:
    """Inverse of parse_request (up to option order)."""
    out = [req.command]
    for s in req.shapes:
        out += ["--shape", str(s)]
    if req.N is not None:
        out += ["-N", str(req.N)]
    for w, z in req.modules:
        out += ["--module", f"{w}@{rational_str(z)}"]
    if req.z is not None:
        out += ["--at" if req.command == "rmatrix" else "--z", rational_str(req.z)]
    if req.command == "fusion":
        out += ["--direction", req.direction]
    if req.command == "verify":
        out += ["--suite", req.suite or "all"]
    for k in ("max_boxes", "max_rows", "max_cols"):
        v = getattr(req, k)
        if v is not None:
            out += [f"--{k.replace('_', '-')}", str(v)]
    out += ["--format", req.fmt, "--seed", str(req.seed)]
    if not req.timing:
        out.append("--no-timing")
    return out


# serialization


def group_ring_json(x: GroupRingElement) -> list[dict]:
    return [{"perm": list(g), "coeff": str(c) if not isinstance(c, fmpq) else rational_str(c)} for g, c in x.sorted_terms()]


def matrix_json(m) -> list[list[str]]:
    if isinstance(m, MatrixRF):
        return [[str(x) for x in r] for r in m.entries]
    if isinstance(m, fmpq_mat):
        return [[rational_str(x) for x in r] for r in m.tolist()]
    raise TypeError(type(m))


def _inputs(req: CommandRequest) -> dict:
    d: dict[str, Any] = {}
    if req.shapes:
        d["shapes"] = [str(s) for s in req.shapes]
    if req.N is not None:
        d["N"] = req.N
    if req.modules:
        d["modules"] = [f"{w}@{rational_str(z)}" for w, z in req.modules]
    if req.z is not None:
        d["z"] = rational_str(req.z)
    if req.command == "fusion":
        d["direction"] = req.direction
    if req.command == "verify":
        d["suite"] = req.suite
    for k in ("max_boxes", "max_rows", "max_cols"):
        v = getattr(req, k)
        if v is not None:
            d[k] = v
    d["seed"] = req.seed
    return d


# execution


def _durfee(req):
    rep = durfee_rank_definition(req.shapes[0])
    return {"rank": rep.rank, "convex": rep.convex_diagonal_boxes, "concave": rep.concave_diagonal_boxes, "ell": rep.ell}, True


def _contents(req):
    s = req.shapes[0]
    if s.is_empty:
        raise ShapeError("empty diagram")
    return {"contents": list(s.contents), "column_tableau": [list(b) for b in s.column_tableau]}, True


def _fusion(req):
    F = fusion_element(req.shapes[0], req.direction)
    return {"n": F.n, "terms": group_ring_json(F), "text": str(F)}, True


def _dim(req):
    s = req.shapes[0]
    V = module_space(s, req.N)
    return {"dim": V.dim, "ssyt_count": ssyt_count(s, req.N)}, True


def _rmatrix(req):
    w, w2 = req.shapes
    if req.z is None:
        return {"matrix": matrix_json(r_matrix(w, w2, req.N))}, True
    return {"u": rational_str(req.z), "matrix": matrix_json(r_matrix_at(w, w2, req.N, req.z))}, True


def _intertwiner(req):
    w, w2 = req.shapes
    data = intertwiner_leading(w, w2, req.N, req.z)
    return {"a": data.a, "invertible": data.invertible, "dim": data.dim, "matrix": matrix_json(data.I)}, True


def _irreducible(req):
    rep = irreducibility_criterion(req.modules, req.N)
    return {
        "verdict": rep.verdict,
        "failing_pairs": [{"i": i, "j": j, "a": a, "invertible": inv} for i, j, a, inv in rep.failing_pairs],
        "pairs": [
            {"i": e.i, "j": e.j, "z_difference": rational_str(e.z_difference), "a": e.a, "invertible": e.invertible}
            for e in rep.pairs
        ],
    }, True


def _verify(req):
    names = list(SUITES) if req.suite in (None, "all") else [req.suite]
    out = []
    for name in names:
        r = run_suite(name, req.max_boxes, seed=req.seed)
        out.append({"suite": name, "ok": r.ok, "checked": r.checked, "failure_count": r.failure_count, "failures": r.failures})
    ok = all(x["ok"] for x in out)
    return {"ok": ok, "suites": out}, ok


def _enumerate(req):
    m = req.max_boxes
    shapes = enumerate_skew_shapes(m, req.max_rows or m, req.max_cols or m)
    return {"count": len(shapes), "shapes": [str(s) for s in shapes]}, True


_HANDLERS = {
    "durfee": _durfee,
    "contents": _contents,
    "fusion": _fusion,
    "dim": _dim,
    "rmatrix": _rmatrix,
    "intertwiner": _intertwiner,
    "irreducible": _irreducible,
    "verify": _verify,
    "enumerate": _enumerate,
}


def execute(req: CommandRequest) -> Report:
    t0 = time.perf_counter()
    result, ok = _HANDLERS[req.command](req)
    ms = int((time.perf_counter() - t0) * 1000)
    return Report(req.command, _inputs(req), result, current_guards(), ms if req.timing else None, ok)


# output


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        doc = {
            "command": report.command,
            "inputs": report.inputs,
            "result": report.result,
            "guards": report.guards,
            "elapsed_ms": report.elapsed_ms,
        }
        return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode()
    return (render_text(report) + "\n").encode()


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["  (none)"]
    keys = list(rows[0])
    cells = [[str(k) for k in keys]] + [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(keys))]
    return ["  " + "  ".join(c[i].ljust(widths[i]) for i in range(len(keys))).rstrip() for c in cells]


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "; ".join(str(x) for x in v) if v else "-"
    return str(v)


def _matrix_lines(m: list[list[str]]) -> list[str]:
    if not m:
        return ["  []"]
    widths = [max(len(r[j]) for r in m) for j in range(len(m[0]))]
    return ["  [ " + "  ".join(r[j].rjust(widths[j]) for j in range(len(r))) + " ]" for r in m]


def render_text(report: Report) -> str:
    lines = [f"{report.command}: " + ", ".join(f"{k}={_cell(v)}" for k, v in report.inputs.items())]
    res = report.result
    if report.command == "fusion":
        lines.append(res["text"])
    else:
        for k, v in res.items():
            if k == "matrix":
                lines.append("matrix:")
                lines += _matrix_lines(v)
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"{k}:")
                lines += _table(v)
            elif isinstance(v, list) and k == "shapes":
                lines.append(f"{k}:")
                lines += [f"  {s}" for s in v]
            else:
                lines.append(f"{k}: {_cell(v)}")
    if report.elapsed_ms is not None:
        lines.append(f"elapsed: {report.elapsed_ms} ms")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        req = parse_request(argv)
    except UsageError as e:
        print(f"fusionkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # argparse
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        report = execute(req)
    except GuardExceeded as e:
        print(f"fusionkit: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ShapeError, ValueError, ZeroDivisionError, ArithmeticError) as e:
        print(f"fusionkit: error in {req.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(emit(report, req.fmt))
    sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_FAILED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
