"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for unreadable
or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .cbcst import CBCST, ConstructionError, builder_from_rmatrix, cbcst_from_builder, to_rmatrix, validate
from .cybe import GeomRMatrix, check_cybe
from .polycore import ParseError, parse_poly
from .quantize import (RMatrixQ, check_braid, check_classical_limit, check_quantum_unitarity,
                       compare_closed_form, quantize)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_ORDER = 6


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list
    order: int | None
    epsilon: object  # None for symbolic
    output: Path | None
    fmt: str
    verify: bool = False
    closed_form: Path | None = None
    flip: bool = False
    corrupt: bool = False


def parse_epsilon(text: str | None):
    if text is None or text == "symbolic":
        return None
    try:
        value = parse_poly(text, 0)
    except (ParseError, ValueError) as exc:
        raise InputError(f"--epsilon: {exc}") from None
    if not value.is_rational():
        raise InputError("--epsilon must be 'symbolic' or a rational number")
    return value.rational_value()


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def _kind(data: dict) -> str:
    fmt = data.get("format", "")
    if fmt.startswith("geoquant.cbcst"):
        return "cbcst"
    if fmt.startswith("geoquant.rseries"):
        return "rseries"
    if "dimension" in data:
        return "rmatrix"
    raise InputError("unrecognized input file: expected an r-matrix, a 7-tuple or an R series")


def _load(path, cfg: RunConfig, allowed: tuple[str, ...]):
    data = _read_json(path)
    kind = _kind(data)
    if kind not in allowed:
        raise InputError(f"{path}: expected {' or '.join(allowed)}, got {kind}")
    try:
        if kind == "rmatrix":
            obj = GeomRMatrix.from_dict(data)
        elif kind == "cbcst":
            obj = CBCST.from_dict(data)
        else:
            obj = RMatrixQ.from_dict(data)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed {kind}: {exc}") from None
    if cfg.epsilon is not None and kind != "rseries":
        obj = obj.specialize_eps(cfg.epsilon)
    return kind, obj


def _order(cfg: RunConfig, default: int = DEFAULT_ORDER) -> int:
    n = cfg.order if cfg.order is not None else default
    if n < 2:
        raise InputError("--order must be at least 2")
    return n


def _emit(cfg: RunConfig, report: Report, result=None, summary=None) -> int:
    if result is not None and cfg.output is not None:
        cfg.output.write_text(json.dumps(result, indent=2) + "\n")
    if cfg.fmt == "structured":
        out = report.to_dict()
        if summary is not None:
            out["summary"] = summary
        if result is not None and cfg.output is None:
            out["result"] = result
        print(json.dumps(out, indent=2))
    else:
        print(report.format())
        if summary is not None:
            for k, v in summary.items():
                print(f"  {k}: {v}")
        if result is not None and cfg.output is None:
            print(json.dumps(result, indent=2))
    return EXIT_OK if report.passed else EXIT_FAIL


# -- commands -------------------------------------------------------------------

def cmd_check_cybe(cfg: RunConfig) -> int:
    _, r = _load(cfg.inputs[0], cfg, ("rmatrix",))
    return _emit(cfg, check_cybe(r))


def _build(r: GeomRMatrix) -> tuple[Report, CBCST | None]:
    rep = Report("build")
    cy = check_cybe(r)
    rep.extend(cy, "input: ")
    if not cy.passed:
        return rep, None
    try:
        b = builder_from_rmatrix(r, check=False)
        rep.extend(b.check(), "construction: ")
        c = cbcst_from_builder(b)
    except ConstructionError as exc:
        rep.add("construction", False, exc.witness, str(exc))
        return rep, None
    rep.extend(validate(c), "7-tuple: ")
    return rep, c


def cmd_build_cbcst(cfg: RunConfig) -> int:
    _, r = _load(cfg.inputs[0], cfg, ("rmatrix",))
    rep, c = _build(r)
    return _emit(cfg, rep, c.to_dict() if c is not None else None)


def cmd_to_rmatrix(cfg: RunConfig) -> int:
    _, c = _load(cfg.inputs[0], cfg, ("cbcst",))
    rep = Report("to-rmatrix")
    v = validate(c)
    rep.extend(v, "7-tuple: ")
    if not v.passed:
        return _emit(cfg, rep)
    r = to_rmatrix(c, check=False)
    rep.extend(check_cybe(r), "output: ")
    return _emit(cfg, rep, r.to_dict())


def _tuple_and_r(kind, obj) -> tuple[Report, CBCST | None, GeomRMatrix | None]:
    if kind == "rmatrix":
        rep, c = _build(obj)
        return rep, c, obj
    rep = Report("input")
    v = validate(obj)
    rep.extend(v, "7-tuple: ")
    return rep, (obj if v.passed else None), (to_rmatrix(obj, check=False) if v.passed else None)


def cmd_quantize(cfg: RunConfig) -> int:
    order = _order(cfg)
    kind, obj = _load(cfg.inputs[0], cfg, ("rmatrix", "cbcst"))
    pre, c, r = _tuple_and_r(kind, obj)
    rep = Report("quantize")
    rep.extend(pre)
    if c is None:
        return _emit(cfg, rep)
    R = quantize(c, order, check=False)
    summary = None
    if cfg.verify:
        rep.extend(check_braid(R))
        rep.extend(check_classical_limit(R, r))
        u = check_quantum_unitarity(R)
        summary = {"unitary": u.passed}
        if not u.passed:
            summary["first_non_unitary"] = u.items[0].witness
    if cfg.closed_form is not None:
        forms = _read_json(cfg.closed_form)
        try:
            rep.extend(compare_closed_form(R, forms["star"], forms["circ"]))
        except (KeyError, ParseError, ValueError) as exc:
            raise InputError(f"{cfg.closed_form}: {exc}") from None
    return _emit(cfg, rep, R.to_dict(), summary)


def cmd_check_braid(cfg: RunConfig) -> int:
    kind, obj = _load(cfg.inputs[0], cfg, ("rseries", "rmatrix", "cbcst"))
    rep = Report("check-braid")
    if kind == "rseries":
        R = obj
        order = min(cfg.order, R.order) if cfg.order is not None else R.order
    else:
        order = _order(cfg, 4)
        pre, c, _ = _tuple_and_r(kind, obj)
        rep.extend(pre)
        if c is None:
            return _emit(cfg, rep)
        R = quantize(c, order, check=False)
    rep.extend(check_braid(R, order, flip=cfg.flip))
    return _emit(cfg, rep)


def cmd_verify_example5(cfg: RunConfig) -> int:
    from .example import verify_example
    order = _order(cfg, 4)
    eps_values = (None, 1, 0) if cfg.epsilon is None else (cfg.epsilon,)
    return _emit(cfg, verify_example(order, eps_values, corrupt=cfg.corrupt))


COMMANDS = {
    "check-cybe": (cmd_check_cybe, "check the classical Yang-Baxter equation for an r-matrix file"),
    "build-cbcst": (cmd_build_cbcst, "build the 7-tuple of an r-matrix"),
    "to-rmatrix": (cmd_to_rmatrix, "build the r-matrix of a 7-tuple"),
    "quantize": (cmd_quantize, "quantize an r-matrix or 7-tuple into an R-matrix series"),
    "check-braid": (cmd_check_braid, "check R12 R13 R23 = R23 R13 R12"),
    "verify-example5": (cmd_verify_example5, "run every check on the built-in example"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geoquant", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        s = sub.add_parser(name, help=help_text)
        if name != "verify-example5":
            s.add_argument("input", help="input file (JSON)")
        s.add_argument("--order", type=int, help="truncation order N (series mod hbar^(N+1))")
        s.add_argument("--epsilon", default=None, help="'symbolic' (default) or a rational p/q")
        s.add_argument("--format", dest="fmt", choices=("human", "structured"), default="human")
        s.add_argument("--output", type=Path, help="write the produced object here")
        s.add_argument("--verify", action="store_true", help="also run braid and limit checks")
        s.add_argument("--closed-form", type=Path, help="JSON with 'star' and 'circ' expressions")
        if name == "check-braid":
            s.add_argument("--flip", action="store_true", help="check the braid-group form instead")
        if name == "verify-example5":
            s.add_argument("--corrupt", action="store_true",
                           help="perturb one coefficient (negative control)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command,
            inputs=[args.input] if hasattr(args, "input") else [],
            order=args.order,
            epsilon=parse_epsilon(args.epsilon),
            output=args.output,
            fmt=args.fmt,
            verify=args.verify,
            closed_form=args.closed_form,
            flip=getattr(args, "flip", False),
            corrupt=getattr(args, "corrupt", False),
        )
        return COMMANDS[args.command][0](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
