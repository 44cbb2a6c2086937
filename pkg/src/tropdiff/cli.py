"""Command line front end: ``tropdiff <command> [options] POLY...``.

Exit status: 0 for a definite answer, 1 for parse or precondition errors,
2 for inconclusive outcomes (capped reductions, bounded-only checks).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from . import engine
from .coefficients import format_rf
from .diffpoly import DiffPolynomial, format_monomial
from .reduction import CAP_REACHED, DEFAULT_CAP, diff_reduce, tr_s_poly
from .textio import (ParseError, SourceLine, parse_polynomial, parse_support,
                     read_basis_lines)
from .tropical import (AllTermsInfinite, FiniteSupport, OrderingSpec, SupportProfile,
                       ZeroPolynomial, initial, leading, val_poly)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CommandError(Exception):
    def __init__(self, code: str, message: str, source: Optional[str] = None,
                 span: Optional[Sequence[int]] = None, detail: Optional[str] = None,
                 exit: int = EXIT_ERROR):
        super().__init__(message)
        self.exit = exit
        self.code = code
        self.message = message
        self.source = source
        self.span = list(span) if span is not None else None
        self.detail = detail

    def to_json(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.source is not None:
            out["source"] = self.source
        if self.span is not None:
            out["span"] = self.span
        return out


@dataclass
class SessionConfig:
    n: int
    support: SupportProfile
    ordering: OrderingSpec
    cap: int = DEFAULT_CAP
    window: Optional[int] = None
    rounds: Optional[int] = None
    json: bool = False


@dataclass
class Outcome:
    exit: int
    result: dict
    text: str
    support: str = ""


# -- inputs ------------------------------------------------------------------------

def _parse_inputs(lines: Sequence[SourceLine], n: int) -> List[DiffPolynomial]:
    out = []
    for line in lines:
        try:
            out.append(parse_polynomial(line.text, n))
        except ParseError as e:
            raise CommandError(e.code, e.message, line.origin, e.span, e.pretty()) from None
    return out


def _gather(args, stdin) -> Dict[str, List[SourceLine]]:
    polys = [SourceLine(p, f"argument {k}") for k, p in enumerate(args.polys, 1)]
    basis: List[SourceLine] = []
    if args.basis:
        try:
            with open(args.basis, encoding="utf-8") as fh:
                basis = read_basis_lines(fh.read(), args.basis)
        except OSError as e:
            raise CommandError("IOError", f"cannot read basis file: {e}", args.basis) from None
    if not polys and not basis and stdin is not None and not stdin.isatty():
        polys = read_basis_lines(stdin.read(), "stdin")
    return {"polys": polys, "basis": basis}


def _need(lines: Sequence[SourceLine], count: Optional[int], what: str) -> None:
    if count is not None and len(lines) != count:
        raise CommandError("Usage", f"expected {count} {what}, got {len(lines)}")
    if not lines:
        raise CommandError("Usage", f"expected at least one {what}")


def _precondition(e: Exception, origins: Sequence[SourceLine],
                  polys: Sequence[DiffPolynomial]) -> CommandError:
    elem = getattr(e, "element", None)
    src = None
    if elem is not None:
        for line, p in zip(origins, polys):
            if p == elem:
                src = line.origin
                break
    return CommandError(type(e).__name__, str(e), src)


# -- commands -----------------------------------------------------------------------

def _lead_json(cfg: SessionConfig, p: DiffPolynomial) -> dict:
    ld = leading(cfg.support, cfg.ordering, p)
    return {"lm": format_monomial(ld.lm), "lc": format_rf(ld.lc), "val": ld.val}


def cmd_initial(cfg, lines):
    _need(lines["polys"], None, "polynomial")
    ps = _parse_inputs(lines["polys"], cfg.n)
    rows = []
    for p in ps:
        rows.append({"input": str(p), "initial": str(initial(cfg.support, p)),
                     "val": val_poly(cfg.support, p)})
    text = "\n".join(r["initial"] for r in rows)
    return Outcome(EXIT_OK, {"initials": rows}, text)


def cmd_leading(cfg, lines):
    _need(lines["polys"], None, "polynomial")
    ps = _parse_inputs(lines["polys"], cfg.n)
    rows = [dict(input=str(p), **_lead_json(cfg, p)) for p in ps]
    text = "\n".join(f"lm={r['lm']} lc={r['lc']} val={r['val']}" for r in rows)
    return Outcome(EXIT_OK, {"leading": rows}, text)


def cmd_spoly(cfg, lines):
    _need(lines["polys"], 2, "polynomials")
    f, g = _parse_inputs(lines["polys"], cfg.n)
    s = tr_s_poly(cfg.support, cfg.ordering, f, g)
    return Outcome(EXIT_OK, {"spoly": str(s)}, str(s))


def cmd_reduce(cfg, lines):
    _need(lines["polys"], 1, "polynomial to reduce")
    _need(lines["basis"], None, "basis polynomial (use --basis)")
    (f,) = _parse_inputs(lines["polys"], cfg.n)
    G = _parse_inputs(lines["basis"], cfg.n)
    trace = diff_reduce(cfg.support, cfg.ordering, G, f, cfg.cap)
    text = f"{trace.status} after {trace.steps_used} steps\nremainder: {trace.remainder}"
    code = EXIT_INCONCLUSIVE if trace.status == CAP_REACHED else EXIT_OK
    return Outcome(code, trace.to_json(), text)


def _inputs_or_basis(lines):
    src = lines["polys"] or lines["basis"]
    _need(src, None, "polynomial")
    return src


def _gb_text(res: engine.GBResult) -> str:
    params = " ".join(f"{k}={v}" for k, v in res.parameters.items())
    head = (f"{res.status}: {len(res.basis)} elements, {res.pairs_processed} pairs, "
            f"{res.reductions_to_zero} to zero" + (f" ({params})" if params else ""))
    return "\n".join([head] + [str(b) for b in res.basis])


def cmd_trdgb(cfg, lines, ancestry=False, partial=False):
    src = _inputs_or_basis(lines)
    F = _parse_inputs(src, cfg.n)
    try:
        if partial:
            res = engine.buchberger_partial(F, cfg.support, cfg.ordering,
                                            rounds=cfg.rounds or 4, cap=cfg.cap)
        else:
            res = engine.tr_dgb(F, cfg.support, cfg.ordering, cap=cfg.cap)
    except engine.PreconditionViolated as e:
        raise _precondition(e, src, F) from None
    code = EXIT_OK if res.status == engine.CERTIFIED_COMPLETE else EXIT_INCONCLUSIVE
    return Outcome(code, res.to_json(ancestry=ancestry), _gb_text(res))


def cmd_reduce_gb(cfg, lines, literal=False):
    src = _inputs_or_basis(lines)
    F = _parse_inputs(src, cfg.n)
    try:
        if literal:
            basis = engine.reduce_gb(F, cfg.support, cfg.ordering, cap=cfg.cap)
        else:
            res = engine.tr_dgb(F, cfg.support, cfg.ordering, cap=cfg.cap)
            basis = engine.reduce_gb(res, cfg.support, cfg.ordering, cap=cfg.cap)
    except engine.PreconditionViolated as e:
        raise _precondition(e, src, F) from None
    out = [str(b) for b in basis]
    return Outcome(EXIT_OK, {"basis": out}, "\n".join(out))


def cmd_check_gb(cfg, lines):
    src = _inputs_or_basis(lines)
    G = _parse_inputs(src, cfg.n)
    mode = cfg.window if cfg.window is not None else engine.LINEAR_CONST_PROGRESSION
    try:
        chk = engine.check_gb_bounded(G, cfg.support, cfg.ordering, mode=mode, cap=cfg.cap)
    except engine.PreconditionViolated as e:
        raise _precondition(e, src, G) from None
    text = f"{chk.status} ({chk.pairs_checked} pairs checked)"
    if chk.witness is not None:
        a, i, b, j = chk.witness
        text += f"\nwitness: (D^{i} g{a + 1}, D^{j} g{b + 1})\nremainder: {chk.remainder}"
    code = EXIT_INCONCLUSIVE if chk.status == engine.INCONCLUSIVE else EXIT_OK
    return Outcome(code, chk.to_json(), text)


def cmd_member(cfg, lines, complete=False):
    _need(lines["polys"], 1, "polynomial to test")
    _need(lines["basis"], None, "basis polynomial (use --basis)")
    (f,) = _parse_inputs(lines["polys"], cfg.n)
    G = _parse_inputs(lines["basis"], cfg.n)
    try:
        if complete:
            res = engine.tr_dgb(G, cfg.support, cfg.ordering, cap=cfg.cap)
        else:
            res = engine.certify(G, cfg.support, cfg.ordering, cap=cfg.cap)
    except engine.PreconditionViolated as e:
        raise _precondition(e, lines["basis"], G) from None
    verdict = engine.membership(res, f, cfg.support, cfg.ordering, cap=cfg.cap)
    text = f"{verdict.verdict}\nremainder: {verdict.remainder}"
    code = EXIT_INCONCLUSIVE if verdict.verdict == engine.INCONCLUSIVE else EXIT_OK
    return Outcome(code, verdict.to_json(), text)


def cmd_support_check(cfg, lines):
    src = _inputs_or_basis(lines)
    G = _parse_inputs(src, cfg.n)
    rep = engine.monomial_free_window(G, cfg.support, cfg.ordering, window=cfg.window)
    if rep.found:
        cert = " + ".join(f"({c})*in(D^{s} g{g + 1})" for g, s, c in rep.certificate)
        text = (f"MonomialFound: {format_monomial(rep.witness)} (value {rep.value})\n"
                f"certificate: {cert}")
        return Outcome(EXIT_OK, rep.to_json(), text)
    return Outcome(EXIT_INCONCLUSIVE, rep.to_json(),
                   f"NoneInWindow: no monomial up to shift {rep.window}")


def cmd_bound(cfg, lines):
    src = _inputs_or_basis(lines)
    G = _parse_inputs(src, cfg.n)
    d = engine.lower_bound_d(G, cfg.support)
    out = {"d": d}
    text = f"d = {d}"
    if cfg.support.is_progressions() and all(
            g.is_linear() and g.is_homogeneous() and g.has_constant_coefficients() for g in G):
        out["window"] = engine.pair_window(G, cfg.support)
        text += "\n" + " ".join(f"{k}={v}" for k, v in out["window"].items())
    return Outcome(EXIT_OK, out, text)


COMMANDS: Dict[str, Callable] = {
    "initial": cmd_initial,
    "leading": cmd_leading,
    "reduce": cmd_reduce,
    "spoly": cmd_spoly,
    "trdgb": cmd_trdgb,
    "reduce-gb": cmd_reduce_gb,
    "check-gb": cmd_check_gb,
    "member": cmd_member,
    "support-check": cmd_support_check,
    "bound": cmd_bound,
}

HELP = {
    "initial": "tropical initial of each polynomial",
    "leading": "tropical leading monomial, coefficient and value",
    "reduce": "differentially reduce one polynomial by --basis",
    "spoly": "tr-S polynomial of two polynomials",
    "trdgb": "complete a linear constant-coefficient system to a Groebner basis",
    "reduce-gb": "reduced Groebner basis",
    "check-gb": "Buchberger criterion (decision, or --window B bounded check)",
    "member": "ideal membership against a certified --basis",
    "support-check": "search the initial ideal for a monomial (--window)",
    "bound": "number of differentiations per completion round",
}


# -- argument parsing ------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--support", "-s", default=None,
                        help="support profile, e.g. '4N', '1+2N', '{0,2,4} u 6+2N' "
                             "(comma separated per variable; default N)")
    shared.add_argument("--vars", "-n", type=_positive, default=1, help="number of variables")
    shared.add_argument("--ordering", default="dorder-deglex", choices=["dorder-deglex"])
    shared.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                        help="maximum reduction steps")
    shared.add_argument("--window", type=_natural, default=None)
    shared.add_argument("--rounds", type=_positive, default=None)
    shared.add_argument("--basis", "-b", default=None,
                        help="file of newline separated polynomials ('#' comments)")
    shared.add_argument("--json", action="store_true", help="emit one JSON document")
    shared.add_argument("polys", nargs="*", metavar="POLY")

    parser = argparse.ArgumentParser(prog="tropdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[shared], help=HELP[name])
        if name == "trdgb":
            p.add_argument("--ancestry", action="store_true",
                           help="include input-combination traces")
            p.add_argument("--partial", action="store_true",
                           help="round-based completion for general systems (--rounds)")
        elif name == "reduce-gb":
            p.add_argument("--literal", action="store_true",
                           help="inputs already form a basis; reduce them as given")
        elif name == "member":
            p.add_argument("--complete", action="store_true",
                           help="complete --basis with trdgb before testing")
    return parser


def run_command(args, stdin=None) -> Outcome:
    support_text = args.support if args.support is not None else ",".join(["N"] * args.vars)
    try:
        support = parse_support(support_text, args.vars)
    except ParseError as e:
        raise CommandError(e.code, e.message, "--support", e.span, e.pretty()) from None
    cfg = SessionConfig(args.vars, support, OrderingSpec(args.ordering), args.cap,
                        args.window, args.rounds, args.json)
    lines = _gather(args, stdin)
    extra = {}
    if args.command == "trdgb":
        extra = {"ancestry": args.ancestry, "partial": args.partial}
    elif args.command == "reduce-gb":
        extra = {"literal": args.literal}
    elif args.command == "member":
        extra = {"complete": args.complete}
    try:
        out = COMMANDS[args.command](cfg, lines, **extra)
        out.support = str(support)
        return out
    except CommandError:
        raise
    except (engine.PreconditionViolated, engine.NotCertified, engine.NonLinearGenerator,
            engine.NonPolynomialCoefficient, FiniteSupport, ZeroPolynomial,
            AllTermsInfinite) as e:
        raise CommandError(type(e).__name__, str(e)) from None
    except engine.ReductionCapExceeded as e:
        raise CommandError("CapReached", str(e), exit=EXIT_INCONCLUSIVE) from None
    except engine.BasisLimitExceeded as e:
        raise CommandError("BasisLimit", str(e), exit=EXIT_INCONCLUSIVE) from None


def main(argv: Optional[Sequence[str]] = None, stdout=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stdin = sys.stdin if stdin is None else stdin
    args = build_parser().parse_args(argv)
    try:
        out = run_command(args, stdin)
    except CommandError as e:
        if args.json:
            doc = {"ok": False, "command": args.command, "exit": e.exit,
                   "error": e.to_json()}
            print(json.dumps(doc, indent=2), file=stdout)
        else:
            where = f"{e.source}: " if e.source else ""
            print(f"error [{e.code}] {where}{e.detail or e.message}", file=sys.stderr)
        return e.exit
    if args.json:
        doc = {"ok": True, "command": args.command, "exit": out.exit,
               "support": out.support,
               "result": out.result}
        print(json.dumps(doc, indent=2), file=stdout)
    else:
        print(out.text, file=stdout)
    return out.exit


if __name__ == "__main__":
    sys.exit(main())
