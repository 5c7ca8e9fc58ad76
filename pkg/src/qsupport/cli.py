"""
Command-line front end.

    qsupport --type A --rank 2 --ell 5 --weight 1,0 support
    qsupport --type B --rank 2 --ell 7 verify
    qsupport --type A --rank 1 --ell 5 kl --y 1 --w 1,0

Exit codes: 0 all verdicts pass, 1 verification failure, 2 invalid input,
3 capacity exceeded. Errors are written to stdout as JSON.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__, cache
from .affine import AffineWeylGroup, wall_signs_hold, theta_is_dominant
from .errors import AssumptionViolation, CapacityExceeded, InvalidInput, InvariantViolation
from .gendim import (irreducible_character, irreducible_generic_dim, multiplicity_and_complexity,
                     sweep_weights, verify_derivative_formula)
from .kl import DEFAULT_MAX_LENGTH, KLTable, at_one
from .roots import build, validate_ell
from .support import irreducible_support, weyl_module_support

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_CAPACITY = 0, 1, 2, 3
PASS, FAIL, CAPACITY = "pass", "fail", "capacity-exceeded"

log = logging.getLogger("qsupport")


@dataclass
class RunConfig:
    type_label: str
    rank: int
    ell: int
    mode: str = "quantum"
    weight: tuple = None
    bound: int = None
    output: str = "json"
    cache_path: str = None
    max_kl_length: int = DEFAULT_MAX_LENGTH
    jobs: int = 1

    def validate(self):
        R = build(self.type_label, self.rank)
        validate_ell(R, self.ell, self.mode)
        if self.weight is not None:
            R.check_weight(self.weight)
        if self.bound is not None and self.bound < 0:
            raise InvalidInput("bound must be non-negative")
        if self.max_kl_length < 0:
            raise InvalidInput("max KL length must be non-negative")
        if self.jobs < 1:
            raise InvalidInput("jobs must be at least 1")
        return R

    def inputs(self):
        out = {"type": self.type_label, "rank": self.rank, "ell": self.ell, "mode": self.mode,
               "max_kl_length": self.max_kl_length}
        if self.weight is not None:
            out["weight"] = list(self.weight)
        if self.bound is not None:
            out["bound"] = self.bound
        return out


@dataclass
class Certificate:
    command: str
    inputs: dict
    outputs: dict
    verdict: str
    timing: dict = field(default_factory=dict)
    version: str = __version__
    cache: dict = field(default_factory=dict)

    def to_json(self):
        return {"command": self.command, "inputs": self.inputs, "outputs": self.outputs,
                "verdict": self.verdict, "timing": self.timing, "version": self.version,
                "cache": self.cache}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text):
        data = json.loads(text)
        if data.get("verdict") not in (PASS, FAIL, CAPACITY):
            raise ValueError(f"unknown verdict {data.get('verdict')!r}")
        return cls(**data)

    @property
    def exit_code(self):
        return {PASS: EXIT_OK, FAIL: EXIT_FAIL, CAPACITY: EXIT_CAPACITY}[self.verdict]


def parse_ints(text, what):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise InvalidInput(f"{what} must be comma-separated integers, got {text!r}") from None


class _Context:
    def __init__(self, config):
        self.config = config
        self.R = build(config.type_label, config.rank)
        self.G = AffineWeylGroup(self.R, config.ell)
        self.kl = KLTable(self.G, config.max_kl_length)
        self.warm = cache.load(config.cache_path, self.kl)

    def save(self):
        cache.save(self.config.cache_path, self.kl)


def cmd_support(config, module="irreducible"):
    R = config.validate()
    if config.weight is None:
        raise InvalidInput("support needs --weight")
    fn = irreducible_support if module == "irreducible" else weyl_module_support
    desc = fn(R, config.weight, config.ell, config.mode)
    return Certificate("support", dict(config.inputs(), module=module), desc.to_json(), PASS)


def check_weight(ctx, lam):
    """Every per-weight verification used by ``verify``; returns a JSON-able record."""
    G = ctx.G
    rec = {"weight": list(lam)}
    red = G.reduce_to_fundamental(lam)
    rec["lambda_minus"] = list(red.lambda_minus)
    rec["w_length"] = G.length(red.w)
    rec["wall_signs"] = wall_signs_hold(G, red)
    rec["theta_dominant"] = theta_is_dominant(G, red.w)
    thm = verify_derivative_formula(G, lam, red)
    rec["derivative_formula"] = thm.to_json()
    ok = thm.passed and rec["wall_signs"] and rec["theta_dominant"]
    try:
        rep = multiplicity_and_complexity(ctx.kl, lam)
    except CapacityExceeded as exc:
        rec["multiplicity"] = {"error": str(exc)}
        rec["verdict"] = FAIL if not ok else CAPACITY
        return rec
    rec["multiplicity"] = rep.to_json()
    rec["verdict"] = PASS if ok and rep.passed else FAIL
    return rec


_worker_ctx = None


def _init_worker(config):
    global _worker_ctx
    _worker_ctx = _Context(config)


def _run_one(lam):
    try:
        return check_weight(_worker_ctx, lam)
    except InvariantViolation as exc:
        return {"weight": list(lam), "verdict": FAIL, "error": str(exc)}


def cmd_verify(config):
    R = config.validate()
    bound = config.bound if config.bound is not None else 2 * config.ell - 1
    weights = sweep_weights(R, bound)
    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(config,)) as pool:
            records = list(pool.map(_run_one, weights, chunksize=8))
        stats = {}
        if config.cache_path:
            log.warning("KL cache is not written by parallel sweeps; rerun with --jobs 1 to persist it")
    else:
        _init_worker(config)
        records = [_run_one(lam) for lam in weights]
        _worker_ctx.save()
        stats = _worker_ctx.kl.stats()
    counts = {PASS: 0, FAIL: 0, CAPACITY: 0}
    for rec in records:
        counts[rec["verdict"]] += 1
    verdict = FAIL if counts[FAIL] else CAPACITY if counts[CAPACITY] else PASS
    summary = {"weights": len(records), "pass": counts[PASS], "fail": counts[FAIL],
               "capacity_exceeded": counts[CAPACITY], "complete": counts[CAPACITY] == 0}
    inputs = dict(config.inputs(), bound=bound)
    return Certificate("verify", inputs, {"summary": summary, "weights": records}, verdict, cache=stats)


def cmd_kl(config, y_word, w_word, parabolic=None):
    config.validate()
    ctx = _Context(config)
    G = ctx.G
    y, w = G.from_word(y_word), G.from_word(w_word)
    if parabolic is None:
        p = ctx.kl.kl_poly(y, w)
    else:
        p = ctx.kl.parabolic_kl(parabolic, y, w)
    ctx.save()
    out = {"y": y.to_json(), "w": w.to_json(), "y_length": G.length(y), "w_length": G.length(w),
           "coefficients": list(p), "value_at_1": at_one(p)}
    inputs = dict(config.inputs(), y_word=list(y_word), w_word=list(w_word))
    if parabolic is not None:
        inputs["parabolic"] = list(parabolic)
    return Certificate("kl", inputs, out, PASS, cache=ctx.kl.stats())


def cmd_character(config):
    config.validate()
    if config.weight is None:
        raise InvalidInput("character needs --weight")
    ctx = _Context(config)
    combo = irreducible_character(ctx.kl, config.weight)
    dim_t = irreducible_generic_dim(ctx.kl, config.weight)
    ctx.save()
    out = combo.to_json()
    out["generic_dimension"] = {str(k): c for k, c in dim_t.terms()}
    out["dimension"] = dim_t.at_one()
    return Certificate("character", config.inputs(), out, PASS, cache=ctx.kl.stats())


def _csv_summary(cert):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["weight", "verdict", "s", "n", "derivative_formula", "wall_signs", "borel_bound", "support_bound"])
    for rec in cert.outputs["weights"]:
        mult = rec.get("multiplicity", {})
        thm = rec.get("derivative_formula", {})
        writer.writerow([" ".join(map(str, rec["weight"])), rec["verdict"], thm.get("s", ""),
                         mult.get("n", ""), thm.get("passed", ""), rec.get("wall_signs", ""),
                         mult.get("borel_bound", ""), mult.get("support_bound", "")])
    return buf.getvalue()


def _text(cert):
    lines = [f"{cert.command}: {cert.verdict}"]
    out = cert.outputs
    if cert.command == "verify":
        s = out["summary"]
        lines.append(f"{s['weights']} weights: {s['pass']} pass, {s['fail']} fail, "
                     f"{s['capacity_exceeded']} capacity-exceeded")
    else:
        for k in sorted(out):
            lines.append(f"  {k}: {out[k]}")
    return "\n".join(lines) + "\n"


def render(cert, fmt):
    if fmt == "csv":
        if cert.command != "verify":
            raise InvalidInput("csv output is only available for verify sweeps")
        return _csv_summary(cert)
    if fmt == "text":
        return _text(cert)
    return cert.dumps() + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def make_parser():
    p = _Parser(prog="qsupport", description="Support varieties from affine Weyl group combinatorics.")
    p.add_argument("--type", dest="type_label", default="A", help="simple type A-G (default A)")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--ell", type=int, required=True, help="odd level l > h (the prime p in modular mode)")
    p.add_argument("--mode", choices=["quantum", "modular"], default="quantum")
    p.add_argument("--weight", help="comma-separated fundamental-weight coordinates")
    p.add_argument("--bound", type=int, help="sweep every dominant weight with coordinates <= bound")
    p.add_argument("--format", dest="output", choices=["json", "csv", "text"], default="json")
    p.add_argument("--cache", dest="cache_path", default=cache.default_path(),
                   help=f"KL cache file (default ${cache.ENV_VAR})")
    p.add_argument("--max-kl-length", type=int, default=DEFAULT_MAX_LENGTH)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("support", help="support variety descriptor of one module")
    s.add_argument("--module", choices=["irreducible", "weyl"], default="irreducible")
    sub.add_parser("verify", help="sweep the generic-dimension and multiplicity checks")
    k = sub.add_parser("kl", help="(parabolic) Kazhdan-Lusztig polynomial")
    k.add_argument("--y", default="", help="generator word, 0 = affine reflection")
    k.add_argument("--w", default="", help="generator word, 0 = affine reflection")
    k.add_argument("--parabolic", help="comma-separated generator indices I")
    sub.add_parser("character", help="Weyl-character expansion and generic dimension of L(weight)")
    return p


def run(argv=None):
    """Parse, execute, return (exit code, rendered output)."""
    started = time.perf_counter()
    cmd = "?"
    try:
        args = make_parser().parse_args(argv)
        cmd = args.command
        config = RunConfig(
            type_label=args.type_label.upper(), rank=args.rank, ell=args.ell, mode=args.mode,
            weight=parse_ints(args.weight, "weight") if args.weight is not None else None,
            bound=args.bound, output=args.output, cache_path=args.cache_path,
            max_kl_length=args.max_kl_length, jobs=args.jobs)
        if cmd == "support":
            cert = cmd_support(config, args.module)
        elif cmd == "verify":
            cert = cmd_verify(config)
        elif cmd == "kl":
            parabolic = parse_ints(args.parabolic, "parabolic") if args.parabolic is not None else None
            cert = cmd_kl(config, parse_ints(args.y, "y"), parse_ints(args.w, "w"), parabolic)
        else:
            cert = cmd_character(config)
        cert.timing = {"seconds": round(time.perf_counter() - started, 6)}
        return cert.exit_code, render(cert, config.output)
    except (InvalidInput, AssumptionViolation) as exc:
        reasons = getattr(exc, "reasons", [str(exc)])
        return EXIT_INVALID, _error_json(cmd, "invalid-input", reasons)
    except CapacityExceeded as exc:
        return EXIT_CAPACITY, _error_json(cmd, "capacity-exceeded", [str(exc)])
    except InvariantViolation as exc:
        return EXIT_FAIL, _error_json(cmd, "invariant-violation", [str(exc)])


def _error_json(cmd, kind, reasons):
    return json.dumps({"command": cmd, "error": kind, "messages": reasons}, indent=2, sort_keys=True) + "\n"


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
