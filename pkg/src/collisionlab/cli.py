"""Command-line front end.

Layout of every subcommand: data on stdout (or --out), diagnostics and the
resolved-configuration echo on stderr, so stdout is byte-identical across
reruns and worker counts.  Single-document outputs are compact JSON with a
version field; streaming outputs are JSONL with schemas owned by the library
modules.

Exit codes: 0 success or certified HOLDS, 1 certified FAILS or certificate
failure, 2 usage error (argparse), 3 capability or runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__, bounds, certificate, collision, lemma, sieve
from .collision import ParamTuple
from .intervals import FAILS

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _echo(subcommand: str, resolved: dict) -> None:
    line = f"collisionlab {__version__} {subcommand} " + json.dumps(
        resolved, separators=(",", ":"), sort_keys=True, default=str
    )
    print(line, file=sys.stderr)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_doc(config: dict, body: dict) -> str:
    doc: dict = {"version": __version__, "config": config}
    doc.update(body)
    return json.dumps(doc, separators=(",", ":"))


def _iv_pair(iv) -> list[float]:
    return [iv.lo, iv.hi]


# ---------------------------------------------------------------------------
# collision subcommands

def _cmd_search(args) -> int:
    cfg = {"max_value": args.max_value, "out": args.out}
    records = collision.enumerate_collisions(args.max_value)
    _echo("search", cfg | {"records": len(records)})
    _emit(collision.records_jsonl(records), args.out)
    return EXIT_OK


def _cmd_fib_family(args) -> int:
    # Exact verification of member i multiplies ~10^(4.8 * phi^(2i)) digit
    # numbers; i = 6 is the last one that finishes in interactive time.
    if args.count < 1:
        raise ValueError(f"fib-family: count must be >= 1, got {args.count}")
    if args.count > 7:
        raise ValueError(
            "fib-family: members beyond i = 6 are too large to verify exactly here; "
            "use collision.fib_identity directly if you want to wait"
        )
    cfg = {"count": args.count, "out": args.out}
    _echo("fib-family", cfg)
    lines = []
    for i in range(args.count):
        mem = collision.fib_identity(i)
        lines.append(
            json.dumps(
                {"i": i, "x": mem.x, "a": mem.a, "y": mem.y, "b": mem.b, "verified": mem.verified},
                separators=(",", ":"),
            )
        )
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def _cmd_param(args) -> int:
    cfg = {"x": args.x, "a": args.a, "y": args.y, "b": args.b}
    t = collision.to_param(args.x, args.a, args.y, args.b)
    _echo("param", cfg)
    body = {
        "tuple": {"delta": t.delta, "n": t.n, "m": t.m, "k": t.k, "l": t.l},
        "k0": t.k0,
        "m0": t.m0,
        "hypotheses": t.hypotheses(),
        "eq12": collision.check_eq12(t),
    }
    print(_json_doc(cfg, body))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds subcommands

def _cmd_bounds_pi_upper(args) -> int:
    cfg = {"x": args.x, "precise": args.precise}
    iv = bounds.pi_upper_dusart(args.x, precise=args.precise)
    _echo("bounds pi-upper", cfg)
    print(_json_doc(cfg, {"lo": iv.lo, "hi": iv.hi}))
    return EXIT_OK


def _cmd_bounds_stirling(args) -> int:
    cfg = {"nu": args.nu, "precise": args.precise}
    lower, upper, f_val = bounds.stirling_log_bounds(args.nu, precise=args.precise)
    _echo("bounds stirling", cfg)
    body = {
        "log_g_lower": _iv_pair(lower),
        "log_g_upper": _iv_pair(upper),
        "f": _iv_pair(f_val),
    }
    print(_json_doc(cfg, body))
    return EXIT_OK


def _cmd_bounds_thresholds(args) -> int:
    cfg = {"n": args.n, "c": args.c}
    th = bounds.section5_thresholds(args.n, args.c)
    _echo("bounds thresholds", cfg)
    print(_json_doc(cfg, {"t_log2": th.t_log2, "t_pow": th.t_pow, "c_star": th.c_star}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# lemma subcommands

def _param_tuple(args) -> ParamTuple:
    return ParamTuple(args.delta, args.n, args.m, args.k, args.l)


def _tuple_cfg(args) -> dict:
    return {"delta": args.delta, "n": args.n, "m": args.m, "k": args.k, "l": args.l}


def _print_lemma(report: lemma.LemmaReport, as_json: bool, cfg: dict) -> int:
    if as_json:
        doc = {
            "version": __version__,
            "config": cfg,
            "report": json.loads(report.to_json()),
        }
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print(report.to_text())
    return EXIT_FAILS if report.verdict.state == FAILS else EXIT_OK


def _cmd_lemma_check21(args) -> int:
    cfg = _tuple_cfg(args)
    _echo("lemma check21", cfg)
    return _print_lemma(lemma.check_lemma21(_param_tuple(args)), args.json, cfg)


def _cmd_lemma_check22(args) -> int:
    cfg = {"n": args.n, "k": args.k}
    _echo("lemma check22", cfg)
    return _print_lemma(lemma.check_lemma22(args.n, args.k), args.json, cfg)


def _cmd_lemma_check23(args) -> int:
    cfg = _tuple_cfg(args)
    _echo("lemma check23", cfg)
    return _print_lemma(lemma.check_lemma23_smooth(_param_tuple(args)), args.json, cfg)


def _cmd_lemma_check31(args) -> int:
    cfg = _tuple_cfg(args) | {"pi_mode": args.pi_mode}
    _echo("lemma check31", cfg)
    report = lemma.check_lemma31(_param_tuple(args), pi_mode=args.pi_mode)
    return _print_lemma(report, args.json, cfg)


def _cmd_lemma_threshold32(args) -> int:
    cfg = {"lo": args.lo, "hi": args.hi}
    _echo("lemma threshold32", cfg)
    res = lemma.threshold_lemma32(args.lo, args.hi)
    body = {
        "f_star": res.f_star,
        "value_at": _iv_pair(res.value_at),
        "value_next": _iv_pair(res.value_next),
    }
    print(_json_doc(cfg, body))
    return EXIT_OK


def _cmd_lemma_nmax31(args) -> int:
    grid = lemma.GridConfig(
        k_min=args.k_min,
        k_max=args.k_max,
        dense_until=args.dense_until,
        growth=args.growth,
        l_samples=args.l_samples,
        pi_mode=args.pi_mode,
        workers=args.threads,
    )
    cfg = {
        "k_min": grid.k_min,
        "k_max": grid.k_max,
        "dense_until": grid.dense_until,
        "growth": grid.growth,
        "l_samples": grid.l_samples,
        "pi_mode": grid.pi_mode,
    }
    _echo("lemma nmax31", cfg | {"threads": args.threads})
    rep = lemma.nmax_lemma31(grid)
    body = {
        "n_max": rep.n_max,
        "log_n_max": rep.log_n_max,
        "argmax_k": rep.argmax_k,
        "argmax_l": rep.argmax_l,
        "points": rep.points,
        "skipped": rep.skipped,
        "claimed_bound": rep.claimed_bound,
    }
    print(_json_doc(cfg, body))
    return EXIT_OK


def _cmd_lemma_section4(args) -> int:
    tuple_flags = [args.delta, args.n, args.m, args.l]
    if any(v is not None for v in tuple_flags):
        if any(v is None for v in tuple_flags):
            raise ValueError("lemma section4: give all of --delta --n --m --k --l, or --k alone")
        cfg = _tuple_cfg(args)
        _echo("lemma section4", cfg)
        return _print_lemma(lemma.section4_check(_param_tuple(args)), args.json, cfg)
    cfg = {"k": args.k}
    _echo("lemma section4", cfg)
    res = lemma.section4_contradiction(args.k)
    print(_json_doc(cfg, {"lhs": res.lhs, "rhs": res.rhs, "contradiction": res.contradiction}))
    return EXIT_OK


def _cmd_lemma_section5(args) -> int:
    cfg = {"n": args.n, "c": args.c}
    _echo("lemma section5", cfg)
    rep = lemma.section5_check(args.n, args.c)
    if args.json:
        body = {
            "c_star": rep.thresholds.c_star,
            "l0": rep.l0,
            "lhs": _iv_pair(rep.lhs),
            "rhs": _iv_pair(rep.rhs),
            "verdict": rep.verdict.state,
            "margin": rep.verdict.margin,
        }
        print(_json_doc(cfg, body))
    else:
        print(f"section5: {rep.verdict.state} (margin {rep.verdict.margin:.6g})")
        print(f"  l0 = {rep.l0!r}")
        print(f"  lhs in [{rep.lhs.lo!r}, {rep.lhs.hi!r}]")
        print(f"  rhs in [{rep.rhs.lo!r}, {rep.rhs.hi!r}]")
    return EXIT_FAILS if rep.verdict.state == FAILS else EXIT_OK


# ---------------------------------------------------------------------------
# sieve subcommands

def _cmd_sieve_gaps(args) -> int:
    cfg = {
        "lo": args.lo,
        "hi": args.hi,
        "min_gap": args.min_gap,
        "segment_size": args.segment_size,
        "threads": args.threads,
    }
    _echo("sieve gaps", cfg)
    lines = (
        json.dumps({"p": ev.p, "gap": ev.gap}, separators=(",", ":")) + "\n"
        for ev in sieve.gap_scan(
            args.lo, args.hi, args.min_gap, segment_size=args.segment_size, workers=args.threads
        )
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
    else:
        for line in lines:
            sys.stdout.write(line)
    return EXIT_OK


def _cmd_sieve_pi(args) -> int:
    cfg = {"x": args.x}
    _echo("sieve pi", cfg)
    print(_json_doc(cfg, {"pi": sieve.prime_count(args.x)}))
    return EXIT_OK


def _cmd_sieve_neighbors(args) -> int:
    cfg = {"x": args.x}
    _echo("sieve neighbors", cfg)
    prev_p, next_p = sieve.prime_neighbors(args.x)
    print(_json_doc(cfg, {"prev": prev_p, "next": next_p, "gap": next_p - prev_p}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify

def _parse_windows(text: str) -> tuple[tuple[int, int], ...]:
    """Parse "152-156,303-308" into ((152, 156), (303, 308))."""
    windows = []
    for part in text.split(","):
        piece = part.strip()
        if not piece:
            continue
        a, sep, b = piece.partition("-")
        if not sep:
            raise ValueError(f"certify: malformed window {piece!r}, expected A-B")
        windows.append((int(a), int(b)))
    if not windows:
        raise ValueError("certify: empty window list")
    return tuple(windows)


def _read_config_file(path: str) -> dict[str, str]:
    """key=value lines; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            values[key.strip()] = value.strip()
    return values


_CERTIFY_DEFAULTS = {
    "qmax": 31754673611,
    "gap_min": 158,
    "windows": "152-156,303-308",
    "smooth_bound": 3427,
    "gap_cap": 456,
    "window_len": 156,
    "segment_size": sieve.DEFAULT_SEGMENT_ODDS,
    "threads": 1,
}

_CERTIFY_INT_KEYS = {"qmax", "gap_min", "smooth_bound", "gap_cap", "window_len", "segment_size", "threads"}


def _resolve_certify(args) -> dict:
    """Defaults, then config file, then explicit flags."""
    resolved = dict(_CERTIFY_DEFAULTS)
    if args.config:
        file_values = _read_config_file(args.config)
        unknown = set(file_values) - set(_CERTIFY_DEFAULTS)
        if unknown:
            raise ValueError(f"certify: unknown config keys: {', '.join(sorted(unknown))}")
        for key, value in file_values.items():
            resolved[key] = int(value) if key in _CERTIFY_INT_KEYS else value
    for key in _CERTIFY_DEFAULTS:
        flag = getattr(args, key)
        if flag is not None:
            resolved[key] = flag
    return resolved


def _cmd_certify(args) -> int:
    resolved = _resolve_certify(args)
    windows = _parse_windows(resolved["windows"])
    config = certificate.CertificateConfig(
        q_max=resolved["qmax"],
        gap_min=resolved["gap_min"],
        windows=windows,
        smooth_bound=resolved["smooth_bound"],
        gap_cap=resolved["gap_cap"],
        window_len=resolved["window_len"],
        segment_size=resolved["segment_size"],
        checkpoint_path=args.checkpoint,
        witness_path=args.witness,
        workers=resolved["threads"],
    )
    _echo("certify", resolved | {"checkpoint": args.checkpoint, "witness": args.witness})

    cov = certificate.coverage_check(config.gap_cap, config.window_len, config.windows)
    if not cov.ok:
        uncovered = sorted(s for s, w in cov.placements.items() if w is None)
        print(
            _json_doc(
                {"gap_cap": config.gap_cap, "window_len": config.window_len,
                 "windows": [list(w) for w in config.windows]},
                {"coverage_ok": False, "uncovered_placements": uncovered},
            )
        )
        return EXIT_FAILS

    report = certificate.run(config, stop_after_segments=args.stop_after)
    print(report.to_json(include_timing=args.timing, version=__version__))
    if args.timing:
        print(f"certify: {report.wall_time:.1f}s wall", file=sys.stderr)
    return EXIT_FAILS if report.failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _add_tuple_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--delta", type=int, required=required)
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--m", type=int, required=required)
    p.add_argument("--k", type=int, required=required)
    p.add_argument("--l", type=int, required=required)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser with option abbreviation off (typos must exit 2, not run)."""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="collisionlab",
        description="Verification laboratory for binomial-coefficient collisions.",
    )
    parser.add_argument("--version", action="version", version=f"collisionlab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("search", help="enumerate all collisions up to a value bound")
    p.add_argument("--max-value", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("fib-family", help="members of the infinite collision family")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fib_family)

    p = sub.add_parser("param", help="parametrize a collision pair C(x,a) = C(y,b)")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=_cmd_param)

    p = sub.add_parser("bounds", help="certified analytic bounds")
    bsub = p.add_subparsers(dest="bounds_command", required=True)

    b = bsub.add_parser("pi-upper", help="prime-counting upper bound at x")
    b.add_argument("--x", type=str, required=True)
    b.add_argument("--precise", action="store_true")
    b.set_defaults(func=_cmd_bounds_pi_upper)

    b = bsub.add_parser("stirling", help="factorial log-bracketing at integer nu")
    b.add_argument("--nu", type=int, required=True)
    b.add_argument("--precise", action="store_true")
    b.set_defaults(func=_cmd_bounds_stirling)

    b = bsub.add_parser("thresholds", help="large-n cutoffs for a given leading constant")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--c", type=float, required=True)
    b.set_defaults(func=_cmd_bounds_thresholds)

    p = sub.add_parser("lemma", help="certified lemma checkers")
    lsub = p.add_subparsers(dest="lemma_command", required=True)

    l = lsub.add_parser("check21", help="two-sided log-ratio test on a parameter tuple")
    _add_tuple_flags(l)
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_check21)

    l = lsub.add_parser("check22", help="does this (n, k) force l = delta")
    l.add_argument("--n", type=int, required=True)
    l.add_argument("--k", type=int, required=True)
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_check22)

    l = lsub.add_parser("check23", help="smoothness of the window products")
    _add_tuple_flags(l)
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_check23)

    l = lsub.add_parser("check31", help="prime-factorization size bound")
    _add_tuple_flags(l)
    l.add_argument("--pi-mode", choices=("exact", "dusart"), default="exact")
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_check31)

    l = lsub.add_parser("threshold32", help="crossover F* of the window-size expression")
    l.add_argument("--lo", type=int, default=10**4)
    l.add_argument("--hi", type=int, default=10**7)
    l.set_defaults(func=_cmd_lemma_threshold32)

    l = lsub.add_parser("nmax31", help="maximize the n-bound over the (k, l) grid")
    l.add_argument("--k-min", type=int, default=588)
    l.add_argument("--k-max", type=int, default=871155)
    l.add_argument("--dense-until", type=int, default=4000)
    l.add_argument("--growth", type=float, default=1.01)
    l.add_argument("--l-samples", type=int, default=64)
    l.add_argument("--pi-mode", choices=("exact", "dusart"), default="dusart")
    l.add_argument("--threads", type=int, default=1)
    l.set_defaults(func=_cmd_lemma_nmax31)

    l = lsub.add_parser("section4", help="incompatible growth bounds for large k")
    l.add_argument("--delta", type=int, default=None)
    l.add_argument("--n", type=int, default=None)
    l.add_argument("--m", type=int, default=None)
    l.add_argument("--k", type=int, required=True)
    l.add_argument("--l", type=int, default=None)
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_section4)

    l = lsub.add_parser("section5", help="central-binomial exclusion of small l at large n")
    l.add_argument("--n", type=int, required=True)
    l.add_argument("--c", type=float, required=True)
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=_cmd_lemma_section5)

    p = sub.add_parser("sieve", help="segmented prime sieve utilities")
    ssub = p.add_subparsers(dest="sieve_command", required=True)

    s = ssub.add_parser("gaps", help="stream prime gaps >= a threshold as JSONL")
    s.add_argument("--lo", type=int, required=True)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--min-gap", type=int, required=True)
    s.add_argument("--segment-size", type=int, default=sieve.DEFAULT_SEGMENT_ODDS)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=_cmd_sieve_gaps)

    s = ssub.add_parser("pi", help="exact prime count up to x")
    s.add_argument("--x", type=int, required=True)
    s.set_defaults(func=_cmd_sieve_pi)

    s = ssub.add_parser("neighbors", help="nearest primes around x")
    s.add_argument("--x", type=int, required=True)
    s.set_defaults(func=_cmd_sieve_neighbors)

    p = sub.add_parser("certify", help="run the prime-gap smoothness certificate")
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--gap-min", type=int, default=None, dest="gap_min")
    p.add_argument("--windows", type=str, default=None)
    p.add_argument("--smooth-bound", type=int, default=None, dest="smooth_bound")
    p.add_argument("--gap-cap", type=int, default=None, dest="gap_cap")
    p.add_argument("--window-len", type=int, default=None, dest="window_len")
    p.add_argument("--segment-size", type=int, default=None, dest="segment_size")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--witness", default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--stop-after", type=int, default=None, dest="stop_after")
    p.add_argument("--config", default=None)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=_cmd_certify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"collisionlab: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
