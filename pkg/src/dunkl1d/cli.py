"""Command-line front end: configuration, CSV ingestion, operator
application, norm computation, suite execution, report emission.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 data error.
"""

import argparse
import csv
import math
import os
import sys

import numpy as np

from .errors import DataError, DunklError, UsageError
from .functions import materialize, parse_function_spec
from .grid import (DEFAULT_EXTENT, DEFAULT_RESOLUTION, GridFunction,
                   QuadratureGrid, build_grid, lorentz_norm, lp_norm, mu_ball)
from .harness import SuiteConfig, encode_report_json, run_suite, suite_names
from .norms import (NormSpec, block_norm_continuous, block_norm_discrete,
                    fofana_norm, weak_fofana_norm, weak_fofana_norm_direct)
from .operators import fractional_maximal, hl_maximal, riesz_potential_grid
from .special import DunklParameter
from .transform import DEFAULT_FREQ_EXTENT, DEFAULT_FREQ_RESOLUTION, forward
from .translation import convolve, translate

_FUNC_GRAMMAR = ("gaussian:s | indicator:R | sindicator:R:d | bump:R | "
                 "power:g:R, composable with dilate:l and scale:t prefixes")


def _real(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}")


def _common_flags(parser: argparse.ArgumentParser):
    g = parser.add_argument_group("grid configuration")
    g.add_argument("--k", type=_real, default=0.0,
                   help="Dunkl parameter, k > -1 (default: %(default)s)")
    g.add_argument("--grid-extent", type=_real, default=DEFAULT_EXTENT,
                   help="spatial half-extent X (default: %(default)s)")
    g.add_argument("--grid-n", type=int, default=DEFAULT_RESOLUTION,
                   help="cells per half-axis (default: %(default)s)")
    g.add_argument("--freq-extent", type=_real, default=DEFAULT_FREQ_EXTENT,
                   help="frequency half-extent (default: %(default)s)")
    g.add_argument("--freq-n", type=int, default=DEFAULT_FREQ_RESOLUTION,
                   help="frequency cells per half-axis (default: %(default)s)")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker threads; 1 is the canonical deterministic "
                             "baseline (default: %(default)s)")
    parser.add_argument("--report", metavar="PATH",
                        help="write a JSON report embedding the effective config")
    parser.add_argument("--out", metavar="PATH",
                        help="output CSV path (default: stdout)")
    parser.add_argument("--figures", action="store_true",
                        help="render a PNG next to the written output file")


def _input_flags(parser: argparse.ArgumentParser, suffix: str = "",
                 what: str = "input"):
    grp = parser.add_mutually_exclusive_group()
    grp.add_argument(f"--func{suffix}", metavar="SPEC",
                     help=f"builtin {what}: {_FUNC_GRAMMAR}")
    grp.add_argument(f"--in{suffix}", dest=f"input{suffix}", metavar="CSV",
                     help=f"{what} samples; header x,value or x,re,im")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl1d",
        description="Dunkl analysis on the line: transforms, translations, "
                    "amalgam/Fofana norms, fractional operators, and "
                    "verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="forward transform to CSV "
                                         "(columns lambda,re,im)")
    _input_flags(p)
    _common_flags(p)

    p = sub.add_parser("apply", help="apply an operator, emit the result "
                                     "as a function CSV")
    p.add_argument("--op", required=True,
                   choices=["translate", "convolve", "maximal", "mbeta", "ibeta"])
    _input_flags(p)
    _input_flags(p, suffix="2", what="second convolution factor")
    p.add_argument("--y", type=_real, default=None,
                   help="translation offset (op translate)")
    p.add_argument("--beta", type=_real, default=None,
                   help="fractional order (ops mbeta, ibeta)")
    _common_flags(p)

    p = sub.add_parser("norm", help="compute one norm of one function")
    p.add_argument("--kind", required=True,
                   choices=["lp", "lorentz", "amalgam", "amalgam-discrete",
                            "fofana", "weak-fofana"])
    _input_flags(p)
    p.add_argument("--p", type=_real, default=None, help="outer exponent")
    p.add_argument("--q", type=_real, default=None, help="inner exponent")
    p.add_argument("--alpha", type=_real, default=None,
                   help="intermediate exponent (fofana kinds)")
    p.add_argument("--beta", type=_real, default=None,
                   help="fractional order; switches weak-fofana to the "
                        "derived-exponent form")
    p.add_argument("--r", type=_real, default=1.0,
                   help="block scale for amalgam kinds (default: %(default)s)")
    _common_flags(p)

    p = sub.add_parser("verify", help="run a verification suite and report")
    p.add_argument("--suite", required=True,
                   help="suite name or 'all'; names: " + ", ".join(suite_names()))
    p.add_argument("--timing", action="store_true",
                   help="record wall time in the summary (makes reports "
                        "non-reproducible byte for byte)")
    _common_flags(p)

    p = sub.add_parser("grid-info", help="print the effective grids as JSON")
    _common_flags(p)

    return parser


def _effective_config(args) -> SuiteConfig:
    return SuiteConfig(k=args.k, grid_extent=args.grid_extent,
                       grid_n=args.grid_n, freq_extent=args.freq_extent,
                       freq_n=args.freq_n, threads=args.threads,
                       timing=getattr(args, "timing", False))


def _grids(args):
    param = DunklParameter(k=args.k)
    space = build_grid(param, X=args.grid_extent, N=args.grid_n)
    freq = build_grid(param, X=args.freq_extent, N=args.freq_n)
    return param, space, freq


def ingest_csv(path, grid: QuadratureGrid) -> GridFunction:
    """Read function samples and interpolate them onto the quadrature nodes.

    Header must be exactly `x,value` (real) or `x,re,im` (complex); x must be
    strictly increasing and every entry finite.  The result is linear between
    samples and zero outside the sampled range.
    """
    try:
        fh = open(path, newline="")
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}")
    with fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file")
        if header == ["x", "value"]:
            is_complex = False
        elif header == ["x", "re", "im"]:
            is_complex = True
        else:
            raise DataError(f"{path}: header must be x,value or x,re,im, "
                            f"got {','.join(header)!r}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} "
                                f"columns, got {len(row)}")
            try:
                rows.append([float(c) for c in row])
            except ValueError:
                raise DataError(f"{path}:{lineno}: non-numeric entry")
    if not rows:
        raise DataError(f"{path}: no data rows")
    arr = np.asarray(rows, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{path}: samples must be finite")
    xs = arr[:, 0]
    if xs.size > 1 and not np.all(np.diff(xs) > 0.0):
        raise DataError(f"{path}: x must be strictly increasing")
    if is_complex:
        vals = (np.interp(grid.nodes, xs, arr[:, 1], left=0.0, right=0.0)
                + 1j * np.interp(grid.nodes, xs, arr[:, 2], left=0.0, right=0.0))
    else:
        vals = np.interp(grid.nodes, xs, arr[:, 1], left=0.0, right=0.0)
    meta = {"source": str(path), "n_samples": int(xs.size),
            "x_min": float(xs[0]), "x_max": float(xs[-1]),
            "interpolation": "linear, zero outside the sampled range"}
    return GridFunction(grid=grid, values=vals, meta=meta)


def _resolve_input(args, grid, suffix: str = "") -> tuple:
    """(function, label) from --func/--in; exactly one must be present."""
    spec_text = getattr(args, "func" + suffix)
    path = getattr(args, "input" + suffix)
    flag = "--func" + suffix
    if spec_text is None and path is None:
        raise UsageError(f"one of {flag}/--in{suffix} is required")
    if spec_text is not None:
        spec = parse_function_spec(spec_text)
        return materialize(spec, grid), spec.label()
    return ingest_csv(path, grid), str(path)


def _emit_text(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _function_csv(f: GridFunction) -> str:
    if np.iscomplexobj(f.values):
        lines = ["x,re,im"]
        lines += [f"{x:.17g},{v.real:.17g},{v.imag:.17g}"
                  for x, v in zip(f.grid.nodes, f.values)]
    else:
        lines = ["x,value"]
        lines += [f"{x:.17g},{v:.17g}" for x, v in zip(f.grid.nodes, f.values)]
    return "\n".join(lines) + "\n"


def _spectral_csv(F) -> str:
    vals = np.asarray(F.values, dtype=np.complex128)
    lines = ["lambda,re,im"]
    lines += [f"{lam:.17g},{v.real:.17g},{v.imag:.17g}"
              for lam, v in zip(F.freq_grid.nodes, vals)]
    return "\n".join(lines) + "\n"


def _figure_path(data_path) -> str:
    return os.path.splitext(str(data_path))[0] + ".png"


def _write_report(args, payload: dict):
    if args.report:
        _emit_text(encode_report_json(payload), args.report)


def _require_out_for_figures(args):
    if args.figures and not args.out:
        raise UsageError("--figures needs --out to name the destination")


def _cmd_transform(args) -> int:
    _, space, freq = _grids(args)
    f, label = _resolve_input(args, space)
    _require_out_for_figures(args)
    F = forward(f, freq)
    _emit_text(_spectral_csv(F), args.out)
    if args.figures:
        from .figures import save_spectrum_figure
        save_spectrum_figure(F, _figure_path(args.out), title=f"F[{label}]")
    _write_report(args, {"command": "transform",
                         "config": _effective_config(args).as_dict(),
                         "input": label,
                         "output": args.out,
                         "n_freq_nodes": int(freq.nodes.size)})
    return 0


def _cmd_apply(args) -> int:
    _, space, freq = _grids(args)
    f, label = _resolve_input(args, space)
    _require_out_for_figures(args)
    op = args.op
    detail: dict = {}
    if op == "translate":
        if args.y is None:
            raise UsageError("op translate needs --y")
        out = translate(f, args.y, freq_grid=freq)
        detail["y"] = args.y
    elif op == "convolve":
        g, label2 = _resolve_input(args, space, suffix="2")
        out = convolve(f, g, freq_grid=freq)
        detail["with"] = label2
    elif op == "maximal":
        out = hl_maximal(f, freq_grid=freq)
    elif op == "mbeta":
        if args.beta is None:
            raise UsageError("op mbeta needs --beta")
        out = fractional_maximal(f, args.beta, freq_grid=freq)
        detail["beta"] = args.beta
    else:   # ibeta
        if args.beta is None:
            raise UsageError("op ibeta needs --beta")
        out = riesz_potential_grid(f, args.beta, freq_grid=freq)
        detail["beta"] = args.beta
    _emit_text(_function_csv(out), args.out)
    if args.figures:
        from .figures import save_function_figure
        save_function_figure(out, _figure_path(args.out),
                             title=f"{op}[{label}]")
    _write_report(args, {"command": "apply", "op": op,
                         "config": _effective_config(args).as_dict(),
                         "input": label, **detail,
                         "output": args.out})
    return 0


def _need(args, name: str, kind: str) -> float:
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"norm kind {kind} needs --{name}")
    return v


def _cmd_norm(args) -> int:
    _, space, freq = _grids(args)
    f, label = _resolve_input(args, space)
    kind = args.kind
    r_max = None
    exponents: dict = {}
    if kind == "lp":
        p = _need(args, "p", kind)
        value = lp_norm(f, p)
        exponents = {"p": p}
    elif kind == "lorentz":
        p, q = _need(args, "p", kind), _need(args, "q", kind)
        value = lorentz_norm(f, p, q)
        exponents = {"p": p, "q": q}
    elif kind == "amalgam":
        p, q = _need(args, "p", kind), _need(args, "q", kind)
        value = block_norm_continuous(f, q, p, args.r, freq_grid=freq)
        exponents = {"q": q, "p": p, "r": args.r}
    elif kind == "amalgam-discrete":
        p, q = _need(args, "p", kind), _need(args, "q", kind)
        value = block_norm_discrete(f, q, p, args.r)
        exponents = {"q": q, "p": p, "r": args.r}
    elif kind == "fofana":
        q, p = _need(args, "q", kind), _need(args, "p", kind)
        alpha = _need(args, "alpha", kind)
        res = fofana_norm(f, NormSpec(q=q, p=p, alpha=alpha), freq_grid=freq)
        value, r_max = res.value, res.r_max
        exponents = {"q": q, "p": p, "alpha": alpha}
    else:   # weak-fofana
        q, p = _need(args, "q", kind), _need(args, "p", kind)
        alpha = _need(args, "alpha", kind)
        exponents = {"q": q, "p": p, "alpha": alpha}
        if args.beta is not None:
            spec = NormSpec(q=q, p=p, alpha=alpha, beta=args.beta)
            res = weak_fofana_norm(f, spec, freq_grid=freq)
            exponents["beta"] = args.beta
        else:
            res = weak_fofana_norm_direct(f, q, p, alpha, freq_grid=freq)
        value, r_max = res.value, res.r_max
    if r_max is None:
        print(f"{value:.17g}")
    else:
        print(f"{value:.17g} {r_max:.17g}")
    payload = {"command": "norm", "kind": kind,
               "config": _effective_config(args).as_dict(),
               "input": label, "exponents": exponents, "value": value}
    if r_max is not None:
        payload["r_max"] = r_max
    _write_report(args, payload)
    return 0


def _cmd_verify(args) -> int:
    if args.figures and not args.report:
        raise UsageError("--figures needs --report to name the destination")
    cfg = _effective_config(args)
    names = suite_names() if args.suite == "all" else (args.suite,)
    reports = []
    for name in names:
        rep = run_suite(name, cfg)
        reports.append(rep)
        s = rep.summary
        print(f"{name}: pass={s['pass']} ({s['n_pass']}/{s['n_cases']} cases)",
              file=sys.stderr)
    if len(reports) == 1:
        text = reports[0].to_json()
        payload_for_figures = [reports[0].as_dict()]
    else:
        combined = {
            "suites": [r.as_dict() for r in reports],
            "config": cfg.as_dict(),
            "summary": {
                "n_suites": len(reports),
                "n_failed": sum(1 for r in reports if not r.passed),
                "pass": all(r.passed for r in reports),
            },
        }
        text = encode_report_json(combined)
        payload_for_figures = combined["suites"]
    _emit_text(text, args.report)
    if args.figures:
        from .figures import save_report_figure
        stem = os.path.splitext(str(args.report))[0]
        if len(payload_for_figures) == 1:
            save_report_figure(payload_for_figures[0], stem + ".png")
        else:
            for d in payload_for_figures:
                save_report_figure(d, f"{stem}.{d['suite']}.png")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_grid_info(args) -> int:
    param, space, freq = _grids(args)
    pos = space.pos_nodes
    info = {
        "command": "grid-info",
        "config": _effective_config(args).as_dict(),
        "k": param.k,
        "dimension": 2.0 * param.k + 2.0,
        "d_k": param.d_k,
        "mu_unit_ball": mu_ball(param, 1.0),
        "space": {
            "extent": space.extent,
            "n_half": space.n_half,
            "grading": space.grading,
            "min_spacing": float(np.min(np.diff(pos))),
            "max_spacing": float(np.max(np.diff(pos))),
        },
        "freq": {
            "extent": freq.extent,
            "n_half": freq.n_half,
            "grading": freq.grading,
        },
    }
    text = encode_report_json(info)
    sys.stdout.write(text)
    if args.report:
        _emit_text(text, args.report)
    return 0


_HANDLERS = {
    "transform": _cmd_transform,
    "apply": _cmd_apply,
    "norm": _cmd_norm,
    "verify": _cmd_verify,
    "grid-info": _cmd_grid_info,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:     # argparse exits 2 on usage errors, 0 on --help
        return int(e.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except DunklError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
