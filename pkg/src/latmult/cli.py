"""Command-line front end.

Subcommands: apply, kernel, norm, opnorm, classify, scan, kstar, gohberg,
spectrum, verify.  Exit codes: 0 success, 1 verification failure, 2 argument
or parse errors, 3 contract violations (aliasing certificate), 4 unwritable
output.  All output is deterministic given flags and seed; floats are
serialized with 17 significant digits.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from functools import lru_cache

import numpy as np

from . import catalog
from .fractional import (
    FractionalParams,
    apply_fractional,
    classify_conjecture1,
    classify_weak_and_strong,
    fractional_kernel,
    kstar_norm_probe,
    strong_norm_closed_form,
    weak_norm_closed_form,
    zeta,
)
from .lattice import (
    Window,
    box,
    centered_window,
    load_jsonl,
    save_jsonl,
)
from .norms import equivalent_seminorm, lp_norm, weak_norm
from .operators import (
    apply_multiplier,
    opnorm_l1_lp,
    opnorm_l1_weakp,
    pdo_matrix,
)
from .symbols import gohberg_decay, singular_tail
from .torus import TorusGrid, TorusSamples, dft, inverse_dft
from .verification import run_all


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _parse_window(spec: str, dim: int) -> Window:
    parts = spec.split(",")
    if len(parts) != dim:
        raise ValueError(f"window {spec!r} does not match dim {dim}")
    lo, hi = [], []
    for part in parts:
        a, b = part.split(":")
        lo.append(int(a))
        hi.append(int(b))
    return box(tuple(lo), tuple(hi))


def _alias_free(points, resolution: int) -> bool:
    seen = set()
    for p in points:
        key = tuple(c % resolution for c in p)
        if key in seen:
            return False
        seen.add(key)
    return True


def _norm_summary(f) -> dict:
    return {
        "l1": _fmt(lp_norm(f, 1.0)),
        "l2": _fmt(lp_norm(f, 2.0)),
        "weak_l2": _fmt(weak_norm(f, 2.0)),
        "support": len(f),
    }


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def cmd_apply(args) -> int:
    try:
        f = load_jsonl(args.input)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2
    window = _parse_window(args.window, f.dim)
    if args.symbol == "fractional":
        params = FractionalParams(args.k, args.lam, args.gamma)
        out = apply_fractional(params, f, window)
    else:
        grid = TorusGrid(f.dim, args.grid_res)
        if not _alias_free(
            set(f.support()) | set(window.points()), grid.resolution
        ):
            print(
                "error: aliasing certificate failed: support and window "
                f"collide mod {grid.resolution}",
                file=sys.stderr,
            )
            return 3
        if args.symbol == "identity":
            m = catalog.identity_multiplier(f.dim)
        elif args.symbol == "modulation":
            shift = tuple(int(c) for c in args.shift.split(","))
            m = catalog.modulation_multiplier(shift)
        elif args.symbol == "grid-file":
            from .torus import load_csv

            samples = load_csv(args.symbol_file)
            if samples.grid.resolution != grid.resolution:
                print("error: symbol grid resolution mismatch", file=sys.stderr)
                return 2
            F = dft(f, grid)
            out = inverse_dft(
                TorusSamples(grid, samples.values * F.values), window
            )
            m = None
        else:
            print(f"error: unknown symbol {args.symbol!r}", file=sys.stderr)
            return 2
        if m is not None:
            out = apply_multiplier(m, f, grid, window)
    try:
        save_jsonl(out, args.out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    print(json.dumps({"output": args.out, "norms": _norm_summary(out)}))
    return 0


def cmd_kernel(args) -> int:
    params = FractionalParams(args.k, args.lam, args.gamma)
    kern = fractional_kernel(params, args.max_m)
    try:
        save_jsonl(kern, args.out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    print(json.dumps({"output": args.out, "norms": _norm_summary(kern)}))
    return 0


def cmd_norm(args) -> int:
    try:
        f = load_jsonl(args.input)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2
    try:
        result = {
            "p": _fmt(args.p),
            "lp": _fmt(lp_norm(f, args.p)),
            "weak": _fmt(weak_norm(f, args.p)),
            "seminorm": _fmt(equivalent_seminorm(f, args.p, args.r)),
        }
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result))
    return 0


def cmd_opnorm(args) -> int:
    if args.symbol == "fractional":
        params = FractionalParams(args.k, args.lam, args.gamma)
        m = catalog.fractional_multiplier(params, args.terms)
    elif args.symbol == "identity":
        m = catalog.identity_multiplier(1)
    elif args.symbol == "modulation":
        shift = tuple(int(c) for c in args.shift.split(","))
        m = catalog.modulation_multiplier(shift)
    else:
        print(f"error: unknown symbol {args.symbol!r}", file=sys.stderr)
        return 2
    grid = TorusGrid(m.dim, args.grid_res)
    window = centered_window(args.window_radius, m.dim)
    weak = opnorm_l1_weakp(m, args.p, grid, window)
    strong = opnorm_l1_lp(m, args.p, grid, window)
    print(
        json.dumps(
            {
                "p": _fmt(args.p),
                "l1_to_weak_lp": _fmt(weak.value),
                "l1_to_lp": _fmt(strong.value),
                "certified": weak.certified and strong.certified,
                "discarded_mass": _fmt(weak.discarded_mass),
            }
        )
    )
    return 0


def cmd_classify(args) -> int:
    try:
        params = FractionalParams(args.k, args.lam, args.gamma)
        verdict = classify_weak_and_strong(params, args.p)
        wn = weak_norm_closed_form(params, args.p)
        sn = strong_norm_closed_form(params, args.p)
        result = {
            "k": args.k,
            "lambda": _fmt(args.lam),
            "gamma": _fmt(args.gamma),
            "p": _fmt(args.p),
            "weak_1p": verdict.weak_1p,
            "strong_1p": verdict.strong_1p,
            "weak_norm": None if wn.divergent else _fmt(wn.value),
            "weak_norm_divergent": wn.divergent,
            "strong_norm": None if sn.divergent else _fmt(sn.value),
            "strong_norm_divergent": sn.divergent,
        }
        if args.q is not None:
            result["q"] = _fmt(args.q)
            result["predicted_bounded"] = classify_conjecture1(
                args.p, args.q, args.lam, args.k
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result))
    return 0


def _parse_range(spec: str) -> list[float]:
    """Either a comma list '0.2,0.5' or 'start:stop:count'."""
    if ":" in spec:
        a, b, n = spec.split(":")
        return [float(x) for x in np.linspace(float(a), float(b), int(n))]
    return [float(x) for x in spec.split(",")]


@lru_cache(maxsize=256)
def _zeta_cached(s: float) -> float:
    return zeta(s)


def _scan_cell(k: int, lam: float, gamma: float, p: float, q: float, terms: int):
    params = FractionalParams(k, lam, gamma)
    verdict = classify_weak_and_strong(params, p)
    # truncated-kernel norms in closed form (rearrangement j^{-lam})
    wk = max(1.0, terms ** (1.0 / p - lam))
    if lam * p > 1:
        st = _zeta_cached(lam * p) ** (1.0 / p)
    else:
        m = np.arange(1, terms + 1, dtype=np.float64)
        st = float(np.sum(m ** (-lam * p)) ** (1.0 / p))
    if q == 1.0 and 0 < lam < 1:
        predicted = classify_conjecture1(p, q, lam, k)
    elif q > 1.0 and q < p and 0 < lam < 1:
        predicted = classify_conjecture1(p, q, lam, k)
    else:
        predicted = verdict.strong_1p
    return (
        k,
        lam,
        gamma,
        p,
        q,
        terms,
        wk,
        st,
        "finite" if verdict.weak_1p else "divergent",
        "finite" if verdict.strong_1p else "divergent",
        predicted,
    )


def _load_config(path) -> dict:
    cfg = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            cfg[key.strip()] = value.strip()
    return cfg


def cmd_scan(args) -> int:
    if args.config:
        try:
            cfg = _load_config(args.config)
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
        # flags win over config values
        if args.k_list is None and "k_list" in cfg:
            args.k_list = cfg["k_list"]
        if args.lam_range is None and "lam_range" in cfg:
            args.lam_range = cfg["lam_range"]
        if args.p_range is None and "p_range" in cfg:
            args.p_range = cfg["p_range"]
    ks = [int(x) for x in (args.k_list or "1,2,3").split(",")]
    lams = _parse_range(args.lam_range or "0.2:0.9:8")
    ps = _parse_range(args.p_range or "1.5:3:4")
    cells = list(itertools.product(ks, lams, ps))
    rows = []
    for i, (k, lam, p) in enumerate(cells):
        if i < args.start_cell:
            continue
        rows.append(_scan_cell(k, lam, args.gamma, p, args.q, args.terms))
    header = (
        "k,lambda,gamma,p,q,M,weak_norm,strong_norm,"
        "weak_flag,strong_flag,predicted_bounded"
    )
    lines = [header]
    for row in rows:
        k, lam, gam, p, q, terms, wk, st, wf, sf, pred = row
        lines.append(
            ",".join(
                [
                    str(k),
                    _fmt(lam),
                    _fmt(gam),
                    _fmt(p),
                    _fmt(q),
                    str(terms),
                    _fmt(wk),
                    _fmt(st),
                    wf,
                    sf,
                    "true" if pred else "false",
                ]
            )
        )
    try:
        _write_text(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_kstar(args) -> int:
    terms_list = [int(x) for x in args.terms_list.split(",")]
    lines = ["k,lambda,M,l2k_norm"]
    for terms in terms_list:
        res = 2 * terms**args.k
        try:
            grid = TorusGrid(1, res)
            value = kstar_norm_probe(args.k, args.lam, terms, grid)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        lines.append(f"{args.k},{_fmt(args.lam)},{terms},{_fmt(value)}")
    try:
        _write_text(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_gohberg(args) -> int:
    maker = catalog.PDO_BUILTINS.get(args.symbol)
    if maker is None:
        print(
            f"error: unknown symbol {args.symbol!r}; "
            f"choose from {sorted(catalog.PDO_BUILTINS)}",
            file=sys.stderr,
        )
        return 2
    grid = TorusGrid(1, args.grid_res)
    report = gohberg_decay(
        maker(), grid, list(range(args.max_radius + 1)), tolerance=args.tolerance
    )
    lines = ["radius,decay"]
    for r, v in zip(report.radii, report.values):
        lines.append(f"{r},{_fmt(v)}")
    lines.append(f"# verdict={report.verdict}")
    try:
        _write_text(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_spectrum(args) -> int:
    maker = catalog.PDO_BUILTINS.get(args.symbol)
    if maker is None:
        print(f"error: unknown symbol {args.symbol!r}", file=sys.stderr)
        return 2
    grid = TorusGrid(1, args.grid_res)
    window = centered_window(args.window_radius)
    A = pdo_matrix(maker(), window, grid)
    values = singular_tail(A, args.count)
    lines = ["index,singular_value"]
    for i, v in enumerate(values):
        lines.append(f"{i},{_fmt(v)}")
    try:
        _write_text(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    return 0


def cmd_verify(args) -> int:
    results = run_all(fault=args.inject_fault, seed=args.seed)
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "criterion": r.criterion,
                        "name": r.name,
                        "passed": bool(r.passed),
                        "measured": r.measured,
                        "tolerance": r.tolerance,
                    }
                    for r in results
                ],
                indent=2,
            )
        )
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} criterion {r.criterion}: {r.name} "
                f"[{r.measured}] (tolerance: {r.tolerance})"
            )
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latmult",
        description="Fourier multipliers and pseudo-differential operators on Z^n",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def frac_opts(p):
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--lam", type=float, default=0.5)
        p.add_argument("--gamma", type=float, default=0.0)

    p = sub.add_parser("apply", help="apply an operator to a sequence file")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument(
        "--symbol",
        default="identity",
        choices=["identity", "modulation", "fractional", "grid-file"],
    )
    p.add_argument("--symbol-file")
    p.add_argument("--shift", default="1")
    p.add_argument("--grid-res", type=int, default=64)
    p.add_argument("--window", default="-16:16")
    frac_opts(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("kernel", help="write a truncated fractional kernel")
    frac_opts(p)
    p.add_argument("--max-m", type=int, default=100)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("norm", help="norms of a sequence file")
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--r", type=float, default=None)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("opnorm", help="l^1-source operator norms of a multiplier")
    p.add_argument(
        "--symbol",
        default="fractional",
        choices=["fractional", "identity", "modulation"],
    )
    p.add_argument("--shift", default="1")
    frac_opts(p)
    p.add_argument("--terms", type=int, default=100)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--grid-res", type=int, default=256)
    p.add_argument("--window-radius", type=int, default=16)
    p.set_defaults(func=cmd_opnorm)

    p = sub.add_parser("classify", help="boundedness classification")
    frac_opts(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="parameter grid scan to CSV")
    p.add_argument("--config")
    p.add_argument("--k-list")
    p.add_argument("--lam-range")
    p.add_argument("--p-range")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--terms", type=int, default=1000)
    p.add_argument("--start-cell", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("kstar", help="Hypothesis-K* L^{2k} norm probe")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--lam", type=float, default=0.8)
    p.add_argument("--terms-list", default="10,20,50")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_kstar)

    p = sub.add_parser("gohberg", help="symbol decay profile at infinity")
    p.add_argument("--symbol", default="inverse-distance")
    p.add_argument("--grid-res", type=int, default=16)
    p.add_argument("--max-radius", type=int, default=32)
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gohberg)

    p = sub.add_parser("spectrum", help="top singular values of a finite section")
    p.add_argument("--symbol", default="inverse-distance")
    p.add_argument("--grid-res", type=int, default=64)
    p.add_argument("--window-radius", type=int, default=16)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run the acceptance-criteria suite")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--inject-fault", default=None, choices=[None, "kernel"])
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
