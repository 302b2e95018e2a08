"""Command-line front end.

Subcommands: design-polar, spectrum, awef, bound, census, simulate,
reproduce. Data outputs are CSV, metadata and manifests are JSON; every
command writing files also writes a manifest.json so runs can be reproduced
byte-for-byte. Exit codes: 0 success, 2 usage error, 3 budget refusal,
4 integrity failure. CONCATSPEC_WORKERS sets the census worker count.

Flag precedence: command line > JSON config file (--config) > built-in
defaults. Config keys are the long flag names with dashes replaced by
underscores, e.g. {"budget": 32, "out": "results"}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__, bounds, descriptors, ensemble, mcsim, polar, recipes, spectrum
from .descriptors import DescriptorError
from .errors import BudgetExceededError, IntegrityError

_DEFAULTS = {
    "budget": spectrum.DEFAULT_BUDGET_EXPONENT,
    "out": ".",
    "xi": "99/100",
    "seeds": "1..25",
    "grid": "0.05:0.5:0.01",
}


def _parse_seeds(text: str):
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


def _parse_grid(text: str):
    start, stop, step = (float(t) for t in text.split(":"))
    grid = []
    x = start
    while x <= stop + 1e-12:
        grid.append(round(x, 10))
        x += step
    return grid


def _resolve(args, config: dict, key: str):
    val = getattr(args, key, None)
    if val is not None:
        return val
    if key in config:
        return config[key]
    return _DEFAULTS.get(key)


def _write(path: Path, text: str, outputs: list):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    outputs.append(str(path))


def _manifest(out_dir: Path, outputs: list, seeds=None, descriptor_docs=None):
    doc = {
        "command": sys.argv,
        "tool_version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "outputs": sorted(outputs),
    }
    if seeds is not None:
        doc["seeds"] = list(seeds)
    if descriptor_docs:
        doc["descriptor_hashes"] = {
            name: descriptors.descriptor_hash(d) for name, d in descriptor_docs.items()
        }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "manifest.json").write_text(json.dumps(doc, indent=2) + "\n")


def _load_spectrum_values(path: Path):
    """Read a WEF or AWEF CSV; returns (values list indexed by weight, n)."""
    import csv as _csv

    rows = list(_csv.reader(path.open()))
    header = rows[0]
    if header[:2] != ["weight", "multiplicity"]:
        raise ValueError(f"{path}: not a spectrum CSV")
    entries = {}
    for row in rows[1:]:
        w = int(row[0])
        v = row[1]
        entries[w] = Fraction(v) if "/" in v else Fraction(int(v))
    n = max(entries)
    return [entries.get(i, Fraction(0)) for i in range(n + 1)], n


# ----------------------------------------------------------------- commands

def cmd_design_polar(args, config):
    eps_text = _resolve(args, config, "eps")
    if eps_text is None:
        raise DescriptorError("--eps is required (e.g. '0.3' or '3/10')")
    eps = polar.parse_eps(eps_text)
    design = polar.design_polar(args.n, args.k, eps)
    text = design.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_spectrum(args, config):
    budget = int(_resolve(args, config, "budget"))
    out_dir = Path(_resolve(args, config, "out"))
    doc = descriptors.load_descriptor(args.descriptor)
    code = descriptors.build_code(doc, Path(args.descriptor).parent)
    outputs = []
    if args.io:
        wef, iowef = spectrum.code_spectra(code, budget)
        _write(out_dir / "iowef.csv", iowef.to_csv(), outputs)
    else:
        wef = spectrum.code_wef(code, budget)
    _write(out_dir / "wef.csv", wef.to_csv(), outputs)
    if wef.total() != 1 << code.k:
        raise IntegrityError(
            f"WEF sums to {wef.total()}, expected 2^{code.k}"
        )
    print(f"(n, k) = ({code.n}, {code.k})")
    print(f"d_min = {wef.min_distance()}")
    print(f"sum check: {wef.total()} == 2^{code.k} ok")
    _manifest(out_dir, outputs, descriptor_docs={"descriptor": doc})
    return 0


def _awef_for(args, config):
    budget = int(_resolve(args, config, "budget"))
    outer_doc = descriptors.load_descriptor(args.outer)
    inner_doc = descriptors.load_descriptor(args.inner)
    outer = descriptors.build_code(outer_doc, Path(args.outer).parent)
    inner = descriptors.build_code(inner_doc, Path(args.inner).parent)
    if outer.n != inner.k:
        raise DescriptorError(
            f"outer length {outer.n} must equal inner dimension {inner.k}"
        )
    outer_wef = spectrum.code_wef(outer, budget)
    _, inner_io = spectrum.code_spectra(inner, budget)
    avg = ensemble.uniform_awef(outer_wef, inner_io)
    return avg, outer_doc, inner_doc, inner


def cmd_awef(args, config):
    out_dir = Path(_resolve(args, config, "out"))
    avg, outer_doc, inner_doc, _ = _awef_for(args, config)
    outputs = []
    _write(out_dir / "awef.csv", avg.to_csv(), outputs)
    print(f"AWEF d_min = {avg.min_distance()}")
    if args.expurgate:
        xi = Fraction(_resolve(args, config, "xi"))
        report = ensemble.expurgate(avg, xi)
        rep_doc = {
            "xi": f"{xi.numerator}/{xi.denominator}",
            "adoptable": report.adoptable,
            "removed_weights": list(report.removed_weights),
            "removed_mass": float(report.removed_mass),
        }
        _write(out_dir / "expurgation_report.json",
               json.dumps(rep_doc, indent=2) + "\n", outputs)
        if report.adoptable:
            _write(out_dir / "awef_expurgated.csv",
                   report.good_spectrum.to_csv(), outputs)
            print(f"expurgated d_min = {report.good_spectrum.min_distance()}")
        else:
            print("expurgation not adoptable")
    _manifest(out_dir, outputs,
              descriptor_docs={"outer": outer_doc, "inner": inner_doc})
    return 0


def cmd_bound(args, config):
    budget = int(_resolve(args, config, "budget"))
    out_dir = Path(_resolve(args, config, "out"))
    grid = _parse_grid(_resolve(args, config, "grid"))
    docs = {}
    if args.spectrum_csv:
        values, n = _load_spectrum_values(Path(args.spectrum_csv))
        if args.n is not None and args.n != n:
            values += [Fraction(0)] * (args.n - n)
            n = args.n
        if args.k is None:
            raise DescriptorError("--k is required with --spectrum-csv")
        k = args.k
    else:
        if not args.descriptor:
            raise DescriptorError("either --descriptor or --spectrum-csv is required")
        doc = descriptors.load_descriptor(args.descriptor)
        docs["descriptor"] = doc
        code = descriptors.build_code(doc, Path(args.descriptor).parent)
        wef = spectrum.code_wef(code, budget)
        values, n, k = list(wef.counts), code.n, code.k
    curve = bounds.bound_curve([float(v) for v in values], n, k, grid)
    outputs = []
    _write(out_dir / "bound.csv", curve.to_csv(), outputs)
    _manifest(out_dir, outputs, descriptor_docs=docs)
    return 0


def cmd_census(args, config):
    budget = int(_resolve(args, config, "budget"))
    out_dir = Path(_resolve(args, config, "out"))
    seeds = _parse_seeds(_resolve(args, config, "seeds"))
    workers = int(os.environ.get("CONCATSPEC_WORKERS", "1"))
    outer_doc = descriptors.load_descriptor(args.outer)
    inner_doc = descriptors.load_descriptor(args.inner)
    outer = descriptors.build_code(outer_doc, Path(args.outer).parent)
    inner = descriptors.build_code(inner_doc, Path(args.inner).parent)
    result = ensemble.dmin_census(outer, inner, seeds, budget, workers)
    outputs = []
    _write(out_dir / "census.csv", result.to_csv(), outputs)
    hist = {str(k): v for k, v in sorted(result.histogram.items())}
    _write(out_dir / "census_histogram.json",
           json.dumps(hist, indent=2) + "\n", outputs)
    print(f"census histogram: {hist}")
    if args.expected:
        expected = json.loads(Path(args.expected).read_text())
        diffs = {
            d: (expected.get(d, 0), hist.get(d, 0))
            for d in set(expected) | set(hist)
            if expected.get(d, 0) != hist.get(d, 0)
        }
        if diffs:
            print(f"divergence from expected histogram: {diffs}")
        else:
            print("histogram matches expected")
    _manifest(out_dir, outputs, seeds=seeds,
              descriptor_docs={"outer": outer_doc, "inner": inner_doc})
    return 0


def cmd_simulate(args, config):
    doc = descriptors.load_descriptor(args.descriptor)
    code = descriptors.build_code(doc, Path(args.descriptor).parent)
    result = mcsim.simulate_bep(code, args.eps, args.trials, args.seed)
    text = result.to_json() + "\n"
    sys.stdout.write(text)
    if args.bound_csv:
        curve = bounds.BoundCurve.from_csv(Path(args.bound_csv).read_text())
        nearest = min(curve.points, key=lambda p: abs(p[0] - args.eps))
        if abs(nearest[0] - args.eps) < 1e-9 and result.estimate > nearest[1]:
            print(
                f"warning: estimate {result.estimate} exceeds bound "
                f"{nearest[1]} at eps={nearest[0]}",
                file=sys.stderr,
            )
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        _manifest(out.parent, [str(out)], seeds=[args.seed],
                  descriptor_docs={"descriptor": doc})
    return 0


def _reproduce_figure(scheme: recipes.Scheme, out_dir: Path, seeds, grid, budget,
                      outputs):
    outer, inner = recipes.scheme_codes(scheme)
    n, big_k = inner.n, outer.k

    inner_wef = spectrum.code_wef(inner, budget)
    curve = bounds.bound_curve([float(c) for c in inner_wef.counts],
                               n, inner.k, grid, "polar alone")
    _write(out_dir / "polar_alone_bound.csv", curve.to_csv(), outputs)

    cat = recipes.no_interleaver_code(scheme)
    cat_wef = spectrum.code_wef(cat, budget)
    curve = bounds.bound_curve([float(c) for c in cat_wef.counts],
                               n, big_k, grid, "no interleaver")
    _write(out_dir / "no_interleaver_bound.csv", curve.to_csv(), outputs)

    from .gf2 import random_permutation

    for seed in seeds:
        perm = random_permutation(outer.n, seed)
        code = ensemble.concat_code(outer, perm, inner)
        wef = spectrum.code_wef(code, budget)
        curve = bounds.bound_curve([float(c) for c in wef.counts],
                                   n, big_k, grid, f"interleaver seed {seed}")
        _write(out_dir / f"interleaver_seed_{seed:03d}_bound.csv",
               curve.to_csv(), outputs)

    avg = recipes.scheme_awef(scheme, budget)
    _write(out_dir / "awef.csv", avg.to_csv(), outputs)
    curve = bounds.bound_curve(avg.to_floats(), n, big_k, grid, "awef")
    _write(out_dir / "awef_bound.csv", curve.to_csv(), outputs)

    report = ensemble.expurgate(avg)
    if report.adoptable:
        _write(out_dir / "awef_expurgated.csv",
               report.good_spectrum.to_csv(), outputs)
        curve = bounds.bound_curve(report.good_spectrum.to_floats(),
                                   n, big_k, grid, "expurgated awef")
        _write(out_dir / "awef_expurgated_bound.csv", curve.to_csv(), outputs)


def _reproduce_table1(out_dir: Path, seeds, budget, outputs):
    workers = int(os.environ.get("CONCATSPEC_WORKERS", "1"))
    summary = {}
    for key in ("fig1", "fig2", "fig3", "fig4", "fig5"):
        scheme = recipes.SCHEMES[key]
        outer, inner = recipes.scheme_codes(scheme)
        result = ensemble.dmin_census(outer, inner, seeds, budget, workers)
        _write(out_dir / f"{scheme.label}_census.csv", result.to_csv(), outputs)
        summary[scheme.label] = {str(d): c for d, c in sorted(result.histogram.items())}
    _write(out_dir / "table1_histograms.json",
           json.dumps(summary, indent=2) + "\n", outputs)
    print(json.dumps(summary, indent=2))


def cmd_reproduce(args, config):
    budget = int(_resolve(args, config, "budget"))
    out_root = Path(_resolve(args, config, "out"))
    seeds = _parse_seeds(_resolve(args, config, "seeds"))
    grid = _parse_grid(_resolve(args, config, "grid"))
    names = args.recipes
    if "all" in names:
        names = ["fig1", "fig2", "fig3", "fig4", "fig5", "table1"]
    outputs = []
    for name in names:
        if name == "table1":
            _reproduce_table1(out_root / "table1", seeds, budget, outputs)
        elif name in recipes.SCHEMES:
            _reproduce_figure(recipes.SCHEMES[name], out_root / name, seeds,
                              grid, budget, outputs)
        else:
            raise DescriptorError(f"unknown recipe {name!r}")
    _manifest(out_root, outputs, seeds=seeds)
    return 0


# -------------------------------------------------------------------- main

def build_parser():
    p = argparse.ArgumentParser(
        prog="concatspec",
        description="Distance spectra and BEC union bounds for concatenated "
                    "polar+cyclic codes",
    )
    p.add_argument("--config", help="JSON config file with flag defaults")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("design-polar", help="BEC polar design, JSON output")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", help="design erasure probability ('0.3' or '3/10')")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_design_polar)

    sp = sub.add_parser("spectrum", help="exact WEF (and IOWEF) of a code")
    sp.add_argument("descriptor", help="code descriptor JSON file")
    sp.add_argument("--io", action="store_true", help="also write the IOWEF")
    sp.add_argument("--budget", type=int, help="enumeration budget exponent")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("awef", help="uniform-interleaver average WEF")
    sp.add_argument("--outer", required=True, help="outer code descriptor")
    sp.add_argument("--inner", required=True, help="inner code descriptor")
    sp.add_argument("--expurgate", action="store_true")
    sp.add_argument("--xi", help="good-subset fraction (default 99/100)")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_awef)

    sp = sub.add_parser("bound", help="union bound curve over the BEC")
    sp.add_argument("--descriptor", help="code descriptor JSON file")
    sp.add_argument("--spectrum-csv", help="spectrum CSV instead of a descriptor")
    sp.add_argument("--n", type=int, help="code length (with --spectrum-csv)")
    sp.add_argument("--k", type=int, help="code dimension (with --spectrum-csv)")
    sp.add_argument("--grid", help="eps grid 'start:stop:step'")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("census", help="interleaver minimum-distance census")
    sp.add_argument("--outer", required=True)
    sp.add_argument("--inner", required=True)
    sp.add_argument("--seeds", help="'1..25' or comma list")
    sp.add_argument("--expected", help="JSON histogram to compare against")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("simulate", help="Monte Carlo ML-decoding estimate")
    sp.add_argument("descriptor")
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--trials", type=int, default=10**6)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--bound-csv", help="warn if the estimate exceeds this curve")
    sp.add_argument("--out", help="also write the result JSON here")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("reproduce", help="run named figure/table recipes")
    sp.add_argument("recipes", nargs="+",
                    help="fig1..fig5, table1, or 'all'")
    sp.add_argument("--seeds", help="interleaver seeds (default 1..25)")
    sp.add_argument("--grid", help="eps grid 'start:stop:step'")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reproduce)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: bad config file: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args, config)
    except BudgetExceededError as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return 3
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 4
    except (DescriptorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
