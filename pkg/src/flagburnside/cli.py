"""Command-line front end.

    flagburnside simulate --n 4 --q 1997 --steps 1000 --start 3214 --out runs/fig3
    flagburnside exact --n 3 --q 2 --check --spectrum
    flagburnside green 2,1
    flagburnside rsk 213
    flagburnside estimate-cell --q 20011 --start 32145 --samples 2000
    flagburnside verify --only 1,2,3

Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from . import oracle as O
from .field import CapacityError, check_modulus
from .greenpoly import green
from .partitions import Partition
from .perm import Permutation, all_permutations
from .rsk import rsk
from .sampler import ChainConfig, estimate_cell_size, run_chain

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"q must be an integer, got {text!r}")
    try:
        check_modulus(q)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return q


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _start(args) -> Permutation:
    if args.start is None:
        return Permutation.longest(args.n)
    try:
        w = Permutation.parse(args.start)
    except ValueError as exc:
        raise UsageError(f"bad --start: {exc}")
    if w.n != args.n:
        raise UsageError(f"--start has {w.n} letters but --n is {args.n}")
    return w


# ---------------------------------------------------------------------------
# simulate


def _chain_worker(job: tuple) -> tuple:
    n, q, seed, steps, start, retain, check = job
    traj = run_chain(ChainConfig(n=n, q=q, seed=seed, steps=steps, start=start, retain_flags=retain, check=check))
    flags = None
    if traj.flags is not None:
        flags = [list(f.free_entries) for f in traj.flags]
    return seed, [w.images for w in traj.words], [t.parts for t in traj.jordan_types], flags


def _histogram_rows(n: int, counts: dict) -> list:
    return [(w.one_line(), counts.get(w.images, 0)) for w in all_permutations(n)]


def cmd_simulate(args) -> int:
    start = _start(args)
    seeds = [args.seed + k for k in range(args.chains)]
    jobs = [(args.n, args.q, s, args.steps, start, args.retain_flags, args.check) for s in seeds]
    t0 = time.perf_counter()
    if args.chains > 1 and args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_chain_worker, jobs))
    else:
        results = [_chain_worker(j) for j in jobs]
    results.sort(key=lambda r: r[0])
    counts: dict = {}
    for _, words, _, _ in results:
        for w in words:
            counts[w] = counts.get(w, 0) + 1
    rows = _histogram_rows(args.n, counts)
    duration = time.perf_counter() - t0

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["permutation", "count"])
        writer.writerows(rows)
        hist_text = buf.getvalue()
    else:
        hist_text = json.dumps({"n": args.n, "q": args.q, "histogram": dict(rows)}, indent=1) + "\n"

    if args.out is None:
        sys.stdout.write(hist_text)
        return EXIT_OK

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    hist_path = out / f"histogram.{args.format}"
    hist_path.write_text(hist_text)
    outputs = [hist_path.name]
    if args.trajectory or args.retain_flags:
        traj_path = out / "trajectory.csv"
        with traj_path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = ["chain_seed", "step", "permutation", "jordan_type"]
            if args.retain_flags:
                header.append("free_entries")
            writer.writerow(header)
            for seed, words, types, flags in results:
                for t, images in enumerate(words):
                    row = [seed, t, Permutation(images).one_line(), "" if t == 0 else ",".join(map(str, types[t - 1]))]
                    if args.retain_flags:
                        row.append(" ".join(map(str, flags[t])))
                    writer.writerow(row)
        outputs.append(traj_path.name)
    _write_manifest(out, "simulate", args, duration, outputs)
    print(f"wrote {', '.join(outputs)} to {out}")
    return EXIT_OK


def _write_manifest(out: Path, name: str, args, duration: float, outputs: list) -> None:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "from_manifest")}
    manifest = {
        "subcommand": name,
        "parameters": params,
        "version": __version__,
        "duration_seconds": round(duration, 6),
        "outputs": outputs,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# exact


def cmd_exact(args) -> int:
    t0 = time.perf_counter()
    if args.flag_level:
        flag_matrix = O.exact_transition(args.n, args.q)
        P = O.lump(flag_matrix, args.n, args.q)
    else:
        flag_matrix = None
        P = O.lumped_transition(args.n, args.q)
    report: dict = {"n": args.n, "q": args.q, "lumped": _labelled_json(P)}
    status = EXIT_OK

    if args.check:
        if args.n != 3:
            raise UsageError("--check compares against the GL_3 fixture and needs --n 3")
        r = O.check_gl3(args.q, flag_level=args.flag_level)
        report["check"] = {"passed": r["passed"], "mismatches": r["mismatches"]}
        print(f"golden fixture at q={args.q}: {'PASS' if r['passed'] else 'FAIL'}", file=sys.stderr)
        if not r["passed"]:
            status = EXIT_CHECK
    if args.spectrum:
        if args.n != 3:
            raise UsageError("--spectrum checks the GL_3 eigen-data and needs --n 3")
        rep = O.spectrum_checks(P, args.q)
        report["spectrum"] = {
            "second_eigenvalue": str(rep.second_eigenvalue),
            "checks": rep.checks,
            "charpoly_ascending": [str(c) for c in rep.charpoly],
            "numeric_eigenvalues": rep.numeric_eigenvalues,
            "max_residual": rep.max_residual,
        }
        if args.q == 2:
            report["spectrum"]["cubic_factor"] = "525x^3 - 315x^2 + 50x - 2"
        if not rep.passed:
            status = EXIT_CHECK
    if args.tv:
        start = _start(args) if args.start else _s1(args.n)
        report["tv"] = {
            "start": start.one_line(),
            "displayed_sum": [str(x) for x in O.tv_curve(P, start, args.tv)],
            "half_sum": [str(x) for x in O.tv_curve(P, start, args.tv, half=True)],
        }
    if args.conductance:
        c = O.conductance_bound(P, epsilon=args.epsilon)
        report["conductance"] = {
            "phi_by_cell": {k: str(v) for k, v in c.cell_phi.items()},
            "phi": str(c.phi),
            "epsilon": c.epsilon,
            "mixing_time_lower_bound": c.mixing_lower_bound,
        }
    duration = time.perf_counter() - t0

    text = json.dumps(report, indent=1) + "\n"
    if args.out is None:
        sys.stdout.write(text)
        return status
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "exact.json").write_text(text)
    outputs = ["exact.json"]
    if flag_matrix is not None:
        fm = flag_matrix.to_json()
        fm["labels"] = [_flag_label(f) for f in flag_matrix.labels]
        (out / "flag_matrix.json").write_text(json.dumps(fm) + "\n")
        outputs.append("flag_matrix.json")
    _write_manifest(out, "exact", args, duration, outputs)
    print(f"wrote {', '.join(outputs)} to {out}")
    return status


def _s1(n: int) -> Permutation:
    if n < 2:
        return Permutation.identity(n)
    return Permutation((2, 1) + tuple(range(3, n + 1)))


def _labelled_json(P) -> dict:
    data = P.to_json()
    data["labels"] = [w.one_line() for w in P.labels]
    return data


def _flag_label(f) -> str:
    return f"{f.w.one_line()}:{','.join(map(str, f.free_entries))}"


# ---------------------------------------------------------------------------
# green, rsk, estimate-cell, verify


def cmd_green(args) -> int:
    try:
        lam = Partition.parse(args.partition)
    except ValueError as exc:
        raise UsageError(str(exc))
    poly = green(lam)
    if args.format == "json":
        print(json.dumps({"partition": str(lam), "text": poly.to_text(), "coefficients": list(poly.coefficients)}))
    else:
        print(poly.to_text())
        print("coefficients (ascending): " + " ".join(map(str, poly.coefficients)))
    return EXIT_OK


def cmd_rsk(args) -> int:
    try:
        w = Permutation.parse(args.word)
    except ValueError as exc:
        raise UsageError(str(exc))
    P, Q = rsk(w)
    if args.format == "json":
        print(json.dumps({"word": w.one_line(), "P": P.to_json(), "Q": Q.to_json(), "shape": list(P.shape.parts)}))
    else:
        print(f"shape: {P.shape}")
        print("P:")
        print(P.diagram())
        print("Q:")
        print(Q.diagram())
    return EXIT_OK


def cmd_estimate_cell(args) -> int:
    w = _start(args)
    est = estimate_cell_size(w, args.q, args.samples, rng=args.seed, burn_in=args.burn_in)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "start": w.one_line(),
                    "estimate": est.estimate,
                    "samples": est.samples,
                    "collisions": est.collisions,
                    "distinct": est.distinct,
                    "lower_bound": est.lower_bound,
                }
            )
        )
    else:
        print(f"cell of {w.one_line()}: {est}")
    return EXIT_OK


def _criteria_list(text: str) -> set:
    try:
        return {int(x) for x in text.split(",") if x.strip()}
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated criterion numbers")


def cmd_verify(args) -> int:
    from .verification import run_all

    results = run_all(only=args.only)
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_CHECK if failed else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagburnside", description="Burnside process on flags of GL_n(F_q)")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, q_default=2, n_default=3):
        p.add_argument("--n", type=_positive, default=n_default)
        p.add_argument("--q", type=_prime, default=q_default)
        p.add_argument("--out", default=None, help="output directory (stdout when omitted)")

    p = sub.add_parser("simulate", help="run the chain and write a histogram")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=_nonnegative, default=1000)
    p.add_argument("--start", default=None, help="one-line permutation, default w0")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--trajectory", action="store_true", help="also write trajectory.csv")
    p.add_argument("--retain-flags", action="store_true", help="record free entries of every visited flag")
    p.add_argument("--check", action="store_true", help="verify the stabilizer element fixes both flags")
    p.add_argument("--chains", type=_positive, default=1, help="independent chains with seeds seed, seed+1, ...")
    p.add_argument("--workers", type=_positive, default=1, help="processes for --chains")
    p.add_argument("--from-manifest", default=None, help="replay the parameters stored in a manifest")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("exact", help="exact transition matrices for small (n, q)")
    common(p)
    p.add_argument("--check", action="store_true", help="compare with the GL_3 golden fixture")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--tv", type=_positive, default=0, metavar="L", help="TV curve up to L steps")
    p.add_argument("--start", default=None, help="start for --tv, default s1")
    p.add_argument("--conductance", action="store_true")
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--flag-level", action="store_true", help="build the full flag kernel and lump it")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("green", help="Green polynomial of a partition")
    p.add_argument("partition", help="e.g. 2,1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("rsk", help="insertion and recording tableaux")
    p.add_argument("word", help="one-line permutation, e.g. 213")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_rsk)

    p = sub.add_parser("estimate-cell", help="birthday estimate of a Steinberg cell size")
    p.add_argument("--n", type=_positive, default=5)
    p.add_argument("--q", type=_prime, default=20011)
    p.add_argument("--start", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive, default=2000)
    p.add_argument("--burn-in", type=_nonnegative, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_estimate_cell)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--only", type=_criteria_list, default=None, help="e.g. 1,2,9")
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_manifest(parser, args):
    data = json.loads(Path(args.from_manifest).read_text())
    if data.get("subcommand") != "simulate":
        raise UsageError("manifest was not written by simulate")
    out = args.out
    for k, v in data["parameters"].items():
        setattr(args, k, v)
    if out is not None:
        args.out = out
    return args


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "from_manifest", None):
            args = _apply_manifest(parser, args)
        return args.func(args)
    except (UsageError, CapacityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
