"""Command-line surface binding the modules into reproducible runs.

Exit status contract: 0 = success, 1 = a verification failed (containment
violated, covering witness found, identity broken), 2 = usage or format
errors.  Every run echoes its resolved configuration so artifacts are
self-describing.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import covering as cov
from .config import DEFAULT_CONFIG, FormatError, RunConfig
from .graphs import markov_weights, laplace_type_operator
from .growth import ball_sizes
from .omega import OmegaWord
from .presentation import abelianization_class, relators_U
from .actions import verify_trivial
from .schreier import (
    UpsilonSpec,
    cayley_ball,
    check_isomorphic,
    level_projection_covering,
    schreier_graph,
    upsilon_graph,
)
from .serialize import export_dot, export_eigenvalue_csv, parse_graph, serialize_graph
from .spectra import (
    GRIG_TARGET,
    IntervalUnion,
    dihedral_reduction_check,
    dihedral_weighted_spectrum,
    markov_eigenvalues_banded,
    moments_via_eigendecomposition,
    spectral_moments,
    spectrum_sweep,
)

OK, VERIFY_FAIL, USAGE = 0, 1, 2


def _echo_config(config: RunConfig) -> None:
    print("config: " + json.dumps(config.as_dict(), sort_keys=True))


def _write(path: str | None, data: str | bytes) -> None:
    if path is None or path == "-":
        out = data.decode() if isinstance(data, bytes) else data
        sys.stdout.write(out)
        return
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode) as fh:
        fh.write(data)


def _add_omega(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", required=True, help="sequence as PRE:PERIOD, e.g. ':012'")


def cmd_schreier(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    g = schreier_graph(w, args.level, config)
    meta = {"omega": str(w), "level": args.level}
    if args.dot:
        _write(args.output, export_dot(g))
    else:
        _write(args.output, serialize_graph(g, meta, config))
    return OK


def cmd_upsilon(args, config) -> int:
    spec = UpsilonSpec(args.kind, args.size, middle_exception=args.exception)
    g = upsilon_graph(spec)
    meta = {"kind": args.kind, "size": args.size, "exception": args.exception}
    if args.dot:
        _write(args.output, export_dot(g))
    else:
        _write(args.output, serialize_graph(g, meta, config))
    return OK


def cmd_spectrum(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    g = schreier_graph(w, args.level, config)
    vals = markov_eigenvalues_banded(g, config)
    target = IntervalUnion.parse(args.target) if args.target else None
    rows = []
    ok = True
    for i, v in enumerate(sorted(float(x) for x in vals)):
        inside = target.contains(v, config.membership_tol) if target else True
        ok = ok and inside
        rows.append((args.level, i, repr(v), inside))
    _write(args.output, export_eigenvalue_csv(rows))
    return OK if ok else VERIFY_FAIL


def cmd_sweep(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    target = IntervalUnion.parse(args.target) if args.target else GRIG_TARGET
    result = spectrum_sweep(w, args.max_level, target, config)
    rows = []
    for n, rep in result.reports.items():
        for i, (v, flag) in enumerate(zip(rep.eigenvalues, rep.in_target)):
            rows.append((n, i, repr(v), flag))
    _write(args.output, export_eigenvalue_csv(rows))
    for n, hd in result.hausdorff_by_level.items():
        print(f"level {n}: hausdorff(target -> cumulative) = {hd:.3g}")
    return OK if result.all_contained else VERIFY_FAIL


def cmd_cover_verify(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    c = level_projection_covering(w, args.source_level, args.target_level, config)
    if args.corrupt_swap:
        keys = sorted(c.edge_map)
        a = keys[0]
        b = next(k for k in keys[1:] if c.edge_map[k] != c.edge_map[a])
        c.edge_map[a], c.edge_map[b] = c.edge_map[b], c.edge_map[a]
    report = cov.verify_covering(c)
    fibers = {}
    for v in c.source.vertices:
        fibers.setdefault(c.phi(v), 0)
        fibers[c.phi(v)] += 1
    print(f"fiber sizes: {sorted(set(fibers.values()))}")
    if report.ok:
        print("covering verified")
        return OK
    print(f"covering violated: {report.witness}")
    return VERIFY_FAIL


def cmd_hulanicki(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    radii = [int(r) for r in args.radii.split(",")]
    window = max(radii) + (1 << args.target_level) + 1
    ball = cayley_ball(w, window, args.target_level, config)
    report = cov.spectral_inclusion_report(ball.covering, radii, mode=args.mode)
    ok = True
    for lam, res in zip(report.eigenvalues, report.best_residuals):
        print(f"lambda = {lam:+.6f}: best residual {res:.6f}")
    for rec in report.records:
        if rec.theoretical_bound is not None:
            ok = ok and rec.residual**2 <= rec.theoretical_bound + 1e-9
    print("bound soundness: " + ("ok" if ok else "VIOLATED"))
    return OK if ok else VERIFY_FAIL


def cmd_growth(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    rep = ball_sizes(w, args.radius, config)
    print(f"gamma(0..{args.radius}) = {list(rep.sizes)}")
    print(f"verified to depth {rep.depth} (census stable: {rep.stable})")
    return OK


def cmd_relators(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    ok = True
    for level in range(1, args.k + 1):
        for rel in relators_U(w, level):
            trivial = verify_trivial(rel, w, args.depth)
            in_comm = abelianization_class(rel) == (0, 0, 0)
            ok = ok and trivial.trivial and in_comm
            print(
                f"U_{level}: {rel[:40]}{'...' if len(rel) > 40 else ''} "
                f"trivial@{args.depth}={trivial.trivial} commutator={in_comm}"
            )
    return OK if ok else VERIFY_FAIL


def cmd_dihedral(args, config) -> int:
    w = OmegaWord.parse(args.omega) if args.omega else None
    ok = True
    if w is not None:
        rep = dihedral_reduction_check(w, args.depth)
        print(
            f"depth {rep.depth}: T^2=I {rep.t_squared_is_identity}, "
            f"4M=A+2T+I {rep.markov_identity_holds}"
        )
        ok = rep.t_squared_is_identity and rep.markov_identity_holds
    spec = dihedral_weighted_spectrum(args.x, args.y)
    print(f"exact spectrum: {spec.exact}")
    shifted = spec.exact.affine(1.0, args.shift)
    print(f"shifted by {args.shift}: {shifted}")
    for length in spec.truncation_lengths:
        print(f"truncation L={length}: boundary error {spec.boundary_errors[length]:.3g}")
    return OK if ok else VERIFY_FAIL


def cmd_moments(args, config) -> int:
    w = OmegaWord.parse(args.omega)
    g = schreier_graph(w, args.level, config)
    v = g.vertices[args.vertex]
    seq = spectral_moments(g, v, args.count, config)
    ref = moments_via_eigendecomposition(g, v, args.count)
    dev = max(abs(a - b) for a, b in zip(seq.moments, ref.moments))
    print(f"moments at {v}: {[round(m, 12) for m in seq.moments]}")
    print(f"dual-method deviation: {dev:.3g}")
    print(f"hankel min eigenvalue: {seq.hankel_min_eigenvalue():.3g}")
    return OK if dev <= 1e-10 else VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treespec")
    ap.add_argument("--max-vertices", type=int, default=None)
    ap.add_argument("--max-depth", type=int, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schreier", help="level Schreier graph")
    _add_omega(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_schreier)

    p = sub.add_parser("upsilon", help="model path-with-loops graph")
    p.add_argument("--kind", choices=["finite", "ray", "line"], default="finite")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--exception", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_upsilon)

    p = sub.add_parser("spectrum", help="single-level Markov spectrum")
    _add_omega(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--target", default=None, help='e.g. "[-0.5,0]u[0.5,1]"')
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="spectra of all levels vs a target set")
    _add_omega(p)
    p.add_argument("--max-level", type=int, required=True)
    p.add_argument("--target", default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cover-verify", help="verify a level projection covering")
    _add_omega(p)
    p.add_argument("--source-level", type=int, required=True)
    p.add_argument("--target-level", type=int, required=True)
    p.add_argument("--corrupt-swap", action="store_true", help="inject a violation")
    p.set_defaults(func=cmd_cover_verify)

    p = sub.add_parser("hulanicki", help="residual harness on a Cayley-ball cover")
    _add_omega(p)
    p.add_argument("--target-level", type=int, required=True)
    p.add_argument("--radii", default="4,6,8")
    p.add_argument("--mode", choices=["subexp", "finite-target"], default="subexp")
    p.set_defaults(func=cmd_hulanicki)

    p = sub.add_parser("growth", help="ball sizes of the group")
    _add_omega(p)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("relators", help="relator families and their checks")
    _add_omega(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(func=cmd_relators)

    p = sub.add_parser("dihedral", help="dihedral reduction and line spectrum")
    p.add_argument("--omega", default=None)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--x", type=float, default=0.25)
    p.add_argument("--y", type=float, default=0.5)
    p.add_argument("--shift", type=float, default=0.25)
    p.set_defaults(func=cmd_dihedral)

    p = sub.add_parser("moments", help="spectral-measure moments at a vertex")
    _add_omega(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.set_defaults(func=cmd_moments)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    overrides = {}
    if args.max_vertices is not None:
        overrides["max_vertices"] = args.max_vertices
    if args.max_depth is not None:
        overrides["max_depth"] = args.max_depth
    config = RunConfig(**overrides) if overrides else RunConfig()
    _echo_config(config)
    try:
        return args.func(args, config)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
