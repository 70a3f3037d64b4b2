"""Command-line driver: build energies, reduce, solve, assemble, verify.

Subcommands:

  build       write the energy chain (k-body spin/boolean, 2-body boolean/
              spin), the Ising file, and a manifest for one method/size
  search      solve a method's energy and assemble + verify the matrix
  solve       minimise a polynomial or Ising file directly
  prototypes  stream the filtered solution prototypes for (n, m)
  verify      orthogonality-check a matrix file
  quadratize  reduce a boolean polynomial file to 2-body form

Exit codes: 0 success, 1 no solution found, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import constructions as cons
from . import hadamard as hm
from . import ising
from . import polynom
from .quadratize import AncillaMap, compute_delta, quadratize
from . import solver
from .polynom import Domain, MultilinearPoly

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_USAGE = 2
EXIT_IO = 3

AUTO_EXHAUSTIVE_LIMIT = 22  # logical-variable threshold for the auto solver

METHODS = ("williamson", "baumert-hall", "turyn", "extended-turyn")


class UsageError(Exception):
    pass


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _unsigned(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_unsigned, default=0, help="RNG seed (default 0)")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--reads", type=int, default=1000, help="annealing reads")
    common.add_argument("--sweeps", type=int, default=1000, help="annealing sweeps")
    common.add_argument("--cap", type=int, default=26, help="exhaustive bit cap")

    method = argparse.ArgumentParser(add_help=False)
    method.add_argument("--method", required=True, choices=METHODS)
    method.add_argument("--k", type=int, help="block order (williamson/baumert-hall)")
    method.add_argument("--n", type=int, help="sequence length (turyn/extended-turyn)")
    method.add_argument("--m", type=int, default=2, help="prototype end fill (extended-turyn)")
    method.add_argument(
        "--prototype-index", type=int, default=None,
        help="restrict extended-turyn to one prototype (build uses 0 by default)",
    )

    parser = argparse.ArgumentParser(
        prog="hadsearch",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common, method], help="write the energy chain")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", parents=[common, method], help="solve and assemble")
    p.add_argument("--solver", choices=("auto", "exhaustive", "anneal"), default="auto")
    p.add_argument("--beta-start", type=float, default=None)
    p.add_argument("--beta-end", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--keep-failures", action="store_true",
                   help="write matrix artifacts even when verification fails")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("solve", parents=[common], help="minimise a model file")
    p.add_argument("model", help="polynomial or Ising text file")
    p.add_argument("--solver", choices=("auto", "exhaustive", "anneal"), default="auto")
    p.add_argument("--beta-start", type=float, default=None)
    p.add_argument("--beta-end", type=float, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--all-ground", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("prototypes", parents=[common], help="stream filtered prototypes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_prototypes)

    p = sub.add_parser("verify", help="orthogonality-check a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("quadratize", parents=[common], help="reduce a boolean polynomial")
    p.add_argument("poly", help="boolean polynomial file")
    p.set_defaults(func=cmd_quadratize)
    return parser


# -- method plumbing -----------------------------------------------------------


def _method_size(args) -> int:
    if args.method in ("williamson", "baumert-hall"):
        if args.k is None:
            raise UsageError(f"--k is required for method {args.method}")
        if args.k % 2 == 0 or args.k < 3:
            raise UsageError(f"method {args.method} needs odd k >= 3, got {args.k}")
        return args.k
    if args.n is None:
        raise UsageError(f"--n is required for method {args.method}")
    if args.n % 2 or args.n < 4:
        raise UsageError(f"method {args.method} needs even n >= 4, got {args.n}")
    if args.method == "extended-turyn" and not 1 <= args.m < args.n / 2:
        raise UsageError(f"extended-turyn needs 1 <= m < n/2, got m={args.m}")
    return args.n


def _energy_for(args, proto: cons.PrototypeSpec | None = None) -> MultilinearPoly:
    size = _method_size(args)
    if args.method in ("williamson", "baumert-hall"):
        return cons.williamson_energy(size)
    if args.method == "turyn":
        return cons.turyn_energy(size)
    assert proto is not None
    return cons.extended_energy(proto)


def _prototype_list(args) -> list[cons.PrototypeSpec]:
    protos = list(cons.enumerate_prototypes(args.n, args.m))
    if not protos:
        raise UsageError(f"no prototypes pass the filter for n={args.n}, m={args.m}")
    if args.prototype_index is not None:
        if not 0 <= args.prototype_index < len(protos):
            raise UsageError(
                f"prototype index {args.prototype_index} out of range 0..{len(protos) - 1}"
            )
        return [protos[args.prototype_index]]
    return protos


def _assemble(args, values: Sequence[int], proto: cons.PrototypeSpec | None) -> hm.SignMatrix:
    """Matrix for one method from a solved logical assignment."""
    if args.method in ("williamson", "baumert-hall"):
        rows = cons.williamson_first_rows(args.k, values)
        blocks = [hm.circulant(r) for r in rows]
        if args.method == "williamson":
            return hm.williamson_array(*blocks)
        return hm.baumert_hall_array(*blocks)
    if args.method == "turyn":
        X, Y, Z, W = cons.turyn_sequences_from_values(args.n, values)
    else:
        X, Y, Z, W = cons.extended_sequences_from_values(proto, values)
    A, B, C, D = cons.base_sequences(X, Y, Z, W)
    T = cons.t_sequences(A, B, C, D)
    seeds = cons.seed_sequences(*T)
    return hm.goethals_seidel(*[hm.circulant(s) for s in seeds])


def _build_chain(energy: MultilinearPoly):
    ek_q = energy.spin_to_boolean()
    if ek_q.degree() > 2:
        e2_q, amap = quadratize(ek_q)
    else:
        e2_q, amap = ek_q, AncillaMap(entries=(), delta=compute_delta(ek_q))
    e2_s = e2_q.boolean_to_spin()
    model = ising.from_quadratic(e2_s)
    return ek_q, e2_q, e2_s, model, amap


def _write_manifest(path, pairs: list[tuple[str, object]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fp:
        for key, value in pairs:
            fp.write(f"{key}={value}\n")


# -- subcommands ----------------------------------------------------------------


def cmd_build(args) -> int:
    size = _method_size(args)
    proto = None
    if args.method == "extended-turyn":
        index = 0 if args.prototype_index is None else args.prototype_index
        args.prototype_index = index
        proto = _prototype_list(args)[0]
    energy = _energy_for(args, proto)
    ek_q, e2_q, e2_s, model, amap = _build_chain(energy)
    os.makedirs(args.out, exist_ok=True)
    join = lambda name: os.path.join(args.out, name)
    polynom.save_poly(energy, join("ek_s.poly"))
    polynom.save_poly(ek_q, join("ek_q.poly"))
    polynom.save_poly(e2_q, join("e2_q.poly"))
    polynom.save_poly(e2_s, join("e2_s.poly"))
    ising.save_ising(model, join("model.ising"))
    normalized, _scale = ising.normalize_for_export(model)
    with open(join("model_normalized.ising"), "w", encoding="utf-8", newline="\n") as fp:
        ising.write_normalized(normalized, fp)
    logical = energy.nvars
    pairs: list[tuple[str, object]] = [
        ("method", args.method),
        ("k" if args.method in ("williamson", "baumert-hall") else "n", size),
    ]
    if proto is not None:
        pairs += [("m", args.m), ("prototype_index", args.prototype_index),
                  ("prototype", proto.to_line())]
    pairs += [
        ("logical", logical),
        ("ancillas", len(amap.entries)),
        ("total", logical + len(amap.entries)),
        ("delta", amap.delta),
    ]
    pairs += [(f"ancilla_{a}", f"{i},{j}") for a, (i, j) in amap.entries]
    _write_manifest(join("manifest.txt"), pairs)
    print(f"wrote energy chain for {args.method} to {args.out}")
    return EXIT_OK


def _solve_energy(args, energy: MultilinearPoly):
    """Solve one method energy; returns (sampleset, best logical values)."""
    logical = energy.nvars
    mode = args.solver
    if mode == "auto":
        mode = "exhaustive" if logical <= AUTO_EXHAUSTIVE_LIMIT else "anneal"
    if mode == "exhaustive":
        sset = solver.exhaustive_min(energy, cap=args.cap, all_ground=True)
        best = sset.best()
        return sset, list(best.values)
    _, _, _, model, amap = _build_chain(energy)
    sset = solver.anneal(
        model,
        reads=args.reads,
        sweeps=args.sweeps,
        beta_start=args.beta_start,
        beta_end=args.beta_end,
        seed=args.seed,
        workers=args.workers,
    )
    best = sset.best()
    return sset, list(best.values[:logical])


def cmd_search(args) -> int:
    size = _method_size(args)
    os.makedirs(args.out, exist_ok=True)
    join = lambda name: os.path.join(args.out, name)

    candidates: list[cons.PrototypeSpec | None]
    if args.method == "extended-turyn":
        candidates = list(_prototype_list(args))
    else:
        candidates = [None]

    last_sset = None
    failed_candidate = None
    matrix = None
    chosen_proto = None
    proto_index = None
    for idx, proto in enumerate(candidates):
        energy = _energy_for(args, proto)
        sset, values = _solve_energy(args, energy)
        last_sset = sset
        if sset.min_energy != 0:
            continue
        try:
            candidate = _assemble(args, values, proto)
        except (ValueError, AssertionError):
            continue  # best sample does not complete to a valid pipeline input
        ok, _D = hm.verify(candidate)
        if ok:
            matrix = candidate
            chosen_proto = proto
            proto_index = idx
            break
        failed_candidate = candidate

    assert last_sset is not None
    with open(join("samples.txt"), "w", encoding="utf-8", newline="\n") as fp:
        solver.write_samples(last_sset, fp)

    order = _expected_order(args, size)
    manifest: list[tuple[str, object]] = [
        ("method", args.method),
        ("k" if args.method in ("williamson", "baumert-hall") else "n", size),
        ("order", order),
        ("seed", args.seed),
        ("min_energy", last_sset.min_energy),
    ]
    if chosen_proto is not None:
        manifest += [("m", args.m), ("prototype_index", proto_index),
                     ("prototype", chosen_proto.to_line())]

    if matrix is None:
        manifest.append(("verified", "no"))
        _write_manifest(join("manifest.txt"), manifest)
        if args.keep_failures and failed_candidate is not None:
            hm.save_matrix(failed_candidate, join("matrix.txt"))
            with open(join("report.txt"), "w", encoding="utf-8", newline="\n") as fp:
                fp.write(hm.report_line(failed_candidate) + "\n")
        print(f"no verified order-{order} matrix found", file=sys.stderr)
        return EXIT_NO_SOLUTION

    ok, D = hm.verify(matrix)
    assert ok
    hm.save_matrix(matrix, join("matrix.txt"))
    with open(join("matrix.pbm"), "w", encoding="utf-8", newline="\n") as fp:
        hm.write_pbm(matrix, fp)
    with open(join("indicator.pgm"), "w", encoding="utf-8", newline="\n") as fp:
        hm.write_pgm(D, fp)
    report = hm.report_line(matrix)
    with open(join("report.txt"), "w", encoding="utf-8", newline="\n") as fp:
        fp.write(report + "\n")
    manifest.append(("verified", "yes"))
    _write_manifest(join("manifest.txt"), manifest)
    print(report)
    return EXIT_OK


def _expected_order(args, size: int) -> int:
    if args.method == "williamson":
        return 4 * size
    if args.method == "baumert-hall":
        return 12 * size
    return 4 * (3 * size - 1)


def cmd_solve(args) -> int:
    model = _load_model(args.model)
    if isinstance(model, MultilinearPoly):
        nvars = model.nvars
    else:
        nvars = model.nvars
    mode = args.solver
    if mode == "auto":
        mode = "exhaustive" if nvars <= AUTO_EXHAUSTIVE_LIMIT else "anneal"
    if mode == "exhaustive":
        sset = solver.exhaustive_min(model, cap=args.cap, all_ground=args.all_ground)
    else:
        if isinstance(model, MultilinearPoly):
            if model.domain is not Domain.SPIN or model.degree() > 2:
                raise UsageError("anneal needs a quadratic spin model; quadratize first")
            model = ising.from_quadratic(model)
        sset = solver.anneal(
            model, reads=args.reads, sweeps=args.sweeps,
            beta_start=args.beta_start, beta_end=args.beta_end,
            seed=args.seed, workers=args.workers,
        )
    os.makedirs(args.out, exist_ok=True)
    out = os.path.join(args.out, "samples.txt")
    with open(out, "w", encoding="utf-8", newline="\n") as fp:
        solver.write_samples(sset, fp)
    print(f"min energy {sset.min_energy} over {sset.reads} reads -> {out}")
    return EXIT_OK


def _load_model(path):
    with open(path, encoding="utf-8") as fp:
        head = ""
        for raw in fp:
            line = raw.split("#", 1)[0].strip()
            if line:
                head = line
                break
    if head.startswith("domain"):
        return polynom.load_poly(path)
    return ising.load_ising(path)


def cmd_prototypes(args) -> int:
    if args.n % 2 or args.n < 4 or not 1 <= args.m < args.n / 2:
        raise UsageError(f"need even n >= 4 and 1 <= m < n/2, got n={args.n}, m={args.m}")
    os.makedirs(args.out, exist_ok=True)
    out = os.path.join(args.out, f"prototypes_n{args.n}_m{args.m}.txt")
    count = 0
    with open(out, "w", encoding="utf-8", newline="\n") as fp:
        for proto in cons.enumerate_prototypes(args.n, args.m):
            fp.write(proto.to_line() + "\n")
            count += 1
        fp.write(f"# count={count}\n")
    print(f"{count} prototypes -> {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        H = hm.load_matrix(args.matrix)
    except ValueError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = hm.report_line(H)
    if not hm.order_admissible(H.shape[0]):
        print(f"warning: order {H.shape[0]} is not 1, 2, or a multiple of 4", file=sys.stderr)
    print(report)
    ok, _ = hm.verify(H)
    return EXIT_OK if ok else EXIT_NO_SOLUTION


def cmd_quadratize(args) -> int:
    poly = polynom.load_poly(args.poly)
    if poly.domain is not Domain.BOOLEAN:
        raise UsageError("quadratize expects a boolean polynomial file")
    reduced, amap = quadratize(poly)
    os.makedirs(args.out, exist_ok=True)
    out_poly = os.path.join(args.out, "quadratic.poly")
    polynom.save_poly(reduced, out_poly)
    pairs: list[tuple[str, object]] = [
        ("delta", amap.delta),
        ("ancillas", len(amap.entries)),
    ]
    pairs += [(f"ancilla_{a}", f"{i},{j}") for a, (i, j) in amap.entries]
    _write_manifest(os.path.join(args.out, "ancilla_map.txt"), pairs)
    print(f"degree {poly.degree()} -> 2 with {len(amap.entries)} ancillas -> {out_poly}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
