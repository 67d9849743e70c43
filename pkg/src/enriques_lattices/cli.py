"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error (bad flags or input).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import checks, coble, e10, f2
from .class_groups import class_group_row, deck_action_report, local_class_group
from .lattice import (
    Lattice,
    LatticeError,
    discriminant_group,
    isometry_from_json,
    isometry_to_json,
    lattice_invariants,
)
from .roots import ADEType, all_types, build_root_datum, covering_involution_action, node_labels

DEFAULT_SEED = 0
DEFAULT_BOUND = 1


class UsageError(Exception):
    pass


def _load_json(text_or_path: str):
    p = Path(text_or_path)
    try:
        raw = p.read_text() if p.is_file() else text_or_path
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _type(args) -> ADEType:
    if not args.type:
        raise UsageError("--type is required (e.g. --type E8)")
    return ADEType.parse(args.type)


def _lattice(args) -> Lattice:
    if getattr(args, "file", None):
        return Lattice.from_json(_load_json(args.file))
    if getattr(args, "e10", False):
        return e10.build_e10().lattice
    return build_root_datum(_type(args)).lattice


def _emit(args, payload, text: str | None = None):
    if args.json or text is None:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def _bits(v: int) -> str:
    return "".join(str(b) for b in f2.to_bits(v))


def cmd_lattice_info(args) -> int:
    L = _lattice(args)
    inv = lattice_invariants(L)
    payload = {"rank": L.rank, "determinant": inv["determinant"], "is_even": inv["is_even"],
               "signature": list(inv["signature"])}
    text = (f"rank {L.rank}  det {inv['determinant']}  "
            f"{'even' if inv['is_even'] else 'odd'}  signature {inv['signature']}")
    _emit(args, payload, text)
    return 0


def cmd_roots(args) -> int:
    rd = build_root_datum(_type(args))
    payload = rd.root_json()
    if args.list:
        payload["positive_roots"] = [list(r) for r in rd.positive_roots]
    labels = node_labels(rd.type)
    lines = [f"{rd.type}: {len(rd.positive_roots)} positive roots",
             "highest root: " + "  ".join(f"{l}={c}" for l, c in zip(labels, rd.highest_root)),
             "simple roots: " + (", ".join(labels[i] for i in rd.simple_roots) or "none")]
    if args.list:
        lines += [" ".join(str(c) for c in r) for r in rd.positive_roots]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_disc_group(args) -> int:
    D = discriminant_group(_lattice(args))
    _emit(args, D.to_json(),
          f"order {D.order}  invariant factors {list(D.invariant_factors) or '(trivial)'}")
    return 0


def cmd_involution_action(args) -> int:
    t = _type(args)
    sigma = covering_involution_action(t)
    _emit(args, {"type": t.to_json(), "permutation": list(sigma.perm), "labels": node_labels(t)},
          f"{t}: {sigma.describe()}\npermutation {list(sigma.perm)}")
    return 0


def cmd_class_group(args) -> int:
    types = [_type(args)] if args.type else all_types(10)
    if args.type:
        t = types[0]
        cg = local_class_group(t)
        rep = deck_action_report(t)
        payload = {"type": t.to_json(), "group": cg.group.to_json(), **rep.to_json()}
        _emit(args, payload, _table([class_group_row(t)]))
        return 0
    rows = [class_group_row(t) for t in types]
    _emit(args, rows, _table(rows))
    return 0


def _table(rows: list[dict]) -> str:
    cols = list(rows[0])
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    line = lambda r: "  ".join(str(r[c]).ljust(width[c]) for c in cols)  # noqa: E731
    return "\n".join([line({c: c for c in cols})] + [line(r) for r in rows])


def cmd_e10_reduce(args) -> int:
    L = e10.build_e10()
    if args.vector:
        x = _load_json(args.vector)
        if not isinstance(x, list):
            raise UsageError("--vector must be a JSON array")
    else:
        x = e10.random_cone_points(L, 1, args.seed)[0]
    r = e10.chamber_reduce(L, x)
    payload = r.to_json()
    _emit(args, payload, f"input {list(x)}\nword {r.word}\nreduced {r.reduced}\nsteps {r.steps}")
    return 0


def cmd_e10_sigma(args) -> int:
    L = e10.build_e10()
    if args.plane:
        planes = [e10.HyperbolicPlane.from_json(_load_json(args.plane))]
    else:
        planes = e10.find_hyperbolic_planes(args.bound, args.count)
    out = []
    for U in planes:
        s = e10.sigma_u(L, U)
        out.append({**U.to_json(), **isometry_to_json(s), "in_g0": e10.is_in_g0(L, s)})
    text = "\n".join(f"f1={p['f1']} f2={p['f2']} in_g0={p['in_g0']}" for p in out)
    if len(planes) < args.count and not args.plane:
        print(f"warning: only {len(planes)} planes within bound {args.bound}", file=sys.stderr)
    _emit(args, out, text)
    return 0


def cmd_f2_count(args) -> int:
    c = f2.count_isotropic()
    _emit(args, c, f"{c['nonzero_isotropic']} nonzero isotropic vectors "
                   f"({c['total']} including 0, {c['nonisotropic']} non-isotropic)")
    return 0


def _f2_gens(args) -> list[f2.F2Isometry]:
    if args.gens == "reflections":
        return list(f2.reflection_generators())
    if args.gens == "sigma":
        gs = coble.make_generator_set(args.count, args.bound)
        return [f2.reduce_isometry(s) for s in gs.involutions]
    if args.gens == "none":
        return []
    raise UsageError(f"unknown generator family {args.gens!r}")


def _f2_vector(args) -> int:
    if args.vector:
        return f2.from_bits(_load_json(args.vector))
    space = f2.e10_space()
    return next(v for v in range(1, f2.SIZE) if space.q(v) == 0)


def cmd_f2_orbit(args) -> int:
    space = f2.e10_space()
    v = _f2_vector(args)
    orb = f2.orbit(space, v, _f2_gens(args))
    payload = {"vector": f2.to_bits(v), "size": len(orb), "orbit": [f2.to_bits(u) for u in orb]}
    _emit(args, payload, f"orbit of {_bits(v)} under {args.gens}: {len(orb)} vectors")
    return 0


def cmd_ramification(args) -> int:
    space = f2.e10_space()
    v = _f2_vector(args)
    r = f2.ramification_degree(space, v, _f2_gens(args))
    _emit(args, {"vector": f2.to_bits(v), "generators": args.gens, "ramification_degree": r},
          f"ramification degree of {_bits(v)} under {args.gens}: {r}")
    return 0


def _target(args) -> np.ndarray:
    if args.file:
        return isometry_from_json(_load_json(args.file), e10.build_e10().lattice)
    return coble.sample_g0_element(args.sample, args.seed, args.length)


def cmd_g0_check(args) -> int:
    L = e10.build_e10()
    g = _target(args)
    payload = {"in_o_plus": e10.is_in_o_plus(L, g), "in_g0": e10.is_in_g0(L, g),
               **isometry_to_json(g)}
    _emit(args, payload, f"in O+: {payload['in_o_plus']}  in G0: {payload['in_g0']}")
    return 0


def cmd_word_search(args) -> int:
    gens = coble.make_generator_set(args.generators, args.bound, args.seed)
    if args.file:
        target = _target(args)
    else:
        target = coble.sample_g0_element("sigma_word", args.seed, args.length, gens=gens)
    r = coble.bounded_word_search(target, gens, args.depth, args.nodes)
    payload = {**r.to_json(), "generators": gens.to_json()}
    _emit(args, payload, f"{r.status}  word {r.word}  visited {r.visited}  "
                         f"depth {r.depth}/{r.max_depth}  {r.wall_time:.3f}s")
    return 0


def cmd_verify_all(args) -> int:
    report = checks.run_all(args.seed)
    if args.json:
        print(json.dumps({"seed": args.seed, "checks": report}, indent=2))
    else:
        for row in report:
            print(f"[{row['status'].upper()}] {row['check_name']}: {row['details']}")
        n_pass = sum(r["status"] == "pass" for r in report)
        print(f"{n_pass}/{len(report)} checks passed")
    return 0 if all(r["status"] == "pass" for r in report) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (default 0)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="box bound for hyperbolic plane search (default 1)")
    common.add_argument("--depth", type=int, default=coble.DEFAULT_MAX_DEPTH)
    common.add_argument("--nodes", type=int, default=coble.DEFAULT_MAX_NODES)

    p = argparse.ArgumentParser(prog="enriques-lattices", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    for name, func, help_ in [
        ("lattice-info", cmd_lattice_info, "determinant, parity and signature"),
        ("disc-group", cmd_disc_group, "discriminant group L^vee / L"),
    ]:
        sp = add(name, func, help_)
        sp.add_argument("--type", help="ADE type such as A4, D5, E8")
        sp.add_argument("--file", help="lattice JSON file or literal")
        sp.add_argument("--e10", action="store_true", help="use the E10 lattice")

    sp = add("roots", cmd_roots, "highest root, simple roots, positive roots")
    sp.add_argument("--type", required=True)
    sp.add_argument("--list", action="store_true", help="list all positive roots")

    sp = add("involution-action", cmd_involution_action, "diagram action of the covering involution")
    sp.add_argument("--type", required=True)

    sp = add("class-group", cmd_class_group, "local class group table")
    sp.add_argument("--type", help="single type (default: all types up to rank 10)")

    sp = add("e10-reduce", cmd_e10_reduce, "reduce a positive-cone vector into the Vinberg chamber")
    sp.add_argument("--vector", help="JSON array of 10 ints (default: a seeded random cone point)")

    sp = add("e10-sigma", cmd_e10_sigma, "hyperbolic planes and their involutions")
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--plane", help='plane JSON {"f1": [...], "f2": [...]}')

    add("f2-count", cmd_f2_count, "count isotropic vectors of E10 (x) F2")

    for name, func, help_ in [
        ("f2-orbit", cmd_f2_orbit, "orbit of an F2 vector"),
        ("ramification", cmd_ramification, "orbit size of an isotropic F2 class"),
    ]:
        sp = add(name, func, help_)
        sp.add_argument("--vector", help="0/1 JSON array of length 10 (default: first isotropic)")
        sp.add_argument("--gens", default="reflections", choices=["reflections", "sigma", "none"])
        sp.add_argument("--count", type=int, default=5, help="number of sigma_U generators")

    for name, func, help_ in [
        ("g0-check", cmd_g0_check, "test membership in O+ and G0"),
        ("word-search", cmd_word_search, "bounded word search over sigma_U generators"),
    ]:
        sp = add(name, func, help_)
        sp.add_argument("--file", help="isometry JSON file or literal")
        sp.add_argument("--sample", default="sigma_word", choices=["reflection_pair", "sigma_word"])
        sp.add_argument("--length", type=int, default=None, help="sigma word length")
        if name == "word-search":
            sp.add_argument("--generators", type=int, default=5)

    add("verify-all", cmd_verify_all, "run every end-to-end check")
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, LatticeError, coble.InsufficientPlanesError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
