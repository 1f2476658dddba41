"""Command line front end.

Exit status: 0 when every check passes, 1 when any check fails, 2 for
usage errors (bad arguments, malformed specs or files).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import quotient_convolve
from .errors import HomconvError, InvariantError
from .groups import all_subgroups, build_group, is_normal, parse_subgroup
from .involution import a1_involution, group_involution, lr_involution, rl_involution, star_probe
from .measures import invariant_measure
from .scalars import format_fraction
from .suites import SUITES, PairContext, run_suites
from .transfer import GFunction, function_from_json, function_to_json, l1_norm

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# canonical JSON


def _default(obj):
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def digest(payload) -> str:
    raw = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=_default)
    return hashlib.sha256(raw.encode()).hexdigest()


def _emit(payload, out: str | None) -> None:
    text = dumps(payload)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if not text.strip():
        raise UsageError(f"{path} is empty")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _report(command: str, inputs: dict, checks, args, started: float) -> dict:
    rep = {
        "version": __version__,
        "command": command,
        "input_digest": digest(inputs),
        "seed": getattr(args, "seed", None),
        "checks": [c.to_json() for c in checks],
        "status": "fail" if any(c.status == "fail" for c in checks) else "pass",
    }
    if getattr(args, "timing", False):
        rep["timing_seconds"] = round(time.perf_counter() - started, 3)
    return rep


def _status(rep: dict) -> int:
    return EXIT_FAIL if rep["status"] == "fail" else EXIT_OK


# ---------------------------------------------------------------------------
# commands


def _load_group(spec: str):
    if spec.endswith(".json") or Path(spec).is_file():
        return build_group(_read_json(spec))
    return build_group(spec)


def _pair(args):
    group = _load_group(args.group)
    sub = parse_subgroup(group, args.subgroup)
    return group, sub


def _group_inputs(group, sub=None) -> dict:
    out = {"table": [list(r) for r in group.table]}
    if sub is not None:
        out["subgroup"] = sorted(sub.members)
    return out


def _coset_table(space) -> dict:
    return {
        "side": space.side,
        "representatives": [space.group.labels[r] for r in space.reps],
        "coset_of": list(space.coset_of),
    }


def cmd_group(args) -> int:
    group = _load_group(args.group)
    subs = []
    for s in all_subgroups(group):
        subs.append({
            "members": sorted(s.members),
            "labels": [group.labels[m] for m in sorted(s.members)],
            "normal": is_normal(group, s),
        })
    payload = {
        "version": __version__,
        "group": group.to_json(),
        "abelian": group.is_abelian(),
        "element_orders": [group.element_order(x) for x in group.elements],
        "subgroups": subs,
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    group, sub = _pair(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    ctx = PairContext(group, sub, seed=args.seed, samples=args.samples)
    checks = run_suites(ctx, suites)
    inputs = {**_group_inputs(group, sub), "suites": list(suites), "seed": args.seed, "samples": args.samples}
    rep = _report("verify", inputs, checks, args, started)
    rep["pair"] = {
        "group": group.name,
        "subgroup": [group.labels[m] for m in sorted(sub.members)],
        "cosets": {"left": _coset_table(ctx.left.space), "right": _coset_table(ctx.right.space)},
    }
    _emit(rep, args.out)
    return _status(rep)


def _read_function(path, group, measure):
    return function_from_json(_read_json(path), group=group, measure=measure)


def cmd_convolve(args) -> int:
    group, sub = _pair(args)
    measure = invariant_measure(group, sub, args.side)
    phi = _read_function(args.phi, group, measure)
    psi = _read_function(args.psi, group, measure)
    if isinstance(phi, GFunction) or isinstance(psi, GFunction):
        raise UsageError("convolve expects quotient functions")
    out = quotient_convolve(phi, psi)
    summary = {
        "norms": {"phi": str(l1_norm(phi)), "psi": str(l1_norm(psi)), "product": str(l1_norm(out))},
    }
    if args.out:
        Path(args.out).write_text(dumps(function_to_json(out)))
        summary["output"] = args.out
    else:
        summary["result"] = function_to_json(out)
    sys.stdout.write(dumps(summary))
    return EXIT_OK


def cmd_involve(args) -> int:
    group, sub = _pair(args)
    payload = _read_json(args.phi)
    side = payload.get("side", "left") if isinstance(payload, dict) else "left"
    if side not in ("left", "right"):
        raise UsageError(f"unknown side {side!r}")
    measure = invariant_measure(group, sub, side)
    fn = function_from_json(payload, group=group, measure=measure)
    if isinstance(fn, GFunction):
        out = group_involution(fn)
    elif args.approach == "I":
        if side != "left":
            raise UsageError("the A^1 involution acts on left coset functions")
        out = a1_involution(fn)
    elif side == "left":
        out = lr_involution(fn, invariant_measure(group, sub, "right"))
    else:
        out = rl_involution(fn, invariant_measure(group, sub, "left"))
    result = function_to_json(out)
    if args.out:
        Path(args.out).write_text(dumps(result))
    else:
        sys.stdout.write(dumps(result))
    return EXIT_OK


def cmd_probe(args) -> int:
    group = _load_group(args.group)
    subs = [parse_subgroup(group, args.subgroup)] if args.subgroup else all_subgroups(group)
    results = []
    for s in subs:
        try:
            res = star_probe(invariant_measure(group, s), seed=args.seed)
        except InvariantError as exc:
            results.append({"subgroup": sorted(s.members), "error": str(exc)})
            continue
        entry = {
            "subgroup": sorted(s.members),
            "subgroup_labels": [group.labels[m] for m in sorted(s.members)],
            "normal": res.normal,
            "kernel_star_stable": res.kernel_star_stable,
            "dims": res.dims,
        }
        if res.witness is not None:
            entry["witness"] = function_to_json(res.witness)
        results.append(entry)
    payload = {
        "version": __version__,
        "group": group.name,
        "input_digest": digest({**_group_inputs(group), "subgroups": [r["subgroup"] for r in results],
                                "seed": args.seed}),
        "seed": args.seed,
        "results": results,
    }
    _emit(payload, args.out)
    return EXIT_FAIL if any("error" in r for r in results) else EXIT_OK


def _check_L(L: int) -> None:
    from .sphere import MAX_L

    if L < 1:
        raise UsageError(f"--L {L}: degenerate grid, need L >= 1")
    if L > MAX_L:
        raise UsageError(f"--L {L} is above the limit {MAX_L}")


def cmd_sphere(args) -> int:
    from .sphere import sphere_convolve, sphere_from_json, sphere_to_json
    from .sphere_checks import sphere_suite

    started = time.perf_counter()
    if args.action == "verify":
        _check_L(args.L)
        checks = sphere_suite(args.L, args.seed)
        rep = _report("sphere verify", {"L": args.L, "seed": args.seed}, checks, args, started)
        rep["L"] = args.L
        _emit(rep, args.out)
        return _status(rep)
    f = sphere_from_json(_read_json(args.f))
    g = sphere_from_json(_read_json(args.g))
    _check_L(f.grid.L)
    out = sphere_convolve(f, g)
    _emit(sphere_to_json(out), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homconv", description="Convolution and involution on coset spaces G/H.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, subgroup_required=True):
        sp.add_argument("group", help='group spec, e.g. "cyclic:4", "symmetric:3" or a JSON table file')
        sp.add_argument("--subgroup", required=subgroup_required,
                        help='comma separated element ids or labels, e.g. "0,2" or "e,(12)"')
        sp.add_argument("--out", help="write the JSON output here instead of stdout")
        sp.add_argument("--format", choices=["json"], default="json")

    g = sub.add_parser("group", help="describe a group and its subgroups")
    g.add_argument("group")
    g.add_argument("--out")
    g.add_argument("--format", choices=["json"], default="json")
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="run verification suites on one (G, H) pair")
    common(v)
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=10, help="random samples per check")
    v.add_argument("--timing", action="store_true", help="record wall time (breaks byte stability)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("convolve", help="quotient convolution of two function files")
    common(c)
    c.add_argument("phi")
    c.add_argument("psi")
    c.add_argument("--side", choices=["left", "right"], default="left")
    c.set_defaults(func=cmd_convolve)

    i = sub.add_parser("involve", help="apply an involution to a function file")
    common(i)
    i.add_argument("phi")
    i.add_argument("--approach", choices=["I", "II"], default="I",
                   help="I: involution on left-H-invariant functions; II: left/right involution-type map")
    i.set_defaults(func=cmd_involve)

    pr = sub.add_parser("probe", help="kernel star-stability versus normality")
    common(pr, subgroup_required=False)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_probe)

    s = sub.add_parser("sphere", help="S^2 = SO(3)/SO(2) quadrature backend")
    ssub = s.add_subparsers(dest="action", required=True)
    sv = ssub.add_parser("verify", help="run the sphere checks")
    sv.add_argument("--L", type=int, default=8)
    sv.add_argument("--seed", type=int, default=0)
    sv.add_argument("--out")
    sv.add_argument("--format", choices=["json"], default="json")
    sv.add_argument("--timing", action="store_true")
    sc = ssub.add_parser("convolve", help="convolve two sphere function files")
    sc.add_argument("f")
    sc.add_argument("g")
    sc.add_argument("--out")
    sc.add_argument("--format", choices=["json"], default="json")
    s.set_defaults(func=cmd_sphere)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, HomconvError, ValueError) as exc:
        sys.stderr.write(f"homconv: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
