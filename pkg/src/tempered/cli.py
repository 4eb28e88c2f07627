"""Command-line front end.

Every subcommand prints a JSON report on stdout and a one-line summary on
stderr.  Exit status: 0 on success, 2 when a mathematical check fails, 1 on
usage, input or resource errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .chains import (Chain, ChainError, Exponential, Polynomial, boundary, chain_from_json,
                     chain_to_json, random_reduced_chain, weighted_norm)
from .combing import (combing_from_json, contracting_homotopy, homotopy_norm_profile,
                      verify_combing, verify_contraction)
from .groups import Group, GroupError, group_from_json
from .homotopy import MapDomainError, point_map_from_json, verify_homotopy_identity
from .linalg import ComplexError
from .resolutions import (CochainDomainError, ResourceCapError, UnsupportedGroupError,
                          cohomology_report)
from .rips import FiniteMetricSpace, MetricError, build_rips, rips_homology, squares_to_zero

EXIT_OK, EXIT_USAGE, EXIT_CHECK_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def load_json(arg: str):
    """Inline JSON (starting with { or [), '-' for stdin, or a file path."""
    text = arg.strip()
    try:
        if text.startswith(("{", "[")):
            return json.loads(text)
        if text == "-":
            return json.load(sys.stdin)
        return json.loads(Path(arg).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {arg[:60]}: {exc}") from None


def _group(arg, fallback=None) -> Group | None:
    if arg is not None:
        return group_from_json(load_json(arg))
    if fallback is not None:
        return group_from_json(fallback)
    return None


def _chain_list(data, group: Group | None) -> tuple[list[Chain], Group | None]:
    """Accept a chain, a list of chains, or {"group": ..., "chains": [...]}."""
    if isinstance(data, dict) and "chains" in data:
        if group is None and "group" in data:
            group = group_from_json(data["group"])
        items = data["chains"]
    elif isinstance(data, list):
        items = data
    else:
        items = [data]
    if group is None:
        for c in items:
            if isinstance(c, dict) and "group" in c:
                group = group_from_json(c["group"])
                break
    return [chain_from_json(c, group) for c in items], group


def _emit(report, summary: str) -> None:
    print(json.dumps(report, indent=2))
    print(summary, file=sys.stderr)


def _random_chains(group: Group, seed: int, count: int, degrees, radius: int) -> list[Chain]:
    rng = random.Random(seed)
    pts = group.ball(radius)
    return [random_reduced_chain(rng, pts, rng.choice(degrees)) for _ in range(count)]


# -- subcommands -----------------------------------------------------------------

def cmd_group_ball(args) -> int:
    group = _group(args.spec)
    pts = group.ball(args.radius)
    _emit({"group": group.to_json(), "radius": args.radius, "size": len(pts),
           "elements": [group.element_to_json(g) for g in pts]},
          f"ball of radius {args.radius}: {len(pts)} elements")
    return EXIT_OK


def cmd_chain_boundary(args) -> int:
    data = load_json(args.input)
    group = _group(args.group, data.get("group") if isinstance(data, dict) else None)
    c = chain_from_json(data, group)
    if c.degree == 0:
        raise UsageError("boundary is undefined in degree 0; use the augmentation")
    out = boundary(c)
    _emit(chain_to_json(out, group), f"boundary: degree {out.degree}, {len(out)} terms")
    return EXIT_OK


def cmd_chain_norm(args) -> int:
    data = load_json(args.input)
    group = _group(args.group, data.get("group") if isinstance(data, dict) else None)
    if group is None:
        raise UsageError("a group is needed for word lengths (--group or a 'group' key)")
    c = chain_from_json(data, group)
    if args.alpha is not None:
        try:
            spec = Exponential(Fraction(args.alpha))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from None
        desc = {"alpha": str(spec.alpha)}
    else:
        spec = Polynomial(args.k if args.k is not None else 0)
        desc = {"k": spec.k}
    value = weighted_norm(c, group, spec)
    _emit({"norm": str(value), "decimal": f"{float(value):.6f}", "spec": desc},
          f"norm = {value}")
    return EXIT_OK


def cmd_homotopy_verify(args) -> int:
    group = _group(args.group)
    if args.chains is not None:
        chains, group = _chain_list(load_json(args.chains), group)
    else:
        if group is None:
            raise UsageError("--group is required when chains are generated")
        chains = _random_chains(group, args.seed, args.count, [1, 2, 3], args.radius)
    if group is None:
        raise UsageError("a group is needed to interpret the maps")
    f = point_map_from_json(load_json(args.f), group)
    fp = point_map_from_json(load_json(args.fp), group)
    failures = []
    for i, c in enumerate(chains):
        res = verify_homotopy_identity(f, fp, c)
        if not res.ok:
            failures.append({"index": i, "discrepancy": chain_to_json(res.discrepancy, group)})
    ok = not failures
    _emit({"checked": len(chains), "passed": len(chains) - len(failures), "ok": ok,
           "failures": failures},
          f"homotopy identity: {len(chains) - len(failures)}/{len(chains)} chains pass")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_comb_verify(args) -> int:
    comb = combing_from_json(load_json(args.comb))
    rep = verify_combing(comb, args.radius)
    _emit(rep.to_json(comb.group),
          f"combing axioms {'hold' if rep.axioms_ok else 'FAIL'} on ball({args.radius}): "
          f"C_obs={rep.C_obs} S_obs={rep.S_obs}")
    return EXIT_OK if rep.axioms_ok else EXIT_CHECK_FAILED


def cmd_comb_contract(args) -> int:
    comb = combing_from_json(load_json(args.comb))
    group = comb.group
    if args.chains is not None:
        chains, _ = _chain_list(load_json(args.chains), group)
    else:
        chains = _random_chains(group, args.seed, args.count, [0, 1, 2, 3], args.radius)
    results = []
    ok = True
    for c in chains:
        h = contracting_homotopy(comb, c, reduced=not args.unreduced)
        entry = {"input": chain_to_json(c, group), "homotopy": chain_to_json(h, group)}
        if args.check:
            res = verify_contraction(comb, c)
            entry["identity_ok"] = res.ok
            if not res.ok:
                ok = False
                entry["discrepancy"] = chain_to_json(res.discrepancy, group)
        results.append(entry)
    report = {"combing": comb.to_json(), "count": len(chains), "results": results}
    if args.check:
        report["ok"] = ok
    summary = f"contracting homotopy on {len(chains)} chains"
    if args.check:
        summary += ": dH + Hd = id " + ("holds" if ok else "FAILS")
    _emit(report, summary)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_comb_profile(args) -> int:
    comb = combing_from_json(load_json(args.comb))
    prof = homotopy_norm_profile(comb, args.k, args.deg, args.len, args.radius)
    _emit(prof.to_json(comb.group),
          f"profile k={args.k} degree={args.deg}: max ratio {prof.shell_max(0, args.len)}")
    return EXIT_OK


def cmd_cohomology(args) -> int:
    group = _group(args.group)
    report = cohomology_report(group, args.method, args.nmax)
    _emit(report, f"cohomology dims {report['dims']}")
    return EXIT_OK


def cmd_rips(args) -> int:
    space = FiniteMetricSpace.from_json(load_json(args.space))
    try:
        radius = Fraction(args.radius)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad radius {args.radius!r}") from None
    K = build_rips(space, radius, args.maxdim)
    ok = squares_to_zero(K)
    report = {"radius": str(radius), "max_dim": args.maxdim,
              "simplex_counts": [len(level) for level in K.simplices],
              "boundary_squares_to_zero": ok}
    if ok:
        report["dims"] = rips_homology(K)
    _emit(report, f"Rips homology {report.get('dims')}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tempered", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True, parser_class=_Parser)
    gb = g.add_parser("ball", help="enumerate a word-metric ball")
    gb.add_argument("--spec", required=True)
    gb.add_argument("--radius", type=int, required=True)
    gb.set_defaults(func=cmd_group_ball)

    ch = sub.add_parser("chain").add_subparsers(dest="action", required=True, parser_class=_Parser)
    cb = ch.add_parser("boundary", help="simplicial boundary of a chain")
    cb.add_argument("--in", dest="input", required=True)
    cb.add_argument("--group")
    cb.set_defaults(func=cmd_chain_boundary)
    cn = ch.add_parser("norm", help="weighted l1 norm of a chain")
    cn.add_argument("--in", dest="input", required=True)
    cn.add_argument("--group")
    which = cn.add_mutually_exclusive_group()
    which.add_argument("--k", type=int)
    which.add_argument("--alpha")
    cn.set_defaults(func=cmd_chain_norm)

    h = sub.add_parser("homotopy").add_subparsers(dest="action", required=True, parser_class=_Parser)
    hv = h.add_parser("verify", help="check H(f,f') d + d H(f,f') = f'_* - f_*")
    hv.add_argument("--f", required=True)
    hv.add_argument("--fp", required=True)
    hv.add_argument("--chains")
    hv.add_argument("--group")
    hv.add_argument("--seed", type=int, default=0)
    hv.add_argument("--count", type=int, default=20)
    hv.add_argument("--radius", type=int, default=3)
    hv.set_defaults(func=cmd_homotopy_verify)

    c = sub.add_parser("comb").add_subparsers(dest="action", required=True, parser_class=_Parser)
    cv = c.add_parser("verify", help="check the combing axioms on a ball")
    cv.add_argument("--comb", required=True)
    cv.add_argument("--radius", type=int, required=True)
    cv.set_defaults(func=cmd_comb_verify)
    cc = c.add_parser("contract", help="apply the contracting homotopy")
    cc.add_argument("--comb", required=True)
    cc.add_argument("--chains")
    cc.add_argument("--check", action="store_true")
    cc.add_argument("--unreduced", action="store_true",
                    help="accept degree-0 chains outside the augmentation kernel")
    cc.add_argument("--seed", type=int, default=0)
    cc.add_argument("--count", type=int, default=20)
    cc.add_argument("--radius", type=int, default=4)
    cc.set_defaults(func=cmd_comb_contract)
    cp = c.add_parser("profile", help="per-shell norm ratios of the contracting homotopy")
    cp.add_argument("--comb", required=True)
    cp.add_argument("--k", type=int, required=True)
    cp.add_argument("--deg", type=int, required=True)
    cp.add_argument("--len", type=int, required=True)
    cp.add_argument("--radius", type=int, required=True)
    cp.set_defaults(func=cmd_comb_profile)

    co = sub.add_parser("cohomology", help="group cohomology dimensions")
    co.add_argument("--group", required=True)
    co.add_argument("--method", choices=["bar", "resolution"], required=True)
    co.add_argument("--nmax", type=int, default=2)
    co.set_defaults(func=cmd_cohomology)

    r = sub.add_parser("rips", help="Rips complex homology of a finite metric space")
    r.add_argument("--space", required=True)
    r.add_argument("--radius", required=True)
    r.add_argument("--maxdim", type=int, required=True)
    r.set_defaults(func=cmd_rips)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, ChainError, MapDomainError, MetricError, CochainDomainError,
            UnsupportedGroupError, ResourceCapError, ComplexError, KeyError, TypeError,
            ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
