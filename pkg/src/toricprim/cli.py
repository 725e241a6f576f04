"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 domain precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .catalog import catalog_fano5_index2, enumerate_smooth_fano_surfaces
from .checks import corrupted_entry, run_checks
from .constructions import (ConstructionError, blow_down, direct_fan_from_relations,
                            h_construction, parse_relation, product_fan,
                            projective_space_fan, projectivize_split)
from .fan import Fan, FanError, fan_from_json, fan_to_json
from .isomorphism import find_isomorphism
from .mori import (anticanonical_class, classify_relation_type, fano_index, is_extremal,
                   is_fano, picard_rank)
from .relations import all_primitive_relations, primitive_relation

EXIT_OK, EXIT_IO, EXIT_DOMAIN = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class VerifyReport:
    smooth: bool
    complete: bool
    fano: bool
    dim: int
    rays: int
    picard_rank: Optional[int]
    index: Optional[int] = None
    anticanonical: Optional[list[int]] = None
    relations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        data = asdict(self)
        if self.index is None:
            del data["index"]
            del data["anticanonical"]
        return data

    def render(self) -> str:
        lines = [
            f"dim {self.dim}, rays {self.rays}",
            f"smooth: {str(self.smooth).lower()}",
            f"complete: {str(self.complete).lower()}",
        ]
        if self.picard_rank is not None:
            lines.append(f"picard rank: {self.picard_rank}")
        lines.append(f"fano: {str(self.fano).lower()}")
        if self.index is not None:
            lines.append(f"-K = {tuple(self.anticanonical)}, index = {self.index}")
        for r in self.relations:
            flags = [f"degree {r['degree']}", r["type"]]
            if r["extremal"]:
                flags.append("extremal")
            if r["degree"] <= 0:
                flags.append("NOT POSITIVE")
            lines.append(f"  {r['text']}    [{', '.join(flags)}]")
        return "\n".join(lines)


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


def _load(path: str) -> Fan:
    try:
        return fan_from_json(_read(path))
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}", EXIT_IO) from None
    except FanError as exc:
        raise CliError(f"{path}: invalid fan: {exc}", EXIT_IO) from None


def _require_smooth_complete(fan: Fan) -> None:
    if not fan.smooth:
        raise CliError("fan is not smooth", EXIT_DOMAIN)
    if not fan.complete:
        raise CliError("fan is not complete", EXIT_DOMAIN)


def verify_report(fan: Fan) -> VerifyReport:
    fan = fan.canonical()
    smooth, complete = fan.smooth, fan.complete
    if not (smooth and complete):
        return VerifyReport(smooth, complete, False, fan.dim, fan.n_rays, None)
    rels = []
    for rel in all_primitive_relations(fan):
        entry = rel.to_json()
        entry["text"] = rel.render()
        entry["extremal"] = is_extremal(fan, rel.collection)
        entry["type"] = classify_relation_type(fan, rel).tag
        rels.append(entry)
    fano = is_fano(fan)
    report = VerifyReport(smooth, complete, fano, fan.dim, fan.n_rays, picard_rank(fan),
                          relations=rels)
    if fano:
        report.index = fano_index(fan)
        report.anticanonical = list(anticanonical_class(fan).coords)
    return report


def cmd_verify(args) -> int:
    report = verify_report(_load(args.path))
    if args.json:
        print(json.dumps(report.to_json()))
    elif not args.quiet:
        print(report.render())
    return EXIT_OK if report.smooth and report.complete else EXIT_DOMAIN


def cmd_relations(args) -> int:
    fan = _load(args.path).canonical()
    _require_smooth_complete(fan)
    rels = all_primitive_relations(fan)
    if args.json:
        print(json.dumps([r.to_json() for r in rels]))
    else:
        for r in rels:
            print(f"{r.render()}    (degree {r.degree})")
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = _load(args.a), _load(args.b)
    _require_smooth_complete(a)
    _require_smooth_complete(b)
    m = find_isomorphism(a, b)
    if args.json:
        print(json.dumps({"isomorphic": m is not None,
                          "matrix": [list(r) for r in m.matrix] if m else None}))
    elif m is None:
        print("not isomorphic")
    else:
        for row in m.matrix:
            print(" ".join(f"{x:>3}" for x in row))
    return EXIT_OK


def cmd_catalog(args) -> int:
    cat = catalog_fano5_index2()
    if args.emit is not None:
        match = [e for e in cat if e.id == args.emit]
        if not match:
            raise CliError(f"no catalog entry {args.emit}; ids are 1-10", EXIT_DOMAIN)
        print(fan_to_json(match[0].fan))
        return EXIT_OK
    if args.json:
        print(json.dumps([{"id": e.id, "name": e.name, "picard_rank": e.picard_rank,
                           "rays": e.fan.n_rays} for e in cat]))
    else:
        for e in cat:
            print(f"{e.id:>2}  {e.name}  (Picard rank {e.picard_rank})")
    return EXIT_OK


def cmd_classify_check(args) -> int:
    cat = catalog_fano5_index2()
    if args.corrupt is not None:
        cat = [corrupted_entry(e) if e.id == args.corrupt else e for e in cat]
    checks = run_checks(cat)
    if args.json:
        print(json.dumps([c.to_json() for c in checks]))
    else:
        for c in checks:
            if args.quiet and c.passed:
                continue
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
            if not c.passed and c.detail:
                line += f"  ({c.detail})"
            print(line)
        n_fail = sum(not c.passed for c in checks)
        print(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_DOMAIN


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {text!r}", EXIT_IO) from None


def cmd_construct(args) -> int:
    verb = args.verb
    if verb == "projective-space":
        fan = projective_space_fan(args.dim)
    elif verb == "product":
        fans = [_load(p) for p in args.inputs]
        if len(fans) < 2:
            raise CliError("product needs at least two fans", EXIT_DOMAIN)
        fan = product_fan(*fans)
    elif verb == "projectivize":
        base = _load(args.input)
        fan = projectivize_split(base, [_int_list(t) for t in args.twist])
    elif verb == "h":
        fan = h_construction(_load(args.input), args.ray, args.p)
    elif verb == "blowdown":
        src = _load(args.input)
        _require_smooth_complete(src)
        try:
            rel = primitive_relation(src, _int_list(args.collection))
        except FanError as exc:
            raise CliError(str(exc), EXIT_DOMAIN) from None
        fan = blow_down(src, rel)
    elif verb == "from-relations":
        fan = direct_fan_from_relations(args.dim, [parse_relation(r) for r in args.relation])
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown verb {verb}", EXIT_IO)
    print(fan_to_json(fan))
    return EXIT_OK


def cmd_enumerate_surfaces(args) -> int:
    reps = enumerate_smooth_fano_surfaces(args.bound, index=args.index)
    if args.json:
        print(json.dumps([json.loads(fan_to_json(f)) for f in reps]))
        return EXIT_OK
    for f in reps:
        degrees = sorted(r.degree for r in all_primitive_relations(f))
        print(f"rays {f.n_rays}  index {fano_index(f)}  degrees {degrees}  {fan_to_json(f)}")
    if not args.quiet:
        print(f"{len(reps)} isomorphism classes")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress non-essential output")

    parser = argparse.ArgumentParser(
        prog="toricprim", description="Primitive collections of smooth complete toric fans.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--quiet", action="store_true", default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a fan and list its relations")
    p.add_argument("path", help="fan JSON file, or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("relations", parents=[common], help="print primitive relations")
    p.add_argument("path")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("iso", parents=[common], help="decide whether two fans are isomorphic")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("catalog", parents=[common], help="the ten Fano 5-folds of index 2")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="list entries (default)")
    g.add_argument("--emit", type=int, metavar="ID", help="print the fan of entry ID as JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("classify-check", parents=[common], help="run the verification suite")
    p.add_argument("--corrupt", type=int, metavar="ID",
                   help="test mode: replace entry ID by a fan of index 1")
    p.set_defaults(func=cmd_classify_check)

    p = sub.add_parser("construct", parents=[common], help="build a fan; prints JSON")
    verbs = p.add_subparsers(dest="verb", required=True)
    v = verbs.add_parser("projective-space", help="fan of P^d")
    v.add_argument("--dim", type=int, required=True)
    v = verbs.add_parser("product", help="product of two or more fans")
    v.add_argument("inputs", nargs="+")
    v = verbs.add_parser("projectivize", help="P(O + O(D_1) + ... + O(D_r)) over a base fan")
    v.add_argument("--input", required=True)
    v.add_argument("--twist", action="append", required=True,
                   help="coefficients of D_j on the base rays, comma-separated; repeat per summand")
    v = verbs.add_parser("h", help="replace ray x by p rays summing to it")
    v.add_argument("--input", required=True)
    v.add_argument("--ray", type=int, required=True, help="0-based index into the input's rays")
    v.add_argument("--p", type=int, default=2)
    v = verbs.add_parser("blowdown", help="contract along z_1+...+z_p = x")
    v.add_argument("--input", required=True)
    v.add_argument("--collection", required=True, help="0-based ray indices of z_1..z_p")
    v = verbs.add_parser("from-relations", help="splitting fan from its primitive relations")
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--relation", action="append", required=True,
                   help='e.g. "x1+x2+x3=x4" (1-based labels); repeat per relation')
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("enumerate-surfaces", parents=[common],
                       help="brute-force smooth toric del Pezzo surfaces")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--index", type=int, default=None)
    p.set_defaults(func=cmd_enumerate_surfaces)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ConstructionError, FanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
