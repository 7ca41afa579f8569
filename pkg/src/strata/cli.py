"""Command-line interface: ``strata atlas|subsystems|classify|roots|verify``."""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .atlas_io import load_atlas, render_json
from .classifier import PointSupport, is_polystable, support_subsystem
from .render import render_ascii, render_dot
from .root_systems import InvalidTypeError, build_root_system, mask_indices, parse_type
from .subsystems import DEFAULT_MAX_RANK, CapabilityError, popcount, root_lengths
from .verify import compare, load_corpus

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_PARSE = 3
EXIT_CAPABILITY = 4
EXIT_IO = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: Optional[str]) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_atlas(args) -> int:
    atlas = load_atlas(parse_type(args.type), max_rank=args.max_rank, use_cache=not args.no_cache)
    if args.format == "json":
        text = render_json(atlas)
    elif args.format == "dot":
        text = render_dot(atlas, fine=args.fine)
    else:
        text = render_ascii(atlas, fine=args.fine)
    _emit(text, args.out)
    return EXIT_OK


def cmd_subsystems(args) -> int:
    atlas = load_atlas(parse_type(args.type), max_rank=args.max_rank, use_cache=not args.no_cache)
    names = atlas.coarse.names
    print(f"{'#':>4}  {'label':<10} {'rank':>4} {'|Psi|':>5} {'orbit':>5} {'class':<12} roots")
    n = 0
    for i, psi in enumerate(atlas.subsystems):
        cid = atlas.class_of[psi]
        c = atlas.classes[cid]
        if args.label is not None and str(c.label) != args.label:
            continue
        n += 1
        print(f"{i:>4}  {str(c.label):<10} {c.rank:>4} {popcount(psi):>5} {cid:>5} {names[cid]:<12} {mask_indices(psi)}")
    print(f"{n} subsystems")
    return EXIT_OK


def _parse_support(args, rs) -> List[int]:
    out: List[int] = []
    if args.support:
        try:
            out += [int(x) for x in args.support.split(",") if x.strip()]
        except ValueError as e:
            raise UsageError(f"bad --support list {args.support!r}") from e
        bad = [i for i in out if not 0 <= i < len(rs.roots)]
        if bad:
            raise UsageError(f"root indices out of range 0..{len(rs.roots) - 1}: {bad}")
    if args.support_roots:
        for chunk in args.support_roots.split(";"):
            if not chunk.strip():
                continue
            try:
                v = tuple(int(x) for x in chunk.split(","))
            except ValueError as e:
                raise UsageError(f"bad root coordinates {chunk!r}") from e
            if v not in rs.index:
                raise UsageError(f"{list(v)} is not a root of {rs.name} (coordinates in the simple-root basis)")
            out.append(rs.index[v])
    return sorted(set(out))


def cmd_classify(args) -> int:
    atlas = load_atlas(parse_type(args.type), max_rank=args.max_rank, use_cache=not args.no_cache)
    rs = atlas.rs
    p = PointSupport.of(_parse_support(args, rs), args.zero)
    psi = support_subsystem(rs, p)
    cid = atlas.class_of[psi]
    c = atlas.classes[cid]
    lengths = root_lengths(rs, psi)
    label = str(c.label) + (f" ({lengths})" if lengths else "")
    print(f"support: {sorted(p.support)}{' + zero weight' if p.has_zero_weight else ''}")
    print(f"stabilizer subsystem Phi(X,Y): {label}, roots {mask_indices(psi)}")
    if is_polystable(rs, p):
        print("polystable: yes")
        print(f"fine stratum: subsystem #{atlas.subsystems.index(psi)} {mask_indices(psi)}")
        print(f"coarse stratum: class {atlas.coarse.names[cid]} (id {cid}, dim {c.dim_top})")
    else:
        print("polystable: no")
        print("not polystable; no stratum assigned")
    return EXIT_OK


def cmd_roots(args) -> int:
    rs = build_root_system(parse_type(args.type))
    for i, r in enumerate(rs.roots):
        tag = " simple" if i in rs.simple_indices else ""
        print(f"{i:>4}  {list(r)}  |r|^2={rs.norms[i]}{tag}")
    return EXIT_OK


def _verify_one(item):
    expected, max_rank = item
    atlas = load_atlas(parse_type(expected.type_name), max_rank=max_rank, use_cache=False)
    return compare(atlas, expected)


def cmd_verify(args) -> int:
    types = [t for t in args.types.split(",") if t] if args.types else None
    try:
        corpus = load_corpus(args.corpus, types)
    except (OSError, ValueError) as e:
        print(f"corpus error: {e}", file=sys.stderr)
        return EXIT_IO
    if not corpus:
        print("corpus is empty", file=sys.stderr)
        return EXIT_IO
    items = [(d, args.max_rank) for d in corpus]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_one, items))
    else:
        results = [_verify_one(it) for it in items]
    for r in results:
        print(r.render())
    failed = [r.type_name for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} diagrams match" + (f"; failed: {', '.join(failed)}" if failed else ""))
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="strata", description=__doc__)
    parser.add_argument("--version", action="version", version=f"strata {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, cache=True):
        p.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK, help="refuse enumeration above this rank")
        if cache:
            p.add_argument("--no-cache", action="store_true", help="recompute instead of using the atlas cache")

    p = sub.add_parser("atlas", help="render the stratification of one type")
    p.add_argument("type")
    p.add_argument("--format", choices=("dot", "json", "ascii"), default="ascii")
    p.add_argument("--fine", action="store_true", help="render the fine poset of all subsystems")
    p.add_argument("--out", default=None)
    common(p)
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("subsystems", help="list every root subsystem")
    p.add_argument("type")
    p.add_argument("--label", default=None, help="only subsystems of this type, e.g. A1^2")
    common(p)
    p.set_defaults(func=cmd_subsystems)

    p = sub.add_parser("classify", help="stratum of a point given by its weight support")
    p.add_argument("type")
    p.add_argument("--support", default="", help="comma-separated root indices")
    p.add_argument("--support-roots", default="", help="semicolon-separated root coordinates, e.g. '1,0;-1,0'")
    p.add_argument("--zero", action="store_true", help="the Cartan components are nonzero (weight 0 present)")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("roots", help="list the roots with their indices")
    p.add_argument("type")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("verify", help="check computed diagrams against the reference corpus")
    p.add_argument("--corpus", default=None, help="directory of reference JSON files (default: bundled)")
    p.add_argument("--types", default=None, help="comma-separated subset, e.g. G2,F4")
    p.add_argument("--jobs", type=int, default=1)
    common(p, cache=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidTypeError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except CapabilityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPABILITY
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
