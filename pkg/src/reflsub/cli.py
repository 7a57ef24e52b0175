"""Command line front end: enumerate, verify, table and dump-rootdata."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from .constants import AMBIENT, LARGE_GROUPS
from .rootdata import ConfigurationError, GroupId, build_root_datum
from .subsystems import (CacheError, CACHE_VERSION, UnknownTypeError, atlas_to_json,
                         enumerate_atlas, load_atlas, save_atlas)
from .tables import render
from .verify import DEFAULT_SAMPLES, DEFAULT_SEED, planted_fault, verify_group

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INVARIANT = 4

log = logging.getLogger("reflsub")


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


def parse_groups(selector: str, include_large: bool = False) -> list[int]:
    """Parse '23', 'G23', 'H3', '23..30', '23-30', '23,25' or 'all'."""
    out: list[int] = []
    for part in selector.split(","):
        part = part.strip()
        if part == "all":
            out += [g for g in AMBIENT if include_large or g not in LARGE_GROUPS]
            continue
        for sep in ("..", "-"):
            if sep in part and not part.startswith(sep):
                lo, hi = part.split(sep, 1)
                try:
                    a, b = GroupId.get(lo).index, GroupId.get(hi).index
                except KeyError as exc:
                    raise UsageError(str(exc)) from exc
                if a > b:
                    raise UsageError(f"empty range {part}")
                out += list(range(a, b + 1))
                break
        else:
            try:
                out.append(GroupId.get(part).index)
            except KeyError as exc:
                raise UsageError(str(exc.args[0])) from exc
    return sorted(set(out))


def _timed(label: str, fn, *args, **kwargs):
    t0 = time.perf_counter()
    result = fn(*args, **kwargs)
    print(f"[{label}: {time.perf_counter() - t0:.2f} s]", file=sys.stderr)
    return result


def _cache_path(cache: str | None, group: int, many: bool) -> str | None:
    if cache is None:
        return None
    if many or os.path.isdir(cache):
        os.makedirs(cache, exist_ok=True)
        return os.path.join(cache, f"G{group}.json")
    return cache


def obtain_atlas(group: int, cache: str | None):
    """Load the atlas from the cache (re-verifying it) or enumerate it."""
    if group in LARGE_GROUPS:
        print(f"warning: G{group} is a large group; enumeration may take a while",
              file=sys.stderr)
    datum = _timed(f"G{group} root datum", build_root_datum, group)
    if cache and os.path.exists(cache):
        try:
            return _timed(f"G{group} cache reload and re-verification", load_atlas, cache, datum)
        except CacheError as exc:
            if "version" not in str(exc):
                raise InvariantError(f"cache {cache}: {exc}") from exc
            print(f"note: {exc}; recomputing", file=sys.stderr)
    atlas = _timed(f"G{group} enumeration", enumerate_atlas, group)
    if cache:
        save_atlas(atlas, cache)
    return atlas


def cmd_enumerate(args, default_format: str = "showtable") -> int:
    groups = parse_groups(args.group, args.include_large)
    fmt = args.format or default_format
    blocks = []
    for g in groups:
        atlas = obtain_atlas(g, _cache_path(args.cache, g, len(groups) > 1))
        if fmt == "json":
            blocks.append(json.dumps(atlas_to_json(atlas), indent=1) + "\n")
        else:
            text = _timed(f"G{g} render", render, atlas, fmt)
            if len(groups) > 1 and fmt == "showtable":
                text = f"# G{g} = {atlas.name}\n" + text
            blocks.append(text)
    sys.stdout.write("\n".join(blocks))
    return EXIT_OK


def cmd_table(args) -> int:
    return cmd_enumerate(args, default_format="grid")


def cmd_verify(args) -> int:
    groups = parse_groups(args.group, args.include_large)
    reports = []
    for g in groups:
        atlas = obtain_atlas(g, _cache_path(args.cache, g, len(groups) > 1))
        if args.plant_fault:
            atlas = planted_fault(atlas)
        rep = _timed(f"G{g} verification", verify_group, g, atlas, args.samples, args.seed)
        reports.append(rep)
        print(rep.summary())
    if args.json_report:
        with open(args.json_report, "w") as fh:
            json.dump({"seed": args.seed, "samples": args.samples,
                       "cache_version": CACHE_VERSION,
                       "reports": [r.to_json() for r in reports]}, fh, indent=1)
            fh.write("\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_INVARIANT


def cmd_dump(args) -> int:
    for g in parse_groups(args.group, True):
        sys.stdout.write(build_root_datum(g).dump())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflsub",
        description="Conjugacy classes of reflection subgroups of G23..G37.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=True):
        p.add_argument("-g", "--group", required=True,
                       help="index, name, range such as 23..30, comma list, or 'all'")
        p.add_argument("--include-large", action="store_true",
                       help="let 'all' include G34, G36 and G37")
        p.add_argument("--cache", help="atlas cache file (a directory for several groups)")
        if formats:
            p.add_argument("--format", choices=["showtable", "grid", "markdown", "json"])

    p = sub.add_parser("enumerate", help="enumerate the classes of reflection subgroups")
    common(p)
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("table", help="print the classes in table layout")
    common(p)
    p.set_defaults(func=cmd_table)
    p = sub.add_parser("verify", help="check the theorem, the corollary and the invariants")
    common(p, formats=False)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="random generating sets per group for the corollary (0 disables)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json-report", help="write a JSON report to this path")
    p.add_argument("--plant-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("dump-rootdata", help="print roots and coroots")
    p.add_argument("-g", "--group", required=True)
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"reflsub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"reflsub: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvariantError, ConfigurationError, UnknownTypeError, RuntimeError) as exc:
        print(f"reflsub: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
