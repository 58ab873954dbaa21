"""Command-line front door: a thin client over the job layer.

All logic lives in the core package; the CLI only maps flags onto the same
request models the HTTP service consumes and prints canonical JSON.

Exit codes: 0 success; 2 parse error (flags or spec mini-languages); 3
resource cap exceeded or an inconclusive search; 4 failed precondition
(including out-of-range, no-selector, unsupported-kind, insufficient-horizon).
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from pydantic import ValidationError

from . import jobs, schemas
from .errors import FilterGameError, ResourceCapError, SpecParseError
from .serialize import canonical_dumps

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_PRECONDITION = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="filtergames",
        description="Referee, strategy constructions, and checkers for the two filter games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--config", help="key=value file supplying defaults for the flags")

    p = sub.add_parser("play", help="run one play and judge it")
    p.add_argument("--game", required=True, choices=["g1", "g2"])
    p.add_argument("--filter", default="frechet")
    p.add_argument("--one", required=True)
    p.add_argument("--two", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--beat-threshold", type=int, default=None)
    p.add_argument("--domination-threshold", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    add_common(p)

    p = sub.add_parser("refute-two", help="diagonalize against a TWO strategy in game g1")
    p.add_argument("--two", required=True)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--filter", default="frechet")
    p.add_argument("--tau-max-len", type=int, default=2)
    p.add_argument("--tau-entry-max", type=int, default=32)
    add_common(p)

    p = sub.add_parser("steal", help="self-play a TWO strategy in game g2")
    p.add_argument("--two", required=True)
    p.add_argument("--first-move", type=int, default=1)
    p.add_argument("--horizon", type=int, required=True)
    add_common(p)

    p = sub.add_parser("extract-g", help="extract the dominating function of a ONE strategy")
    p.add_argument("--one", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--no-fast-path", action="store_true", help="force exhaustive tuple bounds")
    p.add_argument("--h-table-bound", type=int, default=16)
    add_common(p)

    p = sub.add_parser("build-gh", help="build the g table and h ladder of a ONE strategy")
    p.add_argument("--one", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--no-fast-path", action="store_true")
    add_common(p)

    p = sub.add_parser("defeat-one", help="counterplay a ONE strategy in game g2 via the oracle")
    p.add_argument("--one", required=True)
    p.add_argument("--oracle", default="rare:leftmost")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--digit-cap", type=int, default=3_200_000)
    add_common(p)

    p = sub.add_parser("check", help="desk-scale filter characterization checkers")
    csub = p.add_subparsers(dest="checker", required=True)

    c = csub.add_parser("enum-bounded", help="does g dominate every base enumeration?")
    c.add_argument("--filter", required=True)
    c.add_argument("--g", required=True, help="linear function, e.g. 2k or k+10")
    c.add_argument("--bases", default="1:20", help="inclusive base range, e.g. 1:50")
    c.add_argument("--scan", type=int, default=1000)
    add_common(c)

    c = csub.add_parser("escape", help="search members disjoint from many blocks")
    c.add_argument("--filter", required=True)
    c.add_argument("--partition", required=True, help="size=3 | sizes=2,2,3 | breaks=1,3,5")
    c.add_argument("--threshold", type=int, default=5)
    c.add_argument("--scan", type=int, default=1000)
    add_common(c)

    c = csub.add_parser("rare", help="selector evidence or obstruction report")
    c.add_argument("--filter", required=True)
    c.add_argument("--partition", required=True)
    c.add_argument("--scan", type=int, default=100)
    add_common(c)

    p = sub.add_parser("batch", help="run several config files concurrently")
    p.add_argument("--jobs", type=int, default=2)
    p.add_argument("--out-dir", required=True)
    p.add_argument("configs", nargs="+")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _expand_config(argv: list[str]) -> list[str]:
    """Splice --config key=value pairs in as defaults (explicit flags win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise SpecParseError("--config needs a path")
    path = Path(argv[idx + 1])
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise SpecParseError(f"cannot read config {path}: {exc}") from exc
    injected: list[str] = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SpecParseError(f"bad config line {line!r} (want key=value)")
        injected.extend([f"--{key.strip().replace('_', '-')}", value.strip()])
    rest = argv[:idx] + argv[idx + 2 :]
    # subcommand first, then config-derived defaults, then explicit flags
    return rest[:1] + injected + rest[1:]


_RUNNERS = {
    "play": (schemas.PlayRequest, jobs.run_play),
    "refute-two": (schemas.RefuteTwoRequest, jobs.run_refute_two),
    "steal": (schemas.StealRequest, jobs.run_steal),
    "extract-g": (schemas.ExtractGRequest, jobs.run_extract_g),
    "build-gh": (schemas.BuildGHRequest, jobs.run_build_gh),
    "defeat-one": (schemas.DefeatOneRequest, jobs.run_defeat_one),
    ("check", "enum-bounded"): (schemas.CheckEnumBoundedRequest, jobs.run_check_enum_bounded),
    ("check", "escape"): (schemas.CheckEscapeRequest, jobs.run_check_escape),
    ("check", "rare"): (schemas.CheckRareRequest, jobs.run_check_rare),
}


def _request_fields(args: argparse.Namespace) -> dict:
    fields = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "checker", "out", "config") and v is not None
    }
    if "no_fast_path" in fields:
        fields["fast_path"] = not fields.pop("no_fast_path")
    if "bases" in fields:
        lo, sep, hi = str(fields.pop("bases")).partition(":")
        try:
            fields["base_from"] = int(lo)
            fields["base_to"] = int(hi) if sep else int(lo)
        except ValueError as exc:
            raise SpecParseError(f"bad --bases range: {exc}") from exc
    return fields


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run_one(argv: list[str]) -> int:
    parser = _build_parser()
    argv = _expand_config(argv)
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK

    if args.command == "batch":
        return _run_batch(args)

    key = (args.command, args.checker) if args.command == "check" else args.command
    request_cls, runner = _RUNNERS[key]
    try:
        req = request_cls(**_request_fields(args))
    except ValidationError as exc:
        raise SpecParseError(str(exc)) from exc
    result = runner(req)
    _emit(canonical_dumps(result), args.out)
    if result.get("kind") == "inconclusive":
        return EXIT_RESOURCE
    return EXIT_OK


def _run_batch(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def one(path_str: str) -> tuple[str, int]:
        path = Path(path_str)
        try:
            lines = [
                ln.strip()
                for ln in path.read_text().splitlines()
                if ln.strip() and not ln.strip().startswith("#")
            ]
        except OSError:
            return path.name, EXIT_PARSE
        command = None
        flags: list[str] = []
        for ln in lines:
            key, sep, value = ln.partition("=")
            if not sep:
                return path.name, EXIT_PARSE
            key, value = key.strip(), value.strip()
            if key == "command":
                command = value
            else:
                flags.extend([f"--{key.replace('_', '-')}", value])
        if command is None:
            return path.name, EXIT_PARSE
        argv = command.split() + flags + ["--out", str(out_dir / f"{path.stem}.json")]
        return path.name, main(argv)

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(one, args.configs))
    for name, code in sorted(results):
        sys.stdout.write(f"{name}: exit {code}\n")
    return EXIT_OK if all(code == EXIT_OK for _, code in results) else max(c for _, c in results)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return _run_one(argv)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FilterGameError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SystemExit as exc:  # argparse errors exit 2 already
        return int(exc.code) if exc.code is not None else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
