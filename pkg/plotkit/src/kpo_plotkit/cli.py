"""Render CLI: ``kpo-render --spec <path>`` (also ``python -m kpo_plotkit render ...``)."""

import argparse
import sys
from importlib import resources

from .render import render
from .specs import SpecError, load_spec


def spec_names() -> list[str]:
    files = resources.files("kpo_plotkit") / "specs"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if argv and argv[0] == "render":  # tolerate the subcommand form
        argv = argv[1:]
    parser = argparse.ArgumentParser(
        prog="kpo-render",
        description="Render kpo-spectro CSV artifacts into figures",
    )
    parser.add_argument("--spec", required=False,
                        help="path to a plot-spec JSON, or a shipped spec name")
    parser.add_argument("--base-dir", default=".",
                        help="directory against which relative CSV/output paths resolve")
    parser.add_argument("--list", action="store_true", help="list shipped specs")
    args = parser.parse_args(argv)
    if args.list:
        for name in spec_names():
            print(name)
        return 0
    if not args.spec:
        parser.error("--spec is required")
    try:
        path = args.spec
        if not path.endswith(".json"):
            candidate = resources.files("kpo_plotkit") / "specs" / f"{path}.json"
            if not candidate.is_file():
                raise SpecError(
                    f"{path!r} is neither a .json path nor a shipped spec "
                    f"(available: {', '.join(spec_names())})")
            path = str(candidate)
        spec = load_spec(path, base_dir=args.base_dir)
        print(render(spec))
        return 0
    except (SpecError, OSError) as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
