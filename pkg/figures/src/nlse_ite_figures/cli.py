import argparse
import sys
from pathlib import Path

from .render import FIGURE_IDS, CsvFormatError, FigureSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nlse-figures",
        description="Regenerate experiment figures from nlse-ite CSV outputs",
    )
    parser.add_argument("figure_id", choices=FIGURE_IDS)
    parser.add_argument("--inputs", nargs="+", required=True, metavar="CSV")
    parser.add_argument("--out", required=True, metavar="PATH")
    args = parser.parse_args(argv)

    spec = FigureSpec(
        figure_id=args.figure_id,
        inputs=tuple(Path(p) for p in args.inputs),
        output=Path(args.out),
    )
    try:
        path = render(spec)
    except (CsvFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
