"""powermin-plot <kind> <inputs...> -o <out> [--title ...]

Kinds: potential-shapes (inputs are gamma,alpha pairs), diameter (inputs are
sweep CSV paths), configuration (input is one configuration JSON).  Output
defaults to SVG; pass --png or an explicit .png path for raster.
"""

from __future__ import annotations

import argparse
import re
import sys

from .render import (
    PLOT_KINDS,
    PlotSpec,
    render_configuration,
    render_diameter_plot,
    render_potential_shapes,
)


def _parse_pair(token: str):
    parts = token.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected a gamma,alpha pair, got {token!r}")
    return float(parts[0]), float(parts[1])


def _resolve_out(out: str, png: bool) -> str:
    if "." in out.rsplit("/", 1)[-1]:
        return out
    return out + (".png" if png else ".svg")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powermin-plot",
        description="Render figures from powermin sweep CSV / configuration JSON files.",
    )
    parser.add_argument("kind", choices=PLOT_KINDS, help="figure kind")
    parser.add_argument("inputs", nargs="+",
                        help="gamma,alpha pairs | sweep CSV paths | configuration JSON")
    parser.add_argument("-o", "--out", required=True, help="output image path")
    parser.add_argument("--title", default=None, help="figure title")
    parser.add_argument("--png", action="store_true",
                        help="default to PNG when the output path has no extension")
    parser.add_argument("--r-min", type=float, default=0.05, help="kernel plot range start")
    parser.add_argument("--r-max", type=float, default=2.5, help="kernel plot range end")
    # Let pairs with negative exponents ("-0.5,-2.5") parse as positionals.
    parser._negative_number_matcher = re.compile(r"^-[0-9.]")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = _resolve_out(args.out, args.png)
    try:
        spec = PlotSpec(kind=args.kind, inputs=tuple(args.inputs), output=out, title=args.title)
        if spec.kind == "potential-shapes":
            pairs = [_parse_pair(tok) for tok in spec.inputs]
            render_potential_shapes(pairs, out, (args.r_min, args.r_max), spec.title)
        elif spec.kind == "diameter":
            fits = render_diameter_plot(list(spec.inputs), out, spec.title)
            for fit in fits:
                print(f"alpha={fit['alpha']:g}: exponent={fit['exponent']:.6f} "
                      f"prefactor={fit['prefactor']:.6g}")
        else:
            if len(spec.inputs) != 1:
                raise ValueError("configuration rendering takes exactly one JSON input")
            render_configuration(spec.inputs[0], out, spec.title)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
