"""Command-line front end: ``pzlienard <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import format_rational, parse_rational
from .compactify import chart_transform, infinity_analysis
from .critical import closed_form_abscissa, finite_critical_points, linearize
from .pzfield import PZParams, build_field, classify_family, instantiate_family
from .transforms import full_pipeline, lienard_to_riccati

log = logging.getLogger("pzlienard")

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2
PARAM_FLAGS = ("-a", "-b", "-c", "-m", "-k")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Let ``-c -3/2`` through: argparse would read ``-3/2`` as an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in PARAM_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            try:
                parse_rational(argv[i + 1])
            except ValueError:
                pass
            else:
                out.append(f"{tok}={argv[i + 1]}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def _add_params(p: argparse.ArgumentParser, names=("a", "b", "c", "m", "k")) -> None:
    for n in names:
        p.add_argument(f"-{n}", type=_rational, required=True, metavar="P/Q", help=f"parameter {n}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pzlienard", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="family tag and polynomial field")
    _add_params(p)

    p = sub.add_parser("transform", help="Riccati / linear / Gegenbauer / hypergeometric / Legendre chain")
    _add_params(p)

    p = sub.add_parser("critical", help="finite critical points (and points at infinity)")
    _add_params(p)
    p.add_argument("--infinity", action="store_true", help="add the U1/U2 chart analysis")

    p = sub.add_parser("portrait", help="phase portrait as SVG or CSV")
    _add_params(p)
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    p.add_argument("--output", "-o", type=Path, required=True)
    p.add_argument("--window", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
                   default=(-4.0, 4.0, -4.0, 4.0))
    p.add_argument("--seeds", type=int, default=64)
    p.add_argument("--tmax", type=float, default=20.0)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("verify", help="numerical residual of every pipeline stage")
    _add_params(p)
    p.add_argument("--tol", type=float, default=1e-7, help="largest acceptable residual")
    p.add_argument("--samples", type=int, default=50)

    p = sub.add_parser("example-pz", help="full analysis of the a=0, m=3/2, k=1/2 example")
    _add_params(p, ("b", "c"))
    return parser


def _params(ns) -> PZParams:
    return PZParams(ns.a, ns.b, ns.c, ns.m, ns.k)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _point_report(sys_, pts) -> list[dict]:
    out = []
    for pt in pts:
        cl = linearize(sys_, pt)
        entry = pt.to_json()
        entry.update(kind=cl.kind, trace=cl.trace, classification=cl.to_json())
        out.append(entry)
    return out


def cmd_classify(ns) -> dict:
    params = _params(ns)
    cls = classify_family(params)
    out = cls.to_json()
    out["field"] = str(build_field(params))
    return out


def cmd_transform(ns) -> dict:
    return full_pipeline(_params(ns)).to_json()


def _critical_payload(params: PZParams, infinity: bool) -> dict:
    cls = classify_family(params)
    pts = finite_critical_points(cls)
    planar = instantiate_family(cls).to_planar()
    out = {
        "family": cls.tag.value,
        "system": str(planar),
        "points": _point_report(planar, pts),
        "notes": list(pts.notes),
    }
    closed = closed_form_abscissa(cls)
    if closed is not None:
        gamma, value = closed
        out["closed_form"] = {"gamma": gamma, "x_pow_gamma": format_rational(value)}
    if infinity:
        out["charts"] = [chart_transform(planar, ch).to_json() for ch in ("U1", "U2")]
        out["infinity"] = [ip.to_json() for ip in infinity_analysis(planar)]
    return out


def cmd_critical(ns) -> dict:
    return _critical_payload(_params(ns), ns.infinity)


def cmd_portrait(ns) -> None:
    from .portrait import phase_portrait, render

    cls = classify_family(_params(ns))
    planar = instantiate_family(cls).to_planar()
    data = phase_portrait(planar, ns.window, ns.seeds, ns.tmax, ns.tol)
    ns.output.write_bytes(render(data, ns.format))
    log.info("wrote %s (%d trajectories)", ns.output, len(data.trajectories))


def cmd_verify(ns) -> int:
    from .portrait import verify_pipeline

    rows = verify_pipeline(full_pipeline(_params(ns)), ns.samples)
    width = max(len(name) for name, _ in rows)
    ok = True
    print(f"{'stage':<{width}}  residual   status")
    for name, res in rows:
        good = res <= ns.tol
        ok &= good
        print(f"{name:<{width}}  {res:.3e}  {'ok' if good else 'FAIL'}")
    return EXIT_OK if ok else EXIT_COMPUTE


def cmd_example_pz(ns) -> dict:
    from .portrait import resolve_riccati_sign

    params = PZParams(Fraction(0), ns.b, ns.c, Fraction(3, 2), Fraction(1, 2))
    out = {"params": params.to_json(), "classification": classify_family(params).to_json()}
    out.update(_critical_payload(params, infinity=True))
    out["riccati"] = str(lienard_to_riccati(params))
    if float(ns.c) > 0:
        res = resolve_riccati_sign(float(ns.b), float(ns.c), 0.0, 0.0, [0.1 * i for i in range(1, 21)])
        out["riccati_sign"] = {"sign": res.sign, "max_error": {str(k): v for k, v in res.max_error.items()}}
    return out


COMMANDS = {
    "classify": cmd_classify,
    "transform": cmd_transform,
    "critical": cmd_critical,
    "portrait": cmd_portrait,
    "verify": cmd_verify,
    "example-pz": cmd_example_pz,
}


def _configure_logging() -> None:
    level = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("PZ_LOG", "quiet").lower(), logging.ERROR
    )
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        ns = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    log.debug("command %s", ns.command)
    try:
        result = COMMANDS[ns.command](ns)
    except (ValueError, ArithmeticError, NotImplementedError, RuntimeError) as exc:
        log.debug("computation failed", exc_info=True)
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE
    if isinstance(result, int):
        return result
    if result is not None:
        _emit(result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
