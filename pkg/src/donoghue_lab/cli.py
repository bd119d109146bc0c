"""Command-line front end.

Exit status: 0 on success, 1 when ``verify`` or ``examples`` finds a
failing check, 2 on invalid input, 3 when a numerical guard trips.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import goldens, moebius, realize, suites
from .errors import PoleError, ValidationError
from .herglotz import (
    PerturbedHerglotz,
    classify,
    function_from_dict,
    function_to_dict,
    kappa0_from_a,
    perturb,
)
from .measure import make_measure
from .model import ModelSystem, dissipative_resolvent

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3
SEED_ENV = "DONOGHUE_LAB_SEED"


# ---------------------------------------------------------------- helpers


def _pair(c: complex) -> list[float]:
    c = complex(c)
    return [c.real, c.imag]


def _parse_complex(text: str) -> complex:
    """Accept ``1+2j``, ``1+2i`` or ``1,2``."""
    t = text.strip().replace(" ", "")
    try:
        if "," in t:
            re_, im_ = t.split(",")
            return complex(float(re_), float(im_))
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise ValidationError(f"cannot parse complex number {text!r}") from exc


def _finite(name: str, x: float | None) -> float | None:
    if x is not None and not math.isfinite(x):
        raise ValidationError(f"{name} must be finite, got {x!r}")
    return x


def _load_function(path: str) -> PerturbedHerglotz:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("input JSON must be an object")
    return function_from_dict(data)


def _Q_a(args: argparse.Namespace, need_Q: bool = True) -> tuple[float, float, PerturbedHerglotz | None]:
    if getattr(args, "input", None):
        f = _load_function(args.input)
        return f.Q, f.a, f
    Q = _finite("Q", args.Q)
    a = _finite("a", args.a)
    if a is None:
        raise ValidationError("give --input or --a (and --Q)")
    if a <= 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    if Q is None:
        if need_Q:
            raise ValidationError("--Q is required without --input")
        Q = 0.0
    return Q, a, None


def _emit(payload: Any, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
        return
    rows = payload if isinstance(payload, list) else [payload]
    for i, row in enumerate(rows):
        if i:
            out.write("\n")
        width = max((len(str(k)) for k in row), default=0)
        for key, value in row.items():
            out.write(f"{str(key).ljust(width)}  {_fmt_value(value)}\n")


def _fmt_value(value: Any) -> str:
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, float) for v in value):
        re_, im_ = value
        return f"{re_:.12g}{'+' if im_ >= 0 else '-'}{abs(im_):.12g}i"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (dict, list)):
        return json.dumps(value)
    return str(value)


# --------------------------------------------------------------- commands


def cmd_classify(args, out) -> int:
    Q, a, _ = _Q_a(args, need_Q=False)
    tag, Q, a = classify(PerturbedHerglotz(Q, make_measure([(0.0, a)])))
    _emit({"family": tag.family.value, "kappa0": tag.kappa0, "perturbed": tag.perturbed, "Q": Q, "a": a}, args.format, out)
    return EXIT_OK


def cmd_realize(args, out) -> int:
    Q, a, _ = _Q_a(args)
    params = realize.realize_Q_a(Q, a)
    tag, _, _ = classify(PerturbedHerglotz(Q, make_measure([(0.0, a)])))
    payload = params.as_dict()
    payload.update({"family": tag.family.value, "Q": Q, "a": a})
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_perturb(args, out) -> int:
    dQ = _finite("dQ", args.dQ)
    if args.input:
        f = perturb(_load_function(args.input), dQ)
        payload = function_to_dict(f)
        payload["a"] = f.a
    else:
        Q, a, _ = _Q_a(args)
        payload = {"Q": Q + dQ, "a": a}
    tag, _, _ = classify(PerturbedHerglotz(payload["Q"], make_measure([(0.0, payload["a"])])))
    payload.update({"family": tag.family.value, "kappa0": tag.kappa0, "perturbed": tag.perturbed})
    _emit(payload, args.format, out)
    return EXIT_OK


def cmd_rotate(args, out) -> int:
    if args.value is not None:
        if args.alpha is None:
            raise ValidationError("--value needs --alpha")
        r = moebius.RotationAngle(_finite("alpha", args.alpha))
        v = _parse_complex(args.value)
        _emit(
            {"alpha": r.alpha, "unimodular_factor": _pair(r.unimodular_factor), "V": _pair(v), "V_alpha": _pair(moebius.rotate(v, r))},
            args.format,
            out,
        )
        return EXIT_OK
    Q, a, _ = _Q_a(args)
    if args.alpha is not None:
        angles = [("given", moebius.RotationAngle(args.alpha))]
    else:
        plus, minus = moebius.solve_rotation_angles(Q, a)
        angles = [("plus", plus), ("minus", minus)]
    rows = []
    for branch, r in angles:
        q_alpha, a_alpha = moebius.rotated_parameters(Q, a, r)
        rows.append(
            {
                "branch": branch,
                "alpha": r.alpha,
                "tan_alpha": r.tan,
                "unimodular_factor": _pair(r.unimodular_factor),
                "Q_alpha": q_alpha,
                "a_alpha": a_alpha,
            }
        )
    _emit(rows, args.format, out)
    return EXIT_OK


_CLASS_CHECK = {
    "M": lambda a: a == 1.0,
    "Mk": lambda a: 0.0 < a < 1.0,
    "Mk_inv": lambda a: a > 1.0,
}


def curve_rows(a: float, q_lo: float, q_hi: float, steps: int) -> list[tuple[float, float, float, float]]:
    """``(Q, kappa, Re U, Im U)`` on an evenly spaced grid.

    Grid points are ``((N-1-k) lo + k hi)/(N-1)``, which is exactly
    antisymmetric when ``lo = -hi``.
    """
    if steps < 2:
        raise ValidationError("steps must be at least 2")
    if not q_lo < q_hi:
        raise ValidationError("Q range must satisfy lo < hi")
    n1 = steps - 1
    rows = []
    for k in range(steps):
        Q = ((n1 - k) * q_lo + k * q_hi) / n1
        p = realize.realize_Q_a(Q, a)
        rows.append((Q, float(p.kappa), complex(p.U).real, complex(p.U).imag))
    return rows


def curve_svg(rows, width: int = 640, height: int = 400, title: str = "") -> str:
    """Polyline of ``kappa`` against ``Q`` with axis labels."""
    pad = 40
    qs = [r[0] for r in rows]
    q_lo, q_hi = min(qs), max(qs)

    def x(q: float) -> float:
        return pad + (q - q_lo) / (q_hi - q_lo) * (width - 2 * pad)

    def y(k: float) -> float:
        return height - pad - k * (height - 2 * pad)

    points = " ".join(f"{x(q):.3f},{y(k):.3f}" for q, k, *_ in rows)
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
            f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
            f'<line x1="{x(0.0) if q_lo <= 0 <= q_hi else pad:.3f}" y1="{pad}" x2="{x(0.0) if q_lo <= 0 <= q_hi else pad:.3f}" y2="{height - pad}" stroke="black"/>',
            f'<text x="{width - pad}" y="{height - pad + 16}" font-size="12">Q</text>',
            f'<text x="{pad - 30}" y="{y(1.0):.3f}" font-size="12">1</text>',
            f'<text x="{pad + 4}" y="{pad - 8}" font-size="12">kappa {title}</text>',
            f'<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{points}"/>',
            "</svg>",
            "",
        ]
    )


def cmd_curve(args, out) -> int:
    cls = args.klass
    a = 1.0 if cls == "M" and args.a is None else _finite("a", args.a)
    if a is None:
        raise ValidationError("--a is required for this class")
    if cls is not None and not _CLASS_CHECK[cls](a):
        raise ValidationError(f"a = {a!r} does not belong to class {cls}")
    if a <= 0.0:
        raise ValidationError(f"a must be positive, got {a!r}")
    q_lo, q_hi = (_finite("Q-range", v) for v in args.Q_range)
    rows = curve_rows(a, q_lo, q_hi, args.steps)
    by_q = {r[0]: r[1] for r in rows}
    mirrored = [abs(by_q[q] - by_q[-q]) for q in by_q if -q in by_q]
    symmetry = max(mirrored) if mirrored else float("nan")
    buf = io.StringIO()
    buf.write(f"# a={a!r} class={cls or 'auto'}\n")
    buf.write(f"# even_symmetry_max_deviation={symmetry!r}\n")
    buf.write(f"# vertex_kappa={kappa0_from_a(a)!r}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["Q", "kappa", "ReU", "ImU"])
    for row in rows:
        writer.writerow([repr(v) for v in row])
    if args.output:
        Path(args.output).write_text(buf.getvalue())
    else:
        out.write(buf.getvalue())
    if args.svg:
        Path(args.svg).write_text(curve_svg(rows, title=f"(a={a:g})"))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = args.suite or None
    if names:
        unknown = sorted(set(names) - set(suites.SUITES))
        if unknown:
            raise ValidationError(f"unknown suite(s): {', '.join(unknown)}")
    results = suites.run_suites(args.seed, args.cases, names)
    payload = {
        "seed": args.seed,
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "suites": [r.as_dict() for r in results],
    }
    if args.format == "json":
        _emit(payload, "json", out)
    else:
        _emit([r.as_dict() for r in results], "table", out)
    return EXIT_OK if payload["failed"] == 0 else EXIT_FAILED


def cmd_resolvent(args, out) -> int:
    f = _load_function(args.input)
    if not args.z:
        raise ValidationError("give at least one --z value")
    zs = [_parse_complex(t) for t in args.z]
    if args.k is not None:
        k = _parse_complex(args.k)
    else:
        k = realize.model_k_param(f.Q, f.a)
    ms = ModelSystem(f.measure)
    matrices = []
    for z in zs:
        R = dissipative_resolvent(ms, k, z)
        matrices.append({"z": _pair(z), "resolvent": [[_pair(c) for c in row] for row in R]})
    _emit({"k": _pair(k), "n": f.measure.size, "results": matrices}, "json", out)
    return EXIT_OK


def cmd_examples(args, out) -> int:
    rows = goldens.replay(args.tol)
    if args.format == "json":
        _emit({"passed": sum(r["passed"] for r in rows), "failed": sum(not r["passed"] for r in rows), "checks": rows}, "json", out)
    else:
        for r in rows:
            status = "PASS" if r["passed"] else "FAIL"
            out.write(f"{status}  example {r['example']}  {r['check']:<28} dev={r['deviation']:.2e}\n")
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAILED


# ----------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse's own exit code is already 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help=f"random seed (overridden by ${SEED_ENV})")

    def qa(p: argparse.ArgumentParser, input_help: str = "function JSON file ('-' for stdin)") -> None:
        p.add_argument("--input", help=input_help)
        p.add_argument("--Q", type=float)
        p.add_argument("--a", type=float)

    parser = _Parser(prog="donoghue-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="report the class of a function")
    qa(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("realize", parents=[common], help="von Neumann parameters kappa and U")
    qa(p)
    p.set_defaults(handler=cmd_realize)

    p = sub.add_parser("perturb", parents=[common], help="shift Q by dQ")
    qa(p)
    p.add_argument("--dQ", type=float, required=True)
    p.set_defaults(handler=cmd_perturb)

    p = sub.add_parser("rotate", parents=[common], help="rotation angles or a single rotated value")
    qa(p)
    p.add_argument("--alpha", type=float)
    p.add_argument("--value", help="impedance value to rotate, e.g. 1+0.5i")
    p.set_defaults(handler=cmd_rotate)

    p = sub.add_parser("curve", parents=[common], help="CSV of kappa(Q) and U(Q)")
    p.add_argument("--class", dest="klass", choices=tuple(_CLASS_CHECK))
    p.add_argument("--a", type=float)
    p.add_argument("--Q-range", dest="Q_range", nargs=2, type=float, default=(-10.0, 10.0), metavar=("LO", "HI"))
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.add_argument("--svg", help="also write an SVG polyline")
    p.set_defaults(handler=cmd_curve)

    p = sub.add_parser("verify", parents=[common], help="run randomized invariant suites")
    p.add_argument("--cases", type=int, default=1000)
    p.add_argument("--suite", action="append", help="restrict to this suite (repeatable)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("resolvent", parents=[common], help="resolvent matrices of the model operator")
    p.add_argument("--input", required=True, help="function JSON file ('-' for stdin)")
    p.add_argument("--z", action="append", help="evaluation point, e.g. 2i or 1+1i (repeatable)")
    p.add_argument("--k", help="von Neumann parameter of the main operator (default: universal model value)")
    p.set_defaults(handler=cmd_resolvent)

    p = sub.add_parser("examples", parents=[common], help="replay the worked examples")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    env_seed = os.environ.get(SEED_ENV)
    try:
        if env_seed is not None:
            try:
                args.seed = int(env_seed)
            except ValueError as exc:
                raise ValidationError(f"{SEED_ENV} must be an integer, got {env_seed!r}") from exc
        return args.handler(args, out)
    except PoleError as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
