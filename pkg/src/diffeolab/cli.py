"""Command-line front end: reproducible demonstrations of the counterexample.

Subcommands map one-to-one onto the library modules: `constants` prints the
mollifier normalization data, `family` tabulates members of the mollified
translation family, `member` runs the membership tests, `seminorm` emits
the convergence table, `flow` integrates a velocity field on the interval,
`nonregular` runs the non-integrability witness, `manifold` integrates the
plane field and reports blowup times, and `all` runs the certification
suite and exits nonzero on any failure.

Every run is deterministic for a fixed set of flags: grids are fixed,
randomized checks use the --seed flag (default 0), and CSV is emitted with
full float precision so two identical runs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import certify, diffeo, family, flow, manifold, mollifier, seminorms, svgplot
from .errors import DiffeolabError

__all__ = ["RunConfig", "build_parser", "main", "run"]


@dataclass
class RunConfig:
    """Validated invocation: the subcommand plus its flag values."""

    subcommand: str
    options: dict = field(default_factory=dict)

    def get(self, key, default=None):
        return self.options.get(key, default)


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError(f"must be strictly positive, got {text!r}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad numeric list {text!r}") from exc


def _index_list(text: str) -> list[seminorms.SeminormIndex]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            n_str, k_str = part.split(":")
            out.append(seminorms.SeminormIndex(int(n_str), int(k_str)))
        except (ValueError, DiffeolabError) as exc:
            raise argparse.ArgumentTypeError(
                f"bad seminorm index {part!r}, expected n:k"
            ) from exc
    return out


def _fmt(x: float) -> str:
    return repr(float(x))


class _Emitter:
    """Routes tables and text either to stdout or to prefix-named files."""

    def __init__(self, out_prefix: Optional[str], fmt: str, stdout):
        self.prefix = out_prefix
        self.fmt = fmt
        self.stdout = stdout
        self.written: list[str] = []

    def table(self, name: str, header: list[str], rows: list[list]) -> None:
        if self.fmt == "svg":
            self._svg(name, header, rows)
            return
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
        payload = buf.getvalue()
        if self.prefix:
            path = f"{self.prefix}_{name}.csv"
            with open(path, "w", newline="") as fh:
                fh.write(payload)
            self.written.append(path)
            print(f"wrote {path}", file=self.stdout)
        else:
            self.stdout.write(payload)

    def _svg(self, name: str, header: list[str], rows: list[list]) -> None:
        # first column is the abscissa, every later numeric column a curve
        xs = [float(row[0]) for row in rows]
        series = []
        for j, label in enumerate(header[1:], start=1):
            ys = [float(row[j]) for row in rows]
            series.append((label, xs, ys))
        doc = svgplot.line_plot(series, title=name)
        if self.prefix:
            path = f"{self.prefix}_{name}.svg"
            with open(path, "w") as fh:
                fh.write(doc)
            self.written.append(path)
            print(f"wrote {path}", file=self.stdout)
        else:
            self.stdout.write(doc)

    def text(self, content: str) -> None:
        print(content, file=self.stdout)


def _cmd_constants(config: RunConfig, em: _Emitter) -> int:
    c = mollifier.constants()
    bound = 1.0 / (0.4 * math.e)
    em.text(f"normalization constant   {c.normalization:.12f}")
    em.text(f"mollifier peak           {c.peak:.12f}")
    em.text(f"peak bound 1/(0.4 e)     {bound:.12f}")
    em.text(f"quadrature tolerance     {c.quadrature_tol:.1e}")
    return 0


def _cmd_family(config: RunConfig, em: _Emitter) -> int:
    t = config.get("t", 0.1)
    n = config.get("grid", 101)
    rows = []
    for i in range(1, n + 1):
        x = i / (n + 1)
        rows.append([t, x, family.evaluate(t, x), family.space_derivative(t, x)])
    em.table("family", ["t", "x", "c", "dc_dx"], rows)
    return 0


_MEMBER_BUILTINS = ("identity", "square", "shift", "family")


def _member_candidate(name: str, t: float) -> diffeo.Diffeo:
    if name == "identity":
        return diffeo.identity()
    if name == "square":
        return diffeo.Diffeo(func=lambda x: x * x, deriv=lambda x: 2.0 * x, label="square")
    if name == "shift":
        return diffeo.Diffeo(
            func=lambda x: x + t, deriv=lambda x: 1.0, label=f"shift by {t!r}"
        )
    return family.member(t)


def _cmd_member(config: RunConfig, em: _Emitter) -> int:
    t = config.get("t", 0.1)
    candidate = _member_candidate(config.get("map", "family"), t)
    report = diffeo.check_membership(candidate, tol=config.get("tol", 1e-6))
    em.text(f"candidate              {candidate.label}")
    em.text(f"endpoints anchored     {report.anchored}")
    em.text(f"group member           {report.is_member}")
    em.text(f"left limit estimate    {report.left_limit_estimate:.12g}")
    em.text(f"right limit estimate   {report.right_limit_estimate:.12g}")
    em.text(f"derivative infimum     {report.deriv_inf_estimate:.12g}")
    em.text(f"probes                 {report.probe_description}")
    for failure in report.failures:
        em.text(f"failure: {failure}")
    if config.get("format") == "csv" or em.prefix:
        em.table(
            "member",
            [
                "label",
                "anchored",
                "is_member",
                "left_limit",
                "right_limit",
                "deriv_inf",
            ],
            [
                [
                    candidate.label,
                    str(report.anchored),
                    str(report.is_member),
                    report.left_limit_estimate,
                    report.right_limit_estimate,
                    report.deriv_inf_estimate,
                ]
            ],
        )
    return 0


def _cmd_seminorm(config: RunConfig, em: _Emitter) -> int:
    ts = config.get("t_list") or [2.0**-j for j in range(2, 13)]
    indices = config.get("indices") or [
        seminorms.SeminormIndex(n, k) for n in (1, 2, 3) for k in (0, 1, 2)
    ]
    report = seminorms.convergence_report(ts, indices, config.get("grid", 1001))
    em.table("seminorm", report.header(), report.rows())
    return 0


_FIELDS = {
    "zero": flow.zero_field,
    "one": flow.unit_field,
    "logistic": flow.logistic_field,
}


def _make_field(config: RunConfig) -> flow.VelocityField:
    name = config.get("field", "one")
    if name in _FIELDS:
        return _FIELDS[name]()
    expr = config.get("expr")
    if name == "custom-expression" and expr:
        code = compile(expr, "<field-expression>", "eval")

        def v(t: float, x: float) -> float:
            return float(eval(code, {"__builtins__": {}}, {"t": t, "x": x, "math": math}))

        return flow.VelocityField(v=v, label=f"expr({expr})")
    raise DiffeolabError(
        f"unknown field {name!r}; use one of {sorted(_FIELDS)} or "
        "custom-expression with --expr"
    )


def _cmd_flow(config: RunConfig, em: _Emitter) -> int:
    field_obj = _make_field(config)
    seeds = config.get("seeds") or [0.2, 0.5, 0.8]
    result = flow.integrate_flow(
        field_obj,
        seeds,
        t_max=config.get("t_max", 1.0),
        dt=config.get("dt", 1e-3),
        margin=config.get("margin", 1e-9),
    )
    rows = [
        [tr.seed, t, x]
        for tr in result.trajectories
        for t, x in zip(tr.times, tr.states)
    ]
    em.table("flow", ["seed", "t", "x"], rows)
    verdict = {
        "field": field_obj.label,
        "classification": result.classification,
        "escape_times": result.escape_times(),
        "residual_max": result.residual_max,
    }
    em.text(json.dumps(verdict))
    return 0


def _cmd_nonregular(config: RunConfig, em: _Emitter) -> int:
    t_list = config.get("t_list") or [0.01, 0.05, 0.1, 0.2]
    report = flow.non_integrability_report(t_list, tol=config.get("tol", 1e-6))
    rows = [
        [
            e.t,
            str(e.report.anchored),
            e.report.left_limit_estimate,
            e.report.right_limit_estimate,
        ]
        for e in report.entries
    ]
    em.table("nonregular", ["t", "anchored", "left_limit", "right_limit"], rows)
    em.text(f"verdict: {report.verdict}")
    return 0 if report.all_rejected else 1


def _cmd_manifold(config: RunConfig, em: _Emitter) -> int:
    seeds = config.get("seeds") or [0.3, 0.5, 0.7, 0.9]
    t_max = config.get("t_max", 1.0)
    report = manifold.blowup_report(
        seeds,
        t_max=t_max,
        dt=config.get("dt", 5e-4),
        blowup_radius=config.get("blowup_radius", 1e6),
    )
    emb = manifold.log_odds_embedding()
    rows = []
    for x0 in seeds:
        tr = manifold.integrate_plane_flow(
            (emb.forward(x0), 0.0),
            t_max=t_max,
            dt=config.get("dt", 5e-4),
            blowup_radius=config.get("blowup_radius", 1e6),
        )
        stride = max(1, len(tr.times) // config.get("samples", 200))
        for i in range(0, len(tr.times), stride):
            rows.append([x0, tr.times[i], tr.stretches[i], tr.radii[i]])
    em.table("manifold", ["seed_x0", "t", "s", "r"], rows)
    verdict_rows = [
        [
            row.x0,
            row.predicted,
            row.measured if row.measured is not None else math.nan,
            row.abs_error if row.abs_error is not None else math.nan,
        ]
        for row in report.rows
    ]
    em.table("manifold_verdict", ["x0", "predicted", "measured", "abs_error"], verdict_rows)
    for row in report.rows:
        measured = "none" if row.measured is None else f"{row.measured:.9f}"
        err = "none" if row.abs_error is None else f"{row.abs_error:.3e}"
        em.text(
            f"x0={row.x0:<6g} predicted={row.predicted:<12.9f} "
            f"measured={measured:<14} abs_error={err}"
        )
    em.text(f"verdict: {report.verdict}")
    return 0 if report.all_consistent else 1


def _cmd_all(config: RunConfig, em: _Emitter) -> int:
    results = certify.run_all()
    for r in results:
        em.text(r.line())
    failures = [
        {"criterion": r.number, "name": r.name, "details": r.details}
        for r in results
        if not r.passed
    ]
    em.text(json.dumps({"passed": len(results) - len(failures), "failed": failures}))
    return 0 if not failures else 1


_HANDLERS = {
    "constants": _cmd_constants,
    "family": _cmd_family,
    "member": _cmd_member,
    "seminorm": _cmd_seminorm,
    "flow": _cmd_flow,
    "nonregular": _cmd_nonregular,
    "manifold": _cmd_manifold,
    "all": _cmd_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffeolab",
        description=(
            "numerical experiments on the diffeomorphism group of the open "
            "unit interval and its plane realization"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--out", help="path prefix for emitted files")
        p.add_argument(
            "--format", choices=("csv", "text", "svg"), default="csv",
            help="table output format",
        )

    common(sub.add_parser("constants", help="print mollifier normalization data"))

    p = sub.add_parser("family", help="tabulate a mollified translation member")
    p.add_argument("--t", type=float, default=0.1, help="shift parameter, |t| <= 1/4")
    p.add_argument("--grid", type=int, default=101, help="number of interior x points")
    common(p)

    p = sub.add_parser("member", help="run membership tests on a candidate map")
    p.add_argument("--map", choices=_MEMBER_BUILTINS, default="family")
    p.add_argument("--t", type=float, default=0.1, help="parameter for shift/family")
    p.add_argument("--tol", type=_positive, default=1e-6)
    common(p)

    p = sub.add_parser("seminorm", help="emit the convergence table")
    p.add_argument("--t-list", dest="t_list", type=_float_list, default=None)
    p.add_argument(
        "--indices", type=_index_list, default=None,
        help="comma-separated n:k pairs, default 1:0,...,3:2",
    )
    p.add_argument("--grid", type=int, default=1001)
    common(p)

    p = sub.add_parser("flow", help="integrate a velocity field on the interval")
    p.add_argument(
        "--field", default="one",
        help="zero, one, logistic, or custom-expression (with --expr)",
    )
    p.add_argument("--expr", default=None, help="expression in t and x")
    p.add_argument("--seeds", type=_float_list, default=None)
    p.add_argument("--t-max", dest="t_max", type=_positive, default=1.0)
    p.add_argument("--dt", type=_positive, default=1e-3)
    p.add_argument("--margin", type=_positive, default=1e-9)
    common(p)

    p = sub.add_parser("nonregular", help="run the non-integrability witness")
    p.add_argument("--t-list", dest="t_list", type=_float_list, default=None)
    p.add_argument("--tol", type=_positive, default=1e-6)
    common(p)

    p = sub.add_parser("manifold", help="integrate the plane field, report blowup")
    p.add_argument("--seeds", type=_float_list, default=None, help="axis seeds x0")
    p.add_argument("--t-max", dest="t_max", type=_positive, default=1.0)
    p.add_argument("--dt", type=_positive, default=5e-4)
    p.add_argument(
        "--blowup-radius", dest="blowup_radius", type=_positive, default=1e6
    )
    p.add_argument("--samples", type=int, default=200, help="samples per trajectory")
    common(p)

    p = sub.add_parser("all", help="run the certification suite")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common(p)

    return parser


def run(config: RunConfig, stdout=None) -> int:
    """Dispatch a validated configuration; returns the process exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    handler = _HANDLERS.get(config.subcommand)
    if handler is None:
        print(f"unknown subcommand {config.subcommand!r}", file=stdout)
        return 2
    em = _Emitter(config.get("out"), config.get("format", "csv"), stdout)
    try:
        return handler(config, em)
    except DiffeolabError as exc:
        print(f"error: {exc}", file=stdout)
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items() if k != "subcommand"}
    return run(RunConfig(subcommand=args.subcommand, options=options))


if __name__ == "__main__":
    sys.exit(main())
