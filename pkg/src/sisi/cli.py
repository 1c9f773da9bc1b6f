"""Command-line front end.

Subcommands: validate, simulate, fixpoints, classify, conjugacy, scan,
tensor-dump.  Configuration is a flat key=value file plus flag overrides;
every report echoes the parsed configuration in canonical form, so
identical configuration and seed produce byte-identical output.

Exit codes: 0 ok, 1 negative domain result (inadmissible rates, failed
identity, counterexample found), 2 malformed input, 3 non-convergence.

Figure presets 1-4 are trajectory runs converging to the cataloged limits;
presets 5 and 6 emit the equilibrium balance curves (CSV columns x,f,g)
in the one-crossing and no-crossing regimes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from sisi.model import (
    InadmissibleParams,
    ModelParams,
    NegativeParameter,
    SimplexPoint,
    iterate,
    validate_params,
)
from sisi.tensor import build_tensor, tensor_rows
from sisi.fixpoints import fixed_point_set
from sisi.stability import LAMBDA1, classify_at, classify_lambda1
from sisi.conjugacy import (
    QuadraticMap1D,
    classify_1d_fixed_points,
    conjugacy_map,
    verify_conjugacy,
)
from sisi.dynamics import (
    conjecture_scan,
    detect_limit,
    equilibrium_curves,
    predicted_limit,
)

OK, DOMAIN_NEGATIVE, BAD_INPUT, NO_CONVERGENCE = 0, 1, 2, 3

_PARAM_KEYS = ("b", "alpha", "beta1", "beta2", "k1", "k2")

# (rates, initial point or None, kind) per figure preset
_FIGURES: dict[int, tuple[tuple[float, ...], tuple[float, ...] | None, str]] = {
    1: ((0.6, 0.2, 0.5, 0.0, 1.0, 0.3), (0.1, 0.01, 0.2, 0.69), "trajectory"),
    2: ((0.1, 0.2, 0.5, 0.0, 1.0, 0.3), (0.3, 0.2, 0.4, 0.1), "trajectory"),
    3: ((0.6, 0.1, 0.5, 0.01, 1.2, 1.1), (0.2, 0.1, 0.3, 0.4), "trajectory"),
    4: ((0.1, 0.01, 0.8, 0.2, 0.5, 1.2), (0.2, 0.4, 0.1, 0.3), "trajectory"),
    5: ((0.2, 0.3, 0.6, 0.4, 1.0, 1.0), None, "curves"),
    6: ((0.6, 0.1, 0.5, 0.01, 1.2, 1.1), None, "curves"),
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class RunConfig:
    params: ModelParams | None = None
    init: SimplexPoint | None = None
    figure: int | None = None
    out: str | None = None
    seed: int = 0
    max_iter: int = 1_000_000
    tol_step: float = 1e-12
    tol_fix: float = 1e-10
    grid: int = 10_000
    kind: str = "trajectory"

    def echo(self) -> str:
        """Canonical one-line form of the parsed configuration."""
        parts = []
        if self.params is not None:
            parts += [f"{k}={_fmt(getattr(self.params, k))}" for k in _PARAM_KEYS]
        if self.init is not None:
            parts.append("init=" + ",".join(_fmt(c) for c in self.init.as_tuple()))
        if self.figure is not None:
            parts.append(f"figure={self.figure}")
        parts += [
            f"seed={self.seed}",
            f"max_iter={self.max_iter}",
            f"tol_step={_fmt(self.tol_step)}",
            f"tol_fix={_fmt(self.tol_fix)}",
            f"grid={self.grid}",
        ]
        return " ".join(parts)


class ConfigError(ValueError):
    pass


def _parse_pairs(tokens) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ConfigError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _read_config_file(path: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"malformed config line: {line!r}")
            key, val = line.split("=", 1)
            pairs[key.strip()] = val.strip()
    return pairs


def _resolve(args) -> RunConfig:
    pairs: dict[str, str] = {}
    if getattr(args, "config", None):
        pairs.update(_read_config_file(args.config))
    if getattr(args, "params", None):
        pairs.update(_parse_pairs(args.params))

    cfg = RunConfig()
    try:
        if getattr(args, "figure", None) is not None:
            fig = int(args.figure)
            if fig not in _FIGURES:
                raise ConfigError(f"unknown figure preset {fig}")
            rates, init, kind = _FIGURES[fig]
            cfg.figure = fig
            cfg.kind = kind
            cfg.params = ModelParams(*rates)
            if init is not None:
                cfg.init = SimplexPoint(*init)
        elif any(k in pairs for k in _PARAM_KEYS):
            cfg.params = ModelParams(*(float(pairs.get(k, "0")) for k in _PARAM_KEYS))

        init_text = args.init if getattr(args, "init", None) else pairs.get("init")
        if init_text and cfg.figure is None:
            coords = [float(t) for t in init_text.split(",")]
            if len(coords) != 4:
                raise ConfigError("init needs four comma-separated coordinates")
            cfg.init = SimplexPoint(*coords)

        for key, cast, attr in (
            ("seed", int, "seed"),
            ("max_iter", int, "max_iter"),
            ("tol_step", float, "tol_step"),
            ("tol_fix", float, "tol_fix"),
            ("grid", int, "grid"),
        ):
            if key in pairs:
                setattr(cfg, attr, cast(pairs[key]))
        if getattr(args, "seed", None) is not None:
            cfg.seed = args.seed
        if getattr(args, "max_iter", None) is not None:
            cfg.max_iter = args.max_iter
        if getattr(args, "grid", None) is not None:
            cfg.grid = args.grid
        if getattr(args, "tol_step", None) is not None:
            cfg.tol_step = args.tol_step
        if getattr(args, "tol_fix", None) is not None:
            cfg.tol_fix = args.tol_fix
        if getattr(args, "out", None):
            cfg.out = args.out
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_params(cfg: RunConfig) -> ModelParams:
    if cfg.params is None:
        raise ConfigError("no rates given; use --params or --figure")
    return cfg.params


def cmd_validate(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    lines = [f"# config: {cfg.echo()}"]
    try:
        report = validate_params(p)
    except NegativeParameter as exc:
        lines.append(f"malformed: {exc}")
        _emit(cfg, "\n".join(lines) + "\n")
        return BAD_INPUT
    if report.ok:
        lines.append("admissible: the operator maps the simplex into itself")
        _emit(cfg, "\n".join(lines) + "\n")
        return OK
    lines.append("inadmissible:")
    lines += [f"  {v}" for v in report.violations]
    _emit(cfg, "\n".join(lines) + "\n")
    return DOMAIN_NEGATIVE


def _curves_csv(cfg: RunConfig, p: ModelParams) -> str:
    cur = equilibrium_curves(p)
    lines = [f"# config: {cfg.echo()}"]
    lines.append(f"# value_at_zero: {_fmt(cur.value_at_zero)}")
    lines.append(f"# asymptote: {_fmt(cur.asymptote)}")
    lines.append(f"# slope_linear: {_fmt(cur.slope_linear)}")
    lines.append(f"# slope_saturating_at_zero: {_fmt(cur.slope_saturating_at_zero)}")
    lines.append(f"# sign_changes: {cur.sign_changes}")
    lines.append("# crossings: " + (",".join(_fmt(c) for c in cur.crossings) or "none"))
    lines.append("x,f,g")
    for xv, fv, gv in zip(cur.xs, cur.linear, cur.saturating):
        lines.append(f"{_fmt(xv)},{_fmt(fv)},{_fmt(gv)}")
    return "\n".join(lines) + "\n"


def cmd_simulate(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    if cfg.kind == "curves":
        _emit(cfg, _curves_csv(cfg, p))
        return OK
    if cfg.init is None:
        raise ConfigError("no initial point given; use --init or --figure")
    pred = predicted_limit(cfg.init, p)
    report = detect_limit(cfg.init, p, max_iter=cfg.max_iter,
                          tol_step=cfg.tol_step, tol_fix=cfg.tol_fix,
                          predicted=pred)
    traj = iterate(cfg.init, p, report.iterations)
    lines = [f"# config: {cfg.echo()}", "n,x,u,y,v"]
    for n, row in enumerate(traj.states):
        lines.append(f"{n}," + ",".join(_fmt(c) for c in row))
    if report.converged:
        lines.append("# converged: true")
        lines.append("# limit: " + ",".join(_fmt(c) for c in report.limit)
                     + (f" ({report.snapped})" if report.snapped else ""))
    else:
        lines.append("# converged: false")
    lines.append(f"# iterations: {report.iterations}")
    lines.append(f"# final_step: {_fmt(report.final_step)}")
    lines.append(f"# max_drift: {_fmt(traj.max_drift())}")
    if pred is not None:
        target = ",".join("free" if t != t else _fmt(t) for t in pred.target)
        lines.append(f"# predicted: {pred.regime} -> {target}"
                     + (" [conjectural]" if pred.conjectural else ""))
        lines.append(f"# match: {'n/a' if report.match is None else str(report.match).lower()}")
    else:
        lines.append("# predicted: none")
    _emit(cfg, "\n".join(lines) + "\n")
    return OK if report.converged else NO_CONVERGENCE


def cmd_fixpoints(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    catalog = fixed_point_set(p)
    lines = [f"# config: {cfg.echo()}",
             "label,x,u,y,v,residual,stability,family"]
    for fp in catalog:
        if fp.point is not None:
            coords = ",".join(_fmt(c) for c in fp.point)
        else:
            coords = ",,,"
        lines.append(f"{fp.label},{coords},{_fmt(fp.residual)},"
                     f"{fp.stability or ''},{fp.family or ''}")
    _emit(cfg, "\n".join(lines) + "\n")
    return OK


def cmd_classify(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    closed = classify_lambda1(p)
    lines = [f"# config: {cfg.echo()}"]
    if args.format == "csv":
        lines.append("path,point,classification,eig1,eig2,eig3,eig4")
        eigs = ",".join(_fmt(e.real) for e in closed.eigenvalues)
        lines.append(f"closed-form,lambda_1,{closed.classification},{eigs}")
        generic = classify_at(LAMBDA1, p)
        eigs = ",".join(
            _fmt(e.real) if e.imag == 0 else f"{_fmt(e.real)}{e.imag:+.17g}j"
            for e in generic.eigenvalues)
        lines.append(f"generic,lambda_1,{generic.classification},{eigs}")
        if cfg.init is not None:
            other = classify_at(cfg.init, p)
            eigs = ",".join(
                _fmt(e.real) if e.imag == 0 else f"{_fmt(e.real)}{e.imag:+.17g}j"
                for e in other.eigenvalues)
            pt = ";".join(_fmt(c) for c in cfg.init.as_tuple())
            lines.append(f"generic (outside analyzed scope),{pt},{other.classification},{eigs}")
    else:
        payload = {
            "closed_form": {
                "point": "lambda_1",
                "classification": closed.classification,
                "eigenvalues": [[e.real, e.imag] for e in closed.eigenvalues],
            },
        }
        generic = classify_at(LAMBDA1, p)
        payload["generic"] = {
            "point": "lambda_1",
            "classification": generic.classification,
            "eigenvalues": [[e.real, e.imag] for e in generic.eigenvalues],
        }
        if cfg.init is not None:
            other = classify_at(cfg.init, p)
            payload["at_point"] = {
                "point": list(cfg.init.as_tuple()),
                "classification": other.classification,
                "eigenvalues": [[e.real, e.imag] for e in other.eigenvalues],
                "note": "classification away from lambda_1 is outside the analyzed scope",
            }
        lines.append(json.dumps(payload, sort_keys=True))
    _emit(cfg, "\n".join(lines) + "\n")
    return OK


def cmd_conjugacy(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    if p.beta1 * p.k1 <= 0.0:
        raise ConfigError("conjugacy needs beta1*k1 > 0")
    cm = conjugacy_map(p, root=args.root)
    f = QuadraticMap1D.from_params(p)
    sup = verify_conjugacy(p, grid_size=cfg.grid, root=args.root)
    p1, p2 = classify_1d_fixed_points(p)
    lines = [
        f"# config: {cfg.echo()}",
        f"mu={_fmt(cm.mu)}",
        f"h(x) = {_fmt(cm.slope)}*x + {_fmt(cm.intercept)}  (root choice: {cm.root_choice})",
        "f coefficients (constant, linear, quadratic): "
        + ", ".join(_fmt(c) for c in f.coefficients),
        f"conjugacy sup-norm over {cfg.grid} grid points: {_fmt(sup)}",
        f"fixed point {_fmt(p1.location)}: {p1.label} (f'={_fmt(p1.derivative)})",
        f"fixed point {_fmt(p2.location)}: {p2.label} (f'={_fmt(p2.derivative)})",
        f"mu in (1,3): {'yes' if cm.in_logistic_window else 'no'}",
    ]
    _emit(cfg, "\n".join(lines) + "\n")
    return OK if sup <= 1e-12 else DOMAIN_NEGATIVE


def cmd_scan(args) -> int:
    cfg = _resolve(args)
    report = conjecture_scan(args.conjecture, n_init=args.inits, seed=cfg.seed)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            report.to_jsonl(fh)
    else:
        report.to_jsonl(sys.stdout)
    summary = " ".join(f"{k}={v}" for k, v in sorted(report.summary.items()))
    print(f"# scan conjecture={args.conjecture} seed={cfg.seed} {summary}",
          file=sys.stderr)
    return DOMAIN_NEGATIVE if report.counterexamples else OK


def cmd_tensor_dump(args) -> int:
    cfg = _resolve(args)
    p = _require_params(cfg)
    t = build_tensor(p)
    lines = [f"# config: {cfg.echo()}", "i,j,k,value"]
    lines += [f"{i},{j},{k},{_fmt(v)}" for i, j, k, v in tensor_rows(t)]
    _emit(cfg, "\n".join(lines) + "\n")
    return OK


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--params", nargs="*", metavar="KEY=VALUE",
                     help="rates: b, alpha, beta1, beta2, k1, k2 (missing keys default to 0)")
    sub.add_argument("--config", help="key=value config file; flags override")
    sub.add_argument("--init", help="initial point as x,u,y,v")
    sub.add_argument("--figure", type=int, help="preset 1-6")
    sub.add_argument("--out", help="output path (default stdout)")
    sub.add_argument("--seed", type=int, help="rng seed (default 0)")
    sub.add_argument("--max-iter", type=int, dest="max_iter")
    sub.add_argument("--tol-step", type=float, dest="tol_step")
    sub.add_argument("--tol-fix", type=float, dest="tol_fix")
    sub.add_argument("--grid", type=int, help="grid size where applicable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sisi",
        description="Discrete-time SISI epidemic operator on the 3-simplex",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name, fn, extra in (
        ("validate", cmd_validate, None),
        ("simulate", cmd_simulate, None),
        ("fixpoints", cmd_fixpoints, None),
        ("classify", cmd_classify, "classify"),
        ("conjugacy", cmd_conjugacy, "conjugacy"),
        ("scan", cmd_scan, "scan"),
        ("tensor-dump", cmd_tensor_dump, None),
    ):
        sub = subs.add_parser(name)
        _add_common(sub)
        if extra == "classify":
            sub.add_argument("--format", choices=("json", "csv"), default="json")
        elif extra == "conjugacy":
            sub.add_argument("--root", choices=("one", "interior"), default="one")
        elif extra == "scan":
            sub.add_argument("--conjecture", type=int, choices=(1, 2), required=True)
            sub.add_argument("--inits", type=int, default=5,
                             help="initial points per cell")
        sub.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ConfigError, NegativeParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except InadmissibleParams as exc:
        print(f"error: inadmissible rates: {exc}", file=sys.stderr)
        return BAD_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
