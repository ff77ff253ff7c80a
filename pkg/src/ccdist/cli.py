"""Command-line interface.

Data goes to stdout as JSON (default) or CSV; diagnostics go to stderr.
Exit codes: 0 success, 2 usage error, 3 unachievable tolerance.
"""

import csv
import io
import json
import math
import re
import sys

import click
import numpy as np

from . import distributions as dist
from . import series, transform
from .errors import DomainError, ResourceError, UnsupportedError
from .sampling import make_rng, mean_convergence_experiment, sample

_RANGE = re.compile(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$")
_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_GRID = re.compile(rf"^\s*({_NUM})\s*\.\.\s*({_NUM})\s*:\s*(\d+)\s*$")


def parse_int_range(text):
    m = _RANGE.match(text)
    if not m:
        raise click.BadParameter(f"expected a..b, got {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    if b < a:
        raise click.BadParameter(f"empty range {text!r}")
    return range(a, b + 1)


def parse_grid(text):
    m = _GRID.match(text)
    if not m:
        raise click.BadParameter(f"expected a..b:steps, got {text!r}")
    a, b, n = float(m.group(1)), float(m.group(2)), int(m.group(3))
    if n < 1:
        raise click.BadParameter("grid needs at least one point")
    return np.linspace(a, b, n)


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _dump(obj):
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}"
                               for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    return _num(obj)


def render(command, params, rows, fmt):
    """Serialize one output record; reals carry 17 significant digits."""
    if fmt == "json":
        return _dump({"command": command, "params": params,
                      "rows": [list(r) for r in rows]}) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "value"])
    for label, value in rows:
        w.writerow([label if isinstance(label, str) else _num(label), _num(value)])
    return buf.getvalue()


def _emit(ctx, command, params, rows):
    click.echo(render(command, params, rows, ctx.obj["format"]), nl=False)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (DomainError, UnsupportedError) as exc:
            click.echo(ctx.get_usage(), err=True)
            click.echo(f"Error: {exc}", err=True)
            ctx.exit(2)
        except ResourceError as exc:
            msg = f"Error: {exc}"
            if exc.achievable is not None:
                msg += f" (achievable bracket width {exc.achievable:.3g})"
            click.echo(msg, err=True)
            ctx.exit(3)


@click.group(cls=_Group)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="Bracket width for series-based computations.")
@click.pass_context
def main(ctx, fmt, tol):
    """Discrete Cauchy-Cacoullos distributions."""
    if not tol > 0:
        raise click.BadParameter("tol must be positive", param_hint="--tol")
    ctx.obj = {"format": fmt, "tol": tol}


def _fmt_option(f):
    # also accept --format after the subcommand
    def cb(ctx, param, value):
        if value is not None:
            ctx.find_root().obj["format"] = value
    return click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                        default=None, expose_value=False, callback=cb)(f)


def _tol_option(f):
    def cb(ctx, param, value):
        if value is not None:
            if not value > 0:
                raise click.BadParameter("tol must be positive")
            ctx.find_root().obj["tol"] = value
    return click.option("--tol", type=float, default=None, expose_value=False,
                        callback=cb)(f)


@main.command("pmf")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--nu", type=int, default=None)
@click.option("--k", "krange", default="-5..5", show_default=True)
@_fmt_option
@_tol_option
@click.pass_context
def cmd_pmf(ctx, lam, nu, krange):
    ks = parse_int_range(krange)
    if nu is None or nu == 1:
        law = dist.make_cc(lam)
    else:
        law = dist.make_student(nu, lam)
    rows = [(k, law.pmf(k)) for k in ks]
    _emit(ctx, "pmf", {"lambda": lam, "nu": 1 if nu is None else nu,
                       "k": krange}, rows)


@main.command("cdf")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--k", "krange", default="-5..5", show_default=True)
@_fmt_option
@_tol_option
@click.pass_context
def cmd_cdf(ctx, lam, krange):
    """Bracket midpoints of P(X <= k); each is within tol/2 of the truth."""
    ks = parse_int_range(krange)
    d = dist.make_cc(lam)
    tol = ctx.obj["tol"]
    rows = []
    for k in ks:
        lo, hi = d.cdf(k, tol)
        rows.append((k, 0.5 * (lo + hi)))
    _emit(ctx, "cdf", {"lambda": lam, "k": krange, "tol": tol}, rows)


@main.command("quantile")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--u", "levels", type=float, multiple=True, required=True)
@_fmt_option
@click.pass_context
def cmd_quantile(ctx, lam, levels):
    d = dist.make_cc(lam)
    rows = [(u, d.quantile(u)) for u in levels]
    _emit(ctx, "quantile", {"lambda": lam}, rows)


@main.command("sample")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--size", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@_fmt_option
@click.pass_context
def cmd_sample(ctx, lam, size, seed):
    x = sample(dist.make_cc(lam), make_rng(seed), size)
    _emit(ctx, "sample", {"lambda": lam, "size": size, "seed": seed},
          list(enumerate(int(v) for v in x)))


@main.command("chf")
@click.option("--lambda", "lam", type=float, required=True)
@click.option("--nu", type=int, default=None)
@click.option("--t", "grid", default="0..6.283185307179586:9", show_default=True)
@_fmt_option
@_tol_option
@click.pass_context
def cmd_chf(ctx, lam, nu, grid):
    ts = parse_grid(grid)
    if nu is None or nu == 1:
        vals = transform.chf(dist.make_cc(lam), ts)
    else:
        vals = transform.student_chf(dist.make_student(nu, lam), ts,
                                     tol=ctx.obj["tol"])
    _emit(ctx, "chf", {"lambda": lam, "nu": 1 if nu is None else nu, "t": grid},
          list(zip(ts.tolist(), np.asarray(vals).tolist())))


@main.command("convolve")
@click.option("--l1", type=float, required=True)
@click.option("--l2", type=float, required=True)
@_fmt_option
@click.pass_context
def cmd_convolve(ctx, l1, l2):
    mix = dist.convolve(dist.make_cc(l1), dist.make_cc(l2))
    rows = []
    for i, (w, d) in enumerate(mix.components):
        rows.append((f"weight_{i}", w))
        rows.append((f"lambda_{i}", d.lam))
    _emit(ctx, "convolve", {"l1": l1, "l2": l2}, rows)


@main.command("limit")
@click.option("--lambda", "lam", type=float, default=1.0, show_default=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--replications", "--reps", type=click.IntRange(min=100),
              default=2000, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@_fmt_option
@click.pass_context
def cmd_limit(ctx, lam, n, replications, seed):
    rep = mean_convergence_experiment(lam, n, replications, seed)
    rows = [("lambda", rep.lam), ("n", rep.n), ("replications", rep.replications),
            ("ks_distance", rep.ks_distance), ("ks_critical", rep.ks_critical),
            ("scale_used", rep.scale_used), ("passed", rep.passed)]
    _emit(ctx, "limit", {"lambda": lam, "n": n, "replications": replications,
                         "seed": seed}, rows)


@main.group("series", invoke_without_command=True)
@click.option("--lambda", "lam", type=float, default=None)
@click.option("--m", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--t", type=float, default=0.0, show_default=True)
@_fmt_option
@_tol_option
@click.pass_context
def cmd_series(ctx, lam, m, t):
    """sum_k cos(kt)/(lam^2+k^2)^m in closed form and by brute force."""
    if ctx.invoked_subcommand is not None:
        return
    if lam is None:
        raise click.UsageError("--lambda is required", ctx)
    tol = ctx.obj["tol"]
    rows = []
    if m in (1, 2):
        total = series.sum_inverse_power(lam, m)
        if m == 1:
            ratio = transform.chf(dist.make_cc(lam), t)
        else:
            ratio = transform.student_chf(dist.make_student(3, lam), t)
        rows.append(("closed_form", total * ratio))
    s = series.brute_force_sum(lam, m, t, tol)
    rows += [("oracle", s.estimate), ("oracle_lower", s.lower),
             ("oracle_upper", s.upper), ("terms_used", s.terms_used)]
    _emit(ctx, "series", {"lambda": lam, "m": m, "t": t, "tol": tol}, rows)


@cmd_series.command("zeta")
@click.option("--n", type=click.IntRange(1, 2), required=True)
@_fmt_option
@_tol_option
@click.pass_context
def cmd_zeta(ctx, n):
    """zeta(2n) by small-scale extrapolation, beside a direct sum."""
    tol = ctx.obj["tol"]
    direct = series.direct_zeta(n, tol)
    rows = [("extrapolated", series.zeta_even(n)), ("direct", direct.estimate),
            ("direct_lower", direct.lower), ("direct_upper", direct.upper)]
    _emit(ctx, "series zeta", {"n": n, "tol": tol}, rows)


if __name__ == "__main__":
    sys.exit(main())
