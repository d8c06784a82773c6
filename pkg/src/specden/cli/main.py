"""
The ``specden`` command line.

Every pipeline of the library is reachable from here::

    specden moments --family jacobi --beta 2 --a 1 --b 2 --n 3 --kmax 8
    specden coeffs --family laguerre --beta 2 --kmax 6 --lmax 3
    specden resolvent --family gaussian --beta 1 --lmax 2 --order 12
    specden derive-ode --family gaussian --beta 4 --n 3 --system
    specden verify fixtures --suite jacobi-beta2,laguerre-beta14 --trials 3
    specden edge soft --beta 2 --xmin -6 --xmax 3
    specden mc --family gaussian --beta 2 --n 8 --samples 100000

Artifacts go to stdout, or to ``--output``. Logging and status lines go to
stderr. Library errors become ``{"code": ..., "message": ...}`` on stderr
with exit status 2 for invalid input and 1 for failed computations;
verification commands exit with 1 when a check fails.
"""

import sys
import json
import logging
from pathlib import Path
from fractions import Fraction

import click
from rich.console import Console
from rich.logging import RichHandler

from specden.edge import (
    hard_edge_op,
    soft_edge_op,
    solve_hard_edge,
    solve_soft_edge,
    derive_hard_edge_op,
)
from specden.config import config
from specden.errors import (
    SpecdenError,
    InvalidSpecError,
    UnsupportedBetaError,
    UnsupportedFamilyError,
)
from specden.diffop import (
    SUPPORTED,
    Scaled,
    EnsembleSpec,
    catalog_pair,
    eliminate_scalar,
    build_jacobi_system,
    build_gaussian_system,
    op_apply_to_weighted_poly,
)
from specden.oracle import cd_density, mc_moments, moments_bruteforce, moments_quadrature
from specden.moments import (
    RECURRENCES,
    COEFF_RECURSIONS,
    Report,
    CoeffTable,
    MomentTable,
    coeff_table,
    moments_exact,
    moments_negative,
    zero_sum_report,
    verify_printed_recursion,
    verify_recurrence_fixture,
)
from specden.stieltjes import moment_recurrence_from_ode
from specden.resolvent import resolvent_series, check_resolvent_ode, expansion_coefficients
from specden.diffop.ensemble import FAMILIES

log = logging.getLogger(__name__)

QUADRATURE_RTOL = 1e-8


class RationalType(click.ParamType):
    """Exact rationals such as ``3``, ``-1/2`` or ``0.25``."""

    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)
            return None


RATIONAL = RationalType()

ENSEMBLE_OPTIONS = [
    click.option("--family", type=click.Choice(FAMILIES), default=None, help="Ensemble family."),
    click.option("--beta", type=RATIONAL, default=None, help="Dyson index."),
    click.option(
        "--n", "n", type=click.IntRange(min=1), default=None, help="Matrix size; omit for symbolic N."
    ),
    click.option("--a", type=RATIONAL, default=Fraction(0), show_default=True, help="Exponent at x = 0."),
    click.option("--b", type=RATIONAL, default=Fraction(0), show_default=True, help="Jacobi exponent at x = 1."),
    click.option("--alpha1", type=RATIONAL, default=None, help="Scale the exponent as a = alpha1*N + a."),
    click.option("--alpha2", type=RATIONAL, default=None, help="Scale the exponent as b = alpha2*N + b."),
    click.option(
        "--g", "gaussian_g", type=RATIONAL, default=None, help="Gaussian coupling; omit for exp(-x^2)."
    ),
]


def ensemble_options(fn):
    for option in reversed(ENSEMBLE_OPTIONS):
        fn = option(fn)
    return fn


def output_options(default="json"):
    def decorate(fn):
        fn = click.option(
            "--output",
            "-o",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
            help="Write the artifact to this file instead of stdout.",
        )(fn)
        return click.option(
            "--format",
            "fmt",
            type=click.Choice(["json", "csv"]),
            default=default,
            show_default=True,
        )(fn)

    return decorate


def build_spec(ensemble):
    """
    Turn the ensemble flags into an :py:class:`~specden.diffop.EnsembleSpec`.

    Args:
        ensemble (dict): The values of :py:data:`ENSEMBLE_OPTIONS`.

    Returns:
        EnsembleSpec: The ensemble.

    Raises:
        InvalidSpecError: If ``--family`` or ``--beta`` is missing.
    """
    if ensemble["family"] is None or ensemble["beta"] is None:
        raise InvalidSpecError("--family and --beta are required")
    a, b = ensemble["a"], ensemble["b"]
    if ensemble["alpha1"] is not None:
        a = Scaled(ensemble["alpha1"], a)
    if ensemble["alpha2"] is not None:
        b = Scaled(ensemble["alpha2"], b)
    return EnsembleSpec(
        ensemble["family"],
        ensemble["beta"],
        n=ensemble["n"],
        a=a,
        b=b,
        gaussian_g=ensemble["gaussian_g"],
    )


def dumps(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit(text, output):
    """
    Write an artifact.

    Args:
        text (str): The artifact.
        output (pathlib.Path): Target file, or :py:data:`None` for stdout.
    """
    if output is None:
        click.echo(text, nl=False)
        return
    with open(output, "w", encoding="UTF-8") as out:
        out.write(text)
    Console(stderr=True).print(f"[b yellow]Wrote [magenta]{output.absolute()!s}")


def _status(reports):
    console = Console(stderr=True)
    for report in reports:
        if report.ok:
            console.print(f"[b green]{report.fixture}[/b green]: {report.checked} checks passed")
        else:
            console.print(
                f"[b red]{report.fixture}[/b red]: {len(report.violations)} of "
                f"{report.checked} checks failed"
            )


def _finish(ctx, suite, reports, output, extra=None):
    payload = {
        "kind": "verification",
        "suite": suite,
        "checked": sum(r.checked for r in reports),
        "violations": sum(len(r.violations) for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    payload.update(extra or {})
    emit(dumps(payload), output)
    _status(reports)
    if payload["violations"]:
        ctx.exit(1)


def configure_logging(verbose):
    """
    Install a :py:class:`rich.logging.RichHandler` on the ``specden`` logger.

    Args:
        verbose (int): ``0`` for warnings, ``1`` for info, ``2`` or more for debug.
    """
    logger = logging.getLogger("specden")
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel([logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)])


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debugging output.")
def cli(verbose):
    """Exact moments, 1/N expansions and edge densities of the classical beta-ensembles."""
    configure_logging(verbose)


@cli.command()
@ensemble_options
@click.option("--kmax", type=click.IntRange(min=0), default=8, show_default=True)
@click.option(
    "--kmin",
    type=click.IntRange(max=0),
    default=0,
    show_default=True,
    help="Most negative index (Laguerre and Jacobi only).",
)
@output_options()
def moments(kmax, kmin, fmt, output, **ensemble):
    """Exact moments m_kmin .. m_kmax; rationals, or rational functions of N."""
    spec = build_spec(ensemble)
    table = moments_exact(spec, kmax)
    if kmin < 0:
        lower = moments_negative(spec, kmin)
        values = {k: v for k, v in lower.values.items() if k < 0}
        values.update(table.values)
        table = MomentTable(spec, values, lower.provenance)
    emit(table.to_json() if fmt == "json" else table.to_csv(), output)


@cli.command()
@ensemble_options
@click.option("--kmax", type=click.IntRange(min=0), default=8, show_default=True)
@click.option("--lmax", type=click.IntRange(min=0), default=4, show_default=True)
@output_options()
def coeffs(kmax, lmax, fmt, output, **ensemble):
    """Coefficients M[k, l] of the moments in powers of N (omit --n)."""
    table = coeff_table(build_spec(ensemble), kmax, lmax)
    emit(table.to_json() if fmt == "json" else table.to_csv(), output)


def _series_csv(rows):
    lines = [",".join(rows[0])]
    lines.extend(",".join(str(v) for v in row) for row in rows[1:])
    return "\n".join(lines) + "\n"


@cli.command()
@ensemble_options
@click.option("--lmax", type=click.IntRange(min=0), default=4, show_default=True)
@click.option("--order", type=click.IntRange(min=1), default=12, show_default=True, help="Truncation order J.")
@output_options()
def resolvent(lmax, order, fmt, output, **ensemble):
    """
    The levels W^l of the scaled resolvent (symbolic N), or the exact
    resolvent series of one ensemble (with --n).
    """
    spec = build_spec(ensemble)
    if not spec.symbolic:
        series = resolvent_series(spec, order)
        if fmt == "json":
            text = dumps({"kind": "resolvent", "spec": spec.to_dict(), "series": series.to_strings()})
        else:
            rows = [("exponent", "value")]
            rows.extend(sorted(series.terms.items(), reverse=True))
            text = _series_csv(rows)
        emit(text, output)
        return
    if ensemble["a"] != 0 or ensemble["b"] != 0:
        raise InvalidSpecError("The 1/N expansion takes a = alpha1*N and b = alpha2*N; use --alpha1/--alpha2")
    stack = expansion_coefficients(
        spec.family,
        spec.beta,
        ensemble["alpha1"] or 0,
        ensemble["alpha2"] or 0,
        lmax,
        order,
    )
    if fmt == "json":
        text = stack.to_json()
    else:
        rows = [("level", "exponent", "value")]
        for l, level in enumerate(stack.levels):
            rows.extend((l, e, c) for e, c in sorted(level.terms.items(), reverse=True))
        text = _series_csv(rows)
    emit(text, output)


def _system_op(spec):
    beta = spec.beta
    if beta.denominator != 1:
        raise UnsupportedBetaError(f"Matrix systems need an even integer beta, not {beta}")
    n = int(beta)
    if spec.family == "jacobi":
        return eliminate_scalar(build_jacobi_system(n, spec))
    if spec.family == "gaussian":
        return eliminate_scalar(build_gaussian_system(n, spec))
    raise UnsupportedFamilyError("Matrix systems are built for the Gaussian and Jacobi ensembles")


@cli.command("derive-ode")
@ensemble_options
@click.option("--system", is_flag=True, help="Eliminate the operator from the matrix system instead.")
@click.option(
    "--edge",
    type=click.Choice(["soft", "hard"]),
    default=None,
    help="Print an edge operator; hard edges are rederived from the Laguerre operator.",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
def derive_ode(system, edge, output, **ensemble):
    """Print the density operator, its right-hand side and its moment recurrence."""
    if edge is not None:
        if ensemble["beta"] is None:
            raise InvalidSpecError("--beta is required")
        if edge == "soft":
            op = soft_edge_op(ensemble["beta"])
            payload = {"kind": "ode", "edge": "soft", "beta": str(ensemble["beta"]), "operator": op.render()}
        else:
            op = derive_hard_edge_op(ensemble["beta"], ensemble["a"])
            payload = {
                "kind": "ode",
                "edge": "hard",
                "beta": str(ensemble["beta"]),
                "a": str(ensemble["a"]),
                "operator": op.render(),
                "catalog_agrees": op.is_proportional(hard_edge_op(ensemble["beta"], ensemble["a"])),
            }
        emit(dumps(payload), output)
        return
    spec = build_spec(ensemble)
    payload = {"kind": "ode", "spec": spec.to_dict()}
    catalog = None
    if spec.beta in SUPPORTED[spec.family]:
        catalog, rhs = catalog_pair(spec)
        payload["rhs"] = rhs.render()
    if system:
        op = _system_op(spec)
        payload["source"] = "system"
        payload["catalog_agrees"] = None if catalog is None else op.is_proportional(catalog)
    elif catalog is None:
        raise UnsupportedFamilyError(f"No catalog operator for {spec.family} beta = {spec.beta}")
    else:
        op = catalog
        payload["source"] = "catalog"
    rec = moment_recurrence_from_ode(op)
    payload.update(
        {
            "operator": op.render(),
            "order": op.order,
            "recurrence": rec.render(),
            "step": rec.step,
            "span": rec.span,
        }
    )
    emit(dumps(payload), output)


@cli.group()
def verify():
    """Check the library against fixtures and independent oracles."""


def _split(suite, registry):
    if suite is None:
        return sorted(registry)
    return [name.strip() for name in suite.split(",") if name.strip()]


def _load_table(path):
    text = Path(path).read_text(encoding="UTF-8")
    try:
        kind = json.loads(text).get("kind")
    except (ValueError, AttributeError) as exc:
        raise InvalidSpecError(f"Cannot parse table {path}: {exc}") from exc
    if kind == "moments":
        return MomentTable.from_json(text), RECURRENCES
    if kind == "coefficients":
        return CoeffTable.from_json(text), COEFF_RECURSIONS
    raise InvalidSpecError(f"{path} is neither a moment nor a coefficient table")


@verify.command()
@click.option("--suite", default=None, help="Comma-separated fixture names; all by default.")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Parameter draws per beta.")
@click.option("--seed", type=int, default=None, help="Seed for the draws; defaults to SPECDEN_SEED.")
@click.option("--kmin", type=int, default=None)
@click.option("--kmax", type=int, default=None)
@click.option(
    "--table",
    "table_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Check a table written by 'moments' or 'coeffs' instead of random draws.",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def fixtures(ctx, suite, trials, seed, kmin, kmax, table_path, output):
    """Compare derived recurrences and tables with the published ones."""
    seed = config["seed"] if seed is None else seed
    if table_path is None:
        reports = [
            verify_recurrence_fixture(name, trials, seed, kmin, kmax)
            for name in _split(suite, RECURRENCES)
        ]
        _finish(ctx, "fixtures", reports, output, {"seed": seed})
        return
    table, registry = _load_table(table_path)
    names = _split(suite, {})
    if not names:
        names = [
            name
            for name, fixture in sorted(registry.items())
            if fixture.family == table.spec.family and table.spec.beta in fixture.betas
        ]
    if not names:
        raise InvalidSpecError(f"No fixture covers {table.spec.family} beta = {table.spec.beta}")
    reports = [verify_printed_recursion(name, table) for name in names]
    _finish(ctx, "fixtures", reports, output, {"table": str(table_path)})


@verify.command()
@ensemble_options
@click.option("--order", type=click.IntRange(min=1), default=16, show_default=True, help="Truncation order J.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def ode(ctx, order, output, **ensemble):
    """
    Substitute the resolvent series into its equation; for beta = 2 also
    apply the operator to the exact density, for Jacobi check the zero sums.
    """
    spec = build_spec(ensemble)
    residual = check_resolvent_ode(spec, order)
    report = Report(f"{spec.family}-beta{spec.beta}-resolvent", checked=1)
    if not residual.ok:
        report.violations.append(
            f"polynomial part {residual.polynomial_part.render()} != {residual.expected.render()}, "
            f"nonzero powers {residual.nonzero}"
        )
    reports = [report]
    if spec.beta == 2 and not spec.symbolic:
        density = cd_density(spec)
        op, _ = catalog_pair(spec)
        image = op_apply_to_weighted_poly(op, density.poly, density.weight)
        annihilation = Report(f"{spec.family}-beta2-annihilation", checked=1)
        if not image.poly.is_zero():
            annihilation.violations.append(f"D rho = w * ({image.poly.render()}) / u^{image.power}")
        reports.append(annihilation)
    if spec.family == "jacobi" and spec.beta in (2, 4) and not spec.symbolic:
        reports.append(zero_sum_report(spec))
    _finish(ctx, "ode", reports, output, {"resolvent": residual.to_dict()})


@verify.command()
@ensemble_options
@click.option("--kmax", type=click.IntRange(min=0), default=8, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def oracle(ctx, kmax, output, **ensemble):
    """
    Compare exact moments with direct integration of the joint density
    (even beta, N <= 3) or with quadrature (beta = 1, N = 2).
    """
    spec = build_spec(ensemble)
    exact = moments_exact(spec, kmax)
    report = Report(f"{spec.family}-beta{spec.beta}-oracle")
    if spec.beta == 1:
        reference = moments_quadrature(spec, kmax)
        for k in range(kmax + 1):
            report.checked += 1
            value = float(exact[k])
            if abs(reference[k] - value) > QUADRATURE_RTOL * abs(value):
                report.violations.append(f"m_{k}: exact {exact[k]}, quadrature {reference[k]!r}")
    else:
        reference = moments_bruteforce(spec, kmax)
        for k in range(kmax + 1):
            report.checked += 1
            if reference[k] != exact[k]:
                report.violations.append(f"m_{k}: recurrence {exact[k]}, direct {reference[k]}")
    _finish(ctx, "oracle", [report], output)


@verify.command("mc")
@ensemble_options
@click.option("--samples", type=click.IntRange(min=2), default=None, help="Number of matrices.")
@click.option("--seed", type=int, default=None, help="Root seed; defaults to SPECDEN_SEED.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--kmax", type=click.IntRange(min=0), default=6, show_default=True)
@click.option("--sigmas", type=float, default=4.0, show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def verify_mc(ctx, samples, seed, workers, kmax, sigmas, output, **ensemble):
    """Check exact moments against Monte Carlo estimates from the tridiagonal models."""
    spec = build_spec(ensemble)
    exact = moments_exact(spec, kmax)
    estimate = mc_moments(spec, samples, seed, kmax, workers)
    report = Report(f"{spec.family}-beta{spec.beta}-mc")
    for k in range(kmax + 1):
        report.checked += 1
        if not estimate.within(exact[k], k, sigmas):
            report.violations.append(
                f"m_{k}: exact {exact[k]}, estimate {estimate.mean[k]!r} +- {estimate.stderr[k]!r}"
            )
    _finish(ctx, "mc", [report], output, {"estimate": estimate.to_dict()})


@cli.group()
def edge():
    """Universal soft and hard edge densities."""


@edge.command()
@click.option("--beta", type=RATIONAL, required=True, help="One of 2/3, 1, 2, 4, 6.")
@click.option("--xmin", type=float, default=-6.0, show_default=True)
@click.option("--xmax", type=float, default=3.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=None, help="Grid size.")
@click.option("--rtol", type=float, default=None, help="Integration tolerance.")
@output_options(default="csv")
def soft(beta, xmin, xmax, points, rtol, fmt, output):
    """Solve the soft edge equation; CSV columns x, rho, residual."""
    solution = solve_soft_edge(beta, xmin, xmax, rtol, points)
    emit(solution.to_csv() if fmt == "csv" else solution.to_json() + "\n", output)


@edge.command()
@click.option("--beta", type=RATIONAL, required=True, help="One of 1, 2, 4.")
@click.option("--a", type=RATIONAL, default=Fraction(0), show_default=True)
@click.option("--xmax", type=float, default=20.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=None, help="Grid size.")
@output_options(default="csv")
def hard(beta, a, xmax, points, fmt, output):
    """Solve the hard edge equation; CSV columns x, rho, residual."""
    solution = solve_hard_edge(beta, a, xmax, points)
    emit(solution.to_csv() if fmt == "csv" else solution.to_json() + "\n", output)


@cli.command("mc")
@ensemble_options
@click.option("--samples", type=click.IntRange(min=2), default=None, help="Number of matrices.")
@click.option("--seed", type=int, default=None, help="Root seed; defaults to SPECDEN_SEED.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--kmax", type=click.IntRange(min=0), default=6, show_default=True)
@output_options()
def monte_carlo(samples, seed, workers, kmax, fmt, output, **ensemble):
    """Monte Carlo moment estimates; CSV columns k, mean, stderr."""
    estimate = mc_moments(build_spec(ensemble), samples, seed, kmax, workers)
    if fmt == "json":
        text = dumps(estimate.to_dict())
    else:
        rows = [("k", "mean", "stderr")]
        rows.extend(
            (k, format(estimate.mean[k], ".17g"), format(estimate.stderr[k], ".17g"))
            for k in sorted(estimate.mean)
        )
        text = _series_csv(rows)
    emit(text, output)


def _fail(payload, code):
    click.echo(json.dumps(payload, sort_keys=True), err=True)
    return code


def run(argv=None):
    """
    Run the command line and map failures to exit codes.

    Args:
        argv (list, optional): Arguments without the program name. Defaults
            to :py:data:`sys.argv`.

    Returns:
        int: ``0`` on success, ``2`` for invalid input, ``1`` otherwise.
    """
    try:
        code = cli.main(args=argv, prog_name="specden", standalone_mode=False)
    except click.exceptions.Abort:
        return _fail({"code": "aborted", "message": "Aborted"}, 1)
    except click.ClickException as exc:
        return _fail({"code": InvalidSpecError.code, "message": exc.format_message()}, 2)
    except SpecdenError as exc:
        log.debug("Command failed", exc_info=True)
        return _fail(exc.as_dict(), exc.exit_code)
    except Exception as exc:  # noqa: BLE001
        log.exception("Unexpected failure")
        return _fail({"code": "internal", "message": str(exc)}, 1)
    return code if isinstance(code, int) else 0


def main():
    sys.exit(run())
