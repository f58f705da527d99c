"""
命令行入口：preserver decompose / check / gen / fuzz

结果 JSON 写标准输出，诊断写标准错误。退出码：
  decompose  0 成功，2 NotPreserver，3 NumericalBreakdown，1 I/O 或解析错误
  check      0 Yes，2 No，4 Inapplicable，3 数值崩溃，1 用法错误
  gen        0 成功，1 参数不可行
  fuzz       0 无失败，2 有性质失败
"""
import logging
import sys
import time

import click

from src.canonical import (
    CanonicalForm,
    DecomposeFailure,
    FailureKind,
    build,
    decompose,
    verify_preserver_sampled,
)
from src.classify import (
    Verdict,
    check_disjointness_preserver,
    check_kyfan_isometry,
    check_partial_isometry_preserver,
    check_schatten_isometry,
    check_triple_homomorphism,
    check_zero_triple_preserver,
)
from src.genfuzz import (
    FuzzConfig,
    fuzz_equivalences,
    perturb,
    random_canonical,
    random_disjoint_pair,
    random_partial_isometry,
)
from src.linmap import zero_map
from src.matcore import (
    DegenerateDomainError,
    Field,
    NumericalBreakdownError,
    PreserverError,
    Tolerances,
)
from src.utils import SEED_LIMIT, format_duration, format_multiset, format_residual, format_signature

from .codec import (
    CodecError,
    dumps,
    failure_to_dict,
    form_to_dict,
    map_to_dict,
    matrices_to_dict,
    read_map,
    verdict_to_dict,
)

logger = logging.getLogger("preserver.cli")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO = 2
EXIT_BREAKDOWN = 3
EXIT_INAPPLICABLE = 4

FAILURE_EXIT_CODES = {
    FailureKind.NOT_PRESERVER: EXIT_NO,
    FailureKind.NUMERICAL_BREAKDOWN: EXIT_BREAKDOWN,
    FailureKind.DEGENERATE_DOMAIN: EXIT_ERROR,
}

VERDICT_EXIT_CODES = {
    Verdict.YES: EXIT_OK,
    Verdict.NO: EXIT_NO,
    Verdict.INAPPLICABLE: EXIT_INAPPLICABLE,
}

CLASSES = ("disjoint", "zero-triple", "triple-hom", "pisom", "schatten", "kyfan")


class PreserverGroup(click.Group):
    """命令返回值即退出码；用法错误统一为 1。"""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop("standalone_mode", None)
        try:
            rv = super().main(args=args, prog_name=prog_name, standalone_mode=False, **extra)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_ERROR)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_ERROR)
        sys.exit(rv if isinstance(rv, int) else EXIT_OK)


def _tolerances(tol, trials) -> Tolerances:
    try:
        return Tolerances.from_config().with_overrides(residual=tol, sample_trials=trials)
    except PreserverError as exc:
        raise click.UsageError(str(exc))


def _load_map(path):
    try:
        return read_map(path)
    except (OSError, CodecError) as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        return None


def _emit(payload):
    click.echo(dumps(payload))


seed_option = click.option(
    "--seed", type=click.IntRange(0, SEED_LIMIT - 1), default=0, show_default=True,
    help="Master seed (u64) for every random draw.",
)
tol_option = click.option(
    "--tol", type=click.FloatRange(min=0, min_open=True), default=None,
    help="Residual threshold for zero tests (default from PRESERVER_RESIDUAL).",
)
trials_option = click.option(
    "--trials", type=click.IntRange(min=1), default=None,
    help="Sampled trials (default from PRESERVER_SAMPLE_TRIALS).",
)


@click.group(cls=PreserverGroup)
def cli():
    """Disjointness preservers between rectangular matrix spaces."""


@cli.command("decompose")
@click.argument("input_path", type=click.Path(dir_okay=False, allow_dash=True))
@tol_option
@seed_option
@trials_option
def cmd_decompose(input_path, tol, seed, trials):
    """Recover U, V, Q1, Q2 from a MapFile."""
    phi = _load_map(input_path)
    if phi is None:
        return EXIT_ERROR
    tolerances = _tolerances(tol, trials)
    logger.info(f"decompose {format_signature(phi.m, phi.n, phi.r, phi.s, phi.field)}")
    result = decompose(phi, tolerances, seed)
    if isinstance(result, CanonicalForm):
        preserved, _ = verify_preserver_sampled(phi, tolerances.sample_trials, seed, tolerances)
        if preserved:
            click.echo(
                f"Q1={format_multiset(result.Q1)} Q2={format_multiset(result.Q2)}", err=True
            )
            _emit(form_to_dict(result))
            return EXIT_OK
        result = DecomposeFailure(
            FailureKind.NUMERICAL_BREAKDOWN,
            stage="sampled_verification",
            detail="canonical form found but a sampled pair is not preserved",
        )
    click.echo(
        f"{result.kind.value} at {result.stage or '-'} (residual {format_residual(result.residual)})",
        err=True,
    )
    _emit(failure_to_dict(result, phi.field))
    return FAILURE_EXIT_CODES[result.kind]


@cli.command("check")
@click.argument("input_path", type=click.Path(dir_okay=False, allow_dash=True))
@click.option("--class", "klass", type=click.Choice(CLASSES), required=True, help="Preserver class.")
@click.option("--p", "p", type=float, default=None, help="Schatten exponent.")
@click.option("--k", "k", type=int, default=None, help="Ky Fan index on the codomain.")
@click.option("--kprime", type=int, default=None, help="Ky Fan index on the domain.")
@tol_option
@seed_option
@trials_option
def cmd_check(input_path, klass, p, k, kprime, tol, seed, trials):
    """Classify a MapFile and print the verdict."""
    if klass == "schatten" and p is None:
        raise click.UsageError("--class schatten requires --p")
    if klass == "kyfan" and (k is None or kprime is None):
        raise click.UsageError("--class kyfan requires --k and --kprime")
    phi = _load_map(input_path)
    if phi is None:
        return EXIT_ERROR
    tolerances = _tolerances(tol, trials)
    try:
        if klass == "disjoint":
            verdict = check_disjointness_preserver(phi, tolerances, seed)
        elif klass == "zero-triple":
            verdict = check_zero_triple_preserver(phi, tolerances, seed)
        elif klass == "triple-hom":
            verdict = check_triple_homomorphism(phi, tolerances, seed)
        elif klass == "pisom":
            verdict = check_partial_isometry_preserver(phi, tolerances, seed)
        elif klass == "schatten":
            verdict = check_schatten_isometry(phi, p, tolerances, seed)
        else:
            verdict = check_kyfan_isometry(phi, k, kprime, tolerances, seed)
    except NumericalBreakdownError as exc:
        click.echo(f"error: numerical breakdown: {exc}", err=True)
        return EXIT_BREAKDOWN
    except DegenerateDomainError as exc:
        click.echo(f"error: degenerate domain: {exc}", err=True)
        return EXIT_ERROR
    except PreserverError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    _emit(verdict_to_dict(verdict, phi.field))
    return VERDICT_EXIT_CODES[verdict.verdict]


@cli.command("gen")
@click.option(
    "--kind", type=click.Choice(("canonical", "disjoint-pair", "pisom", "zero")),
    default="canonical", show_default=True,
)
@click.option("--m", "m", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--n", "n", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--r", "r", type=click.IntRange(min=1), default=None, help="Default: smallest feasible.")
@click.option("--s", "s", type=click.IntRange(min=1), default=None, help="Default: smallest feasible.")
@click.option("--q1", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--q2", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--rank", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--field", "field_name", type=click.Choice(("real", "complex")), default="real", show_default=True)
@click.option("--perturb", "epsilon", type=click.FloatRange(min=0), default=None)
@click.option(
    "--format", "output_format", type=click.Choice(("map", "canonical")), default="map", show_default=True,
)
@seed_option
def cmd_gen(kind, m, n, r, s, q1, q2, rank, field_name, epsilon, output_format, seed):
    """Generate a MapFile, CanonicalFile or matrix JSON."""
    field = Field.parse(field_name)
    if output_format == "canonical" and (kind != "canonical" or epsilon is not None):
        raise click.UsageError("--format canonical needs --kind canonical without --perturb")
    try:
        if kind == "disjoint-pair":
            _emit(matrices_to_dict(random_disjoint_pair(m, n, field, seed), field))
            return EXIT_OK
        if kind == "pisom":
            _emit(matrices_to_dict([random_partial_isometry(m, n, rank, field, seed)], field))
            return EXIT_OK
        if kind == "zero":
            phi = zero_map(m, n, r or m, s or n, field)
        else:
            r = q1 * m + q2 * n if r is None else r
            s = q1 * n + q2 * m if s is None else s
            # q1 = q2 = 0 时最小尺寸为 0
            form = random_canonical(m, n, max(r, 1), max(s, 1), field, q1, q2, seed)
            if output_format == "canonical":
                _emit(form_to_dict(form))
                return EXIT_OK
            phi = build(form)
        if epsilon is not None:
            phi = perturb(phi, epsilon, seed)
    except PreserverError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    _emit(map_to_dict(phi))
    return EXIT_OK


@cli.command("fuzz")
@click.option("--trials", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--max-dim", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--sample-trials", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Default from PRESERVER_FUZZ_WORKERS.")
@click.option("--progress/--no-progress", default=None, help="tqdm bar on standard error.")
@seed_option
def cmd_fuzz(trials, max_dim, sample_trials, workers, progress, seed):
    """Run the randomized invariant suites and print the report."""
    overrides = {"workers": workers, "progress": progress}
    config = FuzzConfig(
        trials=trials,
        max_dim=max_dim,
        seed=seed,
        sample_trials=sample_trials,
        **{key: value for key, value in overrides.items() if value is not None},
    )
    started = time.monotonic()
    report = fuzz_equivalences(config)
    click.echo(
        f"fuzz: {trials} trials, {report.total_failures} failures, "
        f"{format_duration(time.monotonic() - started)}",
        err=True,
    )
    _emit(report.to_dict())
    return EXIT_OK if report.total_failures == 0 else EXIT_NO
