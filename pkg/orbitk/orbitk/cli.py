"""
Command-Line Interface

One subcommand per computation. Every subcommand computes its full result
before printing anything; with --json only the machine report is printed.
Exit status is 2 for usage errors, 1 for invalid input and 3 when two
independent computations disagree.
"""

import logging
import random
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

from .abgroup import FgAbGroup
from .cluster import cluster_k0_report, cluster_triangle, kleinian_k0, kleinian_matrix
from .cluster import template as invariant_template
from .config import Settings, configure_logging
from .dgcore import (
    CATEGORIES,
    DgEndofunctor,
    FiniteDgCategory,
    comparison_map_check,
    epsilon_quasi_iso_check,
    h0_category,
    orbit_n,
    orbit_z,
    square_zero,
    swap_functor,
)
from .errors import InputValidationError, InvariantViolation, OrbitError, ReportWarning
from .exactla import IntMatrix, random_matrix, snf, snf_problems
from .fields import field_from_name
from .mukai import (
    CohomologyModel,
    CurveK0,
    curve_orbit_report,
    line_bundle_hp_map,
    serre_hp_map,
    spherical_hp_maps,
    spherical_orbit_k0,
    spherical_projection,
)
from .mukai_models import ModelFactory
from .orbit_triangle import (
    OrbitDegreeResult,
    extension_warnings,
    hp_orbit_dims,
    hp_sixterm,
    orbit_groups,
    suspension_orbit,
)
from .quiver import Quiver, cartan_matrix, coxeter_matrix, is_dynkin
from .quiver_presets import QuiverFactory
from .report import RunReport, inputs_digest, unique_warnings
from .serialization import (
    load_category,
    load_functor,
    load_model,
    load_quiver,
    load_spec,
)

logger = logging.getLogger(__name__)


class InputError(click.ClickException):
    exit_code = 1


class InternalError(click.ClickException):
    exit_code = 3


class OrbitkGroup(click.Group):
    """Command group translating domain errors into exit codes."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except InvariantViolation as exc:
            raise InternalError(f"internal invariant violated: {exc}") from exc
        except OrbitError as exc:
            raise InputError(str(exc)) from exc


def parse_vector(text: str) -> List[int]:
    """Parse "2,0,-1" into integers."""
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise InputValidationError(f"cannot parse integer vector {text!r}") from None


def parse_rows(text: str) -> List[List[str]]:
    """Parse "1,0;0,1" into rows of entry strings ("" is the empty matrix)."""
    cleaned = text.replace(" ", "")
    if not cleaned:
        return []
    rows = [row.split(",") for row in cleaned.split(";")]
    if any(not entry for row in rows for entry in row):
        raise InputValidationError(f"cannot parse matrix {text!r}")
    return rows


def parse_int_rows(text: str) -> IntMatrix:
    rows = parse_rows(text)
    try:
        values = [[int(entry) for entry in row] for row in rows]
    except ValueError:
        raise InputValidationError(f"cannot parse integer matrix {text!r}") from None
    if any(len(row) != len(values[0]) for row in values):
        raise InputValidationError(f"rows of {text!r} have different lengths")
    return IntMatrix.from_rows(values, cols=None if values else 0)


def json_option(command: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--json", "as_json", is_flag=True, help="Print the machine-readable report"
    )(command)


def _finish(
    name: str,
    params: Dict[str, Any],
    results: Dict[str, Any],
    lines: Sequence[str],
    warnings: Sequence[ReportWarning] = (),
    files: Sequence[Optional[str]] = (),
    as_json: bool = False,
) -> RunReport:
    report = RunReport(
        command=(name,) + tuple(f"--{k}={v}" for k, v in sorted(params.items())),
        digest=inputs_digest(name, params, files),
        results=results,
        lines=tuple(lines),
        warnings=unique_warnings(warnings),
    )
    logger.debug("finished %s", name)
    click.echo(report.to_json() if as_json else report.render())
    return report


def _quiver(preset: Optional[str], path: Optional[str]) -> Quiver:
    if (preset is None) == (path is None):
        raise click.UsageError("give exactly one of --quiver and --quiver-file")
    if path is not None:
        return load_quiver(path)
    return QuiverFactory.create(preset or "")


def quiver_options(command: Callable[..., Any]) -> Callable[..., Any]:
    command = click.option(
        "--quiver-file", type=click.Path(), help="Quiver JSON file"
    )(command)
    return click.option(
        "--quiver", "quiver_name", help="Preset: A<s>, D<s>, E6-E8, kronecker<m>"
    )(command)


def _model(
    path: Optional[str],
    preset: Optional[str],
    genus: Optional[int],
    degree: Optional[int],
) -> CohomologyModel:
    if (path is None) == (preset is None):
        raise click.UsageError("give exactly one of --model and --preset")
    if path is not None:
        return load_model(path)
    params = {
        key: value
        for key, value in (("genus", genus), ("degree", degree))
        if value is not None
    }
    return ModelFactory.create(preset or "", **params)


def model_options(command: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option("--model", "model_file", type=click.Path(), help="Model JSON"),
            click.option(
                "--preset", help="point, projective_line, curve or k3_lattice"
            ),
            click.option("--genus", type=int, help="Genus for the curve preset"),
            click.option("--degree", type=int, help="Degree of the line bundle L"),
        ]
    ):
        command = option(command)
    return command


@click.group(cls=OrbitkGroup)
@click.option("-v", "--verbose", is_flag=True, help="Log debug output to stderr")
def main(verbose: bool) -> None:
    """Exact invariants of dg orbit categories."""
    settings = Settings.from_environment()
    configure_logging("DEBUG" if verbose else settings.log_level)


@main.command()
@click.option("--s", "s", type=int, required=True, help="Index of the A_s singularity")
@json_option
def kleinian(s: int, as_json: bool) -> RunReport:
    """K₀ of the stable MCM category of the A_s Kleinian singularity."""
    group = kleinian_k0(s)
    matrix = kleinian_matrix(s)
    return _finish(
        "kleinian",
        {"s": s},
        {"group": group.render(), "matrix": matrix.to_json()},
        [group.render(), str(matrix)],
        as_json=as_json,
    )


@main.command("cluster-k0")
@quiver_options
@click.option("--n", "n", type=int, required=True, help="Cluster index n ≥ 0")
@json_option
def cluster_k0_command(
    quiver_name: Optional[str], quiver_file: Optional[str], n: int, as_json: bool
) -> RunReport:
    """K₀ of the n-cluster category of an acyclic quiver."""
    q = _quiver(quiver_name, quiver_file)
    report = cluster_k0_report(q, n)
    return _finish(
        "cluster-k0",
        {"quiver": quiver_name, "quiver_file": quiver_file, "n": n},
        report.to_dict(),
        [report.group.render(), str(report.matrix)],
        report.warnings,
        [quiver_file],
        as_json,
    )


def _degree_lines(results: Sequence[OrbitDegreeResult]) -> List[str]:
    lines = []
    for result in results:
        if result.resolved is not None:
            value = result.resolved.render()
        else:
            value = f"extension of {result.ker_piece} by {result.coker_piece}"
        lines.append(f"degree {result.degree}: {value}")
    return lines


@main.command("cluster-triangle")
@quiver_options
@click.option("--n", "n", type=int, required=True, help="Cluster index")
@click.option(
    "--template",
    "template_name",
    default="kh",
    show_default=True,
    help="Invariant of the base field: kh or hp",
)
@json_option
def cluster_triangle_command(
    quiver_name: Optional[str],
    quiver_file: Optional[str],
    n: int,
    template_name: str,
    as_json: bool,
) -> RunReport:
    """Orbit triangle of an n-cluster category for a shipped invariant."""
    q = _quiver(quiver_name, quiver_file)
    results = cluster_triangle(q, n, invariant_template(template_name))
    return _finish(
        "cluster-triangle",
        {
            "quiver": quiver_name,
            "quiver_file": quiver_file,
            "n": n,
            "template": template_name,
        },
        {"degrees": [r.to_dict() for r in results]},
        _degree_lines(results),
        extension_warnings(results),
        [quiver_file],
        as_json,
    )


@main.command()
@quiver_options
@json_option
def coxeter(
    quiver_name: Optional[str], quiver_file: Optional[str], as_json: bool
) -> RunReport:
    """Cartan and Coxeter matrices of an acyclic quiver."""
    q = _quiver(quiver_name, quiver_file)
    cartan, phi, dynkin = cartan_matrix(q), coxeter_matrix(q), is_dynkin(q)
    return _finish(
        "coxeter",
        {"quiver": quiver_name, "quiver_file": quiver_file},
        {
            "vertices": list(q.vertices),
            "cartan": cartan.to_json(),
            "coxeter": phi.to_json(),
            "dynkin": dynkin,
        },
        [str(phi), f"cartan: {cartan}", f"dynkin: {dynkin}"],
        files=[quiver_file],
        as_json=as_json,
    )


@main.command("orbit-triangle")
@click.option("--spec", "spec_file", type=click.Path(), required=True)
@click.option(
    "--suspension",
    type=int,
    default=None,
    help="Use F = Σⁿ instead of the stored automorphisms",
)
@json_option
def orbit_triangle_command(
    spec_file: str, suspension: Optional[int], as_json: bool
) -> RunReport:
    """Orbit groups E_n(A/F^Z) from the cokernel and kernel of E(F) − Id."""
    spec = load_spec(spec_file)
    if suspension is None:
        results = orbit_groups(spec)
    else:
        results = suspension_orbit(spec, suspension)
    return _finish(
        "orbit-triangle",
        {"spec": spec_file, "suspension": suspension},
        {"degrees": [r.to_dict() for r in results]},
        _degree_lines(results),
        extension_warnings(results),
        [spec_file],
        as_json,
    )


@main.command("hp-sixterm")
@click.option("--even-dim", type=int, required=True)
@click.option("--odd-dim", type=int, required=True)
@click.option("--f-even", default="", help='HP⁺(F) as "1,0;0,1" (identity if empty)')
@click.option("--f-odd", default="", help='HP⁻(F) as "1,0;0,1" (identity if empty)')
@json_option
def hp_sixterm_command(
    even_dim: int, odd_dim: int, f_even: str, f_odd: str, as_json: bool
) -> RunReport:
    """Dimensions of HP± of the orbit category from the six-term sequence."""
    if even_dim < 0 or odd_dim < 0:
        raise InputValidationError("dimensions must be nonnegative")

    def matrix(text: str, size: int) -> Any:
        if not text:
            return [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        return parse_rows(text)

    plus, minus = hp_sixterm(
        even_dim, odd_dim, matrix(f_even, even_dim), matrix(f_odd, odd_dim)
    )
    return _finish(
        "hp-sixterm",
        {"even_dim": even_dim, "odd_dim": odd_dim, "f_even": f_even, "f_odd": f_odd},
        {"plus": plus, "minus": minus},
        [f"HP+ = {plus}, HP- = {minus}"],
        as_json=as_json,
    )


@main.command("hp-line-bundle")
@model_options
@click.option("--n", "n", type=int, default=0, show_default=True)
@click.option("--serre", is_flag=True, help="Use the Serre functor instead of L")
@json_option
def hp_line_bundle(
    model_file: Optional[str],
    preset: Optional[str],
    genus: Optional[int],
    degree: Optional[int],
    n: int,
    serre: bool,
    as_json: bool,
) -> RunReport:
    """HP dimensions of the orbit category of −⊗L[n] (or of the Serre functor)."""
    m = _model(model_file, preset, genus, degree)
    even, odd = serre_hp_map(m) if serre else line_bundle_hp_map(m, n)
    plus, minus = hp_orbit_dims(even, odd)
    return _finish(
        "hp-line-bundle",
        {
            "model": model_file,
            "preset": preset,
            "genus": genus,
            "degree": degree,
            "n": n,
            "serre": serre,
        },
        {"model": m.name, "plus": plus, "minus": minus},
        [f"HP+ = {plus}, HP- = {minus}", f"model: {m.name}"],
        m.warnings(),
        [model_file],
        as_json,
    )


@main.command("spherical-k0")
@click.option("--chi", required=True, help='Row of χ(E, −), e.g. "2,0"')
@click.option("--e", "e_class", required=True, help='Class of E, e.g. "1,0"')
@json_option
def spherical_k0(chi: str, e_class: str, as_json: bool) -> RunReport:
    """K₀ of the orbit category of a spherical twist."""
    group = spherical_orbit_k0(parse_vector(chi), parse_vector(e_class))
    return _finish(
        "spherical-k0",
        {"chi": chi, "e": e_class},
        {"group": group.render()},
        [group.render()],
        as_json=as_json,
    )


@main.command("spherical-hp")
@model_options
@json_option
def spherical_hp(
    model_file: Optional[str],
    preset: Optional[str],
    genus: Optional[int],
    degree: Optional[int],
    as_json: bool,
) -> RunReport:
    """HP dimensions of the orbit category of the spherical twist by E."""
    m = _model(model_file, preset, genus, degree)
    projection = spherical_projection(m)
    plus, minus = hp_orbit_dims(*spherical_hp_maps(m))
    return _finish(
        "spherical-hp",
        {"model": model_file, "preset": preset, "genus": genus, "degree": degree},
        {
            "model": m.name,
            "plus": plus,
            "minus": minus,
            "projection": projection.to_json(),
        },
        [f"HP+ = {plus}, HP- = {minus}", f"model: {m.name}"],
        m.warnings(),
        [model_file],
        as_json,
    )


@main.command("curve-kh0")
@click.option("--pic", default="Z", show_default=True, help="Pic(C) as a group")
@click.option("--l", "l_class", required=True, help="[L] in the Pic generators")
@click.option("--n", "n", type=int, required=True)
@json_option
def curve_kh0(pic: str, l_class: str, n: int, as_json: bool) -> RunReport:
    """KH₀ of the orbit category of −⊗L[n] on a curve."""
    k0 = CurveK0.of(FgAbGroup.parse(pic), parse_vector(l_class))
    report = curve_orbit_report(k0, n)
    return _finish(
        "curve-kh0",
        {"pic": pic, "l": l_class, "n": n},
        report.to_dict(),
        [report.computed.render(), f"split formula: {report.displayed.render()}"],
        report.warnings,
        as_json=as_json,
    )


DG_CHECKS = ("orbit", "colimit", "epsilon", "comparison", "square-zero", "h0")


def _dg_inputs(
    cat_file: Optional[str],
    example: Optional[str],
    field_name: str,
    functor_file: Optional[str],
    functor_name: str,
) -> Tuple[FiniteDgCategory, DgEndofunctor]:
    if (cat_file is None) == (example is None):
        raise click.UsageError("give exactly one of --cat and --example")
    if cat_file is not None:
        a = load_category(cat_file)
    else:
        key = (example or "").lower()
        if key not in CATEGORIES:
            supported = ", ".join(sorted(CATEGORIES))
            raise InputValidationError(
                f"Unsupported example: {example}. Supported examples are: {supported}"
            )
        a = CATEGORIES[key](field_from_name(field_name))
    if functor_file is not None:
        return a, load_functor(a, functor_file)
    if functor_name == "swap":
        if set(a.objects) != {"x", "y"}:
            raise InputValidationError("the swap functor needs objects x and y")
        return a, swap_functor(a)
    return a, DgEndofunctor.identity(a)


def _dims_table(a: FiniteDgCategory) -> List[Dict[str, Any]]:
    return [
        {
            "source": x,
            "target": y,
            "dims": {str(k): v for k, v in a.hom(x, y).dims().items()},
        }
        for x, y in a.pairs()
    ]


@main.command("dg-orbit")
@click.option("--cat", "cat_file", type=click.Path(), help="Category JSON file")
@click.option("--example", help="Shipped category: " + ", ".join(sorted(CATEGORIES)))
@click.option("--field", "field_name", default="Q", show_default=True)
@click.option("--functor", "functor_file", type=click.Path(), help="Functor JSON")
@click.option(
    "--functor-preset",
    "functor_name",
    type=click.Choice(["identity", "swap"]),
    default="identity",
    show_default=True,
)
@click.option("--N", "bound", type=int, default=4, show_default=True)
@click.option("--P", "stages", type=int, default=4, show_default=True)
@click.option(
    "--check",
    "checks",
    multiple=True,
    type=click.Choice(("all",) + DG_CHECKS),
    default=("all",),
    show_default=True,
)
@json_option
def dg_orbit(
    cat_file: Optional[str],
    example: Optional[str],
    field_name: str,
    functor_file: Optional[str],
    functor_name: str,
    bound: int,
    stages: int,
    checks: Tuple[str, ...],
    as_json: bool,
) -> RunReport:
    """Orbit categories of a finite dg category and the checks relating them."""
    a, f = _dg_inputs(cat_file, example, field_name, functor_file, functor_name)
    selected = DG_CHECKS if "all" in checks else tuple(
        c for c in DG_CHECKS if c in checks
    )
    results: Dict[str, Any] = {"category": a.name, "functor": f.name}
    lines: List[str] = []
    warnings: List[ReportWarning] = []
    passed = True
    if "orbit" in selected:
        orbit = orbit_n(a, f, bound)
        results["orbit"] = {"N": bound, "homs": _dims_table(orbit.category)}
        lines.append(f"orbit: A/F^N truncated at N = {bound} re-validated")
    if "colimit" in selected:
        colimit = orbit_z(a, f, bound, stages)
        results["colimit"] = colimit.to_dict()
        warnings.extend(colimit.warnings)
        lines.append(f"colimit: stabilized = {colimit.stabilized}")
    if "epsilon" in selected:
        epsilon = epsilon_quasi_iso_check(a, f, bound, stages)
        results["epsilon"] = epsilon.to_dict()
        passed = passed and epsilon.passed
        lines.append(f"epsilon: {'pass' if epsilon.passed else 'FAIL'}")
    if "comparison" in selected:
        comparison = comparison_map_check(a, f, bound)
        results["comparison"] = comparison.to_dict()
        passed = passed and comparison.passed
        lines.append(f"comparison: {'pass' if comparison.passed else 'FAIL'}")
    if "square-zero" in selected:
        extension = square_zero(a, f)
        results["square_zero"] = {"homs": _dims_table(extension)}
        lines.append("square-zero: extension re-validated")
    if "h0" in selected:
        h0 = h0_category(a)
        results["h0"] = h0.to_dict()
        dims = ", ".join(f"{x}->{y}: {d}" for (x, y), d in h0.dims().items())
        lines.append(f"h0: {dims}")
    results["passed"] = passed
    lines.insert(0, f"dg-orbit {a.name} by {f.name}: {'pass' if passed else 'FAIL'}")
    return _finish(
        "dg-orbit",
        {
            "cat": cat_file,
            "example": example,
            "field": field_name,
            "functor": functor_file,
            "functor_preset": functor_name,
            "N": bound,
            "P": stages,
            "check": list(checks),
        },
        results,
        lines,
        warnings,
        [cat_file, functor_file],
        as_json,
    )


@main.command("snf")
@click.option("--matrix", "matrix_text", help='Integer matrix as "1,2;3,4"')
@click.option("--random", "count", type=int, help="Run the property suite COUNT times")
@json_option
def snf_command(
    matrix_text: Optional[str], count: Optional[int], as_json: bool
) -> RunReport:
    """Smith normal form of a matrix, or the randomized SNF property suite."""
    if (matrix_text is None) == (count is None):
        raise click.UsageError("give exactly one of --matrix and --random")
    if matrix_text is not None:
        a = parse_int_rows(matrix_text)
        result = snf(a)
        diagonal = [str(v) for v in result.diagonal]
        return _finish(
            "snf",
            {"matrix": matrix_text},
            {
                "diagonal": diagonal,
                "u": result.u.to_json(),
                "d": result.d.to_json(),
                "v": result.v.to_json(),
            },
            [f"diag({', '.join(diagonal)})", f"U = {result.u}", f"V = {result.v}"],
            as_json=as_json,
        )
    seed = Settings.from_environment().seed
    rng = random.Random(seed)
    failures = []
    for index in range(count or 0):
        a = random_matrix(rng)
        problems = snf_problems(a)
        if problems:
            failures.append(
                {"index": index, "matrix": a.to_json(), "problems": problems}
            )
    if failures:
        raise InvariantViolation(
            f"{len(failures)} of {count} random matrices break SNF invariants "
            f"(seed {seed}); first: {failures[0]}"
        )
    return _finish(
        "snf",
        {"random": count, "seed": seed},
        {"count": count, "seed": seed, "failures": 0},
        [f"{count} random matrices passed (seed {seed})"],
        as_json=as_json,
    )


def dispatch(argv: Sequence[str]) -> Optional[RunReport]:
    """
    Run one subcommand and return its report.

    Returns None when only help was printed.

    Raises:
        click.ClickException: UsageError (exit code 2), InputError (1) or
            InternalError (3)
    """
    result = main.main(args=list(argv), prog_name="orbitk", standalone_mode=False)
    return result if isinstance(result, RunReport) else None


def run() -> None:
    """Console entry point."""
    main(prog_name="orbitk")
