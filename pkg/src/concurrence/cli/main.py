"""
Command-line interface for the concurrence toolkit.

Every command reads files (or a built-in fixture), writes files, and
writes a run manifest next to its outputs. Exit codes: 0 success, 1 usage
error, 2 data or validation error, 3 work budget exceeded.
"""

import sys
from pathlib import Path
from typing import List, Optional, Tuple

import click
import typer
from loguru import logger
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from concurrence import __version__
from concurrence.config.loader import AnalysisPreset
from concurrence.config.settings import get_settings
from concurrence.core.complex import FilteredComplex
from concurrence.core.exceptions import ConcurrenceError, DataValidationError
from concurrence.core.localization import LocalizationReport
from concurrence.core.models import (
    BinaryMatrix,
    DichotomizeConfig,
    Domain,
    NullConfig,
    PersistenceDiagram,
)
from concurrence.core.pipeline import ConcurrencePipeline
from concurrence.reporting.manifest import ManifestRecorder, sha256_bytes, sha256_file
from concurrence.reporting.plots import emit_plot
from concurrence.reporting.reports import (
    save_complex_to_file,
    save_diagram_to_file,
    save_dropped_to_file,
    save_euler_to_file,
    save_localization_to_file,
    save_moments_to_file,
)
from concurrence.reporting.tables import (
    binary_frame,
    moments_table,
    read_binary_csv,
    read_series_csv,
    write_binary_csv,
    write_series_csv,
    write_table,
)
from concurrence.simulation.fixtures import list_fixtures, toy_fixture
from concurrence.simulation.generator import SyntheticDataGenerator, generate_independent, planted_hole
from concurrence.utils.logging import LoggingContext, setup_logging
from concurrence.utils.validation import (
    parse_levels,
    validate_binary_matrix,
    validate_complex_request,
    validate_series_matrix,
)

app = typer.Typer(
    name="concurrence-cli",
    help="Concurrence homology of binary and time-series data",
    rich_markup_mode="rich",
    no_args_is_help=True,
)
console = Console()

pipeline: Optional[ConcurrencePipeline] = None


def get_pipeline() -> ConcurrencePipeline:
    """Get or create the pipeline instance."""
    global pipeline
    if pipeline is None:
        pipeline = ConcurrencePipeline()
    return pipeline


@app.callback()
def main(
    log_level: str = typer.Option("INFO", "--log-level", "-l", help="Set logging level"),
    log_file: Optional[str] = typer.Option(None, "--log-file", "-f", help="Log file path"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log to the terminal as well"),
):
    """Concurrence homology CLI."""
    setup_logging(
        level=log_level.upper(),
        log_file=log_file,
        enable_console=verbose,
        enable_file=log_file is not None,
    )


def fail(error: Exception) -> None:
    """Report an error and exit with the code its type maps to."""
    if isinstance(error, ConcurrenceError):
        code = error.exit_code
    elif isinstance(error, (ValueError, OSError)):
        code = 2
    else:
        code = 1
    logger.error(f"{type(error).__name__}: {error}")
    console.print(f"[red]Error: {error}[/red]")
    raise typer.Exit(code)


def sidecar(output: Path, suffix: str) -> Path:
    """``out/data.csv`` -> ``out/data.<suffix>``."""
    return output.with_name(f"{output.stem}.{suffix}")


def resolve_preset(name: Optional[str]) -> Optional[AnalysisPreset]:
    if name is None:
        return None
    return get_pipeline().get_preset(name)


def load_binary_input(input_file: Optional[str], fixture: Optional[str]) -> Tuple[BinaryMatrix, str]:
    """Binary matrix and the sha256 of its source bytes."""
    if (input_file is None) == (fixture is None):
        raise typer.BadParameter("give exactly one of --input or --fixture")
    if fixture is not None:
        bm = toy_fixture(fixture)
        data = binary_frame(bm).to_csv(index=False, lineterminator="\n").encode("utf-8")
        return bm, sha256_bytes(data)
    return read_binary_csv(input_file), sha256_file(input_file)


def dichotomize_config(
    preset: Optional[AnalysisPreset],
    domain: Optional[Domain],
    drop_fraction: Optional[float],
    active_fraction: Optional[float],
    power_quantile: Optional[float],
) -> DichotomizeConfig:
    """Explicit flags override the preset, which overrides the defaults."""
    base = preset.dichotomize if preset else DichotomizeConfig()
    overrides = {
        "domain": domain,
        "drop_fraction": drop_fraction,
        "active_fraction": active_fraction,
        "power_quantile": power_quantile,
    }
    values = base.model_dump()
    values.update({k: v for k, v in overrides.items() if v is not None})
    return DichotomizeConfig(**values)


@app.command()
def info():
    """Display built-in fixtures, presets and settings."""
    try:
        settings = get_settings()
        info_text = f"[bold blue]Concurrence toolkit[/bold blue] v{__version__}\n\n[bold]Fixtures:[/bold] "
        info_text += ", ".join(list_fixtures())
        info_text += "\n\n[bold]Presets:[/bold]\n"
        presets = get_pipeline().presets
        for name in presets.get_available_presets():
            preset = presets.get_preset(name)
            info_text += f"• [bold]{name}[/bold] (max dim {preset.max_dim}): {preset.description}\n"
        info_text += (
            f"\n[bold]Settings:[/bold] work budget {settings.work_budget}, "
            f"Euler budget {settings.euler_budget}, threads {settings.threads}"
        )
        console.print(Panel(info_text, title="System Information"))
    except Exception as e:
        fail(e)


@app.command("dichotomize")
def cmd_dichotomize(
    input_file: str = typer.Option(..., "--input", "-i", help="Continuous series CSV"),
    output_file: str = typer.Option(..., "--output", "-o", help="Binary CSV to write"),
    domain: Optional[Domain] = typer.Option(None, "--domain", help="time or fourier"),
    drop_fraction: Optional[float] = typer.Option(None, "--drop-fraction", help="Share of least variable variables to drop"),
    active_fraction: Optional[float] = typer.Option(None, "--active-fraction", help="Share of time points marked active"),
    power_quantile: Optional[float] = typer.Option(None, "--power-quantile", help="Power quantile for Fourier activity"),
    preset: Optional[str] = typer.Option(None, "--preset", "-p", help="Analysis preset supplying defaults"),
):
    """Screen and dichotomize a continuous series matrix."""
    try:
        config = dichotomize_config(resolve_preset(preset), domain, drop_fraction, active_fraction, power_quantile)
        recorder = ManifestRecorder("dichotomize", config.model_dump(mode="json"))
        digest = sha256_file(input_file) if Path(input_file).exists() else ""
        with LoggingContext(command="dichotomize", input_digest=digest):
            sm = read_series_csv(input_file)
            is_valid, problems = validate_series_matrix(sm, config)
            if not is_valid:
                raise ConcurrenceError("; ".join(problems), error_code="invalid_series")

            result = get_pipeline().dichotomize(sm, config)
            output = Path(output_file)
            write_binary_csv(result.binary, output)
            save_dropped_to_file(result.dropped, result.retained, config, sidecar(output, "dropped.json"))
            recorder.save(digest, sidecar(output, "manifest.json"))

        console.print(
            f"[green]Wrote {result.binary.N}x{result.binary.V} binary matrix to {output} "
            f"({len(result.dropped)} variables dropped)[/green]"
        )
    except typer.Exit:
        raise
    except click.UsageError:
        raise
    except Exception as e:
        fail(e)


@app.command("persist")
def cmd_persist(
    input_file: Optional[str] = typer.Option(None, "--input", "-i", help="Binary CSV"),
    fixture: Optional[str] = typer.Option(None, "--fixture", help="Built-in dataset I-V"),
    output_dir: str = typer.Option("persistence_output", "--output-dir", "-o", help="Directory for results"),
    max_dim: Optional[int] = typer.Option(None, "--max-dim", "-d", help="Highest homology dimension"),
    euler_levels: Optional[str] = typer.Option(None, "--euler-levels", help="Comma-separated levels for Euler characteristics"),
    preset: Optional[str] = typer.Option(None, "--preset", "-p", help="Analysis preset supplying --max-dim"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", min=1, help="Worker threads for Euler levels (default: CT_THREADS)"),
):
    """Build the filtered complex and compute its persistent homology."""
    try:
        if max_dim is None:
            if preset is None:
                raise typer.BadParameter("--max-dim is required unless --preset is given")
            max_dim = resolve_preset(preset).max_dim
        levels = parse_levels(euler_levels)
        bm, digest = load_binary_input(input_file, fixture)
        recorder = ManifestRecorder(
            "persist", {"max_dim": max_dim, "euler_levels": levels, "fixture": fixture, "threads": threads}
        )
        settings = get_settings()
        with LoggingContext(command="persist", input_digest=digest):
            is_valid, problems = validate_binary_matrix(bm)
            if not is_valid:
                raise DataValidationError("; ".join(problems), source=input_file)
            for problem in problems:
                console.print(f"[yellow]Warning: {problem}[/yellow]")
            ok, problems = validate_complex_request(bm, max_dim, settings.work_budget)
            if not ok:
                logger.warning("; ".join(problems))

            runner = get_pipeline()
            fc = runner.build_complex(bm, max_dim)
            diagram = runner.persist(fc, max_dim)
            diagram = diagram.model_copy(
                update={"provenance": {**diagram.provenance, "input_digest": digest}}
            )
            result = runner.summarize(fc, diagram, levels, threads)
            save_persistence_outputs(Path(output_dir), fc, diagram, result.moments, result.euler)
            recorder.save(digest, Path(output_dir) / "manifest.json")

        display_diagram(diagram)
        for f, chi in result.euler.items():
            console.print(f"Euler characteristic at level {f}: [bold]{chi}[/bold]")
        console.print(f"[green]Results saved to: {output_dir}[/green]")
    except typer.Exit:
        raise
    except click.UsageError:
        raise
    except Exception as e:
        fail(e)


def save_persistence_outputs(out: Path, fc: FilteredComplex, diagram: PersistenceDiagram, vectors, euler) -> None:
    out.mkdir(parents=True, exist_ok=True)
    save_complex_to_file(fc, out / "complex.json")
    save_diagram_to_file(diagram, out / "diagram.json")
    for d in range(diagram.max_dim + 1):
        emit_plot(diagram, d, out)
    save_moments_to_file(vectors, out / "moments.json")
    write_table(moments_table(vectors), out / "moments.csv")
    if euler:
        save_euler_to_file(euler, out / "euler.json")


def display_diagram(diagram: PersistenceDiagram) -> None:
    table = Table(title="Persistence pairs")
    table.add_column("Dim", justify="right")
    table.add_column("Pairs", justify="right")
    table.add_column("(birth, death)", style="cyan")
    for d in range(diagram.max_dim + 1):
        pairs = diagram.pairs_of_dim(d)
        shown = ", ".join(f"({p.birth},{p.death})" for p in pairs[:8])
        if len(pairs) > 8:
            shown += ", ..."
        table.add_row(str(d), str(len(pairs)), shown)
    console.print(table)


@app.command("localize")
def cmd_localize(
    input_file: Optional[str] = typer.Option(None, "--input", "-i", help="Binary CSV"),
    fixture: Optional[str] = typer.Option(None, "--fixture", help="Built-in dataset I-V"),
    dim: Optional[int] = typer.Option(None, "--dim", "-d", help="Homology dimension to localize"),
    levels: Optional[str] = typer.Option(None, "--levels", help="Comma-separated frequency levels (default: all)"),
    output_file: str = typer.Option("localization.json", "--output", "-o", help="JSON report"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", min=1, help="Worker threads (default: CT_THREADS)"),
    preset: Optional[str] = typer.Option(None, "--preset", "-p", help="Analysis preset supplying the dimensions"),
):
    """Localize homology classes by short cycles at each frequency level.

    With several dimensions from a preset, one report per dimension is
    written as ``<output stem>_dim<d><suffix>``.
    """
    try:
        if dim is not None:
            dims = [dim]
        elif preset is not None:
            dims = sorted(set(resolve_preset(preset).localize_dims))
        else:
            raise typer.BadParameter("--dim is required unless --preset is given")
        if not dims:
            raise typer.BadParameter(f"preset '{preset}' names no dimensions to localize")
        chosen_levels = parse_levels(levels)
        bm, digest = load_binary_input(input_file, fixture)
        recorder = ManifestRecorder(
            "localize", {"dims": dims, "levels": chosen_levels, "fixture": fixture, "preset": preset}
        )
        output = Path(output_file)
        with LoggingContext(command="localize", input_digest=digest):
            is_valid, problems = validate_binary_matrix(bm)
            if not is_valid:
                raise DataValidationError("; ".join(problems), source=input_file)
            runner = get_pipeline()
            fc = runner.build_complex(bm, max(dims))
            reports = runner.localize(fc, dims, chosen_levels, threads)
            targets = {d: report_path(output, d, len(dims)) for d in dims}
            for d, report in reports.items():
                save_localization_to_file(report, targets[d])
                recorder.save(digest, sidecar(targets[d], "manifest.json"))

        for d, report in reports.items():
            display_localization(report, d)
            console.print(f"[green]Report saved to: {targets[d]}[/green]")
    except typer.Exit:
        raise
    except click.UsageError:
        raise
    except Exception as e:
        fail(e)


def report_path(output: Path, d: int, n_dims: int) -> Path:
    if n_dims == 1:
        return output
    return output.with_name(f"{output.stem}_dim{d}{output.suffix}")


def display_localization(report: LocalizationReport, d: int) -> None:
    table = Table(title=f"Dimension {d} localization")
    table.add_column("Level", justify="right")
    table.add_column("Betti", justify="right")
    table.add_column("Short cycles", justify="right")
    table.add_column("Narrow", justify="right")
    table.add_column("Adjacent", justify="right")
    for level in report.levels:
        table.add_row(
            str(level.level), str(level.betti), str(len(level.short_cycles)),
            str(len(level.narrow)), str(len(level.adjacent)),
        )
    console.print(table)


@app.command("simulate")
def cmd_simulate(
    output_file: str = typer.Option(..., "--output", "-o", help="CSV to write"),
    fixture: Optional[str] = typer.Option(None, "--fixture", help="Write built-in dataset I-V"),
    planted_dim: Optional[int] = typer.Option(None, "--planted-dim", help="Plant a hole of this dimension"),
    n_vars: int = typer.Option(32, "--vars", help="Number of variables"),
    n_obs: int = typer.Option(192, "--obs", help="Observations (noise rows with --planted-dim)"),
    rate: float = typer.Option(0.2, "--rate", help="Activity rate of the independence null"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    continuous: bool = typer.Option(False, "--continuous", help="Write white-noise series instead of binary data"),
):
    """Write a built-in fixture or synthetic data."""
    try:
        config = {
            "fixture": fixture, "planted_dim": planted_dim, "vars": n_vars,
            "obs": n_obs, "rate": rate, "seed": seed, "continuous": continuous,
        }
        recorder = ManifestRecorder("simulate", config)
        output = Path(output_file)
        with LoggingContext(command="simulate"):
            if continuous:
                if n_obs < 2 or n_vars < 1:
                    raise ValueError("continuous series need --obs >= 2 and --vars >= 1")
                write_series_csv(SyntheticDataGenerator(seed).white_noise_series(n_obs, n_vars), output)
            else:
                if fixture is not None:
                    bm = toy_fixture(fixture)
                elif planted_dim is not None:
                    bm = planted_hole(planted_dim, n_vars, noise_obs=n_obs, seed=seed)
                else:
                    bm = generate_independent(NullConfig(n_obs=n_obs, n_vars=n_vars, activity_rate=rate, seed=seed))
                write_binary_csv(bm, output)
            recorder.save(sha256_file(output), sidecar(output, "manifest.json"))
        console.print(f"[green]Wrote {output}[/green]")
    except typer.Exit:
        raise
    except click.UsageError:
        raise
    except Exception as e:
        fail(e)


def run(args: Optional[List[str]] = None) -> None:
    """Console entry point; usage errors exit with code 1."""
    command = typer.main.get_command(app)
    try:
        code = command.main(args=args, prog_name="concurrence-cli", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(1)
    except click.Abort:
        console.print("[red]Aborted[/red]")
        sys.exit(1)
    except ConcurrenceError as e:
        console.print(f"[red]Error: {e}[/red]")
        sys.exit(e.exit_code)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    run()
