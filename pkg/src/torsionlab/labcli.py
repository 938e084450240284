"""Command line orchestration for desk-scale experiments.

``lab run config.json`` executes one experiment described by a single
JSON document, writes per-step CSV rows plus a JSON summary, renders a
companion figure for schedule experiments, and caches per-step results
keyed by a content hash so interrupted runs resume where they stopped.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import __version__
from .alexmod import (
    ChainComplex,
    Presentation,
    alexander_polynomial,
    first_nonzero_alexander,
    presentation_rank,
)
from .covers import (
    SNF_CELL_LIMIT,
    CyclicSchedule,
    GpmSchedule,
    betti_deviation_report,
    cover_homology,
    det_prime_via_characters,
    smith_normal_form,
)
from .foxcalc import FIXTURE_NAMES, alexander_matrix_from_presentation, builtin_fixture, parse_presentation
from .lattice import Sublattice, alpha_min_norm, construct_gpm, cyclic_subgroup
from .laurent import LaurentMat, parse_poly, poly_to_string
from .mahler import best_mahler, fk_det_exact, fk_det_numeric, mahler_multivariate, mahler_one_var
from .report import (
    COVER_CSV_COLUMNS,
    format_float,
    render_convergence_figure,
    render_deviation_figure,
    stable_json_dumps,
    write_csv,
    write_json,
)

EXPERIMENT_KINDS = (
    "mahler",
    "alexander",
    "cover_homology",
    "converge_cyclic",
    "converge_gpm",
    "fkdet_approx",
    "betti_deviation",
)


class ConfigError(ValueError):
    """Malformed experiment configuration."""


class StepFailure(RuntimeError):
    pass


# -- input resolution -------------------------------------------------


def _load_input(spec, num_vars=None):
    """Resolve an input descriptor to (kind, payload, canonical_text).

    Accepts ``fixture:<name>``, a path to a presentation file (text
    format or JSON), or an inline polynomial string.
    """
    if isinstance(spec, dict):
        pres = Presentation.from_json(spec, num_vars)
        return "presentation", pres, stable_json_dumps(spec)
    if not isinstance(spec, str):
        raise ConfigError(f"cannot interpret input {spec!r}")
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        try:
            fx = builtin_fixture(name)
        except KeyError as exc:
            raise ConfigError(str(exc)) from None
        return "fixture", fx, spec
    path = Path(spec)
    if path.suffix in (".json", ".txt") or path.exists():
        if not path.exists():
            raise ConfigError(f"input file {spec!r} does not exist")
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".json":
            obj = json.loads(text)
            pres = Presentation.from_json(obj, num_vars)
            return "presentation", pres, text
        return "group", parse_presentation(text), text
    try:
        poly = parse_poly(spec, num_vars)
    except ValueError as exc:
        raise ConfigError(f"input {spec!r} is neither a fixture, a file nor a polynomial: {exc}")
    return "poly", poly, poly_to_string(poly)


def _module_complex(kind, payload):
    """A module-style complex and its first nonzero order polynomial."""
    if kind == "poly":
        pres = Presentation(1, 1, LaurentMat([[payload]], payload.num_vars))
    elif kind == "presentation":
        pres = payload
    elif kind in ("fixture", "group"):
        group = payload.presentation if kind == "fixture" else payload
        pres, _ = alexander_matrix_from_presentation(group)
    else:
        raise ConfigError(f"unsupported input kind {kind}")
    j, delta = first_nonzero_alexander(pres)
    if delta.is_zero():
        raise ConfigError("module has no nonzero order polynomial")
    dpres = Presentation(1, 1, LaurentMat([[delta]], delta.num_vars))
    return ChainComplex.from_presentation(dpres), j, delta, pres


# -- caching -----------------------------------------------------------


def _step_key(config_sig, step_descriptor):
    payload = stable_json_dumps({"config": config_sig, "step": step_descriptor})
    return hashlib.sha256(payload.encode()).hexdigest()


def _cache_get(cache_dir, key):
    if cache_dir is None:
        return None
    p = Path(cache_dir) / f"{key}.json"
    if p.exists():
        return json.loads(p.read_text(encoding="utf-8"))
    return None


def _cache_put(cache_dir, key, row):
    if cache_dir is None:
        return
    p = Path(cache_dir)
    p.mkdir(parents=True, exist_ok=True)
    (p / f"{key}.json").write_text(stable_json_dumps(row), encoding="utf-8")


# -- experiment drivers ------------------------------------------------


def _schedule_from_config(config, num_vars):
    sched = config.get("schedule") or {}
    if "Ns" in sched:
        return CyclicSchedule(tuple(sched["Ns"]))
    if "N_max" in sched:
        n_max = int(sched["N_max"])
        count = int(sched.get("count", 10))
        ns = sorted(
            {max(1, round(n_max ** (i / (count - 1)))) for i in range(count)} | {n_max}
        )
        return CyclicSchedule(tuple(ns))
    if "pairs" in sched:
        return GpmSchedule(tuple((int(p), int(M)) for p, M in sched["pairs"]))
    if "p" in sched and "Ms" in sched:
        p = int(sched["p"])
        return GpmSchedule(tuple((p, int(M)) for M in sched["Ms"]))
    raise ConfigError("schedule must give Ns, N_max, pairs, or p with Ms")


def _run_cover_steps(config, complex_, degree, schedule, cache_dir, config_sig, jobs):
    snf_limit = int(config.get("snf_limit", SNF_CELL_LIMIT))
    items = list(schedule.lattices(complex_.num_vars))
    rows = [None] * len(items)
    failures = []

    def work(pos):
        descriptor, lattice = items[pos]
        step_desc = dict(descriptor)
        key = _step_key(config_sig, step_desc)
        cached = _cache_get(cache_dir, key)
        if cached is not None:
            return pos, cached
        report = cover_homology(complex_, lattice, degree, snf_limit=snf_limit)
        row = {
            "schedule_param": descriptor["schedule_param"],
            "index": lattice.index,
            "alpha": alpha_min_norm(lattice),
            "betti": report.betti,
            "torsion_order": str(report.torsion_order),
            "log_torsion_normalized": float(format_float(report.log_torsion_normalized)),
        }
        _cache_put(cache_dir, key, row)
        return pos, row

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        for fut in [pool.submit(work, i) for i in range(len(items))]:
            try:
                pos, row = fut.result()
                rows[pos] = row
            except Exception as exc:  # noqa: BLE001 - recorded, not fatal
                failures.append(str(exc))
    rows = [r for r in rows if r is not None]
    return rows, failures


def _experiment_converge(config, out_dir, cache_dir, jobs, figures, gpm):
    kind, payload, canon = _load_input(config["input"], config.get("num_vars"))
    complex_, rank_index, delta, _ = _module_complex(kind, payload)
    degree = int(config.get("degree", 0))
    target = config.get("target")
    if target is None:
        target = best_mahler(delta).value
    config_sig = {
        "kind": config["kind"],
        "input": canon,
        "degree": degree,
        "seed": config.get("seed", 0),
        "version": __version__,
    }
    schedule = _schedule_from_config(config, complex_.num_vars)
    if gpm and not isinstance(schedule, GpmSchedule):
        raise ConfigError("converge_gpm needs a gpm schedule (pairs or p/Ms)")
    if not gpm and not isinstance(schedule, CyclicSchedule):
        raise ConfigError("converge_cyclic needs a cyclic schedule (Ns or N_max)")
    rows, failures = _run_cover_steps(
        config, complex_, degree, schedule, cache_dir, config_sig, jobs
    )
    csv_path = write_csv(out_dir / "covers.csv", COVER_CSV_COLUMNS, rows)
    limit_estimate = rows[-1]["log_torsion_normalized"] if rows else None
    summary = {
        "kind": config["kind"],
        "input": config["input"],
        "order_polynomial": poly_to_string(delta),
        "order_polynomial_index": rank_index,
        "steps": len(rows),
        "failed_steps": failures,
        "limit_estimate": limit_estimate,
        "target": target,
        "gap": abs(limit_estimate - target) if rows else None,
    }
    files = [csv_path, write_json(out_dir / "summary.json", summary)]
    if figures and rows:
        files.append(
            render_convergence_figure(
                rows,
                target,
                out_dir / "convergence.png",
                title=f"{config['kind']}: {config['input']}",
            )
        )
    return summary, files


def _experiment_mahler(config, out_dir, cache_dir, jobs, figures):
    kind, payload, canon = _load_input(config["input"], config.get("num_vars"))
    if kind == "poly":
        poly = payload
    else:
        _, _, poly, _ = _module_complex(kind, payload)
    method = config.get("method", "auto")
    if method == "auto":
        est = best_mahler(poly)
    elif method in ("jensen_roots", "riemann_cyclic"):
        est = mahler_one_var(poly, method, n_points=int(config.get("n_points", 2048)))
    else:
        est = mahler_multivariate(
            poly,
            method,
            grid=config.get("grid"),
            prime=int(config.get("prime", 23)),
            M=config.get("M"),
        )
    summary = {
        "kind": "mahler",
        "input": config["input"],
        "polynomial": poly_to_string(poly),
        "estimate": est.to_json(),
        "multiplicative": math.exp(est.value),
    }
    rows = [
        {
            "polynomial": summary["polynomial"],
            "method": est.method,
            "value": est.value,
            "error_budget": est.error_budget,
            "samples_used": est.samples_used,
            "zeros_skipped": est.zeros_skipped,
        }
    ]
    files = [
        write_csv(
            out_dir / "mahler.csv",
            ("polynomial", "method", "value", "error_budget", "samples_used", "zeros_skipped"),
            rows,
        ),
        write_json(out_dir / "summary.json", summary),
    ]
    return summary, files


def _experiment_alexander(config, out_dir, cache_dir, jobs, figures):
    kind, payload, canon = _load_input(config["input"], config.get("num_vars"))
    if kind == "poly":
        raise ConfigError("alexander experiments need a presentation or fixture input")
    if kind in ("fixture", "group"):
        group = payload.presentation if kind == "fixture" else payload
        pres, _ = alexander_matrix_from_presentation(group)
    else:
        pres = payload
    seed = int(config.get("seed", 0))
    rank = presentation_rank(pres, seed=seed)
    j, first = first_nonzero_alexander(pres)
    rows = []
    for l in range(pres.gens + 1):
        rows.append({"l": l, "delta": poly_to_string(alexander_polynomial(pres, l))})
    summary = {
        "kind": "alexander",
        "input": config["input"],
        "gens": pres.gens,
        "rels": pres.rels,
        "rank": rank,
        "first_nonzero_index": j,
        "first_nonzero": poly_to_string(first),
    }
    files = [
        write_csv(out_dir / "alexander.csv", ("l", "delta"), rows),
        write_json(out_dir / "summary.json", summary),
    ]
    return summary, files


def _experiment_cover_homology(config, out_dir, cache_dir, jobs, figures):
    kind, payload, canon = _load_input(config["input"], config.get("num_vars"))
    use_complex = bool(config.get("use_presentation_complex", False))
    if use_complex and kind in ("fixture", "group"):
        group = payload.presentation if kind == "fixture" else payload
        _, complex_ = alexander_matrix_from_presentation(group)
        default_degree = 1
    else:
        complex_, _, _, _ = _module_complex(kind, payload)
        default_degree = 0
    degree = int(config.get("degree", default_degree))
    lat = config.get("lattice") or {}
    if "N" in lat:
        lattice = cyclic_subgroup(int(lat["N"]))
    elif "rows" in lat:
        lattice = Sublattice(lat["rows"])
    elif "gpm" in lat:
        g = lat["gpm"]
        lattice, _ = construct_gpm(complex_.num_vars, int(g["p"]), int(g["M"]))
    else:
        raise ConfigError("cover_homology needs a lattice: N, rows, or gpm {p, M}")
    report = cover_homology(
        complex_, lattice, degree, snf_limit=int(config.get("snf_limit", SNF_CELL_LIMIT))
    )
    row = {
        "schedule_param": lat.get("N", "lattice"),
        "index": lattice.index,
        "alpha": alpha_min_norm(lattice),
        "betti": report.betti,
        "torsion_order": str(report.torsion_order),
        "log_torsion_normalized": report.log_torsion_normalized,
    }
    summary = {"kind": "cover_homology", "input": config["input"], "report": report.to_json()}
    files = [
        write_csv(out_dir / "covers.csv", COVER_CSV_COLUMNS, [row]),
        write_json(out_dir / "summary.json", summary),
    ]
    return summary, files


def _load_matrix(config):
    spec = config.get("matrix")
    if spec is None:
        raise ConfigError("fkdet_approx needs a matrix field")
    if isinstance(spec, str):
        spec = json.loads(Path(spec).read_text(encoding="utf-8"))
    num_vars = spec.get("num_vars")
    rows = [[parse_poly(s, num_vars) for s in row] for row in spec["rows"]]
    width = max((p.num_vars for row in rows for p in row), default=1)
    rows = [[_pad_vars(p, width) for p in row] for row in rows]
    return LaurentMat(rows, width, cols=len(spec["rows"][0]))


def _pad_vars(p, width):
    from .laurent import LaurentPoly

    if p.num_vars == width:
        return p
    return LaurentPoly(width, {e + (0,) * (width - p.num_vars): c for e, c in p.items()})


def _experiment_fkdet(config, out_dir, cache_dir, jobs, figures):
    A = _load_matrix(config)
    target = config.get("target")
    if target is None:
        try:
            target = math.log(fk_det_exact(A))
        except Exception:
            target = math.log(fk_det_numeric(A, grid=int(config.get("grid", 128)))[0])
    schedule = _schedule_from_config(config, A.num_vars)
    config_sig = {
        "kind": "fkdet_approx",
        "matrix": [[poly_to_string(x) for x in row] for row in A.entries],
        "seed": config.get("seed", 0),
        "version": __version__,
    }
    items = list(schedule.lattices(A.num_vars))
    rows = []
    failures = []
    for descriptor, lattice in items:
        key = _step_key(config_sig, dict(descriptor))
        cached = _cache_get(cache_dir, key)
        if cached is not None:
            rows.append(cached)
            continue
        try:
            logdet = det_prime_via_characters(A, lattice)
        except Exception as exc:  # noqa: BLE001
            failures.append(str(exc))
            continue
        row = {
            "schedule_param": descriptor["schedule_param"],
            "index": lattice.index,
            "alpha": alpha_min_norm(lattice),
            "log_det_prime": float(format_float(logdet)),
            "log_det_prime_normalized": float(format_float(logdet / lattice.index)),
        }
        _cache_put(cache_dir, key, row)
        rows.append(row)
    limit_estimate = rows[-1]["log_det_prime_normalized"] if rows else None
    summary = {
        "kind": "fkdet_approx",
        "steps": len(rows),
        "failed_steps": failures,
        "limit_estimate": limit_estimate,
        "target": target,
        "gap": abs(limit_estimate - target) if rows else None,
    }
    files = [
        write_csv(
            out_dir / "fkdet.csv",
            ("schedule_param", "index", "alpha", "log_det_prime", "log_det_prime_normalized"),
            rows,
        ),
        write_json(out_dir / "summary.json", summary),
    ]
    if figures and rows:
        fig_rows = [
            {"index": r["index"], "log_torsion_normalized": r["log_det_prime_normalized"]}
            for r in rows
        ]
        files.append(
            render_convergence_figure(
                fig_rows,
                target,
                out_dir / "convergence.png",
                ylabel="log det' / index",
                title="operator determinant approximation",
            )
        )
    return summary, files


def _random_lattices(num_vars, count, seed, max_entry):
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        rows = tuple(
            tuple(rng.randint(-max_entry, max_entry) for _ in range(num_vars))
            for _ in range(num_vars)
        )
        try:
            lat = Sublattice(rows)
        except Exception:
            continue
        if lat.generators in seen or lat.index == 1:
            continue
        seen.add(lat.generators)
        out.append(lat)
    return out


def _experiment_betti(config, out_dir, cache_dir, jobs, figures):
    kind, payload, canon = _load_input(config["input"], config.get("num_vars"))
    if kind in ("fixture", "group"):
        group = payload.presentation if kind == "fixture" else payload
        _, complex_ = alexander_matrix_from_presentation(group)
    else:
        complex_ = ChainComplex.from_presentation(
            payload
            if kind == "presentation"
            else Presentation(1, 1, LaurentMat([[payload]], payload.num_vars))
        )
    lattice_specs = list(config.get("lattices", []))
    rnd = config.get("random_lattices")
    if not lattice_specs and not rnd:
        raise ConfigError("betti_deviation needs lattices or random_lattices")
    bound_constant = float(config.get("bound_constant", 8.0))
    rows = []
    failures = []

    def build(spec):
        if "N" in spec:
            return cyclic_subgroup(int(spec["N"]))
        if "rows" in spec:
            return Sublattice(spec["rows"])
        raise ConfigError("lattice spec needs N or rows")

    lattices = []
    for spec in lattice_specs:
        try:
            lattices.append(build(spec))
        except ConfigError:
            raise
        except Exception as exc:  # noqa: BLE001 - recorded, not fatal
            failures.append(f"lattice {spec}: {exc}")
    if rnd:
        lattices.extend(
            _random_lattices(
                complex_.num_vars,
                int(rnd.get("count", 20)),
                int(rnd.get("seed", config.get("seed", 0))),
                int(rnd.get("max_entry", 6)),
            )
        )
    for lat in lattices:
        try:
            for r in betti_deviation_report(
                complex_, lat, bound_constant=bound_constant, seed=int(config.get("seed", 0))
            ):
                row = dict(r)
                row["lattice"] = json.dumps(lat.to_json()["rows"], separators=(",", ":"))
                rows.append(row)
        except Exception as exc:  # noqa: BLE001
            failures.append(str(exc))
    positive = [r for r in rows if r["deviation"] > 0]
    fitted = max((r["deviation"] / r["bound_candidate"] for r in positive), default=0.0)
    summary = {
        "kind": "betti_deviation",
        "input": config["input"],
        "lattices": len(lattices),
        "rows": len(rows),
        "failed_steps": failures,
        "fitted_constant": fitted,
        "bound_constant": bound_constant,
        "all_within_bound": all(r["within_bound"] for r in rows),
    }
    files = [
        write_csv(
            out_dir / "betti_deviation.csv",
            (
                "lattice",
                "degree",
                "index",
                "alpha",
                "betti",
                "l2_betti",
                "deviation",
                "bound_candidate",
                "within_bound",
            ),
            rows,
        ),
        write_json(out_dir / "summary.json", summary),
    ]
    if figures and rows:
        files.append(
            render_deviation_figure(rows, out_dir / "deviation.png", title="Betti deviations")
        )
    return summary, files


def run_experiment(config, *, jobs=1, cache_dir=None, figures=True):
    """Execute one experiment config; returns (summary, files, ok)."""
    if "kind" not in config:
        raise ConfigError("config needs a kind")
    kind = config["kind"]
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError(f"unknown kind {kind!r}; have {', '.join(EXPERIMENT_KINDS)}")
    out_dir = Path(config.get("output", "lab_out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    if cache_dir is None:
        cache_dir = config.get("cache")
    if cache_dir is None:
        cache_dir = out_dir / ".cache"
    if kind == "mahler":
        summary, files = _experiment_mahler(config, out_dir, cache_dir, jobs, figures)
    elif kind == "alexander":
        summary, files = _experiment_alexander(config, out_dir, cache_dir, jobs, figures)
    elif kind == "cover_homology":
        summary, files = _experiment_cover_homology(config, out_dir, cache_dir, jobs, figures)
    elif kind == "converge_cyclic":
        summary, files = _experiment_converge(config, out_dir, cache_dir, jobs, figures, gpm=False)
    elif kind == "converge_gpm":
        summary, files = _experiment_converge(config, out_dir, cache_dir, jobs, figures, gpm=True)
    elif kind == "fkdet_approx":
        summary, files = _experiment_fkdet(config, out_dir, cache_dir, jobs, figures)
    else:
        summary, files = _experiment_betti(config, out_dir, cache_dir, jobs, figures)
    ok = not summary.get("failed_steps")
    return summary, files, ok


# -- click wiring ------------------------------------------------------


@click.group(name="lab")
def cli():
    """Desk-scale experiments on covers, measures and torsion growth."""


@cli.command(name="run")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel schedule steps.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None, help="Cache directory override.")
@click.option("--figures/--no-figures", default=True, show_default=True, help="Render companion figures next to the CSV output.")
def run_cmd(config_path, jobs, cache_dir, figures):
    """Run the experiment described by CONFIG_PATH."""
    try:
        config = json.loads(Path(config_path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"config is not valid JSON: {exc}")
    try:
        summary, files, ok = run_experiment(
            config, jobs=jobs, cache_dir=cache_dir, figures=figures
        )
    except ConfigError as exc:
        raise click.UsageError(str(exc))
    click.echo(stable_json_dumps(summary).rstrip())
    for f in files:
        click.echo(f"wrote {f}", err=True)
    if not ok:
        raise StepFailure("some schedule steps failed; partial results kept in cache")


@cli.group(name="fixtures")
def fixtures_group():
    """Built-in presentation fixtures."""


@fixtures_group.command(name="list")
def fixtures_list():
    """List fixture names with their frozen invariants."""
    for name in FIXTURE_NAMES:
        fx = builtin_fixture(name)
        bits = []
        if "alexander" in fx.expected:
            bits.append(f"delta={fx.expected['alexander']}")
        if "mahler" in fx.expected:
            bits.append(f"m={format_float(fx.expected['mahler'])}")
        if fx.expected.get("l2_acyclic"):
            bits.append("l2-acyclic")
        click.echo(f"{name}: {'; '.join(bits)}")


@cli.command(name="mahler")
@click.argument("poly")
@click.option("--method", type=click.Choice(["auto", "jensen_roots", "riemann_cyclic", "torus_grid", "boyd_lawton", "gpm_sequence"]), default="auto", show_default=True)
@click.option("--grid", type=int, default=None, help="Torus grid size per variable.")
@click.option("--prime", type=int, default=23, show_default=True, help="Starting prime for direction-vector strategies.")
@click.option("--n-points", type=int, default=2048, show_default=True, help="Roots of unity for riemann_cyclic.")
def mahler_cmd(poly, method, grid, prime, n_points):
    """Print the logarithmic measure estimate of POLY as JSON."""
    try:
        p = parse_poly(poly)
    except ValueError as exc:
        raise click.UsageError(f"cannot parse polynomial: {exc}")
    try:
        if method == "auto":
            est = best_mahler(p, grid=grid)
        elif method in ("jensen_roots", "riemann_cyclic"):
            est = mahler_one_var(p, method, n_points=n_points)
        else:
            est = mahler_multivariate(p, method, grid=grid, prime=prime)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out = est.to_json()
    out["multiplicative"] = math.exp(est.value)
    click.echo(stable_json_dumps(out).rstrip())


@cli.command(name="snf")
@click.argument("matrix_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--transforms", is_flag=True, help="Include the unimodular transforms.")
def snf_cmd(matrix_path, transforms):
    """Smith normal form of an integer matrix given as JSON."""
    obj = json.loads(Path(matrix_path).read_text(encoding="utf-8"))
    rows = obj["rows"] if isinstance(obj, dict) else obj
    result = smith_normal_form(rows, want_transforms=transforms)
    out = {
        "divisors": [str(d) for d in result.divisors],
        "rank": result.rank,
        "torsion_order": str(result.torsion_order),
    }
    if transforms:
        out["left"] = [list(r) for r in result.left]
        out["right"] = [list(r) for r in result.right]
    click.echo(stable_json_dumps(out).rstrip())


def main(argv=None):
    """Entry point with the documented exit codes (0 ok, 1 usage, 2 failure)."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except StepFailure as exc:
        click.echo(f"computation failure: {exc}", err=True)
        return 2
    except (ConfigError, FileNotFoundError) as exc:
        click.echo(f"usage error: {exc}", err=True)
        return 1
    except Exception as exc:  # noqa: BLE001 - computation failures exit 2
        click.echo(f"computation failure: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
