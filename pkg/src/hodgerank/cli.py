"""Command-line front end wiring generators, decomposition, and sweeps.

Every subcommand reads an optional flat key=value config file; explicit
flags win over file entries.  Seeds are always explicit (no wall-clock
defaults), and each output file carries a comment with a hash of the
resolved configuration so a result can be matched to the run that made it.
Failures print one line "error: <CODE>: <message>" on stderr and exit
nonzero.
"""

from __future__ import annotations

import functools
import hashlib
import sys

import click
import numpy as np

from .decomposition import rating_from_cochain
from .experiment import (AllTrialsDiscardedError, ConnectivityError, SweepGrid,
                         TrialConfig, run_sweep)
from .generators import MODELS, NetworkSpec, sample
from .io import (config_hash, parse_config_file, read_comparison_log,
                 read_link_flow, read_sweep_csv, write_edge_list,
                 write_fit_csv, write_sweep_csv)
from .ratings import comparisons_to_cochain, rank_from_ratings
from .simplicial import Graph, build_clique_complex
from .solver import ConvergenceError, SolverConfig
from .transition import (Curve, FitConvergenceError, NoTransitionError,
                         select_range_and_fit)

_MODEL_ALIASES = {
    "lattice1d": "lattice1d", "lattice": "lattice1d",
    "erdos_renyi": "erdos_renyi", "er": "erdos_renyi",
    "barabasi_albert": "barabasi_albert", "ba": "barabasi_albert",
    "watts_strogatz": "watts_strogatz", "ws": "watts_strogatz",
}


def _fail(code: str, message) -> None:
    click.echo(f"error: {code}: {message}", err=True)
    sys.exit(1)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConnectivityError as exc:
            _fail("E_CONNECTIVITY", exc)
        except AllTrialsDiscardedError as exc:
            _fail("E_ALL_DISCARDED", exc)
        except ConvergenceError as exc:
            _fail("E_SOLVER", exc)
        except NoTransitionError as exc:
            _fail("E_NO_TRANSITION", exc)
        except FitConvergenceError as exc:
            _fail("E_FIT", exc)
        except (ValueError, KeyError, OSError) as exc:
            _fail("E_INPUT", exc)
    return wrapper


def _resolve(config_path: str | None, flags: dict) -> dict:
    """File entries under the flag values; a flag given on the line wins."""
    merged: dict = {}
    if config_path is not None:
        merged.update(parse_config_file(config_path))
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    return merged


def _require(cfg: dict, *keys: str):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ValueError(f"missing required settings: {', '.join(missing)}")
    return [cfg[k] for k in keys]


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _model_name(value: str) -> str:
    name = _MODEL_ALIASES.get(str(value).strip().lower())
    if name is None:
        raise ValueError(f"unknown model {value!r}; choose from {', '.join(MODELS)}")
    return name


def _float_list(text) -> tuple[float, ...]:
    """Comma list of reals; "start:stop:step" pieces expand inclusively."""
    values: list[float] = []
    for piece in str(text).split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ":" in piece:
            parts = piece.split(":")
            if len(parts) != 3:
                raise ValueError(f"range must be start:stop:step, got {piece!r}")
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError(f"bad range {piece!r}")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            values.extend(start + step * k for k in range(count))
        else:
            values.append(float(piece))
    if not values:
        raise ValueError(f"empty list: {text!r}")
    return tuple(values)


def _int_list(text) -> tuple[int, ...]:
    values = _float_list(text)
    out = []
    for v in values:
        if v != int(v):
            raise ValueError(f"expected integers, got {v}")
        out.append(int(v))
    return tuple(out)


def _fmt17(value: float) -> str:
    return format(float(value), ".17g")


def _solver_config(cfg: dict) -> SolverConfig:
    kwargs = {}
    if "atol" in cfg:
        kwargs["atol"] = float(cfg["atol"])
    if "btol" in cfg:
        kwargs["btol"] = float(cfg["btol"])
    if "max_iter" in cfg:
        kwargs["max_iter"] = int(cfg["max_iter"])
    return SolverConfig(**kwargs)


@click.group()
def main():
    """Ratings and rankings from pairwise comparisons on networks."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--model", default=None)
@click.option("--n", type=int, default=None)
@click.option("--theta", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--out", default=None)
@_guarded
def generate(config_path, model, n, theta, seed, out):
    """Sample one network and write it as an edge list."""
    cfg = _resolve(config_path, {"model": model, "n": n, "theta": theta,
                                 "seed": seed, "out": out})
    model, n, theta, seed, out = _require(cfg, "model", "n", "theta", "seed", "out")
    model = _model_name(model)
    n, theta, seed = int(n), float(theta), int(seed)
    spec = NetworkSpec(model, n, theta, seed)
    g = sample(spec, 0)
    digest = config_hash({"command": "generate", "model": model, "n": n,
                          "theta": _fmt17(theta), "seed": seed})
    write_edge_list(str(out), g, comment=f"config-hash={digest} seed={seed}")
    click.echo(f"wrote {g.edges.shape[0]} edges for {g.n_nodes} nodes to {out}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--input", "input_path", default=None)
@click.option("--out", default=None)
@click.option("--atol", type=float, default=None)
@click.option("--btol", type=float, default=None)
@click.option("--max-iter", "max_iter", type=int, default=None)
@_guarded
def decompose(config_path, input_path, out, atol, btol, max_iter):
    """Split a link-flow file into its components and rate the nodes."""
    cfg = _resolve(config_path, {"input": input_path, "out": out, "atol": atol,
                                 "btol": btol, "max_iter": max_iter})
    input_path, out = _require(cfg, "input", "out")
    n_nodes, pairs, values = read_link_flow(str(input_path))
    if n_nodes is None:
        n_nodes = int(pairs.max()) + 1
    g = Graph.from_edges(n_nodes, pairs)
    if g.edges.shape[0] != pairs.shape[0]:
        raise ValueError("duplicate links in flow file")
    c = build_clique_complex(g)
    f = np.zeros(c.links.shape[0])
    f[c.link_rows(pairs)] = values
    ratings, dec = rating_from_cochain(c, f, _solver_config(cfg))
    digest = config_hash({"command": "decompose", "nodes": n_nodes,
                          "flows_sha256": _file_digest(str(input_path))})
    norms = (f"norm_f={_fmt17(dec.norm_f)} norm_g={_fmt17(dec.norm_g)} "
             f"norm_s={_fmt17(dec.norm_s)} norm_h={_fmt17(dec.norm_h)} "
             f"curl_residual={_fmt17(dec.curl_residual)} "
             f"div_residual={_fmt17(dec.div_residual)}")
    lines = [f"# config-hash={digest}", f"# {norms}", "node,rating"]
    lines.extend(f"{i},{_fmt17(w)}" for i, w in enumerate(ratings))
    with open(str(out), "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")
    click.echo(norms)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--input", "input_path", default=None)
@click.option("--out", default=None)
@click.option("--atol", type=float, default=None)
@click.option("--btol", type=float, default=None)
@click.option("--max-iter", "max_iter", type=int, default=None)
@_guarded
def rate(config_path, input_path, out, atol, btol, max_iter):
    """Rate and rank items from a win/draw/loss comparison log."""
    cfg = _resolve(config_path, {"input": input_path, "out": out, "atol": atol,
                                 "btol": btol, "max_iter": max_iter})
    input_path, out = _require(cfg, "input", "out")
    counts = read_comparison_log(str(input_path))
    g = Graph.from_edges(counts.n_items, counts.pairs)
    c = build_clique_complex(g)
    f = comparisons_to_cochain(c, counts)
    ratings, _ = rating_from_cochain(c, f, _solver_config(cfg))
    ranks = rank_from_ratings(ratings)
    digest = config_hash({"command": "rate",
                          "log_sha256": _file_digest(str(input_path))})
    lines = [f"# config-hash={digest}", "item,rating,rank"]
    lines.extend(f"{i},{_fmt17(w)},{r}" for i, (w, r) in enumerate(zip(ratings, ranks)))
    with open(str(out), "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")
    click.echo(f"rated {counts.n_items} items to {out}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--model", default=None)
@click.option("--n", "n_text", default=None, help="comma list of node counts")
@click.option("--theta", "theta_text", default=None, help="comma list of model parameters")
@click.option("--sigma", "sigma_text", default=None,
              help="comma list of disorder strengths; start:stop:step ranges allowed")
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--workers", type=int, default=None)
@click.option("--require-connected/--allow-disconnected", "require_connected", default=None)
@click.option("--atol", type=float, default=None)
@click.option("--btol", type=float, default=None)
@click.option("--max-iter", "max_iter", type=int, default=None)
@click.option("--out", default=None)
@_guarded
def experiment(config_path, model, n_text, theta_text, sigma_text, samples, seed,
               workers, require_connected, atol, btol, max_iter, out):
    """Run a disorder sweep over a (n, theta, sigma) grid; write a CSV."""
    cfg = _resolve(config_path, {
        "model": model, "n": n_text, "theta": theta_text, "sigma": sigma_text,
        "samples": samples, "seed": seed, "workers": workers,
        "require_connected": require_connected, "atol": atol, "btol": btol,
        "max_iter": max_iter, "out": out,
    })
    model, n_text, theta_text, sigma_text, samples, seed, out = _require(
        cfg, "model", "n", "theta", "sigma", "samples", "seed", "out")
    model = _model_name(model)
    grid = SweepGrid(model, _int_list(n_text), _float_list(theta_text),
                     _float_list(sigma_text))
    samples, seed = int(samples), int(seed)
    workers = int(cfg["workers"]) if "workers" in cfg else None
    trial_cfg = TrialConfig(
        solver=_solver_config(cfg),
        require_connected=_as_bool(cfg.get("require_connected", True)),
    )
    resolved = {
        "command": "experiment", "model": model,
        "n": ",".join(str(v) for v in grid.n_list),
        "theta": ",".join(_fmt17(v) for v in grid.theta_list),
        "sigma": ",".join(_fmt17(v) for v in grid.sigma_list),
        "samples": samples, "seed": seed,
        "require_connected": trial_cfg.require_connected,
        "atol": _fmt17(trial_cfg.solver.atol), "btol": _fmt17(trial_cfg.solver.btol),
        "max_iter": trial_cfg.solver.max_iter,
    }
    digest = config_hash(resolved)
    rows = run_sweep(grid, samples, seed, trial_cfg, workers)
    write_sweep_csv(str(out), rows, comment=f"config-hash={digest} seed={seed}")
    click.echo(f"wrote {len(rows)} grid points to {out}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--input", "input_path", default=None)
@click.option("--out", default=None)
@_guarded
def fit(config_path, input_path, out):
    """Fit the transition model to each rank-error curve of a sweep CSV."""
    cfg = _resolve(config_path, {"input": input_path, "out": out})
    input_path, out = _require(cfg, "input", "out")
    sweep_rows = read_sweep_csv(str(input_path))
    if not sweep_rows:
        raise ValueError(f"{input_path}: no sweep rows")
    groups: dict[tuple[str, int, float], list] = {}
    for row in sweep_rows:
        groups.setdefault((row.model, row.n, row.theta), []).append(row)
    fitted = []
    failures = []
    for (model, n, theta), rows in groups.items():
        rows = sorted(rows, key=lambda r: r.sigma)
        curve = Curve(sigma=[r.sigma for r in rows], value=[r.rho_mean for r in rows],
                      sem=[r.rho_sem for r in rows])
        try:
            fitted.append((model, n, theta, select_range_and_fit(curve)))
        except NoTransitionError as exc:
            failures.append(("E_NO_TRANSITION", model, n, theta, exc))
        except (ValueError, FitConvergenceError) as exc:
            failures.append(("E_FIT", model, n, theta, exc))
    digest = config_hash({"command": "fit",
                          "sweep_sha256": _file_digest(str(input_path))})
    write_fit_csv(str(out), fitted, comment=f"config-hash={digest}")
    for code, model, n, theta, exc in failures:
        click.echo(f"error: {code}: model={model} n={n} theta={_fmt17(theta)}: {exc}",
                   err=True)
    if failures:
        sys.exit(1)
    click.echo(f"wrote {len(fitted)} fits to {out}")


def _file_digest(path: str) -> str:
    with open(path, "rb") as handle:
        return hashlib.sha256(handle.read()).hexdigest()[:16]


if __name__ == "__main__":
    main()
