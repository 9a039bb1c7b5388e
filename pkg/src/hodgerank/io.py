"""Text formats shared by the CLI: edge lists, flows, logs, CSVs, configs.

All files are plain UTF-8 with '#' comment lines.  Floats are rendered
with 17 significant digits so that writing and re-reading a file is
lossless for 64-bit values, which is what makes sweep outputs byte-stable
across reruns.
"""

from __future__ import annotations

import hashlib
from dataclasses import fields
from typing import Iterable, Mapping, Sequence

import numpy as np

from .experiment import SweepRow
from .ratings import ComparisonCounts
from .simplicial import Graph
from .transition import SigmoidFit

__all__ = [
    "SWEEP_HEADER",
    "FIT_HEADER",
    "write_edge_list",
    "read_edge_list",
    "read_link_flow",
    "read_comparison_log",
    "write_sweep_csv",
    "read_sweep_csv",
    "write_fit_csv",
    "read_fit_csv",
    "parse_config_file",
    "config_hash",
]

SWEEP_HEADER = ("model,n,theta,sigma,n_samples,tau_mean,tau_sem,rho_mean,rho_sem,"
                "norm_f_mean,norm_g_mean,norm_s_mean,norm_h_mean,"
                "kappa0_mean,kappa1_mean,kappa2_mean,n_discarded")
FIT_HEADER = ("model,n,theta,A,dA,B,dB,sigma_c,dsigma_c,peak,dpeak,"
              "sigma_star,sigma_star2,residual_sse")

_HASH_EXCLUDED_KEYS = ("workers", "out", "config")


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _parse_error(path: str, line_no: int, message: str) -> ValueError:
    return ValueError(f"{path}:{line_no}: {message}")


def _data_lines(path: str):
    """Yield (line_no, directives, stripped line) skipping blanks and comments."""
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                yield line_no, True, line[1:].strip()
                continue
            yield line_no, False, line


def _directive_int(text: str, key: str) -> int | None:
    if "=" in text:
        k, _, v = text.partition("=")
        if k.strip() == key:
            return int(v.strip())
    return None


def write_edge_list(path: str, g: Graph, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"# nodes={g.n_nodes}")
    lines.extend(f"{i}\t{j}" for i, j in g.edges)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def read_edge_list(path: str) -> Graph:
    """Parse "i<TAB>j" lines; a "# nodes=N" comment fixes the node count."""
    n_nodes: int | None = None
    edges: list[tuple[int, int]] = []
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            try:
                found = _directive_int(text, "nodes")
            except ValueError:
                raise _parse_error(path, line_no, "malformed nodes directive") from None
            if found is not None:
                n_nodes = found
            continue
        parts = text.split()
        if len(parts) != 2:
            raise _parse_error(path, line_no, f"expected 'i<TAB>j', got {text!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise _parse_error(path, line_no, "node labels must be integers") from None
        edges.append((i, j))
    if n_nodes is None:
        if not edges:
            raise ValueError(f"{path}: empty edge list and no nodes directive")
        n_nodes = max(max(e) for e in edges) + 1
    return Graph.from_edges(n_nodes, np.array(edges, dtype=np.int64).reshape(-1, 2))


def read_link_flow(path: str) -> tuple[int | None, np.ndarray, np.ndarray]:
    """Parse "i<TAB>j<TAB>f" lines with i < j; returns (nodes, pairs, values)."""
    n_nodes: int | None = None
    pairs: list[tuple[int, int]] = []
    values: list[float] = []
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            try:
                found = _directive_int(text, "nodes")
            except ValueError:
                raise _parse_error(path, line_no, "malformed nodes directive") from None
            if found is not None:
                n_nodes = found
            continue
        parts = text.split()
        if len(parts) != 3:
            raise _parse_error(path, line_no, f"expected 'i<TAB>j<TAB>f', got {text!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            value = float(parts[2])
        except ValueError:
            raise _parse_error(path, line_no, "expected two integers and a real") from None
        if i >= j:
            raise _parse_error(path, line_no, "flow lines must have i < j")
        if not np.isfinite(value):
            raise _parse_error(path, line_no, "flow value must be finite")
        pairs.append((i, j))
        values.append(value)
    if not pairs:
        raise ValueError(f"{path}: no flow lines")
    return n_nodes, np.array(pairs, dtype=np.int64), np.array(values)


def read_comparison_log(path: str) -> ComparisonCounts:
    """Parse "i<TAB>j<TAB>wins<TAB>draws<TAB>losses" outcome records."""
    n_items: int | None = None
    records: list[tuple[int, int, int, int, int]] = []
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            try:
                found = _directive_int(text, "items")
            except ValueError:
                raise _parse_error(path, line_no, "malformed items directive") from None
            if found is not None:
                n_items = found
            continue
        parts = text.split()
        if len(parts) != 5:
            raise _parse_error(path, line_no, f"expected 5 fields, got {len(parts)}")
        try:
            rec = tuple(int(p) for p in parts)
        except ValueError:
            raise _parse_error(path, line_no, "all fields must be integers") from None
        if rec[2] < 0 or rec[3] < 0 or rec[4] < 0:
            raise _parse_error(path, line_no, "counts must be nonnegative")
        records.append(rec)
    if not records:
        raise ValueError(f"{path}: no comparison records")
    try:
        return ComparisonCounts.from_records(records, n_items=n_items)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def write_sweep_csv(path: str, rows: Sequence[SweepRow], comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(SWEEP_HEADER)
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, f.name)) for f in fields(SweepRow)))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def read_sweep_csv(path: str) -> list[SweepRow]:
    rows: list[SweepRow] = []
    saw_header = False
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            continue
        if not saw_header:
            if text != SWEEP_HEADER:
                raise _parse_error(path, line_no, "unexpected sweep CSV header")
            saw_header = True
            continue
        parts = text.split(",")
        if len(parts) != len(SWEEP_HEADER.split(",")):
            raise _parse_error(path, line_no, "wrong number of columns")
        try:
            rows.append(SweepRow(
                model=parts[0], n=int(parts[1]), theta=float(parts[2]),
                sigma=float(parts[3]), n_samples=int(parts[4]),
                tau_mean=float(parts[5]), tau_sem=float(parts[6]),
                rho_mean=float(parts[7]), rho_sem=float(parts[8]),
                norm_f_mean=float(parts[9]), norm_g_mean=float(parts[10]),
                norm_s_mean=float(parts[11]), norm_h_mean=float(parts[12]),
                kappa0_mean=float(parts[13]), kappa1_mean=float(parts[14]),
                kappa2_mean=float(parts[15]), n_discarded=int(parts[16]),
            ))
        except ValueError:
            raise _parse_error(path, line_no, "malformed sweep row") from None
    if not saw_header:
        raise ValueError(f"{path}: missing sweep CSV header")
    return rows


def write_fit_csv(path: str, rows: Sequence[tuple[str, int, float, SigmoidFit]],
                  comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(FIT_HEADER)
    for model, n, theta, fit in rows:
        cells = [model, str(int(n)), _fmt(theta), _fmt(fit.A), _fmt(fit.dA),
                 _fmt(fit.B), _fmt(fit.dB), _fmt(fit.sigma_c), _fmt(fit.dsigma_c),
                 _fmt(fit.peak), _fmt(fit.dpeak), _fmt(fit.sigma_star),
                 _fmt(fit.sigma_star2), _fmt(fit.residual_sse)]
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def read_fit_csv(path: str) -> list[dict]:
    names = FIT_HEADER.split(",")
    rows: list[dict] = []
    saw_header = False
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            continue
        if not saw_header:
            if text != FIT_HEADER:
                raise _parse_error(path, line_no, "unexpected fit CSV header")
            saw_header = True
            continue
        parts = text.split(",")
        if len(parts) != len(names):
            raise _parse_error(path, line_no, "wrong number of columns")
        row: dict = {"model": parts[0], "n": int(parts[1])}
        for name, cell in zip(names[2:], parts[2:]):
            row[name] = float(cell)
        rows.append(row)
    if not saw_header:
        raise ValueError(f"{path}: missing fit CSV header")
    return rows


def parse_config_file(path: str) -> dict[str, str]:
    """Flat "key = value" lines; '#' comments and blank lines are ignored."""
    out: dict[str, str] = {}
    for line_no, is_comment, text in _data_lines(path):
        if is_comment:
            continue
        if "=" not in text:
            raise _parse_error(path, line_no, f"expected 'key = value', got {text!r}")
        key, _, value = text.partition("=")
        key = key.strip()
        if not key:
            raise _parse_error(path, line_no, "empty key")
        out[key] = value.strip()
    return out


def config_hash(config: Mapping[str, object],
                exclude: Iterable[str] = _HASH_EXCLUDED_KEYS) -> str:
    """Stable short hash of a config mapping.

    Keys that affect only scheduling or file placement (workers, output
    paths) are excluded so that reruns of the same computation agree.
    """
    skip = set(exclude)
    canon = "\n".join(f"{k}={config[k]}" for k in sorted(config) if k not in skip)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]
