"""Multi-order search pipeline: seed, propagate up and down, report.

A run sweeps a range of orders.  The up phase grows each order's best
graphs by one isolated vertex and searches; the down phase deletes every
single vertex from each order's best graphs, keeps the strongest distinct
remnants, and searches those.  Results land in a shared BestStore, the
per-order best sizes are sampled after every half pass, and the final
table is the run's outcome: a certified-girth lower bound on the maximum
size at every order in range.

Every search task draws its RNG seed from the master seed and the task's
position (pass, direction, order, seed rank, template), so reruns with
the same configuration reproduce the same stream regardless of engine
availability elsewhere in the run.
"""

from __future__ import annotations

import csv
import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .canon import canonical_form
from .graph import add_isolated_vertex, delete_vertex
from .graph6 import encode_graph6
from .search import SearchParams, local_search
from .store import BestStore, load_seed_store, save_store_snapshot

log = logging.getLogger("girth5.pipeline")

DEFAULT_ELL = 150
DEFAULT_PASSES = 2


def wide_window_params(n: int) -> SearchParams:
    """Big deletion window: stalls fast, cheap local polish."""
    return SearchParams(
        total_num_iters=1000 * n, num_iters_too_recent=n, k_max=3, p=0.5
    )


def narrow_window_params(n: int) -> SearchParams:
    """Small deletion window: runs the whole budget, deep exploration."""
    return SearchParams(
        total_num_iters=1000 * n,
        num_iters_too_recent=max(1, n // 3),
        k_max=max(3, n // 10),
        p=0.5,
    )


DEFAULT_TEMPLATES = (wide_window_params, narrow_window_params)


@dataclass
class RunConfig:
    n_low: int
    n_high: int
    ell: int = DEFAULT_ELL
    passes: int = DEFAULT_PASSES
    capacity: int = 500
    master_seed: int = 0
    threads: int = 1
    engine: str = "auto"
    early_stop: bool = False
    min_girth: int = 5
    templates: tuple = DEFAULT_TEMPLATES

    def validate(self):
        from .graph import GraphError

        if self.n_low < 1:
            raise GraphError(f"n_low must be >= 1, got {self.n_low}")
        if self.n_high <= self.n_low:
            raise GraphError(
                f"need n_high > n_low, got {self.n_low}..{self.n_high}"
            )
        if self.ell < 1:
            raise GraphError(f"ell must be >= 1, got {self.ell}")
        if self.passes < 1:
            raise GraphError(f"passes must be >= 1, got {self.passes}")
        if self.threads < 1:
            raise GraphError(f"threads must be >= 1, got {self.threads}")


def derive_rng_seed(master_seed, *path) -> int:
    """Stable 64-bit stream id for one search task."""
    text = "|".join(str(x) for x in (master_seed,) + path)
    digest = hashlib.sha256(text.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def _run_task(args):
    seed, params, engine = args
    return local_search(seed, params, engine=engine)


def _run_tasks(tasks, cfg: RunConfig):
    if cfg.threads == 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(_run_task, tasks))


def up_run(store: BestStore, cfg: RunConfig, pass_index: int):
    """Propagate best graphs of each order upward by one vertex."""
    for n in range(cfg.n_low, cfg.n_high):
        seeds = store.top_ell(n, cfg.ell)
        if not seeds:
            continue
        tasks = []
        for gi, g in enumerate(seeds):
            base = add_isolated_vertex(g)
            for pi, template in enumerate(cfg.templates):
                params = template(n)
                params.rng_seed = derive_rng_seed(
                    cfg.master_seed, pass_index, "up", n, gi, pi
                )
                tasks.append((base, params, cfg.engine))
        kept = 0
        for result in _run_tasks(tasks, cfg):
            for h in result.graphs:
                kept += store.insert(h)
        log.info(
            "pass %d up %d->%d: %d tasks, %d kept, best(%d)=%s",
            pass_index, n, n + 1, len(tasks), kept, n + 1, store.best_size(n + 1),
        )


def down_run(store: BestStore, cfg: RunConfig, pass_index: int):
    """Propagate best graphs of each order downward by one vertex."""
    for n in range(cfg.n_high, cfg.n_low, -1):
        tops = store.top_ell(n, cfg.ell)
        if not tops:
            continue
        remnants = {}
        for g in tops:
            for v in range(g.n):
                d = canonical_form(delete_vertex(g, v))
                key = encode_graph6(d)
                if key not in remnants:
                    remnants[key] = d
        ranked = sorted(
            remnants.items(), key=lambda kv: (-kv[1].edge_count, kv[0])
        )[: cfg.ell]
        tasks = []
        for gi, (_, d) in enumerate(ranked):
            for pi, template in enumerate(cfg.templates):
                params = template(n)
                params.rng_seed = derive_rng_seed(
                    cfg.master_seed, pass_index, "down", n, gi, pi
                )
                tasks.append((d, params, cfg.engine))
        kept = 0
        for result in _run_tasks(tasks, cfg):
            for h in result.graphs:
                kept += store.insert(h)
        log.info(
            "pass %d down %d->%d: %d tasks, %d kept, best(%d)=%s",
            pass_index, n, n - 1, len(tasks), kept, n - 1, store.best_size(n - 1),
        )


@dataclass
class BoundsTable:
    orders: list
    labels: list
    cells: dict = field(default_factory=dict)  # n -> {label: size or None}
    final: dict = field(default_factory=dict)
    previous: dict = field(default_factory=dict)

    def improved(self, n):
        prev = self.previous.get(n)
        fin = self.final.get(n)
        if prev is None or fin is None:
            return None
        return fin > prev


def _sample(store, table, label):
    for n in table.orders:
        table.cells.setdefault(n, {})[label] = store.best_size(n)


def compute_lower_bounds(
    cfg: RunConfig,
    seed_dir=None,
    out_dir=None,
    previous=None,
) -> BoundsTable:
    """Run the full pipeline; returns the per-order bounds table.

    Writes one store snapshot per half pass plus bounds.csv when out_dir
    is given.  previous maps order -> previously known size and only
    feeds the comparison column.
    """
    cfg.validate()
    store, warnings = load_seed_store(
        seed_dir, cfg.n_low, cfg.n_high, capacity=cfg.capacity, min_girth=cfg.min_girth
    )
    for w in warnings:
        log.warning("%s", w)

    orders = list(range(cfg.n_low, cfg.n_high + 1))
    labels = []
    for i in range(1, cfg.passes + 1):
        labels.extend((f"up{i}", f"down{i}"))
    table = BoundsTable(orders=orders, labels=labels, previous=dict(previous or {}))

    before = {n: store.best_size(n) for n in orders}
    for i in range(1, cfg.passes + 1):
        up_run(store, cfg, i)
        _sample(store, table, f"up{i}")
        if out_dir is not None:
            save_store_snapshot(store, out_dir, f"{i}up")
        down_run(store, cfg, i)
        _sample(store, table, f"down{i}")
        if out_dir is not None:
            save_store_snapshot(store, out_dir, f"{i}down")
        after = {n: store.best_size(n) for n in orders}
        if cfg.early_stop and i < cfg.passes:
            gain = any(
                before[n] is None and after[n] is not None
                or before[n] is not None
                and after[n] is not None
                and after[n] > before[n]
                for n in orders
            )
            if not gain:
                log.info("pass %d made no progress, stopping early", i)
                table.labels = labels[: 2 * i]
                break
        before = after

    for n in orders:
        table.final[n] = store.best_size(n)
    if out_dir is not None:
        import os

        write_bounds_csv(table, os.path.join(out_dir, "bounds.csv"))
    return table


def _cell(value):
    return "" if value is None else str(value)


def render_table(table: BoundsTable) -> str:
    headers = ["n"] + table.labels + ["final", "previous", "improved"]
    rows = []
    for n in table.orders:
        got = table.cells.get(n, {})
        imp = table.improved(n)
        rows.append(
            [str(n)]
            + [_cell(got.get(lbl)) for lbl in table.labels]
            + [
                _cell(table.final.get(n)),
                _cell(table.previous.get(n)),
                "" if imp is None else ("yes" if imp else "no"),
            ]
        )
    widths = [
        max(len(headers[c]), *(len(r[c]) for r in rows)) if rows else len(headers[c])
        for c in range(len(headers))
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for r in rows:
        lines.append("  ".join(x.rjust(w) for x, w in zip(r, widths)))
    return "\n".join(lines)


def write_bounds_csv(table: BoundsTable, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n"] + table.labels + ["final", "previous", "improved"])
        for n in table.orders:
            got = table.cells.get(n, {})
            imp = table.improved(n)
            w.writerow(
                [n]
                + [_cell(got.get(lbl)) for lbl in table.labels]
                + [
                    _cell(table.final.get(n)),
                    _cell(table.previous.get(n)),
                    "" if imp is None else ("yes" if imp else "no"),
                ]
            )


def read_bounds_csv(path) -> BoundsTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        labels = header[1:-3]
        table = BoundsTable(orders=[], labels=labels)
        for row in reader:
            if not row:
                continue
            n = int(row[0])
            table.orders.append(n)
            table.cells[n] = {
                lbl: (int(x) if x else None) for lbl, x in zip(labels, row[1:-3])
            }
            table.final[n] = int(row[-3]) if row[-3] else None
            if row[-2]:
                table.previous[n] = int(row[-2])
    return table


def read_previous_csv(path) -> dict:
    """Two-column n,size file (header row optional)."""
    out = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not row[0].strip():
                continue
            try:
                n = int(row[0])
            except ValueError:
                continue  # header row
            out[n] = int(row[1])
    return out
