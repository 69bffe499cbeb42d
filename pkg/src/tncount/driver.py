"""Counting runs: reduce, plan within a time budget, contract.

Also hosts the portfolio runner, the benchmark generator and the
structural inspection used by the CLI.
"""

from __future__ import annotations

import contextvars
import queue
import threading
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from contextlib import closing, nullcontext
from pathlib import Path
from typing import Iterator, Optional

import numpy as np
from pydantic import BaseModel, Field

from tncount.config import RunConfig
from tncount.decomp.elimination import anytime_td
from tncount.decomp.pace import import_td
from tncount.errors import (
    Cancelled,
    DeadlineExceeded,
    MemoryCapExceeded,
    PlanningError,
    TncountError,
)
from tncount.formula.bench import encode_vertex_cover, random_cubic_graph
from tncount.formula.cnf import CnfFormula
from tncount.formula.dimacs import read_dimacs, serialize_dimacs
from tncount.graph.multigraph import Multigraph, line_graph
from tncount.graph.structure import StructureGraph, structure_graph
from tncount.methods.factor_tree import ft_bound, plan_ft
from tncount.methods.greedy import plan_greedy
from tncount.methods.line_graph import lg_carving, plan_lg
from tncount.methods.plan import PlanResult
from tncount.network.carving import carving_width
from tncount.network.contraction import ContractionStats, contract
from tncount.network.tn import TensorNetwork, reduce_wmc
from tncount.utils.logging import bind_run_context, get_logger
from tncount.utils.timing import Deadline, Stopwatch

logger = get_logger("tncount.driver")

PORTFOLIO_METHODS = ("greedy", "lg", "ft")
AGREEMENT_RTOL = 1e-9
PLAN_POLL_SECONDS = 0.05
PLANNING_SLACK = 0.5
_STREAM_END = object()


class RunReport(BaseModel):
    """Outcome of one counting run."""

    wmc: float
    method: str
    source_width: Optional[int] = None
    max_rank: int
    peak_rank: int = 0
    peak_entries: int = 0
    plans_considered: int = 1
    times: dict[str, float] = Field(default_factory=dict)

    def to_lines(self) -> list[str]:
        """``c`` statistics lines followed by the ``s wmc`` answer line."""
        width = "-" if self.source_width is None else str(self.source_width)
        lines = [
            f"c method {self.method}",
            f"c source_width {width}",
            f"c max_rank {self.max_rank}",
            f"c peak_rank {self.peak_rank}",
            f"c plans_considered {self.plans_considered}",
        ]
        for name in ("parse", "plan", "contract", "total"):
            lines.append(f"c time_{name} {self.times.get(name, 0.0):.6f}")
        lines.append(f"s wmc {format_wmc(self.wmc)}")
        return lines


def format_wmc(value: float) -> str:
    """Decimal rendering with 17 significant digits, trailing zeros trimmed."""
    return np.format_float_positional(
        value, precision=17, unique=False, fractional=False, trim="-"
    )


def source_graph(method: str, sg: StructureGraph) -> Multigraph:
    """Graph whose tree decompositions drive the given planner."""
    if method == "lg":
        return line_graph(sg.graph)
    return sg.graph.without_isolated()


def plan_candidates(
    network: TensorNetwork,
    method: str,
    config: RunConfig,
    deadline: Optional[Deadline] = None,
    sg: Optional[StructureGraph] = None,
) -> Iterator[PlanResult]:
    """Plans for one method, one per decomposition the anytime search emits."""
    if method == "greedy":
        yield plan_greedy(network, config.seed, config.seconds_per_flop)
        return

    sg = sg or structure_graph(network)
    if sg.graph.num_edges() == 0:
        logger.warning("edgeless_structure_graph", method=method, fallback="greedy")
        yield plan_greedy(network, config.seed, config.seconds_per_flop)
        return

    graph = source_graph(method, sg)
    if config.import_td is not None:
        decompositions = iter([import_td(str(config.import_td), graph)])
    else:
        decompositions = anytime_td(
            graph,
            config.td_strategies,
            deadline=deadline,
            seed=config.seed,
            max_restarts=config.td_restarts,
        )
    for td in decompositions:
        if method == "lg":
            yield plan_lg(network, td, sg, config.seconds_per_flop)
        else:
            yield plan_ft(network, td, sg, config.seed, config.seconds_per_flop)


def stream_plans(
    candidates: Iterator[PlanResult], deadline: Optional[Deadline] = None
) -> Iterator[PlanResult]:
    """Produce ``candidates`` on a worker thread and yield plans as they arrive.

    The consumer wakes every ``PLAN_POLL_SECONDS``, so the stream ends at the
    deadline even while the worker is inside one long decomposition. Until a
    first plan arrives it waits up to ``PLANNING_SLACK`` past the deadline.
    Closing the stream stops the worker before its next plan is published.

    Raises:
        TncountError: Whatever the worker raised, re-raised here.
    """
    channel: queue.Queue = queue.Queue()
    stop = threading.Event()

    def work() -> None:
        try:
            for plan in candidates:
                if stop.is_set():
                    break
                channel.put(plan)
        except Exception as exc:
            channel.put(exc)
        finally:
            channel.put(_STREAM_END)

    worker = threading.Thread(
        target=contextvars.copy_context().run, args=(work,), name="planner", daemon=True
    )
    worker.start()
    seen = False
    try:
        while True:
            try:
                item = channel.get(timeout=PLAN_POLL_SECONDS)
            except queue.Empty:
                if deadline is None or not deadline.expired():
                    continue
                if seen or deadline.cancelled() or deadline.overdue() >= PLANNING_SLACK:
                    logger.debug("plan_stream_closed", reason="deadline", plans=seen)
                    return
                continue
            if item is _STREAM_END:
                return
            if isinstance(item, Exception):
                raise item
            seen = True
            yield item
    finally:
        stop.set()


def select_plan(
    candidates: Iterator[PlanResult], deadline: Optional[Deadline] = None
) -> tuple[PlanResult, int]:
    """Consume candidate plans until planning has taken as long as the best plan should.

    Stops once elapsed planning time reaches the incumbent's estimated
    contraction time, when the deadline passes, or when candidates run out.
    Ties in cost keep the earlier plan.

    Returns:
        The cheapest plan and the number of plans considered.

    Raises:
        DeadlineExceeded: If the deadline passed before any plan was found.
        Cancelled: If cancelled before any plan was found.
    """
    started = time.monotonic()
    best: Optional[PlanResult] = None
    considered = 0
    for plan in candidates:
        considered += 1
        if best is None or plan.sort_key < best.sort_key:
            best = plan
            logger.info(
                "plan_improved",
                method=plan.method,
                source_width=plan.source_width,
                max_rank=plan.max_rank,
                estimated_cost=plan.estimated_cost,
            )
        elapsed = time.monotonic() - started
        if elapsed >= best.estimated_cost:
            logger.debug("planning_stopped", reason="half_time", elapsed=elapsed)
            break
        if deadline is not None and deadline.expired():
            logger.debug("planning_stopped", reason="deadline", elapsed=elapsed)
            break
    if best is None:
        if deadline is not None:
            deadline.check("planning")
        raise PlanningError("no plan was produced")
    return best, considered


def count_formula(
    formula: CnfFormula,
    config: RunConfig,
    deadline: Optional[Deadline] = None,
    stopwatch: Optional[Stopwatch] = None,
    contraction_lock: Optional[threading.Lock] = None,
    finish_once_planned: bool = False,
) -> RunReport:
    """Weighted model count of a parsed formula.

    With ``finish_once_planned`` the contraction ignores the deadline's
    cancel event and stops only at its expiry.

    Raises:
        DeadlineExceeded: On timeout; ``plan`` holds the best plan if any.
        MemoryCapExceeded: If the chosen plan needs a tensor above the cap.
        PlanningError: If the chosen method cannot plan this network.
    """
    deadline = deadline or Deadline(config.timeout)
    stopwatch = stopwatch or Stopwatch()
    if config.method == "portfolio":
        return count_portfolio(formula, config, deadline, stopwatch)

    network = reduce_wmc(formula, unit_weights=config.weights == "unit")
    candidates = plan_candidates(network, config.method, config, deadline)
    with stopwatch.phase("plan"), closing(stream_plans(candidates, deadline)) as plans:
        plan, considered = select_plan(plans, deadline)
    if deadline.cancelled():
        raise Cancelled("planning")
    plan.timings["plan"] = stopwatch.get("plan")
    _emit(plan, config)

    stats = ContractionStats()
    try:
        with stopwatch.phase("contract"), contraction_lock or nullcontext():
            limit = deadline.detached() if finish_once_planned else deadline
            result = contract(plan.network, plan.tree, config.mem_cap, limit, stats)
    except (MemoryCapExceeded, DeadlineExceeded) as exc:
        exc.plan = plan
        raise

    stopwatch.phases["total"] = deadline.elapsed()
    report = RunReport(
        wmc=result.scalar(),
        method=plan.method,
        source_width=plan.source_width,
        max_rank=plan.max_rank,
        peak_rank=stats.peak_rank,
        peak_entries=stats.peak_entries,
        plans_considered=considered,
        times=dict(stopwatch.phases),
    )
    logger.info(
        "count_done",
        method=report.method,
        wmc=report.wmc,
        max_rank=report.max_rank,
        total=report.times["total"],
    )
    return report


def count(config: RunConfig, path: str | Path, cancel_event: Optional[threading.Event] = None) -> RunReport:
    """Parse a DIMACS file and count it under ``config``.

    Raises:
        ParseError: If the file is not valid DIMACS.
        DeadlineExceeded, MemoryCapExceeded, PlanningError: As ``count_formula``.
    """
    deadline = Deadline(config.timeout, cancel_event)
    stopwatch = Stopwatch()
    with stopwatch.phase("parse"):
        formula = read_dimacs(str(path))
    logger.info(
        "formula_loaded",
        path=str(path),
        num_vars=formula.num_vars,
        num_clauses=formula.num_clauses,
        weighted=not formula.is_unweighted(),
    )
    return count_formula(formula, config, deadline, stopwatch)


def count_portfolio(
    formula: CnfFormula,
    config: RunConfig,
    deadline: Deadline,
    stopwatch: Stopwatch,
) -> RunReport:
    """Run every method under one deadline; the first to finish wins.

    Contraction is single-flight: methods queue on one lock. Once a count
    exists, members still planning are cancelled; members already holding
    a plan contract in turn and must agree with the winner.
    """
    cancel = threading.Event()
    lock = threading.Lock()
    remaining = deadline.remaining()
    seconds = None if remaining == float("inf") else remaining

    if config.emit_tree is not None or config.emit_plan is not None:
        logger.warning("portfolio_skips_emission")

    def run(method: str) -> RunReport:
        bind_run_context(member=method)
        member = config.model_copy(update={"method": method, "emit_tree": None, "emit_plan": None})
        return count_formula(
            formula, member, Deadline(seconds, cancel), Stopwatch(), lock, finish_once_planned=True
        )

    winner: Optional[RunReport] = None
    finished: list[RunReport] = []
    failures: list[TncountError] = []
    with ThreadPoolExecutor(max_workers=len(PORTFOLIO_METHODS), thread_name_prefix="portfolio") as pool:
        futures = {pool.submit(run, method): method for method in PORTFOLIO_METHODS}
        for future in as_completed(futures):
            method = futures[future]
            try:
                report = future.result()
            except Cancelled:
                logger.debug("portfolio_member_cancelled", method=method)
                continue
            except TncountError as exc:
                logger.warning("portfolio_member_failed", method=method, error=str(exc))
                failures.append(exc)
                continue
            finished.append(report)
            if winner is None:
                winner = report
                cancel.set()
                logger.info("portfolio_winner", method=method)

    if winner is None:
        raise _most_relevant(failures)
    if __debug__:
        for other in finished:
            assert np.isclose(other.wmc, winner.wmc, rtol=AGREEMENT_RTOL, atol=0.0), (
                f"portfolio members disagree: {other.method}={other.wmc} {winner.method}={winner.wmc}"
            )
    logger.info("portfolio_agreement", members=[r.method for r in finished])
    report = winner.model_copy(update={"method": f"portfolio:{winner.method}"})
    report.times = {**stopwatch.phases, **{k: v for k, v in winner.times.items() if k != "parse"}}
    report.times["total"] = deadline.elapsed()
    return report


def _most_relevant(failures: list[TncountError]) -> TncountError:
    for kind in (MemoryCapExceeded, DeadlineExceeded):
        for exc in failures:
            if isinstance(exc, kind):
                return exc
    return failures[0] if failures else PlanningError("no portfolio member produced a count")


def _emit(plan: PlanResult, config: RunConfig) -> None:
    if config.emit_tree is not None:
        Path(config.emit_tree).write_text(plan.tree.to_text() + "\n", encoding="utf-8")
        logger.info("tree_written", path=str(config.emit_tree))
    if config.emit_plan is not None:
        Path(config.emit_plan).write_text(plan.to_text(), encoding="utf-8")
        logger.info("plan_written", path=str(config.emit_plan))


def gen_bench(kind: str, n: int, seed: int) -> str:
    """DIMACS text of a generated benchmark.

    Raises:
        ValueError: For an unknown benchmark kind.
        GraphError: If ``n`` is odd or below 4.
    """
    if kind != "cubic-vc":
        raise ValueError(f"Unknown benchmark kind: {kind}")
    formula = encode_vertex_cover(random_cubic_graph(n, seed))
    return serialize_dimacs(formula, comments=[f"cubic-vc n={n} seed={seed}"])


class InspectReport(BaseModel):
    """Structural measurements of a formula's incidence graph."""

    num_vars: int
    num_clauses: int
    incidence_vertices: int
    incidence_edges: int
    degree_histogram: dict[int, int]
    td_width: Optional[int] = None
    line_td_width: Optional[int] = None
    lg_carving_width: Optional[int] = None
    ft_bound: Optional[int] = None
    ft_max_rank: Optional[int] = None
    ft_max_degree: Optional[int] = None

    def to_lines(self) -> list[str]:
        lines = []
        for name, value in self.model_dump().items():
            if name == "degree_histogram":
                hist = " ".join(f"{d}:{c}" for d, c in sorted(value.items()))
                lines.append(f"c degree_histogram {hist}")
            else:
                lines.append(f"c {name} {'-' if value is None else value}")
        return lines


def inspect(
    formula: CnfFormula,
    budget: float = 10.0,
    seed: int = 0,
    strategies: tuple[str, ...] = ("min-fill", "min-degree"),
) -> InspectReport:
    """Measure decomposition widths of the incidence graph and its line graph.

    Half of ``budget`` goes to each anytime search.
    """
    network = reduce_wmc(formula)
    sg = structure_graph(network)
    incidence = sg.graph.induced(v for v in sg.graph.vertices if v != sg.free_vertex)
    histogram = Counter(incidence.degree(v) for v in incidence.vertices)
    report = InspectReport(
        num_vars=formula.num_vars,
        num_clauses=formula.num_clauses,
        incidence_vertices=incidence.num_vertices(),
        incidence_edges=incidence.num_edges(),
        degree_histogram=dict(histogram),
    )
    if sg.graph.num_edges() == 0:
        return report

    core = source_graph("ft", sg)
    best_td = None
    for td in anytime_td(core, strategies, Deadline(budget / 2), seed):
        best_td = td
    report.td_width = best_td.width
    report.ft_bound = ft_bound(best_td.width)
    ft_plan = plan_ft(network, best_td, sg, seed)
    report.ft_max_rank = ft_plan.max_rank
    report.ft_max_degree = ft_plan.network.max_tensor_rank

    best_line = None
    for td in anytime_td(line_graph(sg.graph), strategies, Deadline(budget / 2), seed):
        best_line = td
    report.line_td_width = best_line.width
    report.lg_carving_width = carving_width(lg_carving(network, best_line, sg), sg.graph)

    logger.info("inspect_done", td_width=report.td_width, line_td_width=report.line_td_width)
    return report
