from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple, Union

from .. import ENGINE_VERSION
from ..builders.builtin import default_registry
from ..core.cache import SeriesCache, SeriesMemo
from ..core.config import EngineConfig
from ..core.errors import LedgerError, QphiError
from ..core.registry import ConstructorRegistry, node_key
from ..core.series import EXACT, CoefficientRing, Series
from ..verify.checks import check_congruence, check_golden, check_identity
from ..verify.claims import CongruenceClaim
from ..verify.expressions import ExpressionEvaluator
from ..verify.ledger import CongruenceEntry, GoldenEntry, IdentityEntry, Ledger, congruence_ring
from ..verify.report import Status, VerificationReport

_logger = logging.getLogger(__name__)

SourceKey = Tuple[str, CoefficientRing]


@dataclass(frozen=True)
class PlannedIdentity:
    entry: IdentityEntry
    order: int


@dataclass(frozen=True)
class PlannedCongruence:
    name: str
    claim: CongruenceClaim
    source: SourceKey


@dataclass(frozen=True)
class PlannedGolden:
    entry: GoldenEntry
    source: SourceKey


Task = Union[PlannedIdentity, PlannedCongruence, PlannedGolden]


class LedgerRunner:
    """Runs ledger entries on a bounded thread pool.

    Coefficient sources shared by congruence and golden entries are built
    once per (source, ring) at the largest order any selected entry needs,
    then served from the in-process memo or the on-disk cache. Reports come
    back in ledger order whatever the completion order.
    """

    def __init__(
        self,
        ledger: Ledger,
        config: Optional[EngineConfig] = None,
        registry: Optional[ConstructorRegistry] = None,
        cache: Optional[SeriesCache] = None,
    ) -> None:
        self.ledger = ledger
        self.config = config or EngineConfig()
        self.evaluator = ExpressionEvaluator(registry or default_registry(), ledger.definitions, SeriesMemo())
        self.cache = cache or SeriesCache(self.config.cache_dir, ENGINE_VERSION, enabled=self.config.use_cache)

    # Planning
    def _identity_order(self, entry: IdentityEntry, order: Optional[int]) -> int:
        if order is not None:
            return order
        if self.config.quick:
            if entry.quick_order is not None:
                return min(entry.quick_order, entry.order)
            return min(entry.order, self.config.quick_identity_cap)
        return entry.order

    def _claim(self, claim: CongruenceClaim, order: Optional[int]) -> CongruenceClaim:
        cap = order if order is not None else (self.config.quick_cap if self.config.quick else None)
        if cap is None:
            return claim
        fit = max(1, claim.max_instances(cap))
        return claim.with_n_range(min(claim.n_range, fit))

    def plan(self, names: Optional[List[str]] = None, order: Optional[int] = None) -> List[Task]:
        tasks: List[Task] = []
        for entry in self.ledger.select(names):
            if isinstance(entry, IdentityEntry):
                tasks.append(PlannedIdentity(entry, self._identity_order(entry, order)))
            elif isinstance(entry, CongruenceEntry):
                claim = self._claim(entry.claim, order)
                ring = congruence_ring(claim.modulus, self.config.base_modulus)
                tasks.append(PlannedCongruence(entry.name, claim, (claim.source, ring)))
            else:
                tasks.append(PlannedGolden(entry, (entry.source, EXACT)))
        return tasks

    def source_orders(self, tasks: List[Task]) -> Dict[SourceKey, int]:
        orders: Dict[SourceKey, int] = {}
        for task in tasks:
            if isinstance(task, PlannedCongruence):
                need = task.claim.needed_order()
            elif isinstance(task, PlannedGolden):
                need = task.entry.n
            else:
                continue
            orders[task.source] = max(orders.get(task.source, 0), need)
        return orders

    # Sources
    def build_source(self, source: str, order: int, ring: CoefficientRing) -> Series:
        node = self.ledger.source_node(source)
        key = self.cache.key(source, order, ring, node=node_key(node))
        cached = self.cache.load(key)
        if cached is not None and cached.order >= order and cached.ring == ring:
            _logger.debug("cache hit for %s at order %d in %s", source, order, ring.label)
            self._prime(node, cached)
            return cached.truncate(order)
        started = time.perf_counter()
        series = self.evaluator.evaluate(node, order, ring)
        _logger.info("built %s to q^%d in %s (%.0f ms)", source, order, ring.label, (time.perf_counter() - started) * 1000.0)
        self.cache.store(key, series)
        return series

    def _prime(self, node: Dict, series: Series) -> None:
        # Identity entries that mention the same source reuse the loaded series.
        if node.get("op") == "ref":
            node = self.ledger.definitions[node["name"]]
        self.evaluator.memo.put(node_key(node), series)

    def _build_sources(self, pool: ThreadPoolExecutor, orders: Dict[SourceKey, int]) -> Dict[SourceKey, Union[Series, str]]:
        futures = {key: pool.submit(self.build_source, key[0], n, key[1]) for key, n in orders.items()}
        built: Dict[SourceKey, Union[Series, str]] = {}
        for key, future in futures.items():
            try:
                built[key] = future.result()
            except (QphiError, KeyError, ArithmeticError, ValueError) as exc:
                _logger.warning("could not build %s in %s: %s", key[0], key[1].label, exc)
                built[key] = f"{type(exc).__name__}: {exc}"
        return built

    # Execution
    def _run_task(self, task: Task, sources: Dict[SourceKey, Union[Series, str]]) -> VerificationReport:
        if isinstance(task, PlannedIdentity):
            report = check_identity(task.entry, self.evaluator, task.order, self.config.base_modulus)
        else:
            coeffs = sources[task.source]
            name = task.name if isinstance(task, PlannedCongruence) else task.entry.name
            if isinstance(coeffs, str):
                label = task.claim.label if isinstance(task, PlannedCongruence) else ""
                report = VerificationReport(name=name, status=Status.ERROR, checked_through=0, detail=coeffs, label=label)
            elif isinstance(task, PlannedCongruence):
                report = check_congruence(task.claim, coeffs, name)
            else:
                report = check_golden(task.entry, coeffs)
        _logger.debug("%s: %s through %d", report.name, report.status.value, report.checked_through)
        return report

    def run(self, names: Optional[List[str]] = None, order: Optional[int] = None) -> List[VerificationReport]:
        tasks = self.plan(names, order)
        _logger.info("running %d ledger entries (%s profile, %d workers)", len(tasks), self.config.profile, self.config.jobs)
        with ThreadPoolExecutor(max_workers=self.config.jobs) as pool:
            sources = self._build_sources(pool, self.source_orders(tasks))
            futures = [pool.submit(self._run_task, task, sources) for task in tasks]
            reports = [f.result() for f in futures]
        failed = sum(1 for r in reports if not r.passed)
        _logger.info("ledger run finished: %d of %d entries passed", len(reports) - failed, len(reports))
        return reports


def run_ledger(
    ledger: Ledger,
    profile: Optional[str] = None,
    config: Optional[EngineConfig] = None,
    names: Optional[List[str]] = None,
    order: Optional[int] = None,
) -> List[VerificationReport]:
    """Verify ``ledger`` (or the ``names`` subset) under ``profile``."""
    config = config or EngineConfig()
    if profile is not None and profile != config.profile:
        config = replace(config, profile=profile)
    if not ledger.entries:
        raise LedgerError("ledger has no entries")
    return LedgerRunner(ledger, config).run(names, order)
