"""Classification of graph streams by (order, MS-number)."""

import logging
from collections import deque
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from tqdm import tqdm

from msnumber.config.schema import ClassEntry, ClassificationReport, RecordError
from msnumber.config.settings import config
from msnumber.errors import CapExceededError, MSNumberError
from msnumber.graphs.formats import read_graph_stream, to_graph6
from msnumber.graphs.graph import Graph, pivot
from msnumber.states.graphstate import ms_number

logger = logging.getLogger(__name__)


class ClassAccumulator:
    """Partial classification result; ``merge`` is associative.

    Each class keeps its count and up to ``k`` representatives ordered by
    (edge count, graph6).
    """

    def __init__(self, representatives: Optional[int] = None):
        self.k = config.classify.representatives if representatives is None else representatives
        self.counts: Dict[Tuple[int, int], int] = {}
        self.reps: Dict[Tuple[int, int], List[Tuple[int, str]]] = {}
        self.errors: List[RecordError] = []

    def _offer(self, key: Tuple[int, int], candidate: Tuple[int, str]):
        current = self.reps.setdefault(key, [])
        if candidate in current:
            return
        current.append(candidate)
        current.sort()
        del current[self.k:]

    def add(self, graph: Graph) -> Tuple[int, int]:
        key = (graph.n, ms_number(graph))
        self.counts[key] = self.counts.get(key, 0) + 1
        self._offer(key, (graph.size, to_graph6(graph)))
        return key

    def add_error(self, line: int, message: str):
        self.errors.append(RecordError(line=line, message=message))

    def merge(self, other: "ClassAccumulator") -> "ClassAccumulator":
        merged = ClassAccumulator(representatives=min(self.k, other.k))
        for source in (self, other):
            for key, count in source.counts.items():
                merged.counts[key] = merged.counts.get(key, 0) + count
            for key, candidates in source.reps.items():
                for candidate in candidates:
                    merged._offer(key, candidate)
            merged.errors.extend(source.errors)
        return merged

    def report(self) -> ClassificationReport:
        classes = [
            ClassEntry(
                n=n,
                w=w,
                count=self.counts[(n, w)],
                representatives=[g6 for _, g6 in self.reps.get((n, w), [])],
            )
            for n, w in sorted(self.counts)
        ]
        errors = sorted(self.errors, key=lambda e: (e.line, e.message))
        return ClassificationReport(
            classes=classes,
            total=sum(self.counts.values()),
            malformed=len(errors),
            errors=errors,
        )


def classify_stream(graphs: Iterable[Graph], representatives: Optional[int] = None) -> ClassificationReport:
    """Group already-parsed graphs by (n, w)."""
    accumulator = ClassAccumulator(representatives)
    for graph in graphs:
        accumulator.add(graph)
    return accumulator.report()


class ClassificationPipeline:
    """Parse, weigh and accumulate a graph6 stream, one record per line."""

    def __init__(
        self,
        representatives: Optional[int] = None,
        progress_callback: Optional[Callable[[str, float], None]] = None,
        show_progress: Optional[bool] = None,
    ):
        """Initialize classification pipeline.

        Args:
            representatives: Representatives kept per class (defaults to config)
            progress_callback: Optional callback(message, processed_count)
            show_progress: Render a tqdm bar on standard error
        """
        self.representatives = representatives
        self.progress_callback = progress_callback
        self.show_progress = config.classify.show_progress if show_progress is None else show_progress

    def run(self, lines: Iterable[str]) -> ClassificationReport:
        accumulator = ClassAccumulator(self.representatives)
        records = read_graph_stream(lines)
        if self.show_progress:
            records = tqdm(records, desc="classify", unit="graph")
        processed = 0
        try:
            for record in records:
                processed += 1
                if record.error is not None:
                    accumulator.add_error(record.line, record.error)
                    continue
                try:
                    accumulator.add(record.graph)
                except MSNumberError as e:
                    logger.warning(f"Skipping record on line {record.line}: {e}")
                    accumulator.add_error(record.line, str(e))
                if processed % 1000 == 0:
                    self._update_progress(f"Classified {processed} records", processed)
        except Exception as e:
            logger.error(f"Classification aborted after {processed} records: {str(e)}")
            raise
        report = accumulator.report()
        self._update_progress("Classification complete", processed)
        logger.info(
            f"Classified {report.total} graphs into {len(report.classes)} classes "
            f"({report.malformed} malformed)"
        )
        return report

    def _update_progress(self, message: str, processed: int):
        """Update progress callback if available."""
        if self.progress_callback:
            self.progress_callback(message, processed)
        logger.debug(f"{message} ({processed} records)")


def pivot_orbit(graph: Graph, max_n: Optional[int] = None) -> FrozenSet[Graph]:
    """Closure of {G} under pivoting on every edge (labeled, not up to isomorphism)."""
    cap = config.limits.orbit_max_n if max_n is None else max_n
    if graph.n > cap:
        raise CapExceededError("Pivot orbit", graph.n, cap, "MSN_ORBIT_MAX_N")
    seen = {graph}
    queue = deque([graph])
    while queue:
        current = queue.popleft()
        for u, v in current.edges():
            image = pivot(current, u, v)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    logger.debug(f"Pivot orbit of an order-{graph.n} graph has {len(seen)} members")
    return frozenset(seen)
