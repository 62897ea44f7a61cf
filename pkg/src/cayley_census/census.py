"""Lemma verification sweeps and exact / sampled connection-set censuses."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .automorphisms import all_automorphisms
from .catalog import CatalogEntry, catalog, lookup
from .errors import BadSeed, CensusError, InternalCheckFailed, NotInverseClosed, ZeroSamples
from .graphs import (
    GRAPH_MAX_VERTICES,
    classify,
    classify_with_group,
    normalizer_order,
    right_regular_embedding,
)
from .groups import ElementSubset, Group, c_param
from .subsets import (
    ENUMERATION_BUDGET,
    Verdict,
    inverse_closed_membership,
    inverse_pairs,
    is_inverse_closed,
    lemma_trichotomy,
    obstruction_census,
    refined_bound_check,
)

log = logging.getLogger(__name__)

WORKERS_ENV = "CAYLEY_CENSUS_WORKERS"

LEMMA_COLUMNS = ["group_id", "order", "c", "aut_order", "phi_index", "fixed_size",
                 "inverted_size", "orbit_count", "verdict", "slack_num", "slack_den"]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _resolve(group, tables_dir=None) -> tuple[str, Group]:
    if isinstance(group, Group):
        return group.name or f"order{group.order}", group
    if isinstance(group, CatalogEntry):
        return group.group_id, group.build()
    entry = lookup(group, tables_dir)
    return entry.group_id, entry.build()


# lemma sweep ----------------------------------------------------------------


@dataclass
class LemmaReport:
    rows: list[dict] = field(default_factory=list)
    violations: int = 0
    negative_slacks: int = 0
    exception_count_mismatches: int = 0
    inversion_threshold_failures: int = 0
    skipped: list[str] = field(default_factory=list)
    groups: int = 0
    automorphisms: int = 0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.negative_slacks or self.exception_count_mismatches
                    or self.inversion_threshold_failures)

    def summary(self) -> str:
        return (f"{self.groups} groups, {self.automorphisms} non-identity automorphisms: "
                f"{self.violations} violations, {self.negative_slacks} negative refined slacks, "
                f"{self.exception_count_mismatches} exception-count mismatches, "
                f"{self.inversion_threshold_failures} inversion-threshold failures, {len(self.skipped)} skipped")


def _row(gid, G, c, aut_order, idx, fixed, inverted, orbits, verdict, slack) -> dict:
    num, den = ("", "") if slack is None else (slack.numerator, slack.denominator)
    return dict(group_id=gid, order=G.order, c=c, aut_order=aut_order, phi_index=idx,
                fixed_size=fixed, inverted_size=inverted, orbit_count=orbits,
                verdict=str(verdict), slack_num=num, slack_den=den)


def verify_group(gid: str, G: Group, report: LemmaReport) -> None:
    auts = all_automorphisms(G)
    c = c_param(G)
    report.groups += 1
    for idx, phi in auts.non_identity():
        report.automorphisms += 1
        v = lemma_trichotomy(G, phi)
        if v.case is Verdict.VIOLATION:
            report.violations += 1
        if v.case in (Verdict.ABELIAN_EXCEPTION, Verdict.DICYCLIC_EXCEPTION) and v.orbit_count != c:
            report.exception_count_mismatches += 1
        if not G.is_abelian and 4 * v.inverted_size > 3 * G.order:
            report.inversion_threshold_failures += 1
        report.rows.append(_row(gid, G, c, len(auts), idx, v.fixed_size, v.inverted_size,
                                v.orbit_count, v.case, v.slack))
        r = refined_bound_check(G, phi)
        if r is None:
            continue
        tag = f"RefinedIndex{r.index}"
        if r.exception is not None:
            tag += f":{r.exception}"
        elif r.slack < 0:
            report.negative_slacks += 1
        report.rows.append(_row(gid, G, c, len(auts), idx, v.fixed_size, v.inverted_size,
                                v.orbit_count, tag, r.slack))


def verify_lemmas(max_order: int = 16, tables_dir=None,
                  entries: Iterable[CatalogEntry] | None = None) -> LemmaReport:
    """Check the trichotomy and the refined index-2/3 bounds for every catalog group."""
    report = LemmaReport()
    if entries is None:
        entries = catalog(max_order, tables_dir)
    for entry in entries:
        try:
            verify_group(entry.group_id, entry.build(), report)
        except CensusError as exc:
            log.warning("skipping %s: %s", entry.group_id, exc)
            report.skipped.append(entry.group_id)
            report.rows.append(dict(group_id=entry.group_id, order=entry.order, c="", aut_order="",
                                    phi_index="", fixed_size="", inverted_size="", orbit_count="",
                                    verdict=f"Skipped:{type(exc).__name__}", slack_num="", slack_den=""))
    return report


# census ----------------------------------------------------------------------


@dataclass
class CensusRecord:
    group_id: str
    order: int
    c: int
    mode: str
    variant: str
    total: int
    normal: int
    regular: int
    obstruction: int
    second_obstruction: int
    samples: int | None = None
    seed: int | None = None
    closed_form_log2_bound: float | None = None
    closed_form_status: str | None = None
    union_bound: int | None = None
    shortcut_checked: int = 0
    shortcut_mismatches: int = 0

    def proportion(self, count: int):
        if self.mode == "exact":
            return Fraction(count, self.total)
        return count / self.total

    def standard_error(self, count: int) -> float:
        p = count / self.total
        return math.sqrt(p * (1 - p) / self.total)

    def invariant_failures(self) -> list[str]:
        out = []
        if self.mode == "exact":
            if not self.regular <= self.normal <= self.total:
                out.append("expected |C| <= |N| <= |T|")
            if self.normal - self.regular > self.obstruction:
                out.append("expected |N| - |C| <= obstruction count")
        if self.shortcut_mismatches:
            out.append(f"{self.shortcut_mismatches} normalizer/stabilizer shortcut mismatches")
        if self.closed_form_status == "FAILED":
            out.append("obstruction count exceeds the closed-form bound")
        return out

    def as_row(self) -> dict:
        row = asdict(self)
        for key, count in (("normal", self.normal), ("regular", self.regular),
                           ("obstruction", self.obstruction),
                           ("second_obstruction", self.second_obstruction)):
            p = self.proportion(count)
            if self.mode == "exact":
                row[f"{key}_proportion"] = f"{p.numerator}/{p.denominator}"
            else:
                row[f"{key}_proportion"] = f"{p:.6f}"
                row[f"{key}_stderr"] = f"{self.standard_error(count):.6f}"
        if self.closed_form_log2_bound is not None:
            row["closed_form_log2_bound"] = f"{self.closed_form_log2_bound:.6f}"
        return row


def _status(obs) -> str:
    if obs.vacuous:
        return "vacuous"
    if not obs.applicable:
        return "not-applicable"
    return "holds" if obs.count <= obs.closed_form_bound else "FAILED"


_worker_state: dict = {}


def _init_worker(table, name):
    from .groups import group_from_table
    G = group_from_table(table, name=name)
    _worker_state.update(G=G, auts=all_automorphisms(G), regular=right_regular_embedding(G))


def _classify_bits(args):
    bits, shortcut = args
    G, auts, regular = _worker_state["G"], _worker_state["auts"], _worker_state["regular"]
    return _classify_one_set(G, auts, regular, bits, shortcut)


def _classify_one_set(G, auts, regular, bits, shortcut):
    S = ElementSubset(G.order, bits)
    rec, aut = classify_with_group(G, S, auts, regular=regular)
    mismatch = None
    if shortcut:
        n_order = normalizer_order(aut, regular)
        mismatch = (n_order > G.order) != (rec.aut_R_S_order > 1)
    return rec.is_drr, rec.is_normal, rec.has_first_obstruction, rec.aut_order, mismatch


def _candidate_masks(G: Group, directed: bool, budget: int) -> list[int]:
    if directed:
        if G.order > budget:
            raise CensusError(f"2^{G.order} subsets exceed the enumeration budget 2^{budget}")
        return list(range(1 << G.order))
    M = inverse_closed_membership(G, budget=budget)
    weights = 1 << np.arange(G.order, dtype=object)
    return [int((weights * row).sum()) for row in M.astype(object)]


def census_exact(group, *, directed: bool = False, check_shortcut: bool = False,
                 tables_dir=None, budget: int = ENUMERATION_BUDGET,
                 workers: int | None = None) -> CensusRecord:
    """Classify every inverse-closed (or, with ``directed``, every) connection set."""
    gid, G = _resolve(group, tables_dir)
    if G.order > GRAPH_MAX_VERTICES:
        raise CensusError(f"order {G.order} exceeds the graph search bound {GRAPH_MAX_VERTICES}")
    masks = _candidate_masks(G, directed, budget)
    workers = workers or _workers()
    tasks = [(m, check_shortcut) for m in masks]
    if workers > 1 and len(tasks) > 64:
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(G.mul.tolist(), G.name)) as pool:
            results = list(pool.map(_classify_bits, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        auts = all_automorphisms(G)
        regular = right_regular_embedding(G)
        results = [_classify_one_set(G, auts, regular, m, check_shortcut) for m in masks]
    regular_count = sum(r[0] for r in results)
    normal = sum(r[1] for r in results)
    obstruction = sum(r[2] for r in results)
    second = sum(1 for r in results if not r[2] and r[3] > G.order)
    mismatches = sum(1 for r in results if r[4])
    rec = CensusRecord(gid, G.order, c_param(G), "exact", "directed" if directed else "inverse_closed",
                       len(masks), normal, regular_count, obstruction, second,
                       shortcut_checked=len(masks) if check_shortcut else 0,
                       shortcut_mismatches=mismatches)
    if not directed:
        obs = obstruction_census(G, all_automorphisms(G), budget=budget)
        if obs.count != obstruction:
            raise InternalCheckFailed(
                f"orbit-based obstruction count {obs.count} != per-set classification {obstruction}")
        rec.closed_form_log2_bound = obs.closed_form_log2
        rec.closed_form_status = _status(obs)
        rec.union_bound = obs.union_bound
    return rec


def _check_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise BadSeed(f"seed must be a non-negative integer, got {seed!r}")


def draw_connection_sets(G: Group, samples: int, seed: int, *, directed: bool = False) -> np.ndarray:
    """Uniform random connection sets as a ``samples x n`` boolean matrix.

    Inverse-closed sets get one fair coin per class ``{x, x^-1}``; directed
    sets get one coin per element.
    """
    _check_seed(seed)
    if samples < 1:
        raise ZeroSamples("need at least one sample")
    rng = np.random.default_rng(seed)
    if directed:
        return rng.integers(0, 2, size=(samples, G.order)).astype(bool)
    pairs = inverse_pairs(G)
    coins = rng.integers(0, 2, size=(samples, len(pairs))).astype(bool)
    owner = np.empty(G.order, dtype=np.int64)
    for j, cls in enumerate(pairs):
        owner[list(cls)] = j
    return coins[:, owner]


def census_sample(group, samples: int, seed: int, *, directed: bool = False,
                  tables_dir=None) -> CensusRecord:
    gid, G = _resolve(group, tables_dir)
    draws = draw_connection_sets(G, samples, seed, directed=directed)
    auts = all_automorphisms(G)
    regular = right_regular_embedding(G)
    weights = 1 << np.arange(G.order, dtype=object)
    cache: dict[int, tuple] = {}
    tally = [0, 0, 0, 0]
    for row in draws.astype(object):
        bits = int((weights * row).sum())
        res = cache.get(bits)
        if res is None:
            res = cache[bits] = _classify_one_set(G, auts, regular, bits, False)
        tally[0] += res[0]
        tally[1] += res[1]
        tally[2] += res[2]
        tally[3] += (not res[2]) and res[3] > G.order
    return CensusRecord(gid, G.order, c_param(G), "sampled", "directed" if directed else "inverse_closed",
                        samples, tally[1], tally[0], tally[2], tally[3], samples=samples, seed=int(seed))


def classify_one(group, elements: Sequence[int], *, require_undirected: bool = False,
                 tables_dir=None) -> dict:
    gid, G = _resolve(group, tables_dir)
    S = G.subset(elements)
    if require_undirected and not is_inverse_closed(G, S):
        raise NotInverseClosed(f"{sorted(S)} is not inverse-closed in {gid}")
    rec = classify(G, S, all_automorphisms(G))
    return {"group_id": gid, "order": G.order, "connection_set": S.elements(), **rec.as_dict()}


# output ------------------------------------------------------------------------


def rows_to_csv(rows: list[dict], columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = []
        for r in rows:
            columns += [k for k in r if k not in columns]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps(rows, indent=2, default=str) + "\n"


__all__ = [
    "CensusRecord",
    "LEMMA_COLUMNS",
    "LemmaReport",
    "census_exact",
    "census_sample",
    "classify_one",
    "draw_connection_sets",
    "rows_to_csv",
    "rows_to_json",
    "verify_lemmas",
]
