"""Exact search for the union-closed optimization problems.

``solve`` runs a depth-first branch-and-bound over set-inclusion
decisions.  Sets are decided in a fixed order (descending cardinality,
then descending bit pattern), so the union of two distinct
earlier-decided sets is itself already decided; including a set then only
requires checking that its union with every included set is present, and
the leaves reached are exactly the union-closed families.  Pruning:

  - per-element inclusion counters against the degree cap (F/FT) or the
    incumbent (G/GT);
  - an optimistic completion bound combining remaining per-element
    capacity with the sizes of the cheapest undecided sets;
  - a symmetry reduction to families whose final element frequencies can
    still be non-increasing in the label (every family has such a
    relabeling, and all four objectives are label-invariant);
  - for the twin kinds, a per-element count of non-trivial twin pairs
    that can still be fully included; a branch dies when some element has
    none left and none completed.

Single-worker runs are fully deterministic, including the witness.  With
several workers the top of the decision tree is split into subtrees that
are solved independently and combined; status and optimal value do not
depend on the worker count, and any budget applies per worker.

``exhaustive_oracle`` answers the same questions for n <= 4 by filtering
every subset of the power set through the family-core predicates.  It
shares none of the search machinery and exists to cross-check ``solve``.
"""

from __future__ import annotations

import enum
import sys
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .families import Family, degree, is_union_closed, sort_by_frequency
from .models import ModelInstance, has_nontrivial_twin_cover


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    ABORTED = "aborted"


@dataclass(frozen=True)
class SearchBudget:
    """Node and wall-time limits; both None means explicitly unlimited."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None

    @property
    def unlimited(self) -> bool:
        return self.max_nodes is None and self.max_seconds is None


UNLIMITED = SearchBudget()


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one exact solve.

    Optimal outcomes carry the exact value and one witness family.
    Aborted outcomes never report a value; the best incumbent found, if
    any, is exposed separately and is only a bound.
    """

    status: Status
    value: Optional[int] = None
    witness: Optional[Family] = None
    stats: SearchStats = field(default_factory=SearchStats)
    incumbent_value: Optional[int] = None
    incumbent_witness: Optional[Family] = None


class _Abort(Exception):
    pass


class _Done(Exception):
    pass


_UNDECIDED, _IN, _OUT = 0, 1, 2


class _Search:
    """One branch-and-bound run, optionally under a forced decision prefix."""

    def __init__(self, inst: ModelInstance, budget: SearchBudget):
        self.inst = inst
        self.budget = budget
        n = inst.n
        size = 1 << n
        self.n = n
        self.size = size
        self.maximize = inst.kind.maximize
        self.twin = inst.kind.twin
        self.order = sorted(range(size), key=lambda s: (-s.bit_count(), -s))
        # tail_sizes[k]: total cardinality of the k cheapest (last) sets
        self.tail_sizes = [0] * (size + 1)
        for k in range(1, size + 1):
            self.tail_sizes[k] = self.tail_sizes[k - 1] + self.order[size - k].bit_count()
        self.elems = [
            tuple(e for e in range(n) if mask >> e & 1) for mask in range(size)
        ]
        self.state = bytearray(size)
        self.deg = [0] * n
        self.remaining = [size >> 1] * n  # undecided sets containing each element
        self.included: list[int] = []
        self.best_value: Optional[int] = None
        self.best_masks: Optional[tuple[int, ...]] = None
        self.stats = SearchStats()
        self.deadline = None
        if budget.max_seconds is not None:
            self.deadline = time.monotonic() + budget.max_seconds

        if self.twin:
            pairs = []
            pairs_of_mask: list[list[int]] = [[] for _ in range(size)]
            alive = [0] * n
            for e in range(n):
                bit = 1 << e
                for little in range(size):
                    if little & bit or little.bit_count() == n - 1:
                        continue
                    pid = len(pairs)
                    pairs.append(e)
                    pairs_of_mask[little].append(pid)
                    pairs_of_mask[little | bit].append(pid)
                    alive[e] += 1
            self.pair_elem = pairs
            self.pairs_of_mask = pairs_of_mask
            self.alive = alive
            self.sat = [0] * n
            self.pair_in = [0] * len(pairs)
            self.pair_out = [0] * len(pairs)

    # -- decision primitives ------------------------------------------------

    def can_include(self, mask: int, cap: int) -> bool:
        deg = self.deg
        for e in self.elems[mask]:
            if deg[e] + 1 > cap:
                self.stats.propagations += 1
                return False
        state = self.state
        for t in self.included:
            v = t | mask
            if v != t and v != mask and state[v] != _IN:
                self.stats.propagations += 1
                return False
        return True

    def apply_include(self, mask: int) -> None:
        self.state[mask] = _IN
        self.included.append(mask)
        for e in self.elems[mask]:
            self.deg[e] += 1
            self.remaining[e] -= 1
        if self.twin:
            pair_in, pair_elem, sat = self.pair_in, self.pair_elem, self.sat
            for pid in self.pairs_of_mask[mask]:
                pair_in[pid] += 1
                if pair_in[pid] == 2:
                    sat[pair_elem[pid]] += 1

    def undo_include(self, mask: int) -> None:
        if self.twin:
            pair_in, pair_elem, sat = self.pair_in, self.pair_elem, self.sat
            for pid in self.pairs_of_mask[mask]:
                if pair_in[pid] == 2:
                    sat[pair_elem[pid]] -= 1
                pair_in[pid] -= 1
        for e in self.elems[mask]:
            self.deg[e] -= 1
            self.remaining[e] += 1
        self.included.pop()
        self.state[mask] = _UNDECIDED

    def apply_exclude(self, mask: int) -> bool:
        """Mark a set out; returns False when some element loses its last
        completable twin pair (the branch is then dead but must be undone)."""
        self.state[mask] = _OUT
        for e in self.elems[mask]:
            self.remaining[e] -= 1
        ok = True
        if self.twin:
            pair_out, pair_elem, alive, sat = (
                self.pair_out,
                self.pair_elem,
                self.alive,
                self.sat,
            )
            for pid in self.pairs_of_mask[mask]:
                pair_out[pid] += 1
                if pair_out[pid] == 1:
                    e = pair_elem[pid]
                    alive[e] -= 1
                    if alive[e] == 0 and sat[e] == 0:
                        ok = False
        if not ok:
            self.stats.propagations += 1
        return ok

    def undo_exclude(self, mask: int) -> None:
        if self.twin:
            pair_out, pair_elem, alive = self.pair_out, self.pair_elem, self.alive
            for pid in self.pairs_of_mask[mask]:
                if pair_out[pid] == 1:
                    alive[pair_elem[pid]] += 1
                pair_out[pid] -= 1
        for e in self.elems[mask]:
            self.remaining[e] += 1
        self.state[mask] = _UNDECIDED

    # -- bounds ---------------------------------------------------------------

    def addable_bound(self, caps_left: int, suffix_len: int) -> int:
        """Max number of undecided sets whose total size fits the capacity."""
        k = bisect_right(self.tail_sizes, caps_left) - 1
        return k if k < suffix_len else suffix_len

    # -- main search ----------------------------------------------------------

    def run(self, prefix: tuple[int, ...] = ()) -> None:
        # single-use object: no undo of prefix decisions on the way out
        if self.twin and any(a == 0 for a in self.alive):
            return
        for depth, decision in enumerate(prefix):
            mask = self.order[depth]
            if decision:
                if not self.maximize and len(self.included) >= self.inst.param:
                    return  # prefix overshoots the exact set count
                if not self.can_include(mask, self.include_cap()):
                    return
                self.apply_include(mask)
            else:
                if not self.apply_exclude(mask):
                    return
        try:
            if self.maximize:
                self.target_ub = len(self.included) + self.addable_bound(
                    sum(
                        min(self.inst.param - d, r)
                        for d, r in zip(self.deg, self.remaining)
                    ),
                    self.size - len(prefix),
                )
                self._loop_max(len(prefix))
            else:
                self.target_lb = self.root_lower_bound(len(prefix))
                self._loop_min(len(prefix))
        except _Done:
            pass

    def include_cap(self) -> int:
        if self.maximize:
            return self.inst.param
        if self.best_value is None:
            return self.size >> 1
        return self.best_value - 1

    def root_lower_bound(self, depth: int) -> int:
        needed = self.inst.param - len(self.included)
        suffix = self.size - depth
        for v in range(self.size >> 1):
            if any(d > v for d in self.deg):
                continue
            caps = 0
            limit = suffix
            for d, r in zip(self.deg, self.remaining):
                room = v - d
                caps += room if room < r else r
                avoid = room + suffix - r
                if avoid < limit:
                    limit = avoid
            if limit >= needed and self.addable_bound(caps, suffix) >= needed:
                return v
        return self.size >> 1

    # The two hot loops below bind every piece of search state to locals
    # once and recurse over closures: the same tree as the method-based
    # primitives (which still serve the prefix path), minus the attribute
    # and call overhead.  In-node check order differs only in which prune
    # fires first, never in whether a child is explored.

    def _loop_max(self, depth0: int) -> None:
        n, size = self.n, self.size
        cap = self.inst.param
        target_ub = self.target_ub
        order, elems, tail = self.order, self.elems, self.tail_sizes
        state, deg, remaining = self.state, self.deg, self.remaining
        included = self.included
        twin = self.twin
        if twin:
            pairs_of_mask, pair_elem = self.pairs_of_mask, self.pair_elem
            pair_in, pair_out = self.pair_in, self.pair_out
            alive, sat = self.alive, self.sat
        max_nodes = self.budget.max_nodes
        deadline = self.deadline
        monotonic = time.monotonic
        nodes = self.stats.nodes
        props = 0
        best = self.best_value

        def dfs(depth: int) -> None:
            nonlocal nodes, props, best
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise _Abort
            if deadline is not None and not nodes & 1023 and monotonic() > deadline:
                raise _Abort
            suffix = size - depth
            caps_left = 0
            limit = suffix
            reach = -1  # deg[i-1] + remaining[i-1]; symmetry reduction:
            # explore only families whose final frequencies can still be
            # non-increasing in the label (a relabeling always exists)
            for i in range(n):
                d = deg[i]
                r = remaining[i]
                if reach >= 0 and reach < d:
                    props += 1
                    return
                reach = d + r
                room = cap - d
                caps_left += room if room < r else r
                avoid = room + suffix - r
                if avoid < limit:
                    limit = avoid
            k = bisect_right(tail, caps_left) - 1
            if k > limit:
                k = limit
            if k > suffix:
                k = suffix
            if best is not None and len(included) + k <= best:
                return
            if depth == size:
                if included and (best is None or len(included) > best):
                    best = len(included)
                    self.best_value = best
                    self.best_masks = tuple(sorted(included))
                    if best >= target_ub:
                        raise _Done
                return
            mask = order[depth]
            ok = True
            for e in elems[mask]:
                if deg[e] + 1 > cap:
                    ok = False
                    props += 1
                    break
            if ok:
                for t in included:
                    v = t | mask
                    if v != t and v != mask and state[v] != 1:
                        ok = False
                        props += 1
                        break
            if ok:
                state[mask] = 1
                included.append(mask)
                for e in elems[mask]:
                    deg[e] += 1
                    remaining[e] -= 1
                if twin:
                    for pid in pairs_of_mask[mask]:
                        pair_in[pid] += 1
                        if pair_in[pid] == 2:
                            sat[pair_elem[pid]] += 1
                dfs(depth + 1)
                if twin:
                    for pid in pairs_of_mask[mask]:
                        if pair_in[pid] == 2:
                            sat[pair_elem[pid]] -= 1
                        pair_in[pid] -= 1
                for e in elems[mask]:
                    deg[e] -= 1
                    remaining[e] += 1
                included.pop()
                state[mask] = 0
            state[mask] = 2
            for e in elems[mask]:
                remaining[e] -= 1
            dead = False
            if twin:
                for pid in pairs_of_mask[mask]:
                    pair_out[pid] += 1
                    if pair_out[pid] == 1:
                        e = pair_elem[pid]
                        alive[e] -= 1
                        if alive[e] == 0 and sat[e] == 0:
                            dead = True
            if dead:
                props += 1
            else:
                dfs(depth + 1)
            if twin:
                for pid in pairs_of_mask[mask]:
                    if pair_out[pid] == 1:
                        alive[pair_elem[pid]] += 1
                    pair_out[pid] -= 1
            for e in elems[mask]:
                remaining[e] += 1
            state[mask] = 0

        try:
            dfs(depth0)
        finally:
            self.stats.nodes = nodes
            self.stats.propagations += props

    def _loop_min(self, depth0: int) -> None:
        n, size = self.n, self.size
        m_target = self.inst.param
        half = size >> 1
        target_lb = self.target_lb
        order, elems, tail = self.order, self.elems, self.tail_sizes
        state, deg, remaining = self.state, self.deg, self.remaining
        included = self.included
        twin = self.twin
        if twin:
            pairs_of_mask, pair_elem = self.pairs_of_mask, self.pair_elem
            pair_in, pair_out = self.pair_in, self.pair_out
            alive, sat = self.alive, self.sat
        max_nodes = self.budget.max_nodes
        deadline = self.deadline
        monotonic = time.monotonic
        nodes = self.stats.nodes
        props = 0
        best = self.best_value

        def dfs(depth: int) -> None:
            nonlocal nodes, props, best
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise _Abort
            if deadline is not None and not nodes & 1023 and monotonic() > deadline:
                raise _Abort
            suffix = size - depth
            needed = m_target - len(included)
            if needed > suffix or needed < 0:
                return
            horizon = half if best is None else best - 1
            caps_left = 0
            limit = suffix
            cur_max = 0
            reach = -1  # symmetry reduction, as in the maximize loop
            for i in range(n):
                d = deg[i]
                r = remaining[i]
                if reach >= 0 and reach < d:
                    props += 1
                    return
                reach = d + r
                if d > cur_max:
                    cur_max = d
                room = horizon - d
                if room < 0:
                    props += 1
                    return
                caps_left += room if room < r else r
                avoid = room + suffix - r
                if avoid < limit:
                    limit = avoid
            if needed == 0:
                if twin:
                    for s in sat:
                        if s < 1:
                            return
                best = cur_max
                self.best_value = best
                self.best_masks = tuple(sorted(included))
                if best <= target_lb:
                    raise _Done
                return
            if limit < needed:
                return
            if bisect_right(tail, caps_left) - 1 < needed:
                return
            mask = order[depth]
            state[mask] = 2
            for e in elems[mask]:
                remaining[e] -= 1
            dead = False
            if twin:
                for pid in pairs_of_mask[mask]:
                    pair_out[pid] += 1
                    if pair_out[pid] == 1:
                        e = pair_elem[pid]
                        alive[e] -= 1
                        if alive[e] == 0 and sat[e] == 0:
                            dead = True
            if dead:
                props += 1
            else:
                dfs(depth + 1)
            if twin:
                for pid in pairs_of_mask[mask]:
                    if pair_out[pid] == 1:
                        alive[pair_elem[pid]] += 1
                    pair_out[pid] -= 1
            for e in elems[mask]:
                remaining[e] += 1
            state[mask] = 0
            cap_now = half if best is None else best - 1
            ok = True
            for e in elems[mask]:
                if deg[e] + 1 > cap_now:
                    ok = False
                    props += 1
                    break
            if ok:
                for t in included:
                    v = t | mask
                    if v != t and v != mask and state[v] != 1:
                        ok = False
                        props += 1
                        break
            if ok:
                state[mask] = 1
                included.append(mask)
                for e in elems[mask]:
                    deg[e] += 1
                    remaining[e] -= 1
                if twin:
                    for pid in pairs_of_mask[mask]:
                        pair_in[pid] += 1
                        if pair_in[pid] == 2:
                            sat[pair_elem[pid]] += 1
                dfs(depth + 1)
                if twin:
                    for pid in pairs_of_mask[mask]:
                        if pair_in[pid] == 2:
                            sat[pair_elem[pid]] -= 1
                        pair_in[pid] -= 1
                for e in elems[mask]:
                    deg[e] -= 1
                    remaining[e] += 1
                included.pop()
                state[mask] = 0

        try:
            dfs(depth0)
        finally:
            self.stats.nodes = nodes
            self.stats.propagations += props

    def outcome(self, aborted: bool, started: float) -> SolveOutcome:
        self.stats.seconds = time.monotonic() - started
        witness = None
        if self.best_masks is not None:
            witness = Family(self.n, self.best_masks)
            if not self.maximize:
                witness = sort_by_frequency(witness)
        if aborted:
            return SolveOutcome(
                Status.ABORTED,
                stats=self.stats,
                incumbent_value=self.best_value,
                incumbent_witness=witness,
            )
        if witness is None:
            return SolveOutcome(Status.INFEASIBLE, stats=self.stats)
        return SolveOutcome(Status.OPTIMAL, self.best_value, witness, self.stats)


def _solve_single(
    inst: ModelInstance, budget: SearchBudget, prefix: tuple[int, ...] = ()
) -> SolveOutcome:
    depth_needed = (1 << inst.n) + 64
    if sys.getrecursionlimit() < depth_needed:
        sys.setrecursionlimit(depth_needed)
    search = _Search(inst, budget)
    started = time.monotonic()

    def execute() -> bool:
        try:
            search.run(prefix)
            return False
        except _Abort:
            return True

    if depth_needed <= 4096:
        aborted = execute()
    else:
        # recursion can reach 2^n frames; give wide ground sets a thread
        # with an explicit stack instead of risking the process stack
        import threading

        box: dict = {}

        def target():
            try:
                box["aborted"] = execute()
            except BaseException as exc:  # surfaced in the caller below
                box["error"] = exc

        old_stack = threading.stack_size(max(64 << 20, depth_needed * 4096))
        try:
            worker = threading.Thread(target=target)
            worker.start()
            worker.join()
        finally:
            threading.stack_size(old_stack)
        if "error" in box:
            raise box["error"]
        aborted = box["aborted"]
    return search.outcome(aborted, started)


def _subtree_worker(args) -> tuple[int, SolveOutcome]:
    index, inst, budget, prefix = args
    return index, _solve_single(inst, budget, prefix)


def _solve_parallel(inst: ModelInstance, budget: SearchBudget, workers: int) -> SolveOutcome:
    import multiprocessing

    # split deep enough that no single subtree dominates a worker; dead
    # prefixes (inconsistent or symmetry-pruned) return immediately
    split_depth = min(max(workers.bit_length() + 4, 6), 1 << inst.n)
    prefixes = [
        tuple(bits >> i & 1 for i in range(split_depth))
        for bits in range(1 << split_depth)
    ]
    jobs = [(i, inst, budget, prefix) for i, prefix in enumerate(prefixes)]
    with multiprocessing.Pool(workers) as pool:
        indexed = sorted(pool.imap_unordered(_subtree_worker, jobs, chunksize=1))
    results = [outcome for _, outcome in indexed]

    stats = SearchStats()
    for out in results:
        stats.nodes += out.stats.nodes
        stats.propagations += out.stats.propagations
        stats.seconds = max(stats.seconds, out.stats.seconds)

    better = max if inst.kind.maximize else min

    def pick(cur, cand):
        if cand[0] is None:
            return cur
        if cur[0] is None or better(cur[0], cand[0]) == cand[0] != cur[0]:
            return cand
        return cur

    best = (None, None)
    for out in results:
        if out.status is Status.OPTIMAL:
            best = pick(best, (out.value, out.witness))
        elif out.status is Status.ABORTED:
            best = pick(best, (out.incumbent_value, out.incumbent_witness))

    if any(out.status is Status.ABORTED for out in results):
        return SolveOutcome(
            Status.ABORTED,
            stats=stats,
            incumbent_value=best[0],
            incumbent_witness=best[1],
        )
    if best[0] is None:
        return SolveOutcome(Status.INFEASIBLE, stats=stats)
    return SolveOutcome(Status.OPTIMAL, best[0], best[1], stats)


def solve(
    inst: ModelInstance, budget: SearchBudget = UNLIMITED, workers: int = 1
) -> SolveOutcome:
    """Exact optimum of an instance, or Infeasible, or Aborted on budget.

    workers=1 (the default) is the deterministic mode: repeated runs
    return identical outcomes including the witness.
    """
    if workers <= 1:
        return _solve_single(inst, budget)
    return _solve_parallel(inst, budget, workers)


def lower_bound_report(
    inst: ModelInstance, budget: SearchBudget = UNLIMITED
) -> SolveOutcome:
    """Anytime variant: like solve, but an Aborted run still surfaces the
    best feasible family found (its value bounds the true optimum)."""
    return solve(inst, budget)


# -- exhaustive oracle --------------------------------------------------------


@lru_cache(maxsize=8)
def _family_catalog(n: int):
    """Every non-empty union-closed family on [n] with its statistics.

    Enumerates all 2^(2^n) subsets of the power set in increasing
    family-bitmask order and keeps (m, degree, has twin cover, masks) for
    the union-closed ones, judged purely by the family-core predicates.
    """
    catalog = []
    for bits in range(1, 1 << (1 << n)):
        masks = tuple(s for s in range(1 << n) if bits >> s & 1)
        fam = Family(n, masks)
        if not is_union_closed(fam):
            continue
        catalog.append((len(masks), degree(fam), has_nontrivial_twin_cover(fam), masks))
    return tuple(catalog)


def exhaustive_oracle(inst: ModelInstance) -> SolveOutcome:
    """Reference optimum by complete enumeration; only for n <= 4."""
    if inst.n > 4:
        raise ValueError(f"exhaustive oracle supports n <= 4, got n={inst.n}")
    started = time.monotonic()
    catalog = _family_catalog(inst.n)
    kind, param = inst.kind, inst.param
    need_cover = kind.twin
    best = None
    best_masks = None
    if kind.maximize:
        for m, deg, cover, masks in catalog:
            if deg <= param and (cover or not need_cover):
                if best is None or m > best:
                    best, best_masks = m, masks
    else:
        for m, deg, cover, masks in catalog:
            if m == param and (cover or not need_cover):
                if best is None or deg < best:
                    best, best_masks = deg, masks
    stats = SearchStats(nodes=len(catalog), seconds=time.monotonic() - started)
    if best is None:
        return SolveOutcome(Status.INFEASIBLE, stats=stats)
    witness = Family(inst.n, best_masks)
    if not kind.maximize:
        witness = sort_by_frequency(witness)
    return SolveOutcome(Status.OPTIMAL, best, witness, stats)
