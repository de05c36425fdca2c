"""Exhaustive and bounded construction of the energy-path set.

Junction sequences are grown on the pruned accessibility graph by frontier
expansion; each completed sequence is expanded into concrete energy paths by
taking the Cartesian product of its per-arc route index sets and dropping
combinations that reuse a route. A randomized depth-first variant yields
seeded subsets for the sampled-LP method.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .energy import EnergyPath, build_energy_path
from .errors import ConsistencyError, DomainError, EnumerationCapError
from .network import (
    AccessibilityGraph,
    Junction,
    RouteId,
    VehicularNetwork,
    VehicularRoute,
)

DEFAULT_CAP = 10**6

JunctionSequence = tuple[Junction, ...]


@dataclass(frozen=True)
class PathSet:
    source: Junction
    destination: Junction
    paths: tuple[EnergyPath, ...]
    complete: bool


def f_bound(n: int) -> int:
    """Sequence-count recurrence: f(n) = 1 + (n-1) f(n-1), f(1) = 1, 0 below."""
    if n < 1:
        return 0
    value = 1
    for k in range(2, n + 1):
        value = 1 + (k - 1) * value
    return value


def f_closed_bound(n: int) -> float:
    """Closed-form upper bound (n-1)! * e on f(n)."""
    if n < 1:
        return 0.0
    return math.factorial(n - 1) * math.e


def _successor_map(
    arcs: Iterable[tuple[Junction, Junction]]
) -> dict[Junction, tuple[Junction, ...]]:
    out: dict[Junction, list[Junction]] = {}
    for i, j in arcs:
        out.setdefault(i, []).append(j)
    return {i: tuple(sorted(v)) for i, v in out.items()}


def _hops_to(
    arcs: Iterable[tuple[Junction, Junction]], t: Junction
) -> dict[Junction, int]:
    """BFS hop count to t over the arcs, for every junction that can reach t."""
    preds: dict[Junction, list[Junction]] = {}
    for i, j in arcs:
        preds.setdefault(j, []).append(i)
    dist = {t: 0}
    frontier = [t]
    while frontier:
        nxt = []
        for j in frontier:
            for i in preds.get(j, ()):
                if i not in dist:
                    dist[i] = dist[j] + 1
                    nxt.append(i)
        frontier = nxt
    return dist


def enumerate_sequences(
    pruned_arcs: frozenset[tuple[Junction, Junction]] | set[tuple[Junction, Junction]],
    s: Junction,
    t: Junction,
    cap: int = DEFAULT_CAP,
) -> tuple[JunctionSequence, ...]:
    """All loop-free junction sequences from s to t on the pruned accessibility arcs.

    Returned in lexicographic order. Raises EnumerationCapError if more than
    ``cap`` sequences would be produced.
    """
    if s == t:
        raise DomainError("source and destination must differ")
    # Restricting to junctions that can still reach t changes nothing in the
    # output but avoids growing dead-end frontiers.
    live = set(_hops_to(pruned_arcs, t))
    succ = _successor_map((i, j) for (i, j) in pruned_arcs if i in live and j in live)
    frontier: list[JunctionSequence] = [(s,)]
    done: list[JunctionSequence] = []
    while frontier:
        nxt: list[JunctionSequence] = []
        for seq in frontier:
            for j in succ.get(seq[-1], ()):
                if j in seq:
                    continue
                extended = seq + (j,)
                if j == t:
                    done.append(extended)
                else:
                    nxt.append(extended)
            if len(done) + len(nxt) > cap:
                raise EnumerationCapError(
                    f"sequence enumeration exceeded the cap of {cap}"
                )
        frontier = nxt
    return tuple(sorted(done))


def _combo_paths(
    seq: JunctionSequence,
    accessibility: AccessibilityGraph,
    network: VehicularNetwork,
    routes_by_id: Mapping[RouteId, VehicularRoute],
) -> Iterator[EnergyPath]:
    """Expand one junction sequence into energy paths, combo by combo."""
    index_lists = []
    for i, j in zip(seq, seq[1:]):
        per_route = accessibility.segments.get((i, j))
        if not per_route:
            raise ConsistencyError(f"no index set for accessibility arc ({i}, {j})")
        index_lists.append(sorted(per_route))
    for combo in itertools.product(*index_lists):
        if len(set(combo)) != len(combo):
            continue  # a route reused across segments does not form an energy path
        segments = [
            (rid, *accessibility.segments[(i, j)][rid])
            for rid, i, j in zip(combo, seq, seq[1:])
        ]
        yield build_energy_path(network, routes_by_id, segments, seq[0], seq[-1])


def expand_to_paths(
    sequences: Iterable[JunctionSequence],
    accessibility: AccessibilityGraph,
    network: VehicularNetwork,
    routes: Iterable[VehicularRoute],
    cap: int = DEFAULT_CAP,
) -> PathSet:
    """Expand junction sequences into the full set of concrete energy paths."""
    sequences = list(sequences)
    routes_by_id = {r.route_id: r for r in routes}
    paths: list[EnergyPath] = []
    keys: set = set()
    for seq in sequences:
        for path in _combo_paths(seq, accessibility, network, routes_by_id):
            paths.append(path)
            if len(paths) > cap:
                raise EnumerationCapError(f"path expansion exceeded the cap of {cap}")
            if __debug__:
                key = path.sort_key()
                assert key not in keys, "duplicate energy path produced"
                keys.add(key)
    paths.sort(key=EnergyPath.sort_key)
    source = sequences[0][0] if sequences else ""
    dest = sequences[0][-1] if sequences else ""
    return PathSet(source=source, destination=dest, paths=tuple(paths), complete=True)


def enumerate_paths(
    pruned_arcs,
    s: Junction,
    t: Junction,
    accessibility: AccessibilityGraph,
    network: VehicularNetwork,
    routes: Iterable[VehicularRoute],
    cap: int = DEFAULT_CAP,
) -> PathSet:
    """Full enumeration: sequences then expansion, under one safety cap."""
    sequences = enumerate_sequences(pruned_arcs, s, t, cap=cap)
    pathset = expand_to_paths(sequences, accessibility, network, routes, cap=cap)
    return PathSet(source=s, destination=t, paths=pathset.paths, complete=True)


class _BoundTracker:
    """Records whether a length budget ever pruned a DFS branch."""

    hit = False


def _random_sequence_dfs(
    succ: Mapping[Junction, tuple[Junction, ...]],
    s: Junction,
    t: Junction,
    rng: random.Random,
    hops: Mapping[Junction, int],
    budget: int | None = None,
    tracker: _BoundTracker | None = None,
) -> Iterator[JunctionSequence]:
    """Yield loop-free s-t sequences in randomized depth-first order.

    Children are shuffled, then stable-sorted by a jittered hop distance to
    t, so detour sequences surface early but descents still head toward t.
    With a ``budget`` (max arcs per sequence), children that cannot reach t
    within it are pruned, which keeps yields fast on dense graphs; pruning
    events are flagged on the tracker. Without a budget the traversal covers
    the whole sequence space when run to exhaustion.
    """

    def shuffled(node: Junction) -> list[Junction]:
        order = list(succ.get(node, ()))
        rng.shuffle(order)
        order.sort(key=lambda j: hops[j] + (1 if rng.random() < 0.3 else 0))
        return order

    seq: list[Junction] = [s]
    on_path = {s}
    stack: list[Iterator[Junction]] = [iter(shuffled(s))]
    while stack:
        child = next(stack[-1], None)
        if child is None:
            stack.pop()
            on_path.discard(seq.pop())
            continue
        if child in on_path:
            continue
        # arcs used after stepping to child, plus the least arcs still needed
        if budget is not None and len(seq) + hops[child] > budget:
            if tracker is not None:
                tracker.hit = True
            continue
        if child == t:
            yield tuple(seq) + (t,)
            continue
        seq.append(child)
        on_path.add(child)
        stack.append(iter(shuffled(child)))


def enumerate_bounded(
    pruned_arcs,
    s: Junction,
    t: Junction,
    accessibility: AccessibilityGraph,
    network: VehicularNetwork,
    routes: Iterable[VehicularRoute],
    limit: int,
    seed: int,
    detour_slack: int | None = 3,
) -> PathSet:
    """Seeded subset of the energy-path set, at most ``limit`` paths.

    Randomized depth-first expansion so that both short and long sequences
    appear; at most a fixed share of the limit is drawn from any one junction
    sequence on the first pass, so small subsets span several sequence
    families. Sequences are capped at ``detour_slack`` arcs beyond the
    fewest-hop distance (pass None to search unbounded). Deterministic for
    fixed inputs and seed. The completeness flag is true only when the whole
    path set fit within the limit.
    """
    if limit < 1:
        raise DomainError("limit must be at least 1")
    if s == t:
        raise DomainError("source and destination must differ")
    routes_by_id = {r.route_id: r for r in routes}
    hops = _hops_to(pruned_arcs, t)
    succ = _successor_map((i, j) for (i, j) in pruned_arcs if i in hops and j in hops)
    rng = random.Random(seed)
    per_seq_cap = max(1, limit // 8)
    paths: list[EnergyPath] = []
    truncated = False
    skipped: list[JunctionSequence] = []  # sequences with combos beyond the cap
    budget = None
    tracker = _BoundTracker()
    if detour_slack is not None and s in hops:
        budget = hops[s] + detour_slack
    for seq in _random_sequence_dfs(succ, s, t, rng, hops, budget, tracker):
        taken = 0
        for path in _combo_paths(seq, accessibility, network, routes_by_id):
            if len(paths) >= limit:
                truncated = True
                break
            if taken >= per_seq_cap:
                skipped.append(seq)
                break
            paths.append(path)
            taken += 1
        if truncated:
            break
    if not truncated and skipped:
        # room left and combos were held back for diversity: take them now
        for seq in skipped:
            for k, path in enumerate(_combo_paths(seq, accessibility, network, routes_by_id)):
                if k < per_seq_cap:
                    continue
                if len(paths) >= limit:
                    truncated = True
                    break
                paths.append(path)
            if truncated:
                break
    paths.sort(key=EnergyPath.sort_key)
    complete = not truncated and not tracker.hit
    return PathSet(source=s, destination=t, paths=tuple(paths), complete=complete)
