"""Independent oracles and small fixture builders shared by the test modules.

The oracles deliberately avoid the library's own traversal and solver code:
sequence enumeration is a plain recursive DFS, path expansion is a direct
Cartesian product with a repeated-route filter, and the LP oracle is a dense
grid search over delivered-energy vectors.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from venroute import (
    EnergyParams,
    VehicularNetwork,
    VehicularRoute,
    build_accessibility_graph,
    normalize_routes,
    prune_unreachable,
)


# ---------------------------------------------------------------------------
# sequence / expansion oracles


def oracle_sequences(arcs, s, t):
    """All loop-free s-t junction sequences over the given arc set (recursive DFS)."""
    succ = {}
    for i, j in arcs:
        succ.setdefault(i, set()).add(j)
    out = []

    def walk(node, seq):
        if node == t:
            out.append(tuple(seq))
            return
        for j in sorted(succ.get(node, ())):
            if j not in seq:
                seq.append(j)
                walk(j, seq)
                seq.pop()

    walk(s, [s])
    return set(out)


def oracle_expand(sequences, accessibility):
    """Brute-force Cartesian expansion of sequences into segment tuples.

    Returns the set of (boundaries, route-id tuple) identities after dropping
    combinations that reuse a route.
    """
    out = set()
    for seq in sequences:
        choices = [sorted(accessibility.segments[(i, j)]) for i, j in zip(seq, seq[1:])]
        for combo in itertools.product(*choices):
            if len(set(combo)) == len(combo):
                out.add((tuple(seq), combo))
    return out


# ---------------------------------------------------------------------------
# dense grid-search LP oracle (instances with per-path-independent caps)


def oracle_min_loss(caps, cycles, z, target, resolution=60):
    """Minimum total loss delivering ``target`` with per-path ceilings ``caps``.

    Valid for instances whose paths share no routes or road arcs, so the only
    constraints are 0 <= x_j <= caps[j] and sum(x) >= target. Exhaustively
    checks every assignment that fills a subset of paths to their ceilings
    and routes the remaining energy through one other path (every minimizer
    of a linear objective over this box-with-total region has that shape),
    then cross-checks that no point of a dense grid over the box beats it.
    Returns None if the target exceeds total capacity.
    """
    caps = np.asarray(caps, dtype=float)
    lam = 1.0 / z ** np.asarray(cycles, dtype=float) - 1.0
    if target > caps.sum() + 1e-9:
        return None
    if target <= 0.0:
        return 0.0
    m = len(caps)
    best = np.inf
    for mask in range(2**m):
        full = [j for j in range(m) if mask >> j & 1]
        filled = caps[full].sum()
        base = float((lam[full] * caps[full]).sum())
        rest = target - filled
        if rest <= 0.0:
            best = min(best, base)
            continue
        for j in range(m):
            if j in full:
                continue
            if rest <= caps[j] + 1e-12:
                best = min(best, base + lam[j] * rest)
    # dense grid sanity pass: no sampled feasible point may undercut the
    # vertex minimum (allowing for grid discretization of the total)
    axes = [np.linspace(0.0, caps[k], resolution) for k in range(m)]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    feasible = pts.sum(axis=1) >= target
    if feasible.any():
        grid_best = float((pts[feasible] @ lam).min())
        assert grid_best >= best - 1e-9
    return float(best)


# ---------------------------------------------------------------------------
# fixture builders


def parallel_paths_instance():
    """Three route-disjoint, arc-disjoint s-t energy paths with 1, 2, 3 cycles.

    Flows and delays are chosen so the per-path ceilings are distinct and no
    path saturates the window.
    """
    junctions = ["s", "m1", "m2", "m3", "t"]
    arcs = [
        ("a_direct", "s", "t", 600.0),
        ("a_s_m1", "s", "m1", 600.0),
        ("a_m1_t", "m1", "t", 600.0),
        ("a_s_m2", "s", "m2", 600.0),
        ("a_m2_m3", "m2", "m3", 600.0),
        ("a_m3_t", "m3", "t", 600.0),
    ]
    network = VehicularNetwork.build(junctions, arcs)
    routes = (
        VehicularRoute("r_direct", ("a_direct",), 0.01),
        VehicularRoute("r_b1", ("a_s_m1",), 0.05),
        VehicularRoute("r_b2", ("a_m1_t",), 0.04),
        VehicularRoute("r_c1", ("a_s_m2",), 0.2),
        VehicularRoute("r_c2", ("a_m2_m3",), 0.3),
        VehicularRoute("r_c3", ("a_m3_t",), 0.25),
    )
    params = EnergyParams(packet_kwh=1.0, charge_eff=0.9, discharge_eff=1.0, window_s=18000.0)
    return network, routes, params, "s", "t"


def random_instance(seed, n_max=6, density=0.45, route_len=3, route_count=10):
    """Seeded small random road network + simple routes + an s-t pair.

    Built directly (not via the library's scenario generator) so the
    enumeration oracles run on independently constructed inputs.
    """
    rng = random.Random(seed)
    n = rng.randint(3, n_max)
    junctions = [f"n{k}" for k in range(n)]
    arcs = []
    for i in junctions:
        for j in junctions:
            if i != j and rng.random() < density:
                arcs.append((f"a_{i}_{j}", i, j, rng.uniform(60.0, 1200.0)))
    network = VehicularNetwork.build(junctions, arcs)
    by_tail = {}
    for a in network.arcs:
        by_tail.setdefault(a.tail, []).append(a)
    routes = []
    for k in range(route_count):
        here = rng.choice(junctions)
        visited = {here}
        picked = []
        for _ in range(rng.randint(1, route_len)):
            options = [a for a in by_tail.get(here, []) if a.head not in visited]
            if not options:
                break
            arc = rng.choice(options)
            picked.append(arc.arc_id)
            visited.add(arc.head)
            here = arc.head
        if picked:
            routes.append(VehicularRoute(f"r{k:02d}", tuple(picked), rng.uniform(0.05, 0.3)))
    s, t = rng.sample(junctions, 2)
    return network, tuple(routes), s, t


def prepared(network, routes, t):
    """Normalize, build accessibility, and prune toward t (test-side shorthand)."""
    norm = normalize_routes(network, routes)
    acc = build_accessibility_graph(network, norm)
    pruned, blocked = prune_unreachable(network, acc, t)
    return norm, acc, pruned, blocked
