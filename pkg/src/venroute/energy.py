"""Closed-form energy quantities for paths and transmission plans.

Units are fixed throughout: energy in kWh, time in seconds, rates in kWh/s,
EV flows in EVs per second. Each path segment boundary costs one
charge-discharge cycle with combined efficiency z = z_c * z_d.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConsistencyError, DomainError, StructuralError
from .network import Junction, RouteId, VehicularNetwork, VehicularRoute


@dataclass(frozen=True)
class EnergyParams:
    packet_kwh: float  # w: kWh moved per charge-discharge cycle
    charge_eff: float  # z_c
    discharge_eff: float  # z_d
    window_s: float  # T: transfer window

    def __post_init__(self):
        if not (0.0 <= self.charge_eff <= 1.0 and 0.0 <= self.discharge_eff <= 1.0):
            raise DomainError("efficiencies must lie in [0, 1]")
        if self.packet_kwh <= 0.0:
            raise DomainError("packet size must be positive")
        if self.window_s <= 0.0:
            raise DomainError("transfer window must be positive")

    @property
    def efficiency(self) -> float:
        """Combined per-cycle efficiency z."""
        return self.charge_eff * self.discharge_eff


@dataclass(frozen=True)
class EnergyPath:
    """Chain of route sub-routes from source to destination.

    ``segments`` holds (route id, start arc index, end arc index) with 1-based
    inclusive arc indices; ``boundaries`` are the junctions at segment joints,
    starting at the source and ending at the destination.
    """

    segments: tuple[tuple[RouteId, int, int], ...]
    source: Junction
    destination: Junction
    boundaries: tuple[Junction, ...]
    arc_ids: tuple[str, ...]
    delay_s: float
    bottleneck_flow: float

    @property
    def cycles(self) -> int:
        return len(self.segments)

    def sort_key(self):
        return (self.boundaries, tuple(rid for rid, _, _ in self.segments))


def build_energy_path(
    network: VehicularNetwork,
    routes_by_id: Mapping[RouteId, VehicularRoute],
    segments: Sequence[tuple[RouteId, int, int]],
    source: Junction,
    destination: Junction,
) -> EnergyPath:
    """Validate segment chaining and assemble the derived path quantities."""
    if not segments:
        raise StructuralError("an energy path needs at least one segment")
    seen_routes = set()
    boundaries = [source]
    arc_ids: list[str] = []
    delay = 0.0
    bottleneck = float("inf")
    prev_head = source
    for rid, n, m in segments:
        if rid in seen_routes:
            raise StructuralError(f"route {rid!r} appears twice along the path")
        seen_routes.add(rid)
        route = routes_by_id[rid]
        if not (1 <= n <= m <= len(route.arcs)):
            raise StructuralError(f"segment ({rid}, {n}, {m}) out of range")
        sub = route.arcs[n - 1 : m]
        tail = network.arc_by_id[sub[0]].tail
        head = network.arc_by_id[sub[-1]].head
        if tail != prev_head:
            raise StructuralError(
                f"segment ({rid}, {n}, {m}) starts at {tail}, expected {prev_head}"
            )
        arc_ids.extend(sub)
        delay += sum(network.arc_by_id[a].delay_s for a in sub)
        bottleneck = min(bottleneck, route.flow)
        boundaries.append(head)
        prev_head = head
    if prev_head != destination:
        raise StructuralError(f"path ends at {prev_head}, expected destination {destination}")
    if len(set(boundaries)) != len(boundaries):
        raise StructuralError("segment boundary junctions repeat; path is not loop-free")
    return EnergyPath(
        segments=tuple(segments),
        source=source,
        destination=destination,
        boundaries=tuple(boundaries),
        arc_ids=tuple(arc_ids),
        delay_s=delay,
        bottleneck_flow=bottleneck,
    )


def propagation_delay(path: EnergyPath, network: VehicularNetwork) -> float:
    """Travel time of the first energy packet: sum of arc delays along the path."""
    return sum(network.arc_by_id[a].delay_s for a in path.arc_ids)


def rate_cap(params: EnergyParams, segment_flows: Sequence[float]) -> float:
    """Largest admissible transmission rate: packet size times the minimum segment flow."""
    return params.packet_kwh * min(segment_flows)


def transferable_energy(path: EnergyPath, params: EnergyParams, rate: float) -> float:
    """Energy deliverable in the window at the given rate.

    Paths whose propagation delay meets or exceeds the window have zero
    capacity (they are included and ignored rather than rejected).
    """
    usable = params.window_s - path.delay_s
    if usable <= 0.0:
        return 0.0
    return usable * params.efficiency**path.cycles * rate


def path_loss(delivered_kwh: float, cycles: int, efficiency: float) -> float:
    """Loss incurred delivering the given energy across the given cycle count."""
    if efficiency <= 0.0:
        raise DomainError("zero efficiency means infinite loss")
    return (1.0 / efficiency**cycles - 1.0) * delivered_kwh


@dataclass(frozen=True)
class PlanEntry:
    path: EnergyPath
    rate: float  # g_j, kWh/s
    delivered_kwh: float  # x_j


@dataclass(frozen=True)
class TransmissionPlan:
    entries: tuple[PlanEntry, ...]
    params: EnergyParams


# Slack allowed when checking x_j against its transferable-energy cap;
# absorbs LP feasibility tolerance.
CAP_SLACK = 1e-6


def make_plan(
    entries: Sequence[PlanEntry], params: EnergyParams, check: bool = True
) -> TransmissionPlan:
    plan = TransmissionPlan(entries=tuple(entries), params=params)
    if check:
        for e in plan.entries:
            if e.rate < -CAP_SLACK or e.delivered_kwh < -CAP_SLACK:
                raise ConsistencyError("negative rate or energy in plan")
            cap = transferable_energy(e.path, params, e.rate)
            if e.delivered_kwh > cap + CAP_SLACK:
                raise ConsistencyError(
                    f"entry delivers {e.delivered_kwh} kWh, above its cap {cap} kWh"
                )
    return plan


def plan_totals(plan: TransmissionPlan) -> tuple[float, float]:
    """Total delivered energy and total loss of a plan."""
    z = plan.params.efficiency
    delivered = sum(e.delivered_kwh for e in plan.entries)
    loss = sum(path_loss(e.delivered_kwh, e.path.cycles, z) for e in plan.entries)
    return delivered, loss


def plan_fractions(plan: TransmissionPlan) -> tuple[float, ...]:
    """Per-path share of the delivered total; empty when nothing is delivered."""
    delivered, _ = plan_totals(plan)
    if delivered <= 0.0:
        return ()
    return tuple(e.delivered_kwh / delivered for e in plan.entries)
