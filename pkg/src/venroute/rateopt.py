"""Loss-minimizing rate assignment over a path set, as a linear program.

Variables are per-path delivered energy x_j and rate g_j. The objective is
total conversion loss; constraints cap x_j by the window capacity at rate
g_j, cap g_j by each segment's EV flow, cap aggregate rate per road arc by
its total flow, and require the delivered total to meet the energy target.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from . import energy as en
from .energy import EnergyParams, EnergyPath, PlanEntry, TransmissionPlan
from .errors import DomainError, SolverError
from .network import VehicularNetwork, VehicularRoute, arc_flow
from .pathenum import PathSet

OBJECTIVE_TOL = 1e-6
FEASIBILITY_TOL = 1e-9

_HIGHS_OPTIONS = {"presolve": True, "primal_feasibility_tolerance": 1e-10}


@dataclass(frozen=True)
class LossMinProblem:
    paths: PathSet
    params: EnergyParams
    network: VehicularNetwork
    routes: tuple[VehicularRoute, ...]
    target_kwh: float

    def __post_init__(self):
        if self.target_kwh < 0.0:
            raise DomainError("energy target must be nonnegative")


@dataclass(frozen=True)
class LpInstance:
    """Assembled LP: minimize c @ v s.t. A_ub @ v <= b_ub, bounds on v.

    Variables are ordered [x_0..x_{m-1}, g_0..g_{m-1}].
    """

    c: np.ndarray
    a_ub: sparse.csr_matrix
    b_ub: np.ndarray
    bounds: tuple[tuple[float, float | None], ...]
    row_labels: tuple[str, ...]
    var_labels: tuple[str, ...]


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible"
    plan: TransmissionPlan | None
    objective: float | None
    diagnostics: dict = field(default_factory=dict)


def _window_cap(path: EnergyPath, params: EnergyParams) -> float:
    """Capacity coefficient (T - d) z^|p| multiplying the rate; zero past the window."""
    usable = params.window_s - path.delay_s
    if usable <= 0.0:
        return 0.0
    return usable * params.efficiency**path.cycles


def build_lp(problem: LossMinProblem) -> LpInstance:
    paths = problem.paths.paths
    params = problem.params
    w = params.packet_kwh
    z = params.efficiency
    m = len(paths)
    routes_by_id = {r.route_id: r for r in problem.routes}

    c = np.zeros(2 * m)
    for j, p in enumerate(paths):
        c[j] = 1.0 / z**p.cycles - 1.0 if z > 0 else 0.0

    rows: list[tuple[dict[int, float], float, str]] = []
    # window capacity: x_j - cap_j * g_j <= 0
    for j, p in enumerate(paths):
        rows.append(({j: 1.0, m + j: -_window_cap(p, params)}, 0.0, f"cap_p{j}"))
    # per-segment flow: g_j <= w * f_i^j
    for j, p in enumerate(paths):
        for i, (rid, _, _) in enumerate(p.segments):
            rows.append(({m + j: 1.0}, w * routes_by_id[rid].flow, f"seg_p{j}_s{i}"))
    # shared-arc coupling: sum_j g_j / w <= h_a for each road arc used
    used_arcs = sorted({a for p in paths for a in p.arc_ids})
    for a in used_arcs:
        coeffs = {m + j: 1.0 / w for j, p in enumerate(paths) if a in p.arc_ids}
        rows.append((coeffs, arc_flow(problem.network, problem.routes, a), f"arc_{a}"))
    # delivery target: -sum x_j <= -target
    rows.append(({j: -1.0 for j in range(m)}, -problem.target_kwh, "target"))

    data, ri, ci = [], [], []
    b_ub = np.empty(len(rows))
    labels = []
    for k, (coeffs, rhs, label) in enumerate(rows):
        for col, val in coeffs.items():
            ri.append(k)
            ci.append(col)
            data.append(val)
        b_ub[k] = rhs
        labels.append(label)
    a_ub = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), 2 * m))

    bounds: list[tuple[float, float | None]] = []
    for p in paths:
        # paths past the window carry nothing, but stay in the instance
        bounds.append((0.0, 0.0) if _window_cap(p, params) == 0.0 else (0.0, None))
    bounds.extend((0.0, None) for _ in paths)

    var_labels = tuple(f"x{j}" for j in range(m)) + tuple(f"g{j}" for j in range(m))
    return LpInstance(
        c=c,
        a_ub=a_ub,
        b_ub=b_ub,
        bounds=tuple(bounds),
        row_labels=tuple(labels),
        var_labels=var_labels,
    )


def _run_linprog(c, lp: LpInstance, extra_rows=None, extra_rhs=None, fixed=None):
    a_ub, b_ub = lp.a_ub, lp.b_ub
    if extra_rows is not None:
        a_ub = sparse.vstack([a_ub, sparse.csr_matrix(np.atleast_2d(extra_rows))])
        b_ub = np.concatenate([b_ub, np.atleast_1d(extra_rhs)])
    bounds = list(lp.bounds)
    if fixed:
        for idx, val in fixed.items():
            bounds[idx] = (val, val)
    return linprog(
        c,
        A_ub=a_ub,
        b_ub=b_ub,
        bounds=bounds,
        method="highs",
        options=_HIGHS_OPTIONS,
    )


def _lexicographic_refine(lp: LpInstance, m: int, best_obj: float) -> np.ndarray:
    """Among optima, maximize x_j path by path in canonical order."""
    obj_row = np.concatenate([lp.c[: 2 * m]])
    fixed: dict[int, float] = {}
    rhs = best_obj + 1e-9
    x = None
    for j in range(m):
        goal = np.zeros(2 * m)
        goal[j] = -1.0  # maximize x_j
        res = _run_linprog(goal, lp, extra_rows=obj_row, extra_rhs=rhs, fixed=fixed)
        if res.status != 0:
            raise SolverError(f"tie-break pass failed at path {j}: {res.message}")
        fixed[j] = float(res.x[j])
        x = res.x
    # settle the rates deterministically: smallest total g among remaining optima
    goal = np.zeros(2 * m)
    goal[m:] = 1.0
    res = _run_linprog(goal, lp, extra_rows=obj_row, extra_rhs=rhs, fixed=fixed)
    if res.status != 0:
        raise SolverError(f"tie-break rate pass failed: {res.message}")
    return res.x


def solve_min_loss(problem: LossMinProblem, tie_break: bool = False) -> LpSolution:
    """Solve the loss-minimization LP; infeasibility is a verdict, not an error.

    With ``tie_break`` the solution is refined to the unique optimum that
    lexicographically maximizes delivered energy over the canonical path
    order (one extra solve per path; intended for small instances).
    """
    paths = problem.paths.paths
    if not paths:
        if problem.target_kwh <= 0.0:
            plan = en.make_plan([], problem.params)
            return LpSolution("optimal", plan, 0.0, {"iterations": 0})
        return LpSolution("infeasible", None, None, {})
    lp = build_lp(problem)
    t0 = time.perf_counter()
    res = _run_linprog(lp.c, lp)
    elapsed = time.perf_counter() - t0
    if res.status == 2:
        return LpSolution("infeasible", None, None, {"solve_s": elapsed})
    if res.status != 0:
        raise SolverError(f"LP solver failure (status {res.status}): {res.message}")
    x = res.x
    if tie_break:
        x = _lexicographic_refine(lp, len(paths), float(res.fun))

    m = len(paths)
    entries = [
        PlanEntry(path=p, rate=max(0.0, float(x[m + j])), delivered_kwh=max(0.0, float(x[j])))
        for j, p in enumerate(paths)
    ]
    plan = en.make_plan(entries, problem.params)
    residual = float(np.max(lp.a_ub @ x - lp.b_ub)) if lp.b_ub.size else 0.0
    diagnostics = {
        "iterations": int(getattr(res, "nit", 0)),
        "max_residual": max(residual, 0.0),
        "solve_s": elapsed,
    }
    return LpSolution("optimal", plan, float(lp.c @ x), diagnostics)


def max_deliverable(problem: LossMinProblem) -> float:
    """Largest delivered total any feasible plan can achieve (target ignored)."""
    paths = problem.paths.paths
    if not paths:
        return 0.0
    relaxed = LossMinProblem(
        paths=problem.paths,
        params=problem.params,
        network=problem.network,
        routes=problem.routes,
        target_kwh=0.0,
    )
    lp = build_lp(relaxed)
    goal = np.zeros(2 * len(paths))
    goal[: len(paths)] = -1.0
    res = _run_linprog(goal, lp)
    if res.status != 0:
        raise SolverError(f"capacity LP failure: {res.message}")
    return float(-res.fun)


def export_lp(problem: LossMinProblem) -> str:
    """Render the instance in CPLEX LP text format for external cross-checks."""
    lp = build_lp(problem)
    a = lp.a_ub.tocoo()
    by_row: dict[int, list[tuple[int, float]]] = {}
    for r, c_idx, v in zip(a.row, a.col, a.data):
        by_row.setdefault(int(r), []).append((int(c_idx), float(v)))

    def term(col: int, coef: float, first: bool) -> str:
        name = lp.var_labels[col]
        sign = "" if first and coef >= 0 else ("+ " if coef >= 0 else "- ")
        return f"{sign}{abs(coef):.12g} {name}"

    lines = ["Minimize", " obj:"]
    obj_terms = [
        term(j, lp.c[j], j == 0) for j in range(len(lp.c)) if lp.c[j] != 0.0
    ] or ["0 " + lp.var_labels[0]]
    lines[-1] += " " + " ".join(obj_terms)
    lines.append("Subject To")
    for k, label in enumerate(lp.row_labels):
        terms = sorted(by_row.get(k, []))
        body = " ".join(term(col, coef, idx == 0) for idx, (col, coef) in enumerate(terms))
        lines.append(f" {label}: {body} <= {lp.b_ub[k]:.12g}")
    lines.append("Bounds")
    for name, (lo, hi) in zip(lp.var_labels, lp.bounds):
        if hi is None:
            lines.append(f" {name} >= {lo:.12g}")
        else:
            lines.append(f" {lo:.12g} <= {name} <= {hi:.12g}")
    lines.append("End")
    return "\n".join(lines) + "\n"
