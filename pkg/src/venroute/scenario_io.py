"""Line-oriented scenario file format.

A scenario is one human-readable text document with bracketed sections:

    [meta]        name = ..., seed = ...
    [params]      w_kwh, zc, zd, T_s
    [endpoints]   s, t, optional x_target_kwh
    [junctions]   one junction id per line
    [arcs]        arc_id tail head delay_s=<s>   (or length_km=<km> speed_kmh=<kmh>)
    [routes]      route_id flow_ev_per_s=<f> arcs=<id,id,...>

Saving is canonical (sorted, repr floats), so load(save(x)) == x and
re-saving a loaded file is byte-identical.
"""

from __future__ import annotations

import io
from typing import TextIO

from .energy import EnergyParams
from .errors import ScenarioFormatError
from .network import VehicularNetwork, VehicularRoute
from .scenarios import Scenario


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_scenario(scenario))


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_scenario(fh.read())


def dumps_scenario(sc: Scenario) -> str:
    out = io.StringIO()
    w = out.write
    w("[meta]\n")
    w(f"name = {sc.name}\n")
    w(f"seed = {sc.seed}\n\n")
    w("[params]\n")
    w(f"w_kwh = {sc.params.packet_kwh!r}\n")
    w(f"zc = {sc.params.charge_eff!r}\n")
    w(f"zd = {sc.params.discharge_eff!r}\n")
    w(f"T_s = {sc.params.window_s!r}\n\n")
    w("[endpoints]\n")
    w(f"s = {sc.source}\n")
    w(f"t = {sc.destination}\n")
    if sc.target_kwh is not None:
        w(f"x_target_kwh = {sc.target_kwh!r}\n")
    w("\n[junctions]\n")
    for j in sorted(sc.network.junctions):
        w(f"{j}\n")
    w("\n[arcs]\n")
    for a in sorted(sc.network.arcs, key=lambda a: a.arc_id):
        w(f"{a.arc_id} {a.tail} {a.head} delay_s={a.delay_s!r}\n")
    w("\n[routes]\n")
    for r in sc.routes:
        arcs = ",".join(r.arcs)
        w(f"{r.route_id} flow_ev_per_s={r.flow!r} arcs={arcs}\n")
    return out.getvalue()


def _fail(lineno: int, message: str):
    raise ScenarioFormatError(f"line {lineno}: {message}")


def _kv(token: str, lineno: int) -> tuple[str, str]:
    if "=" not in token:
        _fail(lineno, f"expected key=value, got {token!r}")
    key, _, value = token.partition("=")
    return key.strip(), value.strip()


def loads_scenario(text: str) -> Scenario:
    section = None
    meta: dict[str, str] = {}
    params: dict[str, str] = {}
    endpoints: dict[str, str] = {}
    junctions: list[str] = []
    arcs: list[tuple[str, str, str, float]] = []
    routes: list[VehicularRoute] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            if section not in ("meta", "params", "endpoints", "junctions", "arcs", "routes"):
                _fail(lineno, f"unknown section [{section}]")
            continue
        if section is None:
            _fail(lineno, "content before any section header")
        if section in ("meta", "params", "endpoints"):
            if "=" not in line:
                _fail(lineno, f"expected key = value in [{section}]")
            key, _, value = line.partition("=")
            {"meta": meta, "params": params, "endpoints": endpoints}[section][
                key.strip()
            ] = value.strip()
        elif section == "junctions":
            if len(line.split()) != 1:
                _fail(lineno, "one junction id per line")
            junctions.append(line)
        elif section == "arcs":
            tokens = line.split()
            if len(tokens) < 4:
                _fail(lineno, "arc needs: id tail head delay_s=... (or length/speed)")
            aid, tail, head = tokens[:3]
            fields = dict(_kv(tok, lineno) for tok in tokens[3:])
            try:
                if "delay_s" in fields:
                    delay = float(fields["delay_s"])
                elif "length_km" in fields and "speed_kmh" in fields:
                    delay = float(fields["length_km"]) / float(fields["speed_kmh"]) * 3600.0
                else:
                    _fail(lineno, "arc needs delay_s or length_km+speed_kmh")
            except ValueError:
                _fail(lineno, "arc numeric field is not a number")
            arcs.append((aid, tail, head, delay))
        elif section == "routes":
            tokens = line.split()
            if len(tokens) < 3:
                _fail(lineno, "route needs: id flow_ev_per_s=... arcs=...")
            rid = tokens[0]
            fields = dict(_kv(tok, lineno) for tok in tokens[1:])
            if "flow_ev_per_s" not in fields or "arcs" not in fields:
                _fail(lineno, "route needs flow_ev_per_s and arcs fields")
            try:
                flow = float(fields["flow_ev_per_s"])
            except ValueError:
                _fail(lineno, "route flow is not a number")
            route_arcs = tuple(a for a in fields["arcs"].split(",") if a)
            if not route_arcs:
                _fail(lineno, "route has no arcs")
            routes.append(VehicularRoute(rid, route_arcs, flow))

    for key in ("name", "seed"):
        if key not in meta:
            raise ScenarioFormatError(f"[meta] missing field {key!r}")
    for key in ("w_kwh", "zc", "zd", "T_s"):
        if key not in params:
            raise ScenarioFormatError(f"[params] missing field {key!r}")
    for key in ("s", "t"):
        if key not in endpoints:
            raise ScenarioFormatError(f"[endpoints] missing field {key!r}")

    try:
        eparams = EnergyParams(
            packet_kwh=float(params["w_kwh"]),
            charge_eff=float(params["zc"]),
            discharge_eff=float(params["zd"]),
            window_s=float(params["T_s"]),
        )
        seed = int(meta["seed"])
    except ValueError as exc:
        raise ScenarioFormatError(f"bad numeric field: {exc}") from None

    network = VehicularNetwork.build(junctions, arcs)
    target = endpoints.get("x_target_kwh")
    return Scenario(
        name=meta["name"],
        seed=seed,
        network=network,
        routes=tuple(routes),
        params=eparams,
        source=endpoints["s"],
        destination=endpoints["t"],
        target_kwh=float(target) if target is not None else None,
    )
