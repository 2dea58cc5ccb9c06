"""Command-line front end.

Subcommands:
    run <config.json>       execute a task and write a CSV result
    validate <config.json>  schema-check a config and list violations

Configs are JSON documents checked against CONFIG_SCHEMA (published as
docs/config.schema.json).  Every task writes a CSV whose leading comment
block (# key=value) records the resolved inputs and tool version, followed
by a header row and data rows; identical configs produce byte-identical
files.  Exit codes: 0 success, 2 config error, 3 solver failure (partial
rows are flushed with a FAILED sentinel row).
"""

from __future__ import annotations

import argparse
import csv
import functools
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import __version__
from .circuits import (
    DiagonalUnitary,
    StateVector,
    circuit_to_text,
    cluster_stabilizer_check,
    compile_diagonal,
    iqp_probability,
    nmr_cnot_sequence,
    prepare_cluster_state,
    simulate,
)
from .circuits.core import Circuit, Gate
from .entangle import concurrence, entanglement_of_formation, reduce
from .fits import c_fit, p_fit
from .lattice import (
    ArrayGeometry,
    custom_array,
    linear_array,
    pair_couplings,
    square_array,
)
from .manybody import (
    build_hamiltonian,
    energy_gap,
    p_not_all_zero,
    spectrum,
    thermal_excitation,
)
from .pendular import qubit_pair, solve_pendular

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

TASKS = (
    "fig3a",
    "fig3b",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
    "fig6a",
    "fig6b",
    "sweep",
    "concurrence",
    "thermal",
    "gap",
    "compile-diagonal",
    "iqp",
    "cluster-check",
    "fit-residuals",
    "nmr-cnot",
)

# sweepable axis per task; None means the task takes no sweep block
TASK_AXIS = {
    "fig3a": "omega",
    "fig4a": "omega",
    "fig4b": "kt",
    "fig5a": "omega",
    "fig5b": "x",
    "fig6a": "omega",
    "fig6b": "x",
    "sweep": None,  # any axis, chosen by the sweep block itself
}

_PAIR = {
    "type": "array",
    "items": {"type": "integer", "minimum": 0},
    "minItems": 2,
    "maxItems": 2,
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "polarq run configuration",
    "type": "object",
    "required": ["task"],
    "additionalProperties": False,
    "properties": {
        "task": {"enum": list(TASKS)},
        "geometry": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["linear", "square", "custom"]},
                "n": {"type": "integer", "minimum": 1, "maximum": 24},
                "rows": {"type": "integer", "minimum": 1},
                "cols": {"type": "integer", "minimum": 1},
                "positions": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "array",
                        "items": {"type": "number"},
                        "minItems": 3,
                        "maxItems": 3,
                    },
                },
                "field_direction": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 3,
                    "maxItems": 3,
                },
                "nearest_neighbors_only": {"type": "boolean"},
            },
        },
        "sweep": {
            "type": "object",
            "required": ["parameter", "from", "to", "points"],
            "additionalProperties": False,
            "properties": {
                "parameter": {"enum": ["omega", "x", "kt"]},
                "from": {"type": "number"},
                "to": {"type": "number"},
                "points": {"type": "integer", "minimum": 1},
                "scale": {"enum": ["linear", "log"]},
            },
        },
        "parameters": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "x": {"type": "number", "minimum": 0},
                "omega": {"type": "number", "minimum": 0},
                "kt": {"type": "number", "minimum": 0},
                "n": {"type": "integer", "minimum": 1, "maximum": 24},
                "eps": {"type": "number", "exclusiveMinimum": 0},
                "rows": {"type": "integer", "minimum": 1},
                "cols": {"type": "integer", "minimum": 1},
                "n_values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "integer", "minimum": 1, "maximum": 24},
                },
                "x_values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "number", "minimum": 0},
                },
                "omega_values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "number", "minimum": 0},
                },
                "pairs": {"type": "array", "minItems": 1, "items": _PAIR},
                "phases": {
                    "type": "array",
                    "minItems": 2,
                    "items": {"type": "number"},
                },
                "phases_file": {"type": "string"},
                "random_qubits": {"type": "integer", "minimum": 1, "maximum": 24},
                "edges": {"type": "array", "items": _PAIR},
                "graph": {"enum": ["chain", "grid"]},
                "dw_shift": {"type": "number", "exclusiveMinimum": 0},
                "angular_frequency": {"type": "boolean"},
                "wait_scale": {"type": "number", "minimum": 0},
                "which": {"enum": ["p", "concurrence"]},
                "circuit_output": {"type": "string"},
            },
        },
        "output": {"type": "string"},
        "workers": {"type": "integer", "minimum": 1},
    },
}


class ConfigError(Exception):
    """Config file unreadable, unparsable, or schema-invalid."""


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}"
        ) from exc


def validate_config(cfg) -> list[str]:
    """All schema and consistency violations, empty when the config is good."""
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    out = []
    for err in sorted(
        validator.iter_errors(cfg),
        key=lambda e: "/".join(str(p) for p in e.absolute_path),
    ):
        where = "/".join(str(p) for p in err.absolute_path) or "(top level)"
        out.append(f"{where}: {err.message}")
    if out or not isinstance(cfg, dict):
        return out
    task = cfg["task"]
    sweep = cfg.get("sweep")
    if sweep is not None:
        if task in TASK_AXIS:
            axis = TASK_AXIS[task]
            if axis is not None and sweep["parameter"] != axis:
                out.append(
                    f"sweep/parameter: task {task!r} sweeps {axis!r}, "
                    f"got {sweep['parameter']!r}"
                )
        else:
            out.append(f"sweep: task {task!r} does not take a sweep block")
        if sweep["from"] > sweep["to"]:
            out.append("sweep: 'from' must be <= 'to'")
        if sweep.get("scale") == "log" and sweep["from"] <= 0:
            out.append("sweep/from: log scale needs a positive lower bound")
    elif task == "sweep":
        out.append("sweep: task 'sweep' requires a sweep block")
    params = cfg.get("parameters", {})
    if task in ("compile-diagonal", "iqp"):
        sources = [
            k for k in ("phases", "phases_file", "random_qubits") if k in params
        ]
        if len(sources) > 1:
            out.append(f"parameters: give only one phase source, got {sources}")
        if "phases" in params:
            m = len(params["phases"])
            if m & (m - 1) or m < 2:
                out.append(f"parameters/phases: length {m} is not a power of two")
    geom = cfg.get("geometry", {})
    if geom.get("kind") == "custom" and "positions" not in geom:
        out.append("geometry: custom geometry requires positions")
    return out


@functools.lru_cache(maxsize=None)
def _qp(x: float):
    return qubit_pair(solve_pendular(x))


def _axis_values(sweep: dict) -> np.ndarray:
    lo, hi, pts = sweep["from"], sweep["to"], sweep["points"]
    if sweep.get("scale", "linear") == "log":
        return np.geomspace(lo, hi, pts)
    return np.linspace(lo, hi, pts)


def _resolve_geometry(cfg, default_kind="linear", default_n=2) -> ArrayGeometry:
    g = cfg.get("geometry", {})
    kind = g.get("kind", default_kind)
    if kind == "linear":
        return linear_array(g.get("n", default_n))
    if kind == "square":
        return square_array(g.get("rows", 3), g.get("cols", 3))
    return custom_array(g["positions"], g.get("field_direction", (0.0, 0.0, 1.0)))


def _ground_vector(x: float, geom: ArrayGeometry, omega: float, nn_only: bool):
    qp = _qp(x)
    coups = pair_couplings(geom, omega, nn_only)
    h = build_hamiltonian(qp, coups, geom.n_sites)
    return spectrum(h, "all")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _join(values) -> str:
    return ";".join(_cell(v) for v in values)


def _geom_label(geom: ArrayGeometry) -> str:
    return f"{geom.kind}[{geom.n_sites}]"


def _resolve_phases(params: dict, seed: int) -> tuple[DiagonalUnitary, dict]:
    """Phase list from inline values, a file, or a seeded RNG."""
    meta: dict = {}
    if "phases" in params:
        d = DiagonalUnitary.from_phases(params["phases"])
        meta["phases"] = _join(params["phases"])
    elif "phases_file" in params:
        path = params["phases_file"]
        with open(path, encoding="utf-8") as f:
            text = f.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError:
            raw = [float(line) for line in text.split()]
        d = DiagonalUnitary.from_phases(raw)
        meta["phases_file"] = path
    else:
        n = params.get("random_qubits", 3)
        rng = np.random.default_rng(seed)
        d = DiagonalUnitary(
            n=n, phases=rng.uniform(-math.pi, math.pi, size=1 << n)
        )
        meta["random_qubits"] = n
        meta["seed"] = seed
    return d, meta


class TaskPlan:
    """Metadata, CSV header, and one deterministic job per output row."""

    def __init__(self, metadata: dict, header: list[str], jobs: list):
        self.metadata = metadata
        self.header = header
        self.jobs = jobs


def _plan_p_vs_omega(cfg) -> TaskPlan:
    """fig3a: excitation probability vs coupling for several (n, x) curves."""
    params = cfg.get("parameters", {})
    sweep = cfg.get("sweep") or {
        "parameter": "omega",
        "from": 1e-5,
        "to": 1e-3,
        "points": 9,
        "scale": "log",
    }
    omegas = _axis_values(sweep)
    n_values = params.get("n_values", [2, 4, 6, 8])
    x_values = params.get("x_values", [2.0, 3.0, 4.9])
    for x in x_values:
        _qp(float(x))
    header = ["omega"] + [
        f"p_n{n}_x{_cell(float(x))}" for x in x_values for n in n_values
    ]
    meta = {
        "geometry": "linear",
        "n_values": _join(n_values),
        "x_values": _join(x_values),
        "sweep": f"omega {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }

    def job(omega: float):
        row = [omega]
        for x in x_values:
            for n in n_values:
                spec = _ground_vector(float(x), linear_array(n), omega, False)
                row.append(p_not_all_zero(spec.eigenvectors[:, 0]))
        return row

    return TaskPlan(meta, header, [functools.partial(job, w) for w in omegas])


def _plan_p_vs_n(cfg) -> TaskPlan:
    """fig3b: excitation probability vs molecule count at fixed coupling."""
    params = cfg.get("parameters", {})
    omega = params.get("omega", 1e-5)
    n_values = params.get("n_values", list(range(2, 10)))
    x_values = params.get("x_values", [2.0, 3.0, 4.9, 8.0])
    for x in x_values:
        _qp(float(x))
    header = ["n"] + [f"p_x{_cell(float(x))}" for x in x_values]
    meta = {
        "geometry": "linear",
        "omega": omega,
        "n_values": _join(n_values),
        "x_values": _join(x_values),
    }

    def job(n: int):
        row = [n]
        for x in x_values:
            spec = _ground_vector(float(x), linear_array(n), omega, False)
            row.append(p_not_all_zero(spec.eigenvectors[:, 0]))
        return row

    return TaskPlan(meta, header, [functools.partial(job, n) for n in n_values])


def _plan_gap_vs_omega(cfg) -> TaskPlan:
    """fig4a: ground-state energy gap vs coupling for several sizes."""
    params = cfg.get("parameters", {})
    sweep = cfg.get("sweep") or {
        "parameter": "omega",
        "from": 0.0,
        "to": 0.04,
        "points": 9,
        "scale": "linear",
    }
    omegas = _axis_values(sweep)
    x = params.get("x", 2.0)
    n_values = params.get("n_values", list(range(2, 10)))
    _qp(float(x))
    header = ["omega"] + [f"gap_n{n}" for n in n_values]
    meta = {
        "geometry": "linear",
        "x": x,
        "n_values": _join(n_values),
        "sweep": f"omega {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }

    def job(omega: float):
        row = [omega]
        for n in n_values:
            spec = _ground_vector(float(x), linear_array(n), omega, False)
            row.append(energy_gap(spec))
        return row

    return TaskPlan(meta, header, [functools.partial(job, w) for w in omegas])


def _plan_thermal_vs_kt(cfg) -> TaskPlan:
    """fig4b: thermal excitation probability vs temperature."""
    params = cfg.get("parameters", {})
    sweep = cfg.get("sweep") or {
        "parameter": "kt",
        "from": 2e-3,
        "to": 5e-2,
        "points": 9,
        "scale": "log",
    }
    kts = _axis_values(sweep)
    x = params.get("x", 2.0)
    n = params.get("n", 8)
    omega = params.get("omega", 1e-4)
    _qp(float(x))
    header = ["kt", "p_thermal"]
    meta = {
        "geometry": "linear",
        "x": x,
        "n": n,
        "omega": omega,
        "sweep": f"kt {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }
    spec = _ground_vector(float(x), linear_array(n), omega, False)

    def job(kt: float):
        return [kt, thermal_excitation(spec, kt)]

    return TaskPlan(meta, header, [functools.partial(job, kt) for kt in kts])


def _concurrence_columns(n_sites: int, pairs) -> tuple[list, list[str]]:
    if pairs is None:
        pairs = [(0, k) for k in range(1, n_sites)]
    pairs = [tuple(p) for p in pairs]
    return pairs, [f"c_{i}{j}" for i, j in pairs]


def _plan_conc_vs_omega(cfg, default_geom) -> TaskPlan:
    """fig5a / fig6a: pairwise concurrences vs coupling at fixed field."""
    params = cfg.get("parameters", {})
    sweep = cfg.get("sweep") or {
        "parameter": "omega",
        "from": 1e-5,
        "to": 1e-3,
        "points": 9,
        "scale": "log",
    }
    omegas = _axis_values(sweep)
    x = params.get("x", 2.0)
    geom = _resolve_geometry(cfg, *default_geom)
    pairs, cols = _concurrence_columns(geom.n_sites, params.get("pairs"))
    _qp(float(x))
    header = ["omega"] + cols
    meta = {
        "geometry": _geom_label(geom),
        "x": x,
        "pairs": _join(f"{i}-{j}" for i, j in pairs),
        "sweep": f"omega {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }

    def job(omega: float):
        spec = _ground_vector(float(x), geom, omega, False)
        ground = spec.eigenvectors[:, 0]
        return [omega] + [concurrence(reduce(ground, i, j)) for i, j in pairs]

    return TaskPlan(meta, header, [functools.partial(job, w) for w in omegas])


def _plan_conc_vs_x(cfg, default_geom) -> TaskPlan:
    """fig5b / fig6b: pairwise concurrences vs reduced field at fixed coupling."""
    params = cfg.get("parameters", {})
    sweep = cfg.get("sweep") or {
        "parameter": "x",
        "from": 0.5,
        "to": 8.0,
        "points": 16,
        "scale": "linear",
    }
    xs = _axis_values(sweep)
    omega = params.get("omega", 1e-3)
    geom = _resolve_geometry(cfg, *default_geom)
    pairs, cols = _concurrence_columns(geom.n_sites, params.get("pairs"))
    for x in xs:
        _qp(float(x))
    header = ["x"] + cols
    meta = {
        "geometry": _geom_label(geom),
        "omega": omega,
        "pairs": _join(f"{i}-{j}" for i, j in pairs),
        "sweep": f"x {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }

    def job(x: float):
        spec = _ground_vector(float(x), geom, omega, False)
        ground = spec.eigenvectors[:, 0]
        return [x] + [concurrence(reduce(ground, i, j)) for i, j in pairs]

    return TaskPlan(meta, header, [functools.partial(job, float(x)) for x in xs])


def _plan_sweep(cfg) -> TaskPlan:
    """Generic one-axis sweep reporting excitation, gap, and thermal columns."""
    params = cfg.get("parameters", {})
    sweep = cfg["sweep"]
    values = _axis_values(sweep)
    axis = sweep["parameter"]
    fixed = {
        "x": params.get("x", 2.0),
        "omega": params.get("omega", 1e-3),
        "kt": params.get("kt", 0.0),
    }
    geom = _resolve_geometry(cfg, "linear", params.get("n", 2))
    nn_only = cfg.get("geometry", {}).get("nearest_neighbors_only", False)
    for v in values if axis == "x" else [fixed["x"]]:
        _qp(float(v))
    header = [axis, "p_not", "gap", "p_thermal"]
    meta = {
        "geometry": _geom_label(geom),
        "nearest_neighbors_only": nn_only,
        **{k: v for k, v in fixed.items() if k != axis},
        "sweep": f"{axis} {sweep['from']}..{sweep['to']} points={sweep['points']} "
        f"scale={sweep.get('scale', 'linear')}",
    }

    def job(value: float):
        point = dict(fixed)
        point[axis] = value
        spec = _ground_vector(float(point["x"]), geom, point["omega"], nn_only)
        return [
            value,
            p_not_all_zero(spec.eigenvectors[:, 0]),
            energy_gap(spec),
            thermal_excitation(spec, point["kt"]),
        ]

    return TaskPlan(meta, header, [functools.partial(job, float(v)) for v in values])


def _plan_concurrence(cfg) -> TaskPlan:
    """Single-shot pairwise concurrence map of the ground state."""
    params = cfg.get("parameters", {})
    x = params.get("x", 2.0)
    omega = params.get("omega", 1e-3)
    geom = _resolve_geometry(cfg, "linear", params.get("n", 2))
    nn_only = cfg.get("geometry", {}).get("nearest_neighbors_only", False)
    coups = pair_couplings(geom, omega, nn_only)
    spec = _ground_vector(float(x), geom, omega, nn_only)
    ground = spec.eigenvectors[:, 0]
    by_pair = {(c.i, c.j): c for c in coups}
    header = ["i", "j", "omega_ij", "alpha_ij", "concurrence", "eof"]
    meta = {
        "geometry": _geom_label(geom),
        "x": x,
        "omega": omega,
        "nearest_neighbors_only": nn_only,
    }

    def job(i: int, j: int):
        c = concurrence(reduce(ground, i, j))
        pc = by_pair.get((i, j))
        return [
            i,
            j,
            pc.omega if pc else 0.0,
            pc.alpha if pc else math.pi / 2,
            c,
            entanglement_of_formation(c),
        ]

    jobs = [
        functools.partial(job, i, j)
        for i in range(geom.n_sites)
        for j in range(i + 1, geom.n_sites)
    ]
    return TaskPlan(meta, header, jobs)


def _plan_thermal(cfg) -> TaskPlan:
    """Single-shot thermal excitation probability."""
    params = cfg.get("parameters", {})
    x = params.get("x", 2.0)
    n = params.get("n", 8)
    omega = params.get("omega", 1e-4)
    kt = params.get("kt", 2e-3)
    header = ["n", "x", "omega", "kt", "p_thermal"]
    meta = {"geometry": "linear"}

    def job():
        spec = _ground_vector(float(x), linear_array(n), omega, False)
        return [n, x, omega, kt, thermal_excitation(spec, kt)]

    return TaskPlan(meta, header, [job])


def _plan_gap(cfg) -> TaskPlan:
    """Single-shot energy gap against the single-molecule splitting."""
    params = cfg.get("parameters", {})
    x = params.get("x", 2.0)
    n = params.get("n", 2)
    omega = params.get("omega", 1e-4)
    header = ["n", "x", "omega", "gap", "dw", "rel_dev"]
    meta = {"geometry": "linear"}

    def job():
        qp = _qp(float(x))
        spec = _ground_vector(float(x), linear_array(n), omega, False)
        gap = energy_gap(spec)
        return [n, x, omega, gap, qp.dw, abs(gap - qp.dw) / qp.dw]

    return TaskPlan(meta, header, [job])


def _plan_compile_diagonal(cfg, seed: int, out_path: str) -> TaskPlan:
    """Compile a diagonal unitary and report gate counts and exact error."""
    params = cfg.get("parameters", {})
    eps = params.get("eps", 1e-3)
    d, meta = _resolve_phases(params, seed)
    circuit_out = params.get(
        "circuit_output", os.path.splitext(out_path)[0] + ".circuit"
    )
    meta.update({"eps": eps, "n": d.n, "circuit_output": circuit_out})
    header = [
        "n",
        "eps",
        "gates",
        "cnots",
        "rz_count",
        "max_error",
        "nearest_neighbor",
    ]

    def job():
        circ = compile_diagonal(d, eps)
        with open(circuit_out, "w", encoding="utf-8") as f:
            f.write(circuit_to_text(circ))
        errs = []
        for b in range(1 << d.n):
            out = simulate(circ, StateVector.basis(d.n, b))
            errs.append(abs(out.amplitudes[b] - np.exp(1j * d.phases[b])))
        return [
            d.n,
            eps,
            circ.gate_count(),
            circ.gate_count("CNOT"),
            circ.gate_count("RZ"),
            max(errs),
            circ.nearest_neighbor,
        ]

    return TaskPlan(meta, header, [job])


def _plan_iqp(cfg, seed: int) -> TaskPlan:
    """IQP |00...0> probability, analytically and through a compiled circuit."""
    params = cfg.get("parameters", {})
    eps = params.get("eps", 1e-10)
    d, meta = _resolve_phases(params, seed)
    meta.update({"eps": eps, "n": d.n})
    header = ["n", "p_analytic", "p_circuit", "abs_diff"]

    def job():
        p_exact = iqp_probability(d)
        h_layer = Circuit(n=d.n, gates=tuple(Gate("H", (q,)) for q in range(d.n)))
        circ = h_layer.then(compile_diagonal(d, eps)).then(h_layer)
        amp = simulate(circ).amplitudes[0]
        p_sim = float(abs(amp) ** 2)
        return [d.n, p_exact, p_sim, abs(p_exact - p_sim)]

    return TaskPlan(meta, header, [job])


def _cluster_edges(params: dict) -> tuple[list[tuple[int, int]], int, str]:
    if "edges" in params:
        n = params.get("n", 1 + max(max(e) for e in params["edges"]))
        return [tuple(e) for e in params["edges"]], n, "custom"
    kind = params.get("graph", "chain")
    if kind == "chain":
        n = params.get("n", 3)
        return [(i, i + 1) for i in range(n - 1)], n, f"chain[{n}]"
    rows, cols = params.get("rows", 3), params.get("cols", 3)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return edges, rows * cols, f"grid[{rows}x{cols}]"


def _plan_cluster_check(cfg) -> TaskPlan:
    """Prepare a cluster state and report every stabilizer expectation."""
    edges, n, label = _cluster_edges(cfg.get("parameters", {}))
    state = prepare_cluster_state(edges, n)
    checks = cluster_stabilizer_check(state, edges)
    header = ["vertex", "stabilizer_expectation"]
    meta = {"graph": label, "n": n, "edges": _join(f"{a}-{b}" for a, b in edges)}
    jobs = [functools.partial(lambda a: [a, checks[a]], a) for a in range(n)]
    return TaskPlan(meta, header, jobs)


def _plan_fit_residuals(cfg) -> TaskPlan:
    """Exact-vs-fit relative errors over a parameter grid."""
    params = cfg.get("parameters", {})
    which = params.get("which", "p")
    if which == "p":
        n_values = params.get("n_values", [4, 5, 6, 7, 8])
        x_values = params.get("x_values", [2.0, 3.0, 4.9])
        omega_values = params.get("omega_values", [1e-4, 1e-3])
        for x in x_values:
            _qp(float(x))
        header = ["n", "x", "omega", "p_exact", "p_fit", "rel_error"]
        meta = {
            "which": which,
            "geometry": "linear",
            "n_values": _join(n_values),
            "x_values": _join(x_values),
            "omega_values": _join(omega_values),
        }

        def job(n: int, x: float, omega: float):
            spec = _ground_vector(x, linear_array(n), omega, False)
            exact = p_not_all_zero(spec.eigenvectors[:, 0])
            fit = p_fit(n, x, omega)
            return [n, x, omega, exact, fit, abs(fit - exact) / abs(exact)]

        jobs = [
            functools.partial(job, n, float(x), float(w))
            for n in n_values
            for x in x_values
            for w in omega_values
        ]
        return TaskPlan(meta, header, jobs)
    x_values = params.get("x_values", [1.0, 2.0, 4.0])
    omega = params.get("omega", 1e-3)
    for x in x_values:
        _qp(float(x))
    header = ["x", "omega", "c_exact", "c_fit", "rel_error"]
    meta = {"which": which, "geometry": "linear", "omega": omega, "n": 2}

    def cjob(x: float):
        spec = _ground_vector(x, linear_array(2), omega, False)
        exact = concurrence(reduce(spec.eigenvectors[:, 0], 0, 1))
        fit = c_fit(x, omega)
        return [x, omega, exact, fit, abs(fit - exact) / abs(exact)]

    return TaskPlan(
        meta, header, [functools.partial(cjob, float(x)) for x in x_values]
    )


def _plan_nmr_cnot(cfg) -> TaskPlan:
    """Pulse-sequence CNOT deviation report."""
    params = cfg.get("parameters", {})
    dw_shift = params.get("dw_shift", 1.0)
    angular = params.get("angular_frequency", True)
    wait_scale = params.get("wait_scale", 1.0)
    header = [
        "dw_shift",
        "angular_frequency",
        "wait_scale",
        "wait_time",
        "deviation",
        "phase_global",
        "phase_control_z",
        "phase_target_z",
    ]
    meta: dict = {}

    def job():
        rep = nmr_cnot_sequence(
            dw_shift, angular_frequency=angular, wait_scale=wait_scale
        )
        return [
            rep.dw_shift,
            rep.angular_frequency,
            rep.wait_scale,
            rep.wait_time,
            rep.deviation,
            rep.phases[0],
            rep.phases[1],
            rep.phases[2],
        ]

    return TaskPlan(meta, header, [job])


def plan_task(cfg: dict, seed: int, out_path: str) -> TaskPlan:
    task = cfg["task"]
    if task == "fig3a":
        return _plan_p_vs_omega(cfg)
    if task == "fig3b":
        return _plan_p_vs_n(cfg)
    if task == "fig4a":
        return _plan_gap_vs_omega(cfg)
    if task == "fig4b":
        return _plan_thermal_vs_kt(cfg)
    if task == "fig5a":
        return _plan_conc_vs_omega(cfg, ("linear", 9))
    if task == "fig5b":
        return _plan_conc_vs_x(cfg, ("linear", 9))
    if task == "fig6a":
        return _plan_conc_vs_omega(cfg, ("square", 9))
    if task == "fig6b":
        return _plan_conc_vs_x(cfg, ("square", 9))
    if task == "sweep":
        return _plan_sweep(cfg)
    if task == "concurrence":
        return _plan_concurrence(cfg)
    if task == "thermal":
        return _plan_thermal(cfg)
    if task == "gap":
        return _plan_gap(cfg)
    if task == "compile-diagonal":
        return _plan_compile_diagonal(cfg, seed, out_path)
    if task == "iqp":
        return _plan_iqp(cfg, seed)
    if task == "cluster-check":
        return _plan_cluster_check(cfg)
    if task == "fit-residuals":
        return _plan_fit_residuals(cfg)
    if task == "nmr-cnot":
        return _plan_nmr_cnot(cfg)
    raise ConfigError(f"unknown task {task!r}")


def _write_csv(path, task, metadata, header, rows, failure=None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# task={task}\n")
        f.write(f"# tool=polarq {__version__}\n")
        for key in sorted(metadata):
            f.write(f"# {key}={_cell(metadata[key])}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        if failure is not None:
            writer.writerow(["FAILED", failure])


def run(cfg: dict, out_path: str, workers: int, seed: int) -> int:
    """Execute a validated config; returns the process exit code."""
    task = cfg["task"]
    try:
        plan = plan_task(cfg, seed, out_path)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - solver failure while planning
        failure = f"{type(exc).__name__}: {exc}"
        _write_csv(out_path, task, {}, [], [], failure)
        print(f"error: {failure}", file=sys.stderr)
        return EXIT_SOLVER
    rows = []
    failure = None
    try:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for row in pool.map(lambda jb: jb(), plan.jobs):
                rows.append(row)
    except Exception as exc:  # noqa: BLE001 - every solver failure maps to exit 3
        failure = f"{type(exc).__name__}: {exc}"
    _write_csv(out_path, task, plan.metadata, plan.header, rows, failure)
    if failure is not None:
        print(f"error: {failure}", file=sys.stderr)
        print(f"partial results in {out_path}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="polarq",
        description="Pendular-qubit array computations driven by JSON configs.",
    )
    parser.add_argument("--version", action="version", version=f"polarq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="execute a task config and write CSV")
    p_run.add_argument("config", help="path to JSON config")
    p_run.add_argument("--out", help="output CSV path (default: <task>.csv)")
    p_run.add_argument(
        "--workers",
        type=int,
        default=None,
        help="parallel sweep workers (default: CPU count)",
    )
    p_run.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for randomized utilities; physics results never use it",
    )
    p_val = sub.add_parser("validate", help="schema-check a config")
    p_val.add_argument("config", help="path to JSON config")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    violations = validate_config(cfg)
    if args.command == "validate":
        if violations:
            for v in violations:
                print(v)
            return EXIT_CONFIG
        print("ok")
        return EXIT_OK
    if violations:
        for v in violations:
            print(f"error: {v}", file=sys.stderr)
        return EXIT_CONFIG
    out_path = args.out or cfg.get("output") or f"{cfg['task']}.csv"
    workers = args.workers or cfg.get("workers") or min(32, os.cpu_count() or 1)
    return run(cfg, out_path, workers, args.seed)


if __name__ == "__main__":
    sys.exit(main())
