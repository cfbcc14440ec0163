"""Scenario builders and the config-driven runner.

Three built-in scenario kinds plus fully explicit families:

``paper_example``
    The paired-basis K-frame on a partitioned measure space: on a space of
    dimension 2m, K sends each odd basis vector to the sum of its pair and
    kills the even ones; every cell of the partition carries the rank-one
    analysis functional of that pair, normalized by the square root of the
    cell measure so the total analysis energy is the plain sum of squared
    pair coefficients.  Its frame operator equals K K* exactly.

``continuous_fourier``
    A genuinely continuous tight frame over the circle, discretized by a
    midpoint rule.  The discretized frame operator equals the identity
    exactly once the atom count reaches the ambient dimension (aliasing).

``random``
    Seeded complex-Gaussian operator blocks, deterministic given the seed.

A config file is a single JSON object; see the README for the schema.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._version import __version__
from .duality import bessel_constant, douglas_gamma, lower_bound_from_dual, theta_dual
from .errors import InvalidConfig, ParseError, ToolkitError
from .frames import (
    FrameBounds,
    OperatorFamily,
    frame_operator,
    optimal_bounds,
    refine_family,
    scale_family,
    verify_frame,
)
from .linalg import DEFAULT_TOL, TolerancePolicy, operator_norm, pseudo_inverse
from .literals import (
    bound_to_literal,
    bounds_to_literal,
    family_from_literal,
    family_to_literal,
    matrix_from_literal,
    matrix_to_literal,
    report_to_literal,
)
from .measure import Atom, DiscreteMeasureSpace
from .perturbation import (
    PerturbationParams,
    project_out_range,
    scalar_perturbation_params,
    verify_perturbation,
)

__all__ = [
    "build_paper_example",
    "build_continuous_fourier",
    "build_random_frame",
    "ScenarioConfig",
    "parse_config",
    "load_config",
    "run_config",
]

REQUEST_KINDS = ("bounds", "verify", "dual", "theta", "perturb", "refine")
SCENARIO_KINDS = ("paper_example", "continuous_fourier", "random", "explicit")


def build_paper_example(
    m: int,
    partition_measures=None,
    atoms_per_cell: int = 1,
) -> tuple[OperatorFamily, np.ndarray]:
    """Paired-basis K-frame on a partitioned measure space of dimension 2m.

    Cell k (measure ``partition_measures[k]``, default 1) is split into
    ``atoms_per_cell`` equal-weight atoms with one-dimensional fibers; each
    carries ``f -> <f, e_{2k} + e_{2k+1}> / sqrt(measure_k)``.  Because the
    per-cell energies telescope, the frame operator is exactly ``K K*``
    regardless of the measures or the atom split, with optimal bounds (1, 2).
    """
    if m < 1:
        raise InvalidConfig(f"pair count m must be >= 1, got {m}")
    if atoms_per_cell < 1:
        raise InvalidConfig(f"atoms_per_cell must be >= 1, got {atoms_per_cell}")
    if partition_measures is None:
        partition_measures = [1.0] * m
    measures = [float(x) for x in partition_measures]
    if len(measures) != m:
        raise InvalidConfig(f"expected {m} partition measures, got {len(measures)}")
    if any(not x > 0 for x in measures):
        raise InvalidConfig("partition measures must be strictly positive")

    dim = 2 * m
    k_op = np.zeros((dim, dim), dtype=np.complex128)
    atoms: list[Atom] = []
    ops: list[np.ndarray] = []
    for cell in range(m):
        pair = np.zeros(dim, dtype=np.complex128)
        pair[2 * cell] = 1.0
        pair[2 * cell + 1] = 1.0
        k_op[:, 2 * cell + 1] = pair
        row = pair.conj()[np.newaxis, :] / math.sqrt(measures[cell])
        for j in range(atoms_per_cell):
            atoms.append(
                Atom(
                    atom_id=f"cell{cell}:{j}",
                    weight=measures[cell] / atoms_per_cell,
                    fiber_dim=1,
                    partition=f"cell{cell}",
                )
            )
            ops.append(row)
    fam = OperatorFamily(space=DiscreteMeasureSpace(atoms), ops=ops, ambient_dim=dim)
    return fam, k_op


def build_continuous_fourier(n: int, n_atoms: int) -> tuple[OperatorFamily, np.ndarray]:
    """Midpoint discretization of the tight Fourier frame over the circle.

    Atom j sits at ``theta_j = 2 pi (j + 1/2) / n_atoms`` with weight
    ``2 pi / n_atoms`` and analyzes against ``exp(i k theta) / sqrt(2 pi)``,
    k = 0..n-1.  The exact (continuum) frame operator is the identity; the
    discretization reproduces it exactly for ``n_atoms >= n``.
    """
    if n < 1:
        raise InvalidConfig(f"ambient dimension must be >= 1, got {n}")
    if n_atoms < 1:
        raise InvalidConfig(f"n_atoms must be >= 1, got {n_atoms}")
    weight = 2.0 * math.pi / n_atoms
    freqs = np.arange(n)
    atoms = []
    ops = []
    for j in range(n_atoms):
        theta = 2.0 * math.pi * (j + 0.5) / n_atoms
        wave = np.exp(1j * freqs * theta) / math.sqrt(2.0 * math.pi)
        atoms.append(Atom(atom_id=f"theta{j}", weight=weight, fiber_dim=1))
        ops.append(wave.conj()[np.newaxis, :])
    fam = OperatorFamily(space=DiscreteMeasureSpace(atoms), ops=ops, ambient_dim=n)
    return fam, np.eye(n, dtype=np.complex128)


def build_random_frame(n: int, atoms: int, fiber_dims, seed: int) -> OperatorFamily:
    """Seeded complex-Gaussian operator blocks on unit-weight atoms."""
    if n < 1:
        raise InvalidConfig(f"ambient dimension must be >= 1, got {n}")
    if atoms < 1:
        raise InvalidConfig(f"atom count must be >= 1, got {atoms}")
    if isinstance(fiber_dims, int):
        fiber_dims = [fiber_dims] * atoms
    dims = [int(d) for d in fiber_dims]
    if len(dims) != atoms:
        raise InvalidConfig(f"expected {atoms} fiber dims, got {len(dims)}")
    if any(d < 1 for d in dims):
        raise InvalidConfig("fiber dims must be >= 1")
    rng = np.random.default_rng(seed)
    space = DiscreteMeasureSpace(
        Atom(atom_id=f"atom{k}", weight=1.0, fiber_dim=d) for k, d in enumerate(dims)
    )
    ops = [
        (rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))) / math.sqrt(2.0)
        for d in dims
    ]
    return OperatorFamily(space=space, ops=ops, ambient_dim=n)


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed configuration: scenario, requested operations, and knobs."""

    raw: dict
    kind: str
    scenario: dict
    requests: tuple[str, ...]
    claimed: FrameBounds | None
    bessel_only: bool
    perturb: dict
    refine_values: tuple[int, ...]
    tol: TolerancePolicy
    seed: int
    samples: int


def parse_config(raw: dict) -> ScenarioConfig:
    """Validate a raw config dict; raises :class:`InvalidConfig` on problems."""
    if not isinstance(raw, dict):
        raise InvalidConfig("config must be a JSON object")
    scenario = raw.get("scenario")
    if not isinstance(scenario, dict) or "kind" not in scenario:
        raise InvalidConfig('config must contain a "scenario" object with a "kind"')
    kind = scenario["kind"]
    if kind not in SCENARIO_KINDS:
        raise InvalidConfig(f"unknown scenario kind {kind!r}; expected one of {SCENARIO_KINDS}")

    requests_raw = raw.get("requests", ["bounds"])
    if not isinstance(requests_raw, list) or not requests_raw:
        raise InvalidConfig('"requests" must be a non-empty list')
    requests = []
    for req in requests_raw:
        if req not in REQUEST_KINDS:
            raise InvalidConfig(f"unknown request {req!r}; expected one of {REQUEST_KINDS}")
        if req not in requests:
            requests.append(req)

    claimed = None
    if "claimed" in raw:
        pair = raw["claimed"]
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InvalidConfig('"claimed" must be a [lower, upper] pair')
        claimed = FrameBounds(lower=float(pair[0]), upper=float(pair[1]))

    tol_raw = raw.get("tolerances", {})
    if not isinstance(tol_raw, dict):
        raise InvalidConfig('"tolerances" must be an object')
    try:
        tol = TolerancePolicy(
            rel_rank_cutoff=float(tol_raw.get("rel_rank_cutoff", DEFAULT_TOL.rel_rank_cutoff)),
            psd_slack=float(tol_raw.get("psd_slack", DEFAULT_TOL.psd_slack)),
            residual_tol=float(tol_raw.get("residual_tol", DEFAULT_TOL.residual_tol)),
        )
    except ValueError as bad:
        raise InvalidConfig(str(bad)) from None

    refine_raw = raw.get("refine", {})
    if not isinstance(refine_raw, dict):
        raise InvalidConfig('"refine" must be an object')
    refine_values = tuple(int(v) for v in refine_raw.get("values", (9, 18, 36, 72)))
    if any(v < 1 for v in refine_values):
        raise InvalidConfig("refine values must be >= 1")

    perturb = raw.get("perturb", {"delta": 0.1})
    if not isinstance(perturb, dict):
        raise InvalidConfig('"perturb" must be an object')

    return ScenarioConfig(
        raw=raw,
        kind=kind,
        scenario=scenario,
        requests=tuple(requests),
        claimed=claimed,
        bessel_only=bool(raw.get("bessel_only", False)),
        perturb=perturb,
        refine_values=refine_values,
        tol=tol,
        seed=int(raw.get("seed", 0)),
        samples=int(raw.get("samples", 64)),
    )


def load_config(path) -> ScenarioConfig:
    """Read and parse a JSON config file; IO/JSON failures raise ParseError."""
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read config file {path}: {err}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"config file {path} is not valid JSON: {err}") from None
    return parse_config(raw)


def build_scenario(cfg: ScenarioConfig) -> tuple[OperatorFamily, np.ndarray]:
    """Instantiate the configured scenario as (family, reference operator)."""
    sc = cfg.scenario
    try:
        if cfg.kind == "paper_example":
            return build_paper_example(
                m=int(sc.get("m", 8)),
                partition_measures=sc.get("partition_measures"),
                atoms_per_cell=int(sc.get("atoms_per_cell", 1)),
            )
        if cfg.kind == "continuous_fourier":
            return build_continuous_fourier(
                n=int(sc.get("dim", 4)), n_atoms=int(sc.get("n_atoms", 64))
            )
        if cfg.kind == "random":
            fam = build_random_frame(
                n=int(sc.get("dim", 4)),
                atoms=int(sc.get("n_atoms", 8)),
                fiber_dims=sc.get("fiber_dims", 1),
                seed=int(sc.get("seed", cfg.seed)),
            )
        else:  # explicit
            if "family" not in sc:
                raise InvalidConfig('explicit scenario requires a "family" literal')
            fam = family_from_literal(sc["family"])
        if "K" in sc:
            k_op = matrix_from_literal(sc["K"])
        else:
            k_op = np.eye(fam.ambient_dim, dtype=np.complex128)
        return fam, k_op
    except (TypeError, ValueError) as bad:
        raise InvalidConfig(f"malformed scenario parameters: {bad}") from None


def _mixed_gram(left: OperatorFamily, right: OperatorFamily) -> np.ndarray:
    """``sum_k weight_k * left_k* right_k`` (reconstruction operator)."""
    n = left.ambient_dim
    out = np.zeros((n, n), dtype=np.complex128)
    for atom, lop, rop in zip(left.space.atoms, left.ops, right.ops):
        out += atom.weight * (lop.conj().T @ rop)
    return out


def _run_theta(cfg: ScenarioConfig, fam: OperatorFamily, k_op: np.ndarray) -> dict:
    pair = douglas_gamma(fam, k_op, cfg.tol)
    theta = theta_dual(pair, cfg.tol)
    forward = _mixed_gram(fam, theta)   # synthesis(fam, analysis(theta, .))
    backward = _mixed_gram(theta, fam)
    projector = k_op @ pseudo_inverse(k_op, cfg.tol)
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    tested = 0
    for _ in range(cfg.samples):
        z = rng.standard_normal(fam.ambient_dim) + 1j * rng.standard_normal(fam.ambient_dim)
        f = projector @ z
        norm = np.linalg.norm(f)
        if norm < 1e-12:
            continue
        tested += 1
        worst = max(
            worst,
            float(np.linalg.norm(forward @ f - f) / norm),
            float(np.linalg.norm(backward @ f - f) / norm),
        )
    return {
        "theta_family": family_to_literal(theta),
        "max_relative_residual": worst,
        "samples": tested,
        "passed": bool(worst <= 1e-9),
    }


def _run_perturb(cfg: ScenarioConfig, fam: OperatorFamily, k_op: np.ndarray) -> dict:
    spec = cfg.perturb
    if "delta" in spec:
        delta = float(spec["delta"])
        params = scalar_perturbation_params(delta)
        gam = scale_family(fam, 1.0 - delta)
    else:
        params = PerturbationParams(
            lambda1=float(spec.get("lambda1", 0.0)),
            lambda2=float(spec.get("lambda2", 0.0)),
            gamma=float(spec.get("gamma", 0.0)),
        )
        if spec.get("kill_range"):
            gam = project_out_range(fam, k_op, cfg.tol)
        elif "scale" in spec:
            gam = scale_family(fam, float(spec["scale"]))
        elif "family" in spec:
            gam = family_from_literal(spec["family"])
        else:
            gam = fam
    report = verify_perturbation(
        fam, gam, k_op, params, n_samples=cfg.samples, seed=cfg.seed, tol=cfg.tol
    )
    return {
        "predicted": [bound_to_literal(report.predicted.lower), bound_to_literal(report.predicted.upper)],
        "empirical": [bound_to_literal(report.empirical.lower), bound_to_literal(report.empirical.upper)],
        "slack": report.max_condition_slack,
        "samples": report.samples,
        "seed": report.seed,
        "success": report.success,
    }


def _run_refine(cfg: ScenarioConfig, fam: OperatorFamily, k_op: np.ndarray) -> list[dict]:
    rows = []
    if cfg.kind == "continuous_fourier":
        n = int(cfg.scenario.get("dim", 4))
        for value in cfg.refine_values:
            refined, _ = build_continuous_fourier(n, value)
            s = frame_operator(refined)
            bounds = optimal_bounds(refined, np.eye(n), cfg.tol)
            rows.append(
                {
                    "param": "n_atoms",
                    "value": value,
                    "frame_operator_error": operator_norm(s - np.eye(n)),
                    "lower": bound_to_literal(bounds.lower),
                    "upper": bound_to_literal(bounds.upper),
                }
            )
    elif cfg.kind == "paper_example":
        m = int(cfg.scenario.get("m", 8))
        measures = cfg.scenario.get("partition_measures")
        target = k_op @ k_op.conj().T
        for value in cfg.refine_values:
            refined, _ = build_paper_example(m, measures, atoms_per_cell=value)
            s = frame_operator(refined)
            bounds = optimal_bounds(refined, k_op, cfg.tol)
            rows.append(
                {
                    "param": "atoms_per_cell",
                    "value": value,
                    "frame_operator_error": operator_norm(s - target),
                    "lower": bound_to_literal(bounds.lower),
                    "upper": bound_to_literal(bounds.upper),
                }
            )
    else:
        # Atom-splitting refinement: the frame operator must not move at all.
        reference = frame_operator(fam)
        for value in cfg.refine_values:
            refined = refine_family(fam, value)
            s = frame_operator(refined)
            bounds = optimal_bounds(refined, k_op, cfg.tol)
            rows.append(
                {
                    "param": "parts",
                    "value": value,
                    "frame_operator_error": operator_norm(s - reference),
                    "lower": bound_to_literal(bounds.lower),
                    "upper": bound_to_literal(bounds.upper),
                }
            )
    return rows


def write_refine_csv(rows: list[dict], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([rows[0]["param"] if rows else "value", "frame_operator_error", "lower", "upper"])
        for row in rows:
            writer.writerow([row["value"], repr(row["frame_operator_error"]), row["lower"], row["upper"]])


def run_config(source, requests=None, csv_path=None) -> dict:
    """Execute every requested operation of a config; never raises per-request.

    ``source`` may be a path to a JSON file, a raw dict, or a parsed
    :class:`ScenarioConfig`.  Each requested operation contributes exactly
    one entry to ``results`` or ``errors``.  The report's ``success`` flag is
    true iff nothing errored and every verifying request passed.
    """
    started = time.perf_counter()
    if isinstance(source, ScenarioConfig):
        cfg = source
    elif isinstance(source, dict):
        cfg = parse_config(source)
    else:
        cfg = load_config(source)

    fam, k_op = build_scenario(cfg)
    results: dict = {}
    errors: dict = {}
    passed = True
    todo = tuple(requests) if requests else cfg.requests

    for request in todo:
        try:
            if request == "bounds":
                results["bounds"] = bounds_to_literal(optimal_bounds(fam, k_op, cfg.tol))
            elif request == "verify":
                if cfg.claimed is None:
                    raise InvalidConfig('verify request needs a "claimed" [lower, upper] pair')
                report = verify_frame(
                    fam, None if cfg.bessel_only else k_op, cfg.claimed, cfg.tol
                )
                results["verify"] = report_to_literal(report)
                passed = passed and (
                    report.is_bessel if cfg.bessel_only else report.is_ckg_frame
                )
            elif request == "dual":
                pair = douglas_gamma(fam, k_op, cfg.tol)
                results["dual"] = {
                    "primary_family": family_to_literal(pair.primary_family),
                    "dual_family": family_to_literal(pair.dual_family),
                    "reproduced_operator": matrix_to_literal(pair.reproduced_operator),
                    "residual": pair.residual,
                    "dual_bessel_constant": bessel_constant(pair.dual_family),
                    "lower_bound_from_dual": lower_bound_from_dual(pair),
                }
            elif request == "theta":
                results["theta"] = _run_theta(cfg, fam, k_op)
                passed = passed and results["theta"]["passed"]
            elif request == "perturb":
                results["perturb"] = _run_perturb(cfg, fam, k_op)
                passed = passed and results["perturb"]["success"]
            elif request == "refine":
                rows = _run_refine(cfg, fam, k_op)
                results["refine"] = rows
                if csv_path is not None:
                    write_refine_csv(rows, csv_path)
        except ToolkitError as err:
            errors[request] = f"{type(err).__name__}: {err}"
        except ValueError as err:
            errors[request] = f"ValueError: {err}"

    return {
        "config": cfg.raw,
        "version": __version__,
        "results": results,
        "errors": errors,
        "success": bool(passed and not errors),
        "wall_clock_seconds": time.perf_counter() - started,
    }
