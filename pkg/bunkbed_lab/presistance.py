"""
p-resistance between two vertices and its dual capacity.

For `p > 1` and `q = p / (p - 1)`:

* `R_p(x, y) = inf sum_e r_e |theta_e|^p` over unit flows `theta` from x to y,
* `C_p(x, y) = min sum_e |f(u) - f(v)|^q / r_e^(1/(p-1))` over potentials with `f(x) = 1` and `f(y) = 0`,

and `R_p = C_p^(-(p-1))`. The dual is solved numerically in binary64; everything here carries explicit tolerances.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import scipy.optimize

from bunkbed_lab.exceptions import AsymmetricResistances, DisconnectedPair, NotConverged, OutOfRange, SameSourceSink
from bunkbed_lab.graphcore import BaseGraph, BunkbedGraph, CapacitatedNetwork, Vertex, WeightRole, build_bunkbed
from bunkbed_lab.maxflow import FlowAssignment

log = logging.getLogger(__name__)

INEQUALITY_SLACK = 1e-8
QUADRUPLE_SLACK = 1e-12
_MIN_STEP = 1e-12

########################################################################################################################
# Types
########################################################################################################################


@dataclass(frozen=True)
class PParameter:
    """The exponent `p > 1` and its conjugate `q = p / (p - 1) = 1 + 1 / (p - 1)`."""

    p: float

    def __post_init__(self):
        if not float(self.p) > 1:
            raise ValueError("p must be > 1, got {}".format(self.p))
        object.__setattr__(self, "p", float(self.p))

    @property
    def q(self) -> float:
        return 1.0 + 1.0 / (self.p - 1.0)

    @property
    def weight_exponent(self) -> float:
        """`1 / (p - 1)`, the power of the resistance dividing each dual term."""
        return 1.0 / (self.p - 1.0)


@dataclass(frozen=True)
class PotentialVector:
    """
    A vertex function with values in [0, 1], pinned to 1 at `x` and to 0 at `y`.
    """

    values: Tuple[float, ...]
    x: Vertex
    y: Vertex

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if self.x == self.y:
            raise SameSourceSink("Pins coincide at {}".format(self.x))
        if values[self.x] != 1.0 or values[self.y] != 0.0:
            raise ValueError("A potential must equal 1 at x and 0 at y")
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise ValueError("Potential values must lie in [0, 1]")
        object.__setattr__(self, "values", values)

    def __getitem__(self, u: Vertex) -> float:
        return self.values[u]

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


@dataclass(frozen=True)
class SolverConfig:
    """
    Convergence is judged by the scaled projected gradient: the largest interior imbalance of the flux
    `w_e sign(delta_e) |delta_e|^(q-1)`, over the total absolute flux. Objective values only drive the line search.

    Args:
        tol: relative objective change treated as roundoff; a step that changes the objective by less is accepted
            when it lowers the scaled gradient.
        window: iterations within which the scaled gradient must halve before the run counts as stagnated.
        grad_tol: scaled projected gradient at which the solver stops.
        floor_tol: scaled projected gradient accepted once the iterates stagnate at the roundoff floor.
        max_iter: iteration cap.
        epsilon: regularization of the Newton weights, `(delta^2 + epsilon)^((q-2)/2)`.
        conservation_tol: largest accepted `|d* theta|` at interior vertices, relative to the strength.
        imbalance_tol: largest accepted interior imbalance of the flow read off the potential, before it is repaired.
        armijo: sufficient-decrease constant of the line search.
    """

    tol: float = 1e-12
    window: int = 5
    grad_tol: float = 1e-10
    floor_tol: float = 1e-8
    max_iter: int = 10_000
    epsilon: float = 1e-12
    conservation_tol: float = 1e-8
    imbalance_tol: float = 1e-4
    armijo: float = 1e-4


@dataclass(frozen=True)
class DualSolution:
    """
    Attributes:
        capacity: dual optimum `C_p`.
        potential: the minimizing potential.
        iterations: solver iterations, fallback included.
        converged: whether the scaled projected gradient met `grad_tol`, or `floor_tol` after stagnation.
        method: "direct", "irls" or "lbfgsb".
        gradient_norm: scaled projected gradient at the returned potential.
        diagnostics: solver specific details.
    """

    capacity: float
    potential: PotentialVector
    iterations: int
    converged: bool
    method: str
    gradient_norm: float
    diagnostics: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class PResistanceResult:
    """
    Attributes:
        p: the exponent.
        resistance: `R_p`, evaluated on the extracted unit flow.
        capacity: `C_p`, the dual optimum.
        potential: optimal potential.
        flow: unit flow from x to y.
        primal_value: `sum_e r_e |theta_e|^p` of `flow` (equal to `resistance`).
        dual_value: `C_p^(-(p-1))`, the resistance implied by the dual.
        gap: `|primal_value - dual_value| / primal_value`.
        iterations: solver iterations.
        converged: whether the solver met its stopping criteria.
    """

    p: float
    resistance: float
    capacity: float
    potential: PotentialVector
    flow: FlowAssignment
    primal_value: float
    dual_value: float
    gap: float
    iterations: int
    converged: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "Rp": self.resistance,
            "Cp": self.capacity,
            "gap": self.gap,
            "iterations": self.iterations,
            "converged": self.converged,
        }


class PResistanceInequalityReport(NamedTuple):
    r00: float
    r01: float
    holds: bool


class QuadrupleReport(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


########################################################################################################################
# Dual solver
########################################################################################################################


class _DualProblem:
    """
    The dual objective restricted to the connected component of x, with the interior vertices as free variables.

    The weights `w_e = r_e^(-1/(p-1))` are divided by their maximum; `capacity` undoes the scaling.
    """

    def __init__(self, network: CapacitatedNetwork, x: Vertex, y: Vertex, p: PParameter):
        graph = network.graph
        component = graph.component_of(x)
        if y not in component:
            raise DisconnectedPair("{} and {} lie in different components".format(x, y))

        self.p = p
        self.q = p.q
        self.vertex_count = graph.vertex_count
        self.x, self.y = x, y
        self.interior = np.array([u for u in component if u not in (x, y)], dtype=np.int64)

        in_component = set(component)
        edges = [(idx, u, v) for idx, (u, v) in enumerate(graph.edge_list) if u in in_component]
        self.edge_ids = np.array([e[0] for e in edges], dtype=np.int64)
        self.tails = np.array([e[1] for e in edges], dtype=np.int64)
        self.heads = np.array([e[2] for e in edges], dtype=np.int64)
        self.resistances = network.as_array()[self.edge_ids]
        weights = self.resistances ** (-p.weight_exponent)
        self.scale = float(weights.max())
        self.weights = weights / self.scale

    def full(self, interior_values: np.ndarray) -> np.ndarray:
        f = np.zeros(self.vertex_count)
        f[self.x] = 1.0
        f[self.interior] = interior_values
        return f

    def differences(self, f: np.ndarray) -> np.ndarray:
        return f[self.tails] - f[self.heads]

    def objective(self, f: np.ndarray) -> float:
        return float(np.sum(self.weights * np.abs(self.differences(f)) ** self.q))

    def capacity(self, f: np.ndarray) -> float:
        return self.scale * self.objective(f)

    def flux(self, f: np.ndarray) -> np.ndarray:
        """`w_e sign(delta_e) |delta_e|^(q-1)`, a q-th of the objective's derivative along each edge."""
        delta = self.differences(f)
        return self.weights * np.sign(delta) * np.abs(delta) ** (self.q - 1.0)

    def gradient(self, f: np.ndarray) -> np.ndarray:
        """Gradient of the objective with respect to the interior values."""
        return self.q * self.divergence(self.flux(f))[self.interior]

    def scaled_gradient(self, f: np.ndarray) -> float:
        """Largest projected interior imbalance of the flux, over the total absolute flux."""
        flux = self.flux(f)
        total = float(np.sum(np.abs(flux)))
        if total == 0.0:
            return math.inf
        imbalance = self.divergence(flux)[self.interior]
        values = f[self.interior]
        imbalance = np.where((values <= 0.0) & (imbalance > 0), 0.0, imbalance)
        imbalance = np.where((values >= 1.0) & (imbalance < 0), 0.0, imbalance)
        return float(np.max(np.abs(imbalance), initial=0.0)) / total

    def laplacian(self, edge_weights: np.ndarray) -> np.ndarray:
        lap = np.zeros((self.vertex_count, self.vertex_count))
        np.add.at(lap, (self.tails, self.tails), edge_weights)
        np.add.at(lap, (self.heads, self.heads), edge_weights)
        np.add.at(lap, (self.tails, self.heads), -edge_weights)
        np.add.at(lap, (self.heads, self.tails), -edge_weights)
        return lap

    def weighted_harmonic(self, edge_weights: np.ndarray) -> np.ndarray:
        """Interior values of the harmonic extension of the pins for the given edge weights."""
        lap = self.laplacian(edge_weights)
        boundary = -lap[np.ix_(self.interior, [self.x])][:, 0]
        return scipy.linalg.solve(lap[np.ix_(self.interior, self.interior)], boundary, assume_a="pos")

    def newton_direction(self, f: np.ndarray, epsilon: float) -> np.ndarray:
        """
        Newton direction `-H^-1 g`, the Hessian taken with the regularized weights
        `(q-1) w_e (delta_e^2 + epsilon)^((q-2)/2)`. The residual is the exact gradient, so the regularization changes
        the step but not the fixed point.
        """
        delta = self.differences(f)
        hessian_weights = (self.q - 1.0) * self.weights * (delta**2 + epsilon) ** ((self.q - 2.0) / 2.0)
        lap = self.laplacian(hessian_weights)
        residual = self.divergence(self.flux(f))[self.interior]
        return -scipy.linalg.solve(lap[np.ix_(self.interior, self.interior)], residual, assume_a="pos")

    def divergence(self, theta: np.ndarray) -> np.ndarray:
        div = np.zeros(self.vertex_count)
        np.add.at(div, self.tails, theta)
        np.add.at(div, self.heads, -theta)
        return div

    def repair(self, theta: np.ndarray) -> np.ndarray:
        """
        Removes the interior divergence of an edge flow with the correction `c_e (phi(u) - phi(v))`, `c_e = 1 / r_e`,
        where `phi` vanishes at both pins.
        """
        if len(self.interior) == 0:
            return theta
        conductances = 1.0 / self.resistances
        lap = self.laplacian(conductances)
        phi = np.zeros(self.vertex_count)
        phi[self.interior] = scipy.linalg.solve(
            lap[np.ix_(self.interior, self.interior)], self.divergence(theta)[self.interior], assume_a="pos"
        )
        return theta - conductances * self.differences(phi)


def _line_search(
    problem: _DualProblem, config: SolverConfig, f: np.ndarray, value: float, scaled: float, direction, slope: float
) -> Optional[np.ndarray]:
    step = 1.0
    while step > _MIN_STEP:
        candidate = f.copy()
        candidate[problem.interior] = np.clip(f[problem.interior] + step * direction, 0.0, 1.0)
        candidate_value = problem.objective(candidate)
        if candidate_value <= value + config.armijo * step * slope:
            return candidate
        # objective flat at roundoff: judge the step by the gradient
        if abs(candidate_value - value) <= config.tol * value and problem.scaled_gradient(candidate) < scaled:
            return candidate
        step /= 2.0
    return None


def _solve_dual(problem: _DualProblem, config: SolverConfig) -> DualSolution:
    if len(problem.interior) == 0:
        f = problem.full(np.zeros(0))
        return DualSolution(problem.capacity(f), _potential(problem, f), 0, True, "direct", 0.0)

    # Harmonic (p = 2) warm start
    f = problem.full(np.clip(problem.weighted_harmonic(1.0 / problem.resistances), 0.0, 1.0))
    value = problem.objective(f)
    scaled = problem.scaled_gradient(f)
    values, scaled_history = [value], [scaled]

    outcome = "hit the iteration cap"
    iteration = 0
    while iteration < config.max_iter:
        if scaled <= config.grad_tol:
            outcome = "converged"
            break
        try:
            direction = problem.newton_direction(f, config.epsilon)
        except np.linalg.LinAlgError:
            outcome = "stalled"
            break
        slope = float(problem.gradient(f) @ direction)
        candidate = _line_search(problem, config, f, value, scaled, direction, slope) if slope < 0 else None
        if candidate is None:
            outcome = "stalled"
            break

        f = candidate
        value, scaled = problem.objective(f), problem.scaled_gradient(f)
        iteration += 1
        values.append(value)
        scaled_history.append(scaled)
        log.debug("IRLS iteration %d: objective %.17g, scaled gradient %.3g", iteration, value, scaled)

        if len(values) > config.window:
            reference = values[-1 - config.window]
            flat = reference - value <= config.tol * reference
            if flat and scaled > 0.5 * scaled_history[-1 - config.window]:
                outcome = "stalled"
                break

    if outcome != "converged" and scaled <= config.floor_tol:
        log.debug("IRLS %s at scaled gradient %.3g, within the roundoff floor", outcome, scaled)
        outcome = "converged"
    if outcome == "converged":
        return DualSolution(problem.capacity(f), _potential(problem, f), iteration, True, "irls", scaled)

    log.warning(
        "IRLS %s after %d iterations (scaled gradient %.3g), falling back to L-BFGS-B", outcome, iteration, scaled
    )
    return _solve_dual_lbfgsb(problem, config, f, iteration)


def _solve_dual_lbfgsb(problem: _DualProblem, config: SolverConfig, start: np.ndarray, spent: int) -> DualSolution:
    def fun(interior):
        f = problem.full(interior)
        return problem.objective(f), problem.gradient(f)

    result = scipy.optimize.minimize(
        fun,
        start[problem.interior],
        jac=True,
        method="L-BFGS-B",
        bounds=[(0.0, 1.0)] * len(problem.interior),
        options={"maxiter": config.max_iter, "ftol": np.finfo(float).eps, "gtol": 0.0},
    )
    f = problem.full(np.clip(result.x, 0.0, 1.0))
    scaled = problem.scaled_gradient(f)
    if problem.scaled_gradient(start) < scaled:
        f, scaled = start, problem.scaled_gradient(start)
    # L-BFGS-B only returns once it stagnates or hits the cap, so the floor applies
    converged = scaled <= max(config.grad_tol, config.floor_tol)
    return DualSolution(
        problem.capacity(f),
        _potential(problem, f),
        spent + int(result.nit),
        converged,
        "lbfgsb",
        scaled,
        {"message": str(result.message)},
    )


def _potential(problem: _DualProblem, f: np.ndarray) -> PotentialVector:
    return PotentialVector(tuple(np.clip(f, 0.0, 1.0)), problem.x, problem.y)


def _resistance_network(network: CapacitatedNetwork, x: Vertex, y: Vertex, p: float) -> PParameter:
    if network.role is not WeightRole.RESISTANCE:
        raise ValueError("p-resistance needs a network with the resistance role")
    if x == y:
        raise SameSourceSink("x and y are both {}".format(x))
    if not (0 <= x < network.graph.vertex_count and 0 <= y < network.graph.vertex_count):
        raise OutOfRange("{} or {} is not a vertex".format(x, y))
    return PParameter(p)


########################################################################################################################
# Operations
########################################################################################################################


def dual_capacity(
    network: CapacitatedNetwork, x: Vertex, y: Vertex, p: float, config: Optional[SolverConfig] = None
) -> Tuple[float, PotentialVector]:
    """
    Dual capacity `C_p(x, y)` and its minimizing potential.

    The minimization runs over the connected component of x; vertices outside it get potential 0. The solver is
    iteratively reweighted least squares started from the harmonic potential: each step is a Newton step on the exact
    gradient, backtracked until the objective decreases enough or, once the objective is flat at roundoff, until the
    scaled gradient drops. It stops when the scaled projected gradient (see `SolverConfig`) meets `grad_tol`, and
    falls back to L-BFGS-B with bounds [0, 1] when IRLS stalls above the roundoff floor.

    Args:
        network: a network with the resistance role.
        x: vertex pinned to 1.
        y: vertex pinned to 0.
        p: exponent, > 1.
        config: solver settings.

    Returns:
        Tuple[float, PotentialVector]

    Raises:
        DisconnectedPair: if y is not reachable from x.
        NotConverged: if neither IRLS nor the fallback met the stopping criteria.
    """
    solution = solve_dual(network, x, y, p, config)
    return solution.capacity, solution.potential


def solve_dual(
    network: CapacitatedNetwork, x: Vertex, y: Vertex, p: float, config: Optional[SolverConfig] = None
) -> DualSolution:
    """Same as `dual_capacity`, returning the solver diagnostics as well."""
    config = config or SolverConfig()
    problem = _DualProblem(network, x, y, _resistance_network(network, x, y, p))
    solution = _solve_dual(problem, config)
    if not solution.converged:
        raise NotConverged(
            "Dual solver did not converge after {} iterations".format(solution.iterations),
            best=solution,
            diagnostics={"gradient_norm": solution.gradient_norm, "objective": solution.capacity},
        )
    return solution


def primal_p_resistance(
    network: CapacitatedNetwork, x: Vertex, y: Vertex, p: float, config: Optional[SolverConfig] = None
) -> PResistanceResult:
    """
    p-resistance `R_p(x, y)` and the optimal unit flow, extracted from the dual optimum.

    With `delta_e = f(u) - f(v)`, the flow is `theta_e = sign(delta_e) (|delta_e| / r_e)^(q-1)`, normalized to unit
    strength; `R_p = sum_e r_e |theta_e|^p`.

    Raises:
        DisconnectedPair: if y is not reachable from x.
        NotConverged: if the dual solver did not converge, or the flow violates conservation by more than
            `conservation_tol * strength`.
    """
    config = config or SolverConfig()
    param = _resistance_network(network, x, y, p)
    problem = _DualProblem(network, x, y, param)
    solution = _solve_dual(problem, config)
    if not solution.converged:
        raise NotConverged(
            "Dual solver did not converge after {} iterations".format(solution.iterations),
            best=solution,
            diagnostics={"gradient_norm": solution.gradient_norm, "objective": solution.capacity},
        )

    f = solution.potential.as_array()
    delta = problem.differences(f)
    raw = np.sign(delta) * (np.abs(delta) / problem.resistances) ** (param.q - 1.0)
    div = problem.divergence(raw)
    strength = float(div[x])
    if not strength > 0:
        raise NotConverged("Extracted flow has non-positive strength {}".format(strength), best=solution)
    imbalance = float(np.max(np.abs(div[problem.interior]), initial=0.0)) / strength
    if imbalance > config.imbalance_tol:
        raise NotConverged(
            "Flow read off the potential is unbalanced by {:.3g}".format(imbalance),
            best=solution,
            diagnostics={"imbalance": imbalance},
        )
    log.debug("Repairing an interior imbalance of %.3g", imbalance)

    # theta is only Hoelder-continuous in f when q < 2
    repaired = problem.repair(raw)
    values = np.zeros(network.graph.edge_count)
    values[problem.edge_ids] = repaired / float(problem.divergence(repaired)[x])
    flow = FlowAssignment(network.graph, tuple(values), {x}, {y})
    residual = float(flow.conservation_residual())
    if residual > config.conservation_tol:
        raise NotConverged(
            "Extracted flow violates conservation by {:.3g}".format(residual),
            best=solution,
            diagnostics={"conservation_residual": residual},
        )

    theta = np.array(flow.values)[problem.edge_ids]
    primal = float(np.sum(problem.resistances * np.abs(theta) ** param.p))
    dual = solution.capacity ** (-(param.p - 1.0))
    gap = abs(primal - dual) / primal
    log.debug("R_%g(%d, %d) = %.17g (dual %.17g, gap %.3g)", param.p, x, y, primal, dual, gap)
    return PResistanceResult(
        p=param.p,
        resistance=primal,
        capacity=solution.capacity,
        potential=solution.potential,
        flow=flow,
        primal_value=primal,
        dual_value=dual,
        gap=gap,
        iterations=solution.iterations,
        converged=True,
    )


def dual_objective(network: CapacitatedNetwork, f: Sequence[float], p: float) -> float:
    """`sum_e |f(u) - f(v)|^q / r_e^(1/(p-1))` for any vertex function `f`."""
    param = PParameter(p)
    f = np.asarray(f, dtype=np.float64)
    tails = np.array([u for u, _ in network.graph.edge_list], dtype=np.int64)
    heads = np.array([v for _, v in network.graph.edge_list], dtype=np.int64)
    weights = network.as_array() ** (-param.weight_exponent)
    return float(np.sum(weights * np.abs(f[tails] - f[heads]) ** param.q))


def effective_resistance(network: CapacitatedNetwork, x: Vertex, y: Vertex) -> float:
    """
    Kirchhoff effective resistance from the pseudo-inverse of the conductance Laplacian.

    Raises:
        DisconnectedPair: if y is not reachable from x.
    """
    if x == y:
        raise SameSourceSink("x and y are both {}".format(x))
    if y not in network.graph.component_of(x):
        raise DisconnectedPair("{} and {} lie in different components".format(x, y))
    n = network.graph.vertex_count
    lap = np.zeros((n, n))
    for r, (u, v) in zip(network.weights, network.graph.edge_list):
        c = 1.0 / float(r)
        lap[u, u] += c
        lap[v, v] += c
        lap[u, v] -= c
        lap[v, u] -= c
    lap_inv = np.linalg.pinv(lap, rcond=1e-12)
    return float(lap_inv[x, x] + lap_inv[y, y] - 2.0 * lap_inv[x, y])


def minmax_rearrange(bunkbed: BunkbedGraph, f: PotentialVector) -> PotentialVector:
    """
    Min/max rearrangement `h(u0) = f(u0) v f(u1)`, `h(u1) = f(u0) ^ f(u1)` of a potential on a bunkbed graph.

    The result is layer-sorted, keeps every vertical difference `|h(u0) - h(u1)|`, and is pinned to 1 at the layer-0
    copy of the source and to 0 at the layer-1 copy of the sink.
    """
    h = bunkbed.rearrange_layers(f.values)
    x, _ = bunkbed.split(f.x)
    y, _ = bunkbed.split(f.y)
    return PotentialVector(tuple(h), bunkbed.vertex(x, 0), bunkbed.vertex(y, 1))


def pair_energies(network: CapacitatedNetwork, f: Sequence[float], q: float) -> np.ndarray:
    """
    Energy `c_e0 phi(f(u0) - f(v0)) + c_e1 phi(f(u1) - f(v1))` of every horizontal edge pair, `phi = |.|^q`.

    Returns:
        np.ndarray: one value per base edge.
    """
    bunkbed = network.graph
    if not isinstance(bunkbed, BunkbedGraph):
        raise TypeError("pair_energies needs a bunkbed network")
    f = np.asarray(f, dtype=np.float64)
    weights = network.as_array()
    energies = np.zeros(bunkbed.m)
    for base_edge, (e0, e1) in enumerate(bunkbed.horizontal_pairs()):
        for e in (e0, e1):
            u, v = bunkbed.endpoints(e)
            energies[base_edge] += weights[e] * abs(f[u] - f[v]) ** q
    return energies


def rearrangement_energy(network: CapacitatedNetwork, f: Sequence[float], q: float) -> float:
    """Total `phi`-energy over horizontal edges, `phi = |.|^q`."""
    return float(np.sum(pair_energies(network, f, q)))


def convex_quadruple_inequality(q, a0, b0, a1, b1) -> QuadrupleReport:
    """
    Both sides of `phi(a0 - b0) + phi(a1 - b1) >= phi(a0 v a1 - b0 v b1) + phi(a0 ^ a1 - b0 ^ b1)`, `phi = |.|^q`.

    Exact for rational inputs and integer `q`.

    Returns:
        QuadrupleReport: `(lhs, rhs, holds)`, `holds` allowing a relative slack of 1e-12.
    """
    if q < 1:
        raise ValueError("phi = |.|^q is convex only for q >= 1, got {}".format(q))

    def phi(t):
        return abs(t) ** q

    lhs = phi(a0 - b0) + phi(a1 - b1)
    rhs = phi(max(a0, a1) - max(b0, b1)) + phi(min(a0, a1) - min(b0, b1))
    slack = QUADRUPLE_SLACK * max(1, abs(lhs), abs(rhs))
    return QuadrupleReport(lhs, rhs, bool(lhs >= rhs - slack))


def verify_p_resistance_inequality(
    base: BaseGraph,
    resistances: Sequence,
    x: Vertex,
    y: Vertex,
    p: float,
    config: Optional[SolverConfig] = None,
) -> PResistanceInequalityReport:
    """
    Compares `R_p(x0, y0)` with `R_p(x0, y1)` on `base x K2` with reflection-symmetric resistances.

    Args:
        base: the base graph G, connected.
        resistances: resistances indexed by bunkbed edge id.
        x: base vertex of the source.
        y: base vertex of the sink.
        p: exponent, > 1.
        config: solver settings.

    Returns:
        PResistanceInequalityReport: `(r00, r01, holds)` with `holds = r01 >= r00 - 1e-8 * max(1, |r00|, |r01|)`.

    Raises:
        AsymmetricResistances: if the horizontal resistances are not reflection-symmetric.
    """
    if x == y:
        raise SameSourceSink("x and y are both {}".format(x))
    bunkbed = build_bunkbed(base)
    network = CapacitatedNetwork(bunkbed, tuple(resistances), WeightRole.RESISTANCE)
    if not network.is_reflection_symmetric():
        raise AsymmetricResistances("Horizontal resistances differ between the two layers")

    r00 = primal_p_resistance(network, bunkbed.vertex(x, 0), bunkbed.vertex(y, 0), p, config).resistance
    r01 = primal_p_resistance(network, bunkbed.vertex(x, 0), bunkbed.vertex(y, 1), p, config).resistance
    holds = r01 >= r00 - INEQUALITY_SLACK * max(1.0, abs(r00), abs(r01))
    if not holds:
        log.error("p-resistance inequality violated for x=%d, y=%d, p=%g: R00=%.17g > R01=%.17g", x, y, p, r00, r01)
    return PResistanceInequalityReport(r00, r01, bool(holds))
