"""Ten rank-1 projectors in real 4D realising two exclusive pentagons.

The A-family spans coordinates 1-3 and the A'-family coordinates 2-4.  The
family is parametrised by six angles subject to
``tan(delta) tan(gamma) cos(beta - epsilon) = -1``, which makes A'3 and A'4
orthogonal.  Everything here is floating point; tolerances are explicit.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .fixtures import PENTAGON_A, PENTAGON_B
from .graph import CommutationGraph

LABELS = PENTAGON_A + PENTAGON_B

CONSTRAINT_TOL = 1e-12
NONZERO_TOL = 1e-9
UNIT_TOL = 1e-12
ORTHO_TOL = 1e-9
EIGEN_TOL = 1e-12
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class ParameterSet:
    theta: float
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float

    def constraint_residual(self) -> float:
        return math.tan(self.delta) * math.tan(self.gamma) * math.cos(self.beta - self.epsilon) + 1.0

    def problems(self) -> list[str]:
        out = []
        if abs(self.constraint_residual()) > CONSTRAINT_TOL:
            out.append(f"tan(delta)tan(gamma)cos(beta-epsilon) = -1 violated by {self.constraint_residual():.3e}")
        if abs(math.sin(self.beta - self.epsilon)) <= NONZERO_TOL:
            out.append("sin(beta - epsilon) vanishes")
        if abs(math.cos(self.beta - self.epsilon)) <= NONZERO_TOL:
            out.append("cos(beta - epsilon) vanishes")
        if abs(math.sin(self.delta)) <= NONZERO_TOL:
            out.append("sin(delta) vanishes")
        if abs(self._a5_norm_sq()) <= NONZERO_TOL:
            out.append("cos^2(alpha) + sin^2(alpha) cos^2(theta) vanishes")
        return out

    def _a5_norm_sq(self) -> float:
        return math.cos(self.alpha) ** 2 + math.sin(self.alpha) ** 2 * math.cos(self.theta) ** 2

    def validate(self) -> None:
        bad = self.problems()
        if bad:
            raise ValidationError("invalid parameters: " + "; ".join(bad))

    @classmethod
    def solve_delta(cls, theta: float, alpha: float, beta: float, gamma: float, epsilon: float) -> ParameterSet:
        """Fill in delta from the orthogonality constraint."""
        delta = math.atan(-1.0 / (math.tan(gamma) * math.cos(beta - epsilon)))
        return cls(theta, alpha, beta, gamma, delta, epsilon)

    def to_dict(self) -> dict:
        return asdict(self)


def sample_parameters(rng: np.random.Generator, max_tries: int = 1000) -> ParameterSet:
    """Uniform theta, alpha, beta, gamma, epsilon; delta solved; invalid draws rejected."""
    for _ in range(max_tries):
        theta, alpha, beta, gamma, epsilon = (float(x) for x in rng.uniform(0.0, 2 * math.pi, size=5))
        try:
            p = ParameterSet.solve_delta(theta, alpha, beta, gamma, epsilon)
        except ZeroDivisionError:
            continue
        if not p.problems():
            return p
    raise RuntimeError("could not draw a valid parameter set")


@dataclass(frozen=True)
class ProjectorFamily:
    labels: tuple[str, ...]
    vectors: np.ndarray  # shape (10, 4), one unit vector per row

    def vector(self, label: str) -> np.ndarray:
        return self.vectors[self.labels.index(label)]

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


def build_family(p: ParameterSet) -> ProjectorFamily:
    p.validate()
    st, ct = math.sin(p.theta), math.cos(p.theta)
    sa, ca = math.sin(p.alpha), math.cos(p.alpha)
    sb, cb = math.sin(p.beta), math.cos(p.beta)
    sg, cg = math.sin(p.gamma), math.cos(p.gamma)
    sd, cd = math.sin(p.delta), math.cos(p.delta)
    se, ce = math.sin(p.epsilon), math.cos(p.epsilon)
    a5_norm = 1.0 / math.sqrt(ca**2 + sa**2 * ct**2)
    vecs = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [ct, 0.0, st, 0.0],
            [sa * st, ca, -sa * ct, 0.0],
            [0.0, a5_norm * sa * ct, a5_norm * ca, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, cb, sb, 0.0],
            [0.0, sg * sb, -sg * cb, cg],
            [0.0, sd * se, -sd * ce, cd],
            # written with the 1/sin(delta) normaliser on purpose; validate() keeps it finite
            [0.0, sd * ce / sd, sd * se / sd, 0.0],
        ]
    )
    fam = ProjectorFamily(LABELS, vecs)
    norms = np.linalg.norm(vecs, axis=1)
    if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
        raise ValidationError("projector vectors are not normalised")
    for pent in (PENTAGON_A, PENTAGON_B):
        for i in range(5):
            ip = float(fam.vector(pent[i]) @ fam.vector(pent[(i + 1) % 5]))
            if abs(ip) > UNIT_TOL:
                raise ValidationError(f"{pent[i]} and {pent[(i + 1) % 5]} are not orthogonal ({ip:.3e})")
    return fam


def orthogonality_graph(f: ProjectorFamily, tol: float = ORTHO_TOL) -> CommutationGraph:
    """Exclusive edge between two projectors iff their vectors are orthogonal within ``tol``."""
    if not 0 < tol <= 1e-6:
        raise ValidationError("tol must lie in (0, 1e-6]")
    g = f.gram()
    n = len(f.labels)
    edges = [
        (f.labels[i], f.labels[j], True)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(g[i, j]) < tol
    ]
    return CommutationGraph(f.labels, edges)


def jacobi_eigh(m: np.ndarray, tol: float = EIGEN_TOL, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues in descending order and the matching eigenvectors as
    columns.  Sweeps stop once the off-diagonal Frobenius norm is below
    ``tol`` times max(1, ||m||_F).
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("jacobi_eigh needs a square matrix")
    if not np.allclose(a, a.T, atol=1e-14, rtol=0):
        raise ValidationError("jacobi_eigh needs a symmetric matrix")
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # rotation angle that zeroes a[p, q]
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], v[:, order]


def _weight_vector(f: ProjectorFamily, weights: Mapping[str, float] | Sequence[float]) -> np.ndarray:
    if isinstance(weights, Mapping):
        unknown = [k for k in weights if k not in f.labels]
        if unknown:
            raise ValidationError(f"unknown projector labels {unknown}")
        return np.array([float(weights.get(lab, 0.0)) for lab in f.labels])
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(f.labels),):
        raise ValidationError(f"expected {len(f.labels)} weights")
    return w


def weighted_operator(f: ProjectorFamily, weights: Mapping[str, float] | Sequence[float]) -> np.ndarray:
    w = _weight_vector(f, weights)
    return (f.vectors.T * w) @ f.vectors


def operator_spectrum(
    f: ProjectorFamily, weights: Mapping[str, float] | Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    return jacobi_eigh(weighted_operator(f, weights))


def operator_max_eigenvalue(f: ProjectorFamily, weights: Mapping[str, float] | Sequence[float]) -> float:
    """Largest eigenvalue of sum_i w_i |v_i><v_i|: the best weighted sum over quantum states."""
    return float(operator_spectrum(f, weights)[0][0])


def kcbs_value(state: np.ndarray, f: ProjectorFamily, subset: Sequence[str]) -> float:
    """Sum of |<v|psi>|^2 over the projectors in ``subset``."""
    psi = np.asarray(state, dtype=float)
    if psi.shape != (4,):
        raise ValidationError("state must be a 4-component real vector")
    if abs(float(np.linalg.norm(psi)) - 1.0) > UNIT_TOL:
        raise ValidationError("state must be a unit vector")
    return float(sum((f.vector(lab) @ psi) ** 2 for lab in subset))


def unit_weights(labels: Sequence[str]) -> dict[str, float]:
    return {lab: 1.0 for lab in labels}


@dataclass
class ScanReport:
    points: int
    topology_constant: bool
    edges: list[tuple[str, str]]
    max_total: float
    max_pentagon_a: float
    max_pentagon_b: float
    argmax_pentagon_a: ParameterSet

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "topology_constant": self.topology_constant,
            "edges": [list(e) for e in self.edges],
            "max_total_eigenvalue": self.max_total,
            "max_pentagon_A_eigenvalue": self.max_pentagon_a,
            "max_pentagon_Aprime_eigenvalue": self.max_pentagon_b,
            "argmax_pentagon_A": self.argmax_pentagon_a.to_dict(),
            "bound": 4,
            "bound_slack": BOUND_SLACK,
            "orthogonality_tol": ORTHO_TOL,
        }


def parameter_scan(n: int, seed: int = 0) -> ScanReport:
    """Evaluate ``n`` sampled parameter sets (fixed seed) and keep the maxima."""
    if n < 1:
        raise ValidationError("scan size must be positive")
    rng = np.random.default_rng(seed)
    first_edges = None
    constant = True
    best_total = best_a = best_b = -math.inf
    arg_a = None
    for _ in range(n):
        p = sample_parameters(rng)
        fam = build_family(p)
        edges = orthogonality_graph(fam).edges
        if first_edges is None:
            first_edges = edges
        elif edges != first_edges:
            constant = False
        best_total = max(best_total, operator_max_eigenvalue(fam, unit_weights(LABELS)))
        val_a = operator_max_eigenvalue(fam, unit_weights(PENTAGON_A))
        if val_a > best_a:
            best_a, arg_a = val_a, p
        best_b = max(best_b, operator_max_eigenvalue(fam, unit_weights(PENTAGON_B)))
    assert first_edges is not None and arg_a is not None
    return ScanReport(n, constant, first_edges, best_total, best_a, best_b, arg_a)
