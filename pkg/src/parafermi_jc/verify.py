"""Self-check suites behind the ``verify`` CLI command.

Three scopes: ``algebra`` (operator relations and counting identities),
``oracles`` (closed forms against the numerical eigensolver), ``thermo``
(expectation-value consistency).  Each check returns a named pass/fail record
so a fault injected anywhere in the pipeline surfaces with a pointer to the
relation it broke.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .blocks import ModelParams, build_block
from .deformations import Deformation
from .eigensolver import eigenvalues_only
from .errors import ParameterError
from .exact import (
    exact_f2_deformed,
    exact_f2_undeformed,
    exact_f3_k1,
    semiclassical_z_f2,
    semiclassical_z_f2_closed_form,
    semiclassical_z_k1,
)
from .thermo import (
    n_via_mu_derivative,
    phi_n_via_omega_derivative,
    thermo_from_spectrum,
)

SCOPES = ("algebra", "oracles", "thermo")

ALGEBRA_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, deviation: float, tol: float) -> CheckResult:
    return CheckResult(name, deviation <= tol, f"max deviation {deviation:.3e} (tol {tol:.1e})")


def _maxabs(M: np.ndarray) -> float:
    return float(np.max(np.abs(M))) if M.size else 0.0


def algebra_checks() -> list[CheckResult]:
    results = []
    # pairwise q-commutation theta_i theta_j = q theta_j theta_i (i < j)
    worst = 0.0
    for F, k in ((2, 2), (3, 2), (3, 3), (4, 2), (4, 3)):
        q = algebra.root_of_unity_power(F, 1)
        thetas = [algebra.build_mode_matrix(F, k, m) for m in range(1, k + 1)]
        for i, j in itertools.combinations(range(k), 2):
            dev = _maxabs(thetas[i] @ thetas[j] - q * thetas[j] @ thetas[i])
            worst = max(worst, dev)
    results.append(_result("q_commutation", worst, ALGEBRA_TOL))

    worst = 0.0
    for F, k in ((2, 1), (3, 2), (4, 3), (5, 2)):
        for m in range(1, k + 1):
            theta = algebra.build_mode_matrix(F, k, m)
            worst = max(worst, _maxabs(np.linalg.matrix_power(theta, F)))
    results.append(_result("nilpotency", worst, ALGEBRA_TOL))

    worst = 0.0
    for F, k in ((3, 2), (4, 2)):
        thetas = [algebra.build_mode_matrix(F, k, m) for m in range(1, k + 1)]
        numbers = [algebra.number_operator_matrix(F, k, i) for i in range(1, k + 1)]
        for i in range(k):
            for j in range(k):
                delta_ij = 1.0 if i == j else 0.0
                comm = numbers[i] @ thetas[j] - thetas[j] @ numbers[i]
                worst = max(worst, _maxabs(comm + delta_ij * thetas[j]))
                dag = thetas[j].conj().T
                comm = numbers[i] @ dag - dag @ numbers[i]
                worst = max(worst, _maxabs(comm - delta_ij * dag))
    results.append(_result("number_commutators", worst, ALGEBRA_TOL))

    worst = 0.0
    for F, k in ((3, 2), (4, 3)):
        numbers = sum(algebra.number_operator_matrix(F, k, i) for i in range(1, k + 1))
        basis = algebra.enumerate_block_basis(F, k, k * (F - 1))
        expected = np.array([algebra.weight(p) for p in basis], dtype=float)
        worst = max(worst, float(np.max(np.abs(np.diag(numbers).real - expected))))
    results.append(_result("total_number_diagonal", worst, 0.0))

    counting_ok = True
    for F in range(2, 6):
        for k in range(1, 5):
            for n in range(0, 3 * k * (F - 1) + 1):
                if algebra.block_dimension(F, k, n) != algebra.block_dimension_closed_form(F, k, n):
                    counting_ok = False
            for n in range(0, k * (F - 1) + 2):
                if len(algebra.enumerate_block_basis(F, k, n)) != algebra.block_dimension(F, k, n):
                    counting_ok = False
    results.append(CheckResult("dimension_counting", counting_ok,
                               "convolution vs alternating sum vs enumeration"))

    worst = 0.0
    for F in (2, 3, 4, 5):
        triple = algebra.clifford_triple(F)
        q = algebra.root_of_unity_power(F, 1)
        eye = np.eye(F)
        worst = max(worst, _maxabs(np.linalg.matrix_power(triple.sigma1, F) - eye))
        worst = max(worst, _maxabs(np.linalg.matrix_power(triple.sigma3, F) - eye))
        worst = max(worst, _maxabs(triple.sigma1 @ triple.sigma3 - q * triple.sigma3 @ triple.sigma1))
        worst = max(worst, _maxabs(triple.sigma2 - triple.sigma3 @ triple.sigma1))
    results.append(_result("clifford_relations", worst, ALGEBRA_TOL))

    worst = 0.0
    for F in (2, 3, 4):
        for phi in (Deformation.parafermionic(F), Deformation.custom(lambda x, F=F: math.sin(math.pi * x / F))):
            a = algebra.clifford_mode(F, phi)
            worst = max(worst, _maxabs(np.linalg.matrix_power(a, F)))
            target = np.diag([phi(float(j)) for j in range(F)])
            worst = max(worst, _maxabs(a.conj().T @ a - target))
    results.append(_result("clifford_mode_contract", worst, ALGEBRA_TOL))
    return results


def oracle_checks() -> list[CheckResult]:
    results = []
    grid = (0.5, 2.0)
    worst = 0.0
    for k in (1, 2):
        for n in (k, k + 2):
            for omega, delta, g in itertools.product(grid, grid, grid):
                params = ModelParams(2, k, omega, delta, g)
                numeric = eigenvalues_only(build_block(params, n).matrix)
                exact = exact_f2_undeformed(k, n, omega, delta, g).values()
                worst = max(worst, float(np.max(np.abs(numeric - exact) / (1 + np.abs(numeric)))))
    results.append(_result("f2_undeformed_vs_numeric", worst, 1e-9))

    worst = 0.0
    phi = Deformation.q_exp(1.0)
    for k in (1, 2):
        for n in (k, k + 2):
            for omega, delta, g in itertools.product(grid, grid, grid):
                params = ModelParams(2, k, omega, delta, g, deformation=phi)
                numeric = eigenvalues_only(build_block(params, n).matrix)
                exact = exact_f2_deformed(k, n, omega, delta, g, phi).values()
                worst = max(worst, float(np.max(np.abs(numeric - exact) / (1 + np.abs(numeric)))))
    results.append(_result("f2_deformed_vs_numeric", worst, 1e-9))

    worst = 0.0
    for n in (3, 5):
        for omega, delta, g in itertools.product(grid, grid, grid):
            params = ModelParams(3, 1, omega, delta, g)
            numeric = eigenvalues_only(build_block(params, n).matrix)
            exact = exact_f3_k1(n, omega, delta, g).values()
            worst = max(worst, float(np.max(np.abs(numeric - exact) / (1 + np.abs(numeric)))))
    results.append(_result("f3_cubic_vs_numeric", worst, 1e-8))

    worst = 0.0
    for k, n in ((1, 3), (2, 4), (3, 5)):
        for omega in grid:
            z_sum = semiclassical_z_f2(k, n, 1.0, omega, 20.0, 1.0)
            z_closed = semiclassical_z_f2_closed_form(k, n, 1.0, omega, 20.0, 1.0)
            worst = max(worst, abs(z_sum - z_closed) / z_closed)
    results.append(_result("semiclassical_sum_vs_closed_form", worst, 1e-10))

    worst = 0.0
    for n in (2, 4):
        for omega in grid:
            z_f = semiclassical_z_k1(2, n, 1.0, omega, 20.0, 1.0)
            z_k = semiclassical_z_f2(1, n, 1.0, omega, 20.0, 1.0)
            worst = max(worst, abs(z_f - z_k) / z_k)
    results.append(_result("single_mode_vs_f2_partition", worst, 1e-10))

    worst = 0.0
    for k, n in ((1, 3), (2, 4)):
        exact = exact_f2_undeformed(k, n, 1.0, 2.0, 0.5)
        params = ModelParams(2, k, 1.0, 2.0, 0.5)
        trace = float(np.trace(build_block(params, n).matrix).real)
        worst = max(worst, abs(exact.trace() - trace) / (1 + abs(trace)))
    exact = exact_f3_k1(4, 1.0, 2.0, 0.5)
    trace = float(np.trace(build_block(ModelParams(3, 1, 1.0, 2.0, 0.5), 4).matrix).real)
    worst = max(worst, abs(exact.trace() - trace) / (1 + abs(trace)))
    results.append(_result("closed_form_trace_identity", worst, 1e-9))
    return results


def thermo_checks(step: float = 1e-4) -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(20260810)
    worst_omega, worst_mu, worst_cons = 0.0, 0.0, 0.0
    for _ in range(10):
        F = int(rng.integers(2, 5))
        k = int(rng.integers(1, 4))
        n = int(rng.integers(0, k * (F - 1) + 3))
        omega, delta, g = (float(x) for x in rng.uniform(0.1, 2.5, size=3))
        beta = float(rng.uniform(0.3, 1.0))
        kind = int(rng.integers(0, 3))
        if kind == 0:
            phi = Deformation.undeformed()
        elif kind == 1:
            phi = Deformation.linear(float(rng.uniform(0.3, 1.5)))
        else:
            phi = Deformation.q_exp(float(rng.uniform(0.05, 0.3)))
        params = ModelParams(F, k, omega, delta, g, beta=beta, deformation=phi)
        obs = thermo_from_spectrum(params, n)
        worst_cons = max(worst_cons, abs(obs.n_expect + obs.w_expect - n))
        worst_omega = max(worst_omega, abs(phi_n_via_omega_derivative(params, n, step) - obs.phi_n_expect))
        worst_mu = max(worst_mu, abs(n_via_mu_derivative(params, n, step) - obs.n_expect))
    results.append(_result("phi_n_trace_vs_omega_derivative", worst_omega, 1e-6))
    results.append(_result("n_trace_vs_mu_derivative", worst_mu, 1e-6))
    results.append(_result("number_conservation", worst_cons, 1e-8))
    return results


def run_checks(scope: str = "all", step: float = 1e-4) -> dict:
    """Run the requested suites; returns a JSON-ready summary dict."""
    if scope not in SCOPES and scope != "all":
        raise ParameterError(f"unknown verify scope {scope!r}; choose from {SCOPES + ('all',)}")
    suites = {
        "algebra": algebra_checks,
        "oracles": oracle_checks,
        "thermo": lambda: thermo_checks(step),
    }
    selected = SCOPES if scope == "all" else (scope,)
    checks = []
    for name in selected:
        for result in suites[name]():
            checks.append({"suite": name, "name": result.name,
                           "passed": result.passed, "detail": result.detail})
    return {
        "scope": scope,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }
