"""Numeric discovery of eigenfunction candidates, then exact recovery.

A degree-d candidate is a complex coefficient vector theta over the degree-d
monomial basis.  The conditions "Laplacian of P vanishes" (linear in theta)
and "bilinear gradient square of P vanishes" (quadratic in theta) become a
polynomial residual map; together with the gauge residual |theta|^2 - 1 it
is minimized by Levenberg-Marquardt with the analytic Jacobian.  Multistart
over seeded Gaussian initializations makes runs reproducible, and the best
candidates are rounded to Gaussian rationals and re-verified exactly.

The solver is hand-rolled on numpy: the system is small (tens of unknowns),
needs an analytic Jacobian, and is underdetermined at low degree, where
library implementations of the same algorithm refuse fewer residuals than
unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .eigen import verify_eigenfunction
from .polynomial import GaussianRational, Polynomial


def monomial_basis(nvars: int, degree: int) -> Tuple[Tuple[int, ...], ...]:
    """All degree-`degree` exponent tuples, descending graded-lexicographic."""
    if degree < 0:
        raise ValueError(f"degree must be non-negative, got {degree}")
    exps = set()
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for slot in combo:
            e[slot] += 1
        exps.add(tuple(e))
    return tuple(sorted(exps, reverse=True))


def coefficients_of(P: Polynomial, basis: Sequence[Tuple[int, ...]]) -> np.ndarray:
    """Extract the complex coefficient vector of P over a monomial basis."""
    return np.array([complex(P.coefficient(e)) for e in basis])


class ResidualSystem:
    """Residual map and analytic Jacobian for fixed (nvars, degree).

    Real parametrization t = [Re theta; Im theta].  Residual blocks:
      * Re/Im coefficients of laplacian(P_theta):  L u  and  L v;
      * Re/Im coefficients of kappa(P_theta, P_theta): u'Bu - v'Bv, 2 u'Bv;
      * gauge |t|^2 - 1.
    L is real and B is a real symmetric form per target monomial, so the
    Jacobian is exact, not differenced.
    """

    def __init__(self, nvars: int, degree: int):
        if nvars < 3 or degree < 1:
            raise ValueError("search needs nvars >= 3 and degree >= 1")
        self.nvars = nvars
        self.degree = degree
        self.basis = monomial_basis(nvars, degree)
        self.size = len(self.basis)
        index = {e: i for i, e in enumerate(self.basis)}

        # linear block: coefficients of the Laplacian in the degree-(d-2) basis
        lap_basis = monomial_basis(nvars, degree - 2) if degree >= 2 else ()
        lap_index = {e: i for i, e in enumerate(lap_basis)}
        lap = np.zeros((len(lap_basis), self.size))
        for alpha, col in index.items():
            for i in range(nvars):
                if alpha[i] >= 2:
                    target = list(alpha)
                    target[i] -= 2
                    lap[lap_index[tuple(target)], col] += alpha[i] * (alpha[i] - 1)
        self.lap_matrix = lap

        # quadratic block: kappa coefficients in the degree-(2d-2) basis,
        # as one symmetric form B[t] per target monomial
        mid_basis = monomial_basis(nvars, degree - 1)
        mid_index = {e: i for i, e in enumerate(mid_basis)}
        partials = []
        for i in range(nvars):
            d_i = np.zeros((len(mid_basis), self.size))
            for alpha, col in index.items():
                if alpha[i] >= 1:
                    target = list(alpha)
                    target[i] -= 1
                    d_i[mid_index[tuple(target)], col] += alpha[i]
            partials.append(d_i)
        kap_basis = monomial_basis(nvars, 2 * degree - 2)
        kap_index = {e: i for i, e in enumerate(kap_basis)}
        forms = np.zeros((len(kap_basis), self.size, self.size))
        for d_i in partials:
            for mu_row, mu in enumerate(mid_basis):
                for nu_row, nu in enumerate(mid_basis):
                    gamma = tuple(a + b for a, b in zip(mu, nu))
                    forms[kap_index[gamma]] += np.outer(d_i[mu_row], d_i[nu_row])
        self.kappa_forms = (forms + np.transpose(forms, (0, 2, 1))) / 2
        self.num_residuals = 2 * lap.shape[0] + 2 * forms.shape[0] + 1

    def split(self, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return t[: self.size], t[self.size:]

    def residual(self, t: np.ndarray) -> np.ndarray:
        u, v = self.split(t)
        lap_u = self.lap_matrix @ u
        lap_v = self.lap_matrix @ v
        bu = self.kappa_forms @ u  # (T, M)
        bv = self.kappa_forms @ v
        kap_re = bu @ u - bv @ v
        kap_im = 2 * (bu @ v)
        gauge = u @ u + v @ v - 1.0
        return np.concatenate([lap_u, lap_v, kap_re, kap_im, [gauge]])

    def jacobian(self, t: np.ndarray) -> np.ndarray:
        u, v = self.split(t)
        m = self.size
        rows = self.num_residuals
        jac = np.zeros((rows, 2 * m))
        r = self.lap_matrix.shape[0]
        jac[:r, :m] = self.lap_matrix
        jac[r:2 * r, m:] = self.lap_matrix
        bu = self.kappa_forms @ u
        bv = self.kappa_forms @ v
        q = self.kappa_forms.shape[0]
        jac[2 * r:2 * r + q, :m] = 2 * bu
        jac[2 * r:2 * r + q, m:] = -2 * bv
        jac[2 * r + q:2 * r + 2 * q, :m] = 2 * bv
        jac[2 * r + q:2 * r + 2 * q, m:] = 2 * bu
        jac[-1, :m] = 2 * u
        jac[-1, m:] = 2 * v
        return jac

    def residual_norm_of(self, coefficients: np.ndarray) -> float:
        t = np.concatenate([coefficients.real, coefficients.imag])
        return float(np.linalg.norm(self.residual(t)))

    def polynomial_of(self, coefficients: Sequence[complex]) -> Polynomial:
        terms = {}
        for exps, value in zip(self.basis, coefficients):
            terms[exps] = GaussianRational(Fraction(value.real), Fraction(value.imag))
        return Polynomial(self.nvars, terms)

    def polynomial_of_exact(self, coefficients: Sequence[GaussianRational]) -> Polynomial:
        return Polynomial(self.nvars, dict(zip(self.basis, coefficients)))


def _levenberg_marquardt(
    system: ResidualSystem, t0: np.ndarray, max_iters: int = 300
) -> Tuple[np.ndarray, float]:
    t = t0.copy()
    r = system.residual(t)
    cost = float(r @ r)
    lam = 1e-3
    for _ in range(max_iters):
        if np.sqrt(cost) < 1e-15:
            break
        jac = system.jacobian(t)
        grad = jac.T @ r
        if np.max(np.abs(grad)) < 1e-16:
            break
        gauss = jac.T @ jac
        damping_scale = np.maximum(np.diag(gauss), 1e-12)
        accepted = False
        for _retry in range(40):
            try:
                step = np.linalg.solve(gauss + lam * np.diag(damping_scale), -grad)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            candidate = t + step
            r_new = system.residual(candidate)
            cost_new = float(r_new @ r_new)
            if cost_new < cost:
                t, r, cost = candidate, r_new, cost_new
                lam = max(lam / 3, 1e-13)
                accepted = True
                break
            lam *= 4
            if lam > 1e15:
                break
        if not accepted:
            break
    return t, float(np.sqrt(cost))


@dataclass
class SearchResult:
    coefficients: np.ndarray  # complex, indexed by the degree-d monomial basis
    residual: float
    exact: Optional[Polynomial]
    attempt: int

    def to_json(self) -> dict:
        from .parsing import render

        return {
            "coefficients": [[z.real, z.imag] for z in self.coefficients],
            "residual": self.residual,
            "exact": render(self.exact) if self.exact is not None else None,
            "attempt": self.attempt,
        }


def rationalize_and_verify(
    coefficients: Sequence[complex],
    nvars: int,
    degree: int,
    denominator_bound: int = 64,
    sphere_dim: Optional[int] = None,
) -> Optional[Polynomial]:
    """Round to Gaussian rationals and keep the result only if exactly eigen."""
    basis = monomial_basis(nvars, degree)
    terms = {}
    for exps, value in zip(basis, coefficients):
        value = complex(value)
        re = Fraction(value.real).limit_denominator(denominator_bound)
        im = Fraction(value.imag).limit_denominator(denominator_bound)
        terms[exps] = GaussianRational(re, im)
    candidate = Polynomial(nvars, terms)
    if candidate.is_zero():
        return None
    n = sphere_dim if sphere_dim is not None else nvars - 1
    report = verify_eigenfunction(candidate, n)
    return candidate if report.is_eigen else None


def _isotropic_completion(
    coefficients: np.ndarray, denominator_bound: int
) -> Optional[Tuple[np.ndarray, List[GaussianRational]]]:
    """Exact rounding repair for linear candidates.

    Rounds every coefficient except the two of largest modulus, then solves
    for those two exactly so that the isotropy condition sum theta_j^2 = 0
    holds: with s = theta_j + i*theta_k, t = theta_j - i*theta_k the
    condition reads s*t = -(rounded remainder), so rounding s and dividing
    exactly for t keeps the result both near the input and exactly isotropic.
    """
    order = np.argsort(-np.abs(coefficients))
    j, k = int(order[0]), int(order[1])
    rounded: List[GaussianRational] = []
    remainder = GaussianRational(Fraction(0))
    for idx, value in enumerate(coefficients):
        if idx in (j, k):
            rounded.append(GaussianRational(Fraction(0)))
            continue
        g = GaussianRational(
            Fraction(value.real).limit_denominator(denominator_bound),
            Fraction(value.imag).limit_denominator(denominator_bound),
        )
        rounded.append(g)
        remainder = remainder + g * g
    target = -remainder  # need theta_j^2 + theta_k^2 = target
    s_float = complex(coefficients[j]) + 1j * complex(coefficients[k])
    s = GaussianRational(
        Fraction(s_float.real).limit_denominator(denominator_bound),
        Fraction(s_float.imag).limit_denominator(denominator_bound),
    )
    if s.is_zero():
        return None
    t = target / s
    half = GaussianRational(Fraction(1, 2))
    minus_half_i = GaussianRational(Fraction(0), Fraction(-1, 2))
    rounded[j] = (s + t) * half
    rounded[k] = (s - t) * minus_half_i
    return np.array([complex(g) for g in rounded]), rounded


def search_eigen(
    nvars: int,
    degree: int,
    attempts: int,
    rng_seed: int = 0,
    denominator_bound: int = 64,
) -> List[SearchResult]:
    """Multistart Levenberg-Marquardt over the degree-`degree` coefficient space.

    Returns one SearchResult per attempt, sorted by residual (ties broken by
    attempt index).  Results whose residual is small get a rationalization
    pass; `exact` is filled only when the rounded polynomial verifies exactly.
    """
    system = ResidualSystem(nvars, degree)
    results: List[SearchResult] = []
    for attempt in range(attempts):
        rng = np.random.default_rng([rng_seed, attempt])
        t0 = rng.standard_normal(2 * system.size)
        t0 /= np.linalg.norm(t0)
        t_star, residual = _levenberg_marquardt(system, t0)
        u, v = system.split(t_star)
        coefficients = u + 1j * v
        exact: Optional[Polynomial] = None
        if residual < 1e-6:
            exact = rationalize_and_verify(
                coefficients, nvars, degree, denominator_bound,
                sphere_dim=max(nvars - 1, 2),
            )
            if exact is None and degree == 1:
                completion = _isotropic_completion(coefficients, denominator_bound)
                if completion is not None:
                    repaired, gaussians = completion
                    candidate = system.polynomial_of_exact(gaussians)
                    if not candidate.is_zero():
                        report = verify_eigenfunction(candidate, max(nvars - 1, 2))
                        if report.is_eigen:
                            exact = candidate
        results.append(SearchResult(coefficients, residual, exact, attempt))
    results.sort(key=lambda res: (res.residual, res.attempt))
    return results
