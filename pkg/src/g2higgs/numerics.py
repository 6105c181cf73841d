"""Floating-point helpers shared by the numeric solvers."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .exactmath import MPoly


class CompiledPolys:
    """Vectorised complex evaluation of several polynomials over fixed variables."""

    def __init__(self, polys: Sequence[MPoly], names: Sequence[str]):
        names = tuple(names)
        self.blocks = []
        for p in polys:
            p = p.with_variables(tuple(v for v in _ordered(names, p)))
            p = _project(p, names)
            exps = np.array(list(p.terms), dtype=int).reshape(-1, len(names))
            coeffs = np.array([complex(c) for c in p.terms.values()], dtype=complex)
            self.blocks.append((exps, coeffs))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros(len(self.blocks), dtype=complex)
        for k, (exps, coeffs) in enumerate(self.blocks):
            if len(coeffs):
                out[k] = np.prod(x[None, :] ** exps, axis=1) @ coeffs
        return out


def _ordered(names, p):
    from .exactmath.mpoly import order_variables

    extra = set(p.variables) - set(names)
    if extra:
        raise ValueError(f"polynomial uses unexpected variables {sorted(extra)}")
    return order_variables(names)


def _project(p: MPoly, names):
    # reorder exponent tuples from global order to the caller's order
    idx = [p.variables.index(v) for v in names]
    return MPoly._raw(tuple(names), {tuple(e[i] for i in idx): c for e, c in p.terms.items()})


def levenberg_marquardt(fun, jac, x0, tol, max_iter=200):
    """Damped Gauss-Newton for a holomorphic least-squares problem; returns (x, |residual|)."""
    x = np.array(x0, dtype=complex)
    res = fun(x)
    cost = np.vdot(res, res).real
    mu = 1e-3
    for _ in range(max_iter):
        if np.sqrt(cost) <= tol * 1e-3:
            break
        j = jac(x)
        jh = j.conj().T
        a = jh @ j
        g = jh @ res
        scale = np.trace(a).real / len(x) + 1e-12
        improved = False
        for _ in range(30):
            step = np.linalg.solve(a + mu * scale * np.eye(len(x)), -g)
            trial = x + step
            tres = fun(trial)
            tcost = np.vdot(tres, tres).real
            if np.isfinite(tcost) and tcost < cost:
                x, res, cost = trial, tres, tcost
                mu = max(mu / 3, 1e-12)
                improved = True
                break
            mu *= 4
        if not improved or np.linalg.norm(x) > 1e6:
            break
    return x, float(np.sqrt(cost))
