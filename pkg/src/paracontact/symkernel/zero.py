"""Two-tier zero test: exact canonical form first, seeded sampling second."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canonical import canonical, max_coefficient, poly_to_expr
from .expr import Expr, evaluate, free_symbols

SYMBOLIC = "symbolic-zero"
NUMERIC = "numeric-zero"
NONZERO = "nonzero"

TIER_RANK = {SYMBOLIC: 0, NUMERIC: 1, NONZERO: 2}


class PoleError(ArithmeticError):
    """Sampling kept landing on poles of the expression."""


@dataclass(frozen=True)
class SamplerConfig:
    samples: int = 100
    seed: int = 20140917
    low: float = -1.0
    high: float = 1.0
    tolerance: float = 1e-8
    max_retries: int = 25
    pole_threshold: float = 1e-9


DEFAULT_SAMPLER = SamplerConfig()


@dataclass(frozen=True)
class ZeroVerdict:
    tier: str
    max_abs_residual: float = 0.0
    witness: dict[str, float] | None = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.tier != NONZERO


def sample_points(names, sampler: SamplerConfig, rng=None) -> dict[str, np.ndarray]:
    rng = rng if rng is not None else np.random.default_rng(sampler.seed)
    return {n: rng.uniform(sampler.low, sampler.high, sampler.samples) for n in sorted(names)}


def evaluate_at_samples(e: Expr, sampler: SamplerConfig = DEFAULT_SAMPLER):
    """Evaluate at the seeded sample points, resampling points that hit poles.

    Returns ``(env, values)`` where ``env`` maps each free symbol to its
    sample array.
    """
    r = canonical(e)
    num, den = poly_to_expr(r.num), poly_to_expr(r.den)
    names = free_symbols(num) | free_symbols(den)
    rng = np.random.default_rng(sampler.seed)
    env = sample_points(names, sampler, rng)
    for _ in range(sampler.max_retries):
        d = np.broadcast_to(np.asarray(evaluate(den, env), dtype=float), (sampler.samples,))
        bad = ~np.isfinite(d) | (np.abs(d) < sampler.pole_threshold)
        if not bad.any():
            break
        k = int(bad.sum())
        for n in env:
            env[n] = env[n].copy()
            env[n][bad] = rng.uniform(sampler.low, sampler.high, k)
    else:
        raise PoleError(f"could not avoid poles of {e} after {sampler.max_retries} resamples")
    n = np.broadcast_to(np.asarray(evaluate(num, env), dtype=float), (sampler.samples,))
    return env, n / d


def expr_is_zero(e: Expr, sampler: SamplerConfig = DEFAULT_SAMPLER) -> ZeroVerdict:
    r = canonical(e)
    if r.is_zero():
        return ZeroVerdict(SYMBOLIC, 0.0)
    env, values = evaluate_at_samples(e, sampler)
    # residuals are scaled down by large canonical coefficients
    scale = max(1.0, float(max_coefficient(r)))
    resid = np.abs(values) / scale
    resid = np.where(np.isfinite(resid), resid, np.inf)
    k = int(np.argmax(resid))
    worst = float(resid[k])
    if worst <= sampler.tolerance:
        return ZeroVerdict(NUMERIC, worst)
    witness = {name: float(arr[k]) for name, arr in env.items()}
    return ZeroVerdict(NONZERO, worst, witness)
