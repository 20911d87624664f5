"""Monte Carlo check of the closed-form win percentage.

Pairs ``(X, Y)`` are drawn from the scored and allowed mixtures by picking a
component with the mixture weights and inverting its CDF. The fraction with
``X > Y`` estimates the win probability; exact float ties count as losses.

Seed derivation: draws are produced in fixed-size chunks of ``CHUNK_SIZE``
pairs, chunk ``i`` using the ``i``-th child of ``SeedSequence(seed)`` with a
PCG64 generator. The estimate therefore depends only on ``seed`` and
``num_samples``, never on how chunks are spread over workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .weibull import MixtureParams

CHUNK_SIZE = 1 << 17
MIN_SAMPLES = 10_000


@dataclass(frozen=True)
class SimConfig:
    num_samples: int = 1_000_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.num_samples < MIN_SAMPLES:
            raise ValueError(f"num_samples must be at least {MIN_SAMPLES}")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class SimEstimate:
    p_win: float
    standard_error: float
    sample_mean_rs: float
    sample_mean_ra: float
    num_samples: int
    seed: int

    def within(self, value, n_se=3.0):
        return abs(self.p_win - value) <= n_se * self.standard_error


def sample_weibull(p, u):
    """Inverse-CDF draw ``beta + alpha * (-log(1 - u))**(1/gamma)``."""
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr <= 0) | (u_arr >= 1)) or not np.all(np.isfinite(u_arr)):
        raise DomainError("u must lie strictly inside (0, 1)")
    out = p.beta + p.alpha * (-np.log1p(-u_arr)) ** (1.0 / p.gamma)
    return out if out.ndim else float(out)


def sample_mixture(side, n, rng):
    """``n`` draws from a mixture side using generator ``rng``."""
    pick_first = rng.random(n) < side.weight1
    u = rng.random(n)
    alpha = np.where(pick_first, side.alpha1, side.alpha2)
    return side.beta + alpha * (-np.log1p(-u)) ** (1.0 / side.gamma)


def _chunk(m, seed_seq, n):
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    x = sample_mixture(m.scored, n, rng)
    y = sample_mixture(m.allowed, n, rng)
    return int(np.count_nonzero(x > y)), float(x.sum()), float(y.sum())


def estimate_win_pct(m, cfg=None):
    """Empirical ``P(X > Y)`` with its binomial standard error."""
    cfg = cfg or SimConfig()
    n = cfg.num_samples
    n_chunks = -(-n // CHUNK_SIZE)
    children = np.random.SeedSequence(cfg.seed).spawn(n_chunks)
    sizes = [CHUNK_SIZE] * (n_chunks - 1) + [n - CHUNK_SIZE * (n_chunks - 1)]
    jobs = list(zip(children, sizes))
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(lambda job: _chunk(m, *job), jobs))
    else:
        parts = [_chunk(m, s, k) for s, k in jobs]
    wins = sum(p[0] for p in parts)
    p_win = wins / n
    return SimEstimate(
        p_win=p_win,
        standard_error=math.sqrt(p_win * (1.0 - p_win) / n),
        sample_mean_rs=sum(p[1] for p in parts) / n,
        sample_mean_ra=sum(p[2] for p in parts) / n,
        num_samples=n,
        seed=cfg.seed,
    )


def draw_side(side, n, seed=0):
    """Convenience: ``n`` seeded draws from one mixture side."""
    return sample_mixture(side, n, np.random.default_rng(seed))


def random_mixture(rng, alpha_range=(1.0, 10.0), gamma_range=(0.8, 3.0)):
    """Random parameter set for oracle sweeps (weights uniform on [0, 1])."""
    a = rng.uniform(*alpha_range, size=4)
    g = float(rng.uniform(*gamma_range))
    c1, c1p = rng.uniform(0.0, 1.0, size=2)
    return MixtureParams.from_vector(*map(float, a), g, float(c1), float(c1p))
