"""Three-parameter Weibull densities and two-component Weibull mixtures.

Runs scored and runs allowed are each modelled as a convex combination of two
Weibulls sharing location ``beta`` and shape ``gamma``. Under that model the
probability that runs scored exceed runs allowed has a closed form (see
:func:`mixture_win_pct`).
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import ContractError, DomainError
from .special_fn import gamma_fn

#: Location used in every fitting path: integer scores sit at bin centres.
DEFAULT_BETA = -0.5


@dataclass(frozen=True)
class WeibullParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta}")


@dataclass(frozen=True)
class MixtureSide:
    """One side (scored or allowed) of the model: ``weight1`` is c1, c2 = 1 - c1."""

    alpha1: float
    alpha2: float
    weight1: float
    beta: float = DEFAULT_BETA
    gamma: float = 1.83

    def __post_init__(self):
        for name in ("alpha1", "alpha2"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive, got {v}")
        if not 0.0 <= self.weight1 <= 1.0:
            raise DomainError(f"weight1 must lie in [0, 1], got {self.weight1}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if not math.isfinite(self.beta):
            raise DomainError(f"beta must be finite, got {self.beta}")

    @property
    def weight2(self):
        return 1.0 - self.weight1

    @property
    def components(self):
        return (
            WeibullParams(self.alpha1, self.beta, self.gamma),
            WeibullParams(self.alpha2, self.beta, self.gamma),
        )

    @classmethod
    def single(cls, alpha, beta=DEFAULT_BETA, gamma=1.83):
        """Degenerate side with all weight on one Weibull."""
        return cls(alpha, alpha, 1.0, beta, gamma)

    def canonical(self):
        """Relabel components so that ``alpha1 >= alpha2``; the density is unchanged."""
        if self.alpha1 >= self.alpha2:
            return self
        return MixtureSide(self.alpha2, self.alpha1, 1.0 - self.weight1, self.beta, self.gamma)

    def to_dict(self):
        return {
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "weight1": self.weight1,
            "beta": self.beta,
            "gamma": self.gamma,
        }


@dataclass(frozen=True)
class MixtureParams:
    scored: MixtureSide
    allowed: MixtureSide

    def __post_init__(self):
        if self.scored.beta != self.allowed.beta:
            raise ContractError(
                f"scored and allowed sides must share beta "
                f"({self.scored.beta} != {self.allowed.beta})"
            )
        if self.scored.gamma != self.allowed.gamma:
            raise ContractError(
                f"scored and allowed sides must share gamma "
                f"({self.scored.gamma} != {self.allowed.gamma})"
            )

    @property
    def beta(self):
        return self.scored.beta

    @property
    def gamma(self):
        return self.scored.gamma

    @classmethod
    def from_vector(cls, alpha_rs1, alpha_rs2, alpha_ra1, alpha_ra2, gamma, c1, c1p,
                    beta=DEFAULT_BETA):
        return cls(
            MixtureSide(alpha_rs1, alpha_rs2, c1, beta, gamma),
            MixtureSide(alpha_ra1, alpha_ra2, c1p, beta, gamma),
        )

    def swapped(self):
        return MixtureParams(self.allowed, self.scored)

    def canonical(self):
        return MixtureParams(self.scored.canonical(), self.allowed.canonical())

    def to_dict(self):
        return {"scored": self.scored.to_dict(), "allowed": self.allowed.to_dict()}

    @classmethod
    def from_dict(cls, d):
        return cls(MixtureSide(**d["scored"]), MixtureSide(**d["allowed"]))


def weibull_pdf(p, x):
    """Weibull density; zero below the location ``p.beta``. Vectorised over ``x``."""
    x = np.asarray(x, dtype=float)
    z = (x - p.beta) / p.alpha
    inside = z >= 0
    zc = np.where(inside, z, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = (p.gamma / p.alpha) * zc ** (p.gamma - 1.0) * np.exp(-(zc ** p.gamma))
    out = np.where(inside, dens, 0.0)
    return out if out.ndim else float(out)


def weibull_cdf(p, x):
    x = np.asarray(x, dtype=float)
    z = np.maximum((x - p.beta) / p.alpha, 0.0)
    out = -np.expm1(-(z ** p.gamma))
    return out if out.ndim else float(out)


def mixture_pdf(side, x):
    c1 = side.weight1
    w1, w2 = side.components
    return c1 * weibull_pdf(w1, x) + (1.0 - c1) * weibull_pdf(w2, x)


def mixture_cdf(side, x):
    c1 = side.weight1
    w1, w2 = side.components
    return c1 * weibull_cdf(w1, x) + (1.0 - c1) * weibull_cdf(w2, x)


def bin_area(side, bin_low, bin_high):
    """Probability mass the mixture puts on ``[bin_low, bin_high)``; ``bin_high`` may be inf."""
    if not bin_low < bin_high:
        raise DomainError(f"bin bounds reversed or empty: [{bin_low}, {bin_high})")
    return mixture_cdf(side, bin_high) - mixture_cdf(side, bin_low)


def bin_areas(side, edges):
    """Masses of all consecutive bins delimited by ``edges``.

    The last edge may be ``inf``. Uses survival differences so tail bins keep
    full relative precision.
    """
    edges = np.asarray(edges, dtype=float)
    c1 = side.weight1
    z = np.maximum(edges - side.beta, 0.0)
    s1 = np.exp(-((z / side.alpha1) ** side.gamma))
    s2 = np.exp(-((z / side.alpha2) ** side.gamma))
    surv = c1 * s1 + (1.0 - c1) * s2
    return surv[:-1] - surv[1:]


def weibull_mean_var(p):
    """Mean ``alpha*G(1+1/g) + beta`` and variance ``alpha^2 (G(1+2/g) - G(1+1/g)^2)``."""
    g1 = gamma_fn(1.0 + 1.0 / p.gamma)
    g2 = gamma_fn(1.0 + 2.0 / p.gamma)
    mean = p.alpha * g1 + p.beta
    var = p.alpha ** 2 * g2 - p.alpha ** 2 * g1 ** 2
    return mean, var


def mixture_mean(side):
    g1 = gamma_fn(1.0 + 1.0 / side.gamma)
    c1 = side.weight1
    return c1 * (side.alpha1 * g1 + side.beta) + (1.0 - c1) * (side.alpha2 * g1 + side.beta)


def alpha_for_mean(mean, gamma, beta=DEFAULT_BETA):
    """Scale of the single Weibull whose mean is ``mean`` (the mean formula inverted)."""
    if not mean > beta:
        raise DomainError(f"mean {mean} must exceed the location {beta}")
    return (mean - beta) / gamma_fn(1.0 + 1.0 / gamma)


def mixture_win_pct(m):
    """Closed-form probability that runs scored exceed runs allowed.

    ``sum_ij c_i c'_j a_i^g / (a_i^g + b_j^g)`` over the scored scales ``a``
    and allowed scales ``b``. Independent of ``beta``.
    """
    if not isinstance(m, MixtureParams):
        raise ContractError("mixture_win_pct expects MixtureParams")
    g = m.gamma
    s, a = m.scored, m.allowed
    cs = (s.weight1, 1.0 - s.weight1)
    ca = (a.weight1, 1.0 - a.weight1)
    total = 0.0
    for ci, ai in zip(cs, (s.alpha1, s.alpha2)):
        if ci == 0.0:
            continue
        for cj, bj in zip(ca, (a.alpha1, a.alpha2)):
            if cj == 0.0:
                continue
            # ratio form a^g/(a^g+b^g) = 1/(1+(b/a)^g) avoids overflow for large g
            total += ci * cj / (1.0 + (bj / ai) ** g)
    return total


def single_win_pct(alpha_rs, alpha_ra, gamma):
    """Single-Weibull special case ``a^g / (a^g + b^g)``."""
    return 1.0 / (1.0 + (alpha_ra / alpha_rs) ** gamma)
