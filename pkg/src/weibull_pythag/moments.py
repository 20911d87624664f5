"""Moment expressions for a two-component Weibull mixture.

These are evaluated exactly as they were published for the method-of-moments
attempt: the first line is the mixture mean, but the higher lines are not
the raw or central moments of the mixture (the third is a standardised
skewness form; the fourth mixes dimensioned and dimensionless terms). They
are kept as diagnostics only. :func:`mixture_raw_moments` gives the true raw
moments for comparison.
"""

from collections import namedtuple
from math import comb

import numpy as np

from .errors import DomainError
from .special_fn import gamma_fn

Moments = namedtuple("Moments", ["m1", "m2", "m3", "m4"])


def _g(gamma, i):
    return gamma_fn(1.0 + i / gamma)


def mixture_moments(side):
    """Published four-moment expressions for one mixture side."""
    gamma = side.gamma
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    c1 = side.weight1
    c2 = 1.0 - c1
    a1, a2, beta = side.alpha1, side.alpha2, side.beta
    g1, g2, g3, g4 = (_g(gamma, i) for i in (1, 2, 3, 4))
    spread = g2 - g1 ** 2

    m1 = c1 * (a1 * g1 + beta) + c2 * (a2 * g1 + beta)
    m2 = c1 ** 2 * (a1 ** 2 * spread) + c2 ** 2 * (a2 ** 2 * spread)
    m3 = (c1 ** 3 + c2 ** 3) * (g3 - 3 * g1 * g2 + 2 * g1 ** 3) / spread ** 1.5
    m4 = (
        (c1 ** 4 + c2 ** 4) * (g4 - 4 * g1 * g3 + 6 * g2 * g1 ** 2 - 3 * g1 ** 4) / spread ** 2
        + 6 * c1 ** 2 * c2 ** 2 * (a1 ** 2 * a2 ** 2 * spread ** 2)
    )
    return Moments(m1, m2, m3, m4)


def mixture_raw_moments(side, order=4):
    """Raw moments E[X^k], k = 1..order, of the mixture (binomial expansion in beta)."""
    out = []
    for k in range(1, order + 1):
        total = 0.0
        for c, a in ((side.weight1, side.alpha1), (1.0 - side.weight1, side.alpha2)):
            # E[(beta + a W)^k] with W standard Weibull of shape gamma
            comp = sum(
                comb(k, j) * side.beta ** (k - j) * a ** j * _g(side.gamma, j)
                for j in range(k + 1)
            )
            total += c * comp
        out.append(total)
    return tuple(out)


def moment_diagnostics(side, samples):
    """Compare the published expressions and true raw moments against a sample.

    Returns a dict with one entry per order holding the published value, the
    exact raw moment, and the sample raw moment. Disagreement of the published
    lines with the sample is expected and reported, not corrected.
    """
    x = np.asarray(samples, dtype=float)
    published = mixture_moments(side)
    raw = mixture_raw_moments(side)
    report = {}
    for k in range(1, 5):
        report[f"m{k}"] = {
            "published": published[k - 1],
            "raw_exact": raw[k - 1],
            "raw_sample": float(np.mean(x ** k)),
        }
    return report
