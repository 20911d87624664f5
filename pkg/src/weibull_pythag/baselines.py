"""Closed-form Pythagorean predictors used as comparison baselines."""

from dataclasses import dataclass

from .errors import DomainError
from .weibull import DEFAULT_BETA

JAMES_EXPONENT = 2.0
PYTHWL_EXPONENT = 1.83


@dataclass(frozen=True)
class BaselineKind:
    """A named fixed-exponent predictor: ``james2``, ``pythwl183`` or ``custom``."""

    name: str
    exponent: float

    def __post_init__(self):
        if not self.exponent > 0:
            raise DomainError(f"exponent must be positive, got {self.exponent}")

    @classmethod
    def james2(cls):
        return cls("james2", JAMES_EXPONENT)

    @classmethod
    def pythwl183(cls):
        return cls("pythwl183", PYTHWL_EXPONENT)

    @classmethod
    def custom(cls, exponent):
        return cls(f"custom_{exponent:g}", exponent)

    def win_pct(self, rs_total, ra_total):
        return pyth_wl(rs_total, ra_total, self.exponent)


def pyth_wl(rs_total, ra_total, exponent=PYTHWL_EXPONENT):
    """``rs^e / (rs^e + ra^e)`` from season run totals."""
    if not (rs_total > 0 and ra_total > 0):
        raise DomainError(f"run totals must be positive, got {rs_total}, {ra_total}")
    if not exponent > 0:
        raise DomainError(f"exponent must be positive, got {exponent}")
    return 1.0 / (1.0 + (ra_total / rs_total) ** exponent)


def predicted_wins(win_pct, games):
    if games <= 0:
        raise DomainError(f"games must be positive, got {games}")
    return win_pct * games


def shifted_pythagorean(rs_mean, ra_mean, gamma, beta=DEFAULT_BETA):
    """Mean-matched single-Weibull prediction ``(RS-b)^g / ((RS-b)^g + (RA-b)^g)``."""
    return pyth_wl(rs_mean - beta, ra_mean - beta, gamma)

