"""Closed-form bounds on the cumulative costs Gamma_k and the single costs gamma_k."""
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from config import MU2_REFERENCE, ZETA3

logger = logging.getLogger(__name__)


class BoundsError(ValueError):
    """Raised when a bound parameter is out of range."""
    pass


@dataclass(frozen=True)
class BoundsRow:
    k: int
    ell: int
    gamma_lower: float
    gamma_upper: float
    Gamma_lower: float
    Gamma_upper: float
    gamma_lower_sqrt: float
    gamma_upper_sqrt: float
    Gamma_bar: Optional[float] = None
    gamma_upper_from_bar: Optional[float] = None
    expected_W_lower: Optional[float] = None
    expected_W_upper: Optional[float] = None

    def is_consistent(self) -> bool:
        if self.gamma_lower > self.gamma_upper or self.Gamma_lower > self.Gamma_upper:
            return False
        if self.gamma_lower_sqrt > self.gamma_upper_sqrt:
            return False
        if self.Gamma_bar is not None and not self.Gamma_lower <= self.Gamma_bar <= self.Gamma_upper:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class BoundsTable:
    rows: List[BoundsRow] = field(default_factory=list)

    def row(self, k: int) -> BoundsRow:
        return self.rows[k - 1]


def default_ell(k: int) -> int:
    return math.ceil(math.sqrt(k))


def closed_bounds(
    k: int,
    ell: Optional[int] = None,
    n: Optional[int] = None,
    gamma_bar: Optional[float] = None,
) -> BoundsRow:
    """
    k^2 <= Gamma_k <= k^2 + k, and for 1 <= ell <= k

        2k + 1 - ell - k/ell  <=  gamma_k  <=  2k - 1 + ell + (k-1)/ell,

    with ell = ceil(sqrt k) by default. With n, also the exact-expectation
    bounds k^2 (n-1)/n <= E W_k <= k(k+1)(n-1)/n. With gamma_bar (the ODE
    bound on Gamma_k), gamma_k <= gamma_bar - (k-1)^2, tightened for k = 2 by
    gamma_1 = zeta(3).
    """
    if k < 1:
        raise BoundsError(f"k must be >= 1, got {k}")
    if ell is None:
        ell = default_ell(k)
    if not 1 <= ell <= k:
        raise BoundsError(f"ell must satisfy 1 <= ell <= k={k}, got {ell}")

    upper_from_bar = None
    if gamma_bar is not None:
        upper_from_bar = gamma_bar - (k - 1) ** 2
        if k == 2:
            upper_from_bar = min(upper_from_bar, gamma_bar - ZETA3)

    root = math.sqrt(k)
    return BoundsRow(
        k=k,
        ell=ell,
        gamma_lower=2 * k + 1 - ell - k / ell,
        gamma_upper=2 * k - 1 + ell + (k - 1) / ell,
        Gamma_lower=float(k * k),
        Gamma_upper=float(k * k + k),
        gamma_lower_sqrt=2 * k - 2 * root,
        gamma_upper_sqrt=2 * k + 2 * root,
        Gamma_bar=gamma_bar,
        gamma_upper_from_bar=upper_from_bar,
        expected_W_lower=None if n is None else k * k * (n - 1) / n,
        expected_W_upper=None if n is None else k * (k + 1) * (n - 1) / n,
    )


def build_bounds_table(K: int, gamma_bars: Optional[List[float]] = None, n: Optional[int] = None) -> BoundsTable:
    table = BoundsTable()
    for k in range(1, K + 1):
        bar = gamma_bars[k - 1] if gamma_bars is not None and k <= len(gamma_bars) else None
        row = closed_bounds(k, n=n, gamma_bar=bar)
        if not row.is_consistent():
            logger.warning(f"Bounds row k={k} is inconsistent: {row}")
        table.rows.append(row)
    return table


def conjecture_checks(gamma_bars: List[float], gammas: Optional[List[float]] = None) -> List[Dict[str, Any]]:
    """
    Per k: the observed gap Gamma_bar_k - k^2 (conjectured to stay below 1),
    the gamma_k window [2k-2, 2k] that follows from a gap of at most 1, and
    for k = 2 whether Gamma_bar_2 clears the reference value mu_2. With
    estimated gammas, also whether each lies in the conjectured band [2k-1, 2k].
    """
    out = []
    for k, bar in enumerate(gamma_bars, start=1):
        entry = {
            "k": k,
            "Gamma_bar": bar,
            "gap": float(bar - k * k),
            "gap_below_one": bool(bar - k * k <= 1.0),
            "implied_gamma_lower": 2 * k - 2,
            "implied_gamma_upper": 2 * k,
        }
        if k == 2:
            entry["above_mu2_reference"] = bool(bar > MU2_REFERENCE)
        if gammas is not None and k <= len(gammas):
            entry["gamma"] = gammas[k - 1]
            entry["gamma_in_band"] = bool(2 * k - 1 <= gammas[k - 1] <= 2 * k)
        out.append(entry)
    return out
