import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


@dataclass
class AggregateStats:
    """Per-level mean and standard error of gamma_hat over completed runs."""

    K: int
    means: List[Optional[float]] = field(default_factory=list)
    stderrs: List[Optional[float]] = field(default_factory=list)
    completed: List[int] = field(default_factory=list)
    censored: List[int] = field(default_factory=list)
    failed_seeds: int = 0

    @classmethod
    def from_payloads(cls, K: int, payloads: List[Dict[str, Any]], failed_seeds: int = 0) -> "AggregateStats":
        stats = cls(K=K, failed_seeds=failed_seeds)
        for k in range(1, K + 1):
            values = []
            censored = 0
            for payload in payloads:
                level = payload["levels"][k - 1]
                if level["completed"]:
                    values.append(level["gamma_hat"])
                else:
                    censored += 1
            mean, stderr = mean_stderr(values)
            stats.means.append(mean)
            stats.stderrs.append(stderr)
            stats.completed.append(len(values))
            stats.censored.append(censored)
        return stats

    def gamma_minus_2km1(self) -> List[Optional[float]]:
        return [None if m is None else m - (2 * k - 1) for k, m in enumerate(self.means, start=1)]

    def rows(self) -> List[Dict[str, Any]]:
        offsets = self.gamma_minus_2km1()
        return [
            {
                "k": k,
                "mean": self.means[k - 1],
                "stderr": self.stderrs[k - 1],
                "completed": self.completed[k - 1],
                "censored": self.censored[k - 1],
                "mean_minus_2km1": offsets[k - 1],
            }
            for k in range(1, self.K + 1)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {"K": self.K, "failed_seeds": self.failed_seeds, "levels": self.rows()}


def mean_stderr(values: List[float]):
    """Mean and sample-stddev / sqrt(count); the error is None below two samples."""
    if not values:
        return None, None
    data = np.asarray(values, dtype=np.float64)
    mean = float(data.mean())
    if data.size < 2:
        return mean, None
    return mean, float(data.std(ddof=1) / math.sqrt(data.size))
