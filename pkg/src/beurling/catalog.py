"""Built-in prime systems: classical integers, toy systems, random models.

The random model draws primes from an inhomogeneous Poisson process on
(e, x_max) with intensity 1/log t, the standard way to get a random system
whose counting functions mimic classical growth (positive density, li-like
prime counts).  ``perturbed_classical`` deletes classical primes
independently, degrading the density smoothly; its density has no known
closed form, so reports must estimate it rather than declare it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .systems import PrimeSystem

_KINDS = ("classical", "single", "explicit", "random_logintegral", "perturbed_classical")


@dataclass(frozen=True)
class SystemRecipe:
    """Parameters for a catalog system; random recipes reproduce from seed."""

    kind: str
    p: float | None = None
    primes: tuple[float, ...] | None = None
    x_max: float | None = None
    seed: int | None = None
    deletion_rate: float | None = None
    label: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InputError(f"unknown recipe kind {self.kind!r}; choose from {_KINDS}")

    def describe(self) -> str:
        parts = []
        if self.p is not None:
            parts.append(f"p={self.p!r}")
        if self.primes is not None:
            parts.append(f"primes={list(self.primes)!r}")
        if self.x_max is not None:
            parts.append(f"x_max={self.x_max!r}")
        if self.seed is not None:
            parts.append(f"seed={self.seed!r}")
        if self.deletion_rate is not None:
            parts.append(f"deletion_rate={self.deletion_rate!r}")
        return f"{self.kind}({', '.join(parts)})"


def sieve_primes(x_max: float) -> np.ndarray:
    """Rational primes strictly below x_max, by sieve of Eratosthenes."""
    n = int(math.ceil(x_max)) - 1  # largest integer < x_max
    if n < 2:
        return np.array([], dtype=float)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(float)


def _sample_log_intensity(rng: np.random.Generator, x_max: float) -> np.ndarray:
    """Poisson process on (e, x_max) with intensity 1/log t, by thinning.

    Piecewise-constant envelope on geometric blocks; the intensity is
    decreasing, so the block's left endpoint dominates it.
    """
    points = []
    lo = math.e
    ratio = 1.25
    while lo < x_max:
        hi = min(lo * ratio, x_max)
        envelope = 1.0 / math.log(lo)
        n = rng.poisson(envelope * (hi - lo))
        if n:
            xs = rng.uniform(lo, hi, size=n)
            accept = rng.random(n) <= (1.0 / np.log(xs)) / envelope
            points.append(xs[accept])
        lo = hi
    if not points:
        return np.array([], dtype=float)
    out = np.concatenate(points)
    out.sort()
    return out


def expected_random_count(x_max: float) -> float:
    """Mean number of primes the random model puts in (e, x_max)."""
    from scipy.integrate import quad

    value, _ = quad(lambda t: 1.0 / math.log(t), math.e, x_max, limit=200)
    return value


def make_system(recipe: SystemRecipe) -> PrimeSystem:
    """Construct the PrimeSystem a recipe describes."""
    kind = recipe.kind
    label = recipe.label or kind

    if kind == "classical":
        x_max = _require_x_max(recipe)
        return PrimeSystem(
            sieve_primes(x_max),
            label=label,
            source=f"catalog:{recipe.describe()}",
            complete_below=x_max,
        )

    if kind == "single":
        if recipe.p is None or not recipe.p > 1.0:
            raise InputError("single recipe needs p > 1")
        return PrimeSystem(
            np.array([recipe.p], dtype=float),
            label=label,
            source=f"catalog:{recipe.describe()}",
        )

    if kind == "explicit":
        if recipe.primes is None:
            raise InputError("explicit recipe needs a primes tuple")
        return PrimeSystem(
            np.array(recipe.primes, dtype=float),
            label=label,
            source=f"catalog:{recipe.describe()}",
        )

    if kind == "random_logintegral":
        x_max = _require_x_max(recipe)
        if recipe.seed is None:
            raise InputError("random_logintegral recipe needs a seed")
        rng = np.random.default_rng(recipe.seed)
        primes = _sample_log_intensity(rng, x_max)
        return PrimeSystem(
            primes,
            label=label,
            source=f"catalog:{recipe.describe()}",
            complete_below=x_max,
        )

    if kind == "perturbed_classical":
        x_max = _require_x_max(recipe)
        rate = recipe.deletion_rate
        if rate is None or not 0.0 <= rate <= 1.0:
            raise InputError("perturbed_classical needs deletion_rate in [0, 1]")
        if recipe.seed is None:
            raise InputError("perturbed_classical recipe needs a seed")
        base = sieve_primes(x_max)
        rng = np.random.default_rng(recipe.seed)
        keep = rng.random(base.size) >= rate
        return PrimeSystem(
            base[keep],
            label=label,
            source=f"catalog:{recipe.describe()}",
            complete_below=x_max,
        )

    raise InputError(f"unhandled recipe kind {kind!r}")


def _require_x_max(recipe: SystemRecipe) -> float:
    if recipe.x_max is None or not recipe.x_max > 2.0:
        raise InputError(f"{recipe.kind} recipe needs x_max > 2")
    return float(recipe.x_max)
