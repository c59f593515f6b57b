"""Counting tables: N, pi, theta, psi with strict-inequality semantics.

``build_table`` materializes every generalized integer below a cutoff as a
value-sorted record array.  Rather than running the element heap, it uses an
equivalent vectorized two-phase generation: products over "small" primes
(value <= sqrt(x_max)) are grown prime by prime, then each "large" prime
extends them once — no element below the cutoff can contain two large prime
factors.  The arithmetic (left-to-right folds of prime logs in index order)
is bit-identical to the heap enumeration, which the tests verify.

All queries count strictly below x.  The von Mangoldt weight is a function
of the monoid element, not its numeric value: an element is weighted iff its
exponent map touches exactly one prime index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EnumerationCapError, InputError
from .semigroup import DEFAULT_CAP, _validate_enumeration_args
from .systems import PrimeSystem, log_cutoff

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(7)


@dataclass(frozen=True)
class CountingTable:
    """Value-sorted record of all elements below x_max, with prefix sums."""

    system: PrimeSystem
    x_max: float
    log_values: np.ndarray
    lambda_weights: np.ndarray
    is_prime: np.ndarray
    cum_lambda: np.ndarray = field(init=False, repr=False, compare=False)
    cum_prime: np.ndarray = field(init=False, repr=False, compare=False)
    cum_prime_log: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("log_values", "lambda_weights", "is_prime"):
            getattr(self, name).setflags(write=False)
        zero = np.zeros(1)
        cum = np.concatenate([zero, np.cumsum(self.lambda_weights)])
        cump = np.concatenate([zero, np.cumsum(self.is_prime.astype(float))])
        cumpl = np.concatenate(
            [zero, np.cumsum(np.where(self.is_prime, self.log_values, 0.0))]
        )
        for name, arr in (
            ("cum_lambda", cum),
            ("cum_prime", cump),
            ("cum_prime_log", cumpl),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return int(self.log_values.size)

    # -- queries ------------------------------------------------------------

    def _check_range(self, x: float) -> None:
        if not (1.0 <= x <= self.x_max):
            raise InputError(
                f"query x={x!r} outside [1, x_max={self.x_max!r}]"
            )

    def _index_below(self, x: float) -> int:
        """Number of entries with value strictly below x."""
        return int(np.searchsorted(self.log_values, log_cutoff(x), side="left"))

    def _indices_below(self, xs: np.ndarray) -> np.ndarray:
        logs = np.log(xs)
        keys = logs - 64 * 2.220446049250313e-16 * np.maximum(1.0, np.abs(logs))
        return np.searchsorted(self.log_values, keys, side="left")

    def N(self, x: float) -> int:
        """Count of generalized integers with value < x."""
        self._check_range(x)
        return self._index_below(x)

    def pi(self, x: float) -> int:
        """Count of generalized primes with value < x."""
        self._check_range(x)
        return int(self.cum_prime[self._index_below(x)])

    def theta(self, x: float) -> float:
        """Sum of log p over generalized primes p < x."""
        self._check_range(x)
        return float(self.cum_prime_log[self._index_below(x)])

    def psi(self, x: float) -> float:
        """Chebyshev function: sum of the von Mangoldt weights below x."""
        self._check_range(x)
        return float(self.cum_lambda[self._index_below(x)])

    # -- derived views used by the transform and diagnostic layers ----------

    def prime_power_logs(self) -> np.ndarray:
        """Sorted log-values of the weighted entries (prime powers)."""
        return self.log_values[self.lambda_weights > 0.0]

    def prime_power_weights(self) -> np.ndarray:
        return self.lambda_weights[self.lambda_weights > 0.0]

    def prime_logs(self) -> np.ndarray:
        """Sorted log-values of the prime entries."""
        return self.log_values[self.is_prime]

    def psi_ratio_ceiling(self) -> float:
        """Largest observed psi(x)/x over the top decade (or all) of the data.

        Used as the growth constant in transform tail bounds; 0 for systems
        with no weighted entries.
        """
        logs = self.prime_power_logs()
        if logs.size == 0:
            return 0.0
        cum = np.cumsum(self.prime_power_weights())
        lo = math.log(self.x_max) - math.log(10.0)
        sel = logs >= lo
        if not sel.any():
            sel = slice(None)
        ratios = cum[sel] * np.exp(-logs[sel])
        return float(np.max(ratios))


def build_table(
    system: PrimeSystem, x_max: float, cap: int = DEFAULT_CAP
) -> CountingTable:
    """Build the counting table of all elements with value < x_max."""
    _validate_enumeration_args(system, x_max)
    bound = log_cutoff(x_max)
    half_log = math.log(x_max) / 2.0
    logp = system.log_primes

    small_idx = np.flatnonzero(logp <= half_log)
    large_idx = np.flatnonzero(logp > half_log)

    # Phase 1: grow the sub-semigroup over small primes, ascending index.
    logs = np.zeros(1)
    lam = np.zeros(1)
    isp = np.zeros(1, dtype=bool)
    total = 1
    for i in small_idx:
        lpi = float(logp[i])
        cur = logs
        cur_from_unit = logs == 0.0
        depth = 0
        chunk_logs, chunk_lam, chunk_isp = [], [], []
        while cur.size:
            depth += 1
            ext = cur + lpi
            keep = ext < bound
            ext = ext[keep]
            if ext.size == 0:
                break
            cur_from_unit = cur_from_unit[keep]
            chunk_logs.append(ext)
            chunk_lam.append(np.where(cur_from_unit, lpi, 0.0))
            chunk_isp.append(cur_from_unit if depth == 1 else
                             np.zeros(ext.size, dtype=bool))
            total += ext.size
            if total > cap:
                raise EnumerationCapError(
                    f"table build exceeded the cap of {cap} elements"
                )
            cur = ext
        if chunk_logs:
            logs = np.concatenate([logs] + chunk_logs)
            lam = np.concatenate([lam] + chunk_lam)
            isp = np.concatenate([isp] + chunk_isp)

    order = np.argsort(logs, kind="stable")
    logs, lam, isp = logs[order], lam[order], isp[order]

    # Phase 2: extend by each large prime once (unit parent => prime entry).
    out_logs, out_lam, out_isp = [logs], [lam], [isp]
    for i in large_idx:
        lq = float(logp[i])
        k = int(np.searchsorted(logs, bound - lq + 1e-9, side="right"))
        if k == 0:
            continue
        ext = logs[:k] + lq
        keep = ext < bound
        ext = ext[keep]
        if ext.size == 0:
            continue
        parents_unit = (logs[:k] == 0.0)[keep]
        out_logs.append(ext)
        out_lam.append(np.where(parents_unit, lq, 0.0))
        out_isp.append(parents_unit)
        total += ext.size
        if total > cap:
            raise EnumerationCapError(
                f"table build exceeded the cap of {cap} elements"
            )

    logs = np.concatenate(out_logs)
    lam = np.concatenate(out_lam)
    isp = np.concatenate(out_isp)
    order = np.argsort(logs, kind="stable")
    return CountingTable(
        system=system,
        x_max=float(x_max),
        log_values=logs[order],
        lambda_weights=lam[order],
        is_prime=isp[order],
    )


# -- analytic identities on a table ------------------------------------------


def psi_from_theta(table: CountingTable, x: float) -> float:
    """Reconstruct psi(x) as the sum of theta(x**(1/m)) over m >= 1.

    The sum truncates once x**(1/m) drops to the smallest prime, where
    theta vanishes.
    """
    table._check_range(x)
    if len(table.system) == 0:
        return 0.0
    p1 = float(table.system.primes[0])
    log_x = math.log(x)
    total = 0.0
    m = 1
    while True:
        root = math.exp(log_x / m)
        if root <= p1:
            break
        total += table.theta(root)
        m += 1
    return total


def pi_from_theta(table: CountingTable, x: float) -> float:
    """Reconstruct pi(x) from theta by partial summation.

    pi(x) = theta(x)/log(x) + integral over [p1, x] of theta(t)/(t log^2 t).
    theta is constant between primes, so the integral is evaluated by
    fixed-order Gauss panels within each inter-prime gap (log-domain panels
    of width <= 0.25 keep the rule far below the comparison tolerance).
    """
    table._check_range(x)
    prime_logs = table.prime_logs()
    if prime_logs.size == 0:
        return 0.0
    if x <= math.exp(prime_logs[0]):
        raise InputError("partial-summation reconstruction needs x > p1")
    log_x = math.log(x)
    head = table.theta(x) / log_x
    in_range = prime_logs[prime_logs < log_x]
    if in_range.size == 0:
        return head
    # integrand in w = log t: theta(e^w) / w^2, piecewise constant theta
    w_nodes = np.concatenate([in_range, [log_x]])
    theta_left = np.cumsum(in_range)  # theta just above each prime is cum log p
    gaps_lo, gaps_hi = w_nodes[:-1], w_nodes[1:]
    widths = gaps_hi - gaps_lo
    target = np.minimum(0.25, np.maximum(gaps_lo / 2.0, 1e-3))
    n_panels = np.maximum(1, np.ceil(widths / target).astype(int))
    gap_index = np.repeat(np.arange(widths.size), n_panels)
    offsets = np.concatenate([np.arange(k) for k in n_panels])
    panel_width = widths[gap_index] / n_panels[gap_index]
    panel_lo = gaps_lo[gap_index] + offsets * panel_width
    half = 0.5 * panel_width
    mids = panel_lo + half
    nodes = mids[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.sum(_GL_WEIGHTS[None, :] / nodes**2, axis=1) * half
    integral = float(np.sum(vals * theta_left[gap_index]))
    return head + integral


# -- CSV export ---------------------------------------------------------------


def counting_csv(table: CountingTable, grid: np.ndarray) -> str:
    """CSV of value,N,pi,theta,psi on a grid, 12 significant digits."""
    grid = np.asarray(grid, dtype=float)
    if grid.size and (grid.min() < 1.0 or grid.max() > table.x_max):
        raise InputError("grid must lie within [1, x_max]")
    idx = table._indices_below(grid)
    lines = ["value,N,pi,theta,psi"]
    for x, i in zip(grid, idx):
        lines.append(
            "%.12g,%d,%d,%.12g,%.12g"
            % (
                x,
                i,
                int(table.cum_prime[i]),
                table.cum_prime_log[i],
                table.cum_lambda[i],
            )
        )
    return "\n".join(lines) + "\n"
