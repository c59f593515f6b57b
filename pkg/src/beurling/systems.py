"""Generalized prime systems and the prime-list file format.

A system is a finite nondecreasing sequence of real primes, each > 1.  It
either *is* the whole system (``complete_below = inf``, e.g. an explicit
list) or is the stored prefix of a conceptually infinite one, complete for
values below ``complete_below`` (e.g. rational primes below 10**6).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PrimeFileError

# Relative half-width of the boundary band used when comparing log-values
# against a cutoff.  Element log-values are floating-point folds of prime
# logs and can land a few ulps on either side of log(x) when the element's
# true value equals x exactly; the band resolves strict "< x" the way exact
# real arithmetic would.  64 ulps covers folds of ~40 terms with room.
BOUNDARY_RTOL = 64 * 2.220446049250313e-16


def log_cutoff(x: float) -> float:
    """Exclusive upper bound in log-space for 'value strictly below x'."""
    lx = math.log(x)
    return lx - BOUNDARY_RTOL * max(1.0, abs(lx))


@dataclass(frozen=True)
class PrimeSystem:
    """An immutable generalized prime system.

    primes: nondecreasing float array, every entry > 1 (repeats allowed).
    label: short identifier used in reports and file headers.
    source: provenance string, e.g. "catalog:classical(x_max=1000000)".
    complete_below: the sequence is known to contain every system prime
        below this value; ``inf`` means the stored list is the entire
        system (finitely generated semigroup).
    """

    primes: np.ndarray
    label: str = "unnamed"
    source: str = "explicit"
    complete_below: float = math.inf
    log_primes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.primes, dtype=float)
        if arr.ndim != 1:
            raise InputError("primes must be a one-dimensional sequence")
        if arr.size:
            if not np.all(np.isfinite(arr)):
                raise InputError("primes must be finite")
            if arr[0] <= 1.0:
                raise InputError(f"prime at index 0 is {arr[0]!r}, must be > 1")
            bad = np.flatnonzero(arr[1:] < arr[:-1])
            if bad.size:
                i = int(bad[0]) + 1
                raise InputError(
                    f"primes must be nondecreasing: index {i} holds "
                    f"{arr[i]!r} after {arr[i - 1]!r}"
                )
        arr = arr.copy()
        arr.setflags(write=False)
        logs = np.log(arr)
        logs.setflags(write=False)
        object.__setattr__(self, "primes", arr)
        object.__setattr__(self, "log_primes", logs)

    def __len__(self) -> int:
        return int(self.primes.size)

    def covers(self, x_max: float) -> bool:
        """True if every system prime below x_max is stored."""
        return x_max <= self.complete_below


def load_prime_file(path, label: str | None = None) -> PrimeSystem:
    """Read a prime-list file: one decimal per line, '#' comments, blanks ok.

    The file is taken to list the entire system (complete_below = inf).
    Raises PrimeFileError with a line number on malformed content and
    InputError on ordering/value violations.
    """
    values = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise PrimeFileError(f"cannot read {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            value = float(text)
        except ValueError:
            raise PrimeFileError(f"not a decimal literal: {text!r}", lineno) from None
        if not math.isfinite(value):
            raise PrimeFileError(f"non-finite value: {text!r}", lineno)
        values.append(value)
    name = label if label is not None else str(path)
    return PrimeSystem(np.array(values, dtype=float), label=name, source=f"file:{path}")


def write_prime_file(system: PrimeSystem, path) -> None:
    """Write a system to the prime-list format with a provenance header."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# label: {system.label}\n")
        fh.write(f"# source: {system.source}\n")
        for p in system.primes:
            fh.write(f"{float(p)!r}\n")
