"""Matrix permanent and determinant kernels.

Per(M) = sum over permutations sigma of prod_i M[i, sigma(i)] has no
sign alternation, which makes it #P-hard; everything here is exact
exponential-time evaluation, engineered for the n <= 16 orders that
multi-photon distributions need:

* naive permutation sum, kept as the n <= 10 oracle,
* Ryser inclusion-exclusion over subsets,
* Glynn polarization over half the sign vectors,
* Gray-code variants of both that update the running column sums with a
  single row add/subtract per step (O(2^n * n) instead of O(2^n * n^2)),
* a dispatcher that routes small orders to Ryser+Gray and the rest to
  Glynn+Gray.

All accumulations use compensated (Kahan) summation: the subset sums
alternate in sign and cancellation otherwise eats the last digits long
before n reaches 16. Kernels are JIT-compiled when numba is available
and run as plain Python otherwise, at identical precision.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SimulationError

try:
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if args and callable(args[0]):
            return args[0]
        return wrap


NAIVE_CEILING = 10
EXACT_CEILING = 30

# Orders below this go to Ryser+Gray, the rest to Glynn+Gray. The
# crossover is machine-dependent; this default follows the half-subset
# advantage Glynn gains once matrices stop being tiny.
DISPATCH_THRESHOLD = 6


@njit(cache=True)
def _kahan_add(total, comp, term):
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


@njit(cache=True)
def _naive_kernel(m):
    # Heap's algorithm enumerates permutations with one transposition per
    # step; each permutation contributes prod_i M[i, perm[i]].
    n = m.shape[0]
    perm = np.arange(n)
    counters = np.zeros(n, dtype=np.int64)
    prod = 1.0 + 0j
    for k in range(n):
        prod *= m[k, perm[k]]
    total = prod
    comp = 0j
    i = 0
    while i < n:
        if counters[i] < i:
            if i % 2 == 0:
                tmp = perm[0]
                perm[0] = perm[i]
                perm[i] = tmp
            else:
                tmp = perm[counters[i]]
                perm[counters[i]] = perm[i]
                perm[i] = tmp
            prod = 1.0 + 0j
            for k in range(n):
                prod *= m[k, perm[k]]
            total, comp = _kahan_add(total, comp, prod)
            counters[i] += 1
            i = 0
        else:
            counters[i] = 0
            i += 1
    return total


@njit(cache=True)
def _ryser_kernel(m):
    # Per(M) = (-1)^n sum over eps in {0,1}^n of (-1)^{sum eps}
    #          prod_k sum_j eps_j M[j,k]; the empty subset contributes 0.
    n = m.shape[0]
    total = 0j
    comp = 0j
    for s in range(1, 1 << n):
        prod = 1.0 + 0j
        for k in range(n):
            lam = 0j
            for j in range(n):
                if (s >> j) & 1:
                    lam += m[j, k]
            prod *= lam
        bits = 0
        ss = s
        while ss:
            bits += ss & 1
            ss >>= 1
        if bits % 2 == 1:
            prod = -prod
        total, comp = _kahan_add(total, comp, prod)
    if n % 2 == 1:
        total = -total
    return total


@njit(cache=True)
def _ryser_gray_kernel(m):
    # Same sum, subsets visited in binary-reflected Gray order so that
    # exactly one row enters or leaves the column sums per step.
    n = m.shape[0]
    lam = np.zeros(n, dtype=np.complex128)
    total = 0j
    comp = 0j
    sign = 1.0
    gray = 0
    terms = 0
    for t in range(1, 1 << n):
        new_gray = t ^ (t >> 1)
        flipped = new_gray ^ gray
        j = 0
        tt = t
        while tt & 1 == 0:
            j += 1
            tt >>= 1
        if new_gray & flipped:
            for k in range(n):
                lam[k] += m[j, k]
        else:
            for k in range(n):
                lam[k] -= m[j, k]
        gray = new_gray
        sign = -sign  # popcount parity alternates every Gray step
        prod = 1.0 + 0j
        for k in range(n):
            prod *= lam[k]
        total, comp = _kahan_add(total, comp, sign * prod)
        terms += 1
    if n % 2 == 1:
        total = -total
    return total, terms


@njit(cache=True)
def _glynn_kernel(m):
    # Per(M) = 2^{1-n} sum over delta in {+-1}^n, delta_1 fixed to +1, of
    #          (prod_i delta_i) prod_k sum_j delta_j M[j,k].
    n = m.shape[0]
    total = 0j
    comp = 0j
    for s in range(1 << (n - 1)):
        prod = 1.0 + 0j
        for k in range(n):
            lam = m[0, k]
            for j in range(1, n):
                if (s >> (j - 1)) & 1:
                    lam -= m[j, k]
                else:
                    lam += m[j, k]
            prod *= lam
        bits = 0
        ss = s
        while ss:
            bits += ss & 1
            ss >>= 1
        if bits % 2 == 1:
            prod = -prod
        total, comp = _kahan_add(total, comp, prod)
    return total * 2.0 ** (1 - n)


@njit(cache=True)
def _glynn_gray_kernel(m):
    # Gray-code walk over the n-1 free delta entries; a sign flip on row j
    # moves the column sums by -+2 * row j.
    n = m.shape[0]
    lam = np.zeros(n, dtype=np.complex128)
    for k in range(n):
        acc = 0j
        for j in range(n):
            acc += m[j, k]
        lam[k] = acc
    prod = 1.0 + 0j
    for k in range(n):
        prod *= lam[k]
    total = prod
    comp = 0j
    sign = 1.0
    gray = 0
    terms = 1
    for t in range(1, 1 << (n - 1)):
        new_gray = t ^ (t >> 1)
        flipped = new_gray ^ gray
        j = 0
        tt = t
        while tt & 1 == 0:
            j += 1
            tt >>= 1
        row = j + 1  # delta_1 stays fixed; bit j drives row j+1
        if new_gray & flipped:
            for k in range(n):
                lam[k] -= 2.0 * m[row, k]
        else:
            for k in range(n):
                lam[k] += 2.0 * m[row, k]
        gray = new_gray
        sign = -sign
        prod = 1.0 + 0j
        for k in range(n):
            prod *= lam[k]
        total, comp = _kahan_add(total, comp, sign * prod)
        terms += 1
    return total * 2.0 ** (1 - n), terms


@njit(cache=True)
def _det_kernel(m):
    # Gaussian elimination with partial pivoting; each row swap flips the
    # sign exactly once.
    n = m.shape[0]
    a = m.copy()
    det = 1.0 + 0j
    for col in range(n):
        piv = col
        big = abs(a[col, col])
        for r in range(col + 1, n):
            mag = abs(a[r, col])
            if mag > big:
                big = mag
                piv = r
        if big == 0.0:
            return 0j
        if piv != col:
            for k in range(col, n):
                tmp = a[piv, k]
                a[piv, k] = a[col, k]
                a[col, k] = tmp
            det = -det
        det *= a[col, col]
        inv = 1.0 / a[col, col]
        for r in range(col + 1, n):
            factor = a[r, col] * inv
            if factor != 0j:
                for k in range(col + 1, n):
                    a[r, k] -= factor * a[col, k]
    return det


def _as_square(m, ceiling: int, what: str) -> np.ndarray:
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SimulationError(f"{what} needs a square matrix of order >= 1")
    if not np.all(np.isfinite(a)):
        raise SimulationError(f"{what} requires finite entries")
    if a.shape[0] > ceiling:
        raise SimulationError(
            f"{what} refuses order {a.shape[0]} (ceiling {ceiling})"
        )
    return a


def permanent_naive(m) -> complex:
    """Permutation-sum permanent; the oracle for everything else (n <= 10)."""
    return complex(_naive_kernel(_as_square(m, NAIVE_CEILING, "naive permanent")))


def permanent_ryser(m) -> complex:
    return complex(_ryser_kernel(_as_square(m, EXACT_CEILING, "Ryser permanent")))


def permanent_ryser_gray(m) -> complex:
    value, _ = _ryser_gray_kernel(_as_square(m, EXACT_CEILING, "Ryser permanent"))
    return complex(value)


def permanent_glynn(m) -> complex:
    return complex(_glynn_kernel(_as_square(m, EXACT_CEILING, "Glynn permanent")))


def permanent_glynn_gray(m) -> complex:
    value, _ = _glynn_gray_kernel(_as_square(m, EXACT_CEILING, "Glynn permanent"))
    return complex(value)


def dispatch_algorithm(n: int) -> str:
    """Name of the routine the dispatcher picks for order n."""
    return "ryser-gray" if n < DISPATCH_THRESHOLD else "glynn-gray"


def permanent(m) -> complex:
    """Mixed dispatcher: Ryser+Gray below the threshold, Glynn+Gray above."""
    a = _as_square(m, EXACT_CEILING, "permanent")
    if a.shape[0] < DISPATCH_THRESHOLD:
        value, _ = _ryser_gray_kernel(a)
    else:
        value, _ = _glynn_gray_kernel(a)
    return complex(value)


@dataclass(frozen=True)
class PermanentResult:
    """Value plus instrumentation: which routine ran, how many Gray terms."""

    value: complex
    algorithm: str
    terms: int | None


def permanent_with_stats(m, algorithm: str | None = None) -> PermanentResult:
    """Evaluate with an explicit routine (or the dispatcher's pick) and
    report the routine name and, for Gray variants, the term count."""
    a = _as_square(m, EXACT_CEILING, "permanent")
    name = algorithm if algorithm is not None else dispatch_algorithm(a.shape[0])
    if name == "naive":
        return PermanentResult(permanent_naive(a), name, None)
    if name == "ryser":
        return PermanentResult(complex(_ryser_kernel(a)), name, None)
    if name == "ryser-gray":
        value, terms = _ryser_gray_kernel(a)
        return PermanentResult(complex(value), name, int(terms))
    if name == "glynn":
        return PermanentResult(complex(_glynn_kernel(a)), name, None)
    if name == "glynn-gray":
        value, terms = _glynn_gray_kernel(a)
        return PermanentResult(complex(value), name, int(terms))
    raise SimulationError(f"unknown permanent algorithm {name!r}")


def determinant(m) -> complex:
    """Determinant by partial-pivot elimination; singular inputs give 0."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise SimulationError("determinant needs a square matrix of order >= 1")
    if not np.all(np.isfinite(a)):
        raise SimulationError("determinant requires finite entries")
    return complex(_det_kernel(a))


ALGORITHMS: dict[str, Callable[[np.ndarray], complex]] = {
    "naive": permanent_naive,
    "ryser": permanent_ryser,
    "ryser-gray": permanent_ryser_gray,
    "glynn": permanent_glynn,
    "glynn-gray": permanent_glynn_gray,
}


@dataclass(frozen=True)
class BenchEntry:
    algorithm: str
    n: int
    median_ns: int
    relative_error_vs_dispatcher: float


@dataclass(frozen=True)
class BenchReport:
    entries: list[BenchEntry]

    def rows(self) -> list[tuple[str, int, int, float]]:
        return [
            (e.algorithm, e.n, e.median_ns, e.relative_error_vs_dispatcher)
            for e in self.entries
        ]


def bench_permanents(n_range, trials: int = 5, seed: int = 2026) -> BenchReport:
    """Median wall time per algorithm per order on one random matrix each.

    Every timed value is checked against the dispatcher's result; the
    naive routine is skipped beyond its ceiling. Measurements run the
    kernel once per trial on a single thread (the Gray recurrences are
    sequential by nature).
    """
    ns = sorted({int(n) for n in n_range})
    if not ns or ns[0] < 1 or ns[-1] > EXACT_CEILING:
        raise SimulationError(f"bench orders must lie in 1..{EXACT_CEILING}")
    if trials < 1:
        raise SimulationError("bench needs at least one trial")
    rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence(seed)))
    entries: list[BenchEntry] = []
    for n in ns:
        matrix = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        reference = permanent(matrix)
        ref_mag = abs(reference)
        for name, func in ALGORITHMS.items():
            if name == "naive" and n > NAIVE_CEILING:
                continue
            value = func(matrix)  # warm-up; also JIT-compiles on first use
            rel = abs(value - reference) / ref_mag if ref_mag else abs(value - reference)
            if rel > 1e-9:
                raise SimulationError(
                    f"{name} disagrees with dispatcher at n={n}: rel err {rel:.3e}"
                )
            times = []
            for _ in range(trials):
                t0 = time.perf_counter_ns()
                func(matrix)
                t1 = time.perf_counter_ns()
                times.append(t1 - t0)
            entries.append(
                BenchEntry(
                    algorithm=name,
                    n=n,
                    median_ns=int(np.median(times)),
                    relative_error_vs_dispatcher=rel,
                )
            )
    return BenchReport(entries=entries)
