"""Timing the permanent algorithms against each other.

The permanent is #P-hard; all five implementations here are
exponential, but their constants differ a lot. The Gray-code variants
update one row sum per term instead of rebuilding it, and the Glynn
family halves the term count, which is why the dispatcher switches
from Ryser+Gray to Glynn+Gray at n = 6.
"""

from photonwalk import bench_permanents, dispatch_algorithm


def main():
    report = bench_permanents(range(2, 13), trials=3, seed=2026)

    by_n = {}
    for entry in report.entries:
        by_n.setdefault(entry.n, {})[entry.algorithm] = entry.median_ns

    algorithms = ["naive", "ryser", "ryser-gray", "glynn", "glynn-gray"]
    header = "n    " + "".join(f"{a:>12s}" for a in algorithms) + "   dispatch"
    print(header)
    for n in sorted(by_n):
        cells = ""
        for a in algorithms:
            ns = by_n[n].get(a)
            cells += f"{ns / 1e3:11.1f}u" if ns is not None else f"{'-':>12s}"
        print(f"{n:<4d} {cells}   {dispatch_algorithm(n)}")

    print("\nmedian wall time per evaluation (microseconds); the naive")
    print("factorial-time kernel drops out above n = 10.")


if __name__ == "__main__":
    main()
