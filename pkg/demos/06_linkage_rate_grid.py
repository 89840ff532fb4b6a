"""Reproduce a linkage/recovery rate grid with the experiment harness.

Related pairs always link (the true error pattern is inside the scan
bound); unrelated pairs link at a rate bounded by B * q^(rank - n); and
roughly half of the related linkages recover the exact feature vectors
because the solved linear system has two solutions.

The same grid is available from the command line:

    fuzzylink experiment table1 --code bch:31:5 --b 0,1,2,3 \
        --trials 2000 --mode non-related --seed 7 --format csv
"""

import io

from fuzzylink import ExperimentConfig, run_table1, union_bound_linkage, write_report

for mode in ("related", "non-related"):
    config = ExperimentConfig(code="bch:31:5", b_values=(0, 1, 2, 3),
                              trials=800, mode=mode, seed=7)
    report = run_table1(config)
    print(f"\n{mode} pairs, 800 trials per cell:")
    print(f"  {'b':>2} {'linkage':>9} {'recovery':>9} {'bound':>9} {'ms/attack':>10}")
    for cell in report.cells:
        bound = float(union_bound_linkage(2, cell.n, 2 * cell.k - 1, cell.b))
        print(f"  {cell.b:>2} {cell.linkage_rate:>9.4f} {cell.recovery_rate:>9.4f} "
              f"{min(bound, 1):>9.4f} {cell.time_mean_ms:>10.2f}")

buf = io.BytesIO()
write_report(report, "csv", buf)
print("\nCSV form of the last run:")
print(buf.getvalue().decode())
