# Runtime of the exact recoverable solver on a doubling ladder with p = n/2
# and k = p - 10. The pairwise scan keeps the n^2-per-exchange bookkeeping,
# the default scan needs only linear work per exchange.

from robsel.bench import ladder

for scan in ("pairwise", "minmax"):
    print(scan)
    for row in ladder(scan=scan):
        print(f"  n={row['n']:5d}  {row['wall_time']}s  time/((p-k+1)n^2)={row['ratio']:.3e}")
