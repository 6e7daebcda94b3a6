# Hardness reductions turned into instance generators. Each generator stores
# the yes/no threshold; the brute-force optimum lands on the right side.

from robsel.bench import SAMPLE_CNF, COVER_FAMILY, COVER_UNIVERSE
from robsel.gen import gen_rec_partition, gen_set_cover, gen_three_sat, gen_ts_partition
from robsel.oracle import exact_recoverable, exact_two_stage

for A in ([1, 2, 3, 2], [1, 1, 1, 1], [1, 1, 1, 5]):
    inst = gen_rec_partition(A, k=1)
    print(f"recoverable partition {A}: opt={exact_recoverable(inst).objective} threshold={inst.meta['threshold']}")

for A in ([1, 2, 3, 2], [2, 2, 2, 2], [1, 1, 1, 5]):
    inst = gen_ts_partition(A)
    print(f"two-stage partition {A}: opt={exact_two_stage(inst).objective} threshold={inst.meta['threshold']}")

sat = gen_three_sat(SAMPLE_CNF, 3)
print("3-SAT instance scenarios (rows) over items", sat.meta["labels"])
print(sat.uncertainty.costs)
print("satisfiable formula gives opt =", exact_recoverable(sat).objective)
print("x and not-x gives opt =", exact_recoverable(gen_three_sat([(1, 1, 1), (-1, -1, -1)], 1)).objective)

cover = gen_set_cover(COVER_UNIVERSE, COVER_FAMILY)
print("set cover: opt =", exact_two_stage(cover).objective, "(smallest cover has 3 sets)")
