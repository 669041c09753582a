"""Growing an IP independence set one generator at a time.

On a mixing subshift, generators t_1, t_2, ... can be chosen so that 0 plus
all finite sums over distinct indices stay an independence set for ([0], [1]);
each candidate is screened by a full independence re-check.
"""

from symindep import CylinderTuple, full_shift, golden_mean, ip_independence_builder

for name, system in [("full(2)", full_shift(2)), ("golden mean", golden_mean())]:
    targets = CylinderTuple.of(system, "0", "1")
    report = ip_independence_builder(targets, depth=4, step_horizon=40)
    print(f"{name}: generators {report.generators}")
    print(f"  verified sum set ({len(report.verified_sums)} elements):",
          report.verified_sums.elements)
