"""
Census of small Cayley graphs
=============================

Exact proportions of normal and regular Cayley graphs on small groups,
followed by a seeded Monte Carlo estimate on a larger one.
"""

from cayley_census import census_exact, census_sample

for gid in ["C5", "D3", "C2xC2xC2", "D4", "Q8"]:
    rec = census_exact(gid, check_shortcut=True)
    print(f"{gid:9s} |T| = {rec.total:4d}  normal {rec.proportion(rec.normal)}  "
          f"regular {rec.proportion(rec.regular)}  fixed by an automorphism {rec.obstruction}  "
          f"closed-form bound: {rec.closed_form_status}")

rec = census_sample("D8", samples=400, seed=1)
print(f"D8 sampled: regular {rec.regular / rec.total:.3f} +- {rec.standard_error(rec.regular):.3f}, "
      f"normal {rec.normal / rec.total:.3f}")
