# Choosing the normalisation conventions empirically.
#
# The formula leaves a few constants open: which volume normalisation, whether
# U carries a factor 1/2, where the power of two in b_r goes, which power of U
# feeds a_r, and how group sums attach to faces. Each combination is a
# ConventionProfile; calibration keeps the ones that reproduce brute-force
# counts on a small corpus.

from toric_ehrhart import ehrhart as eh
from toric_ehrhart.corpus import default_corpus, segment

# %% the literal reading is already off on a segment: 2Lk + 1/2 instead of Lk + 1
print(eh.ehrhart_polynomial(segment(5), eh.PRINTED).coeffs)
print(eh.ehrhart_polynomial(segment(5)).coeffs)

# %% full calibration over 48 profiles
report = eh.run_calibration(default_corpus())
print("matching:", [p.label for p in report.matching])
print("chosen:  ", report.chosen.label)
print(report.table().splitlines()[0])
print("\n".join(l for l in report.table().splitlines() if "reeve_3" in l))
