"""
Ranking alternatives with net flows
===================================

Five production batches, four sensory criteria, two decision profiles.
"""

import numpy as np

import flowrank as fr

# The bundled sample: each batch is scored in [0, 1] on appearance, odor,
# texture, and taste (all to maximize).
criteria = fr.bundled_criteria()
print("criteria matrix")
print("  batch  " + "  ".join(f"{c:>7}" for c in criteria.criterion_labels))
for alt, row in zip(criteria.alternative_ids, criteria.values):
    print(f"  {alt:>5}  " + "  ".join(f"{v:7.5f}" for v in row))

# A preference model is one threshold triple per criterion plus weights.
# Differences below q are noise, above p a clear win, beyond v a veto.
thresholds = [(0.0, 0.1, 0.3)] * 4
specialty = fr.PreferenceModel([0.1, 0.4, 0.1, 0.4], thresholds)   # odor/taste driven
mainstream = fr.PreferenceModel([0.4, 0.1, 0.4, 0.1], thresholds)  # appearance/texture driven

# Net-flow scores: pairwise outranking degrees, row sums minus column sums.
for name, model in (("specialty", specialty), ("mainstream", mainstream)):
    result = fr.static_scores(criteria, model)
    print(f"\nranking under the {name} profile")
    for entry in fr.rank(result, criteria.alternative_ids):
        print(f"  {entry.rank}. batch {entry.alternative_id:>5}  score {entry.score:+.8f}")

# The per-criterion decomposition shows where each batch wins or loses;
# scores are exactly this matrix times the weights, so the two profiles
# reuse the same table.
net = fr.criterion_net_flows(criteria, specialty).net
print("\nper-criterion net flows")
for alt, row in zip(criteria.alternative_ids, net):
    print(f"  {alt:>5}  " + "  ".join(f"{v:+.4f}" for v in row))
print("\nspecialty scores via the decomposition:",
      np.round(net @ specialty.weights, 8))
