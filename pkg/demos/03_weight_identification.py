"""
Recovering weights from a decision maker
========================================

Scores are linear in the weights once thresholds are fixed, so weights can
be fitted by least squares on the probability simplex - either to scores
the decision maker states directly, or to evenly spaced targets built from
a ranking they provide.
"""

import numpy as np

import flowrank as fr

criteria = fr.bundled_criteria()
thresholds = (0.0, 0.1, 0.3)

# Case 1: the decision maker rates every batch.  Use the scores produced
# by a hidden weight profile and check the fit recovers it.
hidden = fr.PreferenceModel([0.1, 0.4, 0.1, 0.4], [thresholds] * 4)
stated_scores = fr.static_scores(criteria, hidden).scores

flow = fr.criterion_net_flows(criteria, hidden)
fitted = fr.fit_weights(fr.IdentificationProblem(flow, stated_scores))
print("hidden weights:   ", np.round(hidden.weights, 4))
print("recovered weights:", np.round(fitted.weights, 4))
print("residual:         ", f"{fitted.residual:.2e}")

# Case 2: the decision maker only ranks the batches.  Equally spaced
# targets over the attainable score range stand in for scores; the
# contract is that the fitted weights reproduce the stated order.
stated_order = ["2573", "613", "292", "162", "3062"]
from_ranking = fr.fit_weights_from_ranking(criteria, thresholds, stated_order)
print("\nweights fitted to the ranking:", np.round(from_ranking.weights, 4))
print("stated order reproduced:      ", from_ranking.ranking_reproduced)

induced = fr.rank(
    fr.static_scores(criteria, hidden.with_weights(from_ranking.weights)),
    criteria.alternative_ids,
)
print("induced order:                ", [e.alternative_id for e in induced])
