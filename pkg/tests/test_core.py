import numpy as np
import pytest

import flowrank as fr
from flowrank.errors import (
    DuplicateIdError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NegativeWeightError,
    ThresholdOrderError,
    ValidationError,
    WeightSumError,
)

from conftest import (
    NET_BY_CRITERION,
    ORDER_INITIAL,
    ORDER_REVISED,
    SCORES_INITIAL,
    SCORES_REVISED,
    UNIFORM_QPV,
    WEIGHTS_INITIAL,
)
from oracles import naive_scores


class TestThresholdTriple:
    def test_valid(self):
        t = fr.ThresholdTriple(0.0, 0.1, 0.3)
        assert (t.q, t.p, t.v) == (0.0, 0.1, 0.3)

    def test_order_violation(self):
        with pytest.raises(ThresholdOrderError):
            fr.ThresholdTriple(0.2, 0.1, 0.3)
        with pytest.raises(ThresholdOrderError):
            fr.ThresholdTriple(0.0, 0.4, 0.3)

    def test_negative_rejected(self):
        with pytest.raises(ThresholdOrderError):
            fr.ThresholdTriple(-0.1, 0.1, 0.3)

    def test_degenerate_allowed(self):
        fr.ThresholdTriple(0.1, 0.1, 0.1)


class TestCriteriaMatrix:
    def test_duplicate_ids(self):
        with pytest.raises(DuplicateIdError):
            fr.CriteriaMatrix(("a", "a"), ("c1",), [[0.1], [0.2]])

    def test_shape_mismatch(self):
        with pytest.raises(LengthMismatchError):
            fr.CriteriaMatrix(("a",), ("c1", "c2"), [[0.1]])

    def test_non_finite(self):
        with pytest.raises(ValidationError):
            fr.CriteriaMatrix(("a",), ("c1",), [[float("nan")]])

    def test_values_frozen(self, sample):
        with pytest.raises(ValueError):
            sample.values[0, 0] = 9.9


class TestValidateModel:
    def test_sample_profiles_valid(self):
        model = fr.PreferenceModel(WEIGHTS_INITIAL, [UNIFORM_QPV] * 4)
        assert fr.validate_model(model, 4) is model

    def test_uniform_valid(self):
        fr.validate_model(fr.PreferenceModel([0.25] * 4, [UNIFORM_QPV] * 4), 4)

    def test_weight_sum(self):
        with pytest.raises(WeightSumError):
            fr.PreferenceModel([0.5, 0.6], [UNIFORM_QPV] * 2)

    def test_negative_weight(self):
        with pytest.raises(NegativeWeightError):
            fr.PreferenceModel([1.2, -0.2], [UNIFORM_QPV] * 2)

    def test_length_mismatch(self, model_initial):
        with pytest.raises(LengthMismatchError):
            fr.validate_model(model_initial, 3)

    def test_exponent_must_be_positive_int(self):
        with pytest.raises(ValidationError):
            fr.PreferenceModel([1.0], [UNIFORM_QPV], 0)
        with pytest.raises(ValidationError):
            fr.PreferenceModel([1.0], [UNIFORM_QPV], 2.5)


class TestPairwiseDifference:
    def test_sample_values(self, sample):
        assert fr.pairwise_difference(sample, 0, 1, 0) == pytest.approx(-0.26977)

    def test_self_difference(self, sample):
        assert fr.pairwise_difference(sample, 2, 2, 1) == 0.0

    def test_equal_values(self, sample):
        # batches 613 and 162 tie on the third criterion
        assert fr.pairwise_difference(sample, 0, 3, 2) == 0.0

    def test_out_of_range(self, sample):
        with pytest.raises(IndexOutOfRangeError):
            fr.pairwise_difference(sample, 5, 0, 0)
        with pytest.raises(IndexOutOfRangeError):
            fr.pairwise_difference(sample, 0, 0, 4)
        with pytest.raises(IndexOutOfRangeError):
            fr.pairwise_difference(sample, -1, 0, 0)


class TestConcordance:
    T = fr.ThresholdTriple(0.0, 0.1, 0.3)

    def test_partial_ramp(self):
        assert fr.concordance(-0.068, self.T) == pytest.approx(0.32)

    def test_upper_plateau(self):
        assert fr.concordance(0.45135, self.T) == 1.0

    def test_lower_plateau(self):
        assert fr.concordance(-0.15, self.T) == 0.0

    def test_self_pair(self):
        assert fr.concordance(0.7, self.T, self_pair=True) == 0.0

    def test_degenerate_step(self):
        t = fr.ThresholdTriple(0.1, 0.1, 0.3)
        assert fr.concordance(-0.1, t) == 1.0
        assert fr.concordance(-0.1000001, t) == 0.0


class TestDiscordance:
    T = fr.ThresholdTriple(0.0, 0.1, 0.3)

    def test_partial_ramp(self):
        assert fr.discordance(-0.26977, self.T) == pytest.approx(0.84885)

    def test_veto_plateau(self):
        assert fr.discordance(-0.45135, self.T) == 1.0

    def test_zero_plateau(self):
        assert fr.discordance(0.2, self.T) == 0.0

    def test_degenerate_step(self):
        t = fr.ThresholdTriple(0.0, 0.3, 0.3)
        assert fr.discordance(-0.3, t) == 1.0
        assert fr.discordance(-0.2999999, t) == 0.0


class TestOutrankingDegree:
    def test_sample_pair(self, sample, model_initial):
        assert fr.outranking_degree(sample, model_initial, 0, 1) == pytest.approx(
            0.191755, abs=1e-5
        )

    def test_diagonal(self, sample, model_initial):
        for i in range(sample.m):
            assert fr.outranking_degree(sample, model_initial, i, i) == 0.0

    def test_veto_forces_zero(self, sample, model_initial):
        # 2573 falls 0.45135 short of 613 on the last criterion, past the veto
        assert fr.outranking_degree(sample, model_initial, 1, 0) == 0.0


class TestOutrankingMatrix:
    def test_bounds_and_diagonal(self, sample, model_initial):
        sigma = fr.outranking_matrix(sample, model_initial)
        assert np.allclose(np.diag(sigma), 0.0)
        assert np.all(sigma >= 0.0) and np.all(sigma <= 1.0)

    def test_single_alternative(self):
        criteria = fr.CriteriaMatrix(("only",), ("c1",), [[0.5]])
        model = fr.PreferenceModel([1.0], [UNIFORM_QPV])
        assert fr.outranking_matrix(criteria, model).shape == (1, 1)
        assert fr.outranking_matrix(criteria, model)[0, 0] == 0.0

    def test_permutation_equivariance(self, sample, model_initial):
        sigma = fr.outranking_matrix(sample, model_initial)
        perm = [3, 0, 4, 1, 2]
        shuffled = fr.CriteriaMatrix(
            tuple(sample.alternative_ids[i] for i in perm),
            sample.criterion_labels,
            sample.values[perm],
        )
        sigma_perm = fr.outranking_matrix(shuffled, model_initial)
        assert np.allclose(sigma_perm, sigma[np.ix_(perm, perm)])

    def test_matches_scalar_path(self, sample, model_initial):
        sigma = fr.outranking_matrix(sample, model_initial)
        for i in range(sample.m):
            for j in range(sample.m):
                assert sigma[i, j] == pytest.approx(
                    fr.outranking_degree(sample, model_initial, i, j), abs=1e-12
                )

    @pytest.mark.parametrize("qpv", [(0.1, 0.1, 0.3), (0.0, 0.2, 0.2), (0.1, 0.1, 0.1)])
    def test_degenerate_thresholds_match_scalar_path(self, sample, qpv):
        # q == p and p == v collapse the ramps to steps in both code paths
        model = fr.PreferenceModel([0.25] * 4, [qpv] * 4)
        sigma = fr.outranking_matrix(sample, model)
        assert np.all(np.isfinite(sigma))
        for i in range(sample.m):
            for j in range(sample.m):
                assert sigma[i, j] == pytest.approx(
                    fr.outranking_degree(sample, model, i, j), abs=1e-12
                )


class TestCriterionNetFlows:
    def test_sample_decomposition(self, sample, model_initial):
        net = fr.criterion_net_flows(sample, model_initial).net
        assert np.allclose(net, NET_BY_CRITERION, atol=1e-8)

    def test_rows_from_spec(self, sample, model_initial):
        net = fr.criterion_net_flows(sample, model_initial).net
        assert net[0] == pytest.approx((1.0, 1.0, 2.76214551, 2.76214551), abs=1e-8)
        assert net[4] == pytest.approx(
            (-1.99457605, -1.99457605, -1.6564202, -1.0), abs=1e-8
        )

    def test_flow_bounds(self, sample, model_initial):
        flow = fr.criterion_net_flows(sample, model_initial)
        m = sample.m
        for matrix in (flow.mu_plus, flow.mu_minus):
            assert np.all(matrix >= 0.0) and np.all(matrix <= m - 1)

    def test_single_alternative(self):
        criteria = fr.CriteriaMatrix(("only",), ("c1", "c2"), [[0.5, 0.2]])
        model = fr.PreferenceModel([0.5, 0.5], [UNIFORM_QPV] * 2)
        flow = fr.criterion_net_flows(criteria, model)
        assert np.all(flow.mu_plus == 0.0) and np.all(flow.mu_minus == 0.0)


class TestFlows:
    def test_sample_scores(self, sample, model_initial):
        sigma = fr.outranking_matrix(sample, model_initial)
        result = fr.flows(sigma)
        assert result.scores == pytest.approx(SCORES_INITIAL, abs=1e-8)

    def test_zero_matrix(self):
        result = fr.flows(np.zeros((3, 3)))
        assert np.all(result.scores == 0.0)

    def test_scores_sum_to_zero(self, sample, model_revised):
        sigma = fr.outranking_matrix(sample, model_revised)
        assert abs(fr.flows(sigma).scores.sum()) < 1e-9

    def test_rejects_non_square(self):
        with pytest.raises(ValidationError):
            fr.flows(np.zeros((2, 3)))


class TestStaticScores:
    def test_initial_profile(self, sample, model_initial):
        assert fr.static_scores(sample, model_initial).scores == pytest.approx(
            SCORES_INITIAL, abs=1e-8
        )

    def test_revised_profile(self, sample, model_revised):
        assert fr.static_scores(sample, model_revised).scores == pytest.approx(
            SCORES_REVISED, abs=1e-8
        )

    def test_single_criterion_weight_reads_flow_column(self, sample, model_initial):
        model = model_initial.with_weights([1.0, 0.0, 0.0, 0.0])
        scores = fr.static_scores(sample, model).scores
        net = fr.criterion_net_flows(sample, model).net
        assert scores == pytest.approx(net[:, 0], abs=1e-12)
        assert scores == pytest.approx([row[0] for row in NET_BY_CRITERION], abs=1e-8)

    def test_matches_naive_transcription(self, sample, model_initial):
        expected = naive_scores(
            sample.values.tolist(),
            list(model_initial.weights),
            [(t.q, t.p, t.v) for t in model_initial.thresholds],
            model_initial.discordance_exponent,
        )
        assert fr.static_scores(sample, model_initial).scores == pytest.approx(
            expected, abs=1e-12
        )


class TestRank:
    def test_initial_order(self, sample, model_initial):
        ranking = fr.rank(fr.static_scores(sample, model_initial), sample.alternative_ids)
        assert tuple(e.alternative_id for e in ranking) == ORDER_INITIAL
        assert [e.rank for e in ranking] == [1, 2, 3, 4, 5]

    def test_revised_order(self, sample, model_revised):
        ranking = fr.rank(fr.static_scores(sample, model_revised), sample.alternative_ids)
        assert tuple(e.alternative_id for e in ranking) == ORDER_REVISED

    def test_ties_keep_input_order(self):
        ranking = fr.rank([0.0, 0.0], ["first", "second"])
        assert [(e.alternative_id, e.rank) for e in ranking] == [("first", 1), ("second", 2)]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            fr.rank([1.0, 2.0], ["a"])
