// SPDX-License-Identifier: Apache-2.0
//
// Sequential experimental design over the linearized nested predictor:
// variance-based candidate scoring with the Kriging-Believer convention
// (hypothetical observations take the current posterior mean, so no code
// runs are needed to score them), the joint-point criterion minimizing the
// post-update integrated variance, and the per-cost criterion maximizing
// the variance decrease per unit of computational cost.
#ifndef CHAINGP_DESIGN_HPP
#define CHAINGP_DESIGN_HPP

#include "chaingp/hyperfit.hpp"
#include "chaingp/nested.hpp"
#include "chaingp/sampling.hpp"
#include "chaingp/testcases.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chaingp {

struct CostModel {
    double tau1 = 1.0;
    double tau2 = 1.0;
    void validate() const {
        if (!(tau1 > 0.0) || !(tau2 > 0.0) || !std::isfinite(tau1) || !std::isfinite(tau2))
            throw ConfigError("CostModel: costs must be positive and finite");
    }
};

/// Candidate pools for one acquisition step. Code-2 candidates are pairs:
/// the x1 part exists only to supply the believed intermediate value
/// phi1 = mu1(x1) at scoring and evaluation time.
struct CandidateSet {
    Mat code1;     // n x d1
    Mat code2_x1;  // n x d1
    Mat code2_x2;  // n x d2
    Mat chained;   // n x (d1+d2)
};

struct HypotheticalObs {
    std::optional<Vec> code1_point;  // in X1
    std::optional<Vec> code2_point;  // full (phi1, x2)
};

struct HistoryStep {
    int step = 0;
    int code = 0;  // 1, 2, or 3 (both codes, joint acquisition)
    Vec point;     // the evaluated input(s): x1, (phi1,x2), or (x1,x2)
    double criterion_value = 0.0;
    double iv_before = 0.0;
    double iv_after = 0.0;  // scored (hypothetical-update) value
    double cumulative_cost = 0.0;
};

struct DesignHistory {
    std::vector<HistoryStep> steps;
    bool aborted = false;
    std::string abort_reason;
};

struct DesignState {
    NestedPredictor predictor;  // Linearized strategy
    Mat integration_set;        // N_nest x (d1+d2); fixed for the whole run
    CostModel costs;
    Dataset data1;
    Dataset data2;
    std::vector<HistoryStep> history;

    DesignState(NestedPredictor pred, Mat integration, CostModel cost_model, Dataset d1,
                Dataset d2);

    int d1() const { return predictor.model1->input_dim(); }
    int d2() const { return predictor.d2(); }
};

/// Mean linearized nested variance over the integration set, optionally
/// under hypothetical (value-free) observations.
double integrated_variance(const DesignState& state,
                           const HypotheticalObs* hypothetical = nullptr);

/// Joint-point criterion: argmin over chained candidates of the integrated
/// variance after simultaneously observing code 1 at x1 and code 2 at
/// (mu1(x1), x2). Returns the winner and its post-update value.
std::pair<Vec, double> criterion_chained(const DesignState& state, const CandidateSet& cands);

struct BestChoice {
    int code = 0;
    Vec x1;          // source x1 (both codes)
    Vec x2;          // code-2 x2 part (empty for code 1)
    Vec eval_point;  // what the chosen code will be evaluated at
    double value = 0.0;
};

/// Cost-aware criterion: argmax over both pools of the integrated-variance
/// decrease per unit cost. Ties break toward code 1, then lower index.
BestChoice criterion_best(const DesignState& state, const CandidateSet& cands);

/// Per-candidate criterion values (shared scoring path; used by tests and
/// by criterion_best).
struct CandidateScores {
    double iv_current = 0.0;
    Vec code1_values;  // decrease per unit cost
    Vec code2_values;
};
CandidateScores score_candidates(const DesignState& state, const CandidateSet& cands);

enum class CriterionKind { Chained, Best };

struct SequentialConfig {
    int candidate_pool_size = 200;
    std::uint64_t seed = 0;
    int refit_starts = 5;
    int fit_max_iters = 120;
    int lhs_restarts = 4;
    /// called after each acquisition (history row already appended)
    std::function<void(const DesignState&, const HistoryStep&)> on_step;
};

/// The acquisition loop: draw seeded candidate pools, score, evaluate the
/// true code(s) at the winner, append observations, refit hyperparameters
/// every `refit_every` acquisitions, until the remaining budget cannot
/// afford the cheapest admissible action. Code failures abort the run and
/// preserve the partial history.
DesignHistory run_sequential(DesignState& state, const CodePair& codes, CriterionKind kind,
                             double budget, int refit_every, const SequentialConfig& cfg);

}  // namespace chaingp

#endif
