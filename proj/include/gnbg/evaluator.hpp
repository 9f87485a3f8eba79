#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gnbg/core.hpp"
#include "gnbg/errors.hpp"

namespace gnbg {

/// One step of the best-so-far staircase: at evaluation `fe` the best error
/// dropped to `error`.
struct Improvement {
    std::int64_t fe;
    double error;
    friend bool operator==(const Improvement&, const Improvement&) = default;
};

/// Outcome of one optimizer run.
struct RunResult {
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_position;
    double best_error = std::numeric_limits<double>::infinity();
    std::int64_t fe_used = 0;
    std::map<std::int64_t, double> milestone_errors;
    std::optional<std::int64_t> fe_to_success;
    bool success = false;
    std::vector<Improvement> history;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Best error at evaluation `fe`: the last staircase step with step.fe ≤ fe.
/// +inf before the first evaluation.
inline double error_at(std::span<const Improvement> history, std::int64_t fe) {
    double e = std::numeric_limits<double>::infinity();
    for (const auto& h : history) {
        if (h.fe > fe) break;
        e = h.error;
    }
    return e;
}

/// Objective wrapper that counts evaluations against a budget and keeps the
/// best-so-far trace. One evaluator per run; not thread-safe.
class BudgetedEvaluator {
public:
    BudgetedEvaluator(const ProblemInstance& instance, std::int64_t max_fe, double success_threshold = 1e-8,
                      std::vector<std::int64_t> milestones = {})
        : instance_(&instance),
          max_fe_(max_fe),
          threshold_(success_threshold),
          milestones_(std::move(milestones)) {
        if (max_fe < 1) throw InvalidArgument("BudgetedEvaluator: max_fe must be positive");
    }

    const ProblemInstance& instance() const noexcept { return *instance_; }
    std::size_t dim() const noexcept { return instance_->dim(); }
    std::int64_t max_fe() const noexcept { return max_fe_; }
    std::int64_t fe_used() const noexcept { return fe_used_; }
    std::int64_t remaining() const noexcept { return max_fe_ - fe_used_; }
    double threshold() const noexcept { return threshold_; }

    double best_value() const noexcept { return best_value_; }
    double best_error() const noexcept { return best_value_ - instance_->optimum_value(); }
    const std::vector<double>& best_position() const noexcept { return best_position_; }
    const std::vector<Improvement>& history() const noexcept { return history_; }
    std::optional<std::int64_t> fe_to_success() const noexcept { return fe_to_success_; }
    bool success() const noexcept { return fe_to_success_.has_value(); }

    /// True once the budget is spent or the error threshold was reached.
    bool finished() const noexcept { return fe_used_ >= max_fe_ || success(); }

    /// Called after every counted evaluation with the point and its value.
    void set_observer(std::function<void(std::span<const double>, double)> fn) { observer_ = std::move(fn); }

    /// Counts one evaluation and returns f(x). Throws BudgetExhausted when
    /// called with fe_used == max_fe.
    double operator()(std::span<const double> x) {
        if (fe_used_ >= max_fe_) throw BudgetExhausted("evaluation budget of " + std::to_string(max_fe_) + " spent");
        const double f = (*instance_)(x);
        ++fe_used_;
        if (f < best_value_) {
            best_value_ = f;
            best_position_.assign(x.begin(), x.end());
            const double err = best_error();
            history_.push_back({fe_used_, err});
            if (!fe_to_success_ && err <= threshold_) fe_to_success_ = fe_used_;
        }
        if (observer_) observer_(x, f);
        return f;
    }

    RunResult result() const {
        RunResult r;
        r.best_value = best_value_;
        r.best_position = best_position_;
        r.best_error = best_error();
        r.fe_used = fe_used_;
        for (auto m : milestones_) r.milestone_errors[m] = error_at(history_, m);
        r.fe_to_success = fe_to_success_;
        r.success = success();
        r.history = history_;
        return r;
    }

private:
    const ProblemInstance* instance_;
    std::int64_t max_fe_;
    double threshold_;
    std::vector<std::int64_t> milestones_;
    std::int64_t fe_used_ = 0;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_position_;
    std::vector<Improvement> history_;
    std::optional<std::int64_t> fe_to_success_;
    std::function<void(std::span<const double>, double)> observer_;
};

inline double tracked_evaluate(BudgetedEvaluator& ev, std::span<const double> x) { return ev(x); }

}  // namespace gnbg
