#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ara {

struct CurveRow {
    double price = 0.0;
    double accept_prob = 0.0;
    double expected_utility = 0.0;
    double std_err = 0.0;
};

/// Per-price Monte Carlo estimates plus the selected optimum.
struct EvaluationCurve {
    std::vector<CurveRow> rows;
    std::size_t optimum_index = 0;
    double optimum_price = 0.0;
    double optimum_utility = 0.0;
    /// Every row attains the same expected utility (the argmax is arbitrary).
    bool degenerate = false;

    const CurveRow& optimum() const { return rows.at(optimum_index); }
};

/// Index of the first maximum; ties go to the lowest index. Requires nonempty input.
std::size_t argmax_lowest(std::span<const double> values);

/// Fill optimum fields from the rows (lowest price wins ties).
EvaluationCurve finalize_curve(std::vector<CurveRow> rows);

}  // namespace ara
