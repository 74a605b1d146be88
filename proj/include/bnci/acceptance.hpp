#ifndef BNCI_ACCEPTANCE_HPP
#define BNCI_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace bnci {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;  // seconds; exceeding it fails the criterion
};

/// Runs the ten acceptance criteria in order. `on_result` is called as each
/// one finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [ 3] title: detail (1.2 s / 60 s)"
std::string format_result(const CriterionResult& r);

}  // namespace bnci

#endif  // BNCI_ACCEPTANCE_HPP
