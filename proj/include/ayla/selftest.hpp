#pragma once
#include <string>
#include <vector>

namespace ayla {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

SuiteResult gradient_check_suite(std::size_t nets = 100);
SuiteResult transform_fd_suite();
SuiteResult curvature_suite();
SuiteResult sign_preservation_suite();
SuiteResult argmin_preservation_suite(std::size_t grids = 1000);
SuiteResult grad_scale_positivity_suite();
SuiteResult identity_suite();
SuiteResult parser_fuzz_suite(std::size_t files = 50);
SuiteResult shuffle_subset_determinism_suite();

std::vector<SuiteResult> run_all_selftests();

}  // namespace ayla
