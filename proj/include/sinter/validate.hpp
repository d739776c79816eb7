#pragma once
// Acceptance checks: each criterion runs the simulations it needs (results
// are shared across criteria within one suite instance) and reports a
// pass/fail with the measured number and the pinned threshold. Criteria are
// addressable by id and by name, so the command line can run any subset.

#include <memory>
#include <string>
#include <vector>

namespace sinter {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;  // headline number
    double threshold = 0.0; // pinned bound it is compared against
    std::string details;    // everything that went into the verdict
};

struct ValidateOptions {
    bool verbose = true;       // run progress on stderr
    std::string artifacts_dir; // when set, per-run series CSVs are written here
};

// All criterion names, in id order starting at 1.
std::vector<std::string> criterion_names();

class AcceptanceSuite {
  public:
    explicit AcceptanceSuite(ValidateOptions opt = {});
    ~AcceptanceSuite();

    CriterionResult run_one(int id);
    CriterionResult run_one(const std::string& name);
    // Whole suite; conservation and energy-decay go last so they audit every
    // run the other criteria executed.
    std::vector<CriterionResult> run_all();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// "PASS hopper measured=0.0312 threshold=0.05 | <details>"
std::string format_result(const CriterionResult& r);

} // namespace sinter
