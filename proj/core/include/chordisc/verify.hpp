#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chordisc {

enum class Suite { normalization, cut_identity, lemma_chain, koksma, oracle_dominance };

std::vector<Suite> all_suites();
Suite parse_suite(std::string_view name);
std::string to_string(Suite suite);

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t repetitions = 1;  // independent seeds per randomized suite
    // Multiplies the endpoint density; anything but 1 must make the
    // normalization suite fail.
    double density_scale = 1.0;
};

struct SuiteResult {
    Suite suite = Suite::normalization;
    bool passed = false;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string detail;  // first failure, if any
};

std::vector<SuiteResult> verify(const std::vector<Suite>& suites, const VerifyOptions& options = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace chordisc
