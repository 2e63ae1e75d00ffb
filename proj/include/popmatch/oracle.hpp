#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "popmatch/instance.hpp"

namespace popmatch {

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Enumeration limits. Exceeding one aborts with BudgetError rather than
/// silently truncating.
struct EnumerationBudget {
    int max_edges = 16;
    long long max_matchings = 2'000'000;
};

/// Every capacity-respecting subset of E exactly once, in ascending
/// edge-index-bitmask order with capacity pruning.
std::vector<Matching> enumerate_matchings(const Instance& inst,
                                          const EnumerationBudget& budget = {});

/// Streaming variant; the visitor returns false to stop early.
void for_each_matching(const Instance& inst, const EnumerationBudget& budget,
                       const std::function<bool(const Matching&)>& visit);

/// Ground truth by definition: n is popular iff big_delta(n, t) >= 0 for
/// every matching t. On failure returns the counterexample with the smallest
/// bitmask.
std::pair<bool, std::optional<Matching>> is_popular_bruteforce(
    const Instance& inst, const Matching& n, const EnumerationBudget& budget = {});

/// n is weakly popular iff big_delta(t, n) <= 0 for every matching t.
std::pair<bool, std::optional<Matching>> is_weakly_popular_bruteforce(
    const Instance& inst, const Matching& n, const EnumerationBudget& budget = {});

struct SizeSpectrum {
    int max_popular = 0;
    int min_popular = 0;
    int max_weakly_popular = 0;
    int min_weakly_popular = 0;
    std::vector<Matching> all_max_popular;
};

/// Exhaustive size statistics over the popular and weakly popular sets.
/// The popular set is never empty (a stable matching exists and is popular);
/// an empty set is reported as std::logic_error.
SizeSpectrum popular_size_spectrum(const Instance& inst, const EnumerationBudget& budget = {});

/// Brute-force maximum matching size; oracle for max_matching_size.
int max_matching_size_bruteforce(const Instance& inst, const EnumerationBudget& budget = {});

}  // namespace popmatch
