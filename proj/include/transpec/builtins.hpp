#pragma once

// Named generators:
//   haar_father, haar_mother
//   stretched_haar_father:k, stretched_haar_mother:k   (k odd)
//   shannon:[a,b)+[c,d)...                             (psi^ = chi_S)

#include "transpec/core_functions.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace transpec {

LineFunction builtin_function(std::string_view name);

/// Parses "[a,b)+[c,d)" into sorted disjoint intervals.
std::vector<Interval> parse_interval_union(std::string_view text);

/// Example names accepted by builtin_function.
std::vector<std::string> builtin_examples();

}  // namespace transpec
