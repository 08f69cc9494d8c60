#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace findep {

using BigInt = boost::multiprecision::cpp_int;

/// The standard recursive upper bound for multicolor Ramsey numbers:
///   R(c) = 1 if some c_i = 1, R(c) = c_1 if k = 1,
///   R(c) <= 2 - k + sum_i R(c_1, ..., c_i - 1, ..., c_k) otherwise.
/// Evaluated in closed form: the recursion unrolls to
///   1 + sum over 0 <= d_i <= c_i - 2 of (|d|)! / prod(d_i!),
/// computed exactly with a binomial-convolution DP. Exact big-integer result
/// for any argument list; throws std::invalid_argument unless k >= 1 and all
/// c_i >= 1.
BigInt ramsey_upper(const std::vector<long long>& colors);

/// Literal memoized recursion; exponential state space, usable only for
/// small arguments. Kept as the independent oracle for ramsey_upper.
BigInt ramsey_upper_recursive(const std::vector<long long>& colors);

}  // namespace findep
