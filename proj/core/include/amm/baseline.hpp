#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "amm/matrix.hpp"
#include "amm/report.hpp"

namespace amm {

/// p_k = ||A(:,k)|| ||B(k,:)|| / sum_j ||A(:,j)|| ||B(j,:)||.
/// Throws std::domain_error when every product of norms is zero.
std::vector<double> outer_product_probabilities(const RealMatrix& a, const RealMatrix& b);

/// Sum of c sampled outer products A(:,k) B(k,:) / (c p_k). Indices are drawn
/// uniformly and accepted when U * max_j p_j < p_k, with replacement; zero
/// probability indices are never accepted. The RNG stream is
/// derive_stream(seed, "lowrank", n).
std::pair<RealMatrix, ApproxReport> randomized_outer_product_multiply(const RealMatrix& a,
                                                                      const RealMatrix& b,
                                                                      std::size_t c,
                                                                      std::uint64_t seed);

}  // namespace amm
