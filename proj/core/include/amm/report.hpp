#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace amm {

enum class Method { svd, cd, sfft, lowrank, naive };
enum class Order { zeroth, first };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Order o) noexcept;
/// Throws std::invalid_argument on unknown names.
Method parse_method(std::string_view s);
Order parse_order(std::string_view s);

/// Bookkeeping for one approximate product.
struct ApproxReport {
  Method method = Method::naive;
  std::optional<Order> order;  // unset for lowrank / naive
  std::size_t k = 0;           // components (or samples) used
  double norm_A = 0.0;
  double norm_B = 0.0;
  double norm_dA = 0.0;
  double norm_dB = 0.0;
  double norm_M = 0.0;
  std::optional<double> apriori_estimate;
  std::optional<double> posterior_estimate;
  std::optional<double> measured_error;
  double wall_time = 0.0;  // seconds

  /// Single-line JSON object with the fields above.
  std::string to_json() const;
};

}  // namespace amm
