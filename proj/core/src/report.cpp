#include "amm/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace amm {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::svd: return "svd";
    case Method::cd: return "cd";
    case Method::sfft: return "sfft";
    case Method::lowrank: return "lowrank";
    case Method::naive: return "naive";
  }
  return "?";
}

std::string_view to_string(Order o) noexcept { return o == Order::zeroth ? "zeroth" : "first"; }

Method parse_method(std::string_view s) {
  if (s == "svd") return Method::svd;
  if (s == "cd") return Method::cd;
  if (s == "sfft") return Method::sfft;
  if (s == "lowrank") return Method::lowrank;
  if (s == "naive") return Method::naive;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

Order parse_order(std::string_view s) {
  if (s == "zeroth") return Order::zeroth;
  if (s == "first") return Order::first;
  throw std::invalid_argument("unknown order '" + std::string(s) + "'");
}

namespace {

void append_number(std::string& out, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ",\"%s\":%.17g", key, v);
  out += buf;
}

void append_optional(std::string& out, const char* key, const std::optional<double>& v) {
  if (v) {
    append_number(out, key, *v);
  } else {
    out += ",\"";
    out += key;
    out += "\":null";
  }
}

}  // namespace

std::string ApproxReport::to_json() const {
  std::string out = "{\"method\":\"";
  out += to_string(method);
  out += "\",\"order\":";
  if (order) {
    out += '"';
    out += to_string(*order);
    out += '"';
  } else {
    out += "null";
  }
  out += ",\"k\":" + std::to_string(k);
  append_number(out, "norm_A", norm_A);
  append_number(out, "norm_B", norm_B);
  append_number(out, "norm_dA", norm_dA);
  append_number(out, "norm_dB", norm_dB);
  append_number(out, "norm_M", norm_M);
  append_optional(out, "apriori_est", apriori_estimate);
  append_optional(out, "posterior_est", posterior_estimate);
  append_optional(out, "rel_err", measured_error);
  append_number(out, "wall_time_s", wall_time);
  out += '}';
  return out;
}

}  // namespace amm
