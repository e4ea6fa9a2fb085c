#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

namespace atomkit {

enum class Status { pass, fail, unknown };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "unknown";
  }
}

/// Result of a bounded check. A fail carries the counterexample in witness;
/// a pass carries whatever certificate the check produced.
struct CheckVerdict {
  Status status = Status::unknown;
  nlohmann::json witness = nlohmann::json::object();
  std::size_t depth_used = 0;

  bool passed() const { return status == Status::pass; }
  nlohmann::json to_json() const {
    return {{"status", to_string(status)}, {"witness", witness}, {"depth_used", depth_used}};
  }
};

}  // namespace atomkit
