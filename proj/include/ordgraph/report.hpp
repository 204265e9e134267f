#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ordgraph {

inline constexpr const char* kToolVersion = "0.1.0";

struct Finding {
  std::string check;
  std::string subject;
  std::optional<std::string> witness;
};

// status: "pass", "fail", "verified_up_to(n)", "invalid".
struct Report {
  std::string command;
  std::string status = "pass";
  std::vector<Finding> findings;
  std::optional<std::string> result;

  // 0 pass or verified, 1 fail, 2 invalid.
  int exit_code() const;
  // Stable sort of findings by subject.
  void sort_findings();
};

std::string to_text(const Report& r, bool color = false);
std::string to_json(const Report& r);

}  // namespace ordgraph
