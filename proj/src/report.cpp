#include "ordgraph/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace ordgraph {

int Report::exit_code() const {
  if (status == "fail") return 1;
  if (status == "invalid") return 2;
  return 0;
}

void Report::sort_findings() {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) { return a.subject < b.subject; });
}

std::string to_text(const Report& r, bool color) {
  std::string status = r.status;
  if (color) {
    const char* code = r.status == "fail" ? "31" : r.status == "invalid" ? "33" : "32";
    status = std::string("\x1b[") + code + "m" + status + "\x1b[0m";
  }
  std::string out = "ograph " + std::string(kToolVersion) + ": " + r.command + "\n";
  out += "status: " + status + "\n";
  if (r.result) out += "result: " + *r.result + "\n";
  for (const auto& f : r.findings) {
    out += "  " + f.check + " " + f.subject;
    if (f.witness) out += ": " + *f.witness;
    out += "\n";
  }
  return out;
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["version"] = kToolVersion;
  j["command"] = r.command;
  j["status"] = r.status;
  if (r.result) j["result"] = *r.result;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : r.findings) {
    nlohmann::ordered_json o;
    o["check"] = f.check;
    o["subject"] = f.subject;
    if (f.witness) o["witness"] = *f.witness;
    arr.push_back(o);
  }
  j["findings"] = arr;
  return j.dump(2) + "\n";
}

}  // namespace ordgraph
