#ifndef TUBES_REPORT_HPP
#define TUBES_REPORT_HPP

#include "tubes/interchange.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

inline constexpr const char* kVersion = "1.0.0";

enum class Verdict { Pass, Fail, Unresolved };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "UNRESOLVED";
  }
}

struct Check {
  std::string id, claim;
  Verdict verdict = Verdict::Pass;
  std::string details, provenance;
};

struct Summary {
  std::size_t pass = 0, fail = 0, unresolved = 0;
};

class Report {
 public:
  explicit Report(std::string command = "") : command_(std::move(command)) {}

  const std::string& command() const { return command_; }
  const std::vector<Check>& checks() const { return checks_; }
  double seconds = 0;

  void add(Check c) {
    if (c.verdict != Verdict::Pass && c.details.empty())
      throw std::logic_error("check " + c.id + " is not PASS and carries no details");
    checks_.push_back(std::move(c));
  }

  void add(std::string id, std::string claim, bool ok, std::string details, std::string provenance) {
    if (!ok && details.empty()) details = "claim does not hold";
    add(Check{std::move(id), std::move(claim), ok ? Verdict::Pass : Verdict::Fail, std::move(details), std::move(provenance)});
  }

  void merge(const Report& other) {
    for (const auto& c : other.checks_) checks_.push_back(c);
  }

  /// Stable order by id.
  void sort() {
    std::stable_sort(checks_.begin(), checks_.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
  }

  Summary summary() const {
    Summary s;
    for (const auto& c : checks_) {
      if (c.verdict == Verdict::Pass) ++s.pass;
      else if (c.verdict == Verdict::Fail) ++s.fail;
      else ++s.unresolved;
    }
    return s;
  }

  int exit_code() const {
    Summary s = summary();
    if (s.fail) return 1;
    if (s.unresolved) return 2;
    return 0;
  }

  const Check* find(const std::string& id) const {
    for (const auto& c : checks_)
      if (c.id == id) return &c;
    return nullptr;
  }

  json to_json() const {
    json j;
    j["version"] = kVersion;
    j["command"] = command_;
    json cs = json::array();
    for (const auto& c : checks_)
      cs.push_back(json{{"id", c.id},
                        {"claim", c.claim},
                        {"verdict", to_string(c.verdict)},
                        {"details", c.details},
                        {"provenance", c.provenance}});
    j["checks"] = cs;
    Summary s = summary();
    j["summary"] = json{{"pass", s.pass}, {"fail", s.fail}, {"unresolved", s.unresolved}};
    j["seconds"] = seconds;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "tubes " << kVersion << "  " << command_ << "\n";
    for (const auto& c : checks_) {
      os << to_string(c.verdict) << std::string(12 - std::string(to_string(c.verdict)).size(), ' ') << c.id << "\n";
      os << "            " << c.claim << "\n";
      if (!c.details.empty()) os << "            " << c.details << "\n";
    }
    Summary s = summary();
    os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.unresolved << " unresolved";
    os.setf(std::ios::fixed);
    os.precision(2);
    os << " (" << seconds << " s)\n";
    return os.str();
  }

 private:
  std::string command_;
  std::vector<Check> checks_;
};

}  // namespace tubes

#endif
