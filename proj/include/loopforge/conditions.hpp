#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopforge {

/* One named condition check. When a check fails, `witness` holds the first
 * offending argument tuple in lexicographic scan order. */
struct ConditionReport {
  std::string name;
  bool ok = true;
  std::vector<int> witness;
  std::string note;
};

inline ConditionReport cond_ok(std::string name) {
  return ConditionReport{std::move(name), true, {}, {}};
}

inline ConditionReport cond_fail(std::string name, std::vector<int> witness,
                                 std::string note = {}) {
  return ConditionReport{std::move(name), false, std::move(witness), std::move(note)};
}

inline bool all_ok(const std::vector<ConditionReport>& reports) {
  for (const auto& r : reports)
    if (!r.ok) return false;
  return true;
}

inline std::string format_reports(const std::vector<ConditionReport>& reports) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : reports) {
    if (r.ok) continue;
    if (!first) os << "; ";
    first = false;
    os << r.name << " violated at (";
    for (size_t i = 0; i < r.witness.size(); ++i) {
      if (i) os << ",";
      os << r.witness[i];
    }
    os << ")";
    if (!r.note.empty()) os << " [" << r.note << "]";
  }
  return os.str();
}

/* Thrown by construction operations when a precondition check fails.
 * Carries the full report list so callers can surface every violation. */
class ConditionViolation : public std::runtime_error {
 public:
  ConditionViolation(const std::string& context, std::vector<ConditionReport> reports)
      : std::runtime_error(context + ": " + format_reports(reports)),
        reports_(std::move(reports)) {}

  const std::vector<ConditionReport>& reports() const { return reports_; }

 private:
  std::vector<ConditionReport> reports_;
};

inline void throw_if_violated(const std::string& context,
                              const std::vector<ConditionReport>& reports) {
  if (!all_ok(reports)) throw ConditionViolation(context, reports);
}

/* Caps for long-running enumeration or closure computations. */
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace loopforge
