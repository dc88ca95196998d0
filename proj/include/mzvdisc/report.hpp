#ifndef MZVDISC_REPORT_HPP
#define MZVDISC_REPORT_HPP

// One checked identity instance: both sides rendered canonically, plus timing.

#include <chrono>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "mzvdisc/rational.hpp"
#include "mzvdisc/residue.hpp"

namespace mzvdisc {

struct VerificationReport {
  std::string check_id;
  std::string inputs;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  double elapsed_ms = 0.0;
};

inline std::string render(const std::string& s) { return s; }
inline std::string render(const Rational& q) { return to_fraction_string(q); }
inline std::string render(const Residue& r) {
  return std::to_string(r.value()) + " (mod " + r.modulus().to_string() + ")";
}

/// Starts a stopwatch; finish() renders both sides and sets pass from string identity.
class ReportBuilder {
 public:
  ReportBuilder(std::string check_id, std::string inputs)
      : id_(std::move(check_id)), inputs_(std::move(inputs)), start_(std::chrono::steady_clock::now()) {}

  template <class L, class R>
  VerificationReport finish(const L& lhs, const R& rhs) const {
    VerificationReport r;
    r.check_id = id_;
    r.inputs = inputs_;
    r.lhs = render(lhs);
    r.rhs = render(rhs);
    r.pass = r.lhs == r.rhs;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return r;
  }

 private:
  std::string id_;
  std::string inputs_;
  std::chrono::steady_clock::time_point start_;
};

inline nlohmann::json to_json(const VerificationReport& r) {
  return {{"check_id", r.check_id}, {"inputs", r.inputs}, {"lhs", r.lhs},
          {"rhs", r.rhs},           {"pass", r.pass},     {"elapsed_ms", r.elapsed_ms}};
}

inline std::string to_text(const VerificationReport& r) {
  return std::string(r.pass ? "PASS " : "FAIL ") + r.check_id + " [" + r.inputs + "] lhs=" + r.lhs +
         " rhs=" + r.rhs;
}

}  // namespace mzvdisc

#endif  // MZVDISC_REPORT_HPP
