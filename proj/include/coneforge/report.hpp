#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coneforge/scalar.hpp"

namespace coneforge {

/// Outcome of one verification. Failures are values, not exceptions.
struct Report {
  std::string check;
  bool pass = false;
  std::string summary;
  std::optional<std::string> witness;
  std::optional<Scalar> theta;
  std::optional<long> delta;
  std::optional<long> n1;
  std::optional<long> n2;
  std::optional<long> d;
  std::vector<std::string> notes;
  std::vector<Report> children;

  Report() = default;
  Report(std::string name, bool ok, std::string text = {})
      : check(std::move(name)), pass(ok), summary(std::move(text)) {}

  std::string to_text(int indent = 0) const {
    std::ostringstream os;
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    os << pad << check << ": " << (pass ? "PASS" : "FAIL");
    if (!summary.empty()) os << " - " << summary;
    os << '\n';
    if (theta) os << pad << "  theta = " << *theta << '\n';
    if (delta) os << pad << "  delta = " << *delta << '\n';
    if (n1 && n2) os << pad << "  (n1, n2) = (" << *n1 << ", " << *n2 << ")\n";
    if (d) os << pad << "  d = " << *d << '\n';
    if (witness) os << pad << "  witness: " << *witness << '\n';
    for (const auto& n : notes) os << pad << "  note: " << n << '\n';
    for (const auto& c : children) os << c.to_text(indent + 2);
    return os.str();
  }
};

}  // namespace coneforge
