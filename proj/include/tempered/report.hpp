#pragma once

#include <string>
#include <vector>

namespace tempered {

// One verified inequality or identity.
struct Claim {
  std::string id;
  std::string anchor;    // short description of the statement being checked
  std::string relation;  // "<=", ">=" or "=="
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;  // absolute slack
  bool pass = false;
};

struct ClaimReport {
  std::vector<Claim> claims;

  bool all_pass() const;
  // lhs <= rhs + tolerance
  const Claim& at_most(std::string id, std::string anchor, double lhs, double rhs, double tolerance = 0.0);
  // lhs >= rhs - tolerance
  const Claim& at_least(std::string id, std::string anchor, double lhs, double rhs, double tolerance = 0.0);
  // |lhs - rhs| <= tolerance
  const Claim& equal(std::string id, std::string anchor, double lhs, double rhs, double tolerance = 0.0);
  void append(const ClaimReport& other, const std::string& prefix = "");
  // Throws VerificationFailure naming the first failing claim.
  void require(const std::string& context) const;
};

}  // namespace tempered
