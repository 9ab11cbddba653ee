#include "tempered/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tempered/types.hpp"

namespace tempered {

namespace {
const Claim& push(ClaimReport& r, std::string id, std::string anchor, const char* rel, double lhs,
                  double rhs, double tol, bool pass) {
  r.claims.push_back({std::move(id), std::move(anchor), rel, lhs, rhs, tol, pass});
  return r.claims.back();
}
}  // namespace

bool ClaimReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

const Claim& ClaimReport::at_most(std::string id, std::string anchor, double lhs, double rhs,
                                  double tolerance) {
  return push(*this, std::move(id), std::move(anchor), "<=", lhs, rhs, tolerance, lhs <= rhs + tolerance);
}

const Claim& ClaimReport::at_least(std::string id, std::string anchor, double lhs, double rhs,
                                   double tolerance) {
  return push(*this, std::move(id), std::move(anchor), ">=", lhs, rhs, tolerance, lhs >= rhs - tolerance);
}

const Claim& ClaimReport::equal(std::string id, std::string anchor, double lhs, double rhs,
                                double tolerance) {
  const bool pass = lhs == rhs || std::abs(lhs - rhs) <= tolerance;
  return push(*this, std::move(id), std::move(anchor), "==", lhs, rhs, tolerance, pass);
}

void ClaimReport::append(const ClaimReport& other, const std::string& prefix) {
  for (Claim c : other.claims) {
    c.id = prefix + c.id;
    claims.push_back(std::move(c));
  }
}

void ClaimReport::require(const std::string& context) const {
  for (const Claim& c : claims) {
    if (c.pass) continue;
    std::ostringstream os;
    os.precision(17);
    os << context << ": claim " << c.id << " failed (" << c.lhs << ' ' << c.relation << ' ' << c.rhs
       << ", tolerance " << c.tolerance << ")";
    throw VerificationFailure(os.str());
  }
}

}  // namespace tempered
