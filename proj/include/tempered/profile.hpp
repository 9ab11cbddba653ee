#pragma once

#include <string>
#include <vector>

namespace tempered {

inline constexpr const char* kAnnulusConvention =
    "A_0 = {|x| < 1}, A_j = {2^(j-1) <= |x| < 2^j} for j >= 1";

// Variation masses m_j = |mu|(A_j) over dyadic annuli, j = 0..J.
struct DyadicProfile {
  std::vector<double> masses;
  std::string convention = kAnnulusConvention;
  std::string source;
};

// Annulus index of a radius: 0 for r < 1, else the j with 2^(j-1) <= r < 2^j.
int annulus_index(double radius);

}  // namespace tempered
