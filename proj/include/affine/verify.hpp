#ifndef AFFINE_VERIFY_HPP
#define AFFINE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "affine/catalog.hpp"

namespace affine {

// One verified invariant. `pass` encodes the check's own criterion; for most
// checks that is residual <= tolerance, for the negative controls it is
// residual > tolerance (stated in the description).
struct CheckResult {
  std::string id;
  std::string description;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<CheckResult> verify_core(const SurfaceFamily &s,
                                     std::uint64_t seed);
// Requires the Mc family (symmetry group, Killing algebra).
std::vector<CheckResult> verify_symmetry(const SurfaceFamily &s,
                                         std::uint64_t seed);
// Requires the Mc family (cylinder/Moebius quotients).
std::vector<CheckResult> verify_quotient(const SurfaceFamily &s,
                                         std::uint64_t seed);
std::vector<CheckResult> verify_all(const SurfaceFamily &s,
                                    std::uint64_t seed);

bool all_pass(const std::vector<CheckResult> &checks);
// JSON array of {id, description, residual, tolerance, pass}
std::string report_json(const std::vector<CheckResult> &checks);

} // namespace affine

#endif
