#pragma once
#include <string>
#include <vector>

namespace trcomm {

enum class VerifyTier { Tiny, Small };

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// The identity suite: adjoint pairs M* = Gamma^-1 Q (full and partial),
// the F/F* dot-product test (both physics, lossy EM included), the
// time-reversal identity F* = Gamma^-1 S F S Gamma, the four mirror
// commutations, and A* = T B T-hat (full and partial).
// corrupt_sign_mask is a test hook that corrupts the mirror sign mask so the
// A* = T B T-hat check must fail.
std::vector<CheckResult> run_verify(VerifyTier tier,
                                    bool corrupt_sign_mask = false);

}  // namespace trcomm
