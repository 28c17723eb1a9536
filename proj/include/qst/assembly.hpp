#pragma once

// The two classical-quantum states on which every one-shot rate is evaluated.
//
//   dynamic:  sigma^{XABE}   = sum_x p(x) |x><x| (x) U_N(psi_x^{AA'})
//   static:   sigma^{XA'BEE'} = extended instrument applied to a purification
//             psi^{ABE} of rho^{AB}

#include <cstddef>
#include <vector>

#include "qst/quantum.hpp"

namespace qst {

inline constexpr std::size_t kDefaultMaxOutcomes = 16;
inline constexpr double kBlockTol = 1e-12;

struct EnsembleEntry {
  double probability = 0.0;
  Vector state;  ///< unit vector on A (x) A', A most significant
};

class Ensemble {
 public:
  Ensemble(int dim_a, int dim_a_prime, std::vector<EnsembleEntry> entries,
           std::size_t max_outcomes = kDefaultMaxOutcomes);

  int dim_a() const { return dim_a_; }
  int dim_a_prime() const { return dim_a_prime_; }
  const std::vector<EnsembleEntry>& entries() const { return entries_; }

  /// Single maximally entangled entry on d x d.
  static Ensemble maximally_entangled(int dim);

 private:
  int dim_a_;
  int dim_a_prime_;
  std::vector<EnsembleEntry> entries_;
};

/// Entrywise product ensemble; A and A' factors are regrouped as A1A2, A'1A'2.
Ensemble tensor(const Ensemble& a, const Ensemble& b);

/// Labels X, A, B, E.
struct SigmaDynamic {
  DensityMatrix state;
  std::vector<double> probabilities;
};

/// Labels X, A', B, E, E'.
struct SigmaStatic {
  DensityMatrix state;
  std::vector<double> probabilities;
};

SigmaDynamic build_sigma_dynamic(const QuantumChannel& channel, const Ensemble& ensemble);

/// `rho` must carry exactly the labels A and B.
SigmaStatic build_sigma_static(const DensityMatrix& rho, const Instrument& instrument);

/// Largest entry of `rho` outside the diagonal blocks of the flag subsystem
/// (which must be the first label).
double off_block_mass(const DensityMatrix& rho);

}  // namespace qst
