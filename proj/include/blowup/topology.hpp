#pragma once

/// \file topology.hpp
/// \brief Global effect of blowing up a point: the connected-sum summand,
/// Euler characteristics, and the first Chern classes of the line bundles
/// around Sigma in the complex case.

#include <array>
#include <string>

#include "blowup/linalg.hpp"

namespace blowup {

/// chi(RP^n) for real n, chi(CP^n) for complex dimension n.
int euler_projective(int n, Field field);

/// chi(S^d) where d is the real dimension of F^n.
int euler_sphere(int n, Field field);

/// chi(M # summand) = chi(M) + chi(summand) - chi(S^d): blowing up a point
/// adds a copy of RP^n (real) or of conjugate CP^n (complex).
/// Throws std::invalid_argument for n < 2.
int euler_blowup(int chi_m, int n, Field field);

/// A first Chern class as a signed multiple of the canonical generator c.
struct ChernEntry {
  char label;  ///< 'a' .. 'd'
  std::string bundle;
  int sign;  ///< +1 for c, -1 for -c
};

/// Throws std::invalid_argument for n < 1.
std::array<ChernEntry, 4> chern_constants(int n);

struct BlowupTopologyReport {
  Field field = Field::Real;
  int n = 0;
  std::string summand;
  int euler_before = 0;
  int euler_after = 0;
  int sigma_dimension = 0;  ///< real dimension of Sigma
  bool model_orientable = true;
  std::string model;
  std::string global_effect;
};

BlowupTopologyReport blowup_topology(int chi_m, int n, Field field);

/// Real blowup of a surface point: Sigma = RP^1 = S^1, the model neighborhood
/// is a Moebius band, and the global effect is a crosscap.
BlowupTopologyReport surface_blowup_summary();

}  // namespace blowup
