#include "blowup/topology.hpp"

#include <stdexcept>

namespace blowup {

int euler_projective(int n, Field field) {
  if (field == Field::Complex) return n + 1;
  return n % 2 == 0 ? 1 : 0;
}

int euler_sphere(int n, Field field) {
  const int d = field == Field::Complex ? 2 * n : n;
  return d % 2 == 0 ? 2 : 0;
}

int euler_blowup(int chi_m, int n, Field field) {
  if (n < 2) throw std::invalid_argument("blowup needs dimension n >= 2");
  return chi_m + euler_projective(n, field) - euler_sphere(n, field);
}

std::array<ChernEntry, 4> chern_constants(int n) {
  if (n < 1) throw std::invalid_argument("Chern table needs n >= 1");
  const std::string pn = "P(C^" + std::to_string(n) + ")";
  const std::string pn1 = "P(C^" + std::to_string(n + 1) + ")";
  return {{
      {'a', "universal line bundle L over Sigma = " + pn + " (identified with the normal bundle of Sigma in X)", -1},
      {'b', "normal bundle of Sigma in X", -1},
      {'c', "normal bundle of the hyperplane " + pn + " in " + pn1, +1},
      {'d', "normal bundle of the hyperplane in the conjugate structure on " + pn1, -1},
  }};
}

BlowupTopologyReport blowup_topology(int chi_m, int n, Field field) {
  BlowupTopologyReport r;
  r.field = field;
  r.n = n;
  r.euler_before = chi_m;
  r.euler_after = euler_blowup(chi_m, n, field);
  if (field == Field::Real) {
    r.summand = "RP" + std::to_string(n);
    r.sigma_dimension = n - 1;
    // w1 of the total space is (n + 1) times the generator of H^1(RP^(n-1); Z/2).
    r.model_orientable = n % 2 == 1;
    r.model = "tautological real line bundle over RP" + std::to_string(n - 1);
    r.global_effect = n == 2 ? "crosscap" : "connected sum with RP" + std::to_string(n);
  } else {
    r.summand = "conj(CP" + std::to_string(n) + ")";
    r.sigma_dimension = 2 * (n - 1);
    r.model_orientable = true;
    r.model = "universal complex line bundle over CP" + std::to_string(n - 1);
    r.global_effect = "connected sum with conj(CP" + std::to_string(n) + ")";
  }
  return r;
}

BlowupTopologyReport surface_blowup_summary() {
  BlowupTopologyReport r = blowup_topology(2, 2, Field::Real);
  r.model = "nonorientable line bundle over S^1 (Moebius band)";
  return r;
}

}  // namespace blowup
