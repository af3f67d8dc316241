#pragma once

#include <Eigen/Dense>

// Dense spin-1/2 operators on chains of N sites.  Basis convention: site s is
// bit s of the basis index (site 0 = least significant bit); bit value 1 means
// spin down, so sigma^z_s has eigenvalue 1 - 2*bit_s.

namespace thermochain::spin {

inline int dimension(int sites) { return 1 << sites; }

inline double sz_value(int basis_index, int site) {
  return ((basis_index >> site) & 1) ? -1.0 : 1.0;
}

// Sigma^z on one site, embedded in the full chain space.
Eigen::MatrixXd sigma_z(int site, int sites);

// Sigma^x on one site.
Eigen::MatrixXd sigma_x(int site, int sites);

// Sigma^y on one site, returned as the real matrix of -i*sigma^y so callers
// can stay in real arithmetic; expectation values of sigma^y in real states
// vanish identically, which is what the parity checks use.
Eigen::MatrixXd sigma_y_times_minus_i(int site, int sites);

// Pair-flip operator |dd><uu| + |uu><dd| on (s1, s2); this equals
// (sigma^x sigma^x - sigma^y sigma^y)/2 on the two sites.
Eigen::MatrixXd pair_flip(int s1, int s2, int sites);

// y = y + coeff * P(s1,s2) * x without materialising the operator.
void add_pair_flip_apply(const Eigen::VectorXd& x, double coeff, int s1, int s2,
                         Eigen::VectorXd& y);

}  // namespace thermochain::spin
