#include "thermochain/spin_ops.hpp"

namespace thermochain::spin {

Eigen::MatrixXd sigma_z(int site, int sites) {
  const int d = dimension(sites);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = sz_value(i, site);
  return m;
}

Eigen::MatrixXd sigma_x(int site, int sites) {
  const int d = dimension(sites);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i ^ (1 << site), i) = 1.0;
  return m;
}

Eigen::MatrixXd sigma_y_times_minus_i(int site, int sites) {
  // -i sigma^y = |d><u| - |u><d| in the bit convention used here:
  // sigma^y |u> = i |d>, sigma^y |d> = -i |u>.
  const int d = dimension(sites);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const bool down = (i >> site) & 1;
    m(i ^ (1 << site), i) = down ? -1.0 : 1.0;
  }
  return m;
}

Eigen::MatrixXd pair_flip(int s1, int s2, int sites) {
  const int d = dimension(sites);
  const int mask = (1 << s1) | (1 << s2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int b1 = (i >> s1) & 1;
    const int b2 = (i >> s2) & 1;
    if (b1 == b2) m(i ^ mask, i) += 1.0;
  }
  return m;
}

void add_pair_flip_apply(const Eigen::VectorXd& x, double coeff, int s1, int s2,
                         Eigen::VectorXd& y) {
  const int d = static_cast<int>(x.size());
  const int mask = (1 << s1) | (1 << s2);
  for (int i = 0; i < d; ++i) {
    const int b1 = (i >> s1) & 1;
    const int b2 = (i >> s2) & 1;
    if (b1 == b2) y(i ^ mask) += coeff * x(i);
  }
}

}  // namespace thermochain::spin
