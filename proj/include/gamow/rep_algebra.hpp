#pragma once
// Co-representations of the Galilei group extended by space and time
// inversions: parity Sigma (unitary), time reversal R and total inversion T
// (both antiunitary), on spin space or on its doubled copy.
//
// Spin basis ordering is fixed everywhere: mu = j, j-1, ..., -j.
// Doubled spaces are ordered (r = 0 block, r = 1 block).

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace gamow {

using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::VectorXcd;

/// Spin j stored as 2j so half-integers stay exact.
class SpinLabel {
public:
  explicit SpinLabel(int twice_j);

  int twice_j() const noexcept { return twice_j_; }
  int dim() const noexcept { return twice_j_ + 1; }
  bool half_integer() const noexcept { return twice_j_ % 2 != 0; }
  /// (-1)^{2j}
  int parity_sign() const noexcept { return half_integer() ? -1 : 1; }

  friend bool operator==(const SpinLabel &, const SpinLabel &) = default;

private:
  int twice_j_;
};

/// The four rows of the inversion table, classified by (eps_R, eps_T).
enum class RepRow { one = 1, two = 2, three = 3, four = 4 };

/// Throws std::domain_error unless 1 <= row <= 4.
RepRow rep_row_from_int(int row);
int to_int(RepRow row) noexcept;

/// Rows 2-4 act on two copies of spin space labelled r = 0, 1.
bool space_doubling(RepRow row) noexcept;
int epsilon_r(RepRow row, SpinLabel j) noexcept;
int epsilon_t(RepRow row, SpinLabel j) noexcept;

/// r in {0, 1}: 0 is the laboratory regime, 1 its time-reversed counterpart.
class RegimeIndex {
public:
  explicit RegimeIndex(int r);
  int value() const noexcept { return r_; }
  RegimeIndex flipped() const noexcept { return RegimeIndex(1 - r_); }
  friend bool operator==(const RegimeIndex &, const RegimeIndex &) = default;

private:
  int r_;
};

/// A finite matrix plus a flag; antilinear operators act as M * conj(v).
struct SymmetryOperator {
  IntMatrix matrix;
  bool antilinear = false;

  Eigen::Index dim() const noexcept { return matrix.rows(); }
  /// Exactly one nonzero entry, equal to +-1, in every row and column.
  bool is_signed_permutation() const;

  friend bool operator==(const SymmetryOperator &a, const SymmetryOperator &b) {
    return a.antilinear == b.antilinear && a.matrix.rows() == b.matrix.rows() &&
           a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix;
  }
};

SymmetryOperator identity_operator(Eigen::Index dim);

/// c_{mu,nu} = (-1)^{j+mu} delta_{mu,-nu}; satisfies C*C = (-1)^{2j} I.
SymmetryOperator build_c_matrix(SpinLabel j);
SymmetryOperator build_sigma(RepRow row, SpinLabel j);
SymmetryOperator build_r(RepRow row, SpinLabel j);
/// Built from the T column directly, not as a product.
SymmetryOperator build_t(RepRow row, SpinLabel j);

/// a o b. Antilinear a conjugates the matrix of b; flags combine by XOR.
/// Throws std::invalid_argument on dimension mismatch.
SymmetryOperator compose(const SymmetryOperator &a, const SymmetryOperator &b);
SymmetryOperator negate(const SymmetryOperator &op);

/// Throws std::invalid_argument on dimension mismatch.
ComplexVector apply(const SymmetryOperator &op, const ComplexVector &v);

struct RelationReport {
  RepRow row;
  SpinLabel j;
  int eps_r;
  int eps_t;
  bool sigma_squared_is_identity;
  bool r_squared_matches_eps_r;
  bool t_squared_matches_eps_t;
  bool t_equals_sigma_r;
  bool sigma_r_equals_r_sigma;
  // Phase-relaxed reading: Sigma R = +-R Sigma.
  bool sigma_r_equals_r_sigma_up_to_sign;

  bool all_exact() const noexcept {
    return sigma_squared_is_identity && r_squared_matches_eps_r &&
           t_squared_matches_eps_t && t_equals_sigma_r && sigma_r_equals_r_sigma;
  }
};

RelationReport verify_group_relations(RepRow row, SpinLabel j);

} // namespace gamow
