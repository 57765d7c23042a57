#include "gamow/rep_algebra.hpp"

#include <stdexcept>

namespace gamow {

SpinLabel::SpinLabel(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 0)
    throw std::domain_error("spin label requires twice_j >= 0");
}

RepRow rep_row_from_int(int row) {
  if (row < 1 || row > 4)
    throw std::domain_error("representation row must be 1..4, got " +
                            std::to_string(row));
  return static_cast<RepRow>(row);
}

int to_int(RepRow row) noexcept { return static_cast<int>(row); }

bool space_doubling(RepRow row) noexcept { return row != RepRow::one; }

int epsilon_r(RepRow row, SpinLabel j) noexcept {
  const int s = j.parity_sign();
  return (row == RepRow::two || row == RepRow::four) ? -s : s;
}

int epsilon_t(RepRow row, SpinLabel j) noexcept {
  const int s = j.parity_sign();
  return (row == RepRow::three || row == RepRow::four) ? -s : s;
}

RegimeIndex::RegimeIndex(int r) : r_(r) {
  if (r != 0 && r != 1)
    throw std::domain_error("regime index must be 0 or 1");
}

bool SymmetryOperator::is_signed_permutation() const {
  if (matrix.rows() != matrix.cols())
    return false;
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    int row_nz = 0;
    int col_nz = 0;
    for (Eigen::Index k = 0; k < matrix.cols(); ++k) {
      const int rv = matrix(i, k);
      const int cv = matrix(k, i);
      if (rv != 0 && rv != 1 && rv != -1)
        return false;
      row_nz += rv != 0;
      col_nz += cv != 0;
    }
    if (row_nz != 1 || col_nz != 1)
      return false;
  }
  return true;
}

SymmetryOperator identity_operator(Eigen::Index dim) {
  return {IntMatrix::Identity(dim, dim), false};
}

SymmetryOperator build_c_matrix(SpinLabel j) {
  const int n = j.dim();
  IntMatrix c = IntMatrix::Zero(n, n);
  // Index i holds 2*mu = twice_j - 2i; nu = -mu sits at index n-1-i.
  // j + mu = (twice_j + 2mu)/2 = twice_j - i, always an integer.
  for (int i = 0; i < n; ++i) {
    const int exponent = j.twice_j() - i;
    c(i, n - 1 - i) = (exponent % 2 == 0) ? 1 : -1;
  }
  return {c, false};
}

namespace {

// [[tl, tr], [bl, br]]
IntMatrix blocks(const IntMatrix &tl, const IntMatrix &tr, const IntMatrix &bl,
                 const IntMatrix &br) {
  const Eigen::Index n = tl.rows();
  IntMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = tl;
  m.topRightCorner(n, n) = tr;
  m.bottomLeftCorner(n, n) = bl;
  m.bottomRightCorner(n, n) = br;
  return m;
}

} // namespace

SymmetryOperator build_sigma(RepRow row, SpinLabel j) {
  const int n = j.dim();
  const IntMatrix id = IntMatrix::Identity(n, n);
  const IntMatrix zero = IntMatrix::Zero(n, n);
  switch (row) {
  case RepRow::one:
    return {id, false};
  case RepRow::two:
  case RepRow::three:
    return {blocks(id, zero, zero, -id), false};
  case RepRow::four:
    return {blocks(id, zero, zero, id), false};
  }
  throw std::logic_error("unreachable RepRow");
}

SymmetryOperator build_r(RepRow row, SpinLabel j) {
  const IntMatrix c = build_c_matrix(j).matrix;
  const IntMatrix zero = IntMatrix::Zero(c.rows(), c.cols());
  switch (row) {
  case RepRow::one:
    return {c, true};
  case RepRow::two:
  case RepRow::four:
    return {blocks(zero, c, -c, zero), true};
  case RepRow::three:
    return {blocks(zero, c, c, zero), true};
  }
  throw std::logic_error("unreachable RepRow");
}

SymmetryOperator build_t(RepRow row, SpinLabel j) {
  const IntMatrix c = build_c_matrix(j).matrix;
  const IntMatrix zero = IntMatrix::Zero(c.rows(), c.cols());
  switch (row) {
  case RepRow::one:
    return {c, true};
  case RepRow::two:
    return {blocks(zero, c, c, zero), true};
  case RepRow::three:
  case RepRow::four:
    return {blocks(zero, c, -c, zero), true};
  }
  throw std::logic_error("unreachable RepRow");
}

SymmetryOperator compose(const SymmetryOperator &a, const SymmetryOperator &b) {
  if (a.matrix.cols() != b.matrix.rows())
    throw std::invalid_argument("compose: dimension mismatch");
  // Integer matrices are real, so conj(b.matrix) == b.matrix.
  return {a.matrix * b.matrix, a.antilinear != b.antilinear};
}

SymmetryOperator negate(const SymmetryOperator &op) {
  return {-op.matrix, op.antilinear};
}

ComplexVector apply(const SymmetryOperator &op, const ComplexVector &v) {
  if (op.matrix.cols() != v.size())
    throw std::invalid_argument("apply: dimension mismatch");
  const Eigen::MatrixXcd m = op.matrix.cast<std::complex<double>>();
  return op.antilinear ? ComplexVector(m * v.conjugate()) : ComplexVector(m * v);
}

RelationReport verify_group_relations(RepRow row, SpinLabel j) {
  const SymmetryOperator sigma = build_sigma(row, j);
  const SymmetryOperator r = build_r(row, j);
  const SymmetryOperator t = build_t(row, j);
  const SymmetryOperator id = identity_operator(sigma.dim());

  const int er = epsilon_r(row, j);
  const int et = epsilon_t(row, j);
  const SymmetryOperator eps_r_id{er * id.matrix, false};
  const SymmetryOperator eps_t_id{et * id.matrix, false};

  const SymmetryOperator sr = compose(sigma, r);
  const SymmetryOperator rs = compose(r, sigma);

  RelationReport rep{row, j, er, et, false, false, false, false, false, false};
  rep.sigma_squared_is_identity = compose(sigma, sigma) == id;
  rep.r_squared_matches_eps_r = compose(r, r) == eps_r_id;
  rep.t_squared_matches_eps_t = compose(t, t) == eps_t_id;
  rep.t_equals_sigma_r = sr == t;
  rep.sigma_r_equals_r_sigma = sr == rs;
  rep.sigma_r_equals_r_sigma_up_to_sign = sr == rs || sr == negate(rs);
  return rep;
}

} // namespace gamow
