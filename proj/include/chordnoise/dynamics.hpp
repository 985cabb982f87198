#pragma once

#include <stdexcept>

#include "chordnoise/phase_space.hpp"

namespace chordnoise {

/// Integer unimodular matrix [[a, b], [c, d]] acting on (q, p) column vectors.
struct LinearMapSpec {
  long long a = 1, b = 0, c = 0, d = 1;

  /// Throws std::invalid_argument unless ad - bc = 1.
  void validate() const;
  PhasePoint apply(const TorusGeometry& geom, PhasePoint x) const;

  static LinearMapSpec arnold_cat() { return {1, 1, 1, 2}; }
};

class UnquantizableMapError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnitaryMap {
 public:
  static constexpr double kUnitarityTol = 1e-12;

  /// Throws std::invalid_argument if U^dag U differs from I by more than 1e-12.
  explicit UnitaryMap(Operator op);

  int dim() const { return static_cast<int>(op_.rows()); }
  const Operator& op() const { return op_; }

  /// this * other: other acts first.
  UnitaryMap then_after(const UnitaryMap& other) const;

 private:
  Operator op_;
};

/// Quantized linear automorphism with U T_x U^dag proportional to T_{M x}.
///
/// Supported kernels:
///  - b = +-1: generating-function kernel
///      <n'|U|n> = N^{-1/2} exp[(i pi / (N b)) (a n^2 - 2 n n' + d n'^2)],
///    well defined on Z_N when a N and d N are even;
///  - b = 0, a = d = 1: position-diagonal shear exp(i pi c n^2 / N), needs c N even.
/// Anything else raises UnquantizableMapError naming the failing condition.
UnitaryMap quantize_linear_map(const TorusGeometry& geom, const LinearMapSpec& m);

/// diag exp[-i (k N / 2 pi) cos(2 pi n / N)].
UnitaryMap nonlinear_kick(const TorusGeometry& geom, double k);

/// Cat map composed after the kick: U = U_M * kick(k).
UnitaryMap perturbed_cat(const TorusGeometry& geom, double k,
                         const LinearMapSpec& m = LinearMapSpec::arnold_cat());

/// Dense N^2 x N^2 matrix with entries (1/N) Tr[T_{l'}^dag U T_l U^dag],
/// rows and columns indexed by point_index.
class ChordSuperMatrix {
 public:
  ChordSuperMatrix(TorusGeometry geom, Eigen::MatrixXcd entries);

  const TorusGeometry& geometry() const { return geom_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(PhasePoint row, PhasePoint col) const {
    return entries_(point_index(geom_, row), point_index(geom_, col));
  }

 private:
  TorusGeometry geom_;
  Eigen::MatrixXcd entries_;
};

ChordSuperMatrix chord_supermatrix(const TorusGeometry& geom, const UnitaryMap& u);

/// Selected rows/columns of the chord supermatrix, entry (i, j) for
/// (rows[i], cols[j]). Columns are built independently on up to `threads`
/// workers; the result does not depend on the thread count.
Eigen::MatrixXcd chord_supermatrix_block(const TorusGeometry& geom, const UnitaryMap& u,
                                         const std::vector<PhasePoint>& rows,
                                         const std::vector<PhasePoint>& cols, int threads = 1);

}  // namespace chordnoise
