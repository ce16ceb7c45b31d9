#ifndef TFP_SPINOR_HPP
#define TFP_SPINOR_HPP

#include <array>
#include <complex>

#include "tfp/errors.hpp"

namespace tfp {

using complexd = std::complex<double>;
using Vec3 = std::array<double, 3>;

// Two-component complex spinor.
struct Spinor2 {
  complexd c0{0.0, 0.0};
  complexd c1{0.0, 0.0};

  double norm2() const;  // chi^dag chi
  bool isUnit(double tol = 1e-12) const;
  Spinor2 normalized() const;  // throws ValidationError on zero norm
};

// a^dag b
complexd dot(const Spinor2& a, const Spinor2& b);

// 2x2 complex matrix, row major.
struct Mat2 {
  complexd m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static Mat2 identity();
  static Mat2 sigmaX();
  static Mat2 sigmaY();
  static Mat2 sigmaZ();
  static Mat2 hadamard();

  Mat2 adjoint() const;
  complexd det() const;
  complexd trace() const;
  Mat2 inverse() const;  // throws NumericError when singular
  // Frobenius-norm estimate ||A|| * ||A^-1||.
  double conditionNumber() const;
  double frobeniusNorm() const;
  bool isUnitary(double tol = 1e-12) const;

  Spinor2 operator*(const Spinor2& v) const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
};

Mat2 operator*(complexd s, const Mat2& a);

// Solves A x = b; throws NumericError when the system is singular
// (the message carries the condition estimate).
Spinor2 solve2x2(const Mat2& a, const Spinor2& b);

// 2x2 matrix validated to be unitary at construction.
class UnitaryMatrix2 {
public:
  explicit UnitaryMatrix2(const Mat2& m, double tol = 1e-12);
  const Mat2& mat() const { return m_; }

private:
  Mat2 m_;
};

enum class EnergySign { Positive, Negative };

// Plane-wave bispinor mode in a normalization volume V.
struct Bispinor {
  Spinor2 upper;
  Spinor2 lower;
  Spinor2 chi;  // the spinor the mode was built from
  Vec3 momentum{0.0, 0.0, 0.0};
  double energy = 0.0;  // signed
  double mass = 1.0;
  double volume = 1.0;

  double normDensity() const;  // psi^dag psi * V
};

// Normalized on-shell plane wave. With raw=false the global phase is fixed
// so the largest-magnitude upper component is real positive; raw=true keeps
// the construction exactly linear in chi (needed for matrix elements).
Bispinor plane_wave(const Vec3& p, EnergySign sign, const Spinor2& chi,
                    double m = 1.0, double V = 1.0, bool raw = false);

// Space-time inversion of a plane wave: chi -> -sigma_y chi^*, same (E, p).
// Applying it twice returns the negated mode (involution sign -1).
Bispinor pt_transform(const Bispinor& psi);

// a^dag b over all four components, times V. Requires matching momentum
// and volume metadata.
complexd overlap(const Bispinor& a, const Bispinor& b);

// s = 0 -> (1,0), s = 1 -> (0,1).
Spinor2 basis_chi(int s);

// C_s = psi_s^dag U psi0 in the momentum/energy sector of psi0, with U
// acting on the spinor degree of freedom and the bispinor rebuilt on shell.
complexd spin_matrix_element(int s, const Mat2& u, const Bispinor& psi0);

}  // namespace tfp

#endif
