#include "tfp/spinor.hpp"

#include <cmath>

namespace tfp {

namespace {

constexpr complexd kI{0.0, 1.0};

double vecNorm(const Vec3& p) {
  return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
}

// sigma . p
Mat2 sigmaDot(const Vec3& p) {
  return Mat2{complexd{p[2], 0.0}, complexd{p[0], -p[1]},
              complexd{p[0], p[1]}, complexd{-p[2], 0.0}};
}

}  // namespace

double Spinor2::norm2() const { return std::norm(c0) + std::norm(c1); }

bool Spinor2::isUnit(double tol) const { return std::abs(norm2() - 1.0) < tol; }

Spinor2 Spinor2::normalized() const {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw ValidationError("cannot normalize a zero spinor");
  return Spinor2{c0 / n, c1 / n};
}

complexd dot(const Spinor2& a, const Spinor2& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

Mat2 Mat2::identity() { return {1.0, 0.0, 0.0, 1.0}; }
Mat2 Mat2::sigmaX() { return {0.0, 1.0, 1.0, 0.0}; }
Mat2 Mat2::sigmaY() { return {0.0, -kI, kI, 0.0}; }
Mat2 Mat2::sigmaZ() { return {1.0, 0.0, 0.0, -1.0}; }
Mat2 Mat2::hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}

Mat2 Mat2::adjoint() const {
  return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
}

complexd Mat2::det() const { return m00 * m11 - m01 * m10; }

complexd Mat2::trace() const { return m00 + m11; }

double Mat2::frobeniusNorm() const {
  return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) +
                   std::norm(m11));
}

Mat2 Mat2::inverse() const {
  const complexd d = det();
  if (std::abs(d) < 1e-300 * frobeniusNorm() || std::abs(d) == 0.0) {
    throw NumericError("singular 2x2 matrix (|det| = " +
                       std::to_string(std::abs(d)) + ")");
  }
  return {m11 / d, -m01 / d, -m10 / d, m00 / d};
}

double Mat2::conditionNumber() const {
  return frobeniusNorm() * inverse().frobeniusNorm();
}

bool Mat2::isUnitary(double tol) const {
  const Mat2 g = adjoint() * (*this);
  return std::abs(g.m00 - 1.0) < tol && std::abs(g.m11 - 1.0) < tol &&
         std::abs(g.m01) < tol && std::abs(g.m10) < tol;
}

Spinor2 Mat2::operator*(const Spinor2& v) const {
  return {m00 * v.c0 + m01 * v.c1, m10 * v.c0 + m11 * v.c1};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
          m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
}

Mat2 operator*(complexd s, const Mat2& a) {
  return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
}

Spinor2 solve2x2(const Mat2& a, const Spinor2& b) {
  const complexd d = a.det();
  const double scale = a.frobeniusNorm();
  if (std::abs(d) <= 1e-14 * scale * scale) {
    throw NumericError(
        "singular 2x2 continuity system, condition estimate unbounded "
        "(|det| = " + std::to_string(std::abs(d)) + ")");
  }
  return {(b.c0 * a.m11 - a.m01 * b.c1) / d, (a.m00 * b.c1 - b.c0 * a.m10) / d};
}

UnitaryMatrix2::UnitaryMatrix2(const Mat2& m, double tol) : m_(m) {
  if (!m.isUnitary(tol)) throw ValidationError("matrix is not unitary");
}

double Bispinor::normDensity() const {
  return (upper.norm2() + lower.norm2()) * volume;
}

Bispinor plane_wave(const Vec3& p, EnergySign sign, const Spinor2& chi,
                    double m, double V, bool raw) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("mass must be positive");
  if (!(V > 0.0) || !std::isfinite(V)) throw ValidationError("mode volume must be positive");
  for (double x : p) {
    if (!std::isfinite(x)) throw ValidationError("momentum must be finite");
  }
  if (chi.norm2() == 0.0) throw ValidationError("zero-norm spinor");
  if (!raw && !chi.isUnit(1e-9)) {
    throw ValidationError("spinor must be unit-normalized");
  }

  const double pn = vecNorm(p);
  const double E = std::sqrt(pn * pn + m * m);

  Bispinor psi;
  psi.chi = chi;
  psi.momentum = p;
  psi.mass = m;
  psi.volume = V;

  if (sign == EnergySign::Positive) {
    const double pref = std::sqrt((E + m) / (2.0 * E * V));
    psi.energy = E;
    psi.upper = Spinor2{pref * chi.c0, pref * chi.c1};
    // (sigma.p)/(E+m) acting on the prefactored upper components
    const Mat2 sp = sigmaDot(p);
    const Spinor2 sChi = sp * chi;
    const double lpref = pref / (E + m);
    psi.lower = Spinor2{lpref * sChi.c0, lpref * sChi.c1};
  } else {
    if (pn == 0.0) {
      throw ValidationError(
          "degenerate limit: negative-energy mode at |p| = 0");
    }
    // lower = -(sigma.p)/(E-m) * upper with upper prefactor
    // sqrt((E-m)/(2EV)); the product form avoids the (E-m) division:
    // lower = -(sigma.p/|p|) sqrt((E+m)/(2EV)) chi.
    psi.energy = -E;
    // E - m as p^2/(E + m) avoids cancellation at small |p|.
    const double upref = std::sqrt(pn * pn / (E + m) / (2.0 * E * V));
    psi.upper = Spinor2{upref * chi.c0, upref * chi.c1};
    const Vec3 phat{p[0] / pn, p[1] / pn, p[2] / pn};
    const Spinor2 sChi = sigmaDot(phat) * chi;
    const double lpref = -std::sqrt((E + m) / (2.0 * E * V));
    psi.lower = Spinor2{lpref * sChi.c0, lpref * sChi.c1};
  }

  if (!raw) {
    // Fix the global phase: largest-magnitude upper component real positive.
    const complexd lead =
        std::abs(psi.upper.c0) >= std::abs(psi.upper.c1) ? psi.upper.c0
                                                         : psi.upper.c1;
    const double mag = std::abs(lead);
    if (mag > 0.0) {
      const complexd phase = std::conj(lead) / mag;
      psi.upper = Spinor2{phase * psi.upper.c0, phase * psi.upper.c1};
      psi.lower = Spinor2{phase * psi.lower.c0, phase * psi.lower.c1};
      psi.chi = Spinor2{phase * psi.chi.c0, phase * psi.chi.c1};
    }
  }
  return psi;
}

Bispinor pt_transform(const Bispinor& psi) {
  const Mat2 sy = Mat2::sigmaY();
  const Spinor2 conj{std::conj(psi.chi.c0), std::conj(psi.chi.c1)};
  const Spinor2 flipped = sy * conj;
  const Spinor2 chi2{-flipped.c0, -flipped.c1};
  return plane_wave(psi.momentum,
                    psi.energy >= 0.0 ? EnergySign::Positive
                                      : EnergySign::Negative,
                    chi2, psi.mass, psi.volume, /*raw=*/true);
}

complexd overlap(const Bispinor& a, const Bispinor& b) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a.momentum[i] - b.momentum[i]) > 1e-12) {
      throw ValidationError(
          "overlap requested between modes of different momentum");
    }
  }
  if (std::abs(a.volume - b.volume) > 1e-12) {
    throw ValidationError("overlap requested between different mode volumes");
  }
  return (dot(a.upper, b.upper) + dot(a.lower, b.lower)) * a.volume;
}

Spinor2 basis_chi(int s) {
  if (s == 0) return Spinor2{1.0, 0.0};
  if (s == 1) return Spinor2{0.0, 1.0};
  throw ValidationError("spin index must be 0 or 1");
}

complexd spin_matrix_element(int s, const Mat2& u, const Bispinor& psi0) {
  const EnergySign sign =
      psi0.energy >= 0.0 ? EnergySign::Positive : EnergySign::Negative;
  const Bispinor basis =
      plane_wave(psi0.momentum, sign, basis_chi(s), psi0.mass, psi0.volume);
  const Bispinor rotated = plane_wave(psi0.momentum, sign, u * psi0.chi,
                                      psi0.mass, psi0.volume, /*raw=*/true);
  return overlap(basis, rotated);
}

}  // namespace tfp
