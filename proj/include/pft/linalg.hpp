#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace pft {

using cplx = std::complex<double>;

// Dense row-major 2x2 / 4x4 complex matrices, sized for single- and
// two-qubit operators.
using mat2 = std::array<cplx, 4>;
using mat4 = std::array<cplx, 16>;

inline mat2 mul(const mat2& a, const mat2& b) {
  mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) c[2 * i + j] += a[2 * i + k] * b[2 * k + j];
  return c;
}

inline mat4 mul(const mat4& a, const mat4& b) {
  mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c[4 * i + j] += a[4 * i + k] * b[4 * k + j];
  return c;
}

inline mat4 kron(const mat2& a, const mat2& b) {
  mat4 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          c[4 * (2 * i + k) + (2 * j + l)] = a[2 * i + j] * b[2 * k + l];
  return c;
}

template <std::size_t N>
std::array<cplx, N> dagger(const std::array<cplx, N>& a) {
  constexpr int d = (N == 4) ? 2 : 4;
  std::array<cplx, N> c{};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[d * i + j] = std::conj(a[d * j + i]);
  return c;
}

// |<a|b>| after normalisation; 1 means equal up to global phase.
inline double overlap_mod(const std::vector<cplx>& a,
                          const std::vector<cplx>& b) {
  cplx ip = 0;
  double na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ip += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0 || nb == 0) return 0;
  return std::abs(ip) / std::sqrt(na * nb);
}

namespace gates {

inline constexpr double pi = 3.14159265358979323846;

inline mat2 identity2() { return {1, 0, 0, 1}; }
inline mat2 pauli_x() { return {0, 1, 1, 0}; }
inline mat2 pauli_y() { return {0, cplx(0, -1), cplx(0, 1), 0}; }
inline mat2 pauli_z() { return {1, 0, 0, -1}; }
inline mat2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}

// Rotation conventions: R_P(theta) = cos(theta/2) I + i sin(theta/2) P.
inline mat2 x_rot(double theta_deg) {
  const double h = theta_deg * pi / 360.0;
  const cplx c = std::cos(h), is = cplx(0, std::sin(h));
  return {c, is, is, c};
}
inline mat2 z_rot(double theta_deg) {
  const double h = theta_deg * pi / 360.0;
  const cplx c = std::cos(h), is = cplx(0, std::sin(h));
  return {c + is, 0, 0, c - is};
}
inline mat4 xx_rot(double theta_deg) {
  const double h = theta_deg * pi / 360.0;
  const cplx c = std::cos(h), is = cplx(0, std::sin(h));
  mat4 m{};
  for (int i = 0; i < 4; ++i) m[4 * i + i] = c;
  // i sin * X(x)X : anti-diagonal.
  for (int i = 0; i < 4; ++i) m[4 * i + (3 - i)] = is;
  return m;
}

// The dressed entangling gate: local -90 X rotations after XX(90).
inline mat4 xxp90() {
  return mul(kron(x_rot(-90), x_rot(-90)), xx_rot(90));
}

inline mat4 cnot() {
  return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
}
inline mat4 cz() {
  mat4 m{};
  m[0] = m[5] = m[10] = 1;
  m[15] = -1;
  return m;
}

}  // namespace gates
}  // namespace pft
