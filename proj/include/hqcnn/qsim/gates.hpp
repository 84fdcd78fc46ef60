// Copyright 2026 The hqcnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Gate matrices and their parameter derivatives.
 *
 * Two-qubit matrices are written in the basis |control, target>, i.e. the
 * row/column index is 2 * control_bit + target_bit. Every two-qubit gate in
 * the set is a controlled operation, so its matrix is block-diagonal with an
 * identity upper-left block.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace hqcnn::qsim::gates {

template <typename T> using Complex = std::complex<T>;
template <typename T> using Matrix2c = Eigen::Matrix<Complex<T>, 2, 2>;
template <typename T> using Matrix4c = Eigen::Matrix<Complex<T>, 4, 4>;

namespace detail {
template <typename T> Complex<T> expi(T angle) {
    return {std::cos(angle), std::sin(angle)};
}
} // namespace detail

/// Standard X rotation, off-diagonals -i sin(theta/2).
template <typename T> Matrix2c<T> rx(T theta) {
    const T c = std::cos(theta / 2);
    const T s = std::sin(theta / 2);
    Matrix2c<T> m;
    m << Complex<T>{c, 0}, Complex<T>{0, -s}, Complex<T>{0, -s},
        Complex<T>{c, 0};
    return m;
}

template <typename T> Matrix2c<T> rx_derivative(T theta) {
    const T c = std::cos(theta / 2);
    const T s = std::sin(theta / 2);
    Matrix2c<T> m;
    m << Complex<T>{-s / 2, 0}, Complex<T>{0, -c / 2}, Complex<T>{0, -c / 2},
        Complex<T>{-s / 2, 0};
    return m;
}

template <typename T> Matrix2c<T> ry(T theta) {
    const T c = std::cos(theta / 2);
    const T s = std::sin(theta / 2);
    Matrix2c<T> m;
    m << c, -s, s, c;
    return m;
}

template <typename T> Matrix2c<T> ry_derivative(T theta) {
    const T c = std::cos(theta / 2);
    const T s = std::sin(theta / 2);
    Matrix2c<T> m;
    m << -s / 2, -c / 2, c / 2, -s / 2;
    return m;
}

template <typename T> Matrix2c<T> rz(T lambda) {
    Matrix2c<T> m = Matrix2c<T>::Zero();
    m(0, 0) = detail::expi<T>(-lambda / 2);
    m(1, 1) = detail::expi<T>(lambda / 2);
    return m;
}

template <typename T> Matrix2c<T> rz_derivative(T lambda) {
    const Complex<T> i{0, 1};
    Matrix2c<T> m = Matrix2c<T>::Zero();
    m(0, 0) = -i / T(2) * detail::expi<T>(-lambda / 2);
    m(1, 1) = i / T(2) * detail::expi<T>(lambda / 2);
    return m;
}

template <typename T> Matrix2c<T> hadamard() {
    const T r = T(1) / std::sqrt(T(2));
    Matrix2c<T> m;
    m << r, r, r, -r;
    return m;
}

/// Lower-right block of CROT(phi, theta, omega), i.e. RZ(omega) RY(theta)
/// RZ(phi).
template <typename T> Matrix2c<T> rot(T phi, T theta, T omega) {
    const T c = std::cos(theta / 2);
    const T s = std::sin(theta / 2);
    Matrix2c<T> m;
    m(0, 0) = detail::expi<T>(-(phi + omega) / 2) * c;
    m(0, 1) = -detail::expi<T>((phi - omega) / 2) * s;
    m(1, 0) = detail::expi<T>(-(phi - omega) / 2) * s;
    m(1, 1) = detail::expi<T>((phi + omega) / 2) * c;
    return m;
}

/// Derivative of rot() with respect to parameter `which` (0 = phi,
/// 1 = theta, 2 = omega).
template <typename T>
Matrix2c<T> rot_derivative(T phi, T theta, T omega, int which) {
    const Complex<T> half_i{0, T(0.5)};
    if (which == 1) {
        const T c = std::cos(theta / 2);
        const T s = std::sin(theta / 2);
        Matrix2c<T> m;
        m(0, 0) = detail::expi<T>(-(phi + omega) / 2) * (-s / 2);
        m(0, 1) = -detail::expi<T>((phi - omega) / 2) * (c / 2);
        m(1, 0) = detail::expi<T>(-(phi - omega) / 2) * (c / 2);
        m(1, 1) = detail::expi<T>((phi + omega) / 2) * (-s / 2);
        return m;
    }
    Matrix2c<T> m = rot(phi, theta, omega);
    // phi and omega enter every entry as a pure phase e^{+-i x/2}.
    const T sign_01 = which == 0 ? T(1) : T(-1);
    m(0, 0) *= -half_i;
    m(0, 1) *= sign_01 * half_i;
    m(1, 0) *= -sign_01 * half_i;
    m(1, 1) *= half_i;
    return m;
}

/// Embeds a 2x2 block as the control=1 block of a two-qubit matrix. The
/// control=0 block is `upper` (identity for a gate, zero for a derivative).
template <typename T>
Matrix4c<T> controlled(const Matrix2c<T> &block, T upper = T(1)) {
    Matrix4c<T> m = Matrix4c<T>::Zero();
    m(0, 0) = upper;
    m(1, 1) = upper;
    m.template bottomRightCorner<2, 2>() = block;
    return m;
}

template <typename T> Matrix4c<T> crx(T theta) { return controlled(rx(theta)); }
template <typename T> Matrix4c<T> crz(T theta) { return controlled(rz(theta)); }

template <typename T> Matrix4c<T> crot(T phi, T theta, T omega) {
    return controlled(rot(phi, theta, omega));
}

template <typename T> Matrix4c<T> cphase(T phi) {
    Matrix4c<T> m = Matrix4c<T>::Identity();
    m(3, 3) = detail::expi<T>(phi);
    return m;
}

template <typename T> Matrix4c<T> cphase_derivative(T phi) {
    Matrix4c<T> m = Matrix4c<T>::Zero();
    m(3, 3) = Complex<T>{0, 1} * detail::expi<T>(phi);
    return m;
}

} // namespace hqcnn::qsim::gates
