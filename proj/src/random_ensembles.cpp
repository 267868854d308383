// Copyright 2026 The bosonbudget Authors
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

#include "bosonbudget/random_ensembles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

NetworkUnitary haar_unitary(int modes, RngStream& rng) {
    if (modes < 1 || modes > kMaxHaarModes) {
        throw ResourceError("haar_unitary: M=" + std::to_string(modes) + " outside [1, " +
                            std::to_string(kMaxHaarModes) + "]");
    }
    const double scale = std::sqrt(0.5);
    ComplexMatrix z(modes, modes);
    for (int j = 0; j < modes; ++j) {
        for (int i = 0; i < modes; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(scale * re, scale * im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < modes; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }
    return NetworkUnitary(std::move(q));
}

ComplexMatrix gaussian_submatrix(int photons, int modes, RngStream& rng) {
    if (photons < 1 || modes < 1) {
        throw DomainError("gaussian_submatrix: need N >= 1 and M >= 1");
    }
    const double sigma = std::sqrt(0.5 / modes);
    ComplexMatrix a(photons, photons);
    for (int j = 0; j < photons; ++j) {
        for (int i = 0; i < photons; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(i, j) = Complex(sigma * re, sigma * im);
        }
    }
    return a;
}

bool gaussian_regime(int photons, int modes) {
    return static_cast<long long>(modes) >= 10LL * photons * photons;
}

NetworkUnitary fourier_matrix(int modes) {
    if (modes < 1) throw DomainError("fourier_matrix: M must be >= 1");
    ComplexMatrix f(modes, modes);
    const double norm = 1.0 / std::sqrt(static_cast<double>(modes));
    for (int j = 0; j < modes; ++j) {
        for (int k = 0; k < modes; ++k) {
            // reduce the exponent mod M before scaling to keep phases exact
            const long long e = (static_cast<long long>(j) * k) % modes;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / modes;
            f(j, k) = std::polar(norm, angle);
        }
    }
    return NetworkUnitary(std::move(f));
}

}  // namespace bosonbudget
