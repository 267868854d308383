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

#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace bosonbudget {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Throws NumericError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& a, std::string_view what);

/// Max-norm of A^dagger A - I. Requires a square matrix.
double unitarity_defect(const ComplexMatrix& a);

/// An M x M network matrix together with its measured unitarity defect.
///
/// Row i holds the amplitudes of input mode i onto the output modes, i.e.
/// a_i^dagger = sum_l U(i, l) b_l^dagger. The constructor does not force
/// unitarity; callers that need it check unitarity_defect().
class NetworkUnitary {
public:
    explicit NetworkUnitary(ComplexMatrix u);

    int modes() const noexcept { return static_cast<int>(u_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return u_; }
    double unitarity_defect() const noexcept { return defect_; }
    Complex operator()(int row, int col) const { return u_(row, col); }

    NetworkUnitary adjoint() const { return NetworkUnitary(u_.adjoint()); }

private:
    ComplexMatrix u_;
    double defect_;
};

}  // namespace bosonbudget
