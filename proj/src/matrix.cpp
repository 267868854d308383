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

#include "bosonbudget/matrix.hpp"

#include <cmath>
#include <string>

#include "bosonbudget/error.hpp"

namespace bosonbudget {

void require_finite(const ComplexMatrix& a, std::string_view what) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Complex z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NumericError(std::string(what) + ": non-finite entry at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

double unitarity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("unitarity_defect: matrix is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    }
    const ComplexMatrix d = a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
    return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

NetworkUnitary::NetworkUnitary(ComplexMatrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() < 1) {
        throw DimensionError("network matrix must be square with M >= 1, got " +
                             std::to_string(u_.rows()) + "x" + std::to_string(u_.cols()));
    }
    require_finite(u_, "network matrix");
    defect_ = bosonbudget::unitarity_defect(u_);
}

}  // namespace bosonbudget
