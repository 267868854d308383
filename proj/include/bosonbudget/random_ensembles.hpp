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

#include "bosonbudget/matrix.hpp"
#include "bosonbudget/rng.hpp"

namespace bosonbudget {

inline constexpr int kMaxHaarModes = 4096;

/// Haar-distributed M x M unitary: QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q, which makes the law exactly Haar.
NetworkUnitary haar_unitary(int modes, RngStream& rng);

/// N x N matrix of i.i.d. complex Gaussians with density (M/pi) exp(-M|z|^2),
/// i.e. zero mean and E|z|^2 = 1/M.
ComplexMatrix gaussian_submatrix(int photons, int modes, RngStream& rng);

/// True when M >= 10 N^2, where the Gaussian approximation of Haar
/// submatrices is considered reliable.
bool gaussian_regime(int photons, int modes);

/// U_jk = exp(2 pi i (j-1)(k-1) / M) / sqrt(M).
NetworkUnitary fourier_matrix(int modes);

}  // namespace bosonbudget
