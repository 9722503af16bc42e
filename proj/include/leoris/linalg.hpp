// SPDX-License-Identifier: Apache-2.0
//
// leoris - active-RIS assisted LEO satellite downlink simulator and optimizer
// Copyright (C) 2026 The leoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "leoris/types.hpp"

namespace leoris
{

struct HermitianEigen
{
    RVec values;  // descending
    CMat vectors; // column i pairs with values(i)
};

bool is_hermitian(const CMat &H, double rel_tol = 1e-12);

// Throws std::invalid_argument when H deviates from Hermitian beyond 1e-9 relative.
HermitianEigen hermitian_eig(const CMat &H);

// [[Re H, -Im H], [Im H, Re H]]; spectrum of H with doubled multiplicity.
RMat complex_to_real_embed(const CMat &H);

// Inverse of the embedding, averaging the two redundant copies.
CMat real_to_complex(const RMat &X);

// Sum / max of absolute eigenvalues (trace / largest eigenvalue for PSD input).
double nuclear_norm(const CMat &H);
double spectral_norm(const CMat &H);

} // namespace leoris
