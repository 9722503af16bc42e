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

#include "leoris/linalg.hpp"
#include "leoris/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace leoris
{

CVec optimize_transmit_bf(const CMat &H_sr, const CVec &H_ru, const CVec &theta, bool *degenerate)
{
    if (H_ru.size() != H_sr.rows() || theta.size() != H_sr.rows())
        throw std::invalid_argument("optimize_transmit_bf: dimension mismatch");
    const Eigen::Index L = H_sr.cols();

    // h^H Theta H_sr as a row vector; H1 is its outer product.
    const CVec a = (H_ru.conjugate().cwiseProduct(theta)).transpose() * H_sr;
    const CMat H1 = a.conjugate() * a.transpose();

    if (degenerate)
        *degenerate = false;
    if (H1.cwiseAbs().maxCoeff() == 0.0)
    {
        if (degenerate)
            *degenerate = true;
        CVec e = CVec::Zero(L);
        e(0) = 1.0;
        return e;
    }
    const HermitianEigen eig = hermitian_eig(H1);
    CVec w = eig.vectors.col(0);
    return w / w.norm();
}

} // namespace leoris
