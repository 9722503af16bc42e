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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace leoris
{

enum class Sense
{
    LessEqual,
    Equal,
    GreaterEqual,
};

struct SdpConstraint
{
    CMat A; // Hermitian, dim x dim
    Sense sense = Sense::Equal;
    double rhs = 0.0;
};

// maximize Re Tr(C X)  s.t.  Re Tr(A_i X) (<=, =, >=) b_i,  X_jj <= u_j,  X Hermitian PSD.
struct SdpProblem
{
    int dim = 0;
    CMat objective;
    std::vector<SdpConstraint> constraints;
    std::optional<RVec> diag_upper; // each entry becomes Tr(E_jj X) <= u_j

    void validate() const;
};

enum class SdpStatus
{
    Optimal,
    Infeasible,
    MaxIter,
};

std::string to_string(SdpStatus status);

// Relative residuals of the (scaled) conic problem.
struct KktResiduals
{
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;

    double max() const;
};

struct SdpSolution
{
    CMat X;
    double objective = 0.0;
    RVec duals; // one per constraint, then one per diag_upper entry; >= 0 for inequalities (>= rows in <= form)
    SdpStatus status = SdpStatus::MaxIter;
    KktResiduals kkt;
    int iterations = 0;
    double infeasibility_residual = 0.0; // certificate quality when status is Infeasible
};

// Primal-dual interior point (NT direction, Mehrotra predictor-corrector) on the
// real symmetric embedding of the problem.
SdpSolution solve_sdp(const SdpProblem &problem, double tol = 1e-7, int max_iter = 100);

// Debug dump:
//   leoris-sdp 1
//   dim <n> constraints <m> diag_upper <0|1>
//   objective
//   <n rows of n "re im" pairs>
//   constraint <i> <le|eq|ge> <rhs>
//   <n rows of n "re im" pairs>
//   diag_upper <n values>            (when present)
void write_sdp_text(std::ostream &os, const SdpProblem &problem);

} // namespace leoris
