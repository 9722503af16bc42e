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

#include "leoris/sdp.hpp"
#include "leoris/linalg.hpp"
#include "leoris/sdp_kernels.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace leoris
{

using kernels::SymConstraint;

std::string to_string(SdpStatus status)
{
    switch (status)
    {
    case SdpStatus::Optimal:
        return "optimal";
    case SdpStatus::Infeasible:
        return "infeasible";
    case SdpStatus::MaxIter:
        return "max-iter";
    }
    return "unknown";
}

double KktResiduals::max() const
{
    return std::max({primal, dual, gap});
}

void SdpProblem::validate() const
{
    if (dim < 1)
        throw std::invalid_argument("SdpProblem: dim must be positive");
    if (objective.rows() != dim || objective.cols() != dim || !is_hermitian(objective, 1e-9))
        throw std::invalid_argument("SdpProblem: objective must be Hermitian dim x dim");
    for (const auto &c : constraints)
    {
        if (c.A.rows() != dim || c.A.cols() != dim || !is_hermitian(c.A, 1e-9))
            throw std::invalid_argument("SdpProblem: constraint matrices must be Hermitian dim x dim");
        if (!std::isfinite(c.rhs))
            throw std::invalid_argument("SdpProblem: constraint rhs must be finite");
    }
    if (diag_upper && (diag_upper->size() != dim || !diag_upper->allFinite()))
        throw std::invalid_argument("SdpProblem: diag_upper must hold dim finite values");
}

namespace
{

// min <C, X>  s.t.  A(X) + S x = b,  X psd,  x >= 0, where S holds one +-1
// slack column per inequality row.
struct ConicProblem
{
    Eigen::Index n = 0;
    RMat C;
    std::vector<SymConstraint> A;
    RVec b;
    std::vector<int> lp_row;
    std::vector<double> lp_coef;

    Eigen::Index m() const { return b.size(); }
    Eigen::Index nl() const { return static_cast<Eigen::Index>(lp_row.size()); }

    RVec lp_apply(const RVec &x) const
    {
        RVec out = RVec::Zero(m());
        for (Eigen::Index k = 0; k < nl(); ++k)
            out(lp_row[k]) += lp_coef[k] * x(k);
        return out;
    }

    RVec lp_adjoint(const RVec &y) const
    {
        RVec out(nl());
        for (Eigen::Index k = 0; k < nl(); ++k)
            out(k) = lp_coef[k] * y(lp_row[k]);
        return out;
    }
};

struct IpmState
{
    RMat X, Z;
    RVec y, x, z;
};

struct IpmOutcome
{
    IpmState state;
    SdpStatus status = SdpStatus::MaxIter;
    KktResiduals kkt;
    int iterations = 0;
    double infeasibility = 0.0;
};

double frob_inner(const RMat &a, const RMat &b)
{
    return (a.array() * b.array()).sum();
}

RMat sym(const RMat &M)
{
    return 0.5 * (M + M.transpose());
}

// Largest alpha with M + alpha dM psd, given a Cholesky factor of M.
double max_step_psd(const Eigen::LLT<RMat> &llt, const RMat &dM)
{
    const RMat P1 = llt.matrixL().solve(dM);
    const RMat P = llt.matrixL().solve(P1.transpose());
    Eigen::SelfAdjointEigenSolver<RMat> es(sym(P), Eigen::EigenvaluesOnly);
    const double lam = es.eigenvalues()(0);
    return lam >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lam;
}

double max_step_lp(const RVec &v, const RVec &dv)
{
    double a = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < v.size(); ++k)
        if (dv(k) < 0.0)
            a = std::min(a, -v(k) / dv(k));
    return a;
}

IpmOutcome run_ipm(const ConicProblem &p, double tol, int max_iter)
{
    const Eigen::Index n = p.n;
    const Eigen::Index m = p.m();
    const Eigen::Index nl = p.nl();
    const double dim_total = static_cast<double>(n + nl);
    const double norm_b = p.b.norm();
    const double norm_c = p.C.norm();

    const double bmax = m > 0 ? p.b.cwiseAbs().maxCoeff() : 0.0;
    const double xi = std::max({10.0, std::sqrt(static_cast<double>(n)), 0.5 * n * (1.0 + bmax)});
    const double eta = std::max({10.0, std::sqrt(static_cast<double>(n)), norm_c});

    IpmState s;
    s.X = xi * RMat::Identity(n, n);
    s.Z = eta * RMat::Identity(n, n);
    s.y = RVec::Zero(m);
    s.x = RVec::Constant(nl, xi);
    s.z = RVec::Constant(nl, eta);

    IpmOutcome best;
    best.state = s;
    best.kkt = {1e300, 1e300, 1e300};

    const double gamma = 0.98;

    for (int it = 0;; ++it)
    {
        const RVec Rp = p.b - kernels::apply_constraints(p.A, s.X) - p.lp_apply(s.x);
        const RMat Rd = p.C - s.Z - kernels::adjoint_constraints(p.A, s.y, n);
        const RVec rdl = -s.z - p.lp_adjoint(s.y);
        const double pobj = frob_inner(p.C, s.X);
        const double dobj = p.b.dot(s.y);

        KktResiduals kkt;
        kkt.primal = Rp.norm() / (1.0 + norm_b);
        kkt.dual = std::sqrt(Rd.squaredNorm() + rdl.squaredNorm()) / (1.0 + norm_c);
        kkt.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (kkt.max() < best.kkt.max())
        {
            best.state = s;
            best.kkt = kkt;
            best.iterations = it;
        }
        if (kkt.max() <= tol)
        {
            best.state = s;
            best.kkt = kkt;
            best.iterations = it;
            best.status = SdpStatus::Optimal;
            return best;
        }

        // Farkas-type certificates from diverging iterates.
        if (dobj > 0.0 && kkt.primal > tol)
        {
            const double ratio = std::sqrt((p.C - Rd).squaredNorm() + rdl.squaredNorm()) / dobj;
            if (ratio < 1e-8)
            {
                best.status = SdpStatus::Infeasible;
                best.infeasibility = ratio;
                best.iterations = it;
                return best;
            }
        }
        if (pobj < 0.0 && kkt.dual > tol)
        {
            const double ratio = (kernels::apply_constraints(p.A, s.X) + p.lp_apply(s.x)).norm() / -pobj;
            if (ratio < 1e-8)
            {
                best.status = SdpStatus::Infeasible;
                best.infeasibility = ratio;
                best.iterations = it;
                return best;
            }
        }
        if (it >= max_iter)
            break;

        const double mu = (frob_inner(s.X, s.Z) + s.x.dot(s.z)) / dim_total;

        const Eigen::LLT<RMat> lx(s.X), lz(s.Z);
        if (lx.info() != Eigen::Success || lz.info() != Eigen::Success)
            break;
        const RMat Lx = lx.matrixL();
        const RMat Lz = lz.matrixL();

        // Nesterov-Todd scaling G with G^T Z G = G^{-1} X G^{-T} = diag(d).
        Eigen::JacobiSVD<RMat> svd(Lz.transpose() * Lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RVec d = svd.singularValues();
        if (d.minCoeff() <= 0.0)
            break;
        const RMat V = svd.matrixV();
        const RMat G = Lx * V * d.cwiseSqrt().cwiseInverse().asDiagonal();
        const RMat LxInv = lx.matrixL().solve(RMat::Identity(n, n));
        const RMat Ginv = d.cwiseSqrt().asDiagonal() * V.transpose() * LxInv;
        const RMat W = G * G.transpose();
        const RVec wl = s.x.cwiseQuotient(s.z);

        RMat M = kernels::schur_complement(W, p.A);
        for (Eigen::Index k = 0; k < nl; ++k)
            M(p.lp_row[k], p.lp_row[k]) += p.lp_coef[k] * p.lp_coef[k] * wl(k);

        Eigen::LLT<RMat> mchol(M);
        Eigen::LDLT<RMat> mldlt;
        const bool use_llt = mchol.info() == Eigen::Success;
        if (!use_llt)
            mldlt.compute(M);

        const RMat WRdW = W * Rd * W;
        const RVec A_WRdW = kernels::apply_constraints(p.A, WRdW);
        const RVec S_wlrdl = p.lp_apply(wl.cwiseProduct(rdl));

        struct Direction
        {
            RMat dX, dZ;
            RVec dy, dx, dz;
        };

        auto direction = [&](double target, const RMat *corr, const RVec *corr_l)
        {
            RMat R = RMat::Zero(n, n);
            R.diagonal() = RVec::Constant(n, target) - d.cwiseProduct(d);
            if (corr)
                R -= *corr;
            RMat Rhat(n, n);
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < n; ++i)
                    Rhat(i, j) = 2.0 * R(i, j) / (d(i) + d(j));
            const RMat GRG = G * Rhat * G.transpose();

            RVec rhat_l = (RVec::Constant(nl, target) - s.x.cwiseProduct(s.z));
            if (corr_l)
                rhat_l -= *corr_l;
            rhat_l = rhat_l.cwiseQuotient(s.z);

            const RVec rhs = Rp - kernels::apply_constraints(p.A, GRG) + A_WRdW - p.lp_apply(rhat_l) + S_wlrdl;
            Direction dir;
            if (m > 0)
                dir.dy = use_llt ? RVec(mchol.solve(rhs)) : RVec(mldlt.solve(rhs));
            else
                dir.dy = RVec::Zero(0);
            dir.dZ = sym(Rd - kernels::adjoint_constraints(p.A, dir.dy, n));
            dir.dX = sym(GRG - W * dir.dZ * W);
            dir.dz = rdl - p.lp_adjoint(dir.dy);
            dir.dx = rhat_l - wl.cwiseProduct(dir.dz);
            return dir;
        };

        auto steps = [&](const Direction &dir)
        {
            const double ap = std::min(max_step_psd(lx, dir.dX), max_step_lp(s.x, dir.dx));
            const double ad = std::min(max_step_psd(lz, dir.dZ), max_step_lp(s.z, dir.dz));
            return std::pair<double, double>{std::min(1.0, gamma * ap), std::min(1.0, gamma * ad)};
        };

        // Predictor.
        const Direction aff = direction(0.0, nullptr, nullptr);
        const auto [ap_aff, ad_aff] = steps(aff);
        const double mu_aff = (frob_inner(s.X + ap_aff * aff.dX, s.Z + ad_aff * aff.dZ) +
                               (s.x + ap_aff * aff.dx).dot(s.z + ad_aff * aff.dz)) /
                              dim_total;
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        // Corrector with the second-order term in the scaled space.
        const RMat dXs = Ginv * aff.dX * Ginv.transpose();
        const RMat dZs = G.transpose() * aff.dZ * G;
        const RMat corr = sym(dXs * dZs);
        const RVec corr_l = aff.dx.cwiseProduct(aff.dz);
        const Direction dir = direction(sigma * mu, &corr, &corr_l);
        const auto [ap, ad] = steps(dir);

        if (ap < 1e-12 && ad < 1e-12)
            break;

        s.X = sym(s.X + ap * dir.dX);
        s.x += ap * dir.dx;
        s.y += ad * dir.dy;
        s.Z = sym(s.Z + ad * dir.dZ);
        s.z += ad * dir.dz;
        best.iterations = it + 1;
    }

    best.status = SdpStatus::MaxIter;
    return best;
}

SymConstraint make_constraint(const RMat &A)
{
    SymConstraint c;
    RMat off = A;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() == 0.0)
    {
        c.diagonal = true;
        c.diag = A.diagonal();
    }
    else
    {
        c.dense = A;
    }
    return c;
}

} // namespace

SdpSolution solve_sdp(const SdpProblem &problem, double tol, int max_iter)
{
    problem.validate();

    bool real_valued = problem.objective.imag().cwiseAbs().maxCoeff() == 0.0;
    for (const auto &c : problem.constraints)
        real_valued = real_valued && c.A.imag().cwiseAbs().maxCoeff() == 0.0;

    auto to_real = [&](const CMat &H) -> RMat
    { return real_valued ? RMat(H.real()) : RMat(0.5 * complex_to_real_embed(H)); };

    const int dim = problem.dim;
    const Eigen::Index n = real_valued ? dim : 2 * dim;

    struct Row
    {
        RMat A;
        Sense sense;
        double rhs;
    };
    std::vector<Row> rows;
    for (const auto &c : problem.constraints)
        rows.push_back({to_real(c.A), c.sense, c.rhs});
    if (problem.diag_upper)
    {
        for (int j = 0; j < dim; ++j)
        {
            CMat E = CMat::Zero(dim, dim);
            E(j, j) = 1.0;
            rows.push_back({to_real(E), Sense::LessEqual, (*problem.diag_upper)(j)});
        }
    }
    const int total_rows = static_cast<int>(rows.size());

    SdpSolution sol;
    sol.duals = RVec::Zero(total_rows);
    sol.X = CMat::Zero(dim, dim);

    // Row scaling; zero rows are checked and dropped.
    ConicProblem cp;
    cp.n = n;
    std::vector<int> kept;
    std::vector<double> row_scale;
    for (int i = 0; i < total_rows; ++i)
    {
        const double r = rows[i].A.norm();
        if (r == 0.0)
        {
            const double b = rows[i].rhs;
            const double slack = 1e-12 * std::max(1.0, std::abs(b));
            const bool ok = rows[i].sense == Sense::Equal       ? std::abs(b) <= slack
                            : rows[i].sense == Sense::LessEqual ? b >= -slack
                                                                : b <= slack;
            if (!ok)
            {
                sol.status = SdpStatus::Infeasible;
                sol.infeasibility_residual = std::abs(b);
                return sol;
            }
            continue;
        }
        kept.push_back(i);
        row_scale.push_back(r);
    }

    // Drop linearly dependent equality rows after checking consistency.
    {
        const Eigen::Index m0 = static_cast<Eigen::Index>(kept.size());
        if (m0 > 0)
        {
            Eigen::Index slack_count = 0;
            for (int i : kept)
                slack_count += rows[i].sense != Sense::Equal;
            RMat Amat = RMat::Zero(m0, n * n + slack_count);
            RVec bvec(m0);
            Eigen::Index sc = 0;
            for (Eigen::Index k = 0; k < m0; ++k)
            {
                const Row &row = rows[kept[k]];
                Amat.row(k).head(n * n) = Eigen::Map<const RVec>(row.A.data(), n * n).transpose() / row_scale[k];
                if (row.sense != Sense::Equal)
                    Amat(k, n * n + sc++) = 1.0;
                bvec(k) = row.rhs / row_scale[k];
            }
            Eigen::ColPivHouseholderQR<RMat> qr(Amat.transpose());
            qr.setThreshold(1e-10);
            const Eigen::Index rank = qr.rank();
            if (rank < m0)
            {
                Eigen::CompleteOrthogonalDecomposition<RMat> cod(Amat);
                cod.setThreshold(1e-10);
                const RVec xls = cod.solve(bvec);
                const double resid = (Amat * xls - bvec).norm() / (1.0 + bvec.norm());
                if (resid > 1e-8)
                {
                    sol.status = SdpStatus::Infeasible;
                    sol.infeasibility_residual = resid;
                    return sol;
                }
                std::vector<int> indep;
                std::vector<double> indep_scale;
                std::vector<char> keep_flag(m0, 0);
                for (Eigen::Index k = 0; k < rank; ++k)
                    keep_flag[qr.colsPermutation().indices()(k)] = 1;
                for (Eigen::Index k = 0; k < m0; ++k)
                    if (keep_flag[k])
                    {
                        indep.push_back(kept[k]);
                        indep_scale.push_back(row_scale[k]);
                    }
                kept = std::move(indep);
                row_scale = std::move(indep_scale);
            }
        }
    }

    const Eigen::Index m = static_cast<Eigen::Index>(kept.size());
    cp.b.resize(m);
    for (Eigen::Index k = 0; k < m; ++k)
    {
        const Row &row = rows[kept[k]];
        cp.A.push_back(make_constraint(row.A / row_scale[k]));
        cp.b(k) = row.rhs / row_scale[k];
        if (row.sense != Sense::Equal)
        {
            cp.lp_row.push_back(static_cast<int>(k));
            cp.lp_coef.push_back(row.sense == Sense::LessEqual ? 1.0 : -1.0);
        }
    }

    cp.C = -to_real(problem.objective);
    double obj_scale = cp.C.norm();
    if (obj_scale > 0.0)
        cp.C /= obj_scale;
    else
        obj_scale = 1.0;

    const IpmOutcome out = run_ipm(cp, tol, max_iter);

    sol.status = out.status;
    sol.kkt = out.kkt;
    sol.iterations = out.iterations;
    sol.infeasibility_residual = out.infeasibility;
    if (out.status == SdpStatus::Infeasible)
        return sol;

    sol.X = real_valued ? CMat(out.state.X.cast<cplx>()) : real_to_complex(out.state.X);
    sol.X = 0.5 * (sol.X + sol.X.adjoint()).eval();
    sol.objective = (problem.objective * sol.X).trace().real();
    for (Eigen::Index k = 0; k < m; ++k)
    {
        // >= rows report the multiplier of their <= form so every inequality dual is >= 0
        const double sign = rows[kept[k]].sense == Sense::GreaterEqual ? 1.0 : -1.0;
        sol.duals(kept[k]) = sign * obj_scale * out.state.y(k) / row_scale[k];
    }
    return sol;
}

void write_sdp_text(std::ostream &os, const SdpProblem &problem)
{
    auto write_matrix = [&](const CMat &M)
    {
        for (Eigen::Index i = 0; i < M.rows(); ++i)
        {
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                os << (j ? " " : "") << M(i, j).real() << " " << M(i, j).imag();
            os << "\n";
        }
    };
    os << "leoris-sdp 1\n";
    os << "dim " << problem.dim << " constraints " << problem.constraints.size() << " diag_upper "
       << (problem.diag_upper ? 1 : 0) << "\n";
    os << std::setprecision(17);
    os << "objective\n";
    write_matrix(problem.objective);
    for (std::size_t i = 0; i < problem.constraints.size(); ++i)
    {
        const auto &c = problem.constraints[i];
        const char *sense = c.sense == Sense::LessEqual ? "le" : c.sense == Sense::Equal ? "eq" : "ge";
        os << "constraint " << i << " " << sense << " " << c.rhs << "\n";
        write_matrix(c.A);
    }
    if (problem.diag_upper)
    {
        os << "diag_upper";
        for (Eigen::Index j = 0; j < problem.diag_upper->size(); ++j)
            os << " " << (*problem.diag_upper)(j);
        os << "\n";
    }
}

} // namespace leoris
