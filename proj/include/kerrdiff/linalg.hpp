#pragma once

#include <complex>
#include <vector>

namespace kerrdiff::linalg {

using Cplx = std::complex<double>;

/// Dense complex LU with partial pivoting, row-major storage. Factors in
/// place; solve() reuses the factorization for many right-hand sides.
class DenseLU {
  public:
    /// Throws std::runtime_error on an exactly singular pivot.
    DenseLU(std::vector<Cplx> a, int n);

    std::vector<Cplx> solve(const std::vector<Cplx>& b) const;

    /// Norm-based condition heuristic ||A||_inf * ||A^-1 r||_inf for an
    /// alternating-sign probe r; a cheap lower-bound proxy, adequate to flag
    /// proximity to singularity.
    double condition_estimate() const;

  private:
    int n_;
    double norm_inf_ = 0.0;
    std::vector<Cplx> lu_;
    std::vector<int> piv_;
};

/// Real banded LU with partial pivoting (LAPACK gbtrf-style storage with kl
/// fill rows). Bandwidths are fixed at construction.
class BandedLU {
  public:
    /// rows: N, lower/upper bandwidths kl/ku. Entries set via at(i, j) for
    /// |i - j| within band before factor().
    BandedLU(int n, int kl, int ku);

    double& at(int i, int j);
    void zero();

    /// Throws std::runtime_error on an exactly singular pivot.
    void factor();
    std::vector<double> solve(const std::vector<double>& b) const;

  private:
    int n_, kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;  // column-major bands: ab_[row_in_band + j*ldab_]
    std::vector<int> piv_;
};

}  // namespace kerrdiff::linalg
