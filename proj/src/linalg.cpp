#include "kerrdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace kerrdiff::linalg {

DenseLU::DenseLU(std::vector<Cplx> a, int n)
    : n_(n), lu_(std::move(a)), piv_(static_cast<std::size_t>(n)) {
    if (lu_.size() != static_cast<std::size_t>(n) * n)
        throw std::runtime_error("DenseLU: matrix size mismatch");
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += std::abs(lu_[i * n_ + j]);
        norm_inf_ = std::max(norm_inf_, s);
    }
    for (int k = 0; k < n_; ++k) {
        int p = k;
        double best = std::abs(lu_[k * n_ + k]);
        for (int i = k + 1; i < n_; ++i) {
            const double v = std::abs(lu_[i * n_ + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        piv_[k] = p;
        if (best == 0.0)
            throw std::runtime_error("DenseLU: singular matrix (zero pivot)");
        if (p != k)
            for (int j = 0; j < n_; ++j)
                std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
        const Cplx inv = 1.0 / lu_[k * n_ + k];
        for (int i = k + 1; i < n_; ++i) {
            const Cplx m = lu_[i * n_ + k] * inv;
            lu_[i * n_ + k] = m;
            if (m == Cplx(0.0, 0.0)) continue;
            const Cplx* row_k = &lu_[k * n_];
            Cplx* row_i = &lu_[i * n_];
            for (int j = k + 1; j < n_; ++j) row_i[j] -= m * row_k[j];
        }
    }
}

std::vector<Cplx> DenseLU::solve(const std::vector<Cplx>& b) const {
    if (b.size() != static_cast<std::size_t>(n_))
        throw std::runtime_error("DenseLU::solve: rhs size mismatch");
    std::vector<Cplx> x = b;
    for (int k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
        for (int i = k + 1; i < n_; ++i) x[i] -= lu_[i * n_ + k] * x[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        Cplx s = x[i];
        for (int j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * x[j];
        x[i] = s / lu_[i * n_ + i];
    }
    return x;
}

double DenseLU::condition_estimate() const {
    std::vector<Cplx> probe(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) probe[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const auto x = solve(probe);
    double xmax = 0.0;
    for (const auto& v : x) xmax = std::max(xmax, std::abs(v));
    return norm_inf_ * xmax;
}

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n),
      kl_(kl),
      ku_(ku),
      ldab_(2 * kl + ku + 1),
      ab_(static_cast<std::size_t>(ldab_) * n, 0.0),
      piv_(static_cast<std::size_t>(n), 0) {}

double& BandedLU::at(int i, int j) {
    // Row i of column j lives at band offset kl + ku + i - j.
    return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedLU::zero() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedLU::factor() {
    const int kv = kl_ + ku_;  // superdiagonals incl. pivot fill
    for (int k = 0; k < n_; ++k) {
        const int lm = std::min(kl_, n_ - 1 - k);
        int p = k;
        double best = std::abs(ab_[static_cast<std::size_t>(k) * ldab_ + kv]);
        for (int i = 1; i <= lm; ++i) {
            const double v =
                std::abs(ab_[static_cast<std::size_t>(k) * ldab_ + kv + i]);
            if (v > best) {
                best = v;
                p = k + i;
            }
        }
        piv_[k] = p;
        if (best == 0.0)
            throw std::runtime_error("BandedLU: singular matrix (zero pivot)");
        const int ncols = std::min(kv, n_ - 1 - k);
        if (p != k) {
            for (int j = 0; j <= ncols; ++j) {
                auto& a = ab_[static_cast<std::size_t>(k + j) * ldab_ + kv -
                              j];
                auto& b = ab_[static_cast<std::size_t>(k + j) * ldab_ + kv -
                              j + (p - k)];
                std::swap(a, b);
            }
        }
        const double piv =
            ab_[static_cast<std::size_t>(k) * ldab_ + kv];
        for (int i = 1; i <= lm; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(k) * ldab_ + kv + i;
            const double m = ab_[idx] / piv;
            ab_[idx] = m;
            if (m == 0.0) continue;
            for (int j = 1; j <= ncols; ++j) {
                ab_[static_cast<std::size_t>(k + j) * ldab_ + kv - j + i] -=
                    m * ab_[static_cast<std::size_t>(k + j) * ldab_ + kv - j];
            }
        }
    }
    factored_ = true;
}

std::vector<double> BandedLU::solve(const std::vector<double>& b) const {
    if (!factored_) throw std::runtime_error("BandedLU::solve before factor");
    if (b.size() != static_cast<std::size_t>(n_))
        throw std::runtime_error("BandedLU::solve: rhs size mismatch");
    const int kv = kl_ + ku_;
    std::vector<double> x = b;
    for (int k = 0; k < n_; ++k) {
        if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
        const int lm = std::min(kl_, n_ - 1 - k);
        for (int i = 1; i <= lm; ++i)
            x[k + i] -= ab_[static_cast<std::size_t>(k) * ldab_ + kv + i] *
                        x[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        const int jmax = std::min(i + kv, n_ - 1);
        double s = x[i];
        for (int j = i + 1; j <= jmax; ++j)
            s -= ab_[static_cast<std::size_t>(j) * ldab_ + kv - (j - i)] *
                 x[j];
        x[i] = s / ab_[static_cast<std::size_t>(i) * ldab_ + kv];
    }
    return x;
}

}  // namespace kerrdiff::linalg
