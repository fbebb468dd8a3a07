#pragma once

// Test-only oracle: builds coupled |F m> states by diagonalizing F^2 block by
// block in the product basis (Eigen), with Condon-Shortley signs fixed from
// the highest-m_S component. Independent of the closed-form coefficients in
// the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "trapnoise/angular.hpp"

namespace oracle {

struct ProductState {
  int ms2;
  int mi2;
};

inline double ladder(double j, double m, int dir) {
  return std::sqrt(j * (j + 1.0) - m * (m + dir));
}

struct CoupledBasis {
  std::map<std::pair<int, int>, std::vector<double>> coeffs;  // (2F, 2m)
  std::map<int, std::vector<ProductState>> blocks;            // 2m
};

inline CoupledBasis build_coupled_basis(double S, double I) {
  const int s2 = static_cast<int>(std::lround(2.0 * S));
  const int i2 = static_cast<int>(std::lround(2.0 * I));
  CoupledBasis out;

  for (int m2 = -(s2 + i2); m2 <= s2 + i2; m2 += 2) {
    std::vector<ProductState> block;
    for (int ms2 = -s2; ms2 <= s2; ms2 += 2) {
      const int mi2 = m2 - ms2;
      if (std::abs(mi2) <= i2) block.push_back({ms2, mi2});
    }
    if (block.empty()) continue;
    const int n = static_cast<int>(block.size());

    Eigen::MatrixXd f2 = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      const double ms = 0.5 * block[a].ms2;
      const double mi = 0.5 * block[a].mi2;
      f2(a, a) = S * (S + 1.0) + I * (I + 1.0) + 2.0 * ms * mi;
      for (int b = 0; b < n; ++b) {
        if (block[b].ms2 == block[a].ms2 + 2 && block[b].mi2 == block[a].mi2 - 2) {
          f2(b, a) += ladder(S, ms, +1) * ladder(I, mi, -1);
        }
        if (block[b].ms2 == block[a].ms2 - 2 && block[b].mi2 == block[a].mi2 + 2) {
          f2(b, a) += ladder(S, ms, -1) * ladder(I, mi, +1);
        }
      }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(f2);
    for (int v = 0; v < n; ++v) {
      const double lambda = solver.eigenvalues()(v);
      const double f = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * lambda));
      const int f2q = static_cast<int>(std::lround(2.0 * f));
      Eigen::VectorXd vec = solver.eigenvectors().col(v);
      int top = 0;
      for (int a = 1; a < n; ++a) {
        if (block[a].ms2 > block[top].ms2) top = a;
      }
      if (vec(top) < 0.0) vec = -vec;
      out.coeffs[{f2q, m2}] = std::vector<double>(vec.data(), vec.data() + n);
    }
    out.blocks[m2] = std::move(block);
  }
  return out;
}

inline std::complex<double> dense_spin_element(double S, int msf2, int msi2,
                                               trapnoise::angular::Axis axis) {
  using trapnoise::angular::Axis;
  const double mi = 0.5 * msi2;
  switch (axis) {
    case Axis::x:
      if (msf2 == msi2 + 2) return {0.5 * ladder(S, mi, +1), 0.0};
      if (msf2 == msi2 - 2) return {0.5 * ladder(S, mi, -1), 0.0};
      return {0.0, 0.0};
    case Axis::y:
      if (msf2 == msi2 + 2) return {0.0, -0.5 * ladder(S, mi, +1)};
      if (msf2 == msi2 - 2) return {0.0, 0.5 * ladder(S, mi, -1)};
      return {0.0, 0.0};
    case Axis::z:
      return msf2 == msi2 ? std::complex<double>(mi, 0.0)
                          : std::complex<double>(0.0, 0.0);
  }
  return {0.0, 0.0};
}

inline std::complex<double> dense_hyperfine_element(const CoupledBasis& basis,
                                                    double S, int ff2, int mf2,
                                                    int fi2, int mi2,
                                                    trapnoise::angular::Axis axis) {
  const auto fi_it = basis.coeffs.find({fi2, mi2});
  const auto ff_it = basis.coeffs.find({ff2, mf2});
  if (fi_it == basis.coeffs.end() || ff_it == basis.coeffs.end()) return {0.0, 0.0};
  const auto& bi = basis.blocks.at(mi2);
  const auto& bf = basis.blocks.at(mf2);

  std::complex<double> sum{0.0, 0.0};
  for (std::size_t a = 0; a < bf.size(); ++a) {
    for (std::size_t b = 0; b < bi.size(); ++b) {
      if (bf[a].mi2 != bi[b].mi2) continue;
      sum += ff_it->second[a] * fi_it->second[b] *
             dense_spin_element(S, bf[a].ms2, bi[b].ms2, axis);
    }
  }
  return sum;
}

inline std::vector<std::pair<double, double>> spin_pairs_up_to(int max_doubled) {
  std::vector<std::pair<double, double>> out;
  for (int s2 = 1; s2 <= max_doubled; ++s2) {
    for (int i2 = 0; s2 + i2 <= max_doubled; ++i2) {
      out.emplace_back(0.5 * s2, 0.5 * i2);
    }
  }
  return out;
}

}  // namespace oracle
