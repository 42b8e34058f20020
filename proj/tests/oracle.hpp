// Copyright 2026 The ringquench Authors
// SPDX-License-Identifier: Apache-2.0

// Reference constructions written directly from the model definitions, used
// as oracles for the library. Dense and slow on purpose.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Occ = std::vector<int>;

inline void fill_states(int site, int left, Occ& cur, std::vector<Occ>& out) {
  if (site == static_cast<int>(cur.size()) - 1) {
    cur[site] = left;
    out.push_back(cur);
    return;
  }
  for (int n = left; n >= 0; --n) {
    cur[site] = n;
    fill_states(site + 1, left - n, cur, out);
  }
}

inline std::vector<Occ> fock_states(int L, int N) {
  std::vector<Occ> out;
  Occ cur(L, 0);
  fill_states(0, N, cur, out);
  return out;
}

inline std::map<Occ, int> lookup(const std::vector<Occ>& states) {
  std::map<Occ, int> m;
  for (int i = 0; i < static_cast<int>(states.size()); ++i) m[states[i]] = i;
  return m;
}

// sum_j c * b_{j+1}^dag b_j + conj(c) * b_j^dag b_{j+1} over the ring.
inline Matrix hopping(const std::vector<Occ>& states, Complex c) {
  const auto idx = lookup(states);
  const int d = static_cast<int>(states.size());
  const int L = static_cast<int>(states[0].size());
  Matrix h = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    for (int j = 0; j < L; ++j) {
      const int k = (j + 1) % L;
      for (int dir = 0; dir < 2; ++dir) {
        const int from = dir == 0 ? j : k;
        const int to = dir == 0 ? k : j;
        const Occ& occ = states[s];
        if (occ[from] == 0) continue;
        Occ t = occ;
        t[from] -= 1;
        t[to] += 1;
        const double amp = std::sqrt(double(occ[from]) * (occ[to] + 1));
        h(idx.at(t), s) += (dir == 0 ? c : std::conj(c)) * amp;
      }
    }
  }
  return h;
}

inline Matrix bose_hubbard(const std::vector<Occ>& states, double J, double U, double phi) {
  Matrix h = hopping(states, -J * std::polar(1.0, phi));
  for (int s = 0; s < static_cast<int>(states.size()); ++s) {
    for (int n : states[s]) h(s, s) += 0.5 * U * n * (n - 1);
  }
  return h;
}

inline Matrix current(const std::vector<Occ>& states, double phi) {
  const double L = static_cast<double>(states[0].size());
  // (1/2iL)(e^{i phi} b^dag_{j+1} b_j - h.c.): coefficient e^{i phi}/(2iL).
  return hopping(states, std::polar(1.0, phi) / Complex(0.0, 2.0 * L));
}

inline Matrix two_species(const std::vector<Occ>& sa, const std::vector<Occ>& sb, const Matrix& ha,
                          const Matrix& hb, double V) {
  const int da = static_cast<int>(sa.size()), db = static_cast<int>(sb.size());
  Matrix h = Matrix::Zero(da * db, da * db);
  for (int ia = 0; ia < da; ++ia) {
    for (int ib = 0; ib < db; ++ib) {
      for (int ja = 0; ja < da; ++ja) h(ia * db + ib, ja * db + ib) += ha(ia, ja);
      for (int jb = 0; jb < db; ++jb) h(ia * db + ib, ia * db + jb) += hb(ib, jb);
      double nn = 0.0;
      for (std::size_t j = 0; j < sa[ia].size(); ++j) nn += sa[ia][j] * sb[ib][j];
      h(ia * db + ib, ia * db + ib) -= V * nn;
    }
  }
  return h;
}

inline Vector ground_vector(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return es.eigenvectors().col(0);
}

inline Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Partial traces by explicit index loops.
inline Matrix rho_a(const Vector& psi, int da, int db) {
  Matrix r = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int b = 0; b < db; ++b) r(i, j) += psi(i * db + b) * std::conj(psi(j * db + b));
  return r;
}

inline Matrix rho_b(const Vector& psi, int da, int db) {
  Matrix r = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int a = 0; a < da; ++a) r(i, j) += psi(a * db + i) * std::conj(psi(a * db + j));
  return r;
}

// <b_i^dag b_j> by explicit operator action.
inline Matrix correlations(const std::vector<Occ>& states, const Vector& psi) {
  const auto idx = lookup(states);
  const int L = static_cast<int>(states[0].size());
  Matrix c = Matrix::Zero(L, L);
  for (int s = 0; s < static_cast<int>(states.size()); ++s) {
    for (int i = 0; i < L; ++i) {
      for (int j = 0; j < L; ++j) {
        Occ t = states[s];
        if (t[j] == 0) continue;
        double amp = std::sqrt(double(t[j]));
        t[j] -= 1;
        amp *= std::sqrt(double(t[i] + 1));
        t[i] += 1;
        c(i, j) += std::conj(psi(idx.at(t))) * psi(s) * amp;
      }
    }
  }
  return c;
}

// S(q) = sum_{ij} e^{i q (i - j)} <b_i^dag b_j>.
inline double momentum(const Matrix& c, double q) {
  Complex s = 0.0;
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) s += std::polar(1.0, q * (i - j)) * c(i, j);
  return s.real();
}

}  // namespace oracle
