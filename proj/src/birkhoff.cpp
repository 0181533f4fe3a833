// Copyright 2026 The stokes-data Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stokes/birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

#include "eigen_bridge.hpp"
#include "stokes/error.hpp"

namespace stokes {

using C = FloatComplex;

MatrixLoop::MatrixLoop(std::size_t dim, std::map<int, Matrix<C>> fourier) : dim_(dim) {
  for (auto& [k, m] : fourier) {
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::InvalidData, "fourier coefficient " + std::to_string(k) + " has wrong shape");
    if (!m.is_zero()) fourier_.emplace(k, std::move(m));
  }
}

MatrixLoop MatrixLoop::from_samples(const std::vector<Matrix<C>>& samples, double rel_eps) {
  if (samples.empty()) throw Error(ErrorKind::InvalidData, "no samples");
  const std::size_t n = samples.size();
  const std::size_t d = samples.front().rows();
  for (const auto& s : samples)
    if (s.rows() != d || s.cols() != d) throw Error(ErrorKind::InvalidData, "samples have inconsistent shapes");

  std::vector<Matrix<C>> coef(n, Matrix<C>(d, d));
  Eigen::FFT<double> fft;
  std::vector<C> in(n), out;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t j = 0; j < n; ++j) in[j] = samples[j](r, c);
      fft.fwd(out, in);
      for (std::size_t k = 0; k < n; ++k) coef[k](r, c) = out[k] / static_cast<double>(n);
    }

  double biggest = 0.0;
  for (const auto& m : coef) biggest = std::max(biggest, m.max_abs());
  std::map<int, Matrix<C>> fourier;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<C> m = coef[k];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (std::abs(m(r, c)) <= rel_eps * biggest) m(r, c) = 0.0;
    if (m.is_zero()) continue;
    int mode = 2 * k >= n ? static_cast<int>(k) - static_cast<int>(n) : static_cast<int>(k);
    fourier.emplace(mode, std::move(m));
  }
  return MatrixLoop(d, std::move(fourier));
}

int MatrixLoop::min_degree() const { return fourier_.empty() ? 0 : fourier_.begin()->first; }
int MatrixLoop::max_degree() const { return fourier_.empty() ? 0 : fourier_.rbegin()->first; }

Matrix<C> MatrixLoop::eval(C z) const {
  Matrix<C> out(dim_, dim_);
  for (const auto& [k, m] : fourier_) {
    C zk = std::pow(z, k);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(r, c) += m(r, c) * zk;
  }
  return out;
}

MatrixLoop MatrixLoop::shifted(int k) const {
  std::map<int, Matrix<C>> f;
  for (const auto& [e, m] : fourier_) f.emplace(e + k, m);
  return MatrixLoop(dim_, std::move(f));
}

MatrixLoop operator*(const MatrixLoop& a, const MatrixLoop& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::InvalidData, "loop dimensions differ");
  std::map<int, Matrix<C>> f;
  for (const auto& [i, x] : a.fourier_)
    for (const auto& [j, y] : b.fourier_) {
      auto it = f.find(i + j);
      if (it == f.end())
        f.emplace(i + j, x * y);
      else
        it->second = it->second + x * y;
    }
  return MatrixLoop(a.dim_, std::move(f));
}

MatrixLoop make_constant(const Matrix<C>& h) {
  if (h.rows() != h.cols()) throw Error(ErrorKind::InvalidData, "constant loop must be square");
  return MatrixLoop(h.rows(), {{0, h}});
}

MatrixLoop make_monomial(const std::vector<int>& exponents) {
  const std::size_t d = exponents.size();
  std::map<int, Matrix<C>> f;
  for (std::size_t i = 0; i < d; ++i) {
    auto it = f.try_emplace(exponents[i], d, d).first;
    it->second(i, i) = 1.0;
  }
  return MatrixLoop(d, std::move(f));
}

MatrixLoop make_upper_example() {
  return MatrixLoop(2, {{1, Matrix<C>{{1.0, 0.0}, {0.0, 0.0}}},
                        {0, Matrix<C>{{0.0, 1.0}, {0.0, 0.0}}},
                        {-1, Matrix<C>{{0.0, 0.0}, {0.0, 1.0}}}});
}

MatrixLoop make_product(const std::vector<MatrixLoop>& factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidData, "empty product");
  MatrixLoop out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
  return out;
}

bool IndexResult::pure() const {
  return std::all_of(indices.begin(), indices.end(), [](int k) { return k == 0; });
}

namespace {

struct SectionRank {
  std::size_t kernel = 0;
  double worst_zero = 0.0;
  double smallest_kept = 1.0;
};

// Finite section of T(z^{-s} g): input modes 0..n-1, output modes 0..m-1
// with m large enough that nothing of f x is truncated above.
SectionRank section_kernel(const MatrixLoop& g, int s, std::size_t n, double rel_eps) {
  const std::size_t d = g.dim();
  const int top = g.max_degree() - s;
  const std::size_t m = n + static_cast<std::size_t>(std::max(0, top));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m * d), static_cast<Eigen::Index>(n * d));
  for (const auto& [k, coef] : g.fourier()) {
    int shift = k - s;  // block(row, col) = g_{row - col + s}
    for (std::size_t col = 0; col < n; ++col) {
      long row = static_cast<long>(col) + shift;
      if (row < 0 || row >= static_cast<long>(m)) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          a(static_cast<Eigen::Index>(row * d + r), static_cast<Eigen::Index>(col * d + c)) = coef(r, c);
    }
  }
  // BDCSVD miscounts on these 0/1 structured sections; Jacobi does not.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& sv = svd.singularValues();
  SectionRank out;
  const double smax = sv.size() ? sv(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double rel = smax > 0 ? sv(i) / smax : 0.0;
    if (smax > 0 && sv(i) > rel_eps * smax) {
      ++rank;
      out.smallest_kept = std::min(out.smallest_kept, rel);
    } else {
      out.worst_zero = std::max(out.worst_zero, rel);
    }
  }
  out.kernel = n * d - rank;
  return out;
}

struct Probe {
  std::vector<std::size_t> kernels;
  double worst_zero = 0.0;
  double smallest_kept = 1.0;
};

Probe probe(const MatrixLoop& g, int lo, int hi, std::size_t n, double rel_eps) {
  Probe p;
  for (int s = lo - 1; s <= hi + 1; ++s) {
    SectionRank r = section_kernel(g, s, n, rel_eps);
    p.kernels.push_back(r.kernel);
    p.worst_zero = std::max(p.worst_zero, r.worst_zero);
    p.smallest_kept = std::min(p.smallest_kept, r.smallest_kept);
  }
  return p;
}

void sample_checks(const MatrixLoop& g, std::size_t count, double rel_eps, IndexResult& res) {
  const std::size_t d = g.dim();
  std::vector<C> dets(count);
  res.min_abs_det = std::numeric_limits<double>::infinity();
  res.max_condition = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    Eigen::MatrixXcd v = detail::to_eigen(g.eval(std::polar(1.0, t)));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const auto& sv = svd.singularValues();
    double smax = sv(0), smin = sv(static_cast<Eigen::Index>(d) - 1);
    if (!(smin > rel_eps * smax))
      throw Error(ErrorKind::SingularLoop, "loop is not invertible near angle " + std::to_string(t));
    res.max_condition = std::max(res.max_condition, smax / smin);
    dets[j] = v.determinant();
    res.min_abs_det = std::min(res.min_abs_det, std::abs(dets[j]));
  }
  double turn = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    double step = std::arg(dets[(j + 1) % count] / dets[j]);
    if (std::abs(step) > std::numbers::pi / 2)
      throw Error(ErrorKind::SingularLoop, "determinant winds too fast for the sample count");
    turn += step;
  }
  res.det_winding = static_cast<int>(std::lround(turn / (2.0 * std::numbers::pi)));
}

}  // namespace

IndexResult partial_indices(const MatrixLoop& g, const IndexOptions& opts) {
  if (g.dim() == 0) throw Error(ErrorKind::InvalidData, "loop has dimension 0");
  if (g.fourier().empty()) throw Error(ErrorKind::SingularLoop, "loop is identically zero");
  const std::size_t d = g.dim();
  const int span = g.max_degree() - g.min_degree();
  const int reach = std::max(std::abs(g.min_degree()), std::abs(g.max_degree()));

  IndexResult res;
  std::size_t samples = opts.sample_count;
  if (samples == 0) {
    samples = 64;
    while (samples < 16 * (d * static_cast<std::size_t>(span + 2 * reach) + 1)) samples *= 2;
  }
  sample_checks(g, samples, opts.rel_eps, res);

  int lo = g.min_degree();
  int hi = g.max_degree();
  std::size_t n = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(reach) + 2);
  Probe prev = probe(g, lo, hi, n, opts.rel_eps);
  for (int widenings = 0;;) {
    if (2 * n > opts.max_modes)
      throw Error(ErrorKind::NotStabilized,
                  "kernel dimensions still changing at " + std::to_string(n) + " modes");
    Probe next = probe(g, lo, hi, 2 * n, opts.rel_eps);
    n *= 2;
    if (next.kernels != prev.kernels) {
      prev = std::move(next);
      continue;
    }
    // No index below lo and every index at most hi.
    const auto& k = next.kernels;
    bool low_ok = k[1] == k[0];
    bool high_ok = k.back() - k[k.size() - 2] == d;
    if (low_ok && high_ok) {
      prev = std::move(next);
      break;
    }
    if (++widenings > 8) throw Error(ErrorKind::NotStabilized, "index window does not close");
    if (!low_ok) lo -= reach + 1;
    if (!high_ok) hi += reach + 1;
    n = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(std::max(std::abs(lo), std::abs(hi))) + 2);
    prev = probe(g, lo, hi, n, opts.rel_eps);
  }

  const auto& k = prev.kernels;  // k[i] = dim ker at s = lo - 1 + i
  for (int s = lo; s <= hi; ++s) {
    std::size_t i = static_cast<std::size_t>(s - lo + 1);
    long count = static_cast<long>(k[i + 1]) - 2 * static_cast<long>(k[i]) + static_cast<long>(k[i - 1]);
    if (count < 0)
      throw Error(ErrorKind::NotStabilized, "negative index multiplicity at shift " + std::to_string(s));
    for (long c = 0; c < count; ++c) res.indices.push_back(s);
  }
  std::sort(res.indices.rbegin(), res.indices.rend());
  res.stabilized_at = n;
  res.window_lo = lo;
  res.window_hi = hi;
  res.kernel_dims = k;
  res.worst_zero_sigma = prev.worst_zero;
  res.smallest_kept_sigma = prev.smallest_kept;
  long total = 0;
  for (int x : res.indices) total += x;
  res.consistent = res.indices.size() == d && total == res.det_winding;
  return res;
}

}  // namespace stokes
