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

#include "stokes/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "stokes/linalg.hpp"

namespace stokes {

namespace {

constexpr int kMaxAttempts = 64;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (gen_() >> 63) != 0; }
  template <class V>
  void shuffle(V& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<long>(i) - 1))]);
  }

 private:
  std::mt19937_64 gen_;
};

template <class T>
T value(long re, long im) {
  using R = typename ScalarTraits<T>::Real;
  if constexpr (ScalarTraits<T>::has_imaginary_unit) {
    return ScalarTraits<T>::from_parts(R(re), R(im));
  } else {
    return ScalarTraits<T>::from_int(re);
  }
}

template <class T>
T random_entry(Sampler& s, long bound) {
  long re = s.uniform(-bound, bound);
  long im = ScalarTraits<T>::has_imaginary_unit ? s.uniform(-bound, bound) : 0;
  return value<T>(re, im);
}

template <class T>
std::vector<std::size_t> checked_dims(const GeneratorOptions& opts) {
  if (opts.n_factors == 0) throw Error(ErrorKind::BadParams, "n_factors must be positive");
  std::vector<std::size_t> dims = opts.dims.empty() ? std::vector<std::size_t>(opts.n_factors, 1) : opts.dims;
  if (dims.size() != opts.n_factors) throw Error(ErrorKind::BadParams, "dims must have n_factors entries");
  if (std::find(dims.begin(), dims.end(), std::size_t{0}) != dims.end())
    throw Error(ErrorKind::BadParams, "dims must be positive");
  return dims;
}

// Factors with strictly increasing real parts, hence ordered for theta0 = 0.
template <class T>
std::vector<PointOf<T>> random_factors(Sampler& s, std::size_t n) {
  using R = typename ScalarTraits<T>::Real;
  std::vector<PointOf<T>> out;
  for (std::size_t k = 0; k < n; ++k) {
    long re = 2 * static_cast<long>(k) + s.uniform(0, 1);
    long im = s.uniform(-3, 3);
    out.push_back({R(re), R(im)});
  }
  return out;
}

template <class T>
Direction<typename ScalarTraits<T>::Real> base_direction() {
  using R = typename ScalarTraits<T>::Real;
  return {R(1), R(0)};
}

// Kernel coordinates for aligned kernels.
template <class T>
std::vector<std::size_t> kernel_coordinates(Sampler& s, const std::vector<std::size_t>& dims, std::size_t count) {
  std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  std::vector<std::size_t> out;
  if constexpr (ScalarTraits<T>::has_imaginary_unit) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    s.shuffle(all);
    out.assign(all.begin(), all.begin() + static_cast<long>(count));
  } else {
    if (count % 2 != 0) throw Error(ErrorKind::BadParams, "rational aligned kernels need an even corank");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t off = 0;
    for (std::size_t d : dims) {
      for (std::size_t a = 0; a + 1 < d; a += 2) pairs.push_back({off + a, off + a + 1});
      off += d;
    }
    if (2 * pairs.size() < count) throw Error(ErrorKind::BadParams, "blocks too small for the requested corank");
    s.shuffle(pairs);
    for (std::size_t k = 0; k < count / 2; ++k) {
      out.push_back(pairs[k].first);
      out.push_back(pairs[k].second);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Diagonal perturbation making a block invertible while keeping its
// Hermitian part: i * lambda * Id, or lambda * J with J the skew sign
// pattern in the rational domain.
template <class T>
Matrix<T> skew_shift(std::size_t d, const typename ScalarTraits<T>::Real& lambda) {
  using R = typename ScalarTraits<T>::Real;
  Matrix<T> out(d, d);
  if constexpr (ScalarTraits<T>::has_imaginary_unit) {
    for (std::size_t a = 0; a < d; ++a) out(a, a) = ScalarTraits<T>::from_parts(R(0), lambda);
  } else {
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        if (p != q) out(p, q) = q > p ? lambda : R(-lambda);
  }
  return out;
}

template <class R>
std::vector<R> lambda_magnitudes() {
  return {R(1), R(2), R(1) / R(2), R(3), R(4), R(1) / R(4)};
}

}  // namespace

template <class T>
StokesData<T> generate_certified(const GeneratorOptions& opts) {
  using R = typename ScalarTraits<T>::Real;
  auto dims = checked_dims<T>(opts);
  std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  if (opts.rank > n) throw Error(ErrorKind::BadParams, "rank exceeds the total dimension");

  Sampler s(opts.seed);
  auto factors = random_factors<T>(s, dims.size());
  std::vector<std::size_t> zero_cols;
  if (opts.aligned_kernel) zero_cols = kernel_coordinates<T>(s, dims, n - opts.rank);
  std::vector<bool> negative(dims.size(), opts.lambda_sign == LambdaSign::Negative);
  if (opts.lambda_sign == LambdaSign::Random)
    for (std::size_t k = 0; k < dims.size(); ++k) negative[k] = s.coin();

  StokesType<R> ty{factors, base_direction<T>(), dims};
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Matrix<T> a(opts.rank, n);
    for (std::size_t r = 0; r < opts.rank; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = random_entry<T>(s, 2);
    for (std::size_t c : zero_cols)
      for (std::size_t r = 0; r < opts.rank; ++r) a(r, c) = ScalarTraits<T>::zero();
    Matrix<T> h = a.adjoint() * a;
    if (rank(h) != opts.rank) continue;

    Matrix<T> sigma(n, n);
    bool ok = true;
    for (std::size_t j = 0; j < dims.size() && ok; ++j) {
      std::size_t oj = ty.offset(j);
      for (std::size_t i = 0; i < j; ++i)
        sigma.set_block(oj, ty.offset(i), h.block(oj, ty.offset(i), dims[j], dims[i]));
      Matrix<T> half = h.block(oj, oj, dims[j], dims[j]) * ScalarTraits<T>::half();
      ok = false;
      for (const R& mag : lambda_magnitudes<R>()) {
        Matrix<T> diag = half + skew_shift<T>(dims[j], negative[j] ? R(-mag) : mag);
        if (rank(diag) == dims[j]) {
          sigma.set_block(oj, oj, diag);
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    return {ty, sigma, -sigma.adjoint()};
  }
  throw Error(ErrorKind::Unsatisfiable, "no invertible diagonal blocks after " + std::to_string(kMaxAttempts) +
                                            " attempts");
}

template <class T>
StokesData<T> generate_random_valid(const GeneratorOptions& opts) {
  using R = typename ScalarTraits<T>::Real;
  auto dims = checked_dims<T>(opts);
  Sampler s(opts.seed);
  StokesType<R> ty{random_factors<T>(s, dims.size()), base_direction<T>(), dims};
  std::size_t n = ty.total();
  Matrix<T> sigma(n, n), sigma_prime(n, n);
  auto fill = [&](Matrix<T>& m, std::size_t j, std::size_t i) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Matrix<T> b(dims[j], dims[i]);
      for (std::size_t r = 0; r < dims[j]; ++r)
        for (std::size_t c = 0; c < dims[i]; ++c) b(r, c) = random_entry<T>(s, 3);
      if (i != j || rank(b) == dims[i]) {
        m.set_block(ty.offset(j), ty.offset(i), b);
        return;
      }
    }
    throw Error(ErrorKind::Unsatisfiable, "no invertible diagonal block");
  };
  for (std::size_t j = 0; j < dims.size(); ++j)
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i <= j) fill(sigma, j, i);
      if (i >= j) fill(sigma_prime, j, i);
    }
  return {ty, sigma, sigma_prime};
}

#define STOKES_INSTANTIATE_GENERATE(T)                                   \
  template StokesData<T> generate_certified<T>(const GeneratorOptions&); \
  template StokesData<T> generate_random_valid<T>(const GeneratorOptions&);

STOKES_INSTANTIATE_GENERATE(FloatComplex)
STOKES_INSTANTIATE_GENERATE(GaussianRational)
STOKES_INSTANTIATE_GENERATE(Rational)

#undef STOKES_INSTANTIATE_GENERATE

}  // namespace stokes
