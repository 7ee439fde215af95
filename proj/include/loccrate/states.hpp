#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loccrate/numeric.hpp"

namespace loccrate {

/// Dense representations stop here; the monoid engine switches to grouped
/// spectra long before this matters.
inline constexpr std::int64_t kMaxTotalDim = std::int64_t{1} << 20;

/// Local Hilbert-space dimensions d_1..d_k. Party indices are 1-based in the
/// public vocabulary (cuts, labels) and 0-based in loops.
class LocalDims {
 public:
  explicit LocalDims(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("LocalDims: need at least one party");
    std::int64_t total = 1;
    for (const std::int64_t d : dims_) {
      if (d < 1) throw std::invalid_argument("LocalDims: dimensions must be >= 1");
      if (total > kMaxTotalDim / d) {
        throw std::invalid_argument("LocalDims: total dimension exceeds 2^20 cap");
      }
      total *= d;
    }
    total_ = total;
  }

  std::int64_t k() const { return static_cast<std::int64_t>(dims_.size()); }
  std::int64_t total() const { return total_; }
  std::int64_t operator[](std::int64_t j) const { return dims_[static_cast<std::size_t>(j)]; }
  const std::vector<std::int64_t>& dims() const { return dims_; }

  friend bool operator==(const LocalDims& a, const LocalDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<std::int64_t> dims_;
  std::int64_t total_ = 1;
};

/// flat -> (i_1,...,i_k), party 1 most significant.
inline std::vector<std::int64_t> decomposeIndex(std::int64_t flat, const LocalDims& dims) {
  std::vector<std::int64_t> digits(static_cast<std::size_t>(dims.k()));
  for (std::int64_t j = dims.k() - 1; j >= 0; --j) {
    digits[static_cast<std::size_t>(j)] = flat % dims[j];
    flat /= dims[j];
  }
  return digits;
}

inline std::int64_t composeIndex(const std::vector<std::int64_t>& digits, const LocalDims& dims) {
  std::int64_t flat = 0;
  for (std::int64_t j = 0; j < dims.k(); ++j) {
    const std::int64_t i = digits[static_cast<std::size_t>(j)];
    if (i < 0 || i >= dims[j]) throw std::out_of_range("composeIndex: digit out of range");
    flat = flat * dims[j] + i;
  }
  return flat;
}

/// Nonempty proper subset of the parties, 1-based. Validity against a
/// concrete party count is checked where the cut is applied.
class Cut {
 public:
  explicit Cut(std::vector<std::int64_t> parties) : parties_(std::move(parties)) {
    std::sort(parties_.begin(), parties_.end());
    parties_.erase(std::unique(parties_.begin(), parties_.end()), parties_.end());
    if (parties_.empty()) throw std::invalid_argument("Cut: needs at least one party");
    if (parties_.front() < 1) throw std::invalid_argument("Cut: parties are 1-based");
  }

  const std::vector<std::int64_t>& parties() const { return parties_; }

  void validateFor(std::int64_t k) const {
    if (parties_.back() > k) throw std::invalid_argument("Cut: party index exceeds party count");
    if (static_cast<std::int64_t>(parties_.size()) >= k) {
      throw std::invalid_argument("Cut: must be a proper subset of the parties");
    }
  }

  Cut complementFor(std::int64_t k) const {
    validateFor(k);
    std::vector<std::int64_t> rest;
    std::size_t pos = 0;
    for (std::int64_t p = 1; p <= k; ++p) {
      if (pos < parties_.size() && parties_[pos] == p) {
        ++pos;
      } else {
        rest.push_back(p);
      }
    }
    return Cut(std::move(rest));
  }

  std::string label() const {
    std::ostringstream os;
    os << "cut:";
    for (std::size_t i = 0; i < parties_.size(); ++i) {
      if (i > 0) os << ',';
      os << parties_[i];
    }
    return os.str();
  }

  friend bool operator==(const Cut& a, const Cut& b) { return a.parties_ == b.parties_; }
  friend bool operator<(const Cut& a, const Cut& b) { return a.parties_ < b.parties_; }

 private:
  std::vector<std::int64_t> parties_;
};

template <class Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

template <class Real>
Real stableSquaredNorm(const ComplexVector<Real>& v) {
  std::vector<double> terms(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) terms[static_cast<std::size_t>(i)] = static_cast<double>(std::norm(v[i]));
  return static_cast<Real>(pairwiseSum(terms));
}

}  // namespace detail

/// k-partite pure state: dense amplitudes over the mixed-radix index.
/// Immutable; unit norm enforced at construction.
template <class Real>
class PureState {
 public:
  PureState(LocalDims dims, ComplexVector<Real> amplitudes)
      : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
    if (amps_.size() != dims_.total()) {
      throw std::invalid_argument("PureState: amplitude count does not match total dimension");
    }
    const Real n2 = detail::stableSquaredNorm<Real>(amps_);
    if (std::abs(static_cast<double>(n2) - 1.0) > tol::kStateNorm) {
      throw std::invalid_argument("PureState: squared norm deviates from 1 beyond 1e-10");
    }
  }

  const LocalDims& dims() const { return dims_; }
  std::int64_t k() const { return dims_.k(); }
  const ComplexVector<Real>& amps() const { return amps_; }

 private:
  LocalDims dims_;
  ComplexVector<Real> amps_;
};

/// Density operator on the same index space. Hermiticity, unit trace and the
/// eigenvalue floor are checked eagerly; everything downstream relies on them.
template <class Real>
class MixedState {
 public:
  MixedState(LocalDims dims, ComplexMatrix<Real> matrix)
      : dims_(std::move(dims)), mat_(std::move(matrix)) {
    const std::int64_t n = dims_.total();
    if (mat_.rows() != n || mat_.cols() != n) {
      throw std::invalid_argument("MixedState: matrix size does not match total dimension");
    }
    const double herm = static_cast<double>((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff());
    if (herm > tol::kDensity) throw std::invalid_argument("MixedState: not Hermitian within 1e-10");
    const double tr = static_cast<double>(mat_.trace().real());
    if (std::abs(tr - 1.0) > tol::kDensity) {
      throw std::invalid_argument("MixedState: trace deviates from 1 beyond 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(mat_, Eigen::EigenvaluesOnly);
    if (static_cast<double>(es.eigenvalues().minCoeff()) < -tol::kDensity) {
      throw std::invalid_argument("MixedState: eigenvalue below -1e-10");
    }
  }

  const LocalDims& dims() const { return dims_; }
  std::int64_t k() const { return dims_.k(); }
  const ComplexMatrix<Real>& matrix() const { return mat_; }

 private:
  LocalDims dims_;
  ComplexMatrix<Real> mat_;
};

template <class Real>
std::complex<Real> innerProduct(const PureState<Real>& a, const PureState<Real>& b) {
  if (!(a.dims() == b.dims())) throw std::invalid_argument("innerProduct: dimension mismatch");
  return a.amps().dot(b.amps());  // Eigen dot conjugates the left argument
}

/// Party-wise regrouped Kronecker product: output party j carries index
/// i_j^a * b.dims[j] + i_j^b.
template <class Real>
PureState<Real> tensor(const PureState<Real>& a, const PureState<Real>& b) {
  if (a.k() != b.k()) throw std::invalid_argument("tensor: party-count mismatch");
  const std::int64_t k = a.k();
  std::vector<std::int64_t> outDims(static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j) outDims[static_cast<std::size_t>(j)] = a.dims()[j] * b.dims()[j];
  LocalDims dims(outDims);  // enforces the 2^20 cap before any allocation

  ComplexVector<Real> out = ComplexVector<Real>::Zero(dims.total());
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k));
  for (std::int64_t ia = 0; ia < a.dims().total(); ++ia) {
    const auto da = decomposeIndex(ia, a.dims());
    for (std::int64_t ib = 0; ib < b.dims().total(); ++ib) {
      const auto db = decomposeIndex(ib, b.dims());
      for (std::int64_t j = 0; j < k; ++j) {
        digits[static_cast<std::size_t>(j)] = da[static_cast<std::size_t>(j)] * b.dims()[j] + db[static_cast<std::size_t>(j)];
      }
      out[composeIndex(digits, dims)] = a.amps()[ia] * b.amps()[ib];
    }
  }
  return PureState<Real>(std::move(dims), std::move(out));
}

/// Zero-padding embedding into componentwise-larger local dimensions.
template <class Real>
PureState<Real> embed(const PureState<Real>& s, const LocalDims& target) {
  if (target.k() != s.k()) throw std::invalid_argument("embed: party-count mismatch");
  for (std::int64_t j = 0; j < s.k(); ++j) {
    if (target[j] < s.dims()[j]) throw std::invalid_argument("embed: target dimension too small");
  }
  ComplexVector<Real> out = ComplexVector<Real>::Zero(target.total());
  for (std::int64_t i = 0; i < s.dims().total(); ++i) {
    out[composeIndex(decomposeIndex(i, s.dims()), target)] = s.amps()[i];
  }
  return PureState<Real>(target, std::move(out));
}

/// sqrt(p) a (x) |0..0> + sqrt(1-p) b (x) |1..1>, one flag qubit per party,
/// flag least significant. Inputs are first zero-padded to common local dims.
template <class Real>
PureState<Real> directSum(const PureState<Real>& a, const PureState<Real>& b, Real p) {
  if (a.k() != b.k()) throw std::invalid_argument("direct_sum: party-count mismatch");
  if (!(p >= Real(0) && p <= Real(1))) throw std::invalid_argument("direct_sum: p outside [0,1]");
  const std::int64_t k = a.k();

  std::vector<std::int64_t> common(static_cast<std::size_t>(k)), flagged(static_cast<std::size_t>(k));
  for (std::int64_t j = 0; j < k; ++j) {
    common[static_cast<std::size_t>(j)] = std::max(a.dims()[j], b.dims()[j]);
    flagged[static_cast<std::size_t>(j)] = 2 * common[static_cast<std::size_t>(j)];
  }
  const LocalDims commonDims(common);
  LocalDims outDims(flagged);

  const Real sp = std::sqrt(p);
  const Real sq = std::sqrt(Real(1) - p);
  ComplexVector<Real> out = ComplexVector<Real>::Zero(outDims.total());
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k));

  const auto place = [&](const PureState<Real>& s, std::int64_t flag, Real scale) {
    if (scale == Real(0)) return;
    for (std::int64_t i = 0; i < s.dims().total(); ++i) {
      const auto d = decomposeIndex(i, s.dims());
      for (std::int64_t j = 0; j < k; ++j) digits[static_cast<std::size_t>(j)] = d[static_cast<std::size_t>(j)] * 2 + flag;
      out[composeIndex(digits, outDims)] = scale * s.amps()[i];
    }
  };
  place(a.dims() == commonDims ? a : embed(a, commonDims), 0, sp);
  place(b.dims() == commonDims ? b : embed(b, commonDims), 1, sq);
  return PureState<Real>(std::move(outDims), std::move(out));
}

/// (1/sqrt(r)) sum_i |ii...i> on k parties of dimension r.
template <class Real>
PureState<Real> ghz(std::int64_t r, std::int64_t k) {
  if (r < 1 || k < 1) throw std::invalid_argument("ghz: need r >= 1 and k >= 1");
  LocalDims dims(std::vector<std::int64_t>(static_cast<std::size_t>(k), r));
  ComplexVector<Real> out = ComplexVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(static_cast<Real>(r));
  for (std::int64_t i = 0; i < r; ++i) {
    out[composeIndex(std::vector<std::int64_t>(static_cast<std::size_t>(k), i), dims)] = amp;
  }
  return PureState<Real>(std::move(dims), std::move(out));
}

template <class Real>
PureState<Real> basisState(const LocalDims& dims, const std::vector<std::int64_t>& digits) {
  ComplexVector<Real> out = ComplexVector<Real>::Zero(dims.total());
  out[composeIndex(digits, dims)] = Real(1);
  return PureState<Real>(dims, std::move(out));
}

/// EPR pair between two named parties (1-based) of a k-qubit system; the
/// remaining parties sit in |0>.
template <class Real>
PureState<Real> eprPair(std::int64_t p1, std::int64_t p2, std::int64_t k) {
  if (k < 2) throw std::invalid_argument("epr: need k >= 2");
  if (p1 == p2 || p1 < 1 || p2 < 1 || p1 > k || p2 > k) {
    throw std::invalid_argument("epr: parties must be distinct and within 1..k");
  }
  LocalDims dims(std::vector<std::int64_t>(static_cast<std::size_t>(k), 2));
  ComplexVector<Real> out = ComplexVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(Real(2));
  std::vector<std::int64_t> digits(static_cast<std::size_t>(k), 0);
  for (std::int64_t t = 0; t < 2; ++t) {
    digits[static_cast<std::size_t>(p1 - 1)] = t;
    digits[static_cast<std::size_t>(p2 - 1)] = t;
    out[composeIndex(digits, dims)] = amp;
  }
  return PureState<Real>(std::move(dims), std::move(out));
}

/// Bipartite state in Schmidt form: sum_i sqrt(w_i) |ii>, dims [m, m].
/// Weights must already sum to 1; normalization is the caller's statement.
template <class Real>
PureState<Real> schmidtState(const std::vector<Real>& weights) {
  if (weights.empty()) throw std::invalid_argument("schmidtState: empty weight list");
  const auto m = static_cast<std::int64_t>(weights.size());
  LocalDims dims({m, m});
  ComplexVector<Real> out = ComplexVector<Real>::Zero(dims.total());
  for (std::int64_t i = 0; i < m; ++i) {
    const Real w = weights[static_cast<std::size_t>(i)];
    if (w < Real(0)) throw std::invalid_argument("schmidtState: negative weight");
    out[i * m + i] = std::sqrt(w);
  }
  return PureState<Real>(std::move(dims), std::move(out));
}

template <class Real>
MixedState<Real> toDensityMatrix(const PureState<Real>& s) {
  ComplexMatrix<Real> m = s.amps() * s.amps().adjoint();
  return MixedState<Real>(s.dims(), std::move(m));
}

/// Partial trace over the complement of the cut. The amplitude vector is
/// reshaped to (cut indices) x (complement indices) and contracted once.
template <class Real>
MixedState<Real> reducedState(const PureState<Real>& s, const Cut& cut) {
  cut.validateFor(s.k());
  const std::int64_t k = s.k();
  std::vector<bool> inCut(static_cast<std::size_t>(k), false);
  for (const std::int64_t p : cut.parties()) inCut[static_cast<std::size_t>(p - 1)] = true;

  std::vector<std::int64_t> cutDims, compDims;
  for (std::int64_t j = 0; j < k; ++j) {
    (inCut[static_cast<std::size_t>(j)] ? cutDims : compDims).push_back(s.dims()[j]);
  }
  LocalDims cd(cutDims);
  const LocalDims xd(compDims);

  ComplexMatrix<Real> r(cd.total(), xd.total());
  std::vector<std::int64_t> dc(cutDims.size()), dx(compDims.size());
  for (std::int64_t i = 0; i < s.dims().total(); ++i) {
    const auto d = decomposeIndex(i, s.dims());
    std::size_t ic = 0, ix = 0;
    for (std::int64_t j = 0; j < k; ++j) {
      if (inCut[static_cast<std::size_t>(j)]) {
        dc[ic++] = d[static_cast<std::size_t>(j)];
      } else {
        dx[ix++] = d[static_cast<std::size_t>(j)];
      }
    }
    r(composeIndex(dc, cd), composeIndex(dx, xd)) = s.amps()[i];
  }
  ComplexMatrix<Real> rho = r * r.adjoint();
  // Symmetrize away the GEMM roundoff; the exact result is Hermitian.
  rho = ((rho + rho.adjoint()) / Real(2)).eval();
  return MixedState<Real>(std::move(cd), std::move(rho));
}

/// Tr sqrt(sigma^{1/2} rho sigma^{1/2}) via two Hermitian eigensolves with
/// eigenvalue clamping at 0.
template <class Real>
Real fidelity(const MixedState<Real>& rho, const MixedState<Real>& sigma) {
  if (rho.dims().total() != sigma.dims().total()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  using Mat = ComplexMatrix<Real>;
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma.matrix());
  auto vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals[i] = std::max(vals[i], Real(0));
  const Mat sqrtSigma = es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  Mat m = sqrtSigma * rho.matrix() * sqrtSigma;
  m = ((m + m.adjoint()) / Real(2)).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es2(m, Eigen::EigenvaluesOnly);
  Real f = Real(0);
  for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i) {
    f += std::sqrt(std::max(es2.eigenvalues()[i], Real(0)));
  }
  return std::min(f, Real(1));
}

template <class Real>
Real fidelity(const PureState<Real>& a, const PureState<Real>& b) {
  return std::min(std::abs(innerProduct(a, b)), Real(1));
}

template <class Real>
Real purifiedDistance(const MixedState<Real>& rho, const MixedState<Real>& sigma) {
  const Real f = fidelity(rho, sigma);
  return std::sqrt(std::max(Real(0), Real(1) - f * f));
}

/// Equal to sqrt(1 - F^2); the residual form avoids cancellation near F = 1,
/// where 1 - f*f would lose half the significant digits.
template <class Real>
Real purifiedDistance(const PureState<Real>& a, const PureState<Real>& b) {
  const std::complex<Real> c = innerProduct(a, b);
  const Real d2 = (b.amps() - c * a.amps()).squaredNorm();
  return std::sqrt(std::min(std::max(d2, Real(0)), Real(1)));
}

}  // namespace loccrate
