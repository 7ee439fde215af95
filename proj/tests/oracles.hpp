#pragma once

// Slow reference implementations used only to cross-check the library.
// Everything here trades efficiency for being obviously correct, so keep
// inputs small.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <vector>

#include <loccrate/numeric.hpp>
#include <loccrate/spectrum.hpp>
#include <loccrate/states.hpp>

namespace oracles {

/// Reduced density matrix by direct summation over the complement digits.
inline loccrate::ComplexMatrix<double> partialTrace(const loccrate::PureState<double>& s,
                                                    const loccrate::Cut& cut) {
  const auto& dims = s.dims();
  const auto parties = cut.parties();
  std::vector<std::int64_t> rest;
  for (std::int64_t j = 1; j <= dims.k(); ++j) {
    if (std::find(parties.begin(), parties.end(), j) == parties.end()) rest.push_back(j);
  }
  std::int64_t cutTotal = 1;
  for (const std::int64_t j : parties) cutTotal *= dims[j - 1];

  const auto sideIndex = [&](const std::vector<std::int64_t>& digits,
                             const std::vector<std::int64_t>& side) {
    std::int64_t idx = 0;
    for (const std::int64_t j : side) idx = idx * dims[j - 1] + digits[static_cast<std::size_t>(j - 1)];
    return idx;
  };

  loccrate::ComplexMatrix<double> rho =
      loccrate::ComplexMatrix<double>::Zero(cutTotal, cutTotal);
  for (std::int64_t i = 0; i < dims.total(); ++i) {
    const auto di = loccrate::decomposeIndex(i, dims);
    for (std::int64_t j = 0; j < dims.total(); ++j) {
      const auto dj = loccrate::decomposeIndex(j, dims);
      if (sideIndex(di, rest) != sideIndex(dj, rest)) continue;
      rho(sideIndex(di, parties), sideIndex(dj, parties)) +=
          s.amps()[i] * std::conj(s.amps()[j]);
    }
  }
  return rho;
}

inline double entropyOf(const std::vector<double>& eigenvalues) {
  double e = 0.0;
  for (const double x : eigenvalues) {
    if (x > 1e-14) e -= x * std::log2(x);
  }
  return e;
}

/// Expands a spectrum into an explicit sorted atom list; refuses big ranks.
inline std::vector<double> expandAtoms(const loccrate::SchmidtSpectrum& s) {
  std::vector<double> atoms;
  for (const auto& e : s.entries()) {
    const auto count = e.mult.convert_to<std::int64_t>();
    for (std::int64_t i = 0; i < count; ++i) atoms.push_back(std::exp2(e.log2w));
  }
  std::sort(atoms.begin(), atoms.end(), std::greater<>());
  return atoms;
}

/// Textbook majorization check on explicit atoms: x reaches y when every
/// prefix sum of x stays at or below the matching prefix sum of y.
inline bool majorizationReaches(const loccrate::SchmidtSpectrum& x,
                                const loccrate::SchmidtSpectrum& y, double slack = 1e-9) {
  auto ax = expandAtoms(x);
  auto ay = expandAtoms(y);
  const std::size_t len = std::max(ax.size(), ay.size());
  ax.resize(len, 0.0);
  ay.resize(len, 0.0);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    sx += ax[i];
    sy += ay[i];
    if (sx > sy * (1.0 + slack) + 1e-300) return false;
  }
  return true;
}

/// Pascal-triangle binomials by repeated addition.
inline std::vector<loccrate::BigInt> pascalRow(std::int64_t n) {
  std::vector<loccrate::BigInt> row{1};
  for (std::int64_t i = 1; i <= n; ++i) {
    std::vector<loccrate::BigInt> next(static_cast<std::size_t>(i) + 1, 1);
    for (std::size_t m = 1; m < static_cast<std::size_t>(i); ++m) {
      next[m] = row[m - 1] + row[m];
    }
    row = std::move(next);
  }
  return row;
}

/// n-fold spectrum power by explicit atom expansion; exponential, tiny n only.
inline std::vector<double> powerAtoms(const loccrate::SchmidtSpectrum& s, std::int64_t n) {
  std::vector<double> atoms{1.0};
  const auto base = expandAtoms(s);
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<double> next;
    next.reserve(atoms.size() * base.size());
    for (const double a : atoms) {
      for (const double b : base) next.push_back(a * b);
    }
    atoms = std::move(next);
  }
  std::sort(atoms.begin(), atoms.end(), std::greater<>());
  return atoms;
}

}  // namespace oracles
