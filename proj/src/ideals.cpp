#include "hg/ideals.hpp"

#include <algorithm>
#include <cmath>

namespace hg {

std::vector<AlgebraElement> IdealDescriptor::basis() const {
  std::vector<AlgebraElement> b;
  b.reserve(dual_set.size());
  for (const Index i : dual_set) b.push_back(dual->character(i));
  return b;
}

bool IdealDescriptor::contains(const AlgebraElement& f, double rel_tol) const {
  const auto fh = fourier(dual, f);
  const double scale = max_abs(fh.values);
  if (scale == 0.0) return true;
  for (Index i = 0; i < dual->size(); ++i) {
    if (std::binary_search(dual_set.begin(), dual_set.end(), i)) continue;
    if (std::abs(fh.values[static_cast<Eigen::Index>(i)]) > rel_tol * scale) return false;
  }
  return true;
}

IdealDescriptor ideal_from_dual_subset(const DualPtr& dual, std::vector<Index> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (!subset.empty() && subset.back() >= dual->size())
    throw std::out_of_range("dual index out of range");
  return {dual, std::move(subset)};
}

std::vector<Index> hull(const AlgebraElement& f, const DualPtr& dual, double rel_tol) {
  const auto fh = fourier(dual, f);
  const double thr = rel_tol * max_abs(fh.values);
  std::vector<Index> h;
  for (Index i = 0; i < dual->size(); ++i)
    if (std::abs(fh.values[static_cast<Eigen::Index>(i)]) > thr) h.push_back(i);
  return h;
}

std::vector<IdealDescriptor> minimal_ideals(const DualPtr& dual) {
  std::vector<IdealDescriptor> out;
  out.reserve(dual->size());
  for (Index i = 0; i < dual->size(); ++i) out.push_back({dual, {i}});
  return out;
}

AlgebraElement ideal_identity(const DualPtr& dual, const std::vector<Index>& subset) {
  if (subset.empty()) throw ParameterError("the zero ideal has no identity");
  ComplexVector ind = ComplexVector::Zero(static_cast<Eigen::Index>(dual->size()));
  for (const Index i : subset) {
    if (i >= dual->size()) throw std::out_of_range("dual index out of range");
    ind[static_cast<Eigen::Index>(i)] = 1.0;
  }
  return inverse_fourier({dual, std::move(ind)});
}

ComplexMatrix generated_ideal_span(const AlgebraElement& f) {
  const auto& base = f.base();
  const auto n = static_cast<Eigen::Index>(base->size());
  ComplexMatrix cols(n, n);
  for (Eigen::Index x = 0; x < n; ++x)
    cols.col(x) = convolve(f, AlgebraElement::point_mass(base, static_cast<Index>(x))).coeffs();
  return cols;
}

ComplexMatrix ideal_span(const IdealDescriptor& ideal) {
  const auto n = static_cast<Eigen::Index>(ideal.dual->base()->size());
  ComplexMatrix cols(n, static_cast<Eigen::Index>(ideal.dimension()));
  for (Index j = 0; j < ideal.dimension(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) =
        ideal.dual->values().row(static_cast<Eigen::Index>(ideal.dual_set[j])).transpose();
  return cols;
}

Index numerical_rank(const HypergroupTable& k, const ComplexMatrix& cols, double rel_tol) {
  if (cols.cols() == 0) return 0;
  ComplexMatrix scaled = cols;
  for (Eigen::Index x = 0; x < scaled.rows(); ++x)
    scaled.row(x) *= std::sqrt(k.haar(static_cast<Index>(x)));
  // Unit columns, so that the cut is relative to each generator; columns
  // negligible against the largest one are numerical zeros and are dropped.
  const double largest = scaled.colwise().norm().maxCoeff();
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double nj = scaled.col(j).norm();
    if (nj > rel_tol * largest) scaled.col(j) /= nj;
    else scaled.col(j).setZero();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(scaled);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++r;
  return r;
}

bool same_subspace(const HypergroupTable& k, const ComplexMatrix& a, const ComplexMatrix& b,
                   double rel_tol) {
  ComplexMatrix ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  const Index ra = numerical_rank(k, a, rel_tol);
  return ra == numerical_rank(k, b, rel_tol) && ra == numerical_rank(k, ab, rel_tol);
}

} // namespace hg
