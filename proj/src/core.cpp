#include "hg/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hg {

namespace {

void check_involution(Index n, Index identity, const std::vector<Index>& involution) {
  if (n == 0) throw DimensionMismatch("hypergroup size must be positive");
  if (identity >= n) throw DimensionMismatch("identity index out of range");
  if (involution.size() != n) throw DimensionMismatch("involution length differs from size");
  for (Index x = 0; x < n; ++x) {
    const Index y = involution[x];
    if (y >= n) throw DimensionMismatch("involution entry out of range");
    if (involution[y] != x) throw ParameterError("involution is not an involutive permutation");
  }
  if (involution[identity] != identity) throw ParameterError("involution must fix the identity");
}

void require_same_base(const AlgebraElement& f, const AlgebraElement& g) {
  if (f.base() != g.base()) throw DimensionMismatch("algebra elements live on different tables");
}

} // namespace

// ---------------------------------------------------------------- tensor

StructureTensor StructureTensor::from_rows(Index size, Index identity,
                                           std::vector<Index> involution,
                                           std::vector<std::vector<Mass>> rows) {
  check_involution(size, identity, involution);
  if (rows.size() != size * size) throw DimensionMismatch("expected one row per pair (x,y)");

  StructureTensor t;
  t.size_ = size;
  t.identity_ = identity;
  t.involution_ = std::move(involution);
  t.offsets_.assign(1, 0);
  t.offsets_.reserve(rows.size() + 1);
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const Mass& a, const Mass& b) { return a.z < b.z; });
    for (std::size_t i = 0; i < r.size();) {
      if (r[i].z >= size) throw DimensionMismatch("structure constant index z out of range");
      double p = 0.0;
      const Index z = r[i].z;
      for (; i < r.size() && r[i].z == z; ++i) p += r[i].p;
      if (p != 0.0) t.masses_.push_back({z, p});
    }
    t.offsets_.push_back(t.masses_.size());
  }
  return t;
}

StructureTensor StructureTensor::from_dense(Index size, Index identity,
                                            std::vector<Index> involution,
                                            std::span<const double> dense) {
  if (dense.size() != size * size * size) throw DimensionMismatch("dense tensor must be n^3");
  std::vector<std::vector<Mass>> rows(size * size);
  for (Index r = 0; r < size * size; ++r)
    for (Index z = 0; z < size; ++z)
      if (const double p = dense[r * size + z]; p != 0.0) rows[r].push_back({z, p});
  return from_rows(size, identity, std::move(involution), std::move(rows));
}

double StructureTensor::prob(Index x, Index y, Index z) const {
  const auto r = row(x, y);
  const auto it =
      std::lower_bound(r.begin(), r.end(), z, [](const Mass& m, Index v) { return m.z < v; });
  return (it != r.end() && it->z == z) ? it->p : 0.0;
}

StructureTensor StructureTensor::with_entry(Index x, Index y, Index z, double value,
                                            bool symmetric) const {
  std::vector<std::vector<Mass>> rows(size_ * size_);
  for (Index a = 0; a < size_; ++a)
    for (Index b = 0; b < size_; ++b) {
      auto& r = rows[a * size_ + b];
      for (const Mass& m : row(a, b))
        if (m.z != z || !((a == x && b == y) || (symmetric && a == y && b == x))) r.push_back(m);
    }
  rows[x * size_ + y].push_back({z, value});
  if (symmetric && x != y) rows[y * size_ + x].push_back({z, value});
  return from_rows(size_, identity_, involution_, std::move(rows));
}

// ---------------------------------------------------------------- axioms

double AxiomReport::max_residual() const {
  return std::max({probability, commutativity, identity, support, involution, associativity});
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  os.precision(3);
  auto item = [&](const char* name, double r, bool ok) {
    os << name << '=' << r << (ok ? "" : " (FAIL)") << ' ';
  };
  item("probability", probability, pass_probability());
  item("commutativity", commutativity, pass_commutativity());
  item("identity", identity, pass_identity());
  item("support", support, pass_support());
  item("involution", involution, pass_involution());
  item("associativity", associativity, pass_associativity());
  return os.str();
}

AxiomReport check_axioms(const StructureTensor& t, double tol) {
  AxiomReport rep;
  rep.tolerance = tol;
  const Index n = t.size();
  const Index e = t.identity();

  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      double sum = 0.0;
      for (const Mass& m : t.row(x, y)) {
        sum += m.p;
        rep.probability = std::max(rep.probability, -m.p);
      }
      rep.probability = std::max(rep.probability, std::abs(sum - 1.0));
    }

  // Rows are sorted, so comparing (x,y) against (y,x) is a merge.
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      const auto a = t.row(x, y);
      const auto b = t.row(y, x);
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].z < b[j].z)) {
          rep.commutativity = std::max(rep.commutativity, std::abs(a[i++].p));
        } else if (i == a.size() || b[j].z < a[i].z) {
          rep.commutativity = std::max(rep.commutativity, std::abs(b[j++].p));
        } else {
          rep.commutativity = std::max(rep.commutativity, std::abs(a[i++].p - b[j++].p));
        }
      }
    }

  for (Index x = 0; x < n; ++x)
    for (const Index a : {e * n + x, x * n + e}) {
      const auto r = t.row(a / n, a % n);
      double defect = 0.0;
      for (const Mass& m : r) defect = std::max(defect, std::abs(m.p - (m.z == x ? 1.0 : 0.0)));
      if (t.prob(a / n, a % n, x) == 0.0) defect = 1.0;
      rep.identity = std::max(rep.identity, defect);
    }

  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const double at_e = t.prob(x, y, e);
      if (y == t.involution(x)) {
        if (!(at_e > 0.0)) rep.support = std::max(rep.support, 1.0);
      } else {
        rep.support = std::max(rep.support, std::abs(at_e));
      }
    }

  // p(x~, y~)({z~}) = p(x,y)({z}).
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index xi = t.involution(x), yi = t.involution(y);
      for (const Mass& m : t.row(x, y))
        rep.involution =
            std::max(rep.involution, std::abs(t.prob(xi, yi, t.involution(m.z)) - m.p));
      for (const Mass& m : t.row(xi, yi))
        rep.involution =
            std::max(rep.involution, std::abs(t.prob(x, y, t.involution(m.z)) - m.p));
    }

  // (delta_x * delta_y) * delta_z against delta_x * (delta_y * delta_z).
  std::vector<double> lhs(n, 0.0), rhs(n, 0.0);
  std::vector<Index> touched;
  touched.reserve(n);
  std::vector<char> mark(n, 0);
  auto touch = [&](Index v) {
    if (!mark[v]) {
      mark[v] = 1;
      touched.push_back(v);
    }
  };
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        for (const Mass& a : t.row(x, y))
          for (const Mass& b : t.row(a.z, z)) {
            lhs[b.z] += a.p * b.p;
            touch(b.z);
          }
        for (const Mass& a : t.row(y, z))
          for (const Mass& b : t.row(x, a.z)) {
            rhs[b.z] += a.p * b.p;
            touch(b.z);
          }
        for (const Index v : touched) {
          rep.associativity = std::max(rep.associativity, std::abs(lhs[v] - rhs[v]));
          lhs[v] = rhs[v] = 0.0;
          mark[v] = 0;
        }
        touched.clear();
      }
  return rep;
}

// ---------------------------------------------------------------- Haar weights

std::vector<double> solve_haar_weights(const StructureTensor& t, double tol) {
  const Index n = t.size();
  if (n == 1) return {1.0};

  // Averaged chain P[x][z] = (1/n) sum_y p(y,x)({z}); w is its stationary law.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (Index y = 0; y < n; ++y)
    for (Index x = 0; x < n; ++x)
      for (const Mass& m : t.row(y, x)) {
        if (m.p < 0.0) throw SingularSystem("negative structure constant in invariance system");
        P(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(m.z)) +=
            m.p / static_cast<double>(n);
      }

  // Grassmann-Taksar-Heyman elimination: subtraction free.
  for (Eigen::Index k = static_cast<Eigen::Index>(n) - 1; k >= 1; --k) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) s += P(k, j);
    if (!(s > 0.0)) throw SingularSystem("Haar invariance system is reducible");
    for (Eigen::Index i = 0; i < k; ++i) P(i, k) /= s;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double pik = P(i, k);
      if (pik == 0.0) continue;
      for (Eigen::Index j = 0; j < k; ++j) P(i, j) += pik * P(k, j);
    }
  }
  std::vector<double> w(n, 0.0);
  w[0] = 1.0;
  for (Index j = 1; j < n; ++j) {
    double s = 0.0;
    for (Index i = 0; i < j; ++i)
      s += w[i] * P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    w[j] = s;
  }
  double total = 0.0;
  for (const double v : w) total += v;
  for (double& v : w) v /= total;

  for (const double v : w)
    if (!(v > 0.0)) throw SingularSystem("Haar weights are not strictly positive");
  const double res = haar_invariance_residual(t, w);
  if (res > std::max(tol, 1e-12))
    throw SingularSystem("no translation-invariant weight vector (invariance residual " +
                         std::to_string(res) + ")");
  return w;
}

double haar_invariance_residual(const StructureTensor& t, std::span<const double> w) {
  const Index n = t.size();
  if (w.size() != n) throw DimensionMismatch("weight vector length differs from size");
  double res = 0.0;
  std::vector<double> acc(n);
  for (Index y = 0; y < n; ++y) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (Index x = 0; x < n; ++x)
      for (const Mass& m : t.row(y, x)) acc[m.z] += w[x] * m.p;
    for (Index z = 0; z < n; ++z) res = std::max(res, std::abs(acc[z] - w[z]));
  }
  return res;
}

std::vector<double> haar_from_identity_mass(const StructureTensor& t) {
  std::vector<double> h(t.size());
  for (Index x = 0; x < t.size(); ++x) {
    const double p = t.prob(x, t.involution(x), t.identity());
    if (!(p > 0.0)) throw SingularSystem("p(x, x~)({e}) vanishes");
    h[x] = 1.0 / p;
  }
  return h;
}

TablePtr build_hypergroup(StructureTensor tensor, double tol, std::string label) {
  const AxiomReport rep = check_axioms(tensor, tol);
  if (!rep.pass()) throw AxiomViolation("hypergroup axioms violated: " + rep.summary(), rep);
  auto haar = solve_haar_weights(tensor, tol);
  return TablePtr(new HypergroupTable(std::move(tensor), std::move(haar), std::move(label)));
}

std::vector<double> HypergroupTable::discrete_haar() const {
  std::vector<double> h(haar_);
  const double we = haar_[identity()];
  for (double& v : h) v /= we;
  return h;
}

// ---------------------------------------------------------------- L^1(K)

AlgebraElement::AlgebraElement(TablePtr base, ComplexVector coeffs)
    : base_(std::move(base)), coeffs_(std::move(coeffs)) {
  if (!base_) throw DimensionMismatch("algebra element needs a base table");
  if (static_cast<Index>(coeffs_.size()) != base_->size())
    throw DimensionMismatch("coefficient vector length differs from table size");
}

AlgebraElement AlgebraElement::zero(const TablePtr& base) {
  return {base, ComplexVector::Zero(static_cast<Eigen::Index>(base->size()))};
}

AlgebraElement AlgebraElement::unit(const TablePtr& base) {
  return point_mass(base, base->identity());
}

AlgebraElement AlgebraElement::point_mass(const TablePtr& base, Index x) {
  if (x >= base->size()) throw std::out_of_range("point mass index out of range");
  auto f = zero(base);
  f.coeffs()[static_cast<Eigen::Index>(x)] = 1.0 / base->haar(x);
  return f;
}

AlgebraElement AlgebraElement::indicator(const TablePtr& base, Index x) {
  if (x >= base->size()) throw std::out_of_range("indicator index out of range");
  auto f = zero(base);
  f.coeffs()[static_cast<Eigen::Index>(x)] = 1.0;
  return f;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_base(*this, other);
  coeffs_ += other.coeffs_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_base(*this, other);
  coeffs_ -= other.coeffs_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  coeffs_ *= s;
  return *this;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }

AlgebraElement translate(Index x, const AlgebraElement& f) {
  const auto& k = *f.base();
  if (x >= k.size()) throw std::out_of_range("translation index out of range");
  auto out = AlgebraElement::zero(f.base());
  for (Index y = 0; y < k.size(); ++y) {
    Complex s = 0.0;
    for (const Mass& m : k.row(x, y)) s += m.p * f[m.z];
    out.coeffs()[static_cast<Eigen::Index>(y)] = s;
  }
  return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
  require_same_base(f, g);
  const auto& k = *f.base();
  const Index n = k.size();
  auto out = AlgebraElement::zero(f.base());
  for (Index y = 0; y < n; ++y) {
    const Complex wf = k.haar(y) * f[y];
    if (wf == 0.0) continue;
    const Index yi = k.involution(y);
    for (Index x = 0; x < n; ++x) {
      Complex s = 0.0;
      for (const Mass& m : k.row(yi, x)) s += m.p * g[m.z];
      out.coeffs()[static_cast<Eigen::Index>(x)] += wf * s;
    }
  }
  return out;
}

AlgebraElement involute(const AlgebraElement& f) {
  const auto& k = *f.base();
  auto out = AlgebraElement::zero(f.base());
  for (Index x = 0; x < k.size(); ++x)
    out.coeffs()[static_cast<Eigen::Index>(x)] = std::conj(f[k.involution(x)]);
  return out;
}

double norm_l1(const AlgebraElement& f) {
  double s = 0.0;
  for (Index x = 0; x < f.size(); ++x) s += f.base()->haar(x) * std::abs(f[x]);
  return s;
}

Complex inner(const AlgebraElement& f, const AlgebraElement& g) {
  require_same_base(f, g);
  Complex s = 0.0;
  for (Index x = 0; x < f.size(); ++x) s += f.base()->haar(x) * f[x] * std::conj(g[x]);
  return s;
}

double max_abs(const ComplexVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// ---------------------------------------------------------------- products

TablePtr product_hypergroup(const TablePtr& k1, const TablePtr& k2) {
  const Index n1 = k1->size(), n2 = k2->size(), n = n1 * n2;
  std::vector<Index> inv(n);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) inv[a * n2 + b] = k1->involution(a) * n2 + k2->involution(b);

  std::vector<std::vector<Mass>> rows(n * n);
  for (Index x1 = 0; x1 < n1; ++x1)
    for (Index x2 = 0; x2 < n2; ++x2)
      for (Index y1 = 0; y1 < n1; ++y1)
        for (Index y2 = 0; y2 < n2; ++y2) {
          auto& r = rows[(x1 * n2 + x2) * n + (y1 * n2 + y2)];
          const auto r1 = k1->row(x1, y1);
          const auto r2 = k2->row(x2, y2);
          r.reserve(r1.size() * r2.size());
          for (const Mass& a : r1)
            for (const Mass& b : r2) r.push_back({a.z * n2 + b.z, a.p * b.p});
        }

  std::vector<double> haar(n);
  for (Index a = 0; a < n1; ++a)
    for (Index b = 0; b < n2; ++b) haar[a * n2 + b] = k1->haar(a) * k2->haar(b);

  auto tensor = StructureTensor::from_rows(n, k1->identity() * n2 + k2->identity(),
                                           std::move(inv), std::move(rows));
  std::string label = k1->label() + " x " + k2->label();
  auto table =
      std::shared_ptr<HypergroupTable>(new HypergroupTable(std::move(tensor), std::move(haar),
                                                           std::move(label)));
  table->left_ = k1;
  table->right_ = k2;
  return table;
}

TensorElement::TensorElement(TablePtr product, ComplexMatrix coeffs)
    : base_(std::move(product)), coeffs_(std::move(coeffs)) {
  if (!base_ || !base_->is_product()) throw DimensionMismatch("tensor element needs a product base");
  if (static_cast<Index>(coeffs_.rows()) != left()->size() ||
      static_cast<Index>(coeffs_.cols()) != right()->size())
    throw DimensionMismatch("tensor coefficient matrix has the wrong shape");
}

AlgebraElement TensorElement::flatten() const {
  const auto n1 = coeffs_.rows(), n2 = coeffs_.cols();
  ComplexVector v(n1 * n2);
  for (Eigen::Index a = 0; a < n1; ++a)
    for (Eigen::Index b = 0; b < n2; ++b) v[a * n2 + b] = coeffs_(a, b);
  return {base_, std::move(v)};
}

TensorElement TensorElement::unflatten(const AlgebraElement& f) {
  const auto& base = f.base();
  if (!base->is_product()) throw DimensionMismatch("element does not live on a product table");
  const auto n1 = static_cast<Eigen::Index>(base->left_factor()->size());
  const auto n2 = static_cast<Eigen::Index>(base->right_factor()->size());
  ComplexMatrix m(n1, n2);
  for (Eigen::Index a = 0; a < n1; ++a)
    for (Eigen::Index b = 0; b < n2; ++b) m(a, b) = f.coeffs()[a * n2 + b];
  return {base, std::move(m)};
}

TensorElement embed(const AlgebraElement& f, Side side, const TablePtr& product) {
  if (!product->is_product()) throw DimensionMismatch("embedding target must be a product table");
  const auto& k1 = product->left_factor();
  const auto& k2 = product->right_factor();
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(k1->size()),
                                        static_cast<Eigen::Index>(k2->size()));
  if (side == Side::Left) {
    if (f.base() != k1) throw DimensionMismatch("left embedding needs an element of the left factor");
    const auto e = static_cast<Eigen::Index>(k2->identity());
    m.col(e) = f.coeffs() / k2->haar(k2->identity());
  } else {
    if (f.base() != k2) throw DimensionMismatch("right embedding needs an element of the right factor");
    const auto e = static_cast<Eigen::Index>(k1->identity());
    m.row(e) = f.coeffs().transpose() / k1->haar(k1->identity());
  }
  return {product, std::move(m)};
}

TensorElement convolve(const TensorElement& f, const TensorElement& g) {
  if (f.base() != g.base()) throw DimensionMismatch("tensor elements live on different tables");
  return TensorElement::unflatten(convolve(f.flatten(), g.flatten()));
}

double norm_l1(const TensorElement& f) { return norm_l1(f.flatten()); }

AlgebraElement convolution_map(const TensorElement& f) {
  const auto& k = f.left();
  if (k != f.right()) throw DimensionMismatch("convolution map needs a square product K x K");
  const Index n = k->size();
  auto out = AlgebraElement::zero(k);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Complex c = k->haar(x) * k->haar(y) *
                        f.coeffs()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
      if (c == 0.0) continue;
      for (const Mass& m : k->row(x, y)) out.coeffs()[static_cast<Eigen::Index>(m.z)] += c * m.p;
    }
  for (Index z = 0; z < n; ++z) out.coeffs()[static_cast<Eigen::Index>(z)] /= k->haar(z);
  return out;
}

} // namespace hg
