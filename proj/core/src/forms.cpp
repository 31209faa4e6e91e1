#include "gvmm/forms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace gvmm {

namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

/// Plans are created once per length and reused with the new-array execute interface.
const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(static_cast<std::size_t>(n));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  Plans p;
  p.fwd = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  return cache.emplace(n, p).first->second;
}

int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b) {
  int inv = 0;
  for (int i : a)
    for (int j : b)
      if (i > j) ++inv;
  return inv % 2 ? -1 : 1;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": grids differ");
}

}  // namespace

Grid::Grid(std::vector<int> sizes, std::vector<double> lengths) : n(std::move(sizes)), length(std::move(lengths)) {
  if (n.size() != length.size() || n.empty())
    throw Error(ErrorCode::ShapeMismatch, "grid needs one length per axis");
  for (std::size_t a = 0; a < n.size(); ++a)
    if (n[a] < 1 || !(length[a] > 0.0)) throw Error(ErrorCode::ShapeMismatch, "grid sizes and lengths must be positive");
}

Grid Grid::cube(int dim, int size, double len) {
  return Grid(std::vector<int>(static_cast<std::size_t>(dim), size),
              std::vector<double>(static_cast<std::size_t>(dim), len));
}

Eigen::Index Grid::size() const {
  return std::accumulate(n.begin(), n.end(), Eigen::Index{1}, [](Eigen::Index a, int b) { return a * b; });
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= spacing(a);
  return v;
}

double Grid::volume() const { return std::accumulate(length.begin(), length.end(), 1.0, std::multiplies<>()); }

Eigen::Index Grid::stride(int axis) const {
  Eigen::Index s = 1;
  for (int b = axis + 1; b < dim(); ++b) s *= n[b];
  return s;
}

std::vector<int> Grid::node(Eigen::Index flat) const {
  std::vector<int> out(n.size());
  for (int a = dim() - 1; a >= 0; --a) {
    out[a] = static_cast<int>(flat % n[a]);
    flat /= n[a];
  }
  return out;
}

std::vector<double> Grid::coords(Eigen::Index flat) const {
  const auto idx = node(flat);
  std::vector<double> x(n.size());
  for (int a = 0; a < dim(); ++a) x[a] = idx[a] * spacing(a);
  return x;
}

Grid Grid::sub(const std::vector<int>& axes) const {
  std::vector<int> s;
  std::vector<double> l;
  for (int a : axes) {
    s.push_back(n.at(a));
    l.push_back(length.at(a));
  }
  return Grid(s, l);
}

Grid Grid::product(const Grid& fiber) const {
  Grid g = *this;
  g.n.insert(g.n.end(), fiber.n.begin(), fiber.n.end());
  g.length.insert(g.length.end(), fiber.length.begin(), fiber.length.end());
  return g;
}

const std::vector<std::vector<int>>& multi_indices(int dim, int k) {
  static std::mutex m;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto key = std::make_pair(dim, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> out;
  if (k >= 0 && k <= dim) {
    std::vector<int> cur(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int pos, int start) {
      if (pos == k) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i < dim; ++i) {
        cur[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

int multi_index_position(int dim, const std::vector<int>& idx) {
  const auto& all = multi_indices(dim, static_cast<int>(idx.size()));
  auto it = std::lower_bound(all.begin(), all.end(), idx);
  return (it != all.end() && *it == idx) ? static_cast<int>(it - all.begin()) : -1;
}

Array sample(const Grid& g, const std::function<double(const std::vector<double>&)>& f) {
  Array out(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) out(i) = f(g.coords(i));
  return out;
}

Array partial(const Grid& g, const Array& f, int axis) {
  if (f.size() != g.size()) throw Error(ErrorCode::ShapeMismatch, "field does not match grid");
  const int n = g.n[axis];
  const Eigen::Index s = g.stride(axis);
  const Eigen::Index outer = g.size() / (n * s);
  const Plans& p = plans_for(n);
  const double k0 = 2.0 * std::numbers::pi / g.length[axis];
  std::vector<double> line(static_cast<std::size_t>(n));
  std::vector<fftw_complex> spec(static_cast<std::size_t>(n / 2 + 1));
  Array out(f.size());
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index in = 0; in < s; ++in) {
      const Eigen::Index base = o * n * s + in;
      for (int i = 0; i < n; ++i) line[i] = f(base + i * s);
      fftw_execute_dft_r2c(p.fwd, line.data(), spec.data());
      for (int m = 0; m <= n / 2; ++m) {
        const double k = (n % 2 == 0 && m == n / 2) ? 0.0 : k0 * m;
        const double re = spec[m][0], im = spec[m][1];
        spec[m][0] = -im * k / n;
        spec[m][1] = re * k / n;
      }
      fftw_execute_dft_c2r(p.bwd, spec.data(), line.data());
      for (int i = 0; i < n; ++i) out(base + i * s) = line[i];
    }
  return out;
}

Array spectral_shift(const Grid& g, const Array& f, int axis, double shift_by) {
  if (f.size() != g.size()) throw Error(ErrorCode::ShapeMismatch, "field does not match grid");
  const int n = g.n[axis];
  const Eigen::Index s = g.stride(axis);
  const Eigen::Index outer = g.size() / (n * s);
  const Plans& p = plans_for(n);
  const double k0 = 2.0 * std::numbers::pi / g.length[axis];
  std::vector<double> line(static_cast<std::size_t>(n));
  std::vector<fftw_complex> spec(static_cast<std::size_t>(n / 2 + 1));
  Array out(f.size());
  for (Eigen::Index o = 0; o < outer; ++o)
    for (Eigen::Index in = 0; in < s; ++in) {
      const Eigen::Index base = o * n * s + in;
      for (int i = 0; i < n; ++i) line[i] = f(base + i * s);
      fftw_execute_dft_r2c(p.fwd, line.data(), spec.data());
      for (int m = 0; m <= n / 2; ++m) {
        const double ph = -k0 * m * shift_by;
        const double re = spec[m][0], im = spec[m][1];
        if (n % 2 == 0 && m == n / 2) {
          // keep the Nyquist mode real
          spec[m][0] = re * std::cos(ph) / n;
          spec[m][1] = 0.0;
          continue;
        }
        spec[m][0] = (re * std::cos(ph) - im * std::sin(ph)) / n;
        spec[m][1] = (re * std::sin(ph) + im * std::cos(ph)) / n;
      }
      fftw_execute_dft_c2r(p.bwd, spec.data(), line.data());
      for (int i = 0; i < n; ++i) out(base + i * s) = line[i];
    }
  return out;
}

Array shift(const Grid& g, const Array& f, const std::vector<int>& offset) {
  Array out(f.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    auto idx = g.node(i);
    Eigen::Index src = 0;
    for (int a = 0; a < g.dim(); ++a) {
      const int off = a < static_cast<int>(offset.size()) ? offset[a] : 0;
      src = src * g.n[a] + (((idx[a] - off) % g.n[a]) + g.n[a]) % g.n[a];
    }
    out(i) = f(src);
  }
  return out;
}

FormField FormField::zero(const Grid& g, int k) {
  if (k < 0 || k > g.dim()) throw Error(ErrorCode::DegreeOverflow, "form degree exceeds dimension");
  FormField f;
  f.grid = g;
  f.degree = k;
  f.comps.assign(multi_indices(g.dim(), k).size(), Array::Zero(g.size()));
  return f;
}

FormField FormField::scalar(const Grid& g, Array v) {
  FormField f = zero(g, 0);
  f.comps[0] = std::move(v);
  return f;
}

FormField FormField::one_form(const Grid& g, const std::vector<Array>& v) {
  if (static_cast<int>(v.size()) != g.dim()) throw Error(ErrorCode::ShapeMismatch, "one_form needs dim components");
  FormField f = zero(g, 1);
  f.comps = v;
  return f;
}

FormField FormField::volume(const Grid& g, double c) {
  FormField f = zero(g, g.dim());
  f.comps[0].setConstant(c);
  return f;
}

Array& FormField::operator[](const std::vector<int>& idx) {
  const int p = multi_index_position(grid.dim(), idx);
  if (p < 0 || static_cast<int>(idx.size()) != degree) throw Error(ErrorCode::DegreeMismatch, "bad multi-index");
  return comps[p];
}

const Array& FormField::operator[](const std::vector<int>& idx) const {
  const int p = multi_index_position(grid.dim(), idx);
  if (p < 0 || static_cast<int>(idx.size()) != degree) throw Error(ErrorCode::DegreeMismatch, "bad multi-index");
  return comps[p];
}

FormField FormField::operator+(const FormField& o) const {
  require_same_grid(grid, o.grid, "form sum");
  if (degree != o.degree) throw Error(ErrorCode::DegreeMismatch, "sum of forms of different degree");
  FormField r = *this;
  for (std::size_t i = 0; i < comps.size(); ++i) r.comps[i] += o.comps[i];
  return r;
}

FormField FormField::operator-(const FormField& o) const { return *this + o * -1.0; }

FormField FormField::operator*(double s) const {
  FormField r = *this;
  for (auto& c : r.comps) c *= s;
  return r;
}

double FormField::max_abs() const {
  double m = 0.0;
  for (const auto& c : comps) m = std::max(m, c.abs().maxCoeff());
  return m;
}

FormField exterior_derivative(const FormField& f) {
  const int dim = f.grid.dim();
  if (f.degree >= dim) throw Error(ErrorCode::DegreeOverflow, "d of a top-degree form");
  FormField out = FormField::zero(f.grid, f.degree + 1);
  std::vector<std::vector<Array>> partials(f.comps.size());
  const auto& dst = multi_indices(dim, f.degree + 1);
  for (std::size_t c = 0; c < dst.size(); ++c) {
    const auto& k = dst[c];
    for (std::size_t r = 0; r < k.size(); ++r) {
      std::vector<int> rest = k;
      rest.erase(rest.begin() + static_cast<long>(r));
      const int p = multi_index_position(dim, rest);
      if (partials[p].empty()) partials[p].resize(static_cast<std::size_t>(dim));
      Array& d = partials[p][k[r]];
      if (d.size() == 0) d = partial(f.grid, f.comps[p], k[r]);
      out.comps[c] += (r % 2 ? -1.0 : 1.0) * d;
    }
  }
  return out;
}

FormField wedge(const FormField& a, const FormField& b) {
  require_same_grid(a.grid, b.grid, "wedge");
  const int dim = a.grid.dim();
  if (a.degree + b.degree > dim) throw Error(ErrorCode::DegreeOverflow, "wedge degree exceeds dimension");
  FormField out = FormField::zero(a.grid, a.degree + b.degree);
  const auto& ia = multi_indices(dim, a.degree);
  const auto& ib = multi_indices(dim, b.degree);
  for (std::size_t i = 0; i < ia.size(); ++i)
    for (std::size_t j = 0; j < ib.size(); ++j) {
      std::vector<int> k = ia[i];
      k.insert(k.end(), ib[j].begin(), ib[j].end());
      std::sort(k.begin(), k.end());
      if (std::adjacent_find(k.begin(), k.end()) != k.end()) continue;
      out.comps[multi_index_position(dim, k)] += shuffle_sign(ia[i], ib[j]) * (a.comps[i] * b.comps[j]);
    }
  return out;
}

FormField scale(const FormField& f, const Array& s) {
  FormField r = f;
  for (auto& c : r.comps) c *= s;
  return r;
}

double integrate_top(const FormField& f) {
  if (f.degree != f.grid.dim()) throw Error(ErrorCode::DegreeMismatch, "integrate_top needs a top-degree form");
  return f.comps[0].sum() * f.grid.cell_volume();
}

FormField interior(const VectorFieldGrid& x, const FormField& a) {
  require_same_grid(x.grid, a.grid, "interior");
  const int dim = a.grid.dim();
  if (static_cast<int>(x.comps.size()) != dim) throw Error(ErrorCode::ShapeMismatch, "vector field size");
  if (a.degree == 0) throw Error(ErrorCode::DegreeMismatch, "contraction of a function");
  FormField out = FormField::zero(a.grid, a.degree - 1);
  const auto& idx = multi_indices(dim, a.degree - 1);
  for (std::size_t c = 0; c < idx.size(); ++c) {
    const auto& j = idx[c];
    for (int s = 0; s < dim; ++s) {
      if (std::find(j.begin(), j.end(), s) != j.end()) continue;
      const auto below = std::count_if(j.begin(), j.end(), [s](int v) { return v < s; });
      std::vector<int> k = j;
      k.push_back(s);
      std::sort(k.begin(), k.end());
      out.comps[c] += (below % 2 ? -1.0 : 1.0) * (x.comps[s] * a.comps[multi_index_position(dim, k)]);
    }
  }
  return out;
}

FormField translate(const FormField& f, const std::vector<int>& offset) {
  std::vector<int> neg(offset.size());
  std::transform(offset.begin(), offset.end(), neg.begin(), [](int v) { return -v; });
  FormField r = f;
  for (auto& c : r.comps) c = shift(f.grid, c, neg);
  return r;
}

FormField fiber_integrate(const FormField& f, const std::vector<int>& over) {
  const int dim = f.grid.dim();
  const int r = static_cast<int>(over.size());
  std::vector<int> trailing(static_cast<std::size_t>(r));
  std::iota(trailing.begin(), trailing.end(), dim - r);
  if (r == 0 || r >= dim || over != trailing)
    throw Error(ErrorCode::LayoutMismatch, "fiber axes must be the trailing axes of the product grid");
  if (f.degree < r) throw Error(ErrorCode::DegreeMismatch, "form degree below fiber dimension");
  std::vector<int> base_axes(static_cast<std::size_t>(dim - r));
  std::iota(base_axes.begin(), base_axes.end(), 0);
  const Grid base = f.grid.sub(base_axes);
  const Grid fiber = f.grid.sub(over);
  const Eigen::Index fs = fiber.size();
  const double dv = fiber.cell_volume();
  FormField out = FormField::zero(base, f.degree - r);
  const auto& idx = multi_indices(base.dim(), f.degree - r);
  for (std::size_t c = 0; c < idx.size(); ++c) {
    std::vector<int> k = idx[c];
    k.insert(k.end(), over.begin(), over.end());
    const Array& src = f.comps[multi_index_position(dim, k)];
    for (Eigen::Index b = 0; b < base.size(); ++b) out.comps[c](b) = src.segment(b * fs, fs).sum() * dv;
  }
  return out;
}

FormField pull_back_base(const FormField& beta, const Grid& product) {
  const int m = beta.grid.dim();
  std::vector<int> base_axes(static_cast<std::size_t>(m));
  std::iota(base_axes.begin(), base_axes.end(), 0);
  if (product.sub(base_axes) != beta.grid) throw Error(ErrorCode::LayoutMismatch, "base grid is not a prefix");
  const Eigen::Index fs = product.size() / beta.grid.size();
  FormField out = FormField::zero(product, beta.degree);
  const auto& idx = multi_indices(m, beta.degree);
  for (std::size_t c = 0; c < idx.size(); ++c) {
    Array& dst = out.comps[multi_index_position(product.dim(), idx[c])];
    for (Eigen::Index b = 0; b < beta.grid.size(); ++b) dst.segment(b * fs, fs).setConstant(beta.comps[c](b));
  }
  return out;
}

VectorFieldGrid lift_base_field(const VectorFieldGrid& x, const Grid& product) {
  const Eigen::Index fs = product.size() / x.grid.size();
  VectorFieldGrid out{product, {}};
  for (int a = 0; a < product.dim(); ++a) {
    Array c = Array::Zero(product.size());
    if (a < x.grid.dim())
      for (Eigen::Index b = 0; b < x.grid.size(); ++b) c.segment(b * fs, fs).setConstant(x.comps[a](b));
    out.comps.push_back(c);
  }
  return out;
}

void SectionGrid::validate() const {
  for (const auto& c : comps)
    if (c.size() != grid.size()) throw Error(ErrorCode::ShapeMismatch, "section component does not match grid");
  if (kind == FiberKind::Complex && comps.size() != 2)
    throw Error(ErrorCode::ShapeMismatch, "complex sections have two components");
  if (kind == FiberKind::Sphere) {
    Array n2 = Array::Zero(grid.size());
    for (const auto& c : comps) n2 += c.square();
    if ((n2 - 1.0).abs().maxCoeff() > 1e-12)
      throw Error(ErrorCode::ConstraintViolation, "sphere-valued section is not unit length");
  }
}

Eigen::VectorXd SectionGrid::at(Eigen::Index node) const {
  Eigen::VectorXd v(fiber_dim());
  for (int c = 0; c < fiber_dim(); ++c) v(c) = comps[c](node);
  return v;
}

TotalForm TotalForm::from_components(int total_dim, int degree,
                                     std::function<std::vector<double>(const Eigen::VectorXd&)> coeffs) {
  TotalForm t;
  t.degree = degree;
  t.eval = [total_dim, degree, coeffs](const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& vs) {
    if (static_cast<int>(vs.size()) != degree) throw Error(ErrorCode::DegreeMismatch, "wrong number of vectors");
    const auto c = coeffs(p);
    const auto& idx = multi_indices(total_dim, degree);
    double s = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (c[j] == 0.0) continue;
      Eigen::MatrixXd m(degree, degree);
      for (int r = 0; r < degree; ++r)
        for (int q = 0; q < degree; ++q) m(r, q) = vs[r](idx[j][q]);
      s += c[j] * (degree == 0 ? 1.0 : m.determinant());
    }
    return s;
  };
  return t;
}

TotalForm TotalForm::contract(std::function<Eigen::VectorXd(const Eigen::VectorXd&)> v) const {
  if (degree == 0) throw Error(ErrorCode::DegreeMismatch, "contraction of a function");
  TotalForm t;
  t.degree = degree - 1;
  t.eval = [base = *this, v](const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& vs) {
    std::vector<Eigen::VectorXd> all{v(p)};
    all.insert(all.end(), vs.begin(), vs.end());
    return base.eval(p, all);
  };
  return t;
}

TotalForm TotalForm::pull_back(const Eigen::VectorXd& a, const Eigen::MatrixXd& l) const {
  TotalForm t;
  t.degree = degree;
  t.eval = [base = *this, a, l](const Eigen::VectorXd& p, const std::vector<Eigen::VectorXd>& vs) {
    std::vector<Eigen::VectorXd> mapped;
    for (const auto& v : vs) mapped.push_back(l * v);
    return base.eval(a + l * p, mapped);
  };
  return t;
}

double hat_product(const FormField& alpha, const TotalForm& omega, const SectionGrid& phi,
                   const std::vector<SectionGrid>& ys) {
  const Grid& g = alpha.grid;
  const int m = g.dim();
  const int k = alpha.degree, l = omega.degree, r = static_cast<int>(ys.size());
  if (phi.grid != g) throw Error(ErrorCode::ShapeMismatch, "section grid differs from form grid");
  for (const auto& y : ys)
    if (y.grid != g || y.fiber_dim() != phi.fiber_dim())
      throw Error(ErrorCode::ShapeMismatch, "vertical vector does not match the section");
  if (l < r || k + l - r != m) throw Error(ErrorCode::DegreeMismatch, "hat product degrees do not add up");
  const int d = phi.fiber_dim();
  const int q = l - r;
  std::vector<std::vector<Array>> dphi(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < d; ++c) dphi[a].push_back(partial(g, phi.comps[c], a));
  FormField p = FormField::zero(g, q);
  const auto& idx = multi_indices(m, q);
  Eigen::VectorXd point(m + d);
  std::vector<Eigen::VectorXd> vs(static_cast<std::size_t>(l), Eigen::VectorXd::Zero(m + d));
  for (Eigen::Index node = 0; node < g.size(); ++node) {
    const auto x = g.coords(node);
    for (int a = 0; a < m; ++a) point(a) = x[a];
    for (int c = 0; c < d; ++c) point(m + c) = phi.comps[c](node);
    for (int i = 0; i < r; ++i) {
      vs[i].setZero();
      for (int c = 0; c < d; ++c) vs[i](m + c) = ys[i].comps[c](node);
    }
    for (std::size_t j = 0; j < idx.size(); ++j) {
      for (int s = 0; s < q; ++s) {
        auto& v = vs[r + s];
        v.setZero();
        v(idx[j][s]) = 1.0;
        for (int c = 0; c < d; ++c) v(m + c) = dphi[idx[j][s]][c](node);
      }
      p.comps[j](node) = omega.eval(point, vs);
    }
  }
  const double sign = (k * r) % 2 ? -1.0 : 1.0;
  return sign * integrate_top(wedge(alpha, p));
}

double hat_symplectic_eval(const SectionGrid& phi, const SectionGrid& y1, const SectionGrid& y2,
                           const TotalForm& omega, const FormField& mu) {
  if (omega.degree != 2) throw Error(ErrorCode::DegreeMismatch, "fiber form must be a 2-form");
  if (mu.degree != mu.grid.dim()) throw Error(ErrorCode::DegreeMismatch, "mu must be a volume form");
  return hat_product(mu, omega, phi, {y1, y2});
}

SectionGrid transform_section(const SectionGrid& phi, const std::vector<int>& offset, const Eigen::MatrixXd& r) {
  if (r.rows() != phi.fiber_dim() || r.cols() != phi.fiber_dim())
    throw Error(ErrorCode::ShapeMismatch, "fiber matrix size");
  std::vector<Array> shifted;
  for (const auto& c : phi.comps) shifted.push_back(shift(phi.grid, c, offset));
  SectionGrid out = phi;
  for (int i = 0; i < phi.fiber_dim(); ++i) {
    out.comps[i].setZero();
    for (int j = 0; j < phi.fiber_dim(); ++j) out.comps[i] += r(i, j) * shifted[j];
  }
  return out;
}

SectionGrid translation_generator(const SectionGrid& phi, int axis) {
  SectionGrid out = phi;
  out.kind = FiberKind::Euclidean;
  for (auto& c : out.comps) c = -partial(phi.grid, c, axis);
  return out;
}

}  // namespace gvmm
