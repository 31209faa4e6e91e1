#include "gvmm/grid_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace gvmm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error(ErrorCode::IoError, "trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::IoError, "not a number: '" + s + "'");
  }
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != static_cast<int>(v)) throw Error(ErrorCode::IoError, "not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<std::string> header_line(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::IoError, "missing header '" + key + "'");
  auto cells = split(line, ',');
  if (cells.empty() || cells[0] != key) throw Error(ErrorCode::IoError, "expected header '" + key + "'");
  cells.erase(cells.begin());
  return cells;
}

template <class T>
void put(std::ostream& os, T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto b = std::bit_cast<std::array<char, sizeof(T)>>(v);
    std::reverse(b.begin(), b.end());
    os.write(b.data(), sizeof(T));
  } else {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
}

template <class T>
T get(std::istream& is) {
  std::array<char, sizeof(T)> b{};
  if (!is.read(b.data(), sizeof(T))) throw Error(ErrorCode::IoError, "truncated binary block");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
  return std::bit_cast<T>(b);
}

constexpr char kMagic[4] = {'G', 'V', 'M', 'F'};
constexpr std::int32_t kVersion = 1;

}  // namespace

void write_form_csv(std::ostream& os, const FormField& f) {
  const Grid& g = f.grid;
  os << "sizes";
  for (int n : g.n) os << ',' << n;
  os << "\nlengths";
  for (double l : g.length) os << ',' << fmt::format("{:.17g}", l);
  os << "\ndegree," << f.degree << "\ncomponents";
  for (const auto& idx : multi_indices(g.dim(), f.degree)) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "." : "") + std::to_string(idx[i]);
    os << ',' << (s.empty() ? "-" : s);
  }
  os << '\n';
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    os << i;
    for (const auto& c : f.comps) os << ',' << fmt::format("{:.17g}", c(i));
    os << '\n';
  }
}

FormField read_form_csv(std::istream& is) {
  std::vector<int> sizes;
  for (const auto& s : header_line(is, "sizes")) sizes.push_back(to_int(s));
  std::vector<double> lengths;
  for (const auto& s : header_line(is, "lengths")) lengths.push_back(to_double(s));
  const auto deg = header_line(is, "degree");
  if (deg.size() != 1 || sizes.size() != lengths.size() || sizes.empty())
    throw Error(ErrorCode::IoError, "inconsistent grid header");
  for (int n : sizes)
    if (n <= 0) throw Error(ErrorCode::IoError, "non-positive grid size");
  Grid g(sizes, lengths);
  const int degree = to_int(deg[0]);
  if (degree < 0 || degree > g.dim()) throw Error(ErrorCode::IoError, "degree out of range");
  const auto comps = header_line(is, "components");
  const auto& expected = multi_indices(g.dim(), degree);
  if (comps.size() != expected.size()) throw Error(ErrorCode::IoError, "component count");
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::vector<int> idx;
    if (comps[c] != "-")
      for (const auto& s : split(comps[c], '.')) idx.push_back(to_int(s));
    if (idx != expected[c]) throw Error(ErrorCode::IoError, "component order differs from lexicographic");
  }
  FormField f = FormField::zero(g, degree);
  std::string line;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!std::getline(is, line)) throw Error(ErrorCode::IoError, "missing node rows");
    const auto cells = split(line, ',');
    if (cells.size() != comps.size() + 1 || to_int(cells[0]) != i) throw Error(ErrorCode::IoError, "bad node row");
    for (std::size_t c = 0; c < comps.size(); ++c) f.comps[c](i) = to_double(cells[c + 1]);
  }
  return f;
}

void write_form_binary(std::ostream& os, const FormField& f) {
  os.write(kMagic, 4);
  put<std::int32_t>(os, kVersion);
  put<std::int32_t>(os, f.grid.dim());
  put<std::int32_t>(os, f.degree);
  for (int n : f.grid.n) put<std::int32_t>(os, n);
  for (double l : f.grid.length) put<double>(os, l);
  for (const auto& c : f.comps)
    for (Eigen::Index i = 0; i < c.size(); ++i) put<double>(os, c(i));
}

FormField read_form_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw Error(ErrorCode::IoError, "bad magic");
  if (get<std::int32_t>(is) != kVersion) throw Error(ErrorCode::IoError, "unsupported version");
  const int dim = get<std::int32_t>(is);
  const int degree = get<std::int32_t>(is);
  if (dim <= 0 || dim > 16 || degree < 0 || degree > dim) throw Error(ErrorCode::IoError, "bad dimensions");
  std::vector<int> sizes(static_cast<std::size_t>(dim));
  std::vector<double> lengths(static_cast<std::size_t>(dim));
  for (auto& n : sizes) {
    n = get<std::int32_t>(is);
    if (n <= 0) throw Error(ErrorCode::IoError, "non-positive grid size");
  }
  for (auto& l : lengths) l = get<double>(is);
  FormField f = FormField::zero(Grid(sizes, lengths), degree);
  for (auto& c : f.comps)
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = get<double>(is);
  return f;
}

void write_slice_csv(std::ostream& os, const FormField& f, std::size_t comp, int a, int b,
                     const std::vector<int>& at) {
  const Grid& g = f.grid;
  if (comp >= f.comps.size() || a == b || a < 0 || b < 0 || a >= g.dim() || b >= g.dim() ||
      static_cast<int>(at.size()) != g.dim())
    throw Error(ErrorCode::ShapeMismatch, "bad slice specification");
  std::vector<int> idx = at;
  for (int i = 0; i < g.n[a]; ++i) {
    idx[a] = i;
    for (int j = 0; j < g.n[b]; ++j) {
      idx[b] = j;
      Eigen::Index flat = 0;
      for (int k = 0; k < g.dim(); ++k) flat = flat * g.n[k] + ((idx[k] % g.n[k]) + g.n[k]) % g.n[k];
      os << (j ? "," : "") << fmt::format("{:.17g}", f.comps[comp](flat));
    }
    os << '\n';
  }
}

void save_form(const std::string& path, const FormField& f) {
  const bool bin = path.size() > 4 && path.substr(path.size() - 4) == ".bin";
  std::ofstream os(path, bin ? std::ios::binary : std::ios::out);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path);
  bin ? write_form_binary(os, f) : write_form_csv(os, f);
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + path);
}

FormField load_form(const std::string& path) {
  const bool bin = path.size() > 4 && path.substr(path.size() - 4) == ".bin";
  std::ifstream is(path, bin ? std::ios::binary : std::ios::in);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path);
  return bin ? read_form_binary(is) : read_form_csv(is);
}

}  // namespace gvmm
