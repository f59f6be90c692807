#include "kscert/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kscert {

namespace {

constexpr double kNegligible = 1e-9;

std::string vertex_label(std::initializer_list<long long> coords) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (long long c : coords) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << ')';
  return os.str();
}

void add_vertex(RaySet& set, int id, std::initializer_list<long long> coords) {
  set.add(id, RationalVector(coords), vertex_label(coords));
}

}  // namespace

RationalVector canonical(const RationalVector& v) {
  if (v.is_zero()) throw std::invalid_argument("canonical: zero vector");
  BigInt lcm = 1;
  for (const auto& c : v.components()) {
    const BigInt den = denominator_of(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<BigInt> ints;
  ints.reserve(v.dim());
  BigInt g = 0;
  for (const auto& c : v.components()) {
    ints.push_back(numerator_of(c) * (lcm / denominator_of(c)));
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints.back()));
  }
  const auto lead = std::find_if(ints.begin(), ints.end(), [](const BigInt& x) { return x != 0; });
  if (*lead < 0) g = -g;
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (const auto& x : ints) out.emplace_back(x / g);
  return RationalVector(std::move(out));
}

ComplexVector canonical(const ComplexVector& v) {
  const double norm = v.norm();
  if (v.size() == 0 || norm == 0.0) throw std::invalid_argument("canonical: zero vector");
  ComplexVector u = v / norm;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > kNegligible) {
      u *= std::conj(u[i]) / std::abs(u[i]);
      u[i] = std::abs(u[i]);
      break;
    }
  }
  return u;
}

std::size_t Ray::dim() const {
  return is_exact() ? exact().dim() : static_cast<std::size_t>(complex().size());
}

void RaySet::add(int id, RationalVector coords, std::string label) {
  if (backend_ != Backend::exact) throw std::invalid_argument("exact ray added to floating set");
  if (coords.dim() != dim_) throw std::invalid_argument("ray " + std::to_string(id) + ": wrong dimension");
  if (coords.is_zero()) throw std::invalid_argument("ray " + std::to_string(id) + ": zero vector");
  push(Ray{id, canonical(coords), std::move(label)});
}

void RaySet::add(int id, ComplexVector coords, std::string label) {
  if (backend_ != Backend::floating) throw std::invalid_argument("floating ray added to exact set");
  if (static_cast<std::size_t>(coords.size()) != dim_)
    throw std::invalid_argument("ray " + std::to_string(id) + ": wrong dimension");
  if (coords.norm() == 0.0) throw std::invalid_argument("ray " + std::to_string(id) + ": zero vector");
  push(Ray{id, canonical(coords), std::move(label)});
}

void RaySet::push(Ray ray) {
  if (ray.id <= 0) throw std::invalid_argument("ray ids must be positive");
  for (const auto& other : rays_) {
    if (other.id == ray.id) throw std::invalid_argument("duplicate ray id " + std::to_string(ray.id));
    const bool same = ray.is_exact()
                          ? other.exact() == ray.exact()
                          : std::abs(dot(other.complex(), ray.complex())) > 1.0 - kTolHermitian;
    if (same) {
      throw std::invalid_argument("ray " + std::to_string(ray.id) + " duplicates ray " +
                                  std::to_string(other.id));
    }
  }
  rays_.push_back(std::move(ray));
}

bool RaySet::contains(int id) const {
  return std::any_of(rays_.begin(), rays_.end(), [id](const Ray& r) { return r.id == id; });
}

const Ray& RaySet::at(int id) const {
  for (const auto& r : rays_)
    if (r.id == id) return r;
  throw std::out_of_range("no ray with id " + std::to_string(id));
}

std::vector<int> RaySet::ids() const {
  std::vector<int> out;
  out.reserve(rays_.size());
  for (const auto& r : rays_) out.push_back(r.id);
  return out;
}

RaySet RaySet::subset(const std::vector<int>& ids) const {
  RaySet out(dim_, backend_);
  for (const auto& r : rays_)
    if (std::find(ids.begin(), ids.end(), r.id) != ids.end()) out.rays_.push_back(r);
  return out;
}

bool orthogonal(const Ray& a, const Ray& b, double tol) {
  if (a.is_exact() && b.is_exact()) return dot(a.exact(), b.exact()) == 0;
  return std::abs(dot(a.complex(), b.complex())) < tol;
}

RationalMatrix exact_projector(const Ray& ray) { return projector(ray.exact()); }

ComplexMatrix complex_projector(const Ray& ray) {
  if (!ray.is_exact()) return projector(ray.complex());
  const auto& v = ray.exact();
  ComplexVector c(static_cast<Eigen::Index>(v.dim()));
  for (std::size_t i = 0; i < v.dim(); ++i) c[static_cast<Eigen::Index>(i)] = v[i].convert_to<double>();
  return projector(c);
}

RaySet build_24cell_rays() {
  RaySet set(4, Backend::exact);
  add_vertex(set, 1, {2, 0, 0, 0});
  add_vertex(set, 2, {0, 2, 0, 0});
  add_vertex(set, 3, {0, 0, 2, 0});
  add_vertex(set, 4, {0, 0, 0, 2});
  add_vertex(set, 5, {1, 1, 1, 1});
  add_vertex(set, 6, {1, -1, 1, -1});
  add_vertex(set, 7, {1, 1, -1, -1});
  add_vertex(set, 8, {1, -1, -1, 1});
  add_vertex(set, 9, {1, 1, 1, -1});
  add_vertex(set, 10, {-1, 1, 1, 1});
  add_vertex(set, 11, {1, -1, 1, 1});
  add_vertex(set, 12, {1, 1, -1, 1});
  return set;
}

RaySet build_dual_24cell_rays() {
  RaySet set(4, Backend::exact);
  add_vertex(set, 13, {1, 0, 1, 0});
  add_vertex(set, 14, {0, 1, 0, 1});
  add_vertex(set, 15, {1, 0, -1, 0});
  add_vertex(set, 16, {0, 1, 0, -1});
  add_vertex(set, 17, {1, 1, 0, 0});
  add_vertex(set, 18, {1, -1, 0, 0});
  add_vertex(set, 19, {0, 0, 1, 1});
  add_vertex(set, 20, {0, 0, 1, -1});
  add_vertex(set, 21, {1, 0, 0, 1});
  add_vertex(set, 22, {0, 1, 1, 0});
  add_vertex(set, 23, {1, 0, 0, -1});
  add_vertex(set, 24, {0, 1, -1, 0});
  return set;
}

RaySet build_peres24() {
  RaySet set(4, Backend::exact);
  for (const RaySet& part : {build_24cell_rays(), build_dual_24cell_rays()})
    for (const auto& r : part) set.add(r.id, r.exact(), r.label);
  return set;
}

RaySet build_18ray() {
  const RaySet all = build_peres24();
  std::vector<int> keep;
  for (int id : all.ids())
    if (id != 1 && id != 5 && id != 10 && id != 16 && id != 20 && id != 24) keep.push_back(id);
  return all.subset(keep);
}

RaySet build_hexagon_rays() {
  RaySet set(2, Backend::floating);
  for (int k = 0; k < 6; ++k) {
    const double half = k * std::numbers::pi / 6.0;  // θ_k / 2 with θ_k = k·60°
    ComplexVector v(2);
    v << std::cos(half), std::sin(half);
    set.add(k + 1, v, "theta=" + std::to_string(60 * k) + "deg");
  }
  return set;
}

std::array<std::vector<int>, 3> cross_polytopes() {
  return {std::vector<int>{1, 2, 3, 4}, std::vector<int>{5, 6, 7, 8},
          std::vector<int>{9, 10, 11, 12}};
}

std::array<std::vector<int>, 3> inscribed_tesseracts() {
  const auto c = cross_polytopes();
  auto join = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  };
  return {join(c[0], c[1]), join(c[0], c[2]), join(c[1], c[2])};
}

const std::vector<std::string>& builtin_rayset_names() {
  static const std::vector<std::string> names{"24cell", "dual24cell", "peres24", "rays18", "hexagon"};
  return names;
}

std::optional<RaySet> builtin_rayset(const std::string& name) {
  if (name == "24cell") return build_24cell_rays();
  if (name == "dual24cell") return build_dual_24cell_rays();
  if (name == "peres24") return build_peres24();
  if (name == "rays18") return build_18ray();
  if (name == "hexagon") return build_hexagon_rays();
  return std::nullopt;
}

}  // namespace kscert
