#include "kscert/spin.hpp"

#include "kscert/errors.hpp"
#include "text_util.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kscert {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

std::array<double, 3> unit_vector(const Direction& d) {
  return {std::sin(d.theta) * std::cos(d.phi), std::sin(d.theta) * std::sin(d.phi), std::cos(d.theta)};
}

// r-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) pick[static_cast<std::size_t>(k)] = k;
  while (true) {
    out.push_back(pick);
    int k = r - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - r + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < r; ++t) pick[static_cast<std::size_t>(t)] = pick[static_cast<std::size_t>(t - 1)] + 1;
  }
  return out;
}

std::string m_label(int twice_m) {
  if (twice_m % 2 == 0) return std::to_string(twice_m / 2);
  return std::to_string(twice_m) + "/2";
}

}  // namespace

Spin::Spin(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 1) throw std::invalid_argument("spin j must be a positive half-integer");
}

Spin Spin::parse(std::string_view text) {
  try {
    const Rational j = parse_rational(text);
    const Rational twice = 2 * j;
    if (denominator_of(twice) != 1) throw std::invalid_argument("");
    return Spin(numerator_of(twice).convert_to<int>());
  } catch (const std::invalid_argument&) {
  }
  char* end = nullptr;
  const std::string s(text);
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() && *end == '\0' && std::isfinite(x) && std::abs(2 * x - std::round(2 * x)) < 1e-12) {
    return Spin(static_cast<int>(std::lround(2 * x)));
  }
  throw std::invalid_argument("spin j must be a positive half-integer, got '" + s + "'");
}

std::string Spin::to_string() const {
  return twice_j_ % 2 == 0 ? std::to_string(twice_j_ / 2) : std::to_string(twice_j_) + "/2";
}

Direction Direction::make(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("direction angles must be finite");
  if (theta < 0.0 || theta > std::numbers::pi) throw std::invalid_argument("theta must lie in [0, pi]");
  if (phi < 0.0 || phi >= 2 * std::numbers::pi) throw std::invalid_argument("phi must lie in [0, 2pi)");
  return Direction{theta, phi};
}

Eigen::MatrixXd wigner_small_d(Spin j, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("wigner_small_d: theta must be finite");
  const int tj = j.twice_j();
  const int d = j.dim();
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Eigen::MatrixXd out(d, d);
  // Row/column k holds m = j - k, so j + m = 2j - k and j - m = k.
  for (int row = 0; row < d; ++row) {
    const int jpm1 = tj - row;  // j + m'
    const int jmm1 = row;       // j - m'
    for (int col = 0; col < d; ++col) {
      const int jpm = tj - col;  // j + m
      const int jmm = col;       // j - m
      const int diff = col - row;  // m' - m
      const BigInt num = factorial(jpm1) * factorial(jmm1) * factorial(jpm) * factorial(jmm);
      double sum = 0.0;
      for (int k = std::max(0, -diff); k <= std::min(jpm, jmm1); ++k) {
        const BigInt den = factorial(jpm - k) * factorial(k) * factorial(diff + k) * factorial(jmm1 - k);
        const double coeff = std::sqrt(Rational(num, den * den).convert_to<double>());
        const double sign = ((diff + k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * coeff * std::pow(c, tj - diff - 2 * k) * std::pow(s, diff + 2 * k);
      }
      out(row, col) = sum;
    }
  }
  return out;
}

std::vector<ComplexVector> spin_states(Spin j, Direction dir) {
  const Eigen::MatrixXd small_d = wigner_small_d(j, dir.theta);
  const int d = j.dim();
  std::vector<ComplexVector> states;
  states.reserve(static_cast<std::size_t>(d));
  for (int col = 0; col < d; ++col) {
    ComplexVector v(d);
    for (int row = 0; row < d; ++row) {
      const double m_prime = (j.twice_j() - 2 * row) / 2.0;
      v[row] = std::polar(1.0, -m_prime * dir.phi) * small_d(row, col);
    }
    states.push_back(std::move(v));
  }
  return states;
}

SpinConstructionParams SpinConstructionParams::make(Spin j, int n, int r) {
  if (n < 2) throw std::invalid_argument("need at least two directions");
  if (r < 1 || r > n) throw std::invalid_argument("r must satisfy 1 <= r <= n");
  SpinConstructionParams p;
  p.j = j;
  p.d = j.dim();
  p.n = n;
  p.r = r;
  p.N = binomial(static_cast<unsigned>(n), static_cast<unsigned>(r));
  p.M = p.N - binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(r));
  p.parity_ok = (p.N % 2 == 1) && (p.M % 2 == 0);
  return p;
}

GksConstruction generate_gks(Spin j, const std::vector<Direction>& directions, int r, double tol) {
  const int n = static_cast<int>(directions.size());
  SpinConstructionParams params = SpinConstructionParams::make(j, n, r);
  for (std::size_t a = 0; a < directions.size(); ++a) {
    Direction::make(directions[a].theta, directions[a].phi);
    for (std::size_t b = a + 1; b < directions.size(); ++b) {
      const auto u = unit_vector(directions[a]);
      const auto v = unit_vector(directions[b]);
      const double cosine = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
      if (std::abs(std::abs(cosine) - 1.0) < 1e-9) {
        throw std::invalid_argument("directions " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                    " share an axis");
      }
    }
  }

  const int d = j.dim();
  const double scale = 1.0 / r;
  RaySet rays(static_cast<std::size_t>(d), Backend::floating);
  std::vector<SpinElement> elements;
  for (int i = 0; i < n; ++i) {
    const auto states = spin_states(j, directions[static_cast<std::size_t>(i)]);
    for (int k = 0; k < d; ++k) {
      const int id = i * d + k + 1;
      const int twice_m = j.twice_j() - 2 * k;
      rays.add(id, states[static_cast<std::size_t>(k)], "dir" + std::to_string(i + 1) + " m=" + m_label(twice_m));
      elements.push_back(SpinElement{id, i, twice_m, scale * projector(states[static_cast<std::size_t>(k)])});
    }
  }

  const Rational weight(1, r);
  std::vector<Context> contexts;
  for (const auto& pick : subsets(n, r)) {
    Context ctx{"D", {}, weight};
    for (std::size_t t = 0; t < pick.size(); ++t) {
      ctx.name += (t ? "+" : "") + std::to_string(pick[t] + 1);
      for (int k = 0; k < d; ++k) ctx.element_ids.push_back(pick[t] * d + k + 1);
    }
    contexts.push_back(std::move(ctx));
  }
  CoverStructure cover(std::make_shared<const RaySet>(std::move(rays)), CoverKind::povm, std::move(contexts));
  const CoverVerification check = verify_cover(cover, tol);
  for (const auto& c : check.contexts) {
    if (!c.ok) throw VerificationError("POVM " + c.name + " is incomplete: " + c.detail);
  }
  return GksConstruction{std::move(params), std::move(elements), std::move(cover)};
}

std::vector<ParityParams> find_parity_params(unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  std::vector<ParityParams> out;
  for (unsigned n = 1; n <= n_max; ++n)
    for (unsigned r = 1; r <= n; ++r) {
      const BigInt N = binomial(n, r);
      const BigInt M = N - binomial(n - 1, r);
      if (N % 2 == 1 && M % 2 == 0) out.push_back(ParityParams{n, r, N, M});
    }
  return out;
}

std::vector<Direction> random_directions(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> z_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> phi_dist(0.0, 2 * std::numbers::pi);
  std::vector<Direction> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = std::acos(z_dist(rng));
    double phi = phi_dist(rng);
    if (phi >= 2 * std::numbers::pi) phi = 0.0;
    out.push_back(Direction::make(theta, phi));
  }
  return out;
}

std::vector<Direction> planar_directions(std::size_t n) {
  std::vector<Direction> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(Direction{static_cast<double>(k) * std::numbers::pi / n, 0.0});
  return out;
}

std::vector<Direction> parse_directions(std::string_view text) {
  std::vector<Direction> out;
  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = detail::split_line(lines[i]);
    if (line.tokens.empty()) continue;
    if (line.tokens[0] != "dir" || line.tokens.size() != 3) throw ParseError(i + 1, "expected 'dir <theta> <phi>'");
    double angles[2];
    for (int k = 0; k < 2; ++k) {
      const std::string& tok = line.tokens[static_cast<std::size_t>(k + 1)];
      char* end = nullptr;
      angles[k] = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') throw ParseError(i + 1, "malformed angle '" + tok + "'");
    }
    try {
      out.push_back(Direction::make(angles[0], angles[1]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(i + 1, e.what());
    }
  }
  return out;
}

std::string write_directions(const std::vector<Direction>& directions) {
  std::ostringstream os;
  char buf[96];
  for (const auto& d : directions) {
    std::snprintf(buf, sizeof buf, "dir %.17g %.17g\n", d.theta, d.phi);
    os << buf;
  }
  return os.str();
}

}  // namespace kscert
