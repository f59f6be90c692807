#include "kscert/rayset_io.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace kscert {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_complex(std::complex<double> c) {
  if (c.imag() == 0.0) return format_double(c.real());
  return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
}

bool looks_floating(const std::string& tok) {
  return tok.find_first_of(".eE(") != std::string::npos || tok.find("inf") != std::string::npos ||
         tok.find("nan") != std::string::npos;
}

std::complex<double> parse_complex(const std::string& tok, std::size_t line_no) {
  std::istringstream is(tok);
  std::complex<double> c;
  if (!(is >> c) || is.peek() != std::char_traits<char>::eof()) {
    throw ParseError(line_no, "malformed floating component '" + tok + "'");
  }
  return c;
}

}  // namespace

std::string write_rayset(const RaySet& set) {
  std::ostringstream os;
  os << "dim " << set.dim() << '\n';
  for (const auto& ray : set) {
    os << "ray " << ray.id;
    if (ray.is_exact()) {
      for (const auto& c : ray.exact().components()) os << ' ' << to_string(c);
    } else {
      for (Eigen::Index i = 0; i < ray.complex().size(); ++i) os << ' ' << format_complex(ray.complex()[i]);
    }
    if (!ray.label.empty()) os << "  # " << ray.label;
    os << '\n';
  }
  return os.str();
}

RaySet read_rayset(std::string_view text) {
  struct Pending {
    std::size_t line;
    int id;
    std::vector<std::string> comps;
    std::string label;
  };
  std::optional<std::size_t> dim;
  std::vector<Pending> pending;
  bool floating = false;

  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = detail::split_line(lines[i]);
    if (line.tokens.empty()) continue;
    const auto& head = line.tokens.front();
    if (head == "dim") {
      if (dim) throw ParseError(line_no, "duplicate dim line");
      if (line.tokens.size() != 2) throw ParseError(line_no, "expected 'dim <d>'");
      const int d = detail::parse_int(line.tokens[1], line_no, "dimension");
      if (d < 1) throw ParseError(line_no, "dimension must be positive");
      dim = static_cast<std::size_t>(d);
    } else if (head == "ray") {
      if (!dim) throw ParseError(line_no, "ray before dim line");
      if (line.tokens.size() != *dim + 2) {
        throw ParseError(line_no, "expected 'ray <id>' followed by " + std::to_string(*dim) + " components");
      }
      Pending p{line_no, detail::parse_int(line.tokens[1], line_no, "ray id"),
                {line.tokens.begin() + 2, line.tokens.end()}, line.comment};
      floating = floating || std::any_of(p.comps.begin(), p.comps.end(), looks_floating);
      pending.push_back(std::move(p));
    } else {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!dim) throw ParseError(lines.size() + 1, "missing dim line");

  RaySet set(*dim, floating ? Backend::floating : Backend::exact);
  for (auto& p : pending) {
    try {
      if (floating) {
        ComplexVector v(static_cast<Eigen::Index>(*dim));
        for (std::size_t k = 0; k < *dim; ++k) v[static_cast<Eigen::Index>(k)] = parse_complex(p.comps[k], p.line);
        set.add(p.id, v, p.label);
      } else {
        std::vector<Rational> comps;
        for (const auto& tok : p.comps) comps.push_back(parse_rational(tok));
        set.add(p.id, RationalVector(std::move(comps)), p.label);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(p.line, e.what());
    }
  }
  return set;
}

}  // namespace kscert
