#include "kscert/structures.hpp"

#include "kscert/errors.hpp"
#include "text_util.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kscert {

const char* to_string(CoverKind kind) { return kind == CoverKind::basis ? "basis" : "povm"; }

CoverStructure::CoverStructure(std::shared_ptr<const RaySet> rays, CoverKind kind,
                               std::vector<Context> contexts)
    : rays_(std::move(rays)), kind_(kind), contexts_(std::move(contexts)) {
  if (!rays_) throw std::invalid_argument("cover requires a ray set");
  for (int id : rays_->ids()) incidence_[id] = 0;
  for (auto& ctx : contexts_) {
    std::sort(ctx.element_ids.begin(), ctx.element_ids.end());
    if (std::adjacent_find(ctx.element_ids.begin(), ctx.element_ids.end()) != ctx.element_ids.end()) {
      throw std::invalid_argument("context " + ctx.name + " repeats an element");
    }
    for (int id : ctx.element_ids) {
      auto it = incidence_.find(id);
      if (it == incidence_.end()) {
        throw std::invalid_argument("context " + ctx.name + " references unknown ray " + std::to_string(id));
      }
      ++it->second;
    }
  }
}

std::vector<int> CoverStructure::element_ids() const {
  std::vector<int> ids;
  ids.reserve(incidence_.size());
  for (const auto& [id, count] : incidence_) ids.push_back(id);
  return ids;
}

std::size_t OrthogonalityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [id, nbrs] : neighbors) twice += nbrs.size();
  return twice / 2;
}

OrthogonalityGraph orthogonality_graph(const RaySet& rays, double tol) {
  OrthogonalityGraph g;
  g.ids = rays.ids();
  for (int id : g.ids) g.neighbors[id];
  const auto& list = rays.rays();
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j)
      if (orthogonal(list[i], list[j], tol)) {
        g.neighbors[list[i].id].push_back(list[j].id);
        g.neighbors[list[j].id].push_back(list[i].id);
      }
  for (auto& [id, nbrs] : g.neighbors) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

namespace {

using Bits = boost::dynamic_bitset<>;

class CliqueFinder {
 public:
  CliqueFinder(std::vector<Bits> adj, std::size_t target) : adj_(std::move(adj)), target_(target) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = adj_.size();
    Bits all(n);
    all.set();
    std::vector<std::size_t> r;
    expand(r, all, Bits(n));
    return std::move(found_);
  }

 private:
  // Mutually orthogonal rays are linearly independent, so cliques never
  // exceed the dimension and every target-size clique is maximal.
  void expand(std::vector<std::size_t>& r, Bits p, Bits x) {
    if (p.none() && x.none()) {
      if (r.size() == target_) found_.push_back(r);
      return;
    }
    if (r.size() + p.count() < target_) return;
    std::size_t pivot = Bits::npos;
    std::size_t best = 0;
    const Bits px = p | x;
    for (auto u = px.find_first(); u != Bits::npos; u = px.find_next(u)) {
      const std::size_t c = (p & adj_[u]).count();
      if (pivot == Bits::npos || c > best) {
        pivot = u;
        best = c;
      }
    }
    const Bits candidates = p - adj_[pivot];
    for (auto v = candidates.find_first(); v != Bits::npos; v = candidates.find_next(v)) {
      r.push_back(v);
      expand(r, p & adj_[v], x & adj_[v]);
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  std::vector<Bits> adj_;
  std::size_t target_;
  std::vector<std::vector<std::size_t>> found_;
};

std::string residual_text(const RationalMatrix& residual) { return residual.to_string(); }

std::string residual_text(const ComplexMatrix& residual) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  for (Eigen::Index i = 0; i < residual.rows(); ++i) {
    os << '[';
    for (Eigen::Index j = 0; j < residual.cols(); ++j) os << (j ? " " : "") << std::abs(residual(i, j));
    os << "]\n";
  }
  return os.str();
}

ContextCheck check_povm(const RaySet& rays, const Context& ctx, double tol) {
  ContextCheck check{ctx.name, false, {}, 0.0};
  if (rays.backend() == Backend::exact) {
    std::vector<RationalMatrix> projectors;
    for (int id : ctx.element_ids) projectors.push_back(exact_projector(rays.at(id)));
    const RationalMatrix sum = weighted_sum(projectors, ctx.weight, rays.dim());
    check.ok = is_identity(sum);
    if (!check.ok) {
      const RationalMatrix residual = sum - RationalMatrix::identity(rays.dim());
      for (std::size_t i = 0; i < rays.dim(); ++i)
        for (std::size_t j = 0; j < rays.dim(); ++j)
          check.residual = std::max(check.residual, std::abs(residual(i, j).convert_to<double>()));
      check.detail = "weight*sum - I =\n" + residual_text(residual);
    }
  } else {
    std::vector<ComplexMatrix> projectors;
    for (int id : ctx.element_ids) projectors.push_back(complex_projector(rays.at(id)));
    const ComplexMatrix sum = weighted_sum(projectors, ctx.weight.convert_to<double>(), rays.dim());
    check.residual = rays.dim() == 0 ? 0.0 : identity_residual(sum);
    check.ok = check.residual < tol;
    if (!check.ok) {
      const auto n = static_cast<Eigen::Index>(rays.dim());
      check.detail = "|weight*sum - I| =\n" + residual_text(sum - ComplexMatrix::Identity(n, n));
    }
  }
  return check;
}

ContextCheck check_basis(const RaySet& rays, const Context& ctx, double tol) {
  ContextCheck check{ctx.name, true, {}, 0.0};
  if (ctx.element_ids.size() != rays.dim()) {
    check.ok = false;
    check.detail = "has " + std::to_string(ctx.element_ids.size()) + " rays, dimension is " +
                   std::to_string(rays.dim());
    return check;
  }
  for (std::size_t a = 0; a < ctx.element_ids.size() && check.ok; ++a)
    for (std::size_t b = a + 1; b < ctx.element_ids.size(); ++b) {
      const Ray& u = rays.at(ctx.element_ids[a]);
      const Ray& v = rays.at(ctx.element_ids[b]);
      if (!orthogonal(u, v, tol)) {
        check.ok = false;
        std::ostringstream os;
        os << "rays " << u.id << " and " << v.id << " are not orthogonal (dot = ";
        if (u.is_exact()) os << to_string(dot(u.exact(), v.exact()));
        else os << std::abs(dot(u.complex(), v.complex()));
        os << ")";
        check.detail = os.str();
        break;
      }
    }
  return check;
}

}  // namespace

std::vector<Context> enumerate_bases(const RaySet& rays, double tol) {
  if (rays.dim() < 2) throw std::invalid_argument("enumerate_bases requires dim >= 2");
  const auto& list = rays.rays();
  const std::size_t n = list.size();
  std::vector<Bits> adj(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (orthogonal(list[i], list[j], tol)) {
        adj[i].set(j);
        adj[j].set(i);
      }
  std::vector<std::vector<int>> bases;
  for (const auto& clique : CliqueFinder(std::move(adj), rays.dim()).run()) {
    std::vector<int> ids;
    for (std::size_t k : clique) ids.push_back(list[k].id);
    std::sort(ids.begin(), ids.end());
    bases.push_back(std::move(ids));
  }
  std::sort(bases.begin(), bases.end());
  std::vector<Context> out;
  out.reserve(bases.size());
  for (std::size_t k = 0; k < bases.size(); ++k) {
    out.push_back(Context{"T" + std::to_string(k + 1), std::move(bases[k]), Rational(1)});
  }
  return out;
}

CoverStructure build_ks_cover(const RaySet& rays, double tol) {
  std::vector<Context> contexts;
  if (rays.dim() >= 2) contexts = enumerate_bases(rays, tol);
  return CoverStructure(std::make_shared<const RaySet>(rays), CoverKind::basis, std::move(contexts));
}

CoverStructure build_gks_cover(const RaySet& rays, const std::vector<Group>& groups,
                               const Rational& weight, double tol) {
  if (weight <= 0) throw std::invalid_argument("POVM weight must be positive");
  std::optional<std::vector<Context>> bases;
  std::vector<Context> contexts;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Context ctx{"P" + std::to_string(g + 1), {}, weight};
    if (const auto* names = std::get_if<std::vector<std::string>>(&groups[g])) {
      if (!bases) bases = enumerate_bases(rays, tol);
      std::set<int> ids;
      std::string joined;
      for (const auto& name : *names) {
        const auto it = std::find_if(bases->begin(), bases->end(),
                                     [&](const Context& b) { return b.name == name; });
        if (it == bases->end()) throw std::invalid_argument("unknown basis name " + name);
        ids.insert(it->element_ids.begin(), it->element_ids.end());
        joined += (joined.empty() ? "" : "+") + name;
      }
      ctx.name = joined;
      ctx.element_ids.assign(ids.begin(), ids.end());
    } else {
      const auto& ids = std::get<std::vector<int>>(groups[g]);
      for (int id : ids)
        if (!rays.contains(id)) throw std::invalid_argument("group references unknown ray " + std::to_string(id));
      std::set<int> unique(ids.begin(), ids.end());
      ctx.element_ids.assign(unique.begin(), unique.end());
    }
    const ContextCheck check = check_povm(rays, ctx, tol);
    if (!check.ok) throw VerificationError("POVM " + ctx.name + " is incomplete: " + check.detail);
    contexts.push_back(std::move(ctx));
  }
  return CoverStructure(std::make_shared<const RaySet>(rays), CoverKind::povm, std::move(contexts));
}

CoverVerification verify_cover(const CoverStructure& cover, double tol) {
  CoverVerification result;
  result.exact = cover.rays().backend() == Backend::exact;
  for (const auto& ctx : cover.contexts()) {
    ContextCheck check = cover.kind() == CoverKind::povm ? check_povm(cover.rays(), ctx, tol)
                                                         : check_basis(cover.rays(), ctx, tol);
    result.ok = result.ok && check.ok;
    result.contexts.push_back(std::move(check));
  }
  return result;
}

ParityCertificate parity_certificate(const CoverStructure& cover) {
  ParityCertificate cert;
  cert.context_count = cover.contexts().size();
  cert.incidence_counts = cover.incidence();
  cert.valid = cert.context_count % 2 == 1 &&
               std::all_of(cert.incidence_counts.begin(), cert.incidence_counts.end(),
                           [](const auto& kv) { return kv.second > 0 && kv.second % 2 == 0; });
  return cert;
}

CoverFile parse_cover(std::string_view text) {
  CoverFile file;
  bool have_kind = false;
  bool have_weight = false;
  const auto lines = detail::lines_of(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = detail::split_line(lines[i]);
    if (line.tokens.empty()) continue;
    const auto& head = line.tokens.front();
    if (head == "kind") {
      if (line.tokens.size() != 2) throw ParseError(line_no, "expected 'kind basis|povm'");
      if (line.tokens[1] == "basis") file.kind = CoverKind::basis;
      else if (line.tokens[1] == "povm") file.kind = CoverKind::povm;
      else throw ParseError(line_no, "unknown cover kind '" + line.tokens[1] + "'");
      have_kind = true;
    } else if (head == "weight") {
      if (line.tokens.size() != 2) throw ParseError(line_no, "expected 'weight p/q'");
      try {
        file.weight = parse_rational(line.tokens[1]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
      if (file.weight <= 0) throw ParseError(line_no, "weight must be positive");
      have_weight = true;
    } else if (head == "ctx") {
      if (line.tokens.size() < 3) throw ParseError(line_no, "expected 'ctx <name> <id> ...'");
      Context ctx{line.tokens[1], {}, file.weight};
      for (std::size_t k = 2; k < line.tokens.size(); ++k)
        ctx.element_ids.push_back(detail::parse_int(line.tokens[k], line_no, "ray id"));
      file.contexts.push_back(std::move(ctx));
    } else {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!have_kind) throw ParseError(lines.size() + 1, "missing kind line");
  if (!have_weight) file.weight = 1;
  for (auto& ctx : file.contexts) ctx.weight = file.weight;
  return file;
}

std::string write_cover(const CoverFile& file) {
  std::ostringstream os;
  os << "kind " << to_string(file.kind) << '\n';
  os << "weight " << to_string(file.weight) << '\n';
  for (const auto& ctx : file.contexts) {
    if (ctx.weight != file.weight) throw std::invalid_argument("cover weights are not uniform");
    os << "ctx " << ctx.name;
    for (int id : ctx.element_ids) os << ' ' << id;
    os << '\n';
  }
  return os.str();
}

std::string write_cover(const CoverStructure& cover) {
  CoverFile file{cover.kind(), cover.contexts().empty() ? Rational(1) : cover.contexts().front().weight,
                 cover.contexts()};
  return write_cover(file);
}

CoverStructure attach(const CoverFile& file, std::shared_ptr<const RaySet> rays) {
  return CoverStructure(std::move(rays), file.kind, file.contexts);
}

}  // namespace kscert
