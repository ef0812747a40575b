#include "opalg/solve.hpp"

#include <algorithm>
#include <set>

namespace opalg {

namespace {

MPoly divide_monomial(const MPoly& p, const Monomial& m) {
  MPoly r;
  for (const auto& [mm, c] : p.terms()) r.add_term(mm / m, c);
  return r;
}

Monomial restrict_to(const Monomial& m, const std::vector<CVar>& keep) {
  Monomial r;
  for (auto [id, e] : m.entries())
    if (std::find(keep.begin(), keep.end(), CVar::from_id(id)) != keep.end()) r = r * Monomial::var(CVar::from_id(id), e);
  return r;
}

bool contains_var(const std::vector<CVar>& vs, CVar v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); }

struct Node {
  std::set<MPoly> eqs;
  std::vector<CVar> zeros, nonzeros;
  std::vector<std::pair<CVar, MPoly>> solved;
  std::size_t depth = 0;

  void substitute(CVar v, const MPoly& f) {
    std::set<MPoly> next;
    for (const MPoly& g : eqs) next.insert(g.substitute(v, f));
    eqs = std::move(next);
    for (auto& [w, rhs] : solved) rhs = rhs.substitute(v, f);
  }
};

class Solver {
 public:
  Solver(std::vector<CVar> vars, const SolveBudget& b) : vars_(std::move(vars)), budget_(b) {
    order_.ranking = vars_;
  }

  void run(Node n) {
    if (!simplify(n)) return;
    if (auto v = split_variable(n); v && n.depth < budget_.max_depth) {
      Node z = n, nz = std::move(n);
      z.substitute(*v, MPoly());
      z.zeros.push_back(*v);
      ++z.depth;
      nz.nonzeros.push_back(*v);
      ++nz.depth;
      run(std::move(z));
      run(std::move(nz));
      return;
    }
    leaf(std::move(n));
  }

  std::vector<SolutionComponent> take() { return std::move(out_); }

 private:
  // Removes nonzero factors, constant equations and linearly solvable
  // variables. Returns false when the branch is empty.
  bool simplify(Node& n) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::set<MPoly> next;
      for (const MPoly& g0 : n.eqs) {
        MPoly g = g0;
        if (Monomial m = restrict_to(g.monomial_content(), n.nonzeros); !m.is_one()) g = divide_monomial(g, m);
        if (g.is_zero()) continue;
        if (g.is_constant()) return false;
        next.insert(g.normalized());
      }
      n.eqs = std::move(next);
      for (const MPoly& g : n.eqs) {
        auto v = linear_variable(g, n);
        if (!v) continue;
        Rational k = g.coefficient_of(*v, 1).constant_term();
        MPoly f = (g - MPoly::var(*v).scaled(k)).scaled(-1 / k);
        if (auto it = std::find(n.nonzeros.begin(), n.nonzeros.end(), *v); it != n.nonzeros.end()) {
          // v = f with f a constant: the assumption v != 0 is decided here
          if (f.is_zero()) return false;
          n.nonzeros.erase(it);
        }
        n.eqs.erase(g);
        n.substitute(*v, f);
        n.solved.emplace_back(*v, f);
        changed = true;
        break;
      }
    }
    return true;
  }

  std::optional<CVar> linear_variable(const MPoly& g, const Node& n) const {
    for (CVar v : vars_) {
      if (g.degree_in(v) != 1 || !g.coefficient_of(v, 1).is_constant()) continue;
      // a nonzero-assumed variable is only eliminated in favour of a constant
      if (!contains_var(n.nonzeros, v) || g.coefficient_of(v, 0).is_constant()) return v;
    }
    return std::nullopt;
  }

  std::optional<CVar> split_variable(const Node& n) const {
    std::map<CVar, int> hits;
    for (const MPoly& g : n.eqs) {
      Monomial content = g.monomial_content();
      for (auto [id, e] : content.entries())
        if (!contains_var(n.nonzeros, CVar::from_id(id))) ++hits[CVar::from_id(id)];
    }
    std::optional<CVar> best;
    int best_hits = 0;
    for (CVar v : vars_)
      if (auto it = hits.find(v); it != hits.end() && it->second > best_hits) {
        best = v;
        best_hits = it->second;
      }
    return best;
  }

  void leaf(Node n) {
    std::vector<MPoly> residual;
    if (!n.eqs.empty()) {
      auto gb = buchberger({n.eqs.begin(), n.eqs.end()}, order_, budget_.groebner);
      if (gb.is_unit_ideal()) return;
      if (n.depth < budget_.max_depth) {
        Node again = n;
        again.eqs.clear();
        for (const MPoly& g : gb.polys) again.eqs.insert(g.normalized());
        if (again.eqs != n.eqs) {
          ++again.depth;
          run(std::move(again));
          return;
        }
      }
      if (!n.nonzeros.empty()) {
        MPoly prod(1);
        for (CVar v : n.nonzeros) prod *= MPoly::var(v);
        if (in_radical(prod, gb, budget_.groebner)) return;
      }
      residual = gb.polys;
    }
    if (out_.size() >= budget_.max_components) throw ResourceLimit("too many solution components");
    SolutionComponent c;
    c.variables = vars_;
    c.zero_assumptions = n.zeros;
    c.nonzero_assumptions = n.nonzeros;
    c.solved = n.solved;
    c.residual = residual;
    c.opaque = std::any_of(residual.begin(), residual.end(), [](const MPoly& g) { return g.total_degree() > 1; });
    std::vector<CVar> rest;
    for (CVar v : vars_)
      if (!contains_var(n.zeros, v) &&
          std::none_of(n.solved.begin(), n.solved.end(), [v](const auto& s) { return s.first == v; }))
        rest.push_back(v);
    std::vector<MPoly> nz;
    for (CVar v : n.nonzeros) nz.push_back(MPoly::var(v));
    if (auto pt = find_point(residual, rest, nz)) {
      for (CVar v : n.zeros) (*pt)[v] = 0;
      for (auto it = n.solved.rbegin(); it != n.solved.rend(); ++it) (*pt)[it->first] = it->second.evaluate(*pt);
      c.representative = std::move(*pt);
    }
    out_.push_back(std::move(c));
  }

  std::vector<CVar> vars_;
  SolveBudget budget_;
  MonomialOrder order_;
  std::vector<SolutionComponent> out_;
};

Rational eval_univariate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational r = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  if (n > mpz_class("1000000000000")) return {1};
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const MPoly& p0, CVar v) {
  MPoly p = p0.normalized();
  std::uint32_t deg = p.degree_in(v);
  std::vector<Rational> coeffs(deg + 1);
  for (std::uint32_t k = 0; k <= deg; ++k) coeffs[k] = p.coefficient_of(v, k).constant_term();
  std::set<Rational> roots;
  std::size_t low = 0;
  while (low <= deg && coeffs[low] == 0) ++low;
  if (low > 0) roots.insert(0);
  if (low >= deg) return {roots.begin(), roots.end()};
  mpz_class a0 = coeffs[low].get_num(), an = coeffs[deg].get_num();
  for (const mpz_class& num : divisors(a0))
    for (const mpz_class& den : divisors(an))
      for (int sign : {1, -1}) {
        Rational x(num * sign, den);
        x.canonicalize();
        if (eval_univariate(coeffs, x) == 0) roots.insert(x);
      }
  return {roots.begin(), roots.end()};
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

namespace {

struct PointSearch {
  const std::vector<MPoly>& eqs;
  const std::vector<CVar>& vars;
  const std::vector<MPoly>& nonzero;
  std::mt19937_64* rng;
  std::size_t nodes = 0;

  bool consistent(const Assignment& a) const {
    for (const MPoly& g : eqs) {
      MPoly r = g.partial_evaluate(a);
      if (r.is_constant() && r.constant_term() != 0) return false;
    }
    for (const MPoly& g : nonzero) {
      MPoly r = g.partial_evaluate(a);
      if (r.is_zero()) return false;
    }
    return true;
  }

  std::optional<Assignment> dfs(Assignment a) {
    if (++nodes > 20000 || !consistent(a)) return std::nullopt;
    std::vector<MPoly> rest;
    for (const MPoly& g : eqs)
      if (MPoly r = g.partial_evaluate(a); !r.is_zero()) rest.push_back(r);
    // a polynomial with a single unknown forces its value
    for (const MPoly& r : rest) {
      auto vs = r.variables();
      if (vs.size() != 1) continue;
      for (const Rational& x : rational_roots(r, vs[0])) {
        Assignment b = a;
        b[vs[0]] = x;
        if (auto done = dfs(std::move(b))) return done;
      }
      return std::nullopt;
    }
    std::optional<CVar> pick;
    std::uint32_t best = 0;
    for (CVar v : vars) {
      if (a.contains(v)) continue;
      std::uint32_t d = 0;
      for (const MPoly& r : rest) d = std::max(d, r.degree_in(v));
      if (!pick || d > best) {
        pick = v;
        best = d;
      }
    }
    if (!pick) return rest.empty() ? std::optional<Assignment>(a) : std::nullopt;
    std::vector<Rational> cands;
    if (rng) {
      for (int i = 0; i < 3; ++i) cands.push_back(random_rational(*rng));
    } else {
      cands = {0, 1, -1, 2, -2, Rational(1, 2)};
    }
    for (const Rational& x : cands) {
      Assignment b = a;
      b[*pick] = x;
      if (auto done = dfs(std::move(b))) return done;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Assignment> find_point(const std::vector<MPoly>& eqs, const std::vector<CVar>& vars,
                                     const std::vector<MPoly>& nonzero, std::mt19937_64* rng) {
  PointSearch s{eqs, vars, nonzero, rng};
  return s.dfs({});
}

std::vector<MPoly> SolutionComponent::ideal_generators() const {
  std::vector<MPoly> out;
  for (CVar v : zero_assumptions) out.push_back(MPoly::var(v));
  for (const auto& [v, f] : solved) out.push_back(MPoly::var(v) - f);
  out.insert(out.end(), residual.begin(), residual.end());
  return out;
}

std::vector<CVar> SolutionComponent::free_variables() const {
  std::vector<CVar> out;
  for (CVar v : variables) {
    if (contains_var(zero_assumptions, v)) continue;
    if (std::any_of(solved.begin(), solved.end(), [v](const auto& s) { return s.first == v; })) continue;
    if (std::any_of(residual.begin(), residual.end(), [v](const MPoly& g) { return g.involves(v); })) continue;
    out.push_back(v);
  }
  return out;
}

bool SolutionComponent::contains(const Assignment& pt) const {
  for (const MPoly& g : ideal_generators())
    if (g.evaluate(pt) != 0) return false;
  for (CVar v : nonzero_assumptions)
    if (MPoly::var(v).evaluate(pt) == 0) return false;
  return true;
}

std::optional<Assignment> SolutionComponent::sample(std::mt19937_64& rng, int tries) const {
  std::vector<CVar> rest;
  for (CVar v : variables)
    if (!contains_var(zero_assumptions, v) &&
        std::none_of(solved.begin(), solved.end(), [v](const auto& s) { return s.first == v; }))
      rest.push_back(v);
  std::vector<MPoly> nz;
  for (CVar v : nonzero_assumptions) nz.push_back(MPoly::var(v));
  for (int i = 0; i < tries; ++i) {
    auto pt = find_point(residual, rest, nz, &rng);
    if (!pt) continue;
    for (CVar v : zero_assumptions) (*pt)[v] = 0;
    for (auto it = solved.rbegin(); it != solved.rend(); ++it) (*pt)[it->first] = it->second.evaluate(*pt);
    if (contains(*pt)) return pt;
  }
  return std::nullopt;
}

namespace {

bool subset(const std::vector<CVar>& a, const std::vector<CVar>& b) {
  return std::all_of(a.begin(), a.end(), [&](CVar v) { return contains_var(b, v); });
}

bool all_in_radical(const std::vector<MPoly>& gens, const GroebnerBasis& gb, const BuchbergerBudget& budget) {
  return std::all_of(gens.begin(), gens.end(), [&](const MPoly& g) { return in_radical(g, gb, budget); });
}

// Case splits leave a branch v != 0 next to its own boundary v = 0. Where the
// boundary is exactly another component, the assumption is dropped and the
// boundary component removed; afterwards every component contained in
// another is removed.
void absorb(std::vector<SolutionComponent>& comps, const SolveBudget& budget) {
  auto basis = [&](const SolutionComponent& c, std::optional<CVar> extra = {}) {
    auto gens = c.ideal_generators();
    if (extra) gens.push_back(MPoly::var(*extra));
    return buchberger(gens, {}, budget.groebner);
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < comps.size() && !changed; ++i) {
      for (CVar v : comps[i].nonzero_assumptions) {
        std::vector<CVar> rest;
        for (CVar w : comps[i].nonzero_assumptions)
          if (w != v) rest.push_back(w);
        auto boundary_gens = comps[i].ideal_generators();
        boundary_gens.push_back(MPoly::var(v));
        GroebnerBasis boundary = basis(comps[i], v);
        if (boundary.is_unit_ideal()) continue;
        for (std::size_t j = 0; j < comps.size(); ++j) {
          if (j == i) continue;
          const auto& c = comps[j];
          std::vector<CVar> nz = c.nonzero_assumptions;
          if (!subset(nz, rest) || !subset(rest, nz)) continue;
          if (!all_in_radical(c.ideal_generators(), boundary, budget.groebner)) continue;
          if (!all_in_radical(boundary_gens, basis(c), budget.groebner)) continue;
          comps[i].nonzero_assumptions = rest;
          comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
  }
  std::vector<GroebnerBasis> gbs;
  for (const auto& c : comps) gbs.push_back(basis(c));
  std::vector<bool> drop(comps.size(), false);
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t j = 0; j < comps.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (!subset(comps[j].nonzero_assumptions, comps[i].nonzero_assumptions)) continue;
      if (all_in_radical(comps[j].ideal_generators(), gbs[i], budget.groebner)) drop[i] = true;
    }
  std::vector<SolutionComponent> kept;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(comps[i]));
  comps = std::move(kept);
}

}  // namespace

std::vector<SolutionComponent> solve_components(const std::vector<MPoly>& system, const SolveBudget& budget) {
  std::set<CVar> vs;
  for (const MPoly& g : system)
    for (CVar v : g.variables()) vs.insert(v);
  Solver s({vs.begin(), vs.end()}, budget);
  Node root;
  root.eqs.insert(system.begin(), system.end());
  s.run(std::move(root));
  auto comps = s.take();
  absorb(comps, budget);
  return comps;
}

std::string to_string(const SolutionComponent& c) {
  std::string out;
  auto list = [](const std::vector<CVar>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + vs[i].name();
    return s;
  };
  if (!c.zero_assumptions.empty()) out += "zero: " + list(c.zero_assumptions) + "; ";
  if (!c.nonzero_assumptions.empty()) out += "nonzero: " + list(c.nonzero_assumptions) + "; ";
  for (const auto& [v, f] : c.solved) out += v.name() + " = " + to_string(f) + "; ";
  for (const MPoly& g : c.residual) out += to_string(g) + " = 0; ";
  if (auto fv = c.free_variables(); !fv.empty()) out += "free: " + list(fv) + "; ";
  out += "point:";
  for (const auto& [v, x] : c.representative) out += " " + v.name() + "=" + to_string(x);
  return out;
}

}  // namespace opalg
