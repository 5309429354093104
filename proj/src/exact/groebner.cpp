#include "varbound/exact/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace varbound::exact {

ExpressionBudget budget_from_environment() {
  ExpressionBudget b;
  if (const char* env = std::getenv("VARBOUND_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.max_terms = static_cast<std::size_t>(v);
  }
  return b;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const auto& lf = f.leading();
  const auto& lg = g.leading();
  const Monomial l = lf.mono.lcm(lg.mono);
  const Polynomial zero(f.vars());
  const Polynomial a = zero.sub_scaled(Rational(-1) / lf.coeff, l / lf.mono, f);
  return a.sub_scaled(Rational(1) / lg.coeff, l / lg.mono, g);
}

namespace {

const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& basis) {
  for (const Polynomial* g : basis)
    if (g->leading().mono.divides(m)) return g;
  return nullptr;
}

Polynomial reduce(Polynomial p, const std::vector<const Polynomial*>& basis, const ExpressionBudget* budget) {
  Polynomial r(p.vars());
  while (!p.is_zero()) {
    const auto lt = p.leading();
    if (const Polynomial* g = find_reducer(lt.mono, basis)) {
      p = p.sub_scaled(lt.coeff / g->leading().coeff, lt.mono / g->leading().mono, *g);
      if (budget && p.size() + r.size() > budget->max_terms) {
        std::ostringstream os;
        os << "intermediate polynomial exceeded " << budget->max_terms << " terms";
        throw BudgetExceeded(os.str(), basis.size(), 0);
      }
    } else {
      r.append_trailing(lt);
      p.drop_leading();
    }
  }
  return r;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  int sugar;
};

}  // namespace

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis) {
  std::vector<const Polynomial*> ptrs;
  for (const auto& g : basis)
    if (!g.is_zero()) ptrs.push_back(&g);
  return reduce(f, ptrs, nullptr);
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& polys, MonomialOrder order,
                                   const ExpressionBudget& budget) {
  if (order != MonomialOrder::Lex) throw std::invalid_argument("only lex order is supported");
  std::vector<Polynomial> store;
  std::vector<int> sugar;
  std::vector<std::size_t> active;  // indices into store forming the current basis
  std::vector<Pair> pairs;
  if (polys.empty()) return {};
  const auto vars = polys.front().vars();
  for (const auto& p : polys)
    if (p.vars() != vars) throw std::invalid_argument("all polynomials must share the variable list");

  auto active_ptrs = [&] {
    std::vector<const Polynomial*> v;
    v.reserve(active.size());
    for (std::size_t k : active) v.push_back(&store[k]);
    return v;
  };

  // Gebauer-Moeller installation of a new basis element.
  auto install = [&](Polynomial h, int h_sugar) {
    if (h.total_degree() > budget.max_degree) {
      std::ostringstream os;
      os << "basis element degree " << h.total_degree() << " exceeds cap " << budget.max_degree;
      throw BudgetExceeded(os.str(), active.size(), pairs.size());
    }
    store.push_back(h.monic());
    sugar.push_back(h_sugar);
    const std::size_t hn = store.size() - 1;
    const Monomial lh = store[hn].leading().mono;

    std::vector<Pair> fresh;
    for (std::size_t g : active) {
      const Monomial lg = store[g].leading().mono;
      const Monomial l = lg.lcm(lh);
      const int s = std::max(sugar[g] + (l / lg).total_degree(), h_sugar + (l / lh).total_degree());
      fresh.push_back({g, hn, l, s});
    }
    // Chain criterion among the new pairs.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const Pair& p = fresh[a];
      const bool coprime = store[p.i].leading().mono.coprime(lh);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !dominated; ++b) {
          if (a == b) continue;
          const Monomial& lb = fresh[b].lcm;
          if (lb.divides(p.lcm) && (lb != p.lcm || b < a)) dominated = true;
        }
      }
      if (!dominated) kept.push_back(p);
    }
    // Product criterion.
    std::erase_if(kept, [&](const Pair& p) { return store[p.i].leading().mono.coprime(lh); });
    // Old pairs made redundant by h.
    std::erase_if(pairs, [&](const Pair& p) {
      if (!lh.divides(p.lcm)) return false;
      const Monomial li = store[p.i].leading().mono.lcm(lh);
      const Monomial lj = store[p.j].leading().mono.lcm(lh);
      return li != p.lcm && lj != p.lcm;
    });
    pairs.insert(pairs.end(), kept.begin(), kept.end());
    std::erase_if(active, [&](std::size_t g) { return lh.divides(store[g].leading().mono); });
    active.push_back(hn);
  };

  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    Polynomial h = reduce(p, active_ptrs(), &budget);
    if (h.is_zero()) continue;
    install(std::move(h), p.total_degree());
  }

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.lcm != b.lcm) return a.lcm < b.lcm;
      return a.sugar < b.sugar;
    });
    const Pair p = *it;
    pairs.erase(it);
    Polynomial h = reduce(s_polynomial(store[p.i], store[p.j]), active_ptrs(), &budget);
    if (h.is_zero()) continue;
    install(std::move(h), p.sugar);
  }

  // Interreduce the minimal basis.
  std::vector<Polynomial> basis;
  for (std::size_t k : active) basis.push_back(store[k]);
  std::sort(basis.begin(), basis.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.leading().mono < b.leading().mono; });
  std::vector<Polynomial> reduced;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<const Polynomial*> others;
    for (std::size_t m = 0; m < basis.size(); ++m)
      if (m != k) others.push_back(&basis[m]);
    reduced.push_back(reduce(basis[k], others, nullptr).monic());
  }
  return reduced;
}

std::vector<Polynomial> eliminants(const std::vector<Polynomial>& basis) {
  std::vector<Polynomial> out;
  for (const auto& g : basis)
    if (!g.is_zero() && g.highest_variable() >= g.nvars() - 1) out.push_back(g);
  return out;
}

}  // namespace varbound::exact
