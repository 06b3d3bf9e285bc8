#include "morgan/search.hpp"

#include <limits>

namespace morgan {

namespace {

constexpr Elem kUnassigned = std::numeric_limits<Elem>::max();

class Searcher {
 public:
  Searcher(const MapProblem& problem,
           const std::function<bool(const std::vector<Elem>&)>& visit)
      : pr_(problem), visit_(visit), n_(problem.dom->size()), m_(problem.cod->size()) {
    const Poset& dom = *pr_.dom;
    const Poset& cod = *pr_.cod;
    rank_.resize(n_);
    const auto& lin = dom.linear_extension();
    for (std::size_t i = 0; i < n_; ++i) rank_[lin[i]] = i;

    domains_.assign(n_, Bitset(m_, true));
    if (!pr_.allowed.empty())
      for (Elem x = 0; x < n_; ++x) domains_[x] &= pr_.allowed[x];
    if (pr_.dom_inv) {
      Bitset fixed(m_);
      for (Elem v = 0; v < m_; ++v)
        if ((*pr_.cod_inv)[v] == v) fixed.set(v);
      for (Elem x = 0; x < n_; ++x)
        if ((*pr_.dom_inv)[x] == x) domains_[x] &= fixed;
    }
    above_.resize(n_);
    below_.resize(n_);
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) {
        if (x == y) continue;
        if (dom.le(x, y)) above_[x].push_back(y);
        if (dom.le(y, x)) below_[x].push_back(y);
      }
    (void)cod;
    assignment_.assign(n_, kUnassigned);
  }

  bool run() {
    for (Elem x = 0; x < n_; ++x)
      if (domains_[x].none()) return false;
    return rec(0);
  }

 private:
  // Returns true when the visitor asked to stop.
  bool rec(std::size_t assigned_count) {
    if (assigned_count == n_) return !visit_(assignment_);
    Elem best = kUnassigned;
    std::size_t best_size = 0;
    for (Elem x = 0; x < n_; ++x) {
      if (assignment_[x] != kUnassigned) continue;
      std::size_t s = domains_[x].count();
      if (best == kUnassigned || s < best_size || (s == best_size && rank_[x] < rank_[best])) {
        best = x;
        best_size = s;
      }
    }
    const Bitset choices = domains_[best];
    for (Elem v = choices.first(); v < m_; v = choices.next(v + 1)) {
      std::vector<Bitset> saved = domains_;
      std::vector<Elem> touched;
      if (assign(best, v, touched)) {
        if (rec(assigned_count + touched.size())) return true;
      }
      for (Elem t : touched) assignment_[t] = kUnassigned;
      domains_ = std::move(saved);
    }
    return false;
  }

  bool assign(Elem x, Elem v, std::vector<Elem>& touched) {
    if (!place(x, v, touched)) return false;
    if (pr_.dom_inv) {
      Elem ix = (*pr_.dom_inv)[x];
      Elem iv = (*pr_.cod_inv)[v];
      if (ix != x) {
        if (assignment_[ix] != kUnassigned) return assignment_[ix] == iv;
        if (!domains_[ix].test(iv)) return false;
        if (!place(ix, iv, touched)) return false;
      }
    }
    return true;
  }

  bool place(Elem x, Elem v, std::vector<Elem>& touched) {
    assignment_[x] = v;
    touched.push_back(x);
    domains_[x] = Bitset(m_);
    domains_[x].set(v);
    const Poset& cod = *pr_.cod;
    for (Elem y : above_[x]) {
      if (assignment_[y] != kUnassigned) {
        if (!cod.le(v, assignment_[y])) return false;
        continue;
      }
      if (!restrict(y, cod.up(v))) return false;
    }
    for (Elem y : below_[x]) {
      if (assignment_[y] != kUnassigned) {
        if (!cod.le(assignment_[y], v)) return false;
        continue;
      }
      if (!restrict(y, cod.down(v))) return false;
    }
    return true;
  }

  bool restrict(Elem y, const Bitset& mask) {
    Bitset& d = domains_[y];
    Bitset before = d;
    d &= mask;
    if (d.none()) return false;
    if (pr_.dom_inv && d != before) {
      Elem iy = (*pr_.dom_inv)[y];
      if (iy != y && assignment_[iy] == kUnassigned) {
        Bitset mirrored(m_);
        d.for_each([&](Elem w) { mirrored.set((*pr_.cod_inv)[w]); });
        domains_[iy] &= mirrored;
        if (domains_[iy].none()) return false;
      }
    }
    return true;
  }

  const MapProblem& pr_;
  const std::function<bool(const std::vector<Elem>&)>& visit_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::size_t> rank_;
  std::vector<Bitset> domains_;
  std::vector<std::vector<Elem>> above_;
  std::vector<std::vector<Elem>> below_;
  std::vector<Elem> assignment_;
};

}  // namespace

bool search_maps(const MapProblem& problem,
                 const std::function<bool(const std::vector<Elem>&)>& visit) {
  if (problem.dom->empty()) return !visit({});
  if (problem.cod->empty()) return false;
  Searcher s(problem, visit);
  return s.run();
}

std::optional<std::vector<Elem>> find_map(const MapProblem& problem) {
  std::optional<std::vector<Elem>> found;
  search_maps(problem, [&](const std::vector<Elem>& m) {
    found = m;
    return false;
  });
  return found;
}

}  // namespace morgan
