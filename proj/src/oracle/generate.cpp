#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "weakarr/oracle.hpp"

namespace weakarr::oracle {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

struct Signature {
  SortId I, E, A;
  explicit Signature(TermStore& s) : I(s.free_sort("I")), E(s.free_sort("E")), A(s.array_sort(I, E)) {}
};

std::vector<TermId> vars(TermStore& s, std::string_view prefix, unsigned n, SortId sort) {
  std::vector<TermId> out;
  for (unsigned k = 1; k <= n; ++k) out.push_back(s.mk_var(std::string(prefix) + std::to_string(k), sort));
  return out;
}

TermId swap(TermStore& s, TermId a, TermId p, TermId q) {
  return s.mk_store(s.mk_store(a, p, s.mk_select(a, q)), q, s.mk_select(a, p));
}

}  // namespace

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::Tiny: return "tiny";
    case Profile::Commute: return "commute";
    case Profile::Swap: return "swap";
    case Profile::ExtChain: return "ext-chain";
  }
  return "?";
}

std::optional<Profile> parse_profile(std::string_view name) {
  for (Profile p : {Profile::Tiny, Profile::Commute, Profile::Swap, Profile::ExtChain})
    if (profile_name(p) == name) return p;
  return std::nullopt;
}

TermId generate(TermStore& s, std::uint64_t seed) {
  Rng rng(seed);
  Signature sig(s);
  std::vector<TermId> arrays = vars(s, "a", 1 + rng.below(3), sig.A);
  std::vector<TermId> indices = vars(s, "i", 1 + rng.below(3), sig.I);
  std::vector<TermId> elems = vars(s, "e", 1 + rng.below(2), sig.E);
  if (indices.size() < 4 && rng.chance(1, 3)) {
    FunId f = s.declare_fun("f", {sig.I}, sig.I);
    std::size_t apps = 1 + rng.below(std::min<std::size_t>(2, 4 - indices.size()));
    std::vector<TermId> base = indices;
    for (std::size_t k = 0; k < apps; ++k) indices.push_back(s.mk_apply(f, std::vector{base[k % base.size()]}));
  }

  auto element = [&]() -> TermId {
    if (rng.chance(1, 4)) return s.mk_select(rng.pick(arrays), rng.pick(indices));
    return rng.pick(elems);
  };

  std::vector<std::pair<TermId, unsigned>> pool;
  for (TermId a : arrays) pool.emplace_back(a, 0);
  std::size_t stores = rng.below(5);
  for (std::size_t k = 0; k < stores; ++k) {
    auto [base, depth] = pool[rng.below(pool.size())];
    if (depth == 3) continue;
    TermId st = s.mk_store(base, rng.pick(indices), element());
    if (std::none_of(pool.begin(), pool.end(), [&](const auto& p) { return p.first == st; }))
      pool.emplace_back(st, depth + 1);
  }
  auto array_term = [&] { return pool[rng.below(pool.size())].first; };

  std::vector<TermId> lits;
  std::size_t n = 3 + rng.below(6);
  while (lits.size() < n) {
    std::size_t kind = rng.below(10);
    TermId atom;
    if (kind < 4) {
      TermId l = array_term(), r = array_term();
      if (l == r) continue;
      atom = s.mk_eq(l, r);
    } else if (kind < 8) {
      TermId l = s.mk_select(array_term(), rng.pick(indices));
      TermId r = rng.chance(1, 2) ? s.mk_select(array_term(), rng.pick(indices)) : rng.pick(elems);
      if (l == r) continue;
      atom = s.mk_eq(l, r);
    } else {
      TermId l = rng.pick(indices), r = rng.pick(indices);
      if (l == r) continue;
      atom = s.mk_eq(l, r);
    }
    lits.push_back(rng.chance(1, 2) ? atom : s.mk_not(atom));
  }
  return s.mk_and(lits);
}

FamilyInstance family(TermStore& s, Profile p, unsigned n, bool valid) {
  Signature sig(s);
  std::vector<TermId> conj;
  switch (p) {
    case Profile::Tiny: throw std::invalid_argument("tiny is not a family");
    case Profile::Commute: {
      // stores at pairwise distinct indices, applied in opposite orders
      if (n < 2) throw std::invalid_argument("commute needs at least 2 stores");
      TermId a = s.mk_var("a", sig.A);
      auto is = vars(s, "i", n, sig.I);
      auto vs = vars(s, "v", n, sig.E);
      TermId l = a, r = a;
      for (unsigned k = 0; k < n; ++k) {
        l = s.mk_store(l, is[k], vs[k]);
        r = s.mk_store(r, is[n - 1 - k], vs[n - 1 - k]);
      }
      for (unsigned x = 0; x < n; ++x)
        for (unsigned y = x + 1; y < n; ++y)
          if (valid || x != 0 || y != n - 1) conj.push_back(s.mk_not(s.mk_eq(is[x], is[y])));
      conj.push_back(s.mk_not(s.mk_eq(l, r)));
      break;
    }
    case Profile::Swap: {
      // swapping neighbours (i_k, i_k+1) in either argument order gives the same array
      if (n < 1) throw std::invalid_argument("swap needs at least 1 swap");
      TermId a = s.mk_var("a", sig.A);
      auto is = vars(s, "i", n + 1, sig.I);
      TermId l = a, r = a;
      for (unsigned k = 0; k < n; ++k) {
        l = swap(s, l, is[k], is[k + 1]);
        r = swap(s, r, is[k + 1], is[k]);
      }
      conj.push_back(s.mk_not(s.mk_eq(l, valid ? r : a)));
      break;
    }
    case Profile::ExtChain: {
      // a_k-1 = store(a_k, i_k, v_k) with select(a_k, i_k) = v_k, so every a_k is a_0
      if (n < 1) throw std::invalid_argument("ext-chain needs length at least 1");
      auto as = vars(s, "a", n + 1, sig.A);
      auto is = vars(s, "i", n, sig.I);
      auto vs = vars(s, "v", n, sig.E);
      for (unsigned k = 0; k < n; ++k) {
        conj.push_back(s.mk_eq(as[k], s.mk_store(as[k + 1], is[k], vs[k])));
        if (valid || k + 1 < n) conj.push_back(s.mk_eq(s.mk_select(as[k + 1], is[k]), vs[k]));
      }
      conj.push_back(s.mk_not(s.mk_eq(as[0], as[n])));
      break;
    }
  }
  return {s.mk_and(conj), !valid};
}

}  // namespace weakarr::oracle
