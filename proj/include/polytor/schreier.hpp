#pragma once

// Finite abelian quotients and Reidemeister-Schreier presentations of the
// kernel subgroup ker(pi_bar . phi), with a breadth-first Schreier
// transversal and deficiency-preserving Tietze reduction.

#include "polytor/expvec.hpp"
#include "polytor/matrix.hpp"
#include "polytor/presentation.hpp"

#include <map>
#include <string>
#include <vector>

namespace polytor {

struct FinAbGroup {
  std::vector<long> invariant_factors;  // each >= 2; empty = trivial group

  void validate() const {
    for (long q : invariant_factors)
      if (q < 2) throw ValidationError("invariant factors must be >= 2");
  }

  long order() const {
    long o = 1;
    for (long q : invariant_factors) o *= q;
    return o;
  }

  long exponent() const {
    long e = 1;
    for (long q : invariant_factors) e = lcm_long(e, q);
    return e;
  }

  std::size_t rank() const { return invariant_factors.size(); }

  // Elements as vectors (g_1..g_r), 0 <= g_i < q_i, lexicographic order.
  std::vector<std::vector<long>> elements() const {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(rank(), 0);
    out.reserve(static_cast<std::size_t>(order()));
    while (true) {
      out.push_back(cur);
      std::size_t i = rank();
      while (i > 0) {
        --i;
        if (++cur[i] < invariant_factors[i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (rank() == 0) return out;
    }
  }

  std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const {
    std::vector<long> c(rank());
    for (std::size_t i = 0; i < rank(); ++i) c[i] = (a[i] + b[i]) % invariant_factors[i];
    return c;
  }
};

// A surjection Z^n ->> G, column i = image of t_i mod (q_1..q_r).
struct EpiToG {
  FinAbGroup group;
  std::vector<std::vector<long>> matrix;  // r rows, n columns

  std::size_t num_rows() const { return matrix.size(); }
  std::size_t num_cols() const { return matrix.empty() ? 0 : matrix[0].size(); }

  void validate(long n) const {
    group.validate();
    if (matrix.size() != group.rank())
      throw ValidationError("pi_bar row count must match the number of invariant factors");
    for (const auto& row : matrix)
      if (static_cast<long>(row.size()) != n)
        throw ValidationError("pi_bar column count must match the abelianization rank");
    if (group.rank() == 0) return;
    // Surjectivity: SNF of [pi_bar | diag(q)] has all invariant factors 1.
    std::size_t r = group.rank();
    Matrix<BigInt> m(r, static_cast<std::size_t>(n) + r, BigInt(0));
    for (std::size_t i = 0; i < r; ++i) {
      for (long j = 0; j < n; ++j) m.at(i, static_cast<std::size_t>(j)) = matrix[i][static_cast<std::size_t>(j)];
      m.at(i, static_cast<std::size_t>(n) + i) = group.invariant_factors[i];
    }
    SmithForm s = smith_normal_form(m);
    if (s.rank != r)
      throw ValidationError("pi_bar is not surjective onto G");
    for (const auto& d : s.invariant_factors)
      if (d != 1) throw ValidationError("pi_bar is not surjective onto G");
  }

  std::vector<long> apply(const ExpVec& x) const {
    std::vector<long> g(group.rank(), 0);
    for (std::size_t i = 0; i < group.rank(); ++i) {
      long acc = 0;
      for (std::size_t j = 0; j < x.size(); ++j) acc += matrix[i][j] * x[j];
      long q = group.invariant_factors[i];
      g[i] = ((acc % q) + q) % q;
    }
    return g;
  }

  bool in_kernel(const ExpVec& x) const {
    for (long v : apply(x))
      if (v != 0) return false;
    return true;
  }

  // Basis of the kernel sublattice of Z^n: x with pi_bar(x) = 0 mod q.
  Lattice kernel_lattice(long n) const {
    std::size_t r = group.rank();
    if (r == 0) return Lattice::full(static_cast<std::size_t>(n));
    // Kernel of [pi_bar | diag(q)] : Z^{n+r} -> Z^r, projected onto the
    // first n coordinates. Null space from SNF: columns V e_i for i > rank.
    Matrix<BigInt> m(r, static_cast<std::size_t>(n) + r, BigInt(0));
    for (std::size_t i = 0; i < r; ++i) {
      for (long j = 0; j < n; ++j) m.at(i, static_cast<std::size_t>(j)) = matrix[i][static_cast<std::size_t>(j)];
      m.at(i, static_cast<std::size_t>(n) + i) = group.invariant_factors[i];
    }
    SmithForm s = smith_normal_form(m);
    std::size_t total = static_cast<std::size_t>(n) + r;
    Matrix<BigInt> gens(static_cast<std::size_t>(n), total - s.rank, BigInt(0));
    for (std::size_t k = s.rank; k < total; ++k)
      for (long i = 0; i < n; ++i)
        gens.at(static_cast<std::size_t>(i), k - s.rank) = s.V.at(static_cast<std::size_t>(i), k);
    return Lattice(std::move(gens));
  }
};

struct SubgroupData {
  Presentation presentation;
  std::vector<Word> inclusion;   // subgroup generator -> word in parent generators
  std::vector<Word> coset_reps;  // Schreier transversal, indexed by coset
  std::vector<std::vector<long>> coset_elements;  // the G-element of each coset
  long index = 1;
};

inline std::vector<long> negate_mod(const std::vector<long>& g, const FinAbGroup& G) {
  std::vector<long> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = (G.invariant_factors[i] - g[i]) % G.invariant_factors[i];
  return out;
}

namespace detail {

// Deficiency-preserving Tietze reduction: cyclic/free reduction, removal of
// freely trivial relators, elimination of generators that occur exactly once
// in some relator.
inline void tietze_reduce(Presentation& p, std::vector<Word>& inclusion) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& r : p.relators) r = r.cyclically_reduced();
    for (std::size_t i = 0; i < p.relators.size();) {
      if (p.relators[i].empty()) {
        p.relators.erase(p.relators.begin() + static_cast<long>(i));
        changed = true;
      } else {
        ++i;
      }
    }
    // find the first (relator, generator) with a single occurrence
    for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
      const Word& r = p.relators[ri];
      int gen = -1;
      std::size_t pos = 0;
      for (std::size_t li = 0; li < r.letters().size(); ++li) {
        int g = r.letters()[li].gen;
        if (r.count_occurrences(g) == 1) {
          gen = g;
          pos = li;
          break;
        }
      }
      if (gen < 0) continue;

      // r = alpha gen^e beta = 1  =>  gen^e = alpha^-1 beta^-1
      std::vector<Letter> alpha(r.letters().begin(), r.letters().begin() + static_cast<long>(pos));
      std::vector<Letter> beta(r.letters().begin() + static_cast<long>(pos) + 1, r.letters().end());
      int e = r.letters()[pos].sign;
      Word image = Word(std::move(alpha)).inverse() * Word(std::move(beta)).inverse();
      if (e < 0) image = image.inverse();

      p.relators.erase(p.relators.begin() + static_cast<long>(ri));
      for (auto& rel : p.relators) rel = rel.substituted(gen, image);

      // drop the generator, renumbering the rest
      std::vector<int> remap(p.num_generators());
      int next = 0;
      for (std::size_t gi = 0; gi < p.num_generators(); ++gi)
        remap[gi] = (static_cast<int>(gi) == gen) ? -1 : next++;
      std::vector<std::string> names;
      std::vector<Word> incl;
      for (std::size_t gi = 0; gi < p.num_generators(); ++gi) {
        if (static_cast<int>(gi) == gen) continue;
        names.push_back(p.generator_names[gi]);
        incl.push_back(inclusion[gi]);
      }
      for (auto& rel : p.relators) rel = rel.renumbered(remap);
      p.generator_names = std::move(names);
      inclusion = std::move(incl);
      changed = true;
      break;
    }
  }
}

}  // namespace detail

// Presentation of ker(pi_bar . phi) <= pi_1, via the Schreier transversal of
// the coset action on G. phi_images gives phi on parent generators.
inline SubgroupData reidemeister_schreier(const Presentation& p,
                                          const std::vector<ExpVec>& phi_images, long rank,
                                          const EpiToG& epi) {
  epi.validate(rank);
  const long order = epi.group.order();

  if (order == 1) {
    SubgroupData s;
    s.presentation = p;
    for (std::size_t j = 0; j < p.num_generators(); ++j)
      s.inclusion.push_back(Word::generator(static_cast<int>(j)));
    s.coset_reps = {Word()};
    s.coset_elements = {std::vector<long>(epi.group.rank(), 0)};
    s.index = 1;
    return s;
  }

  std::size_t k = p.num_generators();
  std::vector<std::vector<long>> gen_image(k);
  for (std::size_t j = 0; j < k; ++j) gen_image[j] = epi.apply(phi_images[j]);

  // BFS over coset space = G, positive generator steps in generator order.
  std::map<std::vector<long>, int> index_of;
  std::vector<std::vector<long>> elem_of;
  std::vector<Word> rep;
  std::vector<long> id(epi.group.rank(), 0);
  index_of[id] = 0;
  elem_of.push_back(id);
  rep.emplace_back();
  std::vector<std::vector<int>> action;  // action[c][j] = coset index
  std::vector<std::vector<bool>> tree;   // tree[c][j] = BFS tree edge
  for (std::size_t head = 0; head < elem_of.size(); ++head) {
    action.emplace_back(k, -1);
    tree.emplace_back(k, false);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<long> tgt = epi.group.add(elem_of[head], gen_image[j]);
      auto it = index_of.find(tgt);
      if (it == index_of.end()) {
        int idx = static_cast<int>(elem_of.size());
        index_of.emplace(tgt, idx);
        elem_of.push_back(tgt);
        rep.push_back(rep[head] * Word::generator(static_cast<int>(j)));
        action[head][j] = idx;
        tree[head][j] = true;
      } else {
        action[head][j] = it->second;
      }
    }
  }
  if (static_cast<long>(elem_of.size()) != order)
    throw ValidationError("pi_bar . phi does not reach every coset; quotient map not surjective");

  // Schreier generators for non-tree edges.
  std::vector<std::vector<int>> sgen(elem_of.size(), std::vector<int>(k, -1));
  Presentation sub;
  std::vector<Word> inclusion;
  for (std::size_t c = 0; c < elem_of.size(); ++c)
    for (std::size_t j = 0; j < k; ++j) {
      if (tree[c][j]) continue;
      int d = action[c][j];
      sgen[c][j] = static_cast<int>(sub.generator_names.size());
      sub.generator_names.push_back("s" + std::to_string(sub.generator_names.size() + 1));
      inclusion.push_back(rep[c] * Word::generator(static_cast<int>(j)) *
                          rep[static_cast<std::size_t>(d)].inverse());
    }

  // Reidemeister rewriting of rep[c] r rep[c]^-1 for every coset and relator.
  auto rewrite = [&](std::size_t c0, const Word& r) {
    std::vector<Letter> out;
    std::size_t c = c0;
    for (const auto& l : r.letters()) {
      std::size_t j = static_cast<std::size_t>(l.gen);
      if (l.sign > 0) {
        if (!tree[c][j] && sgen[c][j] >= 0) out.push_back(Letter{sgen[c][j], 1});
        c = static_cast<std::size_t>(action[c][j]);
      } else {
        // find source coset c' with c' . x_j = c
        std::vector<long> src = epi.group.add(elem_of[c], negate_mod(gen_image[j], epi.group));
        std::size_t cs = static_cast<std::size_t>(index_of.at(src));
        if (!tree[cs][j] && sgen[cs][j] >= 0) out.push_back(Letter{sgen[cs][j], -1});
        c = cs;
      }
    }
    return Word(std::move(out));
  };

  for (std::size_t c = 0; c < elem_of.size(); ++c)
    for (const auto& r : p.relators) sub.relators.push_back(rewrite(c, r));

  detail::tietze_reduce(sub, inclusion);
  if (sub.deficiency() != 1)
    throw UnsupportedError("cannot certify a deficiency-1 presentation of the cover subgroup");

  // Internal consistency: phi of every inclusion word lies in ker(pi_bar).
  for (const auto& w : inclusion) {
    ExpVec v = phi_of_word(phi_images, w, rank);
    if (!epi.in_kernel(v))
      throw std::logic_error("Reidemeister-Schreier produced a generator outside the kernel");
  }

  SubgroupData s;
  s.presentation = std::move(sub);
  s.inclusion = std::move(inclusion);
  s.coset_reps = std::move(rep);
  s.coset_elements = std::move(elem_of);
  s.index = order;
  return s;
}

}  // namespace polytor
