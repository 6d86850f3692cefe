#pragma once

// Finite presentations, knot/link ingestion (planar diagram codes and braid
// closures) and abelianization.
//
// PD convention used throughout: a crossing X(a,b,c,d) lists edge labels
// counterclockwise starting from the incoming under-edge a; the under-strand
// exits at c and the over-strand occupies b and d. The over-strand runs
// b -> d when d = b+1 or b > d+1 (wraparound), and d -> b otherwise. With
// x_e the generator of the Wirtinger arc containing edge e, each crossing
// contributes the relator
//     x_c = x_d      x_a x_d^-1    (over-strand d -> b)
//     x_c = x_d^-1   x_a x_d       (over-strand b -> d)
// and the last crossing's relator is dropped to reach deficiency one.

#include "polytor/expvec.hpp"
#include "polytor/matrix.hpp"
#include "polytor/word.hpp"

#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace polytor {

struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  // One generator index per link component, when the presentation came from
  // a diagram or braid.
  std::optional<std::vector<int>> meridian_indices;

  std::size_t num_generators() const { return generator_names.size(); }

  long deficiency() const {
    return static_cast<long>(num_generators()) - static_cast<long>(relators.size());
  }

  void validate() const {
    for (const auto& r : relators)
      for (const auto& l : r.letters())
        if (l.gen < 0 || l.gen >= static_cast<int>(num_generators()))
          throw ValidationError("relator references an unknown generator");
    if (meridian_indices)
      for (int m : *meridian_indices)
        if (m < 0 || m >= static_cast<int>(num_generators()))
          throw ValidationError("meridian index out of range");
  }

  Word parse(const std::string& text) const { return parse_word(text, generator_names); }
};

// --- Wirtinger presentations from planar diagram codes ----------------------

using PDCrossing = std::array<long, 4>;

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Empty PD = unknot, by convention the presentation <a | >.
inline Presentation wirtinger_from_pd(const std::vector<PDCrossing>& pd) {
  if (pd.empty()) {
    Presentation p;
    p.generator_names = {"a"};
    p.meridian_indices = std::vector<int>{0};
    return p;
  }

  std::size_t num_edges = 2 * pd.size();
  std::vector<int> seen(num_edges + 1, 0);
  for (const auto& x : pd)
    for (long e : x) {
      if (e < 1 || e > static_cast<long>(num_edges))
        throw ValidationError("PD edge label " + std::to_string(e) + " out of range 1.." +
                              std::to_string(num_edges));
      ++seen[static_cast<std::size_t>(e)];
    }
  for (std::size_t e = 1; e <= num_edges; ++e)
    if (seen[e] != 2)
      throw ValidationError("PD edge label " + std::to_string(e) +
                            " must occur exactly twice, occurs " + std::to_string(seen[e]) +
                            " times");

  // Edges b and d of a crossing belong to one Wirtinger arc.
  detail::UnionFind uf(num_edges + 1);
  for (const auto& x : pd) uf.unite(static_cast<std::size_t>(x[1]), static_cast<std::size_t>(x[3]));

  std::map<std::size_t, int> arc_of_root;
  std::vector<long> arc_min_edge;
  for (std::size_t e = 1; e <= num_edges; ++e) {
    std::size_t root = uf.find(e);
    if (!arc_of_root.count(root)) {
      arc_of_root[root] = static_cast<int>(arc_min_edge.size());
      arc_min_edge.push_back(static_cast<long>(e));
    }
  }
  auto arc = [&](long e) { return arc_of_root.at(uf.find(static_cast<std::size_t>(e))); };

  Presentation p;
  for (long e : arc_min_edge) p.generator_names.push_back("x" + std::to_string(e));

  // One relator per crossing, the last one dropped (it is redundant).
  for (std::size_t i = 0; i + 1 < pd.size(); ++i) {
    const auto& x = pd[i];
    long a = x[0], b = x[1], c = x[2], d = x[3];
    bool over_b_to_d = (d == b + 1) || (b > d + 1);
    int eps = over_b_to_d ? -1 : +1;
    // relator: x_c^-1 x_d^eps x_a x_d^-eps
    std::vector<Letter> w{Letter{arc(c), -1}, Letter{arc(d), eps}, Letter{arc(a), 1},
                          Letter{arc(d), -eps}};
    p.relators.emplace_back(std::move(w));
  }

  // One meridian per link component: components are cycles of the successor
  // relation succ(a) = c, succ(over-in) = over-out.
  std::vector<long> succ(num_edges + 1, 0);
  for (const auto& x : pd) {
    long a = x[0], b = x[1], c = x[2], d = x[3];
    succ[static_cast<std::size_t>(a)] = c;
    bool over_b_to_d = (d == b + 1) || (b > d + 1);
    if (over_b_to_d)
      succ[static_cast<std::size_t>(b)] = d;
    else
      succ[static_cast<std::size_t>(d)] = b;
  }
  std::vector<int> meridians;
  std::vector<bool> visited(num_edges + 1, false);
  for (std::size_t e = 1; e <= num_edges; ++e) {
    if (visited[e]) continue;
    meridians.push_back(arc(static_cast<long>(e)));
    long cur = static_cast<long>(e);
    while (!visited[static_cast<std::size_t>(cur)]) {
      visited[static_cast<std::size_t>(cur)] = true;
      cur = succ[static_cast<std::size_t>(cur)];
      if (cur < 1 || cur > static_cast<long>(num_edges))
        throw ValidationError("inconsistent PD code: broken edge succession");
    }
  }
  p.meridian_indices = meridians;
  p.validate();
  return p;
}

// --- Braid closures ---------------------------------------------------------

// Artin action of one braid letter on the free group F_strands:
//   sigma_i  : x_i -> x_i x_{i+1} x_i^-1,  x_{i+1} -> x_i
//   sigma_i^-1: x_i -> x_{i+1},            x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
inline Presentation presentation_from_braid(const std::vector<int>& braid_word, int strands) {
  if (strands < 2) throw ValidationError("braid needs at least 2 strands");
  for (int s : braid_word)
    if (s == 0 || std::abs(s) >= strands)
      throw ValidationError("braid letter " + std::to_string(s) + " out of range for " +
                            std::to_string(strands) + " strands");

  std::vector<Word> image;  // image of each strand generator under the braid
  for (int i = 0; i < strands; ++i) image.push_back(Word::generator(i));

  auto apply_letter = [&](int s) {
    int i = std::abs(s) - 1;
    Word xi = image[static_cast<std::size_t>(i)];
    Word xj = image[static_cast<std::size_t>(i + 1)];
    if (s > 0) {
      image[static_cast<std::size_t>(i)] = xi * xj * xi.inverse();
      image[static_cast<std::size_t>(i + 1)] = xi;
    } else {
      image[static_cast<std::size_t>(i)] = xj;
      image[static_cast<std::size_t>(i + 1)] = xj.inverse() * xi * xj;
    }
  };
  for (int s : braid_word) apply_letter(s);

  Presentation p;
  for (int i = 0; i < strands; ++i) p.generator_names.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i + 1 < strands; ++i)  // drop the last relator
    p.relators.push_back(image[static_cast<std::size_t>(i)] * Word::generator(i).inverse());

  // Components = cycles of the underlying permutation; the braid letter
  // sigma_i swaps strands i, i+1.
  std::vector<int> perm(static_cast<std::size_t>(strands));
  std::iota(perm.begin(), perm.end(), 0);
  for (int s : braid_word) {
    int i = std::abs(s) - 1;
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]);
  }
  std::vector<bool> visited(static_cast<std::size_t>(strands), false);
  std::vector<int> meridians;
  for (int i = 0; i < strands; ++i) {
    if (visited[static_cast<std::size_t>(i)]) continue;
    meridians.push_back(i);
    for (int j = i; !visited[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)])
      visited[static_cast<std::size_t>(j)] = true;
  }
  p.meridian_indices = meridians;
  p.validate();
  return p;
}

// --- Abelianization ---------------------------------------------------------

struct Abelianization {
  long rank = 0;                   // free rank n
  std::vector<BigInt> torsion;     // invariant factors > 1
  std::vector<ExpVec> phi_images;  // generator -> Z^rank, the default phi
};

namespace detail {

// Inverse of a unimodular integer matrix via rational Gauss-Jordan.
inline std::optional<Matrix<BigInt>> unimodular_inverse(const Matrix<BigInt>& b) {
  std::size_t n = b.rows();
  if (b.cols() != n) return std::nullopt;
  Matrix<Rational> a(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rational(b.at(i, j));
    a.at(i, n + i) = Rational(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
    Rational inv = Rational(1) / a.at(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) a.at(col, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col) == 0) continue;
      Rational f = a.at(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  Matrix<BigInt> out(n, n, BigInt(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (rat_den(a.at(i, n + j)) != 1) return std::nullopt;  // not unimodular
      out.at(i, j) = rat_num(a.at(i, n + j));
    }
  return out;
}

}  // namespace detail

// Smith normal form of the abelianized relator matrix. The free part gives
// the default surjection phi onto Z^rank; when the meridian images form a
// basis of Z^rank the basis is changed so each meridian maps to +e_c.
inline Abelianization abelianization(const Presentation& p) {
  std::size_t g = p.num_generators();
  std::size_t r = p.relators.size();
  Matrix<BigInt> m(g, r == 0 ? 1 : r, BigInt(0));  // columns = relators
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < g; ++j)
      m.at(j, i) = p.relators[i].exponent_sum(static_cast<int>(j));

  SmithForm s = smith_normal_form(m);
  long rank = static_cast<long>(g) - static_cast<long>(s.rank);
  if (rank == 0)
    throw ValidationError("no free abelianization; phi undefined");

  Abelianization out;
  out.rank = rank;
  for (const auto& d : s.invariant_factors)
    if (d > 1) out.torsion.push_back(d);

  // Free coordinates are the rows of U past the rank.
  out.phi_images.assign(g, ExpVec(static_cast<std::size_t>(rank), 0));
  for (std::size_t j = 0; j < g; ++j)
    for (long f = 0; f < rank; ++f)
      out.phi_images[j][static_cast<std::size_t>(f)] =
          static_cast<long>(s.U.at(s.rank + static_cast<std::size_t>(f), j));

  // Meridian-adapted basis when available.
  bool meridian_basis = false;
  if (p.meridian_indices &&
      static_cast<long>(p.meridian_indices->size()) == rank) {
    Matrix<BigInt> b(static_cast<std::size_t>(rank), static_cast<std::size_t>(rank), BigInt(0));
    for (long c = 0; c < rank; ++c) {
      int gen = (*p.meridian_indices)[static_cast<std::size_t>(c)];
      for (long f = 0; f < rank; ++f)
        b.at(static_cast<std::size_t>(f), static_cast<std::size_t>(c)) =
            out.phi_images[static_cast<std::size_t>(gen)][static_cast<std::size_t>(f)];
    }
    if (auto binv = detail::unimodular_inverse(b)) {
      for (auto& img : out.phi_images) {
        ExpVec rotated(static_cast<std::size_t>(rank), 0);
        for (long i = 0; i < rank; ++i)
          for (long k = 0; k < rank; ++k)
            rotated[static_cast<std::size_t>(i)] +=
                static_cast<long>(binv->at(static_cast<std::size_t>(i), static_cast<std::size_t>(k))) *
                img[static_cast<std::size_t>(k)];
        img = rotated;
      }
      meridian_basis = true;
    }
  }

  // Otherwise fix signs: the first generator hitting a coordinate maps
  // positively.
  if (!meridian_basis) {
    for (long f = 0; f < rank; ++f) {
      for (std::size_t j = 0; j < g; ++j) {
        long v = out.phi_images[j][static_cast<std::size_t>(f)];
        if (v == 0) continue;
        if (v < 0)
          for (std::size_t jj = 0; jj < g; ++jj)
            out.phi_images[jj][static_cast<std::size_t>(f)] =
                -out.phi_images[jj][static_cast<std::size_t>(f)];
        break;
      }
    }
  }
  return out;
}

inline ExpVec phi_of_word(const std::vector<ExpVec>& images, const Word& w, long rank) {
  ExpVec v(static_cast<std::size_t>(rank), 0);
  for (const auto& l : w.letters()) {
    const ExpVec& img = images[static_cast<std::size_t>(l.gen)];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += l.sign * img[i];
  }
  return v;
}

}  // namespace polytor
