#include "agreetensor/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace agreetensor {

namespace {

Cell cell_at(int n, int flat) { return Cell{flat / (n * n) + 1, (flat / n) % n + 1, flat % n + 1}; }

// Visits every nondecreasing index vector of the given size over [0, items).
template <class F>
void for_each_multiset(int items, int size, F&& visit) {
  std::vector<int> idx(size, 0);
  if (size == 0) {
    visit(idx);
    return;
  }
  if (items <= 0) return;
  while (true) {
    visit(idx);
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == items - 1) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int s = pos + 1; s < size; ++s) idx[s] = idx[pos];
  }
}

long double binomial(long double n, int k) {
  long double r = 1;
  for (int s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

void check_budget(long double count, std::uint64_t budget, const std::string& what) {
  if (count > static_cast<long double>(budget)) {
    throw Error(ErrorCode::BudgetExceeded,
                what + " needs about " + std::to_string(static_cast<unsigned long long>(count)) +
                    " items, budget is " + std::to_string(budget));
  }
}

// Parameter-exponent image of a monomial under the toric parameterizations. Layout:
// a counts, b counts, c counts, then the family's agreement exponents.
class ToricKey {
 public:
  ToricKey(Family family, int n) : family_(family), n_(n) {
    std::size_t extra = 0;
    switch (family) {
      case Family::QI: extra = static_cast<std::size_t>(n); break;
      case Family::qI: extra = 1; break;
      case Family::pQI: extra = 3; break;
      default: throw Error(ErrorCode::Unsupported, std::string("no toric image for ") + to_string(family));
    }
    width_ = 3 * static_cast<std::size_t>(n) + extra;
  }

  std::size_t width() const { return width_; }

  void add(std::vector<int>& key, Cell c, int e) const {
    key[c.i - 1] += e;
    key[n_ + c.j - 1] += e;
    key[2 * n_ + c.k - 1] += e;
    const std::size_t base = 3 * static_cast<std::size_t>(n_);
    switch (family_) {
      case Family::QI:
        if (c.is_diagonal()) key[base + c.i - 1] += e;
        break;
      case Family::qI:
        if (c.is_diagonal()) key[base] += e;
        break;
      default:
        switch (cell_class(c)) {
          case CellClass::AllEqual:
            key[base] += e;
            key[base + 1] += e;
            key[base + 2] += e;
            break;
          case CellClass::Eq12: key[base] += e; break;
          case CellClass::Eq13: key[base + 1] += e; break;
          case CellClass::Eq23: key[base + 2] += e; break;
          case CellClass::AllDistinct: break;
        }
    }
  }

  std::string of(const Monomial& m) const {
    std::vector<int> key(width_, 0);
    for (const auto& [c, e] : m.factors()) add(key, c, static_cast<int>(e));
    return pack(key);
  }

  static std::string pack(const std::vector<int>& key) {
    std::string s(key.size() * sizeof(int), '\0');
    std::memcpy(s.data(), key.data(), s.size());
    return s;
  }

 private:
  Family family_;
  int n_;
  std::size_t width_;
};

std::vector<int> off_diagonal_flats(int n) {
  std::vector<int> out;
  for (int f = 0; f < n * n * n; ++f) {
    if (!cell_at(n, f).is_diagonal()) out.push_back(f);
  }
  return out;
}

Monomial monomial_of(int n, const std::vector<int>& flats) {
  std::vector<Cell> cells;
  cells.reserve(flats.size());
  for (int f : flats) cells.push_back(cell_at(n, f));
  return Monomial::from_cells(std::move(cells));
}

Monomial diag(int h) { return Monomial::from_cells({Cell{h, h, h}}); }

std::vector<GeneratedInvariant> finish(std::vector<GeneratedInvariant> out) {
  for (auto& g : out) g.poly = g.poly.sign_normalized();
  std::erase_if(out, [](const GeneratedInvariant& g) { return g.poly.is_zero(); });
  std::stable_sort(out.begin(), out.end(),
                   [](const GeneratedInvariant& x, const GeneratedInvariant& y) { return x.poly < y.poly; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const GeneratedInvariant& x, const GeneratedInvariant& y) { return x.poly == y.poly; }),
            out.end());
  return out;
}

std::vector<SparsePolynomial> strip(const std::vector<GeneratedInvariant>& labeled) {
  std::vector<SparsePolynomial> out;
  out.reserve(labeled.size());
  for (const auto& g : labeled) out.push_back(g.poly);
  return out;
}

void check_generator_n(int n) {
  if (n < 2 || n > 5) throw Error(ErrorCode::Unsupported, "generators support 2 <= n <= 5");
}

// ---- symbolic mixture cone ----

using ConeImage = std::unordered_map<std::string, std::int64_t>;

std::int64_t choose(unsigned n, unsigned k) {
  std::int64_t r = 1;
  for (unsigned s = 1; s <= k; ++s) r = r * (n - k + s) / s;
  return r;
}

// Expansion of a monomial with P_ijk = u a_i b_j c_k + v [i=j=k]. Keys hold the v
// exponent and the a, b, c counts; the u exponent is the degree minus the v exponent.
void add_cone_image(ConeImage& image, const Monomial& m, std::int64_t coeff, int n) {
  std::map<std::vector<int>, std::int64_t> terms;
  terms[std::vector<int>(1 + 3 * static_cast<std::size_t>(n), 0)] = coeff;
  for (const auto& [c, e] : m.factors()) {
    std::map<std::vector<int>, std::int64_t> next;
    for (const auto& [key, value] : terms) {
      if (!c.is_diagonal()) {
        auto k2 = key;
        k2[c.i] += static_cast<int>(e);
        k2[n + c.j] += static_cast<int>(e);
        k2[2 * n + c.k] += static_cast<int>(e);
        next[k2] += value;
        continue;
      }
      for (unsigned r = 0; r <= e; ++r) {
        auto k2 = key;
        const int u = static_cast<int>(e - r);
        k2[0] += static_cast<int>(r);
        k2[c.i] += u;
        k2[n + c.j] += u;
        k2[2 * n + c.k] += u;
        next[k2] += value * choose(e, r);
      }
    }
    terms = std::move(next);
  }
  for (const auto& [key, value] : terms) image[ToricKey::pack(key)] += value;
}

bool all_zero(const ConeImage& image) {
  return std::all_of(image.begin(), image.end(), [](const auto& kv) { return kv.second == 0; });
}

// ---- coupled index rearrangements ----

using Rows = std::vector<Cell>;

int diagonal_rows(const Rows& rows) {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const Cell& c) { return c.is_diagonal(); }));
}

// Applies one sigma = (id, s2, s3) to both row lists and keeps the pairs where each image
// lies in its Sigma'-set. Fixing the first permutation loses nothing since row order is
// quotiented out.
std::set<std::pair<Rows, Rows>> coupled_images(const Rows& a1, const Rows& a2) {
  const std::size_t t = a1.size();
  Rows s1 = a1, s2 = a2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  const int rho1 = diagonal_rows(a1), rho2 = diagonal_rows(a2);
  std::set<std::pair<Rows, Rows>> out;
  std::vector<std::size_t> p2(t), p3(t);
  std::iota(p2.begin(), p2.end(), 0);
  do {
    std::iota(p3.begin(), p3.end(), 0);
    do {
      Rows u1(t), u2(t);
      for (std::size_t r = 0; r < t; ++r) {
        u1[r] = Cell{a1[r].i, a1[p2[r]].j, a1[p3[r]].k};
        u2[r] = Cell{a2[r].i, a2[p2[r]].j, a2[p3[r]].k};
      }
      std::sort(u1.begin(), u1.end());
      std::sort(u2.begin(), u2.end());
      if (u1 == s1 || u2 == s2) continue;
      if (diagonal_rows(u1) > rho1 || diagonal_rows(u2) > rho2) continue;
      out.emplace(std::move(u1), std::move(u2));
    } while (std::next_permutation(p3.begin(), p3.end()));
  } while (std::next_permutation(p2.begin(), p2.end()));
  return out;
}

std::vector<Monomial> sigma_monomials(const Monomial& m, SigmaVariant v) {
  std::vector<Monomial> out;
  for (const auto& a : sigma_set(monomial_matrix(m), v)) out.push_back(a.to_monomial());
  return out;
}

SparsePolynomial term(std::int64_t c, const Monomial& m) { return SparsePolynomial({Term{c, m}}); }

// ---- n = 2 lists ----

std::vector<SparsePolynomial> parse_compact(std::initializer_list<const char*> lines) {
  static const std::regex var("P([0-9])([0-9])([0-9])");
  std::vector<SparsePolynomial> out;
  for (const char* line : lines) {
    out.push_back(SparsePolynomial::parse(std::regex_replace(line, var, "P[$1,$2,$3]")));
  }
  return out;
}

std::vector<SparsePolynomial> qi2_quadrics() {
  return parse_compact({"P121*P212 - P112*P221", "P122*P211 - P121*P212"});
}

std::vector<SparsePolynomial> qi_common2() {
  auto out = qi2_quadrics();
  auto more = parse_compact({
      "P111*P212*P221^2 - P121*P211^2*P222",
      "P111*P122*P221^2 - P121^2*P211*P222",
      "P111*P212^2*P221 - P112*P211^2*P222",
      "P111*P122^2*P221 - P112*P121^2*P222",
      "P111*P122*P212^2 - P112^2*P211*P222",
      "P111*P122^2*P212 - P112^2*P121*P222",
      "P111*P112*P221^3 - P121^2*P211^2*P222",
      "P111*P122*P212*P221 - P112*P121*P211*P222",
  });
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<SparsePolynomial> mix_uniform2() {
  auto out = qi2_quadrics();
  auto more = parse_compact({
      "P121*P211^2 - P111*P211*P221 - P212*P221^2 + P211*P221*P222",
      "P112*P211^2 - P111*P211*P212 - P212^2*P221 + P211*P212*P222",
      "P121^2*P211 - P111*P121*P221 - P122*P221^2 + P121*P221*P222",
      "P112*P121*P211 - P111*P112*P221 - P122*P212*P221 + P112*P221*P222",
      "P112^2*P211 - P111*P112*P212 - P122*P212^2 + P112*P212*P222",
      "P112*P121^2 - P111*P121*P122 - P122^2*P221 + P121*P122*P222",
      "P112^2*P121 - P111*P112*P122 - P122^2*P212 + P112*P122*P222",
      "P111*P112*P122*P212 + P122^2*P212^2 - P112^3*P221 - P112*P122*P212*P222",
  });
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// Degree-2 and degree-3 binomials reached from an off-diagonal monomial by at most
// degree - 1 single-index exchanges between two factors, never passing through a
// diagonal cell.
std::vector<SparsePolynomial> exchange_binomials(int n) {
  const auto offd = off_diagonal_flats(n);
  std::vector<SparsePolynomial> out;
  for (int degree = 2; degree <= 3; ++degree) {
    for_each_multiset(static_cast<int>(offd.size()), degree, [&](const std::vector<int>& idx) {
      Rows start;
      for (int x : idx) start.push_back(cell_at(n, offd[x]));
      std::set<Rows> seen{start};
      std::vector<Rows> frontier{start};
      for (int step = 0; step < degree - 1; ++step) {
        std::vector<Rows> next;
        for (const Rows& rows : frontier) {
          for (int p = 0; p < degree; ++p) {
            for (int q = p + 1; q < degree; ++q) {
              for (int axis = 1; axis <= 3; ++axis) {
                Rows r = rows;
                if (axis == 1) std::swap(r[p].i, r[q].i);
                if (axis == 2) std::swap(r[p].j, r[q].j);
                if (axis == 3) std::swap(r[p].k, r[q].k);
                if (r[p].is_diagonal() || r[q].is_diagonal()) continue;
                std::sort(r.begin(), r.end());
                if (seen.insert(r).second) next.push_back(r);
              }
            }
          }
        }
        frontier = std::move(next);
      }
      const Monomial m = Monomial::from_cells(start);
      for (const Rows& r : seen) {
        if (r == start) continue;
        out.push_back(SparsePolynomial::binomial(m, Monomial::from_cells(r)));
      }
    });
  }
  return canonical_list(std::move(out));
}

}  // namespace

std::vector<SparsePolynomial> canonical_list(std::vector<SparsePolynomial> polys) {
  for (auto& p : polys) p = p.sign_normalized();
  std::erase_if(polys, [](const SparsePolynomial& p) { return p.is_zero(); });
  std::sort(polys.begin(), polys.end());
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  return polys;
}

std::vector<MonomialMatrix> sigma_set(const MonomialMatrix& a, SigmaVariant variant) {
  const std::size_t t = a.rows.size();
  if (t > 8) throw Error(ErrorCode::DegreeTooLarge, "sigma_set supports at most 8 rows");
  Rows sorted = a.rows;
  std::sort(sorted.begin(), sorted.end());
  const int rho_a = rho(a);
  std::map<int, int> col2, col3;
  for (const Cell& c : sorted) {
    ++col2[c.j];
    ++col3[c.k];
  }
  std::vector<MonomialMatrix> out;
  Rows current(t);
  auto recurse = [&](auto&& self, std::size_t r) -> void {
    if (r == t) {
      if (current == sorted) return;
      const int rh = diagonal_rows(current);
      if (variant == SigmaVariant::Preserve ? rh != rho_a : rh > rho_a) return;
      out.push_back(MonomialMatrix{current});
      return;
    }
    for (auto& [j, cj] : col2) {
      if (cj == 0) continue;
      for (auto& [k, ck] : col3) {
        if (ck == 0) continue;
        const Cell c{sorted[r].i, j, k};
        if (r > 0 && current[r - 1].i == c.i && c < current[r - 1]) continue;
        --cj;
        --ck;
        current[r] = c;
        self(self, r + 1);
        ++cj;
        ++ck;
      }
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SparsePolynomial> catalog(Family family, int n) {
  if (n < 2) throw Error(ErrorCode::Unsupported, "catalogs need n >= 2");
  if (n == 2) {
    switch (family) {
      case Family::QI:
      case Family::Mix: return qi2_quadrics();
      case Family::qI: return qi_common2();
      case Family::mix: return mix_uniform2();
      case Family::pQI: return parse_compact({"P111*P122*P212*P221 - P112*P121*P211*P222"});
      case Family::pMix: return {};
    }
  }
  if (family == Family::QI || family == Family::Mix) return exchange_binomials(n);
  throw Error(ErrorCode::Unsupported,
              std::string("no catalog for ") + to_string(family) + " with n=" + std::to_string(n));
}

std::vector<GeneratedInvariant> generate_qin_labeled(int n, const GeneratorOptions& options) {
  check_generator_n(n);
  const int max_degree = options.max_degree > 0 ? std::min(options.max_degree, 5) : 5;
  const auto offd = off_diagonal_flats(n);
  const ToricKey keyer(Family::qI, n);
  std::vector<GeneratedInvariant> out;

  struct Member {
    int diagonal;  // 0 when the monomial has no diagonal factor
    std::vector<int> flats;
  };

  for (int degree = 2; degree <= max_degree; ++degree) {
    // (i) and (iii) have no diagonal factor; (ii), (iv), (v) exactly one.
    for (int with_diag = 0; with_diag <= 1; ++with_diag) {
      const char* label = nullptr;
      if (!with_diag && degree == 2) label = "i";
      if (!with_diag && degree == 3) label = "iii";
      if (with_diag && degree == 3) label = "ii";
      if (with_diag && degree == 4) label = "iv";
      if (with_diag && degree == 5) label = "v";
      if (!label) continue;
      const int off = degree - with_diag;
      check_budget((with_diag ? n : 1) * binomial(static_cast<long double>(offd.size()) + off - 1, off),
                   options.budget, std::string("qI family (") + label + ")");
      std::unordered_map<std::string, std::vector<Member>> fibers;
      for (int h = with_diag ? 1 : 0; h <= (with_diag ? n : 0); ++h) {
        for_each_multiset(static_cast<int>(offd.size()), off, [&](const std::vector<int>& idx) {
          std::vector<int> key(keyer.width(), 0);
          Member m{h, {}};
          if (h) {
            m.flats.push_back(static_cast<int>(flat_index(n, Cell{h, h, h})));
            keyer.add(key, Cell{h, h, h}, 1);
          }
          for (int x : idx) {
            m.flats.push_back(offd[x]);
            keyer.add(key, cell_at(n, offd[x]), 1);
          }
          fibers[ToricKey::pack(key)].push_back(std::move(m));
        });
      }
      long double pairs = 0;
      for (const auto& [key, members] : fibers) pairs += 0.5L * members.size() * (members.size() - 1);
      check_budget(pairs, options.budget, std::string("qI family (") + label + ") pairs");
      for (const auto& [key, members] : fibers) {
        for (std::size_t x = 0; x < members.size(); ++x) {
          for (std::size_t y = x + 1; y < members.size(); ++y) {
            if (with_diag && members[x].diagonal == members[y].diagonal) continue;
            out.push_back({label, SparsePolynomial::binomial(monomial_of(n, members[x].flats),
                                                             monomial_of(n, members[y].flats))});
          }
        }
      }
    }
  }
  return finish(std::move(out));
}

std::vector<SparsePolynomial> generate_qin_invariants(int n, const GeneratorOptions& options) {
  return strip(generate_qin_labeled(n, options));
}

std::vector<GeneratedInvariant> generate_mixn_labeled(int n, const GeneratorOptions& options) {
  check_generator_n(n);
  const int max_degree = options.max_degree > 0 ? std::min(options.max_degree, 4) : 4;
  std::vector<GeneratedInvariant> out;
  std::size_t candidates = 0;
  auto consider = [&](const char* label, const SparsePolynomial& p) {
    if (++candidates > options.budget) {
      throw Error(ErrorCode::BudgetExceeded, "mix generator exceeded its candidate budget");
    }
    if (!p.is_zero() && mixture_cone_vanishes(p)) out.push_back({label, p});
  };

  // (i), (iii): Sigma' of an off-diagonal monomial keeps rho = 0, which is the qI fiber.
  GeneratorOptions binomial_options = options;
  binomial_options.max_degree = std::min(max_degree, 3);
  for (auto& g : generate_qin_labeled(n, binomial_options)) {
    if (g.family == "i" || g.family == "iii") out.push_back(std::move(g));
  }

  // (ii), (iv), (vii): P_iii X - P_jjj X - U(P_iii X) + U(P_jjj X). The first pass only
  // counts candidates so an oversized request fails before any symbolic work.
  const auto offd = off_diagonal_flats(n);
  auto slab_shapes = [&](bool emit) {
  long double pending = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::vector<int> eligible;
      for (int f : offd) {
        const Cell c = cell_at(n, f);
        const int outside = (c.i != i && c.i != j) + (c.j != i && c.j != j) + (c.k != i && c.k != j);
        if (n == 2 || outside >= 2) eligible.push_back(f);
      }
      for (int size = 1; size + 1 <= max_degree; ++size) {
        const char* label = size == 1 ? "ii" : (size == 2 ? "iv" : "vii");
        for_each_multiset(static_cast<int>(eligible.size()), size, [&](const std::vector<int>& idx) {
          if (size == 2 && idx[0] == idx[1]) return;
          if (size == 3 && idx[0] == idx[2]) return;
          Rows x;
          for (int s : idx) x.push_back(cell_at(n, eligible[s]));
          Rows a1{Cell{i, i, i}}, a2{Cell{j, j, j}};
          a1.insert(a1.end(), x.begin(), x.end());
          a2.insert(a2.end(), x.begin(), x.end());
          const Monomial mi = Monomial::from_cells(a1), mj = Monomial::from_cells(a2);
          // the v-parts of the two underlined terms can only cancel at equal rho
          const auto s1 = sigma_set(MonomialMatrix{a1}, SigmaVariant::NonIncrease);
          const auto s2 = sigma_set(MonomialMatrix{a2}, SigmaVariant::NonIncrease);
          if (!emit) {
            std::map<int, long double> r1, r2;
            for (const auto& u : s1) r1[rho(u)] += 1;
            for (const auto& u : s2) r2[rho(u)] += 1;
            for (const auto& [r, c] : r1) pending += c * r2[r];
            check_budget(pending, options.budget, "mix shapes (ii), (iv), (vii)");
            return;
          }
          for (const auto& u1 : s1) {
            for (const auto& u2 : s2) {
              if (rho(u1) != rho(u2)) continue;
              consider(label, SparsePolynomial({Term{1, mi}, Term{-1, mj}, Term{-1, u1.to_monomial()},
                                                Term{1, u2.to_monomial()}}));
            }
          }
        });
      }
    }
  }
  return pending;
  };
  check_budget(slab_shapes(false), options.budget, "mix shapes (ii), (iv), (vii)");
  slab_shapes(true);

  if (n >= 3 && max_degree >= 3) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
          if (i == j || j == k || i == k) continue;
          const Monomial pi = diag(i), pj = diag(j), pk = diag(k);

          // (vi)
          const auto uij = sigma_monomials(pi * pj, SigmaVariant::NonIncrease);
          const auto uik = sigma_monomials(pi * pk, SigmaVariant::NonIncrease);
          const auto ujk = sigma_monomials(pj * pk, SigmaVariant::NonIncrease);
          const SparsePolynomial base6({Term{1, pi * pj * pj}, Term{-1, pi * pi * pj}, Term{1, pi * pi * pk},
                                        Term{-1, pi * pk * pk}, Term{1, pj * pk * pk}, Term{-1, pj * pj * pk}});
          for (const auto& u1 : uij) {
            for (const auto& u2 : uik) {
              for (const auto& u3 : ujk) {
                consider("vi", base6 + term(1, pi * u1) - term(1, pj * u1) + term(1, pk * u2) -
                                   term(1, pi * u2) + term(1, pj * u3) - term(1, pk * u3));
              }
            }
          }

          // (v)
          for (int f : offd) {
            const Cell q = cell_at(n, f);
            if (q.i == j || q.j == j || q.k == j) continue;
            const Monomial pq = Monomial::from_cells({q});
            const SparsePolynomial base5({Term{1, pi * pj * pq}, Term{-1, pi * pk * pq}, Term{1, pj * pk * pq},
                                          Term{-1, pj * pj * pq}});
            const auto ua = sigma_monomials(pj * pq, SigmaVariant::NonIncrease);
            const auto coupled = coupled_images({Cell{i, i, i}, Cell{k, k, k}, q}, {Cell{j, j, j}, Cell{k, k, k}, q});
            for (const auto& u : ua) {
              for (const auto& [ub, uc] : coupled) {
                consider("v", base5 + term(1, pj * u) - term(1, pi * u) + term(1, Monomial::from_cells(ub)) -
                                  term(1, Monomial::from_cells(uc)));
              }
            }
          }
        }
      }
    }
  }
  return finish(std::move(out));
}

std::vector<SparsePolynomial> generate_mixn_invariants(int n, const GeneratorOptions& options) {
  return strip(generate_mixn_labeled(n, options));
}

bool mixture_cone_vanishes(const SparsePolynomial& poly) {
  const int n = std::max(poly.max_index(), 1);
  ConeImage image;
  for (const auto& t : poly.terms()) add_cone_image(image, t.monomial, t.coefficient, n);
  return all_zero(image);
}

bool toric_vanishes(Family family, const SparsePolynomial& poly) {
  const int n = std::max(poly.max_index(), 1);
  const ToricKey keyer(family, n);
  std::unordered_map<std::string, std::int64_t> image;
  for (const auto& t : poly.terms()) image[keyer.of(t.monomial)] += t.coefficient;
  return std::all_of(image.begin(), image.end(), [](const auto& kv) { return kv.second == 0; });
}

namespace {

void require_hypothesis(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::HypothesisViolated, what);
}

void require_binary(const Monomial& m, int n) {
  require_hypothesis(n == 2, "the occurrence-matrix criterion is stated for n = 2");
  require_hypothesis(!m.is_constant(), "monomials must be nonconstant");
  require_hypothesis(m.max_index() <= 2, "monomial index above 2");
}

}  // namespace

bool matrix_criterion(const Monomial& f, const Monomial& g, int n) {
  require_binary(f, n);
  require_binary(g, n);
  const Cell p111{1, 1, 1}, p222{2, 2, 2};
  require_hypothesis(f.coprime(g), "f and g must be coprime");
  require_hypothesis(f.exponent(p111) == g.exponent(p222), "deg P111 in f must equal deg P222 in g");
  require_hypothesis(f.exponent(p222) == g.exponent(p111), "deg P222 in f must equal deg P111 in g");
  return occurrence_matrix(f, n) == occurrence_matrix(g, n);
}

bool matrix_criterion(const Monomial& f, const Monomial& g, const Monomial& h, const Monomial& w, int n) {
  for (const Monomial* m : {&f, &g, &h, &w}) require_binary(*m, n);
  const Cell p111{1, 1, 1}, p222{2, 2, 2};
  require_hypothesis(h.exponent(p111) == 0 && h.exponent(p222) == 0, "h must avoid P111 and P222");
  require_hypothesis(w.exponent(p111) == 0 && w.exponent(p222) == 0, "w must avoid P111 and P222");
  require_hypothesis(f.exponent(p111) == 1 && g.exponent(p222) == 1, "f needs P111 and g needs P222 once");
  require_hypothesis(f.exponent(p222) == 0 && g.exponent(p111) == 0, "f must avoid P222 and g must avoid P111");
  require_hypothesis(f.divided_by(diag(1)) == g.divided_by(diag(2)), "f and g must agree apart from P111, P222");
  require_hypothesis(f.coprime(h), "f and h must be coprime");
  require_hypothesis(g.coprime(w), "g and w must be coprime");
  const auto F = occurrence_matrix(f, n), G = occurrence_matrix(g, n);
  const auto H = occurrence_matrix(h, n), W = occurrence_matrix(w, n);
  return (H == F && W == G) || (H == G && W == F);
}

namespace {

template <class Visit>
void for_each_fiber_member(Family family, int n, int degree, std::uint64_t budget, Visit&& visit) {
  if (family != Family::QI && family != Family::qI && family != Family::pQI) {
    throw Error(ErrorCode::Unsupported, "fiber counts are defined for QI, qI and pQI");
  }
  if (n < 2) throw Error(ErrorCode::InvalidParams, "n must be at least 2");
  if (degree < 1) throw Error(ErrorCode::InvalidParams, "degree must be positive");
  const int cells = n * n * n;
  check_budget(binomial(cells + degree - 1, degree), budget, "degree-" + std::to_string(degree) + " monomials");
  const ToricKey keyer(family, n);
  std::vector<int> key(keyer.width());
  for_each_multiset(cells, degree, [&](const std::vector<int>& idx) {
    std::fill(key.begin(), key.end(), 0);
    for (int f : idx) keyer.add(key, cell_at(n, f), 1);
    visit(ToricKey::pack(key), idx);
  });
}

}  // namespace

std::uint64_t fiber_dimension(Family family, int n, int degree, std::uint64_t budget) {
  std::unordered_set<std::string> images;
  std::uint64_t monomials = 0;
  for_each_fiber_member(family, n, degree, budget, [&](std::string key, const std::vector<int>&) {
    ++monomials;
    images.insert(std::move(key));
  });
  return monomials - images.size();
}

std::vector<SparsePolynomial> toric_binomials(Family family, int n, int degree, std::uint64_t budget) {
  std::unordered_map<std::string, std::vector<int>> first;
  std::vector<SparsePolynomial> out;
  for_each_fiber_member(family, n, degree, budget, [&](std::string key, const std::vector<int>& idx) {
    auto [it, inserted] = first.try_emplace(std::move(key), idx);
    if (!inserted) out.push_back(SparsePolynomial::binomial(monomial_of(n, it->second), monomial_of(n, idx)));
  });
  return canonical_list(std::move(out));
}

}  // namespace agreetensor
