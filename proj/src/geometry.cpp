#include "agreetensor/geometry.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>

namespace agreetensor {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

}  // namespace

const char* to_string(LinearVariety v) {
  switch (v) {
    case LinearVariety::H: return "H";
    case LinearVariety::Hhat: return "Hhat";
    case LinearVariety::Htilde: return "Htilde";
    case LinearVariety::Diag: return "Diag";
  }
  return "?";
}

LinearVariety parse_linear_variety(std::string_view text) {
  for (auto v : {LinearVariety::H, LinearVariety::Hhat, LinearVariety::Htilde, LinearVariety::Diag}) {
    if (iequals(text, to_string(v))) return v;
  }
  throw Error(ErrorCode::Parse, "unknown linear variety '" + std::string(text) +
                                    "' (expected H, Hhat, Htilde or Diag)");
}

std::vector<LinearEquation> variety_equations(LinearVariety id, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  std::vector<LinearEquation> out;
  const auto cells = all_cells(n);
  if (id == LinearVariety::Diag) {
    for (const Cell& c : cells) {
      if (!c.is_diagonal()) out.push_back({c, std::nullopt});
    }
    return out;
  }
  if (id == LinearVariety::Htilde) {
    std::array<std::optional<Cell>, 5> first;
    for (const Cell& c : cells) {
      auto& f = first[static_cast<std::size_t>(cell_class(c))];
      if (f) {
        out.push_back({c, *f});
      } else {
        f = c;
      }
    }
    return out;
  }
  const Cell anchor{1, 1, 2};
  for (const Cell& c : cells) {
    if (!c.is_diagonal() && c != anchor) out.push_back({c, anchor});
  }
  if (id == LinearVariety::Hhat) {
    for (int i = 2; i <= n; ++i) out.push_back({Cell{i, i, i}, Cell{1, 1, 1}});
  }
  return out;
}

namespace detail {

std::vector<std::vector<long>> left_kernel_basis(const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  if (r == 0) return {};
  const std::size_t c = rows.front().size();
  // a = M^T, reduced in place
  std::vector<std::vector<Rational>> a(c, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a[j][i] = rows[i][j];
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < r && rank < c; ++col) {
    std::size_t pr = rank;
    while (pr < c && sgn(a[pr][col]) == 0) ++pr;
    if (pr == c) continue;
    std::swap(a[pr], a[rank]);
    const Rational inv = 1 / a[rank][col];
    for (auto& x : a[rank]) x *= inv;
    for (std::size_t other = 0; other < c; ++other) {
      if (other == rank || sgn(a[other][col]) == 0) continue;
      const Rational f = a[other][col];
      for (std::size_t k = col; k < r; ++k) a[other][k] -= f * a[rank][k];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(r, false);
  for (auto p : pivot_cols) is_pivot[p] = true;
  std::vector<std::vector<long>> basis;
  for (std::size_t f = 0; f < r; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> u(r, Rational(0));
    u[f] = 1;
    for (std::size_t row = 0; row < rank; ++row) u[pivot_cols[row]] = -a[row][f];
    mpz_class l = 1;
    for (const auto& x : u) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<long> v;
    for (const auto& x : u) {
      const Rational scaled = x * l;
      v.push_back(scaled.get_num().get_si());
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool toric_support(Family family, int n, const std::vector<bool>& nonzero,
                   std::vector<Cell>& cells, std::vector<std::vector<int>>& design) {
  std::vector<bool> sa(n, false), sb(n, false), sc(n, false);
  const auto all = all_cells(n);
  for (const Cell& c : all) {
    if (!nonzero[flat_index(n, c)]) continue;
    sa[c.i - 1] = sb[c.j - 1] = sc[c.k - 1] = true;
  }
  // per class: 0 = no cell in the box, 1 = all zero, 2 = all nonzero, 3 = mixed
  std::array<int, 5> state{};
  for (const Cell& c : all) {
    if (!(sa[c.i - 1] && sb[c.j - 1] && sc[c.k - 1])) continue;
    int& s = state[static_cast<std::size_t>(cell_class(c))];
    const int here = nonzero[flat_index(n, c)] ? 2 : 1;
    s = (s == 0 || s == here) ? here : 3;
  }
  const int diag = state[static_cast<std::size_t>(CellClass::AllEqual)];
  const int e12 = state[static_cast<std::size_t>(CellClass::Eq12)];
  const int e13 = state[static_cast<std::size_t>(CellClass::Eq13)];
  const int e23 = state[static_cast<std::size_t>(CellClass::Eq23)];
  const int distinct = state[static_cast<std::size_t>(CellClass::AllDistinct)];
  auto positive = [](int s) { return s == 0 || s == 2; };
  switch (family) {
    case Family::QI:
      if (!positive(e12) || !positive(e13) || !positive(e23) || !positive(distinct)) return false;
      break;
    case Family::qI:
      if (!positive(e12) || !positive(e13) || !positive(e23) || !positive(distinct)) return false;
      if (diag == 3) return false;
      break;
    case Family::pQI: {
      if (!positive(distinct)) return false;
      for (int s : {e12, e13, e23, diag}) {
        if (s == 3) return false;
      }
      const bool some_gamma_zero = e12 != 2 || e13 != 2 || e23 != 2;
      if (diag == 2 && (e12 == 1 || e13 == 1 || e23 == 1)) return false;
      if (diag == 1 && !some_gamma_zero) return false;
      break;
    }
    default:
      throw Error(ErrorCode::Unsupported, "not a quasi-independence family");
  }
  const int extra = family == Family::QI ? n : (family == Family::qI ? 1 : 3);
  for (const Cell& c : all) {
    if (!nonzero[flat_index(n, c)]) continue;
    std::vector<int> row(static_cast<std::size_t>(3 * n + extra), 0);
    row[c.i - 1] = 1;
    row[n + c.j - 1] = 1;
    row[2 * n + c.k - 1] = 1;
    const CellClass cls = cell_class(c);
    if (family == Family::QI) {
      if (cls == CellClass::AllEqual) row[3 * n + c.i - 1] = 1;
    } else if (family == Family::qI) {
      if (cls == CellClass::AllEqual) row[3 * n] = 1;
    } else {
      const bool d = cls == CellClass::AllEqual;
      if (d || cls == CellClass::Eq12) row[3 * n] = 1;
      if (d || cls == CellClass::Eq13) row[3 * n + 1] = 1;
      if (d || cls == CellClass::Eq23) row[3 * n + 2] = 1;
    }
    cells.push_back(c);
    design.push_back(std::move(row));
  }
  return true;
}

}  // namespace detail

const char* to_string(Direction d) {
  return d == Direction::MixNotInQI ? "MixNotInQI" : "QINotInMix";
}

Direction parse_direction(std::string_view text) {
  for (auto d : {Direction::MixNotInQI, Direction::QINotInMix}) {
    if (iequals(text, to_string(d))) return d;
  }
  if (iequals(text, "mix-not-in-qi")) return Direction::MixNotInQI;
  if (iequals(text, "qi-not-in-mix")) return Direction::QINotInMix;
  throw Error(ErrorCode::Parse, "unknown direction '" + std::string(text) +
                                    "' (expected MixNotInQI or QINotInMix)");
}

Counterexample boundary_counterexample(Direction direction, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  const std::vector<Rational> ones(n, Rational(1));
  Counterexample out{direction, ExactTensor{}, {}};
  if (direction == Direction::MixNotInQI) {
    const Rational d(1, n);
    MixParams<Rational> m{std::vector<Rational>(n, d), std::vector<Rational>(n, d),
                          std::vector<Rational>(n, d), std::vector<Rational>(n, d), Rational(0)};
    out.tensor = materialize(ModelParams<Rational>(m));
    const std::string v = to_string(d);
    out.witness = {
        "P[1,1,1] = " + v + " => zeta*gamma_1*a_1*b_1*c_1 != 0, so a_1 != 0 and b_1 != 0",
        "P[2,2,2] = " + v + " => zeta*gamma_2*a_2*b_2*c_2 != 0, so c_2 != 0",
        "P[1,1,2] = 0 => zeta*a_1*b_1*c_2 = 0, so c_2 = 0",
        "=> contradiction: no QI parameters give this tensor",
    };
  } else {
    std::vector<Rational> gamma(n, Rational(1));
    gamma[0] = 0;
    out.tensor = materialize(ModelParams<Rational>(QIParams<Rational>{ones, ones, ones, gamma}));
    const std::string v = to_string(out.tensor(1, 2, 2));
    out.witness = {
        "P[1,1,1] = 0 => alpha*a_1*b_1*c_1 + (1-alpha)*d_1 = 0, so alpha*a_1*b_1*c_1 = 0",
        "P[1,2,2] = " + v + " => alpha*a_1*b_2*c_2 != 0, so alpha != 0 and a_1 != 0",
        "P[2,1,2] = " + v + " => alpha*a_2*b_1*c_2 != 0, so b_1 != 0",
        "P[2,2,1] = " + v + " => alpha*a_2*b_2*c_1 != 0, so c_1 != 0",
        "=> contradiction: no Mix parameters give this tensor",
    };
  }
  return out;
}

bool excluded_from_qi(const ExactTensor& p) {
  bool zero_elsewhere = false;
  for (const Cell& c : all_cells(p.n())) {
    const bool zero = sgn(p(c.i, c.j, c.k)) == 0;
    if (c.is_diagonal() && zero) return false;
    zero_elsewhere = zero_elsewhere || zero;
  }
  return zero_elsewhere;
}

bool excluded_from_mix(const ExactTensor& p) {
  if (p.n() < 2) return false;
  return sgn(p(1, 1, 1)) == 0 && sgn(p(1, 2, 2)) > 0 && sgn(p(2, 1, 2)) > 0 &&
         sgn(p(2, 2, 1)) > 0;
}

bool check_witness(const Counterexample& example) {
  static const std::regex equation(R"(^P\[(\d+),(\d+),(\d+)\] = (\S+) => .+$)");
  int checked = 0;
  for (const std::string& line : example.witness) {
    std::smatch m;
    if (std::regex_match(line, m, equation)) {
      const Cell c{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
      try {
        if (example.tensor.at(c) != parse_rational(m[4].str())) return false;
      } catch (const Error&) {
        return false;
      }
      ++checked;
    } else if (line.rfind("=> ", 0) != 0) {
      return false;
    }
  }
  if (checked == 0) return false;
  return example.direction == Direction::MixNotInQI ? excluded_from_qi(example.tensor)
                                                    : excluded_from_mix(example.tensor);
}

}  // namespace agreetensor
