#include "agreetensor/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace agreetensor {

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& x, const Factor& y) { return x.first < y.first; });
  for (const auto& [c, e] : factors) {
    if (e == 0) continue;
    if (!factors_.empty() && factors_.back().first == c) {
      factors_.back().second += e;
    } else {
      factors_.emplace_back(c, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::from_cells(std::vector<Cell> cells) {
  std::vector<Factor> f;
  f.reserve(cells.size());
  for (const Cell& c : cells) f.emplace_back(c, 1u);
  return Monomial(std::move(f));
}

unsigned Monomial::exponent(Cell c) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), c,
                             [](const Factor& f, const Cell& x) { return f.first < x; });
  return (it != factors_.end() && it->first == c) ? it->second : 0u;
}

int Monomial::max_index() const {
  int m = 0;
  for (const auto& f : factors_) m = std::max(m, f.first.max_index());
  return m;
}

std::vector<Cell> Monomial::cells() const {
  std::vector<Cell> out;
  out.reserve(degree_);
  for (const auto& [c, e] : factors_) out.insert(out.end(), e, c);
  return out;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first) ++a; else ++b;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return Monomial(std::move(f));
}

Monomial Monomial::divided_by(const Monomial& other) const {
  std::vector<Factor> f = factors_;
  for (const auto& [c, e] : other.factors_) {
    auto it = std::find_if(f.begin(), f.end(), [&](const Factor& x) { return x.first == c; });
    if (it == f.end() || it->second < e) {
      throw Error(ErrorCode::InvalidParams, "monomial does not divide");
    }
    it->second -= e;
  }
  return Monomial(std::move(f));
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (degree_ != other.degree_) return degree_ <=> other.degree_;
  return factors_ <=> other.factors_;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [c, e] : factors_) {
    if (!s.empty()) s += '*';
    s += "P[" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) + "]";
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [c, e] : m.factors()) {
    std::size_t v = (static_cast<std::size_t>(c.i) * 131 + c.j) * 131 + c.k;
    v = v * 31 + e;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

SparsePolynomial::SparsePolynomial(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.monomial > y.monomial; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coefficient == 0; });
}

SparsePolynomial SparsePolynomial::binomial(const Monomial& plus, const Monomial& minus) {
  return SparsePolynomial({Term{1, plus}, Term{-1, minus}});
}

unsigned SparsePolynomial::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

bool SparsePolynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  }
  return true;
}

int SparsePolynomial::max_index() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, t.monomial.max_index());
  return m;
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return SparsePolynomial(std::move(all));
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& other) const {
  return *this + (-other);
}

SparsePolynomial SparsePolynomial::operator*(const Monomial& m) const {
  std::vector<Term> all;
  all.reserve(terms_.size());
  for (const auto& t : terms_) all.push_back(Term{t.coefficient, t.monomial * m});
  return SparsePolynomial(std::move(all));
}

SparsePolynomial SparsePolynomial::sign_normalized() const {
  if (!terms_.empty() && terms_.front().coefficient < 0) return -*this;
  return *this;
}

bool SparsePolynomial::operator<(const SparsePolynomial& other) const {
  if (degree() != other.degree()) return degree() < other.degree();
  const std::size_t common = std::min(terms_.size(), other.terms_.size());
  for (std::size_t s = 0; s < common; ++s) {
    const Term& x = terms_[s];
    const Term& y = other.terms_[s];
    if (x.monomial != y.monomial) return x.monomial < y.monomial;
    if (x.coefficient != y.coefficient) return x.coefficient < y.coefficient;
  }
  return terms_.size() < other.terms_.size();
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    s += t.coefficient < 0 ? '-' : '+';
    const std::int64_t c = t.coefficient < 0 ? -t.coefficient : t.coefficient;
    s += std::to_string(c);
    if (!t.monomial.is_constant()) s += "*" + t.monomial.to_string();
  }
  return s;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SparsePolynomial parse() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip();
      if (pos_ == text_.size()) return SparsePolynomial();
      pos_ = save;
    }
    std::vector<Term> terms;
    bool first = true;
    while (true) {
      skip();
      if (pos_ == text_.size()) break;
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip();
      terms.push_back(term(sign));
    }
    if (terms.empty()) fail("empty polynomial");
    return SparsePolynomial(std::move(terms));
  }

 private:
  Term term(int sign) {
    std::int64_t coeff = 1;
    std::vector<Monomial::Factor> factors;
    bool need_factor = true;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      coeff = integer();
      skip();
      if (!peek('*')) return Term{sign * coeff, Monomial()};
      ++pos_;
    }
    while (need_factor) {
      skip();
      factors.push_back(factor());
      skip();
      need_factor = peek('*');
      if (need_factor) ++pos_;
    }
    return Term{sign * coeff, Monomial(std::move(factors))};
  }

  Monomial::Factor factor() {
    expect('P');
    expect('[');
    Cell c;
    c.i = static_cast<int>(integer());
    expect(',');
    c.j = static_cast<int>(integer());
    expect(',');
    c.k = static_cast<int>(integer());
    expect(']');
    if (c.i < 1 || c.j < 1 || c.k < 1) fail("indices are 1-based");
    unsigned e = 1;
    skip();
    if (peek('^')) {
      ++pos_;
      e = static_cast<unsigned>(integer());
      if (e == 0) fail("zero exponent");
    }
    return {c, e};
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 18) fail("integer too large");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char ch) const { return pos_ < text_.size() && text_[pos_] == ch; }
  void expect(char ch) {
    skip();
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, msg + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePolynomial SparsePolynomial::parse(std::string_view text) { return Parser(text).parse(); }

double SparsePolynomial::normalized_residual(const FloatTensor& p) const {
  if (max_index() > p.n()) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial uses an index above n");
  }
  double sum = 0.0;
  double scale = 0.0;
  for (const auto& t : terms_) {
    const double v = static_cast<double>(t.coefficient) * t.monomial.evaluate(p);
    sum += v;
    scale = std::max(scale, std::abs(v));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

std::ostream& operator<<(std::ostream& out, const SparsePolynomial& p) {
  return out << p.to_string();
}

void write_polynomials(std::ostream& out, const std::vector<SparsePolynomial>& polys) {
  for (const auto& p : polys) out << p.to_string() << '\n';
}

std::vector<SparsePolynomial> read_polynomials(std::istream& in) {
  std::vector<SparsePolynomial> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(SparsePolynomial::parse(line));
  }
  return out;
}

MonomialMatrix MonomialMatrix::from_monomial(const Monomial& m) { return MonomialMatrix{m.cells()}; }

MonomialMatrix monomial_matrix(const Monomial& m) { return MonomialMatrix::from_monomial(m); }

int rho(const MonomialMatrix& a) {
  return static_cast<int>(std::count_if(a.rows.begin(), a.rows.end(),
                                        [](const Cell& c) { return c.is_diagonal(); }));
}

OccurrenceMatrix occurrence_matrix(const Monomial& m, int n) {
  if (m.max_index() > n) throw Error(ErrorCode::IndexOutOfRange, "monomial index above n");
  OccurrenceMatrix out{n, std::vector<std::array<int, 3>>(n, {0, 0, 0})};
  for (const auto& [c, e] : m.factors()) {
    out.counts[c.i - 1][0] += static_cast<int>(e);
    out.counts[c.j - 1][1] += static_cast<int>(e);
    out.counts[c.k - 1][2] += static_cast<int>(e);
  }
  return out;
}

VanishingChecker::VanishingChecker(const ExactTensor& p) : tensor_(p) {
  mpz_class den = 1;
  for (const auto& e : p.entries()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
  scaled_.reserve(p.entries().size());
  for (const auto& e : p.entries()) scaled_.push_back(e.get_num() * (den / e.get_den()));
}

const mpz_class& VanishingChecker::value_of(const Monomial& m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  mpz_class v = 1;
  for (const auto& [c, e] : m.factors()) {
    const mpz_class& x = scaled_[flat_index(tensor_.n(), c)];
    for (unsigned s = 0; s < e; ++s) v *= x;
  }
  return cache_.emplace(m, std::move(v)).first->second;
}

bool VanishingChecker::vanishes(const SparsePolynomial& poly) {
  if (poly.max_index() > tensor_.n()) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial uses an index above n");
  }
  if (!poly.is_homogeneous()) return ScalarTraits<Rational>::is_zero(poly.evaluate(tensor_));
  mpz_class sum = 0;
  for (const auto& t : poly.terms()) sum += mpz_class(static_cast<long>(t.coefficient)) * value_of(t.monomial);
  return sgn(sum) == 0;
}

}  // namespace agreetensor
