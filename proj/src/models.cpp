#include "agreetensor/models.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <string>

namespace agreetensor {

const char* to_string(Family f) {
  switch (f) {
    case Family::QI: return "QI";
    case Family::Mix: return "Mix";
    case Family::qI: return "qI";
    case Family::mix: return "mix";
    case Family::pQI: return "pQI";
    case Family::pMix: return "pMix";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : {Family::QI, Family::Mix, Family::qI, Family::mix, Family::pQI, Family::pMix}) {
    if (text == to_string(f)) return f;
  }
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pqi") return Family::pQI;
  if (lower == "pmix") return Family::pMix;
  throw Error(ErrorCode::Parse, "unknown model family '" + std::string(text) +
                                    "' (expected QI, Mix, qI, mix, pQI or pMix)");
}

ModelParams<double> to_float(const ModelParams<Rational>& params) {
  return std::visit(
      [](const auto& p) -> ModelParams<double> {
        using P = std::decay_t<decltype(p)>;
        auto v = [](const std::vector<Rational>& x) { return to_float_vector(x); };
        if constexpr (std::is_same_v<P, QIParams<Rational>>) {
          return QIParams<double>{v(p.a), v(p.b), v(p.c), v(p.gamma)};
        } else if constexpr (std::is_same_v<P, MixParams<Rational>>) {
          return MixParams<double>{v(p.a), v(p.b), v(p.c), v(p.d), to_double(p.alpha)};
        } else if constexpr (std::is_same_v<P, QICommonParams<Rational>>) {
          return QICommonParams<double>{v(p.a), v(p.b), v(p.c), to_double(p.gamma)};
        } else if constexpr (std::is_same_v<P, MixUniformParams<Rational>>) {
          return MixUniformParams<double>{v(p.a), v(p.b), v(p.c), to_double(p.alpha)};
        } else if constexpr (std::is_same_v<P, PairwiseQIParams<Rational>>) {
          return PairwiseQIParams<double>{v(p.a), v(p.b), v(p.c), to_double(p.gamma12),
                                          to_double(p.gamma13), to_double(p.gamma23)};
        } else {
          return PairwiseMixParams<double>{v(p.a),           v(p.b),           v(p.c),
                                           to_double(p.alpha0), to_double(p.alpha12),
                                           to_double(p.alpha13), to_double(p.alpha23),
                                           to_double(p.alpha123)};
        }
      },
      params);
}

namespace {

// Draws are reduced with a plain modulus so the stream is identical on every platform
// (std::uniform_int_distribution is implementation-defined).
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t m) { return rng_() % m; }

  // n parts summing to `total`; all parts >= 1 when `positive` (requires total >= n).
  std::vector<long> composition(int n, long total, bool positive) {
    std::vector<long> cuts;
    if (positive) {
      std::vector<long> pool(static_cast<std::size_t>(total - 1));
      std::iota(pool.begin(), pool.end(), 1L);
      for (int s = 0; s < n - 1; ++s) {
        auto pick = s + static_cast<std::size_t>(below(pool.size() - s));
        std::swap(pool[s], pool[pick]);
        cuts.push_back(pool[s]);
      }
    } else {
      for (int s = 0; s < n - 1; ++s) cuts.push_back(static_cast<long>(below(total + 1)));
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<long> parts;
    long prev = 0;
    for (long c : cuts) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(total - prev);
    return parts;
  }

  std::vector<Rational> simplex(int n, long den, bool positive) {
    std::vector<Rational> out;
    for (long part : composition(n, den, positive)) {
      Rational r(part, den);
      r.canonicalize();
      out.push_back(r);
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

ModelParams<Rational> sample_params(Family family, int n, std::uint64_t seed,
                                    const SampleOptions& options) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "need at least 2 categories");
  if (options.grid_denominator < 1) throw Error(ErrorCode::InvalidParams, "grid denominator < 1");
  if (sgn(options.gamma_lo) < 0 || options.gamma_hi < options.gamma_lo) {
    throw Error(ErrorCode::InvalidParams, "gamma range must lie in [0, inf)");
  }
  const long den = std::max<long>(options.grid_denominator, n);
  const bool positive = options.interior;
  Draw draw(seed);
  auto gamma = [&] {
    const long u = static_cast<long>(draw.below(static_cast<std::uint64_t>(den) + 1));
    Rational r = options.gamma_lo + (options.gamma_hi - options.gamma_lo) * Rational(u, den);
    r.canonicalize();
    return r;
  };
  auto weight = [&] {
    long u = positive ? 1 + static_cast<long>(draw.below(static_cast<std::uint64_t>(den)))
                      : static_cast<long>(draw.below(static_cast<std::uint64_t>(den) + 1));
    Rational r(u, den);
    r.canonicalize();
    return r;
  };
  auto a = draw.simplex(n, den, positive);
  auto b = draw.simplex(n, den, positive);
  auto c = draw.simplex(n, den, positive);
  switch (family) {
    case Family::QI: {
      std::vector<Rational> g;
      for (int s = 0; s < n; ++s) g.push_back(gamma());
      return QIParams<Rational>{a, b, c, g};
    }
    case Family::Mix: {
      auto d = draw.simplex(n, den, positive);
      return MixParams<Rational>{a, b, c, d, weight()};
    }
    case Family::qI: return QICommonParams<Rational>{a, b, c, gamma()};
    case Family::mix: return MixUniformParams<Rational>{a, b, c, weight()};
    case Family::pQI: {
      Rational g12 = gamma(), g13 = gamma(), g23 = gamma();
      return PairwiseQIParams<Rational>{a, b, c, g12, g13, g23};
    }
    case Family::pMix: {
      auto alphas = draw.simplex(5, std::max<long>(den, 5), positive);
      return PairwiseMixParams<Rational>{a,         b,         c,         alphas[0],
                                         alphas[1], alphas[2], alphas[3], alphas[4]};
    }
  }
  throw Error(ErrorCode::InvalidParams, "unknown family");
}

}  // namespace agreetensor
