#include "bethe_overlap/random.hpp"

#include <limits>

namespace bethe_overlap {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw InvalidArgument("empty integer range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<long>(x % range);
}

Scalar Rng::rational(const Scalar& like, bool complex) {
  const long p = uniform(-10000, 10000);
  const long q = uniform(1, 100);
  mpq_class re(p, q);
  re.canonicalize();
  mpq_class im(0);
  if (complex) {
    const long pi = uniform(-10000, 10000);
    const long qi = uniform(1, 100);
    im = mpq_class(pi, qi);
    im.canonicalize();
  }
  const Scalar x = Scalar::exact(re, im);
  return like.is_exact() ? x : x.to_floating(like.precision_bits());
}

ParamSet Rng::set(std::size_t n, const Scalar& like, const ModelConstant& c, const ParamSet& avoid, bool complex,
                  std::string label) {
  std::vector<Scalar> out;
  auto clashes = [&](const Scalar& x, const Scalar& a) {
    const Scalar d = x - a;
    return d.is_zero() || d == c.value() || d == -c.value();
  };
  while (out.size() < n) {
    const Scalar x = rational(like, complex);
    bool bad = false;
    for (const auto& a : avoid) bad = bad || clashes(x, a);
    for (const auto& a : out) bad = bad || clashes(x, a);
    if (!bad) out.push_back(x);
  }
  return ParamSet(std::move(out), std::move(label));
}

}  // namespace bethe_overlap
