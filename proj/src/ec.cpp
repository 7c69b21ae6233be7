#include "isocensus/ec.hpp"

#include <cmath>

namespace isocensus {

namespace {

void require_legendre(const LegendreCurve& curve) {
  if (curve.d.v == 0 || curve.lambda.v == 0 || curve.lambda.v == 1) {
    throw EcError(EcErrc::singular_model, "Legendre model needs d != 0 and lambda not in {0,1}");
  }
}

}  // namespace

Trace trace_legendre(const PrimeField& field, const LegendreCurve& curve) {
  require_legendre(curve);
  const std::uint64_t q = field.q();
  const std::uint64_t d = curve.d.v;
  const std::uint64_t lam = curve.lambda.v;
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t v = d * x % q;
    v = v * (x + q - 1) % q;
    v = v * (x + q - lam) % q;
    sum += field.chi(Fe(static_cast<std::uint32_t>(v)));
  }
  return Trace(static_cast<int>(-sum));
}

Fe cubic_discriminant(const PrimeField& field, const Cubic& f) {
  auto a = field(f.a3), b = field(f.a2), c = field(f.a1), d = field(f.a0);
  auto disc = b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d +
              18 * a * b * c * d;
  return disc.value();
}

Trace trace_cubic(const PrimeField& field, const Cubic& f) {
  if (f.a3.v == 0 || cubic_discriminant(field, f).v == 0) {
    throw EcError(EcErrc::singular_model, "cubic is not squarefree of degree 3");
  }
  const std::uint64_t q = field.q();
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t v = f.a3.v;
    v = (v * x + f.a2.v) % q;
    v = (v * x + f.a1.v) % q;
    v = (v * x + f.a0.v) % q;
    sum += field.chi(Fe(static_cast<std::uint32_t>(v)));
  }
  return Trace(static_cast<int>(-sum));
}

std::int64_t genus2_count(const PrimeField& field, Fe c, Fe s) {
  const std::uint64_t q = field.q();
  if (c.v == 0) throw EcError(EcErrc::singular_model, "genus-2 model needs c != 0");
  if (s.v == 2 % q || s.v == q - 2) {
    throw EcError(EcErrc::singular_model, "genus-2 model is singular for s = +-2");
  }
  std::int64_t count = 1 + field.chi(c);
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t x2 = x * x % q;
    std::uint64_t v = (x2 + 1) % q;
    v = v * ((x2 * x2 + s.v * x2 + 1) % q) % q;
    v = v * c.v % q;
    count += 1 + field.chi(Fe(static_cast<std::uint32_t>(v)));
  }
  return count;
}

Fe j_invariant(const PrimeField& field, const LegendreCurve& curve) {
  if (curve.lambda.v == 0 || curve.lambda.v == 1) {
    throw EcError(EcErrc::singular_model, "lambda must avoid {0,1}");
  }
  auto l = field(curve.lambda);
  auto num = l * l - l + 1;
  auto den = l * l * (l - 1) * (l - 1);
  return (256 * num * num * num / den).value();
}

Fe j_invariant(const PrimeField& field, const Cubic& f) {
  if (f.a3.v == 0 || cubic_discriminant(field, f).v == 0) {
    throw EcError(EcErrc::singular_model, "cubic is not squarefree of degree 3");
  }
  // Scale to y^2 = x^3 + b x^2 + c x + d (twisting does not change j).
  auto a = field(f.a3);
  auto b = field(f.a2) / a, c = field(f.a1) / a, d = field(f.a0) / a;
  // c4 = 16 (b^2 - 3c), Delta = 16 disc(monic cubic); j = c4^3 / Delta.
  auto c4 = 16 * (b * b - 3 * c);
  auto disc = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
  return (c4 * c4 * c4 / (16 * disc)).value();
}

bool within_hasse(std::uint32_t q, Trace t) {
  const std::int64_t v = t.value;
  return v * v <= 4 * static_cast<std::int64_t>(q);
}

LegendreTraceTable::LegendreTraceTable(const PrimeField& field)
    : field_(&field), sums_(field.q(), 0) {
  const std::uint32_t q = field.q();
  const auto chi2 = field.chi_doubled();
  // g[x] = chi(x (x - 1)); S(l) = sum_x g[x] chi(x - l) = sum_x g[x] chi2[x + q - l].
  std::vector<std::int8_t> g(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    g[x] = chi2[x * ((x + q - 1) % q) % q];
  }
  const std::int8_t* gp = g.data();
  for (std::uint32_t lam = 0; lam < q; ++lam) {
    const std::int8_t* cp = chi2.data() + (q - lam);
    std::int32_t acc = 0;
    for (std::uint32_t x = 0; x < q; ++x) {
      acc += static_cast<std::int32_t>(gp[x] * cp[x]);
    }
    sums_[lam] = acc;
  }
}

Trace LegendreTraceTable::trace(const LegendreCurve& curve) const {
  require_legendre(curve);
  return Trace(-field_->chi(curve.d) * sums_[curve.lambda.v]);
}

}  // namespace isocensus
