#include "bethe_overlap/mid.hpp"

#include "bethe_overlap/partitions.hpp"

namespace bethe_overlap {

namespace {

void require_mode(const Scalar& x, const ModelConstant& c) {
  if (x.mode() != c.mode()) throw ModeMismatch("argument mode differs from the model constant");
}

ParamSet eta_or_throw(const MidInput& in, std::size_t expected, const char* what) {
  if (!in.eta) throw InvalidArgument(std::string(what) + " requires an eta set");
  if (in.eta->size() != expected) {
    throw InvalidArgument(std::string(what) + ": eta has size " + std::to_string(in.eta->size()) + ", expected " +
                          std::to_string(expected));
  }
  if (!in.eta->pairwise_distinct()) throw PoleError(std::string(what) + ": eta elements must be pairwise distinct");
  return *in.eta;
}

}  // namespace

MidInput MidInput::make(ParamSet u, ParamSet v, Scalar z, ModelConstant c, std::optional<ParamSet> eta) {
  require_mode(z, c);
  if (!v.pairwise_distinct()) throw PoleError("MID: v elements must be pairwise distinct");
  if (!u.pairwise_distinct()) throw PoleError("MID: u elements must be pairwise distinct");
  if (u.intersects(v)) throw PoleError("MID: u and v share an element");
  if (eta) {
    if (!eta->pairwise_distinct()) throw PoleError("MID: eta elements must be pairwise distinct");
    if (eta->intersects(u)) throw PoleError("MID: eta and u share an element");
    if (eta->intersects(v)) throw PoleError("MID: eta and v share an element");
  }
  return MidInput{std::move(u), std::move(v), std::move(z), std::move(c), std::move(eta)};
}

Scalar one_minus_z_power(const Scalar& z, long k) {
  const Scalar base = z.one_like() - z;
  if (k < 0 && base.is_zero()) throw PrefactorSingular("(1-z)^k with k < 0 at z = 1");
  return base.pow(k);
}

Scalar mid(const ParamSet& u, const ParamSet& v, const Scalar& z, const ModelConstant& c) {
  const Kernels kr(c);
  const std::size_t m = v.size();
  // The factor (1-z)^{m-n} of the dual form; the determinant below would only cancel to roundoff.
  if (m > u.size() && z == kr.one()) return kr.zero();
  const Matrix a = Matrix::build(m, m, [&](std::size_t j, std::size_t k) {
    Scalar entry = kr.ratio(kr.f(u, v[j]) * kr.f(v[j], v.minus(j)), kr.h(v[j], v[k]), "MID entry 1/h(v_j,v_k)");
    if (j == k) entry -= z;
    return entry;
  });
  return determinant(a, kr.one());
}

Scalar mid_bar(const ParamSet& u, const ParamSet& v, const Scalar& z, const ModelConstant& c) {
  return mid(u, v, z, c.negated());
}

Scalar mid_direct(const MidInput& in) { return mid(in.u, in.v, in.z, in.c); }

Scalar mid_dual(const MidInput& in) {
  const Kernels kr(in.c);
  const std::size_t n = in.n();
  const Scalar prefactor = one_minus_z_power(in.z, static_cast<long>(in.m()) - static_cast<long>(n));
  const Matrix a = Matrix::build(n, n, [&](std::size_t j, std::size_t k) {
    Scalar entry =
        -in.z * kr.ratio(kr.f(in.u[j], in.u.minus(j)), kr.h(in.u[j], in.u[k]), "dual MID entry 1/h(u_j,u_k)");
    if (j == k) entry += kr.f(in.u[j], in.v);
    return entry;
  });
  return prefactor * determinant(a, kr.one());
}

Scalar mid_eta_n(const MidInput& in) {
  const Kernels kr(in.c);
  const std::size_t n = in.n();
  const ParamSet eta = eta_or_throw(in, n, "mid_eta_n");
  const Scalar prefactor =
      one_minus_z_power(in.z, static_cast<long>(in.m()) - static_cast<long>(n)) * kr.delta_prime(in.u) * kr.delta(eta);
  const Matrix a = Matrix::build(n, n, [&](std::size_t j, std::size_t k) {
    const ParamSet eta_k = eta.minus(k);
    return kr.f(in.u[j], in.v) * kr.inv_g(in.u[j], eta_k) - in.z * kr.h(in.u[j], eta_k);
  });
  return prefactor * determinant(a, kr.one());
}

Scalar mid_eta_m(const MidInput& in) {
  const Kernels kr(in.c);
  const std::size_t m = in.m();
  const ParamSet eta = eta_or_throw(in, m, "mid_eta_m");
  const Scalar prefactor = kr.delta_prime(in.v) * kr.delta(eta);
  const Matrix a = Matrix::build(m, m, [&](std::size_t j, std::size_t k) {
    const ParamSet eta_k = eta.minus(k);
    return kr.f(in.u, in.v[j]) * kr.h(in.v[j], eta_k) - in.z * kr.inv_g(in.v[j], eta_k);
  });
  return prefactor * determinant(a, kr.one());
}

Scalar mid_conjugate(const MidInput& in, MidRepresentation representation) {
  MidInput flipped = in;
  flipped.c = in.c.negated();
  return representation == MidRepresentation::direct ? mid_direct(flipped) : mid_dual(flipped);
}

Scalar corollary_determinant(const ParamSet& u, const ParamSet& eta, const Scalar& z, const ModelConstant& c) {
  if (u.size() != eta.size()) throw InvalidArgument("corollary_determinant: |u| must equal |eta|");
  const Kernels kr(c);
  const std::size_t n = u.size();
  const Matrix a = Matrix::build(n, n, [&](std::size_t j, std::size_t k) {
    const ParamSet eta_k = eta.minus(k);
    return kr.inv_g(u[j], eta_k) - z * kr.h(u[j], eta_k);
  });
  return kr.delta_prime(u) * kr.delta(eta) * determinant(a, kr.one());
}

IdentityPair sum_G_closed(const ParamSet& u, const ParamSet& eta, std::size_t j, std::size_t k, const ModelConstant& c) {
  if (u.size() != eta.size()) throw InvalidArgument("sum_G_closed: |u| must equal |eta|");
  if (j >= u.size() || k >= eta.size()) throw InvalidArgument("sum_G_closed: index out of range");
  const Kernels kr(c);
  Scalar sum = kr.zero();
  for (std::size_t l = 0; l < u.size(); ++l) {
    sum += kr.ratio(kr.g(u[l], eta[k]), kr.h(u[j], u[l]), "G sum 1/h(u_j,u_l)") * kr.g(u[l], u.minus(l)) *
           kr.inv_g(u[l], eta);
  }
  const Scalar closed = kr.ratio(kr.h(u[j], eta.minus(k)), kr.h(u[j], u), "G closed form 1/h(u_j,u)");
  return {sum, closed};
}

IdentityPair cauchy_det(const ParamSet& u, const ParamSet& eta, CauchyKind kind, const ModelConstant& c) {
  if (u.size() != eta.size()) throw InvalidArgument("cauchy_det: |u| must equal |eta|");
  const Kernels kr(c);
  const std::size_t n = u.size();
  if (kind == CauchyKind::g_matrix) {
    const Matrix w = Matrix::build(n, n, [&](std::size_t j, std::size_t k) {
      return kr.g(u[j], u.minus(j)) * kr.inv_g(u[j], eta.minus(k));
    });
    return {determinant(w, kr.one()), kr.ratio(kr.delta(u), kr.delta(eta), "Delta(eta)")};
  }
  const Matrix w = Matrix::build(n, n, [&](std::size_t j, std::size_t k) { return kr.h(u[j], eta.minus(k)); });
  return {determinant(w, kr.one()), kr.ratio(kr.one(), kr.delta(eta) * kr.delta_prime(u), "Delta(eta) Delta'(u)")};
}

IdentityPair bilinear_sum(const ParamSet& xi, const ParamSet& u, const ParamSet& v, const Scalar& z1_in,
                          const Scalar& z2_in, BilinearVariant variant, const ModelConstant& c) {
  const Kernels kr(c);
  const Scalar z1 = variant == BilinearVariant::ml3 ? kr.one() : z1_in;
  const Scalar z2 = variant == BilinearVariant::ml3 ? kr.one() : z2_in;
  require_mode(z1, c);
  require_mode(z2, c);

  Real scale = 0;
  if (variant == BilinearVariant::ml1) {
    const Scalar lhs = partition_sum(
        xi,
        [&](const Bipartition& b) {
          return z2.pow(static_cast<long>(b.part_I.size())) * mid(u, b.part_I, z1, c) * mid(v, b.part_II, z2, c) *
                 kr.f(b.part_II, b.part_I) * kr.f(u, b.part_II);
        },
        false, kr.zero(), std::nullopt, &scale);
    return {lhs, mid(u.concat(v), xi, z1 * z2, c), scale};
  }

  const Scalar weight = -z2 / z1;
  const Scalar lhs = partition_sum(
      xi,
      [&](const Bipartition& b) {
        return weight.pow(static_cast<long>(b.part_I.size())) * mid_bar(u, b.part_I, z1, c) *
               mid(v, b.part_II, z2, c) * kr.f(b.part_II, b.part_I);
      },
      false, kr.zero(), std::nullopt, &scale);
  const ParamSet merged = u.shift(-kr.c()).concat(v);
  return {lhs, kr.f(xi, u) * mid(merged, xi, z2 / z1, c), scale};
}

Scalar lemma_column_first(const Scalar& u, const ParamSet& eta, std::size_t k, const Scalar& z, const Evaluator& phi1,
                          const Evaluator& phi2, const Kernels& kr) {
  const ParamSet eta_k = eta.minus(k);
  return phi1(u) * (z * kr.inv_g(eta_k, u) - kr.h(eta_k, u)) + phi2(u) * (kr.inv_g(u, eta_k) - z * kr.h(u, eta_k));
}

Scalar lemma_column_second(const Scalar& u, const ParamSet& eta, std::size_t k, const Evaluator& phi1,
                           const Evaluator& phi2, const Kernels& kr) {
  const ParamSet eta_k = eta.minus(k);
  const Scalar sign = sign_power(static_cast<long>(eta.size()) - 1, kr.c());
  return sign * phi1(u) * kr.inv_g(u, eta_k) - phi2(u) * kr.h(u, eta_k);
}

LemmaDeterminants detlemma_matrices(const ParamSet& u, const ParamSet& eta, const Evaluator& phi1, const Evaluator& phi2,
                                    const std::vector<Evaluator>& fixed_columns, const Scalar& z,
                                    const ModelConstant& c) {
  const std::size_t N = u.size();
  const std::size_t n = fixed_columns.size();
  if (n > N) throw InvalidArgument("detlemma_matrices: more fixed columns than rows");
  if (eta.size() != N - n) throw InvalidArgument("detlemma_matrices: |eta| must equal N - n");
  require_mode(z, c);
  const Kernels kr(c);
  const Matrix first = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    return k < n ? fixed_columns[k](u[j]) : lemma_column_first(u[j], eta, k - n, z, phi1, phi2, kr);
  });
  const Matrix second = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    return k < n ? fixed_columns[k](u[j]) : lemma_column_second(u[j], eta, k - n, phi1, phi2, kr);
  });
  return {determinant(first, kr.one()), determinant(second, kr.one()), N - n};
}

IdentityPair sum_formula(const ParamSet& u, const std::vector<Evaluator>& columns, const Evaluator& phi1,
                         const Evaluator& phi2, const ModelConstant& c) {
  const std::size_t N = u.size();
  if (columns.size() != N) throw InvalidArgument("sum_formula: need one column function per element of u");
  const Kernels kr(c);
  const auto H = [&](const ParamSet& w) {
    const Matrix a = Matrix::build(N, N, [&](std::size_t j, std::size_t k) { return columns[k](w[j]); });
    return kr.delta(w) * determinant(a, kr.one());
  };
  Real scale = 0;
  const Scalar lhs = partition_sum(
      u,
      [&](const Bipartition& b) {
        std::vector<Scalar> shifted;
        shifted.reserve(N);
        for (std::size_t j = 0; j < N; ++j) shifted.push_back(b.in_part_I(j) ? u[j] - kr.c() : u[j]);
        Scalar term = kr.f(b.part_II, b.part_I) * H(ParamSet(std::move(shifted)));
        for (const auto& x : b.part_I) term *= phi1(x);
        for (const auto& x : b.part_II) term *= phi2(x);
        return term;
      },
      false, kr.zero(), std::nullopt, &scale);
  const Matrix a = Matrix::build(N, N, [&](std::size_t j, std::size_t k) {
    return phi1(u[j]) * columns[k](u[j] - kr.c()) + phi2(u[j]) * columns[k](u[j]);
  });
  return {lhs, kr.delta(u) * determinant(a, kr.one()), scale};
}

}  // namespace bethe_overlap
