#include "bethe_overlap/verify.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "bethe_overlap/bethe.hpp"
#include "bethe_overlap/chain.hpp"
#include "bethe_overlap/mid.hpp"
#include "bethe_overlap/overlap.hpp"
#include "bethe_overlap/random.hpp"

namespace bethe_overlap {

namespace {

std::string pad(int k) {
  std::string s = std::to_string(k);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::string shape(std::initializer_list<std::pair<const char*, std::size_t>> dims) {
  std::string s;
  for (const auto& [name, value] : dims) {
    if (!s.empty()) s += ",";
    s += std::string(name) + "=" + std::to_string(value);
  }
  return s;
}

// Normwise over a list of pairs: max |a - b| <= tol max(|a|, |b|), the right
// side taken over the whole list so that vanishing entries do not dominate.
std::pair<bool, Real> compare_lists(const std::vector<std::pair<Scalar, Scalar>>& pairs, double tol) {
  Real worst = 0;
  Real scale = 0;
  bool exact_ok = true;
  for (const auto& [a, b] : pairs) {
    exact_ok = exact_ok && (!a.is_exact() || a == b);
    worst = std::max(worst, (a - b).modulus());
    scale = std::max({scale, a.modulus(), b.modulus()});
  }
  if (!pairs.empty() && pairs.front().first.is_exact()) return {exact_ok, worst};
  if (scale > 0) worst /= scale;
  return {worst <= tol, worst};
}

struct Suite {
  const VerifyConfig& cfg;
  Report& report;
  Rng rng;
  Scalar like;

  Suite(const VerifyConfig& config, Report& rep, const std::string& name)
      : cfg(config), report(rep), rng(config.seed ^ fnv1a(name)),
        like(config.mode == ScalarMode::exact ? Scalar::exact(0) : Scalar::floating(0.0, 0.0, config.precision_bits)) {}

  Scalar draw() { return rng.rational(like); }
  Scalar draw_nonzero() {
    Scalar x = draw();
    while (x.is_zero()) x = draw();
    return x;
  }
  Scalar draw_avoiding(std::initializer_list<long> bad) {
    for (;;) {
      Scalar x = draw();
      bool clash = false;
      for (long b : bad) clash = clash || x == like.like(b);
      if (!clash) return x;
    }
  }
  ModelConstant draw_c() { return ModelConstant(draw_nonzero()); }
  ParamSet set(std::size_t n, const ModelConstant& c, const ParamSet& avoid = {}, const char* label = "") {
    return rng.set(n, like, c, avoid, false, label);
  }

  void add(CheckRecord r) { report.records.push_back(std::move(r)); }

  // Runs `eval` and records the comparison; library errors become failing records.
  void check(const std::string& name, const std::string& identity, const Json& inputs,
             const std::function<std::pair<Scalar, Scalar>()>& eval) {
    try {
      const auto [lhs, rhs] = eval();
      add(compare_record(name, identity, inputs, lhs, rhs, cfg.float_tol));
    } catch (const Error& e) {
      add(error_record(name, identity, inputs, e.what()));
    }
  }

  // As check, with the float scale supplied by the identity.
  void check_identity(const std::string& name, const std::string& identity, const Json& inputs,
                      const std::function<IdentityPair()>& eval) {
    try {
      const IdentityPair p = eval();
      add(compare_record(name, identity, inputs, p.lhs, p.rhs, cfg.float_tol, p.scale));
    } catch (const Error& e) {
      add(error_record(name, identity, inputs, e.what()));
    }
  }

  void check_many(const std::string& name, const std::string& identity, const Json& inputs,
                  const std::function<std::vector<std::pair<Scalar, Scalar>>()>& eval) {
    try {
      const auto pairs = eval();
      const auto [ok, worst] = compare_lists(pairs, cfg.float_tol);
      add(value_record(name, identity, inputs, Json(static_cast<long>(pairs.size())), ok, real_to_string(worst)));
    } catch (const Error& e) {
      add(error_record(name, identity, inputs, e.what()));
    }
  }
};

std::vector<std::pair<Scalar, Scalar>> matrix_pairs(const Matrix& a, const Matrix& b) {
  std::vector<std::pair<Scalar, Scalar>> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out.emplace_back(a(r, c), b(r, c));
  }
  return out;
}

std::vector<std::pair<Scalar, Scalar>> vector_pairs(const Vector& a, const Vector& b) {
  std::vector<std::pair<Scalar, Scalar>> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.emplace_back(a[k], b[k]);
  return out;
}

// A commutator checked as entrywise equality of the two products.
std::vector<std::pair<Scalar, Scalar>> commute_pairs(const Matrix& a, const Matrix& b) {
  return matrix_pairs(a * b, b * a);
}

Evaluator random_polynomial(Suite& s, std::size_t degree) {
  std::vector<Scalar> coeffs;
  for (std::size_t k = 0; k <= degree; ++k) coeffs.push_back(s.draw());
  return [coeffs](const Scalar& x) {
    Scalar acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  };
}

void suite_kernels(Suite& s) {
  for (int inst = 0; inst < s.cfg.instances; ++inst) {
    const ModelConstant c = s.draw_c();
    const ParamSet uv = s.set(2, c);
    const Scalar& u = uv[0];
    const Scalar& v = uv[1];
    const Json in{{"u", scalar_to_json(u)}, {"v", scalar_to_json(v)}, {"c", scalar_to_json(c.value())}};
    const Kernels kr(c);
    const std::string tag = "#" + pad(inst);
    s.check("kernels/f_is_one_plus_g/" + tag, "f = 1 + g", in, [&] { return std::pair{kr.f(u, v), kr.one() + kr.g(u, v)}; });
    s.check("kernels/h_is_f_over_g/" + tag, "h = f/g", in, [&] { return std::pair{kr.h(u, v), kr.f(u, v) / kr.g(u, v)}; });
    s.check("kernels/g_antisymmetric/" + tag, "g(u,v) = -g(v,u)", in, [&] { return std::pair{kr.g(u, v), -kr.g(v, u)}; });
    for (std::size_t n = 0; n <= s.cfg.max_set_size; ++n) {
      const ParamSet set = s.set(n, c);
      const long pairs = static_cast<long>(n * (n > 0 ? n - 1 : 0) / 2);
      s.check("kernels/delta_prime_sign/" + shape({{"n", n}}) + "/" + tag, "Delta' = (-1)^{n(n-1)/2} Delta",
              Json{{"s", params_to_json(set)}},
              [&] { return std::pair{kr.delta_prime(set), sign_power(pairs, kr.one()) * kr.delta(set)}; });
    }
  }
}

void suite_mid(Suite& s) {
  const std::size_t max = s.cfg.max_set_size;
  for (std::size_t n = 0; n <= max; ++n) {
    for (std::size_t m = 0; m <= max; ++m) {
      for (int inst = 0; inst < s.cfg.instances; ++inst) {
        const ModelConstant c = s.draw_c();
        const ParamSet u = s.set(n, c, {}, "u");
        const ParamSet v = s.set(m, c, u, "v");
        const ParamSet eta_n = s.set(n, c, u.concat(v), "eta");
        const ParamSet eta_m = s.set(m, c, u.concat(v), "eta");
        const Scalar z = s.draw_avoiding({0, 1});
        const Json in{{"u", params_to_json(u)}, {"v", params_to_json(v)}, {"z", scalar_to_json(z)},
                      {"c", scalar_to_json(c.value())}};
        const std::string where = shape({{"n", n}, {"m", m}}) + "/#" + pad(inst);
        const MidInput base = MidInput::make(u, v, z, c);
        s.check("mid/direct_vs_dual/" + where, "MID direct = dual representation", in,
                [&] { return std::pair{mid_direct(base), mid_dual(base)}; });
        s.check("mid/direct_vs_eta_n/" + where, "MID direct = eta representation (|eta| = n)", in, [&] {
          return std::pair{mid_direct(base), mid_eta_n(MidInput::make(u, v, z, c, eta_n))};
        });
        s.check("mid/direct_vs_eta_m/" + where, "MID direct = eta representation (|eta| = m)", in, [&] {
          return std::pair{mid_direct(base), mid_eta_m(MidInput::make(u, v, z, c, eta_m))};
        });
        s.check("mid/conjugation/" + where, "Kbar(u|v) = (1-z)^{m-n} K(v|u)", in, [&] {
          const long e = static_cast<long>(m) - static_cast<long>(n);
          return std::pair{mid_conjugate(base), one_minus_z_power(z, e) * mid(v, u, z, c)};
        });
        const Kernels kr(c);
        const long e = static_cast<long>(m) - static_cast<long>(n);
        const Scalar shift_factor = (-z).pow(static_cast<long>(n)) * one_minus_z_power(z, e);
        s.check("mid/shift_minus/" + where, "K(u-c|v) = (-z)^n (1-z)^{m-n} K^{(1/z)}(v|u)/f(v,u)", in, [&] {
          return std::pair{mid(u.shift(-kr.c()), v, z, c), shift_factor / kr.f(v, u) * mid(v, u, kr.one() / z, c)};
        });
        s.check("mid/shift_plus/" + where, "Kbar(u+c|v) = (-z)^n (1-z)^{m-n} Kbar^{(1/z)}(v|u)/f(u,v)", in, [&] {
          return std::pair{mid_bar(u.shift(kr.c()), v, z, c), shift_factor / kr.f(u, v) * mid_bar(v, u, kr.one() / z, c)};
        });
        if (m != 0) continue;
        s.check("mid/corollary/" + where, "Delta'(u) Delta(eta) det(1/g - z h) = (1-z)^n", in, [&] {
          return std::pair{corollary_determinant(u, eta_n, z, c), one_minus_z_power(z, static_cast<long>(n))};
        });
        if (n == 0) continue;
        s.check("mid/cauchy_g/" + where, "det W = Delta(u)/Delta(eta)", in, [&] {
          const IdentityPair p = cauchy_det(u, eta_n, CauchyKind::g_matrix, c);
          return std::pair{p.lhs, p.rhs};
        });
        s.check("mid/cauchy_h/" + where, "det h(u_j, eta_k-bar) = 1/(Delta(eta) Delta'(u))", in, [&] {
          const IdentityPair p = cauchy_det(u, eta_n, CauchyKind::inverse_h_matrix, c);
          return std::pair{p.lhs, p.rhs};
        });
        s.check_many("mid/g_sum_closed/" + where, "sum_l G_jl terms = h(u_j, eta_k-bar)/h(u_j, u)", in, [&] {
          std::vector<std::pair<Scalar, Scalar>> out;
          for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
              const IdentityPair p = sum_G_closed(u, eta_n, j, k, c);
              out.emplace_back(p.lhs, p.rhs);
            }
          }
          return out;
        });
      }
    }
  }
}

void suite_appendix(Suite& s) {
  const std::size_t max = s.cfg.max_set_size;
  const std::size_t side = std::min<std::size_t>(max, 2);
  for (std::size_t l = 0; l <= max; ++l) {
    for (std::size_t n = 0; n <= side; ++n) {
      for (std::size_t m = 0; m <= side; ++m) {
        for (int inst = 0; inst < s.cfg.instances; ++inst) {
          const ModelConstant c = s.draw_c();
          const ParamSet u = s.set(n, c, {}, "u");
          const ParamSet v = s.set(m, c, u, "v");
          const ParamSet xi = s.set(l, c, u.concat(v).concat(u.shift(-c.value())), "xi");
          const Scalar z1 = s.draw_nonzero();
          const Scalar z2 = s.draw_nonzero();
          const Json in{{"xi", params_to_json(xi)}, {"u", params_to_json(u)}, {"v", params_to_json(v)},
                        {"z1", scalar_to_json(z1)}, {"z2", scalar_to_json(z2)}, {"c", scalar_to_json(c.value())}};
          const std::string where = shape({{"l", l}, {"n", n}, {"m", m}}) + "/#" + pad(inst);
          const std::pair<BilinearVariant, const char*> variants[] = {
              {BilinearVariant::ml1, "plain"}, {BilinearVariant::ml2, "conjugate"}, {BilinearVariant::ml3, "unit_z"}};
          for (const auto& [variant, label] : variants) {
            s.check_identity(std::string("appendix/bilinear_") + label + "/" + where, "bilinear MID partition sum",
                             in, [&] { return bilinear_sum(xi, u, v, z1, z2, variant, c); });
          }
        }
      }
    }
  }
  for (std::size_t N = 1; N <= max + 1; ++N) {
    for (std::size_t n = 0; n <= N; ++n) {
      for (int inst = 0; inst < s.cfg.instances; ++inst) {
        const ModelConstant c = s.draw_c();
        const ParamSet u = s.set(N, c, {}, "u");
        const ParamSet eta = s.set(N - n, c, u, "eta");
        const Scalar z = s.draw_avoiding({1});
        const Evaluator phi1 = random_polynomial(s, 2);
        const Evaluator phi2 = random_polynomial(s, 2);
        std::vector<Evaluator> fixed;
        for (std::size_t k = 0; k < n; ++k) fixed.push_back(random_polynomial(s, N));
        const Json in{{"u", params_to_json(u)}, {"eta", params_to_json(eta)}, {"z", scalar_to_json(z)},
                      {"c", scalar_to_json(c.value())}};
        s.check("appendix/detlemma/" + shape({{"N", N}, {"n", n}}) + "/#" + pad(inst),
                "det F01 = (z-1)^{N-n} det F02", in, [&] {
                  const LemmaDeterminants d = detlemma_matrices(u, eta, phi1, phi2, fixed, z, c);
                  return std::pair{d.det_first, (z - z.one_like()).pow(static_cast<long>(d.free_columns)) * d.det_second};
                });
      }
    }
  }
  for (std::size_t N = 0; N <= max; ++N) {
    for (int inst = 0; inst < s.cfg.instances; ++inst) {
      const ModelConstant c = s.draw_c();
      const ParamSet u = s.set(N, c, {}, "u");
      const Evaluator phi1 = random_polynomial(s, 2);
      const Evaluator phi2 = random_polynomial(s, 2);
      std::vector<Evaluator> columns;
      for (std::size_t k = 0; k < N; ++k) columns.push_back(random_polynomial(s, N));
      const Json in{{"u", params_to_json(u)}, {"c", scalar_to_json(c.value())}};
      s.check_identity("appendix/summation/" + shape({{"N", N}}) + "/#" + pad(inst), "partition sum of H = Delta det",
                       in, [&] { return sum_formula(u, columns, phi1, phi2, c); });
    }
  }
}

TwistGeneral random_twist(Suite& s) {
  for (;;) {
    try {
      return TwistGeneral::from_rhos(s.draw(), s.draw_nonzero(), s.draw(), s.draw_nonzero(), s.draw_nonzero());
    } catch (const DegenerateTwist&) {
    }
  }
}

void suite_chain(Suite& s) {
  for (std::size_t L = 1; L <= s.cfg.max_chain_length; ++L) {
    for (int inst = 0; inst < s.cfg.instances; ++inst) {
      const ModelConstant c = s.draw_c();
      const SpinChainModel model = SpinChainModel::make(s.set(L, c, {}, "theta"), c);
      const ParamSet uv = s.set(2, c, model.theta);
      const Scalar& u = uv[0];
      const Scalar& v = uv[1];
      const TwistGeneral tw = random_twist(s);
      const Scalar alpha = s.draw_nonzero();
      const Json in{{"theta", params_to_json(model.theta)}, {"u", scalar_to_json(u)}, {"v", scalar_to_json(v)},
                    {"c", scalar_to_json(c.value())}};
      const std::string where = shape({{"L", L}}) + "/#" + pad(inst);
      const WeightPair w = spin_half_weights(model);
      s.check_many("chain/rtt/" + where, "R T1 T2 = T2 T1 R", in, [&] {
        const auto [left, right] = rtt_sides(model, u, v);
        return matrix_pairs(left, right);
      });
      s.check_many("chain/vacuum/" + where, "t11|0> = l1|0>, t22|0> = l2|0>, t21|0> = 0", in, [&] {
        const Monodromy t = build_monodromy(model, u);
        const Vector vac = vacuum(model);
        std::vector<std::pair<Scalar, Scalar>> out;
        Vector e1 = vac, e2 = vac, zero = vac;
        for (auto& x : e1) x *= w.lambda1(u);
        for (auto& x : e2) x *= w.lambda2(u);
        for (auto& x : zero) x = x.zero_like();
        for (auto& p : vector_pairs(matvec(t[0][0], vac), e1)) out.push_back(p);
        for (auto& p : vector_pairs(matvec(t[1][1], vac), e2)) out.push_back(p);
        for (auto& p : vector_pairs(matvec(t[1][0], vac), zero)) out.push_back(p);
        return out;
      });
      s.check_many("chain/twist_decomposition/" + where, "mu Bbar D Abar = K", in, [&] {
        const Numeric2x2 prod = multiply(multiply(tw.B_bar(), tw.D()), tw.A_bar());
        const Numeric2x2 k = tw.K();
        std::vector<std::pair<Scalar, Scalar>> out;
        for (std::size_t a = 0; a < 2; ++a) {
          for (std::size_t b = 0; b < 2; ++b) out.emplace_back(tw.mu * prod[a][b], k[a][b]);
        }
        out.emplace_back(tw.constraint_defect(), tw.mu.zero_like());
        return out;
      });
      s.check_many("chain/modified_entries/" + where, "nu_kl = (mu Abar T Bbar)_kl", in, [&] {
        const Monodromy prod = modified_monodromy_product(model, tw, u);
        std::vector<std::pair<Scalar, Scalar>> out;
        for (int k = 1; k <= 2; ++k) {
          for (int l = 1; l <= 2; ++l) {
            for (auto& p : matrix_pairs(modified_operator(model, tw, k, l, u), prod[k - 1][l - 1])) out.push_back(p);
          }
        }
        return out;
      });
      s.check_many("chain/diag_transfer_commutes/" + where, "[t1(u), t1(v)] = 0", in,
                   [&] { return commute_pairs(transfer_diag(model, alpha, u), transfer_diag(model, alpha, v)); });
      s.check_many("chain/general_transfer_commutes/" + where, "[t2(u), t2(v)] = 0", in,
                   [&] { return commute_pairs(transfer_general(model, tw, u), transfer_general(model, tw, v)); });
      s.check_many("chain/general_transfer_forms/" + where, "tr(K T) = tr(D nu)", in, [&] {
        return matrix_pairs(transfer_general(model, tw, u), transfer_general_via_modified(model, tw, u));
      });
      s.check_many("chain/nu12_commutes/" + where, "[nu12(u), nu12(v)] = 0", in, [&] {
        return commute_pairs(modified_operator(model, tw, 1, 2, u), modified_operator(model, tw, 1, 2, v));
      });
    }
  }
}

void suite_overlap(Suite& s) {
  const std::size_t max_L = std::min<std::size_t>(s.cfg.max_chain_length, 3);
  const std::size_t max_N = std::min<std::size_t>(s.cfg.max_set_size, 3);
  for (std::size_t L = 1; L <= max_L; ++L) {
    for (std::size_t N = 0; N <= max_N; ++N) {
      for (std::size_t n = 0; n <= N + 1; ++n) {
        for (int inst = 0; inst < s.cfg.instances; ++inst) {
          const ModelConstant c = s.draw_c();
          const SpinChainModel model = SpinChainModel::make(s.set(L, c, {}, "theta"), c);
          const ParamSet v = s.set(n, c, model.theta, "v");
          const ParamSet u = s.set(N, c, model.theta.concat(v), "u");
          const TwistGeneral tw = random_twist(s);
          const Json in{{"theta", params_to_json(model.theta)}, {"v", params_to_json(v)}, {"u", params_to_json(u)},
                        {"c", scalar_to_json(c.value())}};
          const std::string where = shape({{"L", L}, {"N", N}, {"n", n}}) + "/#" + pad(inst);
          s.check_identity("overlap/offshell_vs_brute/" + where, "partition-sum overlap = explicit matrix products",
                           in, [&] {
                             const OverlapInput oin =
                                 OverlapInput::make(spin_half_weights(model), tw, s.like.one_like(), v, u, c);
                             Real scale = 0;
                             const Scalar sum = overlap_sum_offshell(oin, &scale);
                             return IdentityPair{sum, brute_overlap(model, tw, v, u), scale};
                           });
        }
      }
    }
  }
  // One-root on-shell construction: alpha = lambda1(v)/lambda2(v), rho2 = -alpha rho1.
  for (std::size_t L = 1; L <= max_L; ++L) {
    for (std::size_t N = 0; N <= max_N; ++N) {
      for (std::size_t n = 0; n <= std::min<std::size_t>(N, 1); ++n) {
        for (int inst = 0; inst < s.cfg.instances; ++inst) {
          const ModelConstant c = s.draw_c();
          const SpinChainModel model = SpinChainModel::make(s.set(L, c, {}, "theta"), c);
          const WeightPair w = spin_half_weights(model);
          const ParamSet v = s.set(n, c, model.theta, "v");
          const Scalar alpha = n == 1 ? one_magnon_twist(w, v[0]) : s.draw_nonzero();
          const Scalar rho1 = s.draw_nonzero();
          TwistGeneral tw;
          try {
            tw = TwistGeneral::from_rhos(s.draw(), s.draw_nonzero(), s.draw(), rho1, -alpha * rho1);
          } catch (const DegenerateTwist&) {
            continue;
          }
          const ParamSet u = s.set(N, c, model.theta.concat(v), "u");
          const ParamSet avoid = u.concat(v);
          const ParamSet eta1 = s.set(N - n, c, avoid, "eta");
          const ParamSet eta2 = s.set(N - n, c, avoid, "eta");
          const ParamSet zeta1 = s.set(N, c, avoid, "eta");
          const ParamSet zeta2 = s.set(N, c, avoid, "eta");
          const Json in{{"theta", params_to_json(model.theta)}, {"v", params_to_json(v)}, {"u", params_to_json(u)},
                        {"alpha", scalar_to_json(alpha)}, {"c", scalar_to_json(c.value())}};
          const std::string where = shape({{"L", L}, {"N", N}, {"n", n}}) + "/#" + pad(inst);
          OverlapInput oin = OverlapInput::make(w, tw, alpha, v, u, c, eta1);
          OverlapInput oin2 = OverlapInput::make(w, tw, alpha, v, u, c, eta2);
          s.check("overlap/onshell_sum_vs_brute/" + where, "on-shell partition sum = explicit products", in, [&] {
            return std::pair{overlap_sum_onshell(oin, false), brute_overlap(model, tw, v, u)};
          });
          s.check("overlap/constrained_sum_vs_brute/" + where, "single-MID sum under alpha = -rho2/rho1", in, [&] {
            return std::pair{overlap_sum_onshell(oin, true), brute_overlap(model, tw, v, u)};
          });
          for (long zi : {0L, 2L, -3L}) {
            const Scalar z = s.like.like(zi);
            s.check("overlap/det_z_vs_sum/" + where + "/z=" + std::to_string(zi),
                    "(1-z)^{n-N} det N(z) = deformed single-MID sum", in, [&] {
                      return std::pair{overlap_det_z_scaled(oin, z, zeta1), overlap_sum_onshell(oin, true, z)};
                    });
            s.check("overlap/det_z_eta_independent/" + where + "/z=" + std::to_string(zi),
                    "det N(z) independent of eta", in,
                    [&] { return std::pair{overlap_det_z(oin, z, zeta1), overlap_det_z(oin, z, zeta2)}; });
          }
          s.check("overlap/det_vs_brute/" + where, "determinant overlap = explicit products", in,
                  [&] { return std::pair{overlap_det(oin), brute_overlap(model, tw, v, u)}; });
          s.check("overlap/det_eta_independent/" + where, "determinant overlap independent of eta", in,
                  [&] { return std::pair{overlap_det(oin), overlap_det(oin2)}; });
        }
      }
    }
  }
}

using SuiteFn = void (*)(Suite&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"kernels", suite_kernels}, {"mid", suite_mid},         {"appendix", suite_appendix},
      {"chain", suite_chain},     {"overlap", suite_overlap},
  };
  return table;
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}

std::size_t Report::failed() const { return records.size() - passed(); }

void Report::finalize() {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckRecord compare_record(std::string name, std::string identity, const Json& inputs, const Scalar& lhs,
                           const Scalar& rhs, double tol, const Real& scale) {
  CheckRecord r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.inputs_digest = fnv1a_hex(inputs.dump());
  r.lhs = scalar_to_json(lhs);
  r.rhs = scalar_to_json(rhs);
  if (lhs.is_exact()) {
    r.pass = lhs == rhs;
    r.residual = r.pass ? "0" : (lhs - rhs).to_string();
  } else {
    const Real d = relative_difference(lhs, rhs, scale);
    r.pass = d <= tol;
    r.residual = real_to_string(d);
  }
  return r;
}

CheckRecord error_record(std::string name, std::string identity, const Json& inputs, const std::string& what) {
  CheckRecord r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.inputs_digest = fnv1a_hex(inputs.dump());
  r.pass = false;
  r.error = what;
  return r;
}

CheckRecord value_record(std::string name, std::string identity, const Json& inputs, const Json& value, bool pass,
                         const std::string& residual) {
  CheckRecord r;
  r.name = std::move(name);
  r.identity = std::move(identity);
  r.inputs_digest = fnv1a_hex(inputs.dump());
  r.lhs = value;
  r.pass = pass;
  r.residual = residual;
  return r;
}

Report run_verify(const VerifyConfig& config) {
  std::vector<std::string> selected = config.suites.empty() ? known_suites() : config.suites;
  for (const auto& name : selected) {
    if (std::find(known_suites().begin(), known_suites().end(), name) == known_suites().end()) {
      throw ConfigError("unknown suite '" + name + "'");
    }
  }
  Report report;
  report.command = "verify";
  PrecisionScope scope(config.precision_bits);
  for (const auto& [name, fn] : suite_table()) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    Suite s(config, report, name);
    fn(s);
  }
  report.finalize();
  return report;
}

Json report_to_json(const Report& report) {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = kVersion;
  j["command"] = report.command;
  j["config"] = report.config;
  j["summary"] = {{"total", report.records.size()}, {"passed", report.passed()}, {"failed", report.failed()}};
  Json records = Json::array();
  for (const auto& r : report.records) {
    Json rec;
    rec["name"] = r.name;
    rec["identity"] = r.identity;
    rec["inputs_digest"] = r.inputs_digest;
    rec["lhs"] = r.lhs;
    rec["rhs"] = r.rhs;
    rec["residual"] = r.residual;
    rec["verdict"] = r.pass ? "pass" : "fail";
    if (!r.error.empty()) rec["error"] = r.error;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j;
}

}  // namespace bethe_overlap
