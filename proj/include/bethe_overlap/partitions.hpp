#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bethe_overlap/kernels.hpp"

namespace bethe_overlap {

/// One split {s_I, s_II} of a source set. Parts keep source order.
struct Bipartition {
  ParamSet part_I;
  ParamSet part_II;
  std::vector<std::size_t> source_indices_I;
  std::vector<std::size_t> source_indices_II;
  /// Sign of the permutation taking (part_I, part_II) back to source order.
  int parity_sign = 1;
  /// Bit k set iff source element k is in part_I.
  std::uint64_t mask = 0;

  bool in_part_I(std::size_t k) const { return (mask >> k) & 1U; }
};

/// Streams all 2^n bipartitions (or the C(n, size_I) of fixed cardinality)
/// in increasing mask order without materializing the list.
class BipartitionEnumerator {
 public:
  explicit BipartitionEnumerator(ParamSet source, std::optional<std::size_t> size_I = std::nullopt);

  std::optional<Bipartition> next();

 private:
  ParamSet source_;
  std::optional<std::size_t> size_I_;
  std::uint64_t next_mask_ = 0;
  std::uint64_t end_mask_ = 0;
  bool done_ = false;
};

/// Sign of the permutation (I then II) -> source order for a mask over n elements.
int bipartition_parity(std::uint64_t mask, std::size_t n);

void for_each_bipartition(const ParamSet& s, std::optional<std::size_t> size_I,
                          const std::function<void(const Bipartition&)>& visit);

std::vector<Bipartition> enumerate_bipartitions(const ParamSet& s, std::optional<std::size_t> size_I = std::nullopt);

using PartitionTerm = std::function<Scalar(const Bipartition&)>;

/// A term evaluator failed on a particular bipartition.
class PartitionTermError : public Error {
 public:
  PartitionTermError(const std::string& what, std::vector<std::size_t> indices_I)
      : Error(what), indices_I_(std::move(indices_I)) {}
  const std::vector<std::size_t>& indices_I() const noexcept { return indices_I_; }

 private:
  std::vector<std::size_t> indices_I_;
};

/// Sum of `term` over bipartitions of `s`, each weighted by its parity when
/// `use_parity` is set. `zero` fixes the mode of an empty sum. When `magnitude`
/// is given, the moduli of the terms are added to it.
Scalar partition_sum(const ParamSet& s, const PartitionTerm& term, bool use_parity, const Scalar& zero,
                     std::optional<std::size_t> size_I = std::nullopt, Real* magnitude = nullptr);

}  // namespace bethe_overlap
