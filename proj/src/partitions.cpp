#include "bethe_overlap/partitions.hpp"

#include <bit>
#include <string>

namespace bethe_overlap {

namespace {

constexpr std::size_t kMaxEnumerableSize = 62;

std::uint64_t smallest_mask(std::size_t k) { return k == 0 ? 0 : ((std::uint64_t{1} << k) - 1); }

// Next integer with the same popcount (Gosper's hack).
std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

Bipartition make_bipartition(const ParamSet& source, std::uint64_t mask) {
  Bipartition b;
  b.mask = mask;
  for (std::size_t k = 0; k < source.size(); ++k) {
    if ((mask >> k) & 1U) {
      b.source_indices_I.push_back(k);
    } else {
      b.source_indices_II.push_back(k);
    }
  }
  b.part_I = source.subset(b.source_indices_I);
  b.part_II = source.subset(b.source_indices_II);
  b.parity_sign = bipartition_parity(mask, source.size());
  return b;
}

}  // namespace

int bipartition_parity(std::uint64_t mask, std::size_t n) {
  // Inversions: pairs (i in I, j in II) with j < i.
  std::size_t inversions = 0;
  std::size_t seen_II = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if ((mask >> k) & 1U) {
      inversions += seen_II;
    } else {
      ++seen_II;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

BipartitionEnumerator::BipartitionEnumerator(ParamSet source, std::optional<std::size_t> size_I)
    : source_(std::move(source)), size_I_(size_I) {
  const std::size_t n = source_.size();
  if (n > kMaxEnumerableSize) throw InvalidArgument("bipartition enumeration limited to 62 elements");
  if (size_I_ && *size_I_ > n) throw InvalidArgument("size_I exceeds set size");
  end_mask_ = std::uint64_t{1} << n;
  next_mask_ = size_I_ ? smallest_mask(*size_I_) : 0;
}

std::optional<Bipartition> BipartitionEnumerator::next() {
  if (done_ || next_mask_ >= end_mask_) {
    done_ = true;
    return std::nullopt;
  }
  const std::uint64_t mask = next_mask_;
  if (size_I_) {
    if (mask == 0) {
      done_ = true;  // size_I == 0 has exactly one member
    } else {
      next_mask_ = next_same_popcount(mask);
    }
  } else {
    ++next_mask_;
  }
  return make_bipartition(source_, mask);
}

void for_each_bipartition(const ParamSet& s, std::optional<std::size_t> size_I,
                          const std::function<void(const Bipartition&)>& visit) {
  BipartitionEnumerator e(s, size_I);
  while (auto b = e.next()) visit(*b);
}

std::vector<Bipartition> enumerate_bipartitions(const ParamSet& s, std::optional<std::size_t> size_I) {
  std::vector<Bipartition> out;
  for_each_bipartition(s, size_I, [&](const Bipartition& b) { out.push_back(b); });
  return out;
}

Scalar partition_sum(const ParamSet& s, const PartitionTerm& term, bool use_parity, const Scalar& zero,
                     std::optional<std::size_t> size_I, Real* magnitude) {
  Scalar total = zero;
  for_each_bipartition(s, size_I, [&](const Bipartition& b) {
    Scalar value;
    try {
      value = term(b);
    } catch (const PartitionTermError&) {
      throw;
    } catch (const Error& e) {
      std::string where = "{";
      for (std::size_t k = 0; k < b.source_indices_I.size(); ++k) {
        if (k) where += ",";
        where += std::to_string(b.source_indices_I[k]);
      }
      where += "}";
      throw PartitionTermError(std::string(e.what()) + " [part I indices " + where + "]", b.source_indices_I);
    }
    if (magnitude) *magnitude += value.modulus();
    if (use_parity && b.parity_sign < 0) {
      total -= value;
    } else {
      total += value;
    }
  });
  return total;
}

}  // namespace bethe_overlap
