// Copyright 2026 The tunespace Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tunespace/searchspace.hpp"

#include "random_util.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>
#include <utility>
#include <stdexcept>

namespace tunespace {

NeighborMethod parse_neighbor_method(std::string_view name) {
  if (name == "hamming") return NeighborMethod::Hamming;
  if (name == "adjacent-index" || name == "adjacent") return NeighborMethod::AdjacentIndex;
  throw std::invalid_argument("unknown neighbor method '" + std::string(name) + "'");
}

namespace {

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

SearchSpace SearchSpace::build(const Problem& problem, const SolverOptions& options) {
  return SearchSpace(solve_all(problem, options), problem.cartesian_size());
}

SearchSpace::SearchSpace(SolutionSet solutions, std::uint64_t cartesian_size)
    : solutions_(std::move(solutions)), cartesian_size_(cartesian_size) {
  const std::size_t width = solutions_.width();
  const std::size_t rows = solutions_.size();
  if (rows > cartesian_size_) throw std::invalid_argument("more configurations than the Cartesian size allows");

  value_index_.resize(width);
  unique_.resize(width);
  rank_.resize(width);
  std::vector<std::vector<std::uint8_t>> seen(width);
  for (std::size_t p = 0; p < width; ++p) seen[p].assign(solutions_.domains()[p].size(), 0);
  const std::uint32_t* cell = solutions_.cells().data();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t p = 0; p < width; ++p) seen[p][*cell++] = 1;
  }
  for (std::size_t p = 0; p < width; ++p) {
    const Domain& dom = solutions_.domains()[p];
    for (std::size_t i = 0; i < dom.size(); ++i) value_index_[p].emplace(dom[i], static_cast<std::uint32_t>(i));
    std::vector<std::uint32_t> present;
    for (std::uint32_t i = 0; i < dom.size(); ++i) {
      if (seen[p][i]) present.push_back(i);
    }
    std::sort(present.begin(), present.end(),
              [&](std::uint32_t a, std::uint32_t b) { return ParamValue::order(dom[a], dom[b]) < 0; });
    rank_[p].assign(dom.size(), -1);
    for (std::size_t k = 0; k < present.size(); ++k) {
      rank_[p][present[k]] = static_cast<std::int32_t>(k);
      unique_[p].push_back(dom[present[k]]);
    }
  }

  stride_.assign(width, 0);
  keyed_ = true;
  std::vector<std::size_t> significance = solutions_.row_order();
  if (significance.empty()) {
    significance.resize(width);
    std::iota(significance.begin(), significance.end(), 0);
  }
  std::uint64_t radix = 1;
  for (std::size_t k = width; k-- > 0;) {
    const std::size_t p = significance[k];
    stride_[p] = radix;
    if (__builtin_mul_overflow(radix, solutions_.domains()[p].size(), &radix)) keyed_ = false;
  }
  if (keyed_) {
    build_keys(radix);
    return;
  }
  const std::uint64_t slots = std::bit_ceil(std::max<std::uint64_t>(16, 2 * rows));
  table_.assign(slots, 0);
  mask_ = slots - 1;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint32_t* row = solutions_.row(r).data();
    std::uint64_t h = hash_row(row) & mask_;
    while (table_[h] != 0) {
      if (std::equal(row, row + width, solutions_.row(table_[h] - 1).data())) {
        throw std::invalid_argument("duplicate configuration in search space");
      }
      h = (h + 1) & mask_;
    }
    table_[h] = static_cast<std::uint32_t>(r + 1);
  }
}

namespace {

// LSD radix sort of `items` on bits [from, to).
void radix_sort(std::vector<std::uint64_t>& items, unsigned from, unsigned to) {
  constexpr unsigned kBits = 8;
  constexpr std::size_t kBuckets = std::size_t{1} << kBits;
  std::vector<std::uint64_t> tmp(items.size());
  std::array<std::size_t, kBuckets> count;
  for (unsigned shift = from; shift < to; shift += kBits) {
    count.fill(0);
    for (std::uint64_t k : items) ++count[(k >> shift) & (kBuckets - 1)];
    std::size_t sum = 0;
    for (std::size_t& c : count) sum += std::exchange(c, sum);
    for (std::uint64_t k : items) tmp[count[(k >> shift) & (kBuckets - 1)]++] = k;
    items.swap(tmp);
  }
}

}  // namespace

void SearchSpace::build_keys(std::uint64_t radix) {
  const std::size_t rows = solutions_.size();
  bool ascending = true;
  std::uint64_t prev = 0;
  for (std::size_t r = 0; r < rows && ascending; ++r) {
    const std::uint64_t key = key_of(solutions_.row(r).data());
    ascending = r == 0 || key > prev;
    prev = key;
  }
  if (ascending) {
    // Strictly ascending rows are free of duplicates and searchable in place.
    rows_ascending_ = true;
    return;
  }
  keys_.resize(rows);
  key_rows_.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) keys_[r] = key_of(solutions_.row(r).data());
  const auto key_bits = static_cast<unsigned>(std::bit_width(radix - 1));
  const auto row_bits = static_cast<unsigned>(std::bit_width(rows));
  if (key_bits + row_bits <= 64) {
    // Sort (key, row) packed into one word.
    for (std::size_t r = 0; r < rows; ++r) keys_[r] = keys_[r] << row_bits | r;
    radix_sort(keys_, row_bits, row_bits + key_bits);
    const std::uint64_t row_mask = (std::uint64_t{1} << row_bits) - 1;
    for (std::size_t i = 0; i < rows; ++i) {
      key_rows_[i] = static_cast<std::uint32_t>(keys_[i] & row_mask);
      keys_[i] >>= row_bits;
    }
  } else {
    std::vector<std::uint32_t> order(rows);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return keys_[a] < keys_[b]; });
    std::vector<std::uint64_t> sorted(rows);
    for (std::size_t i = 0; i < rows; ++i) sorted[i] = keys_[order[i]];
    keys_.swap(sorted);
    key_rows_.swap(order);
  }
  if (std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end()) {
    throw std::invalid_argument("duplicate configuration in search space");
  }
}

std::uint64_t SearchSpace::key_of(const std::uint32_t* row) const {
  std::uint64_t key = 0;
  for (std::size_t p = 0; p < stride_.size(); ++p) key += row[p] * stride_[p];
  return key;
}

std::uint64_t SearchSpace::hash_row(const std::uint32_t* row) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t p = 0; p < solutions_.width(); ++p) h = mix(h ^ (row[p] + 0x632be59bd9b4e019ULL * (p + 1)));
  return h;
}

std::optional<std::size_t> SearchSpace::find_row(const std::uint32_t* row) const {
  if (keyed_) {
    const std::uint64_t key = key_of(row);
    if (rows_ascending_) {
      std::size_t lo = 0, hi = size();
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const std::uint64_t k = key_of(solutions_.row(mid).data());
        if (k == key) return mid;
        (k < key ? lo = mid + 1 : hi = mid);
      }
      return std::nullopt;
    }
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return key_rows_[static_cast<std::size_t>(it - keys_.begin())];
  }
  const std::size_t width = solutions_.width();
  for (std::uint64_t h = hash_row(row) & mask_; table_[h] != 0; h = (h + 1) & mask_) {
    const std::size_t r = table_[h] - 1;
    if (std::equal(row, row + width, solutions_.row(r).data())) return r;
  }
  return std::nullopt;
}

std::size_t SearchSpace::parameter(std::string_view name) const {
  const auto& names = solutions_.names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("unknown parameter '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

bool SearchSpace::encode(const Configuration& config, std::vector<std::uint32_t>& out) const {
  const std::size_t width = solutions_.width();
  if (config.size() != width) {
    throw std::invalid_argument("configuration has " + std::to_string(config.size()) + " values, expected " +
                                std::to_string(width));
  }
  out.resize(width);
  bool inside = true;
  for (std::size_t p = 0; p < width; ++p) {
    auto tag = solutions_.domains()[p].tag();
    if (tag && config[p].tag() != *tag) {
      throw std::invalid_argument("value " + config[p].to_string() + " for '" + solutions_.names()[p] + "' is " +
                                  std::string(tag_name(config[p].tag())) + ", expected " + std::string(tag_name(*tag)));
    }
    auto it = value_index_[p].find(config[p]);
    if (it == value_index_[p].end()) {
      inside = false;
    } else {
      out[p] = it->second;
    }
  }
  return inside;
}

const std::vector<ParamValue>& SearchSpace::unique_values(std::string_view name) const {
  return unique_[parameter(name)];
}

std::optional<std::size_t> SearchSpace::index_of(const Configuration& config) const {
  std::vector<std::uint32_t> row;
  if (!encode(config, row)) return std::nullopt;
  return find_row(row.data());
}

std::pair<ParamValue, ParamValue> SearchSpace::bounds(std::string_view name) const {
  const std::size_t p = parameter(name);
  if (empty()) throw std::domain_error("bounds of an empty search space");
  const auto& values = unique_[p];
  if (!values.front().is_numeric()) {
    throw std::invalid_argument("parameter '" + std::string(name) + "' is not numeric");
  }
  return {values.front(), values.back()};
}

std::vector<std::size_t> SearchSpace::neighbor_indices(const Configuration& config, NeighborMethod method,
                                                       std::size_t distance, NeighborStrategy strategy) const {
  if (distance < 1) throw std::invalid_argument("neighbor distance must be at least 1");
  std::vector<std::uint32_t> target;
  const bool inside = encode(config, target);
  const std::size_t width = solutions_.width();
  std::vector<std::size_t> out;

  if (method == NeighborMethod::AdjacentIndex) {
    if (!inside || !find_row(target.data())) {
      throw std::invalid_argument("adjacent-index neighbors need a configuration from the space");
    }
    std::vector<std::int32_t> pos(width);
    for (std::size_t p = 0; p < width; ++p) pos[p] = rank_[p][target[p]];
    for (std::size_t r = 0; r < size(); ++r) {
      auto row = solutions_.row(r);
      bool near = true, same = true;
      for (std::size_t p = 0; p < width && near; ++p) {
        const std::int32_t delta = rank_[p][row[p]] - pos[p];
        near = delta >= -1 && delta <= 1;
        same = same && delta == 0;
      }
      if (near && !same) out.push_back(r);
    }
    return out;
  }

  if (!inside) throw std::invalid_argument("hamming neighbors need values from the declared domains");
  if (strategy == NeighborStrategy::Auto) {
    // Number of configurations at distance 1..d: coefficients of prod(1 + (|D|-1) t).
    std::vector<double> ways(std::min(distance, width) + 1, 0.0);
    ways[0] = 1.0;
    for (const Domain& d : solutions_.domains()) {
      for (std::size_t k = ways.size() - 1; k > 0; --k) ways[k] += ways[k - 1] * static_cast<double>(d.size() - 1);
    }
    const double candidates = std::accumulate(ways.begin() + 1, ways.end(), 0.0);
    strategy = candidates < static_cast<double>(size()) ? NeighborStrategy::Enumerate : NeighborStrategy::Scan;
  }

  if (strategy == NeighborStrategy::Scan) {
    for (std::size_t r = 0; r < size(); ++r) {
      auto row = solutions_.row(r);
      std::size_t diff = 0;
      for (std::size_t p = 0; p < width && diff <= distance; ++p) diff += row[p] != target[p];
      if (diff >= 1 && diff <= distance) out.push_back(r);
    }
    return out;
  }

  std::vector<std::uint32_t> probe = target;
  const std::size_t max_changes = std::min(distance, width);
  auto visit = [&](auto&& self, std::size_t p, std::size_t budget) -> void {
    if (p == width) {
      if (budget < max_changes) {
        if (auto r = find_row(probe.data())) out.push_back(*r);
      }
      return;
    }
    self(self, p + 1, budget);
    if (budget == 0) return;
    const auto n = static_cast<std::uint32_t>(solutions_.domains()[p].size());
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == target[p]) continue;
      probe[p] = v;
      self(self, p + 1, budget - 1);
    }
    probe[p] = target[p];
  };
  visit(visit, 0, max_changes);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Configuration> SearchSpace::neighbors(const Configuration& config, NeighborMethod method,
                                                  std::size_t distance) const {
  std::vector<Configuration> out;
  for (std::size_t i : neighbor_indices(config, method, distance)) out.push_back(solutions_[i]);
  return out;
}

std::vector<std::size_t> SearchSpace::sample_indices(std::size_t n, std::uint64_t seed) const {
  if (n > size()) {
    throw std::invalid_argument("cannot sample " + std::to_string(n) + " of " + std::to_string(size()) +
                                " configurations");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first n slots end up a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + detail::uniform_below(rng, size() - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  return idx;
}

std::vector<Configuration> SearchSpace::sample(std::size_t n, std::uint64_t seed) const {
  std::vector<Configuration> out;
  for (std::size_t i : sample_indices(n, seed)) out.push_back(solutions_[i]);
  return out;
}

bool operator==(const SearchSpace& a, const SearchSpace& b) {
  return a.cartesian_size_ == b.cartesian_size_ && a.names() == b.names() && a.domains() == b.domains() &&
         a.solutions_.cells() == b.solutions_.cells();
}

}  // namespace tunespace
