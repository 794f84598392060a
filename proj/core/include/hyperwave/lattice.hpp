#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hyperwave/core.hpp"

namespace hyperwave {

// Dominance-ordered index of all nu >= 0 with level(nu) <= N for fixed n,
// together with precomputed descent edges nu -> nu - l*alpha.  The edge data
// depends only on (n, N), so one lattice is shared by every coefficient table
// of that size.
class Lattice {
 public:
  struct Descent {
    std::uint16_t root;  // index into roots()
    std::uint16_t l;     // step multiplicity, l >= 1
    std::int32_t src;    // lattice index of nu - l*alpha
  };

  Lattice(int n, int N);

  int n() const { return n_; }
  int N() const { return N_; }
  int size() const { return static_cast<int>(comps_.size()); }

  const std::vector<Composition>& compositions() const { return comps_; }
  const Composition& composition(int idx) const { return comps_[idx]; }
  long level_of(int idx) const { return levels_[idx]; }
  // Entries of level m occupy [level_begin(m), level_begin(m+1)).
  int level_begin(long m) const { return level_begin_[static_cast<std::size_t>(m)]; }

  // -1 when nu is not dominant or level(nu) > N.
  int index_of(const Composition& nu) const;

  const std::vector<Root>& roots() const { return roots_; }
  long root_pairing_rho(int root_idx) const { return rho_pairings_[root_idx]; }

  const Descent* descents_begin(int idx) const { return descents_.data() + desc_begin_[idx]; }
  const Descent* descents_end(int idx) const { return descents_.data() + desc_begin_[idx + 1]; }

  // Shared, thread-safe cache keyed by (n, N).
  static std::shared_ptr<const Lattice> get(int n, int N);

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };

  int n_, N_;
  std::vector<Composition> comps_;
  std::vector<long> levels_;
  std::vector<int> level_begin_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
  std::vector<Root> roots_;
  std::vector<long> rho_pairings_;
  std::vector<std::size_t> desc_begin_;
  std::vector<Descent> descents_;
};

}  // namespace hyperwave
