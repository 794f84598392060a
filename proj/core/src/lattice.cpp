#include "hyperwave/lattice.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace hyperwave {

std::size_t Lattice::VecHash::operator()(const std::vector<int>& v) const noexcept {
  // FNV-1a over the byte image of the entries.
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    auto u = static_cast<std::uint32_t>(x);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

Lattice::Lattice(int n, int N) : n_(n), N_(N) {
  if (n < 1) throw DimensionMismatch("core", "lattice", "n must be >= 1");
  if (N < 0) throw PreconditionViolation("core", "lattice", "N must be >= 0");

  level_begin_.reserve(static_cast<std::size_t>(N) + 2);
  for (long m = 0; m <= N; ++m) {
    level_begin_.push_back(static_cast<int>(comps_.size()));
    auto of_level = enumerate_level(n, m);
    for (auto& c : of_level) {
      index_.emplace(c.nu, static_cast<int>(comps_.size()));
      levels_.push_back(m);
      comps_.push_back(std::move(c));
    }
  }
  level_begin_.push_back(static_cast<int>(comps_.size()));

  roots_ = root_system(n);
  rho_pairings_.resize(roots_.size());
  for (std::size_t r = 0; r < roots_.size(); ++r) {
    rho_pairings_[r] = pairing_rho(roots_[r], n);
  }

  desc_begin_.assign(comps_.size() + 1, 0);
  std::vector<int> target(static_cast<std::size_t>(n));
  for (int idx = 0; idx < size(); ++idx) {
    desc_begin_[static_cast<std::size_t>(idx)] = descents_.size();
    const auto& nu = comps_[static_cast<std::size_t>(idx)].nu;
    const long m = levels_[static_cast<std::size_t>(idx)];
    for (std::size_t r = 0; r < roots_.size(); ++r) {
      const long step = rho_pairings_[r];
      if (step <= 0 || step > m) continue;
      const auto av = roots_[r].vec(n);
      const long lmax = m / step;
      for (long l = 1; l <= lmax; ++l) {
        for (int i = 0; i < n; ++i) {
          target[static_cast<std::size_t>(i)] =
              nu[static_cast<std::size_t>(i)] - static_cast<int>(l) * av[static_cast<std::size_t>(i)];
        }
        const auto it = index_.find(target);
        if (it == index_.end()) continue;
        descents_.push_back({static_cast<std::uint16_t>(r), static_cast<std::uint16_t>(l), it->second});
      }
    }
  }
  desc_begin_[comps_.size()] = descents_.size();
}

int Lattice::index_of(const Composition& nu) const {
  if (static_cast<int>(nu.nu.size()) != n_) {
    throw DimensionMismatch("core", "lattice", "composition size differs from lattice rank");
  }
  const auto it = index_.find(nu.nu);
  return it == index_.end() ? -1 : it->second;
}

std::shared_ptr<const Lattice> Lattice::get(int n, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::weak_ptr<const Lattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, N}];
  if (auto live = slot.lock()) return live;
  auto fresh = std::make_shared<const Lattice>(n, N);
  slot = fresh;
  return fresh;
}

}  // namespace hyperwave
