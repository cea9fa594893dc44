#ifndef SL_VARIATES_HPP
#define SL_VARIATES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "sl/errors.hpp"
#include "sl/rng.hpp"

namespace sl {

// Blocked store of the pseudo-random variates driving all M simulations.
// Simulation indices are partitioned into G contiguous blocks; refreshing
// block k redraws the variates of exactly the simulations in that block and
// leaves every other block bit-identical.
class VariateStore {
 public:
  VariateStore() = default;
  VariateStore(int m, int normals_per_sim, int uniforms_per_sim, int blocks)
      : m_(m), n_norm_(normals_per_sim), n_unif_(uniforms_per_sim),
        g_(blocks),
        normals_(std::size_t(m) * normals_per_sim),
        uniforms_(std::size_t(m) * uniforms_per_sim) {
    if (m < 1 || blocks < 1 || blocks > m)
      throw invalid_input("VariateStore: need 1 <= G <= M");
  }

  int num_sims() const { return m_; }
  int num_blocks() const { return g_; }

  int block_of(int sim) const { return int((std::int64_t(sim) * g_) / m_); }
  // smallest sim with block_of(sim) == k: ceil(k * M / G)
  int block_begin(int k) const {
    return int((std::int64_t(k) * m_ + g_ - 1) / g_);
  }
  int block_end(int k) const {
    return int((std::int64_t(k + 1) * m_ + g_ - 1) / g_);
  }

  std::span<const double> normals(int sim) const {
    return {normals_.data() + std::size_t(sim) * n_norm_, std::size_t(n_norm_)};
  }
  std::span<const double> uniforms(int sim) const {
    return {uniforms_.data() + std::size_t(sim) * n_unif_, std::size_t(n_unif_)};
  }

  // Redraw every simulation's variates, in simulation-index order.
  void fill_all(Rng& rng) {
    for (int j = 0; j < m_; ++j) fill_sim(j, rng);
  }

  // Redraw one uniformly chosen block; returns the block index. With G = 1
  // no index is drawn, so the rng stream matches a fresh-variate fill.
  int refresh_block(Rng& rng) {
    const int k =
        g_ == 1 ? 0 : std::uniform_int_distribution<int>(0, g_ - 1)(rng);
    for (int j = block_begin(k); j < block_end(k); ++j) fill_sim(j, rng);
    return k;
  }

  bool operator==(const VariateStore&) const = default;

 private:
  void fill_sim(int j, Rng& rng) {
    fill_normals(rng, {normals_.data() + std::size_t(j) * n_norm_,
                       std::size_t(n_norm_)});
    fill_uniforms(rng, {uniforms_.data() + std::size_t(j) * n_unif_,
                        std::size_t(n_unif_)});
  }

  int m_ = 0;
  int n_norm_ = 0;
  int n_unif_ = 0;
  int g_ = 1;
  std::vector<double> normals_;
  std::vector<double> uniforms_;
};

}  // namespace sl

#endif
