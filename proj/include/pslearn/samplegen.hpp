#pragma once

#include <pslearn/formula.hpp>
#include <pslearn/trace.hpp>

#include <cstddef>
#include <cstdint>

namespace pslearn
{

enum class balance_policy
{
  /*! Keep every sampled word. */
  none,
  /*! Truncate the larger side to the size of the smaller one. */
  equalize
};

struct gen_spec
{
  formula seed;
  proposition_set propositions;
  /*! Number of words drawn before deduplication (at least 2). */
  std::size_t budget = 100u;
  /*! Bound on |u| + |v| (at least 1). */
  std::size_t max_length = 15u;
  std::uint64_t rng_seed = 0u;
  balance_policy balance = balance_policy::none;
};

/*! \brief Draws lasso words and splits them by the seed formula.
 *
 * (|u|, |v|) is uniform over the pairs with |u| + |v| <= L and |v| >= 1 and
 * every proposition is set with probability 1/2. Words denoting the same
 * infinite word are merged, and the survivors are sorted by length, then
 * lexicographically, before partitioning. Throws sample_error when one side
 * stays empty and std::invalid_argument for an invalid spec.
 */
sample generate( gen_spec const& spec );

/*! \brief The two-word family {p}^{2n} 0 {p}^w versus {p}^{2n+1} 0 {p}^w;
 * `swap` exchanges the positive and the negative word. */
sample succinctness_family( std::size_t n, bool swap = false );

} // namespace pslearn
