#pragma once

#include <pslearn/encoding.hpp>
#include <pslearn/formula.hpp>
#include <pslearn/semantics.hpp>
#include <pslearn/trace.hpp>

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pslearn
{

struct learner_config
{
  learning_mode mode = learning_mode::psl;
  int max_size = 8;
  /*! Wall-clock limit for the whole search. */
  std::chrono::duration<double> timeout = std::chrono::seconds( 1800 );
  /*! Caps the period copies b; results are re-verified and retried without the cap on failure. */
  std::optional<std::size_t> unroll_cap;
  /*! Budgets m solved concurrently for each n. */
  std::size_t jobs = 1u;
  /*! Treat instances beyond this many literals as a timeout (0 = unlimited). */
  std::size_t max_literals = 0u;
  /*! Seed for the solver's randomization (0 keeps its default). */
  std::uint64_t seed = 0u;
};

enum class learn_outcome
{
  found,
  exhausted,
  timeout
};

char const* to_string( learn_outcome outcome ) noexcept;

/*! \brief Statistics of one (n, m) instance. */
struct iteration_stats
{
  int n = 0;
  int m = 0;
  std::size_t copies = 1u;
  std::size_t variables = 0u;
  std::size_t clauses = 0u;
  solve_status verdict = solve_status::timeout;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  /*! Set when the instance was rebuilt with the exact bound after a failed check. */
  bool retried = false;
};

struct learner_result
{
  learn_outcome outcome = learn_outcome::exhausted;
  std::optional<formula> result;
  int n = 0;
  int m = 0;
  std::vector<iteration_stats> iterations;
  /*! Oracle verdict on the returned formula. */
  bool verified = false;
  /*! Why the search stopped early, when it did. */
  std::string reason;
  double seconds = 0.0;
};

/*! \brief Minimal formula consistent with a lasso sample (psl or ltl mode).
 *
 * Sizes n = 1, 2, ... are tried in order and, for each n, budgets m ascending.
 * Throws std::logic_error if a decoded model fails verification at the exact
 * unrolling bound, which would indicate an encoder defect.
 */
learner_result learn( sample const& s, learner_config const& config );

/*! \brief Minimal regular expression matching all positive and no negative words. */
learner_result learn( finite_sample const& s, learner_config const& config );

consistency_result verify_result( formula const& phi, sample const& s );
consistency_result verify_result( formula const& rho, finite_sample const& s );

struct minimality_report
{
  /*! UNSAT instances for every size below the result. */
  std::vector<iteration_stats> refutations;
  /*! Every (n, m) below the result size was refuted. */
  bool complete = false;
  /*! Largest size covered by brute force (0 when skipped). */
  std::size_t brute_force_limit = 0u;
  /*! A consistent formula smaller than the result, which would indicate an encoder defect. */
  std::optional<formula> counterexample;

  bool agrees() const noexcept { return complete && !counterexample; }
};

/*! \brief Evidence that a found formula is minimal, optionally cross-checked
 * by brute-force enumeration up to min(n - 1, `brute_force_max`). */
minimality_report minimality_certificate( sample const& s, learner_result const& result, learning_mode mode,
                                          std::size_t brute_force_max = 4u );
minimality_report minimality_certificate( finite_sample const& s, learner_result const& result, std::size_t brute_force_max = 4u );

/*! \brief The disjunction over positives of conjunctions over negatives of
 * "X^t literal" discriminators at the first differing position, in core form.
 * Consistent with every sample; an upper bound for the learner. */
formula trivial_solution( sample const& s );

} // namespace pslearn
