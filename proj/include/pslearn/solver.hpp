#pragma once

#include <pslearn/cnf.hpp>

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace pslearn
{

enum class solve_status
{
  sat,
  unsat,
  timeout
};

char const* to_string( solve_status s ) noexcept;

using deadline = std::chrono::steady_clock::time_point;

/*! \brief Incremental SAT solver.
 *
 * One instance must only be used by one thread at a time; distinct instances
 * are independent.
 */
class solver_backend
{
public:
  virtual ~solver_backend() = default;

  virtual void add_clause( std::span<int const> clause ) = 0;
  void add_cnf( cnf const& formula );

  /*! \brief Solves under `assumptions`; gives up with timeout once `limit` passes. */
  virtual solve_status solve( std::span<int const> assumptions = {}, std::optional<deadline> limit = std::nullopt ) = 0;

  /*! \brief Value of a variable in the last model. */
  virtual bool value( int var ) = 0;

  /*! \brief Whether assumption `lit` was part of the last refutation. */
  virtual bool failed( int lit ) = 0;

  /*! \brief Values of variables 1..num_vars (index 0 unused). */
  std::vector<bool> model( int num_vars );
};

/*! \brief The bundled CDCL solver; `seed` feeds its internal randomization. */
std::unique_ptr<solver_backend> make_default_solver( std::uint64_t seed = 0u );

/*! \brief One-shot convenience: solve `formula`, returning the model when SAT. */
struct solve_result
{
  solve_status status = solve_status::unsat;
  std::vector<bool> model;
};

solve_result solve( cnf const& formula, std::optional<deadline> limit = std::nullopt );

} // namespace pslearn
