#include <pslearn/solver.hpp>

#include <cadical.hpp>

namespace pslearn
{

char const* to_string( solve_status s ) noexcept
{
  switch ( s )
  {
  case solve_status::sat: return "SAT";
  case solve_status::unsat: return "UNSAT";
  case solve_status::timeout: return "TIMEOUT";
  }
  return "?";
}

void solver_backend::add_cnf( cnf const& formula )
{
  auto const& lits = formula.literals();
  std::size_t begin = 0u;
  for ( std::size_t k = 0u; k < lits.size(); ++k )
  {
    if ( lits[k] == 0 )
    {
      add_clause( std::span<int const>( lits.data() + begin, k - begin ) );
      begin = k + 1u;
    }
  }
}

std::vector<bool> solver_backend::model( int num_vars )
{
  std::vector<bool> values( static_cast<std::size_t>( num_vars ) + 1u, false );
  for ( int v = 1; v <= num_vars; ++v )
    values[static_cast<std::size_t>( v )] = value( v );
  return values;
}

namespace
{

class deadline_terminator : public CaDiCaL::Terminator
{
public:
  explicit deadline_terminator( deadline limit ) : _limit( limit ) {}
  bool terminate() override { return std::chrono::steady_clock::now() >= _limit; }

private:
  deadline _limit;
};

class cadical_backend final : public solver_backend
{
public:
  explicit cadical_backend( std::uint64_t seed )
  {
    _solver.set( "quiet", 1 );
    if ( seed != 0u )
      _solver.set( "seed", static_cast<int>( seed % 2147483647u ) );
  }

  void add_clause( std::span<int const> clause ) override
  {
    for ( auto const lit : clause )
      _solver.add( lit );
    _solver.add( 0 );
  }

  solve_status solve( std::span<int const> assumptions, std::optional<deadline> limit ) override
  {
    for ( auto const lit : assumptions )
      _solver.assume( lit );
    std::optional<deadline_terminator> terminator;
    if ( limit )
    {
      if ( std::chrono::steady_clock::now() >= *limit )
      {
        _solver.reset_assumptions();
        return solve_status::timeout;
      }
      terminator.emplace( *limit );
      _solver.connect_terminator( &*terminator );
    }
    int const result = _solver.solve();
    if ( terminator )
      _solver.disconnect_terminator();
    _max_var = _solver.vars();
    switch ( result )
    {
    case 10: return solve_status::sat;
    case 20: return solve_status::unsat;
    default: return solve_status::timeout;
    }
  }

  bool value( int var ) override { return var <= _max_var && _solver.val( var ) > 0; }
  bool failed( int lit ) override { return _solver.failed( lit ); }

private:
  CaDiCaL::Solver _solver;
  int _max_var = 0;
};

} // namespace

std::unique_ptr<solver_backend> make_default_solver( std::uint64_t seed )
{
  return std::make_unique<cadical_backend>( seed );
}

solve_result solve( cnf const& formula, std::optional<deadline> limit )
{
  auto backend = make_default_solver();
  backend->add_cnf( formula );
  solve_result result;
  result.status = backend->solve( {}, limit );
  if ( result.status == solve_status::sat )
    result.model = backend->model( formula.num_vars() );
  return result;
}

} // namespace pslearn
