#include <pslearn/enumerate.hpp>
#include <pslearn/learner.hpp>
#include <pslearn/solver.hpp>

#include <exception>
#include <numeric>
#include <thread>

namespace pslearn
{

char const* to_string( learn_outcome outcome ) noexcept
{
  switch ( outcome )
  {
  case learn_outcome::found: return "FOUND";
  case learn_outcome::exhausted: return "EXHAUSTED";
  case learn_outcome::timeout: return "TIMEOUT";
  }
  return "?";
}

consistency_result verify_result( formula const& phi, sample const& s )
{
  return is_consistent( phi, s );
}

consistency_result verify_result( formula const& rho, finite_sample const& s )
{
  return is_consistent( rho, s );
}

namespace
{

using clock = std::chrono::steady_clock;

double seconds_since( clock::time_point start )
{
  return std::chrono::duration<double>( clock::now() - start ).count();
}

struct attempt
{
  iteration_stats stats;
  std::optional<formula> found;
  std::string reason;
};

encoder build_instance( sample const& s, node_budget budget, learning_mode mode, encoding_options const& options )
{
  return build_phi( s, budget, mode, options );
}

encoder build_instance( finite_sample const& s, node_budget budget, learning_mode, encoding_options const& options )
{
  return build_phi( s, budget.n, options );
}

template<typename Sample>
attempt solve_instance( Sample const& s, node_budget budget, learning_mode mode, learner_config const& config, deadline limit,
                        std::optional<std::size_t> cap )
{
  attempt result;
  result.stats.n = budget.n;
  result.stats.m = budget.m;
  encoding_options options;
  options.unroll_cap = cap;
  options.max_literals = config.max_literals;
  options.limit = limit;

  auto const start = clock::now();
  std::optional<encoder> enc;
  try
  {
    enc.emplace( build_instance( s, budget, mode, options ) );
  }
  catch ( budget_exceeded const& e )
  {
    result.stats.build_seconds = seconds_since( start );
    result.stats.verdict = solve_status::timeout;
    result.reason = e.what();
    return result;
  }
  result.stats.copies = enc->copies();
  result.stats.variables = static_cast<std::size_t>( enc->variables().size() );
  result.stats.clauses = enc->clauses().num_clauses();
  result.stats.build_seconds = seconds_since( start );

  auto const solve_start = clock::now();
  auto solver = make_default_solver( config.seed );
  solver->add_cnf( enc->take_clauses() );
  result.stats.verdict = solver->solve( {}, limit );
  result.stats.solve_seconds = seconds_since( solve_start );
  if ( result.stats.verdict == solve_status::timeout )
  {
    result.reason = "time limit reached while solving n = " + std::to_string( budget.n ) + ", m = " + std::to_string( budget.m );
    return result;
  }
  if ( result.stats.verdict == solve_status::unsat )
    return result;

  auto const model = solver->model( enc->variables().size() );
  auto const candidate = decode( enc->extract( model ), s.propositions(), mode != learning_mode::regex );
  if ( verify_result( candidate, s ) )
  {
    result.found = candidate;
    return result;
  }
  bool const capped = mode != learning_mode::regex && enc->copies() < unroll_bound( budget.m );
  if ( !capped )
    throw std::logic_error( "decoded formula " + to_string( candidate ) + " is inconsistent with the sample at n = " +
                            std::to_string( budget.n ) + ", m = " + std::to_string( budget.m ) );
  auto retry = solve_instance( s, budget, mode, config, limit, std::nullopt );
  retry.stats.retried = true;
  return retry;
}

std::vector<int> budgets_for( int n, learning_mode mode )
{
  if ( mode == learning_mode::regex )
    return { n };
  if ( mode == learning_mode::ltl )
    return { 0 };
  std::vector<int> ms( static_cast<std::size_t>( n ) );
  std::iota( ms.begin(), ms.end(), 0 );
  return ms;
}

template<typename Sample>
learner_result search( Sample const& s, learner_config const& config, learning_mode mode )
{
  if ( config.max_size < 1 )
    throw std::invalid_argument( "max size must be at least 1" );
  if ( config.timeout.count() <= 0.0 )
    throw std::invalid_argument( "timeout must be positive" );
  auto const start = clock::now();
  auto const limit = start + std::chrono::duration_cast<clock::duration>( config.timeout );
  learner_result result;
  auto const finish = [&]( learn_outcome outcome, std::string reason ) {
    result.outcome = outcome;
    result.reason = std::move( reason );
    result.seconds = seconds_since( start );
    return result;
  };

  for ( int n = 1; n <= config.max_size; ++n )
  {
    auto const ms = budgets_for( n, mode );
    std::vector<attempt> attempts( ms.size() );
    auto const jobs = std::max<std::size_t>( config.jobs, 1u );
    for ( std::size_t first = 0u; first < ms.size(); first += jobs )
    {
      auto const last = std::min( ms.size(), first + jobs );
      if ( clock::now() >= limit )
        return finish( learn_outcome::timeout, "time limit reached before n = " + std::to_string( n ) );
      if ( last - first == 1u )
        attempts[first] = solve_instance( s, { n, ms[first] }, mode, config, limit, config.unroll_cap );
      else
      {
        std::vector<std::exception_ptr> errors( last - first );
        std::vector<std::thread> workers;
        for ( auto k = first; k < last; ++k )
          workers.emplace_back( [&, k] {
            try
            {
              attempts[k] = solve_instance( s, { n, ms[k] }, mode, config, limit, config.unroll_cap );
            }
            catch ( ... )
            {
              errors[k - first] = std::current_exception();
            }
          } );
        for ( auto& w : workers )
          w.join();
        for ( auto const& e : errors )
          if ( e )
            std::rethrow_exception( e );
      }

      /* decide in m order so the answer does not depend on completion order */
      for ( auto k = first; k < last; ++k )
      {
        auto const& a = attempts[k];
        result.iterations.push_back( a.stats );
        if ( a.stats.verdict == solve_status::timeout )
          return finish( learn_outcome::timeout, a.reason );
        if ( a.found )
        {
          if ( size( *a.found ) != static_cast<std::size_t>( n ) )
            throw std::logic_error( "decoded formula " + to_string( *a.found ) + " has fewer than " + std::to_string( n ) + " nodes" );
          result.result = a.found;
          result.n = n;
          result.m = a.stats.m;
          result.verified = true;
          return finish( learn_outcome::found, {} );
        }
      }
    }
  }
  return finish( learn_outcome::exhausted, "no consistent formula with at most " + std::to_string( config.max_size ) + " nodes" );
}

bool refuted_below( std::vector<iteration_stats> const& iterations, int n_found, learning_mode mode )
{
  for ( int n = 1; n < n_found; ++n )
    for ( auto const m : budgets_for( n, mode ) )
    {
      bool refuted = false;
      for ( auto const& it : iterations )
        refuted = refuted || ( it.n == n && it.m == m && it.verdict == solve_status::unsat );
      if ( !refuted )
        return false;
    }
  return true;
}

template<typename Sample>
minimality_report certify( Sample const& s, learner_result const& result, learning_mode mode, std::size_t brute_force_max )
{
  minimality_report report;
  if ( result.outcome != learn_outcome::found )
    return report;
  for ( auto const& it : result.iterations )
    if ( it.n < result.n )
      report.refutations.push_back( it );
  report.complete = refuted_below( result.iterations, result.n, mode );
  report.brute_force_limit = std::min( static_cast<std::size_t>( result.n - 1 ), brute_force_max );
  if ( report.brute_force_limit > 0u )
    for ( auto const& f : enumerate_formulas( s.propositions(), report.brute_force_limit, mode ) )
      if ( verify_result( f, s ) )
      {
        report.counterexample = f;
        break;
      }
  return report;
}

formula next_power( formula f, std::size_t times )
{
  for ( std::size_t k = 0u; k < times; ++k )
    f = formula::next( f );
  return f;
}

} // namespace

learner_result learn( sample const& s, learner_config const& config )
{
  if ( config.mode == learning_mode::regex )
    throw std::invalid_argument( "regex mode expects a sample of finite words" );
  return search( s, config, config.mode );
}

learner_result learn( finite_sample const& s, learner_config const& config )
{
  return search( s, config, learning_mode::regex );
}

minimality_report minimality_certificate( sample const& s, learner_result const& result, learning_mode mode, std::size_t brute_force_max )
{
  return certify( s, result, mode, brute_force_max );
}

minimality_report minimality_certificate( finite_sample const& s, learner_result const& result, std::size_t brute_force_max )
{
  return certify( s, result, learning_mode::regex, brute_force_max );
}

formula trivial_solution( sample const& s )
{
  auto const& props = s.propositions();
  std::optional<formula> disjunction;
  for ( auto const& alpha : s.positives() )
  {
    std::optional<formula> conjunction;
    for ( auto const& beta : s.negatives() )
    {
      auto const horizon = std::max( alpha.prefix_length(), beta.prefix_length() ) +
                           std::lcm( alpha.period_length(), beta.period_length() );
      std::optional<formula> discriminator;
      for ( std::size_t t = 0u; t < horizon && !discriminator; ++t )
      {
        auto const diff = alpha.at( t ).bits ^ beta.at( t ).bits;
        if ( diff == 0u )
          continue;
        std::size_t p = 0u;
        while ( !( ( diff >> p ) & 1u ) )
          ++p;
        auto literal = formula::prop( props.name( p ) );
        if ( !alpha.at( t ).has( p ) )
          literal = formula::neg( literal );
        discriminator = next_power( literal, t );
      }
      if ( !discriminator )
        throw std::logic_error( "a positive and a negative trace denote the same word" );
      conjunction = conjunction ? formula::conj( *conjunction, *discriminator ) : *discriminator;
    }
    auto const term = conjunction ? *conjunction : formula::tt();
    disjunction = disjunction ? formula::disj( *disjunction, term ) : term;
  }
  return expand_derived( disjunction ? *disjunction : formula::ff(), props.name( 0u ) );
}

} // namespace pslearn
