#include "support.hpp"

#include <pslearn/enumerate.hpp>
#include <pslearn/learner.hpp>
#include <pslearn/samplegen.hpp>

#include <doctest.h>

using namespace pslearn;
using namespace pslearn::testing;

namespace
{

learner_config config_for( learning_mode mode, int max_size = 8 )
{
  learner_config config;
  config.mode = mode;
  config.max_size = max_size;
  config.timeout = std::chrono::seconds( 120 );
  return config;
}

std::optional<std::size_t> brute_force_minimum( sample const& s, std::size_t max_size, learning_mode mode )
{
  for ( auto const& g : enumerate_formulas( s.propositions(), max_size, mode ) )
    if ( is_consistent( g, s ) )
      return size( g );
  return std::nullopt;
}

} // namespace

TEST_CASE( "a single proposition separates the simplest sample" )
{
  sample const s( props( { "p" } ), { lasso( "", "1" ) }, { lasso( "", "0" ) } );
  auto const r = learn( s, config_for( learning_mode::psl ) );
  REQUIRE( r.outcome == learn_outcome::found );
  CHECK( *r.result == formula::prop( "p" ) );
  CHECK( r.n == 1 );
  CHECK( r.m == 0 );
  CHECK( r.verified );
  CHECK( r.iterations.size() == 1u );
  CHECK( verify_result( *r.result, s ) );
  auto const wrong = verify_result( formula::neg( formula::prop( "p" ) ), s );
  CHECK_FALSE( wrong );
  CHECK( wrong.witness->positive );

  auto const certificate = minimality_certificate( s, r, learning_mode::psl );
  CHECK( certificate.refutations.empty() );
  CHECK( certificate.brute_force_limit == 0u );
  CHECK( certificate.agrees() );
}

TEST_CASE( "LTL mode on alternating traces" )
{
  sample const s( props( { "p" } ), { lasso( "", "1;0" ) }, { lasso( "", "0;1" ) } );
  auto const r = learn( s, config_for( learning_mode::ltl ) );
  REQUIRE( r.outcome == learn_outcome::found );
  CHECK( *r.result == formula::prop( "p" ) );
}

TEST_CASE( "regex mode finds a size-3 expression" )
{
  finite_sample const s( props( { "p", "q" } ), { word( "10;01" ) }, { word( "01;10" ) } );
  auto const r = learn( s, config_for( learning_mode::regex ) );
  REQUIRE( r.outcome == learn_outcome::found );
  CHECK( size( *r.result ) == 3u );
  CHECK( r.result->is_regex() );
  CHECK( is_consistent( *r.result, s ) );
  auto const certificate = minimality_certificate( s, r );
  CHECK( certificate.complete );
  CHECK( certificate.brute_force_limit == 2u );
  CHECK_FALSE( certificate.counterexample );
  CHECK( certificate.refutations.size() == 2u );
  for ( auto const& it : certificate.refutations )
    CHECK( it.verdict == solve_status::unsat );
}

TEST_CASE( "outcomes other than success" )
{
  sample const s( props( { "p" } ), { lasso( "0;0", "1" ) }, { lasso( "0;0", "0" ) } );
  auto const exhausted = learn( s, config_for( learning_mode::ltl, 2 ) );
  CHECK( exhausted.outcome == learn_outcome::exhausted );
  CHECK_FALSE( exhausted.result );
  CHECK( exhausted.iterations.size() == 2u );
  CHECK( learn( s, config_for( learning_mode::ltl, 3 ) ).outcome == learn_outcome::found );

  auto tight = config_for( learning_mode::psl );
  tight.max_literals = 50u;
  auto const limited = learn( s, tight );
  CHECK( limited.outcome == learn_outcome::timeout );
  CHECK_FALSE( limited.reason.empty() );

  auto bad = config_for( learning_mode::psl, 0 );
  CHECK_THROWS_AS( learn( s, bad ), std::invalid_argument );
  auto no_time = config_for( learning_mode::psl );
  no_time.timeout = std::chrono::seconds( 0 );
  CHECK_THROWS_AS( learn( s, no_time ), std::invalid_argument );
  CHECK_THROWS_AS( learn( s, config_for( learning_mode::regex ) ), std::invalid_argument );
}

TEST_CASE( "parallel budgets and unroll caps give the sequential answer" )
{
  auto const s = succinctness_family( 1, true );
  auto const sequential = learn( s, config_for( learning_mode::psl ) );
  REQUIRE( sequential.outcome == learn_outcome::found );
  auto parallel_config = config_for( learning_mode::psl );
  parallel_config.jobs = 3u;
  auto const parallel = learn( s, parallel_config );
  REQUIRE( parallel.outcome == learn_outcome::found );
  CHECK( parallel.n == sequential.n );
  CHECK( parallel.m == sequential.m );
  CHECK( parallel.iterations.size() == sequential.iterations.size() );

  auto capped_config = config_for( learning_mode::psl );
  capped_config.unroll_cap = 1u;
  auto const capped = learn( s, capped_config );
  REQUIRE( capped.outcome == learn_outcome::found );
  CHECK( capped.verified );
  CHECK( is_consistent( *capped.result, s ) );
}

TEST_CASE( "learned sizes match brute force on random samples" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 61 );
  int compared = 0;
  for ( int round = 0; round < 10; ++round )
  {
    std::vector<lasso_word> pos, neg;
    for ( int k = 0; k < 4; ++k )
    {
      auto const w = random_lasso( rng, 4, 2 );
      bool clash = false;
      for ( auto const* side : { &pos, &neg } )
        for ( auto const& o : *side )
          clash = clash || same_infinite_word( o, w );
      if ( !clash )
        ( k % 2 ? neg : pos ).push_back( w );
    }
    sample const s( pq, pos, neg );
    auto const expected = brute_force_minimum( s, 3, learning_mode::psl );
    auto const r = learn( s, config_for( learning_mode::psl, 3 ) );
    if ( expected )
    {
      REQUIRE( r.outcome == learn_outcome::found );
      CHECK( size( *r.result ) == *expected );
      CHECK( minimality_certificate( s, r, learning_mode::psl ).agrees() );
      ++compared;
    }
    else
      CHECK( r.outcome == learn_outcome::exhausted );
  }
  CHECK( compared > 0 );
}

TEST_CASE( "the first-difference construction bounds the learned size" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 67 );
  for ( int round = 0; round < 6; ++round )
  {
    auto const a = random_lasso( rng, 3, 2 );
    auto const b = random_lasso( rng, 3, 2 );
    if ( same_infinite_word( a, b ) )
      continue;
    sample const s( pq, { a }, { b } );
    auto const bound = size( trivial_solution( s ) );
    auto const r = learn( s, config_for( learning_mode::psl, static_cast<int>( bound ) ) );
    REQUIRE( r.outcome == learn_outcome::found );
    CHECK( size( *r.result ) <= bound );
  }
}
