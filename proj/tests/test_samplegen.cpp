#include "support.hpp"

#include <pslearn/samplegen.hpp>
#include <pslearn/semantics.hpp>

#include <doctest.h>

#include <algorithm>

using namespace pslearn;
using namespace pslearn::testing;

namespace
{

bool contains( std::vector<lasso_word> const& words, lasso_word const& w )
{
  return std::find( words.begin(), words.end(), w ) != words.end();
}

} // namespace

TEST_CASE( "length-one words split by a proposition" )
{
  gen_spec spec{ formula::prop( "p" ), props( { "p" } ), 200u, 1u, 1u, balance_policy::none };
  auto const s = generate( spec );
  CHECK( s.positives() == std::vector<lasso_word>{ lasso( "", "1" ) } );
  CHECK( s.negatives() == std::vector<lasso_word>{ lasso( "", "0" ) } );
}

TEST_CASE( "generated samples are consistent, disjoint and reproducible" )
{
  auto const seed = expand_derived( parse_formula( "{(p1 . p2)*} |-> q" ), "p1" );
  gen_spec spec{ seed, props( { "p1", "p2", "q" } ), 120u, 8u, 99u, balance_policy::none };
  auto const s = generate( spec );
  CHECK( is_consistent( seed, s ) );
  for ( auto const& w : s.positives() )
    CHECK_FALSE( contains( s.negatives(), w ) );
  CHECK( s.size() <= 120u );
  for ( auto const* side : { &s.positives(), &s.negatives() } )
    for ( auto const& w : *side )
      CHECK( w.length() <= 8u );
  CHECK( generate( spec ) == s );
  spec.rng_seed = 100u;
  CHECK_FALSE( generate( spec ) == s );

  spec.balance = balance_policy::equalize;
  auto const balanced = generate( spec );
  CHECK( balanced.positives().size() == balanced.negatives().size() );
  CHECK( is_consistent( seed, balanced ) );
}

TEST_CASE( "generation failures" )
{
  gen_spec trivial{ parse_formula( "p | !p" ), props( { "p" } ), 50u, 4u, 0u, balance_policy::none };
  CHECK_THROWS_AS( generate( trivial ), sample_error );
  gen_spec tiny{ formula::prop( "p" ), props( { "p" } ), 1u, 4u, 0u, balance_policy::none };
  CHECK_THROWS_AS( generate( tiny ), std::invalid_argument );
  gen_spec empty{ formula::prop( "p" ), props( { "p" } ), 10u, 0u, 0u, balance_policy::none };
  CHECK_THROWS_AS( generate( empty ), std::invalid_argument );
  gen_spec unknown{ formula::prop( "r" ), props( { "p" } ), 10u, 3u, 0u, balance_policy::none };
  CHECK_THROWS( generate( unknown ) );
}

TEST_CASE( "the succinctness family" )
{
  auto const s1 = succinctness_family( 1 );
  CHECK( s1.positives() == std::vector<lasso_word>{ lasso( "1;1;0", "1" ) } );
  CHECK( s1.negatives() == std::vector<lasso_word>{ lasso( "1;1;1;0", "1" ) } );
  auto const s2 = succinctness_family( 2 );
  CHECK( s2.positives()[0].prefix_length() == 5u );
  CHECK( s2.negatives()[0].prefix_length() == 6u );
  auto const swapped = succinctness_family( 2, true );
  CHECK( swapped.positives() == s2.negatives() );
  CHECK( swapped.negatives() == s2.positives() );
  CHECK_THROWS_AS( succinctness_family( 0 ), std::invalid_argument );

  auto const witness = parse_formula( "{(p . p)*} |-> X p" );
  for ( std::size_t n = 1u; n <= 4u; ++n )
  {
    auto const s = succinctness_family( n, true );
    CHECK( is_consistent( witness, s ) );
    gen_spec spec{ witness, s.propositions(), 60u, 2u * n + 3u, n, balance_policy::none };
    auto const generated = generate( spec );
    for ( auto const& w : generated.positives() )
      CHECK( evaluate( witness, w, s.propositions() ) );
    for ( auto const& w : generated.negatives() )
      CHECK_FALSE( evaluate( witness, w, s.propositions() ) );
  }
}
