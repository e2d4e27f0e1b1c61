#include "support.hpp"

#include <pslearn/trace.hpp>

#include <doctest.h>

using namespace pslearn;
using namespace pslearn::testing;

TEST_CASE( "canonical_position folds positions into uv" )
{
  CHECK( canonical_position( 1, 2, 0 ) == 0 );
  CHECK( canonical_position( 1, 2, 3 ) == 1 );
  CHECK( canonical_position( 1, 2, 4 ) == 2 );
  CHECK( canonical_position( 0, 1, 17 ) == 0 );
  CHECK( canonical_position( 3, 4, 6 ) == 6 );
}

TEST_CASE( "suffix_successor wraps to the start of the period" )
{
  CHECK( suffix_successor( 1, 2, 0 ) == 1 );
  CHECK( suffix_successor( 1, 2, 2 ) == 1 );
  CHECK( suffix_successor( 0, 1, 0 ) == 0 );
  CHECK_THROWS_AS( suffix_successor( 1, 2, 3 ), std::out_of_range );
}

TEST_CASE( "unroll repeats the period" )
{
  CHECK( unroll( lasso( "0", "1" ), 2 ) == word( "0;1;1" ) );
  CHECK( unroll( lasso( "", "1;0" ), 1 ) == word( "1;0" ) );
  CHECK( unroll( lasso( "1", "0" ), 3 ) == word( "1;0;0;0" ) );
}

TEST_CASE( "lasso words require a nonempty period" )
{
  CHECK_THROWS_AS( lasso_word( word( "1" ), {} ), std::invalid_argument );
  auto const w = lasso( "1;0", "1;1;0" );
  CHECK( w.length() == 5 );
  CHECK( w.at( 7 ) == w.at( canonical_position( 2, 3, 7 ) ) );
}

TEST_CASE( "normalize reduces the period to its primitive root and shortens the prefix" )
{
  auto const w = normalize( lasso( "1;0;1", "0;1;0;1" ) );
  CHECK( w.prefix_length() == 0 );
  CHECK( w.period() == word( "1;0" ) );
  CHECK( same_infinite_word( lasso( "1", "1" ), lasso( "", "1;1" ) ) );
  CHECK_FALSE( same_infinite_word( lasso( "1", "0" ), lasso( "", "0" ) ) );
}

TEST_CASE( "text samples" )
{
  SUBCASE( "basic positive and negative trace" )
  {
    auto const s = parse_sample( "p\n1::1\n---\n0::0\n", sample_format::text );
    CHECK( s.propositions() == props( { "p" } ) );
    REQUIRE( s.positives().size() == 1 );
    REQUIRE( s.negatives().size() == 1 );
    CHECK( s.positives()[0] == lasso( "1", "1" ) );
    CHECK( s.negatives()[0] == lasso( "0", "0" ) );
  }
  SUBCASE( "a trace on both sides is rejected" )
  {
    CHECK_THROWS_AS( parse_sample( "p\n1::1\n---\n1::1\n", sample_format::text ), sample_error );
  }
  SUBCASE( "an empty period is a syntax error with a position" )
  {
    try
    {
      parse_sample( "p\n1::\n---\n0::0\n", sample_format::text );
      FAIL( "expected a parse error" );
    }
    catch ( parse_error const& e )
    {
      CHECK( e.line() == 2 );
    }
  }
  SUBCASE( "symbols must have one bit per proposition" )
  {
    CHECK_THROWS_AS( parse_sample( "p,q\n1::1\n", sample_format::text ), parse_error );
  }
  SUBCASE( "duplicates within a side are merged" )
  {
    auto const s = parse_sample( "p\n1::1\n1::1\n---\n0::0\n", sample_format::text );
    CHECK( s.positives().size() == 1 );
  }
  SUBCASE( "empty prefix" )
  {
    auto const s = parse_sample( "p,q\n::10;01\n", sample_format::text );
    CHECK( s.positives()[0] == lasso( "", "10;01" ) );
  }
}

TEST_CASE( "json samples" )
{
  auto const s = parse_sample( R"({"propositions":["p","q"],
    "positive":[{"prefix":[[1,0]],"period":[[0,1]]}],
    "negative":[{"prefix":[],"period":[[1,1]]}]})",
                               sample_format::json );
  CHECK( s.positives()[0] == lasso( "10", "01" ) );
  CHECK( s.negatives()[0] == lasso( "", "11" ) );
  CHECK( detect_format( "  {\"propositions\":[]}" ) == sample_format::json );
  CHECK( detect_format( "p\n1::1\n" ) == sample_format::text );
  CHECK_THROWS_AS( parse_sample( R"({"propositions":["p"],"positive":[{"prefix":[],"period":[[2]]}]})", sample_format::json ),
                   parse_error );
}

TEST_CASE( "finite samples" )
{
  auto const s = parse_finite_sample( "p,q\n10;01\n\n---\n01;10\n", sample_format::text );
  REQUIRE( s.positives().size() == 2 );
  CHECK( s.positives()[0] == word( "10;01" ) );
  CHECK( s.positives()[1].empty() );
  CHECK( s.negatives()[0] == word( "01;10" ) );
  for ( auto const format : { sample_format::text, sample_format::json } )
    CHECK( parse_finite_sample( serialize( s, format ), format ) == s );
}

TEST_CASE( "disjointness compares the denoted infinite words" )
{
  CHECK_THROWS_AS( parse_sample( "p\n1::1\n---\n::1;1\n", sample_format::text ), sample_error );
  auto const literal = parse_sample( "p\n1;0::1;0\n", sample_format::text );
  CHECK( literal.positives()[0] == lasso( "1;0", "1;0" ) );
  auto const normal = parse_sample( "p\n1;0::1;0\n", sample_format::text, { true } );
  CHECK( normal.positives()[0] == lasso( "", "1;0" ) );
}

TEST_CASE( "round trip through both formats" )
{
  std::mt19937_64 rng( 11 );
  for ( int round = 0; round < 50; ++round )
  {
    std::vector<lasso_word> pos, neg;
    for ( int k = 0; k < 4; ++k )
    {
      auto w = random_lasso( rng, 6, 2 );
      bool clash = false;
      for ( auto const& o : pos )
        clash = clash || same_infinite_word( o, w );
      for ( auto const& o : neg )
        clash = clash || same_infinite_word( o, w );
      if ( !clash )
        ( k % 2 ? neg : pos ).push_back( w );
    }
    sample const s( props( { "a", "b" } ), pos, neg );
    for ( auto const format : { sample_format::text, sample_format::json } )
      CHECK( parse_sample( serialize( s, format ), format ) == s );
  }
}

TEST_CASE( "suffixes past the prefix repeat with the period" )
{
  std::mt19937_64 rng( 5 );
  for ( int round = 0; round < 200; ++round )
  {
    auto const w = random_lasso( rng, 6, 2 );
    auto const u = w.prefix_length();
    auto const v = w.period_length();
    auto const i = u + std::uniform_int_distribution<std::size_t>( 0u, 2u * v )( rng );
    auto const j = i + v * std::uniform_int_distribution<std::size_t>( 1u, 3u )( rng );
    for ( std::size_t d = 0u; d < 3u * w.length(); ++d )
      REQUIRE( w.at( i + d ) == w.at( j + d ) );
    CHECK( canonical_position( u, v, j ) == canonical_position( u, v, i ) );
    auto const longer = unroll( w, 3 );
    auto const shorter = unroll( w, 2 );
    CHECK( std::equal( shorter.begin(), shorter.end(), longer.begin() ) );
  }
}
