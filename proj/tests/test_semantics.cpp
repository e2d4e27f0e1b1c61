#include "support.hpp"

#include <pslearn/enumerate.hpp>
#include <pslearn/learner.hpp>
#include <pslearn/samplegen.hpp>
#include <pslearn/semantics.hpp>

#include <doctest.h>

using namespace pslearn;
using namespace pslearn::testing;

namespace
{

formula f( char const* text )
{
  return expand_derived( parse_formula( text ), "p" );
}

/* node count of the syntax tree, shared subterms counted per occurrence */
std::size_t tree_size( formula const& g )
{
  auto const a = arity( g.kind() );
  return 1u + ( a >= 1u ? tree_size( g.left() ) : 0u ) + ( a == 2u ? tree_size( g.right() ) : 0u );
}

} // namespace

TEST_CASE( "atomic denotations" )
{
  auto const pq = props( { "p", "q" } );
  CHECK( atom_denotation( f( "p | q" ), word( "10" )[0], pq ) );
  CHECK( atom_denotation( f( "p & !q" ), word( "10" )[0], pq ) );
  CHECK_FALSE( atom_denotation( f( "!p" ), word( "11" )[0], pq ) );
  CHECK_FALSE( atom_denotation( f( "p & !q" ), word( "11" )[0], pq ) );
  CHECK_THROWS( atom_denotation( f( "X p" ), word( "11" )[0], pq ) );
}

TEST_CASE( "regex matching on infixes" )
{
  auto const pq = props( { "p", "q" } );
  CHECK( match( f( "{p . q} |-> p" ).left(), word( "10;01" ), 0, 2, pq ) );
  auto const anything = f( "{(true . true)*} |-> p" ).left();
  auto const w = word( "00;10;00;00" );
  for ( std::size_t i = 0u; i <= w.size(); ++i )
    CHECK( match( anything, w, i, i, pq ) );
  CHECK_FALSE( match( anything, w, 0, 3, pq ) );
  CHECK( match( anything, w, 0, 4, pq ) );
  CHECK( match( anything, w, 1, 3, pq ) );
  CHECK_THROWS_AS( match( anything, w, 3, 2, pq ), std::out_of_range );
  CHECK_THROWS_AS( match( anything, w, 0, 5, pq ), std::out_of_range );
}

TEST_CASE( "the match table agrees with even-length matching" )
{
  auto const p = props( { "p" } );
  auto const rho = f( "{(true . true)*} |-> p" ).left();
  auto const w = word( "0;1;0;0;1;1" );
  match_table const table( rho, w, p );
  for ( std::size_t i = 0u; i <= w.size(); ++i )
    for ( std::size_t j = i; j <= w.size(); ++j )
      CHECK( table.at( i, j ) == ( ( j - i ) % 2u == 0u ) );
  auto const eps_table = match_table( formula::eps(), w, p );
  for ( std::size_t i = 0u; i <= w.size(); ++i )
    for ( std::size_t j = i; j <= w.size(); ++j )
      CHECK( eps_table.at( i, j ) == ( i == j ) );
}

TEST_CASE( "full-word matching" )
{
  auto const pq = props( { "p", "q" } );
  auto const pq_concat = f( "{p . q} |-> p" ).left();
  CHECK( match_full( pq_concat, word( "10;01" ), pq ) );
  CHECK_FALSE( match_full( pq_concat, word( "01;10" ), pq ) );
  CHECK( match_full( formula::eps(), word( "" ), pq ) );
  CHECK_FALSE( match_full( formula::eps(), word( "10" ), pq ) );
  CHECK( regex_automaton( pq_concat, pq ).accepts( word( "11;11" ) ) );
}

TEST_CASE( "evaluation on lasso words" )
{
  auto const p = props( { "p" } );
  auto const pq = props( { "p", "q" } );
  CHECK_FALSE( evaluate( f( "{(true . true)*} |-> p" ), lasso( "0;1", "0" ), p ) );
  CHECK( evaluate( f( "p" ), lasso( "", "1" ), p ) );
  CHECK_FALSE( evaluate( f( "p" ), lasso( "", "0" ), p ) );

  auto const witness = f( "{(p . p)*} |-> X p" );
  CHECK_FALSE( evaluate( witness, lasso( "1;1;0", "1" ), p ) );
  CHECK( evaluate( witness, lasso( "1;1;1;0", "1" ), p ) );

  CHECK( evaluate( f( "p U q" ), lasso( "", "10;01" ), pq ) );
  CHECK_FALSE( evaluate( f( "p U q" ), lasso( "", "10" ), pq ) );
  CHECK( evaluate( f( "G F q" ), lasso( "10", "00;01" ), pq ) );
  CHECK_FALSE( evaluate( f( "F G q" ), lasso( "01", "00;01" ), pq ) );
  CHECK( evaluate( f( "X X p" ), lasso( "", "1;0" ), p ) );
  CHECK_FALSE( evaluate( f( "X p" ), lasso( "", "1;0" ), p ) );
  CHECK_THROWS( evaluate( f( "r" ), lasso( "", "1" ), p ) );
}

TEST_CASE( "triggers obligations are checked at the last matched position" )
{
  auto const pq = props( { "p", "q" } );
  /* p . q matches [0,2) so q must hold at position 1 */
  CHECK( evaluate( f( "{p . q} |-> q" ), lasso( "10;01", "00" ), pq ) );
  CHECK_FALSE( evaluate( f( "{p . q} |-> p" ), lasso( "10;01", "00" ), pq ) );
  /* the empty match never obligates anything */
  CHECK( evaluate( f( "{eps} |-> false" ), lasso( "", "00" ), pq ) );
  CHECK( evaluate( f( "{q*} |-> p" ), lasso( "", "10" ), pq ) );
  CHECK_FALSE( evaluate( f( "{q*} |-> p" ), lasso( "", "01" ), pq ) );
  /* a match deep inside the period */
  CHECK_FALSE( evaluate( f( "{(true . true . true)* . q} |-> p" ), lasso( "", "00;00;00;00;00;01;00" ), pq ) );
}

TEST_CASE( "evaluate_at and tables" )
{
  auto const p = props( { "p" } );
  auto const w = lasso( "0", "1;0" );
  evaluator const e( f( "p" ), p );
  auto const t = e.table( w );
  CHECK( t == std::vector<bool>{ false, true, false } );
  CHECK( e.evaluate_at( w, 1 ) );
  CHECK_THROWS_AS( e.evaluate_at( w, 3 ), std::out_of_range );
}

TEST_CASE( "consistency with witnesses" )
{
  auto const p = props( { "p" } );
  sample const s( p, { lasso( "", "1" ) }, { lasso( "", "0" ) } );
  CHECK( is_consistent( f( "p" ), s ) );
  auto const r = is_consistent( f( "!p" ), s );
  CHECK_FALSE( r );
  REQUIRE( r.witness );
  CHECK( r.witness->positive );
  CHECK( r.witness->index == 0 );

  sample const only_positive( p, { lasso( "", "0" ) }, {} );
  auto const r2 = is_consistent( f( "p" ), only_positive );
  CHECK_FALSE( r2 );
  CHECK( r2.witness->positive );

  finite_sample const fs( props( { "p", "q" } ), { word( "10;01" ) }, { word( "01;10" ) } );
  CHECK( is_consistent( f( "{p . q} |-> p" ).left(), fs ) );
  CHECK_FALSE( is_consistent( f( "{q . p} |-> p" ).left(), fs ) );
}

TEST_CASE( "the first-difference construction is consistent with generated samples" )
{
  std::mt19937_64 rng( 3 );
  auto const pq = props( { "p", "q" } );
  for ( int round = 0; round < 40; ++round )
  {
    std::vector<lasso_word> pos, neg;
    for ( int k = 0; k < 6; ++k )
    {
      auto const w = random_lasso( rng, 5, 2 );
      bool clash = false;
      for ( auto const* side : { &pos, &neg } )
        for ( auto const& o : *side )
          clash = clash || same_infinite_word( o, w );
      if ( !clash )
        ( k % 2 ? neg : pos ).push_back( w );
    }
    sample const s( pq, pos, neg );
    auto const phi = trivial_solution( s );
    CHECK( phi.is_core() );
    CHECK( is_consistent( phi, s ) );
  }
}

TEST_CASE( "bounded triggers evaluation at the full bound matches the exact evaluator" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 17 );
  std::vector<formula> triggers;
  for ( auto const& g : enumerate_formulas( pq, 4, learning_mode::psl ) )
    if ( g.kind() == op::triggers )
      triggers.push_back( g );
  REQUIRE( triggers.size() > 20 );
  for ( auto const& g : triggers )
  {
    evaluator const exact( g, pq );
    evaluator const bounded( g, pq, { true, 0u } );
    for ( int round = 0; round < 8; ++round )
    {
      auto const w = random_lasso( rng, 5, 2 );
      REQUIRE_MESSAGE( exact.table( w ) == bounded.table( w ), to_string( g ) << " on " << format_lasso( w, 2 ) );
    }
  }
}

TEST_CASE( "match table and automaton agree" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 23 );
  auto const regexes = enumerate_formulas( pq, 4, learning_mode::regex );
  std::vector<finite_word> words;
  for ( std::size_t length = 0u; length <= 5u; ++length )
    for ( int k = 0; k < 6; ++k )
      words.push_back( random_finite( rng, length, 2 ) );
  for ( auto const& rho : regexes )
  {
    regex_automaton const automaton( rho, pq );
    CHECK( automaton.num_states() <= 2u * tree_size( rho ) + 2u );
    for ( auto const& w : words )
      REQUIRE_MESSAGE( match_full( rho, w, pq ) == automaton.accepts( w ), to_string( rho ) << " on " << format_word( w, 2 ) );
  }
}

TEST_CASE( "star matches every chain of matches" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 29 );
  for ( auto const& rho : enumerate_formulas( pq, 3, learning_mode::regex ) )
  {
    auto const star = formula::star( rho );
    auto const w = random_finite( rng, 5, 2 );
    match_table const base( rho, w, pq );
    match_table const closure( star, w, pq );
    /* reach[i][j]: a chain i = k0 < ... < kt = j of nonempty base matches */
    std::vector<std::vector<bool>> reach( w.size() + 1u, std::vector<bool>( w.size() + 1u, false ) );
    for ( std::size_t i = 0u; i <= w.size(); ++i )
      reach[i][i] = true;
    for ( std::size_t len = 1u; len <= w.size(); ++len )
      for ( std::size_t i = 0u; i + len <= w.size(); ++i )
        for ( std::size_t k = i + 1u; k <= i + len; ++k )
          if ( base.at( i, k ) && reach[k][i + len] )
            reach[i][i + len] = true;
    for ( std::size_t i = 0u; i <= w.size(); ++i )
      for ( std::size_t j = i; j <= w.size(); ++j )
        REQUIRE( closure.at( i, j ) == reach[i][j] );
  }
}
