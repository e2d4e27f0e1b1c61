#include "support.hpp"

#include <pslearn/enumerate.hpp>
#include <pslearn/formula.hpp>

#include <doctest.h>

using namespace pslearn;
using namespace pslearn::testing;

namespace
{

formula f( char const* text )
{
  return parse_formula( text );
}

} // namespace

TEST_CASE( "size counts shared subterms once" )
{
  CHECK( size( f( "{p . q} |-> X q" ) ) == 5 );
  CHECK( size( f( "p" ) ) == 1 );
  CHECK( size( f( "{(p . p)*} |-> X p" ) ) == 5 );
  CHECK( size( f( "p U p" ) ) == 2 );
}

TEST_CASE( "hash-consing makes structural equality pointer equality" )
{
  auto const a = formula::until( formula::prop( "p" ), formula::neg( formula::prop( "q" ) ) );
  auto const b = f( "p U !q" );
  CHECK( a == b );
  CHECK( a.hash() == b.hash() );
  CHECK_FALSE( a == f( "q U !p" ) );
}

TEST_CASE( "parser builds the expected terms" )
{
  auto const trig = f( "{(p . p)*} |-> X p" );
  REQUIRE( trig.kind() == op::triggers );
  CHECK( trig.left() == formula::star( formula::concat( formula::prop( "p" ), formula::prop( "p" ) ) ) );
  CHECK( trig.right() == formula::next( formula::prop( "p" ) ) );

  auto const until = f( "p U (q | !p)" );
  REQUIRE( until.kind() == op::until );
  CHECK( until.right() == formula::disj( formula::prop( "q" ), formula::neg( formula::prop( "p" ) ) ) );

  CHECK( f( "a U b U c" ) == f( "a U (b U c)" ) );
  CHECK( f( "a -> b -> c" ) == f( "a -> (b -> c)" ) );
  CHECK( f( "a | b & c" ) == f( "a | (b & c)" ) );
  CHECK( f( "{a . b + c} |-> d" ) == f( "{(a . b) + c} |-> d" ) );
  CHECK( f( "X !p U q" ) == f( "(X (!p)) U q" ) );
  CHECK( f( "{eps} |-> p" ).left() == formula::eps() );
}

TEST_CASE( "parser reports errors" )
{
  CHECK_THROWS_AS( f( "{p U q} |-> p" ), type_error );
  CHECK_THROWS_AS( f( "X (p . q)" ), type_error );
  CHECK_THROWS_AS( f( "{X p} |-> q" ), type_error );
  CHECK_THROWS_AS( f( "!eps" ), type_error );
  CHECK( f( "p . q" ).is_regex() );
  CHECK_THROWS_AS( f( "(p" ), parse_error );
  CHECK_THROWS_AS( f( "p &" ), parse_error );
  CHECK_THROWS_AS( f( "p $ q" ), parse_error );
  try
  {
    f( "p U )" );
    FAIL( "expected a parse error" );
  }
  catch ( parse_error const& e )
  {
    CHECK( e.column() == 5 );
  }
}

TEST_CASE( "printer output re-parses to the same term" )
{
  for ( auto const* text : { "{(p . p)*} |-> X p", "p U (q | !p)", "!(p U q)", "X X !p", "{(!p)*} |-> q", "{p + q . r} |-> p U q",
                             "{eps + p} |-> q", "(p -> q) <-> (F p & G q)", "true U false" } )
  {
    auto const g = f( text );
    CHECK( f( to_string( g ).c_str() ) == g );
  }
  CHECK( to_string( f( "{(p . p)*} |-> X p" ) ) == "{(p . p)*} |-> X p" );
  CHECK( to_string( f( "p U (q U r)" ) ) == "p U q U r" );
  CHECK( to_string( f( "(p U q) U r" ) ) == "(p U q) U r" );

  auto const pq = props( { "p", "q" } );
  for ( auto const& g : enumerate_formulas( pq, 4, learning_mode::psl ) )
    REQUIRE( f( to_string( g ).c_str() ) == g );
}

TEST_CASE( "derived operators expand to the core" )
{
  CHECK( expand_derived( f( "F p" ), "p" ) == f( "(p | !p) U p" ) );
  CHECK( expand_derived( f( "G p" ), "p" ) == f( "!((p | !p) U !p)" ) );
  CHECK( expand_derived( f( "p & q" ), "p" ) == f( "!(!p | !q)" ) );
  CHECK( expand_derived( f( "{(true . true)*} |-> p" ), "p" ) == f( "{((p | !p) . (p | !p))*} |-> p" ) );
  auto const e = expand_derived( f( "(p -> q) <-> G F q" ), "p" );
  CHECK( e.is_core() );
  CHECK_FALSE( f( "p -> q" ).is_core() );
}

TEST_CASE( "typing predicates" )
{
  CHECK( f( "p | !q" ).is_atomic() );
  CHECK( f( "p | !q" ).is_regex() );
  CHECK( f( "p | !q" ).is_psl() );
  CHECK( f( "X p" ).is_ltl() );
  CHECK_FALSE( f( "{p} |-> p" ).is_ltl() );
  auto const star = formula::star( formula::prop( "p" ) );
  CHECK( star.is_regex() );
  CHECK_FALSE( star.is_psl() );
  CHECK_THROWS_AS( formula::next( star ), type_error );
  CHECK_THROWS_AS( formula::concat( f( "X p" ), formula::prop( "p" ) ), type_error );
}

TEST_CASE( "decoding the indexed DAG of a small triggers formula" )
{
  /* 1 = p, 2 = q, 3 = p . q, 4 = X q, 5 = root */
  auto const pq = props( { "p", "q" } );
  auto const nl = core_labels( 2 ).size();
  auto a = structure_assignment::empty( 5, nl );
  a.labels[1][label_index( { op::prop, 0 }, 2 )] = true;
  a.labels[2][label_index( { op::prop, 1 }, 2 )] = true;
  a.labels[3][label_index( { op::concat, -1 }, 2 )] = true;
  a.labels[4][label_index( { op::next, -1 }, 2 )] = true;
  a.labels[5][label_index( { op::triggers, -1 }, 2 )] = true;
  a.left[3][1] = a.right[3][2] = true;
  a.left[4][2] = true;
  a.right[4][1] = true;
  a.left[5][3] = a.right[5][4] = true;
  a.left[2][1] = a.right[2][1] = true;
  CHECK( decode( a, pq, true ) == f( "{p . q} |-> X q" ) );

  auto single = structure_assignment::empty( 1, nl );
  single.labels[1][label_index( { op::prop, 0 }, 2 )] = true;
  CHECK( decode( single, pq, true ) == f( "p" ) );

  auto two = structure_assignment::empty( 2, nl );
  two.labels[1][label_index( { op::prop, 0 }, 2 )] = true;
  two.labels[2][label_index( { op::next, -1 }, 2 )] = true;
  two.left[2][1] = two.right[2][1] = true;
  CHECK( decode( two, pq, true ) == f( "X p" ) );
}

TEST_CASE( "decoding rejects malformed assignments" )
{
  auto const pq = props( { "p", "q" } );
  auto const nl = core_labels( 2 ).size();
  auto a = structure_assignment::empty( 1, nl );
  CHECK_THROWS_AS( decode( a, pq, true ), decode_error );
  a.labels[1][label_index( { op::prop, 0 }, 2 )] = true;
  a.labels[1][label_index( { op::prop, 1 }, 2 )] = true;
  CHECK_THROWS_AS( decode( a, pq, true ), decode_error );

  auto eps = structure_assignment::empty( 1, nl );
  eps.labels[1][label_index( { op::eps, -1 }, 2 )] = true;
  CHECK_THROWS( decode( eps, pq, true ) );
  CHECK( decode( eps, pq, false ) == formula::eps() );

  auto bad = structure_assignment::empty( 2, nl );
  bad.labels[1][label_index( { op::prop, 0 }, 2 )] = true;
  bad.labels[2][label_index( { op::star, -1 }, 2 )] = true;
  bad.left[2][1] = bad.right[2][1] = true;
  CHECK_THROWS( decode( bad, pq, true ) );
}

TEST_CASE( "indexing then decoding is the identity" )
{
  auto const pq = props( { "p", "q" } );
  for ( auto const mode : { learning_mode::psl, learning_mode::regex } )
    for ( auto const& g : enumerate_formulas( pq, 4, mode ) )
    {
      auto const indexed = index_formula( g, pq, mode == learning_mode::regex );
      REQUIRE( indexed.dag.size() == static_cast<int>( size( g ) ) );
      REQUIRE( decode( assignment_of( indexed.dag, 2 ), pq, mode != learning_mode::regex ) == g );
      for ( int k = 1; k <= indexed.dag.size(); ++k )
      {
        auto const& node = indexed.dag.nodes[k];
        REQUIRE( node.left < k );
        REQUIRE( node.right < k );
        if ( k <= indexed.regex_nodes )
          REQUIRE( is_regex_label( node.lbl ) );
      }
    }
}

TEST_CASE( "enumeration is complete at small sizes" )
{
  auto const p = props( { "p" } );
  auto const one = enumerate_formulas( p, 1, learning_mode::psl );
  REQUIRE( one.size() == 1 );
  CHECK( one[0] == f( "p" ) );
  auto const two = enumerate_formulas( p, 2, learning_mode::psl );
  CHECK( two.size() == 6 ); /* p, !p, X p, p | p, p U p, {p} |-> p */
  auto const ltl = enumerate_formulas( p, 3, learning_mode::ltl );
  for ( auto const& g : ltl )
    CHECK( g.is_ltl() );
  auto const regex = enumerate_formulas( p, 2, learning_mode::regex );
  CHECK( std::find( regex.begin(), regex.end(), formula::star( formula::prop( "p" ) ) ) != regex.end() );
  CHECK( std::find( regex.begin(), regex.end(), formula::eps() ) != regex.end() );
  std::size_t previous = 0u;
  for ( auto const& g : enumerate_formulas( p, 4, learning_mode::psl ) )
  {
    CHECK( size( g ) >= previous );
    previous = size( g );
  }
}
