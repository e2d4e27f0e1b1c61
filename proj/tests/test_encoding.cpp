#include "support.hpp"

#include <pslearn/cnf.hpp>
#include <pslearn/encoding.hpp>
#include <pslearn/enumerate.hpp>
#include <pslearn/samplegen.hpp>
#include <pslearn/semantics.hpp>
#include <pslearn/solver.hpp>

#include <doctest.h>

#include <sstream>

using namespace pslearn;
using namespace pslearn::testing;

namespace
{

formula f( char const* text )
{
  return expand_derived( parse_formula( text ), "p" );
}

std::size_t idx( op kind, std::size_t nprops, int proposition = -1 )
{
  return label_index( { kind, proposition }, nprops );
}

/* true iff the clauses plus the assumptions are satisfiable */
bool satisfiable( encoder const& enc, std::vector<int> const& assumptions )
{
  auto solver = make_default_solver();
  solver->add_cnf( enc.clauses() );
  return solver->solve( assumptions, std::nullopt ) == solve_status::sat;
}

/* every label that some model gives node k */
std::vector<std::size_t> feasible_labels( encoder const& enc, int k )
{
  std::vector<std::size_t> result;
  for ( std::size_t c = 0u; c < enc.num_labels(); ++c )
    if ( satisfiable( enc, { enc.x( k, c ) } ) )
      result.push_back( c );
  return result;
}

/* value of `literal` is the same in every model that satisfies the assumptions */
std::optional<bool> forced( encoder const& enc, std::vector<int> assumptions, int literal )
{
  assumptions.push_back( literal );
  bool const can_true = satisfiable( enc, assumptions );
  assumptions.back() = -literal;
  bool const can_false = satisfiable( enc, assumptions );
  if ( can_true == can_false )
    return std::nullopt;
  return can_true;
}

std::vector<int> structure_of( formula const& g, encoder const& enc, bool all_regex = false )
{
  auto const indexed = index_formula( g, enc.propositions(), all_regex );
  return enc.assumptions_for( assignment_of( indexed.dag, enc.propositions().size() ) );
}

/* Recomputes the semantic constraints directly from a model: labels and
   children are read off the x/l/r variables, then every y and z value must
   equal the value the node's operator prescribes from its children. */
struct model_checker
{
  encoder const& enc;
  std::vector<bool> const& model;
  std::vector<lasso_word> const& words;

  bool value( int var ) const { return model.at( static_cast<std::size_t>( var ) ); }

  std::string check() const
  {
    auto const budget = enc.budget();
    auto const nprops = enc.propositions().size();
    std::vector<label> lbl( budget.n + 1 );
    std::vector<int> left( budget.n + 1, 0 ), right( budget.n + 1, 0 );
    for ( int k = 1; k <= budget.n; ++k )
    {
      int count = 0;
      for ( std::size_t c = 0u; c < enc.num_labels(); ++c )
        if ( value( enc.x( k, c ) ) )
        {
          ++count;
          lbl[k] = enc.labels()[c];
          if ( !enc.allowed( k, c ) )
            return "node " + std::to_string( k ) + " carries a forbidden label";
        }
      if ( count != 1 )
        return "node " + std::to_string( k ) + " has " + std::to_string( count ) + " labels";
      if ( k == 1 )
        continue;
      int lc = 0, rc = 0;
      for ( int c = 1; c < k; ++c )
      {
        if ( value( enc.l( k, c ) ) )
          ++lc, left[k] = c;
        if ( value( enc.r( k, c ) ) )
          ++rc, right[k] = c;
      }
      if ( lc != 1 || rc != 1 )
        return "node " + std::to_string( k ) + " does not have exactly one child per side";
      auto const a = arity( lbl[k].kind );
      if ( a >= 1u && budget.m < k && left[k] <= budget.m && lbl[k].kind != op::triggers && !is_atomic_label( lbl[left[k]] ) )
        return "node " + std::to_string( k ) + " reads a non-atomic regex child";
      if ( lbl[k].kind == op::triggers && left[k] > budget.m )
        return "triggers left child is not a regex node";
    }

    for ( int t = 0; t < enc.num_traces(); ++t )
    {
      auto const& w = words[t];
      auto const N = enc.trace_length( t );
      auto const L = enc.unrolled_length( t );
      auto const u = w.prefix_length();
      auto const v = w.period_length();
      auto const z = [&]( int k, std::size_t i, std::size_t j ) { return value( enc.z( t, i, j, k ) ); };
      auto const y = [&]( int k, std::size_t i ) { return k > budget.m ? value( enc.y( t, i, k ) ) : z( k, i, i + 1u ); };

      for ( int k = 1; k <= budget.m; ++k )
        for ( std::size_t i = 0u; i <= L; ++i )
          for ( std::size_t j = i; j <= L; ++j )
          {
            bool expected = false;
            auto const l = left[k], r = right[k];
            switch ( lbl[k].kind )
            {
            case op::eps: expected = i == j; break;
            case op::prop: expected = j == i + 1u && w.at( i ).has( static_cast<std::size_t>( lbl[k].proposition ) ); break;
            case op::neg: expected = j == i + 1u && !z( l, i, j ); break;
            case op::disj:
            case op::choice: expected = z( l, i, j ) || z( r, i, j ); break;
            case op::concat:
              for ( std::size_t s = i; s <= j; ++s )
                expected = expected || ( z( l, i, s ) && z( r, s, j ) );
              break;
            case op::star:
              expected = i == j;
              for ( std::size_t s = i + 1u; s <= j; ++s )
                expected = expected || ( z( l, i, s ) && z( k, s, j ) );
              break;
            default: return "regex node with a temporal label";
            }
            if ( expected != z( k, i, j ) )
              return "z mismatch at trace " + std::to_string( t ) + " node " + std::to_string( k );
          }

      auto const succ = [&]( std::size_t i ) { return suffix_successor( u, v, i ); };
      for ( int k = budget.m + 1; k <= budget.n; ++k )
      {
        auto const l = left[k], r = right[k];
        std::vector<bool> expected( N, false );
        switch ( lbl[k].kind )
        {
        case op::prop:
          for ( std::size_t i = 0u; i < N; ++i )
            expected[i] = w.at( i ).has( static_cast<std::size_t>( lbl[k].proposition ) );
          break;
        case op::neg:
          for ( std::size_t i = 0u; i < N; ++i )
            expected[i] = !y( l, i );
          break;
        case op::disj:
          for ( std::size_t i = 0u; i < N; ++i )
            expected[i] = y( l, i ) || y( r, i );
          break;
        case op::next:
          for ( std::size_t i = 0u; i < N; ++i )
            expected[i] = y( l, succ( i ) );
          break;
        case op::until:
          for ( bool changed = true; changed; )
          {
            changed = false;
            for ( std::size_t i = 0u; i < N; ++i )
            {
              bool const next = y( r, i ) || ( y( l, i ) && expected[succ( i )] );
              changed = changed || next != expected[i];
              expected[i] = next;
            }
          }
          break;
        case op::triggers:
          for ( std::size_t i = 0u; i < N; ++i )
          {
            expected[i] = true;
            for ( std::size_t j = i + 1u; j <= L; ++j )
              if ( z( l, i, j ) && !y( r, canonical_position( u, v, j - 1u ) ) )
                expected[i] = false;
          }
          break;
        default: return "formula node with a regex-only label";
        }
        for ( std::size_t i = 0u; i < N; ++i )
          if ( expected[i] != y( k, i ) )
            return "y mismatch at trace " + std::to_string( t ) + " node " + std::to_string( k ) + " position " + std::to_string( i );
      }
      ( void ) nprops;
    }
    return {};
  }
};

} // namespace

TEST_CASE( "at n = 1 only propositions label the root" )
{
  auto const p = props( { "p" } );
  encoder const psl( p, { 1, 0 }, learning_mode::psl );
  CHECK( feasible_labels( psl, 1 ) == std::vector<std::size_t>{ idx( op::prop, 1, 0 ) } );
  encoder const ltl( p, { 1, 0 }, learning_mode::ltl );
  CHECK( feasible_labels( ltl, 1 ) == std::vector<std::size_t>{ idx( op::prop, 1, 0 ) } );
  auto const pq = props( { "p", "q" } );
  encoder const two( pq, { 1, 0 }, learning_mode::psl );
  CHECK( feasible_labels( two, 1 ).size() == 2u );
  encoder const regex( p, { 1, 1 }, learning_mode::regex );
  CHECK( feasible_labels( regex, 1 ) == std::vector<std::size_t>{ idx( op::eps, 1 ), idx( op::prop, 1, 0 ) } );
}

TEST_CASE( "structural typing of triggers and labels" )
{
  auto const pq = props( { "p", "q" } );
  encoder const with_regex( pq, { 2, 1 }, learning_mode::psl );
  auto const xt = with_regex.x( 2, idx( op::triggers, 2 ) );
  CHECK( satisfiable( with_regex, { xt } ) );
  CHECK( forced( with_regex, { xt }, with_regex.l( 2, 1 ) ) == std::optional<bool>( true ) );
  encoder const without_regex( pq, { 2, 0 }, learning_mode::psl );
  CHECK_FALSE( satisfiable( without_regex, { without_regex.x( 2, idx( op::triggers, 2 ) ) } ) );
  encoder const ltl( pq, { 3, 0 }, learning_mode::ltl );
  for ( auto const kind : { op::triggers, op::star, op::concat, op::choice, op::eps } )
    CHECK_FALSE( satisfiable( ltl, { ltl.x( 3, idx( kind, 2 ) ) } ) );
  encoder const regex_nodes( pq, { 3, 2 }, learning_mode::psl );
  CHECK_FALSE( satisfiable( regex_nodes, { regex_nodes.x( 2, idx( op::next, 2 ) ) } ) );
  CHECK_FALSE( satisfiable( regex_nodes, { regex_nodes.x( 3, idx( op::star, 2 ) ) } ) );

  auto solver = make_default_solver();
  solver->add_cnf( with_regex.clauses() );
  int const both[] = { with_regex.x( 1, idx( op::prop, 2, 0 ) ), with_regex.x( 1, idx( op::prop, 2, 1 ) ) };
  CHECK( solver->solve( both, std::nullopt ) == solve_status::unsat );
  CHECK( ( solver->failed( both[0] ) && solver->failed( both[1] ) ) );
}

TEST_CASE( "budget validation" )
{
  auto const p = props( { "p" } );
  CHECK_THROWS_AS( encoder( p, { 2, 2 }, learning_mode::psl ), std::invalid_argument );
  CHECK_THROWS_AS( encoder( p, { 2, 1 }, learning_mode::ltl ), std::invalid_argument );
  CHECK_THROWS_AS( encoder( p, { 2, 1 }, learning_mode::regex ), std::invalid_argument );
  CHECK_THROWS_AS( encoder( p, { 0, 0 }, learning_mode::psl ), std::invalid_argument );
  CHECK( unroll_bound( 0 ) == 1u );
  CHECK( unroll_bound( 1 ) == 3u );
  CHECK( unroll_bound( 3 ) == 9u );
  CHECK( unroll_bound( 3, 4u ) == 4u );
}

TEST_CASE( "regex constraints on a single word" )
{
  auto const pq = props( { "p", "q" } );
  auto const w = word( "10;01" );

  encoder eps( pq, { 1, 1 }, learning_mode::regex );
  eps.add_trace( w );
  auto const is_eps = std::vector<int>{ eps.x( 1, idx( op::eps, 2 ) ) };
  for ( std::size_t i = 0u; i <= 2u; ++i )
    for ( std::size_t j = i; j <= 2u; ++j )
      CHECK( forced( eps, is_eps, eps.z( 0, i, j, 1 ) ) == std::optional<bool>( i == j ) );

  encoder concat( pq, { 3, 3 }, learning_mode::regex );
  concat.add_trace( w );
  auto const pq_concat = structure_of( f( "{p . q} |-> p" ).left(), concat, true );
  CHECK( forced( concat, pq_concat, concat.z( 0, 0, 2, 3 ) ) == std::optional<bool>( true ) );
  CHECK( forced( concat, pq_concat, concat.z( 0, 0, 1, 3 ) ) == std::optional<bool>( false ) );

  encoder star( pq, { 2, 2 }, learning_mode::regex );
  star.add_trace( w );
  auto const p_star = structure_of( formula::star( formula::prop( "p" ) ), star, true );
  CHECK( forced( star, p_star, star.z( 0, 0, 2, 2 ) ) == std::optional<bool>( false ) );
  CHECK( forced( star, p_star, star.z( 0, 0, 1, 2 ) ) == std::optional<bool>( true ) );
  CHECK( forced( star, p_star, star.z( 0, 1, 1, 2 ) ) == std::optional<bool>( true ) );
}

TEST_CASE( "formula constraints on a single trace" )
{
  auto const p = props( { "p" } );

  encoder atom( p, { 1, 0 }, learning_mode::psl );
  atom.add_trace( lasso( "1", "0" ) );
  auto const is_p = std::vector<int>{ atom.x( 1, idx( op::prop, 1, 0 ) ) };
  CHECK( forced( atom, is_p, atom.y( 0, 0, 1 ) ) == std::optional<bool>( true ) );
  CHECK( forced( atom, is_p, atom.y( 0, 1, 1 ) ) == std::optional<bool>( false ) );

  encoder next( p, { 2, 0 }, learning_mode::psl );
  next.add_trace( lasso( "", "1;0" ) );
  auto const xp = structure_of( f( "X p" ), next );
  CHECK( forced( next, xp, next.y( 0, 1, 2 ) ) == std::optional<bool>( true ) );
  CHECK( forced( next, xp, next.y( 0, 0, 2 ) ) == std::optional<bool>( false ) );

  auto const phi = f( "{(true . true)*} |-> p" );
  auto const indexed = index_formula( phi, p );
  encoder trig( p, { static_cast<int>( size( phi ) ), indexed.regex_nodes }, learning_mode::psl );
  trig.add_trace( lasso( "0;1", "0" ) );
  auto const structure = trig.assumptions_for( assignment_of( indexed.dag, 1 ) );
  CHECK( forced( trig, structure, trig.root_literal( 0 ) ) == std::optional<bool>( false ) );
}

TEST_CASE( "whole-sample instances" )
{
  auto const p = props( { "p" } );
  sample const s( p, { lasso( "", "1" ) }, { lasso( "", "0" ) } );
  auto enc = build_phi( s, { 1, 0 }, learning_mode::psl );
  auto const result = solve( enc.clauses() );
  REQUIRE( result.status == solve_status::sat );
  CHECK( decode( enc.extract( result.model ), p, true ) == formula::prop( "p" ) );

  auto const pq = props( { "p", "q" } );
  finite_sample const fs( pq, { word( "10" ) }, { word( "01" ) } );
  auto regex = build_phi( fs, 1 );
  auto const regex_result = solve( regex.clauses() );
  REQUIRE( regex_result.status == solve_status::sat );
  CHECK( decode( regex.extract( regex_result.model ), pq, false ) == formula::prop( "p" ) );

  sample const needs_two( p, { lasso( "", "0;1" ) }, { lasso( "", "1;0" ) } );
  CHECK( solve( build_phi( needs_two, { 1, 0 }, learning_mode::psl ).clauses() ).status == solve_status::unsat );
  CHECK_THROWS_AS( build_phi( s, { 1, 0 }, learning_mode::regex ), std::invalid_argument );
}

TEST_CASE( "fixed-structure checks" )
{
  auto const p = props( { "p" } );
  CHECK( check_structure_fixed( f( "p" ), lasso( "", "1" ), p ) );
  CHECK_FALSE( check_structure_fixed( f( "{(true . true)*} |-> p" ), lasso( "0;1", "0" ), p ) );
  CHECK_THROWS_AS( check_structure_fixed( f( "{p} |-> p" ), lasso( "", "1" ), p, learning_mode::ltl ), std::invalid_argument );
  auto const pq = props( { "p", "q" } );
  CHECK( check_structure_fixed( f( "{p . q} |-> p" ).left(), word( "10;01" ), pq ) );
  CHECK_FALSE( check_structure_fixed( f( "{p . q} |-> p" ).left(), word( "01;10" ), pq ) );
}

TEST_CASE( "variable counts follow the closed forms" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 41 );
  for ( int round = 0; round < 20; ++round )
  {
    int const n = 2 + round % 4;
    int const m = round % n;
    encoder enc( pq, { n, m }, learning_mode::psl );
    std::size_t expected_z = 0u, expected_y = 0u;
    for ( int t = 0; t < 3; ++t )
    {
      auto const w = random_lasso( rng, 4, 2 );
      enc.add_trace( w );
      auto const b = unroll_bound( m );
      auto const L = m >= 1 ? w.prefix_length() + b * w.period_length() : w.length();
      CHECK( enc.unrolled_length( t ) == L );
      expected_z += static_cast<std::size_t>( m ) * ( L + 1u ) * ( L + 2u ) / 2u;
      expected_y += static_cast<std::size_t>( n - m ) * w.length();
    }
    CHECK( enc.variables().count( var_kind::z ) == expected_z );
    CHECK( enc.variables().count( var_kind::y ) == expected_y );
    CHECK( enc.variables().count( var_kind::x ) == static_cast<std::size_t>( n ) * enc.num_labels() );
    CHECK( enc.variables().count( var_kind::l ) == static_cast<std::size_t>( n * ( n - 1 ) / 2 ) );
  }
}

TEST_CASE( "projected models satisfy the constraint equations" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 43 );
  int checked = 0;
  for ( int round = 0; round < 60; ++round )
  {
    int const n = 1 + round % 5;
    int const m = ( round / 5 ) % n;
    std::vector<lasso_word> words;
    for ( int t = 0; t < 2; ++t )
      words.push_back( random_lasso( rng, 4, 2 ) );
    if ( same_infinite_word( words[0], words[1] ) )
      continue;
    auto enc = build_phi( sample( pq, { words[0] }, { words[1] } ), { n, m }, learning_mode::psl, encoding_options{ 2u, std::nullopt, 0u, std::nullopt } );
    auto const result = solve( enc.clauses() );
    if ( result.status != solve_status::sat )
      continue;
    auto const message = model_checker{ enc, result.model, words }.check();
    REQUIRE_MESSAGE( message.empty(), message );
    ++checked;
  }
  CHECK( checked > 20 );
}

TEST_CASE( "structure checks agree with the evaluator on small formulas" )
{
  auto const pq = props( { "p", "q" } );
  std::mt19937_64 rng( 47 );
  std::vector<lasso_word> words;
  for ( int k = 0; k < 6; ++k )
    words.push_back( random_lasso( rng, 4, 2 ) );
  structure_checker checker( pq );
  std::size_t pairs = 0u;
  for ( auto const& g : enumerate_formulas( pq, 4, learning_mode::psl ) )
  {
    evaluator const e( g, pq );
    for ( auto const& w : words )
    {
      REQUIRE_MESSAGE( checker.check( g, w, true ) == e.evaluate( w ), to_string( g ) << " on " << format_lasso( w, 2 ) );
      ++pairs;
    }
  }
  MESSAGE( pairs << " formula/trace pairs" );
  for ( auto const& rho : enumerate_formulas( pq, 3, learning_mode::regex ) )
    for ( std::size_t length = 0u; length <= 3u; ++length )
    {
      auto const w = random_finite( rng, length, 2 );
      REQUIRE( check_structure_fixed( rho, w, pq ) == match_full( rho, w, pq ) );
    }
}

TEST_CASE( "DIMACS export" )
{
  cnf empty;
  empty.reserve_vars( 3 );
  CHECK( export_dimacs( empty ) == "p cnf 3 0\n" );
  cnf one;
  one.add_clause( { 1, -2 } );
  CHECK( export_dimacs( one ) == "p cnf 2 1\n1 -2 0\n" );

  std::mt19937_64 rng( 53 );
  for ( int round = 0; round < 30; ++round )
  {
    cnf c;
    auto const clauses = std::uniform_int_distribution<int>( 0, 20 )( rng );
    for ( int k = 0; k < clauses; ++k )
    {
      std::vector<int> clause( std::uniform_int_distribution<std::size_t>( 1u, 5u )( rng ) );
      for ( auto& lit : clause )
        lit = std::uniform_int_distribution<int>( 1, 30 )( rng ) * ( rng() % 2u ? 1 : -1 );
      c.add_clause( clause );
    }
    CHECK( parse_dimacs( export_dimacs( c ) ) == c );
  }
  CHECK_THROWS_AS( parse_dimacs( "p cnf 2 2\n1 2 0\n" ), parse_error );
  CHECK_THROWS_AS( parse_dimacs( "1 2 0\n" ), parse_error );
  CHECK_THROWS_AS( parse_dimacs( "p cnf 1 1\n1 2 0\n" ), parse_error );
}

TEST_CASE( "instances are deterministic" )
{
  auto const s = succinctness_family( 1 );
  auto const a = build_phi( s, { 4, 2 }, learning_mode::psl );
  auto const b = build_phi( s, { 4, 2 }, learning_mode::psl );
  CHECK( export_dimacs( a.clauses(), &a.variables() ) == export_dimacs( b.clauses(), &b.variables() ) );
  std::ostringstream ta, tb;
  a.variables().write_tsv( ta );
  b.variables().write_tsv( tb );
  CHECK( ta.str() == tb.str() );
  CHECK( ta.str().find( "\tx\t" ) != std::string::npos );
}

TEST_CASE( "literal budget" )
{
  encoding_options options;
  options.max_literals = 100u;
  CHECK_THROWS_AS( build_phi( succinctness_family( 1 ), { 4, 2 }, learning_mode::psl, options ), budget_exceeded );
}
