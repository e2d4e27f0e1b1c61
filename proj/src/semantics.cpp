#include <pslearn/semantics.hpp>

#include <set>
#include <stdexcept>

namespace pslearn
{

namespace
{

void require_propositions( formula const& f, proposition_set const& props )
{
  for ( auto const& name : propositions_of( f ) )
    if ( props.index_of( name ) < 0 )
      throw std::invalid_argument( "unknown proposition '" + name + "'" );
}

bool denotes( formula const& xi, symbol a, proposition_set const& props )
{
  switch ( xi.kind() )
  {
  case op::prop:
  {
    auto const index = props.index_of( xi.name() );
    if ( index < 0 )
      throw std::invalid_argument( "unknown proposition '" + xi.name() + "'" );
    return a.has( static_cast<std::size_t>( index ) );
  }
  case op::tt: return true;
  case op::ff: return false;
  case op::neg: return !denotes( xi.left(), a, props );
  case op::disj: return denotes( xi.left(), a, props ) || denotes( xi.right(), a, props );
  case op::conj: return denotes( xi.left(), a, props ) && denotes( xi.right(), a, props );
  case op::implies: return !denotes( xi.left(), a, props ) || denotes( xi.right(), a, props );
  case op::iff: return denotes( xi.left(), a, props ) == denotes( xi.right(), a, props );
  default:
    throw std::invalid_argument( "not an atomic expression: " + to_string( xi ) );
  }
}

std::size_t bound_copies( formula const& rho, std::size_t requested )
{
  if ( requested != 0u )
    return requested;
  auto const m = size( rho );
  if ( m >= 30u )
    throw std::invalid_argument( "unrolling bound 2^" + std::to_string( m ) + " + 1 is too large" );
  return ( std::size_t{ 1u } << m ) + 1u;
}

} // namespace

bool atom_denotation( formula const& xi, symbol a, proposition_set const& props )
{
  if ( !xi.is_atomic() )
    throw std::invalid_argument( "not an atomic expression: " + to_string( xi ) );
  return denotes( xi, a, props );
}

/* match tables */

match_table::match_table( formula const& rho, finite_word const& word, proposition_set const& props )
    : _root( rho ), _length( word.size() )
{
  if ( !rho.is_regex() )
    throw std::invalid_argument( "not a regular expression: " + to_string( rho ) );
  require_propositions( rho, props );
  auto const n = _length + 1u;
  for ( auto const& g : subterms( rho ) )
  {
    std::vector<bool> row( n * n, false );
    if ( g.is_atomic() )
    {
      for ( std::size_t i = 0u; i < _length; ++i )
        row[cell( i, i + 1u )] = denotes( g, word[i], props );
    }
    else
    {
      switch ( g.kind() )
      {
      case op::eps:
        for ( std::size_t i = 0u; i < n; ++i )
          row[cell( i, i )] = true;
        break;
      case op::choice:
      {
        auto const& l = _rows.at( g.left() );
        auto const& r = _rows.at( g.right() );
        for ( std::size_t c = 0u; c < row.size(); ++c )
          row[c] = l[c] || r[c];
        break;
      }
      case op::concat:
      {
        auto const& l = _rows.at( g.left() );
        auto const& r = _rows.at( g.right() );
        for ( std::size_t i = 0u; i < n; ++i )
          for ( std::size_t j = i; j < n; ++j )
          {
            bool value = false;
            for ( std::size_t t = i; t <= j && !value; ++t )
              value = l[cell( i, t )] && r[cell( t, j )];
            row[cell( i, j )] = value;
          }
        break;
      }
      case op::star:
      {
        auto const& l = _rows.at( g.left() );
        /* first chunk nonempty; i descending so row[t][j] is final for t > i */
        for ( std::size_t i = n; i-- > 0u; )
          for ( std::size_t j = i; j < n; ++j )
          {
            bool value = i == j;
            for ( std::size_t t = i + 1u; t <= j && !value; ++t )
              value = l[cell( i, t )] && row[cell( t, j )];
            row[cell( i, j )] = value;
          }
        break;
      }
      default:
        throw std::invalid_argument( "not a regular expression: " + to_string( g ) );
      }
    }
    _rows.emplace( g, std::move( row ) );
  }
}

std::size_t match_table::cell( std::size_t i, std::size_t j ) const
{
  return i * ( _length + 1u ) + j;
}

bool match_table::at( std::size_t i, std::size_t j ) const
{
  return at( _root, i, j );
}

bool match_table::at( formula const& subterm, std::size_t i, std::size_t j ) const
{
  if ( i > j || j > _length )
    throw std::out_of_range( "match position out of range" );
  return _rows.at( subterm )[cell( i, j )];
}

bool match( formula const& rho, finite_word const& word, std::size_t i, std::size_t j, proposition_set const& props )
{
  if ( i > j || j > word.size() )
    throw std::out_of_range( "match position out of range" );
  return match_table( rho, word, props ).at( i, j );
}

bool match_full( formula const& rho, finite_word const& word, proposition_set const& props )
{
  return match_table( rho, word, props ).at( 0u, word.size() );
}

/* automaton */

regex_automaton::regex_automaton( formula const& rho, proposition_set const& props ) : _props( props )
{
  if ( !rho.is_regex() )
    throw std::invalid_argument( "not a regular expression: " + to_string( rho ) );
  require_propositions( rho, props );
  std::unordered_map<formula, std::size_t> atom_ids;
  std::tie( _start, _accept ) = build( rho, atom_ids );
  _initial.assign( ( num_states() + 63u ) / 64u, 0u );
  _initial[_start / 64u] |= std::uint64_t{ 1u } << ( _start % 64u );
  close( _initial );
}

std::size_t regex_automaton::add_state()
{
  _epsilon.emplace_back();
  _edges.emplace_back();
  return _epsilon.size() - 1u;
}

std::pair<std::size_t, std::size_t> regex_automaton::build( formula const& rho, std::unordered_map<formula, std::size_t>& atom_ids )
{
  if ( rho.is_atomic() )
  {
    auto [it, inserted] = atom_ids.emplace( rho, _atoms.size() );
    if ( inserted )
      _atoms.push_back( rho );
    auto const s = add_state();
    auto const t = add_state();
    _edges[s].push_back( { it->second, t } );
    return { s, t };
  }
  switch ( rho.kind() )
  {
  case op::eps:
  {
    auto const s = add_state();
    auto const t = add_state();
    _epsilon[s].push_back( t );
    return { s, t };
  }
  case op::concat:
  {
    auto const [s1, t1] = build( rho.left(), atom_ids );
    auto const [s2, t2] = build( rho.right(), atom_ids );
    _epsilon[t1].push_back( s2 );
    return { s1, t2 };
  }
  case op::choice:
  {
    auto const [s1, t1] = build( rho.left(), atom_ids );
    auto const [s2, t2] = build( rho.right(), atom_ids );
    auto const s = add_state();
    auto const t = add_state();
    _epsilon[s] = { s1, s2 };
    _epsilon[t1].push_back( t );
    _epsilon[t2].push_back( t );
    return { s, t };
  }
  case op::star:
  {
    auto const [s1, t1] = build( rho.left(), atom_ids );
    auto const s = add_state();
    auto const t = add_state();
    _epsilon[s] = { s1, t };
    _epsilon[t1].push_back( s1 );
    _epsilon[t1].push_back( t );
    return { s, t };
  }
  default:
    throw std::invalid_argument( "not a regular expression: " + to_string( rho ) );
  }
}

void regex_automaton::close( state_set& states ) const
{
  std::vector<std::size_t> stack;
  for ( std::size_t q = 0u; q < num_states(); ++q )
    if ( ( states[q / 64u] >> ( q % 64u ) ) & 1u )
      stack.push_back( q );
  while ( !stack.empty() )
  {
    auto const q = stack.back();
    stack.pop_back();
    for ( auto const r : _epsilon[q] )
    {
      auto& word = states[r / 64u];
      auto const bit = std::uint64_t{ 1u } << ( r % 64u );
      if ( !( word & bit ) )
      {
        word |= bit;
        stack.push_back( r );
      }
    }
  }
}

regex_automaton::state_set regex_automaton::step( state_set const& states, symbol a ) const
{
  std::vector<char> enabled( _atoms.size() );
  for ( std::size_t k = 0u; k < _atoms.size(); ++k )
    enabled[k] = denotes( _atoms[k], a, _props );
  state_set next( states.size(), 0u );
  for ( std::size_t q = 0u; q < num_states(); ++q )
  {
    if ( !( ( states[q / 64u] >> ( q % 64u ) ) & 1u ) )
      continue;
    for ( auto const& e : _edges[q] )
      if ( enabled[e.atom] )
        next[e.target / 64u] |= std::uint64_t{ 1u } << ( e.target % 64u );
  }
  close( next );
  return next;
}

bool regex_automaton::accepting( state_set const& states ) const noexcept
{
  return ( states[_accept / 64u] >> ( _accept % 64u ) ) & 1u;
}

bool regex_automaton::empty( state_set const& states ) noexcept
{
  for ( auto const w : states )
    if ( w != 0u )
      return false;
  return true;
}

bool regex_automaton::accepts( finite_word const& word ) const
{
  auto states = _initial;
  for ( auto const a : word )
    states = step( states, a );
  return accepting( states );
}

/* lasso evaluation */

evaluator::evaluator( formula const& phi, proposition_set const& props, evaluation_options options )
    : _root( phi ), _props( props ), _options( options ), _order( subterms( phi ) )
{
  if ( !phi.is_psl() )
    throw std::invalid_argument( "not a formula: " + to_string( phi ) );
  require_propositions( phi, props );
  if ( !options.bounded )
    for ( auto const& g : _order )
      if ( g.kind() == op::triggers && !_automata.count( g.left() ) )
        _automata.emplace( g.left(), regex_automaton( g.left(), props ) );
}

std::vector<bool> evaluator::triggers_exact( formula const& f, lasso_word const& word, std::vector<bool> const& rhs ) const
{
  auto const& automaton = _automata.at( f.left() );
  auto const u = word.prefix_length();
  auto const v = word.period_length();
  auto const n = word.length();
  std::vector<bool> result( n, true );
  for ( std::size_t i = 0u; i < n; ++i )
  {
    auto states = automaton.initial();
    std::set<std::pair<regex_automaton::state_set, std::size_t>> seen;
    for ( std::size_t t = i;; ++t )
    {
      auto const position = canonical_position( u, v, t );
      if ( !seen.emplace( states, position ).second )
        break;
      states = automaton.step( states, word.at( position ) );
      if ( regex_automaton::empty( states ) )
        break;
      if ( automaton.accepting( states ) && !rhs[position] )
      {
        result[i] = false;
        break;
      }
    }
  }
  return result;
}

std::vector<bool> evaluator::triggers_bounded( formula const& f, lasso_word const& word, std::vector<bool> const& rhs ) const
{
  auto const u = word.prefix_length();
  auto const v = word.period_length();
  auto const n = word.length();
  auto const unrolled = unroll( word, bound_copies( f.left(), _options.unroll_copies ) );
  match_table const matches( f.left(), unrolled, _props );
  std::vector<bool> result( n, true );
  for ( std::size_t i = 0u; i < n && i <= unrolled.size(); ++i )
    for ( std::size_t j = i + 1u; j <= unrolled.size() && result[i]; ++j )
      if ( matches.at( i, j ) && !rhs[canonical_position( u, v, j - 1u )] )
        result[i] = false;
  return result;
}

evaluator::tables evaluator::compute( lasso_word const& word ) const
{
  auto const u = word.prefix_length();
  auto const v = word.period_length();
  auto const n = word.length();
  auto const succ = [&]( std::size_t i ) { return suffix_successor( u, v, i ); };
  tables values;
  for ( auto const& g : _order )
  {
    std::vector<bool> row( n, false );
    auto const child = [&]( formula const& c ) -> std::vector<bool> const& { return values.at( c ); };
    switch ( g.kind() )
    {
    case op::prop:
    case op::tt:
    case op::ff:
      for ( std::size_t i = 0u; i < n; ++i )
        row[i] = denotes( g, word.at( i ), _props );
      break;
    case op::neg:
      for ( std::size_t i = 0u; i < n; ++i )
        row[i] = !child( g.left() )[i];
      break;
    case op::disj:
    case op::conj:
    case op::implies:
    case op::iff:
    {
      auto const& a = child( g.left() );
      auto const& b = child( g.right() );
      for ( std::size_t i = 0u; i < n; ++i )
        row[i] = g.kind() == op::disj      ? ( a[i] || b[i] )
                 : g.kind() == op::conj    ? ( a[i] && b[i] )
                 : g.kind() == op::implies ? ( !a[i] || b[i] )
                                           : ( a[i] == b[i] );
      break;
    }
    case op::next:
      for ( std::size_t i = 0u; i < n; ++i )
        row[i] = child( g.left() )[succ( i )];
      break;
    case op::until:
    case op::finally:
    {
      /* least fixpoint of  row = b | (a & X row) */
      std::vector<bool> always( n, true );
      auto const& a = g.kind() == op::until ? child( g.left() ) : always;
      auto const& b = g.kind() == op::until ? child( g.right() ) : child( g.left() );
      for ( bool changed = true; changed; )
      {
        changed = false;
        for ( std::size_t k = n; k-- > 0u; )
        {
          bool const value = b[k] || ( a[k] && row[succ( k )] );
          if ( value != row[k] )
          {
            row[k] = value;
            changed = true;
          }
        }
      }
      break;
    }
    case op::globally:
    {
      /* greatest fixpoint of  row = a & X row */
      auto const& a = child( g.left() );
      row.assign( n, true );
      for ( bool changed = true; changed; )
      {
        changed = false;
        for ( std::size_t k = n; k-- > 0u; )
        {
          bool const value = a[k] && row[succ( k )];
          if ( value != row[k] )
          {
            row[k] = value;
            changed = true;
          }
        }
      }
      break;
    }
    case op::triggers:
      row = _options.bounded ? triggers_bounded( g, word, child( g.right() ) ) : triggers_exact( g, word, child( g.right() ) );
      break;
    default:
      /* pure regular expression subterms have no satisfaction table */
      continue;
    }
    values.emplace( g, std::move( row ) );
  }
  return values;
}

std::vector<bool> evaluator::table( lasso_word const& word ) const
{
  auto values = compute( word );
  return std::move( values.at( _root ) );
}

bool evaluator::evaluate( lasso_word const& word ) const
{
  return evaluate_at( word, 0u );
}

bool evaluator::evaluate_at( lasso_word const& word, std::size_t position ) const
{
  if ( position >= word.length() )
    throw std::out_of_range( "evaluation position out of range" );
  return table( word )[position];
}

bool evaluate( formula const& phi, lasso_word const& word, proposition_set const& props, evaluation_options options )
{
  return evaluator( phi, props, options ).evaluate( word );
}

bool evaluate_at( formula const& phi, lasso_word const& word, std::size_t position, proposition_set const& props, evaluation_options options )
{
  return evaluator( phi, props, options ).evaluate_at( word, position );
}

consistency_result is_consistent( formula const& phi, sample const& s, evaluation_options options )
{
  evaluator const eval( phi, s.propositions(), options );
  for ( std::size_t k = 0u; k < s.positives().size(); ++k )
    if ( !eval.evaluate( s.positives()[k] ) )
      return { false, consistency_witness{ true, k } };
  for ( std::size_t k = 0u; k < s.negatives().size(); ++k )
    if ( eval.evaluate( s.negatives()[k] ) )
      return { false, consistency_witness{ false, k } };
  return {};
}

consistency_result is_consistent( formula const& rho, finite_sample const& s )
{
  for ( std::size_t k = 0u; k < s.positives().size(); ++k )
    if ( !match_full( rho, s.positives()[k], s.propositions() ) )
      return { false, consistency_witness{ true, k } };
  for ( std::size_t k = 0u; k < s.negatives().size(); ++k )
    if ( match_full( rho, s.negatives()[k], s.propositions() ) )
      return { false, consistency_witness{ false, k } };
  return {};
}

} // namespace pslearn
