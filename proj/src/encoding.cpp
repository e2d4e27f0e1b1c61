#include <pslearn/encoding.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace pslearn
{

char const* to_string( learning_mode mode ) noexcept
{
  switch ( mode )
  {
  case learning_mode::psl: return "psl";
  case learning_mode::ltl: return "ltl";
  case learning_mode::regex: return "regex";
  }
  return "?";
}

learning_mode parse_mode( std::string_view text )
{
  if ( text == "psl" )
    return learning_mode::psl;
  if ( text == "ltl" )
    return learning_mode::ltl;
  if ( text == "regex" )
    return learning_mode::regex;
  throw std::invalid_argument( "unknown mode '" + std::string( text ) + "' (expected psl, ltl or regex)" );
}

void validate_budget( node_budget budget, learning_mode mode )
{
  if ( budget.n < 1 )
    throw std::invalid_argument( "node budget n must be at least 1" );
  bool const ok = mode == learning_mode::ltl   ? budget.m == 0
                  : mode == learning_mode::psl ? ( budget.m >= 0 && budget.m < budget.n )
                                               : budget.m == budget.n;
  if ( !ok )
    throw std::invalid_argument( "invalid regex-node budget m = " + std::to_string( budget.m ) + " for n = " +
                                 std::to_string( budget.n ) + " in " + to_string( mode ) + " mode" );
}

std::size_t unroll_bound( int m, std::optional<std::size_t> cap )
{
  std::size_t b = 1u;
  if ( m >= 1 )
    b = m >= 40 ? std::numeric_limits<std::size_t>::max() : ( std::size_t{ 1u } << m ) + 1u;
  if ( cap )
    b = std::min( b, std::max<std::size_t>( *cap, 1u ) );
  return b;
}

namespace
{

constexpr std::size_t idx_eps = 0u;
constexpr std::size_t idx_neg = 1u;
constexpr std::size_t idx_disj = 2u;
constexpr std::size_t idx_choice = 3u;
constexpr std::size_t idx_concat = 4u;
constexpr std::size_t idx_star = 5u;
constexpr std::size_t idx_next = 6u;
constexpr std::size_t idx_until = 7u;
constexpr std::size_t idx_triggers = 8u;
constexpr std::size_t idx_first_prop = 9u;

var_descriptor aux( aux_family family, int trace, int node, int a = 0, int b = 0, int c = 0 )
{
  return { var_kind::aux, family, trace, node, a, b, c };
}

} // namespace

encoder::encoder( proposition_set props, node_budget budget, learning_mode mode, encoding_options options )
    : _props( std::move( props ) ), _budget( budget ), _mode( mode ), _options( options ), _labels( core_labels( _props.size() ) )
{
  validate_budget( budget, mode );
  _copies = options.unroll_copies ? std::max<std::size_t>( *options.unroll_copies, 1u ) : unroll_bound( budget.m, options.unroll_cap );

  auto const n = budget.n;
  for ( int k = 1; k <= n; ++k )
    for ( std::size_t c = 0u; c < _labels.size(); ++c )
    {
      auto const id = _table.add( { var_kind::x, aux_family::none, -1, k, static_cast<int>( c ) } );
      if ( k == 1 && c == 0u )
        _x_base = id;
    }
  _l_base = _table.size() + 1;
  for ( int k = 2; k <= n; ++k )
    for ( int c = 1; c < k; ++c )
      _table.add( { var_kind::l, aux_family::none, -1, k, c } );
  _r_base = _table.size() + 1;
  for ( int k = 2; k <= n; ++k )
    for ( int c = 1; c < k; ++c )
      _table.add( { var_kind::r, aux_family::none, -1, k, c } );
  _cnf.reserve_vars( _table.size() );
  emit_structural();
}

int encoder::x( int k, std::size_t label_index ) const
{
  assert( k >= 1 && k <= _budget.n && label_index < _labels.size() );
  return _x_base + ( k - 1 ) * static_cast<int>( _labels.size() ) + static_cast<int>( label_index );
}

int encoder::l( int k, int child ) const
{
  assert( k >= 2 && k <= _budget.n && child >= 1 && child < k );
  return _l_base + ( k - 1 ) * ( k - 2 ) / 2 + ( child - 1 );
}

int encoder::r( int k, int child ) const
{
  assert( k >= 2 && k <= _budget.n && child >= 1 && child < k );
  return _r_base + ( k - 1 ) * ( k - 2 ) / 2 + ( child - 1 );
}

int encoder::y( int trace, std::size_t i, int k ) const
{
  auto const& t = _traces.at( trace );
  assert( k > _budget.m && k <= _budget.n && i < t.n );
  return t.y_base + ( k - _budget.m - 1 ) * static_cast<int>( t.n ) + static_cast<int>( i );
}

int encoder::z( int trace, std::size_t i, std::size_t j, int k ) const
{
  auto const& t = _traces.at( trace );
  assert( k >= 1 && k <= _budget.m && i <= j && j <= t.l );
  auto const start = i * ( t.l + 1u ) - i * ( i - ( i > 0u ? 1u : 0u ) ) / 2u;
  return t.z_base + ( k - 1 ) * static_cast<int>( triangle( t ) ) + static_cast<int>( start + ( j - i ) );
}

int encoder::root_literal( int trace ) const
{
  auto const& t = _traces.at( trace );
  if ( t.finite )
    return z( trace, 0u, t.l, _budget.n );
  return y( trace, 0u, _budget.n );
}

bool encoder::allowed( int k, std::size_t c ) const
{
  auto const lbl = _labels.at( c );
  bool const regex_node = k <= _budget.m;
  if ( k == 1 )
    return lbl.kind == op::prop || ( regex_node && lbl.kind == op::eps );
  if ( regex_node )
    return is_regex_label( lbl );
  if ( !is_psl_label( lbl ) )
    return false;
  if ( lbl.kind == op::triggers )
    return _mode == learning_mode::psl && _budget.m >= 1;
  return true;
}

int encoder::fresh( var_descriptor d )
{
  auto const id = _table.add( d );
  _cnf.reserve_vars( id );
  return id;
}

void encoder::add( std::initializer_list<int> clause )
{
  _cnf.add_clause( clause );
}

void encoder::add( std::vector<int> const& clause )
{
  _cnf.add_clause( clause );
}

void encoder::add_unit( int literal )
{
  add( { literal } );
}

void encoder::check_limits() const
{
  if ( _options.max_literals != 0u && _cnf.literals().size() > _options.max_literals )
    throw budget_exceeded( "instance exceeds the limit of " + std::to_string( _options.max_literals ) + " literals" );
  if ( _options.limit && std::chrono::steady_clock::now() >= *_options.limit )
    throw budget_exceeded( "time limit reached while building the instance" );
}

int encoder::define_and( int a, int b, var_descriptor d )
{
  auto const g = fresh( d );
  add( { -g, a } );
  add( { -g, b } );
  add( { g, -a, -b } );
  return g;
}

void encoder::append_atomic_labels( int child, std::vector<int>& clause ) const
{
  for ( std::size_t c = 0u; c < _labels.size(); ++c )
    if ( is_atomic_label( _labels[c] ) && allowed( child, c ) )
      clause.push_back( x( child, c ) );
}

/* structural constraints */

void encoder::emit_structural()
{
  auto const n = _budget.n;
  auto const m = _budget.m;
  for ( int k = 1; k <= n; ++k )
  {
    std::vector<int> some;
    std::vector<std::size_t> permitted;
    for ( std::size_t c = 0u; c < _labels.size(); ++c )
    {
      if ( allowed( k, c ) )
      {
        some.push_back( x( k, c ) );
        permitted.push_back( c );
      }
      else
        add( { -x( k, c ) } );
    }
    add( some );
    for ( std::size_t a = 0u; a < permitted.size(); ++a )
      for ( std::size_t b = a + 1u; b < permitted.size(); ++b )
        add( { -x( k, permitted[a] ), -x( k, permitted[b] ) } );
    if ( k == 1 )
      continue;

    for ( auto const child_var : { &encoder::l, &encoder::r } )
    {
      std::vector<int> exists;
      for ( int c = 1; c < k; ++c )
        exists.push_back( ( this->*child_var )( k, c ) );
      add( exists );
      for ( int a = 1; a < k; ++a )
        for ( int b = a + 1; b < k; ++b )
          add( { -( this->*child_var )( k, a ), -( this->*child_var )( k, b ) } );
    }

    /* unused child slots point to node 1 */
    for ( auto const c : permitted )
    {
      auto const children = arity( _labels[c].kind );
      if ( children == 0u )
        add( { -x( k, c ), l( k, 1 ) } );
      if ( children <= 1u )
        add( { -x( k, c ), r( k, 1 ) } );
    }

    /* child typing */
    auto const require_atomic = [&]( std::size_t c, bool left_side, int upto ) {
      if ( !allowed( k, c ) )
        return;
      for ( int child = 1; child <= std::min( upto, k - 1 ); ++child )
      {
        std::vector<int> clause{ -x( k, c ), -( left_side ? l( k, child ) : r( k, child ) ) };
        append_atomic_labels( child, clause );
        add( clause );
      }
    };
    if ( k <= m )
    {
      require_atomic( idx_neg, true, k - 1 );
      require_atomic( idx_disj, true, k - 1 );
      require_atomic( idx_disj, false, k - 1 );
    }
    else
    {
      for ( auto const c : { idx_neg, idx_next, idx_disj, idx_until } )
        require_atomic( c, true, m );
      for ( auto const c : { idx_disj, idx_until, idx_triggers } )
        require_atomic( c, false, m );
      if ( allowed( k, idx_triggers ) )
        for ( int child = m + 1; child < k; ++child )
          add( { -x( k, idx_triggers ), -l( k, child ) } );
    }
  }
}

/* traces */

int encoder::add_trace( lasso_word const& word )
{
  if ( _mode == learning_mode::regex )
    throw std::invalid_argument( "regex mode expects finite words" );
  trace_info t;
  t.prefix = word.prefix_length();
  t.period = word.period_length();
  t.n = word.length();
  t.l = _budget.m >= 1 ? t.prefix + _copies * t.period : t.n;
  t.symbols.reserve( t.l );
  for ( std::size_t i = 0u; i < t.l; ++i )
    t.symbols.push_back( word.at( i ) );

  auto const index = static_cast<int>( _traces.size() );
  t.z_base = _table.size() + 1;
  for ( int k = 1; k <= _budget.m; ++k )
    for ( std::size_t i = 0u; i <= t.l; ++i )
      for ( std::size_t j = i; j <= t.l; ++j )
        _table.add( { var_kind::z, aux_family::none, index, k, static_cast<int>( i ), static_cast<int>( j ) } );
  t.y_base = _table.size() + 1;
  for ( int k = _budget.m + 1; k <= _budget.n; ++k )
    for ( std::size_t i = 0u; i < t.n; ++i )
      _table.add( { var_kind::y, aux_family::none, index, k, static_cast<int>( i ) } );
  _cnf.reserve_vars( _table.size() );
  _traces.push_back( std::move( t ) );

  emit_regex_semantics( index );
  emit_psl_semantics( index );
  return index;
}

int encoder::add_trace( finite_word const& word )
{
  if ( _mode != learning_mode::regex )
    throw std::invalid_argument( "finite words are only supported in regex mode" );
  trace_info t;
  t.finite = true;
  t.n = word.size();
  t.l = word.size();
  t.symbols = word;

  auto const index = static_cast<int>( _traces.size() );
  t.z_base = _table.size() + 1;
  for ( int k = 1; k <= _budget.m; ++k )
    for ( std::size_t i = 0u; i <= t.l; ++i )
      for ( std::size_t j = i; j <= t.l; ++j )
        _table.add( { var_kind::z, aux_family::none, index, k, static_cast<int>( i ), static_cast<int>( j ) } );
  t.y_base = _table.size() + 1;
  _cnf.reserve_vars( _table.size() );
  _traces.push_back( std::move( t ) );

  emit_regex_semantics( index );
  return index;
}

void encoder::emit_regex_semantics( int trace )
{
  auto const& t = _traces[trace];
  auto const L = t.l;
  auto const cells = triangle( t );
  auto const offset = [&]( std::size_t i, std::size_t j ) { return i * ( L + 1u ) - i * ( i - ( i > 0u ? 1u : 0u ) ) / 2u + ( j - i ); };

  for ( int k = 1; k <= _budget.m; ++k )
  {
    auto const zk = [&]( std::size_t i, std::size_t j ) { return z( trace, i, j, k ); };

    if ( allowed( k, idx_eps ) )
      for ( std::size_t i = 0u; i <= L; ++i )
        for ( std::size_t j = i; j <= L; ++j )
          add( { -x( k, idx_eps ), i == j ? zk( i, j ) : -zk( i, j ) } );
    for ( std::size_t p = 0u; p < _props.size(); ++p )
    {
      auto const xp = x( k, idx_first_prop + p );
      for ( std::size_t i = 0u; i <= L; ++i )
        for ( std::size_t j = i; j <= L; ++j )
        {
          bool const holds = j == i + 1u && t.symbols[i].has( p );
          add( { -xp, holds ? zk( i, j ) : -zk( i, j ) } );
        }
    }
    check_limits();
    if ( k == 1 )
      continue;

    /* child values: l_{k,c} -> (lz_{i,j} <-> z_{i,j,c}), likewise on the right */
    std::vector<int> lz( cells ), rz( cells ), second( cells );
    for ( std::size_t i = 0u; i <= L; ++i )
      for ( std::size_t j = i; j <= L; ++j )
      {
        auto const o = offset( i, j );
        lz[o] = fresh( aux( aux_family::left_z, trace, k, static_cast<int>( i ), static_cast<int>( j ) ) );
        rz[o] = fresh( aux( aux_family::right_z, trace, k, static_cast<int>( i ), static_cast<int>( j ) ) );
        second[o] = fresh( aux( aux_family::second_operand, trace, k, static_cast<int>( i ), static_cast<int>( j ) ) );
        for ( int c = 1; c < k; ++c )
        {
          add( { -l( k, c ), -lz[o], z( trace, i, j, c ) } );
          add( { -l( k, c ), lz[o], -z( trace, i, j, c ) } );
          add( { -r( k, c ), -rz[o], z( trace, i, j, c ) } );
          add( { -r( k, c ), rz[o], -z( trace, i, j, c ) } );
        }
        /* second operand of a split: the right child for concatenation, the node itself for star */
        add( { -x( k, idx_concat ), -second[o], rz[o] } );
        add( { -x( k, idx_concat ), second[o], -rz[o] } );
        add( { -x( k, idx_star ), -second[o], zk( i, j ) } );
        add( { -x( k, idx_star ), second[o], -zk( i, j ) } );
      }
    check_limits();

    auto const xneg = x( k, idx_neg );
    auto const xdisj = x( k, idx_disj );
    auto const xchoice = x( k, idx_choice );
    auto const xconcat = x( k, idx_concat );
    auto const xstar = x( k, idx_star );
    for ( std::size_t i = 0u; i <= L; ++i )
    {
      for ( std::size_t j = i; j <= L; ++j )
      {
        auto const o = offset( i, j );
        auto const zij = zk( i, j );
        if ( j == i + 1u )
        {
          add( { -xneg, -zij, -lz[o] } );
          add( { -xneg, zij, lz[o] } );
        }
        else
          add( { -xneg, -zij } );
        for ( auto const xo : { xdisj, xchoice } )
        {
          add( { -xo, -zij, lz[o], rz[o] } );
          add( { -xo, zij, -lz[o] } );
          add( { -xo, zij, -rz[o] } );
        }

        /* splits g_t <-> lz_{i,t} & second_{t,j} for i <= t <= j */
        std::vector<int> concat_clause{ -xconcat, -zij };
        std::vector<int> star_clause{ -xstar, -zij };
        for ( std::size_t s = i; s <= j; ++s )
        {
          auto const g = define_and( lz[offset( i, s )], second[offset( s, j )],
                                     aux( aux_family::split, trace, k, static_cast<int>( i ), static_cast<int>( s ), static_cast<int>( j ) ) );
          concat_clause.push_back( g );
          add( { -xconcat, zij, -g } );
          if ( s > i )
          {
            star_clause.push_back( g );
            add( { -xstar, zij, -g } );
          }
        }
        add( concat_clause );
        if ( i == j )
          add( { -xstar, zij } );
        else
          add( star_clause );
      }
      check_limits();
    }
  }
}

int encoder::child_value( int trace, int child, std::size_t i ) const
{
  return child > _budget.m ? y( trace, i, child ) : z( trace, i, i + 1u, child );
}

void encoder::emit_psl_semantics( int trace )
{
  auto const& t = _traces[trace];
  auto const N = t.n;
  auto const L = t.l;
  auto const m = _budget.m;
  auto const succ = [&]( std::size_t i ) { return suffix_successor( t.prefix, t.period, i ); };

  for ( int k = m + 1; k <= _budget.n; ++k )
  {
    auto const yk = [&]( std::size_t i ) { return y( trace, i, k ); };
    for ( std::size_t p = 0u; p < _props.size(); ++p )
    {
      auto const xp = x( k, idx_first_prop + p );
      for ( std::size_t i = 0u; i < N; ++i )
        add( { -xp, t.symbols[i].has( p ) ? yk( i ) : -yk( i ) } );
    }
    if ( k == 1 )
      continue;

    std::vector<int> ly( N ), ry( N );
    for ( std::size_t i = 0u; i < N; ++i )
    {
      ly[i] = fresh( aux( aux_family::left_y, trace, k, static_cast<int>( i ) ) );
      ry[i] = fresh( aux( aux_family::right_y, trace, k, static_cast<int>( i ) ) );
      for ( int c = 1; c < k; ++c )
      {
        auto const value = child_value( trace, c, i );
        add( { -l( k, c ), -ly[i], value } );
        add( { -l( k, c ), ly[i], -value } );
        add( { -r( k, c ), -ry[i], value } );
        add( { -r( k, c ), ry[i], -value } );
      }
    }

    auto const xneg = x( k, idx_neg );
    auto const xdisj = x( k, idx_disj );
    auto const xnext = x( k, idx_next );
    for ( std::size_t i = 0u; i < N; ++i )
    {
      add( { -xneg, -yk( i ), -ly[i] } );
      add( { -xneg, yk( i ), ly[i] } );
      add( { -xdisj, -yk( i ), ly[i], ry[i] } );
      add( { -xdisj, yk( i ), -ly[i] } );
      add( { -xdisj, yk( i ), -ry[i] } );
      add( { -xnext, -yk( i ), ly[succ( i )] } );
      add( { -xnext, yk( i ), -ly[succ( i )] } );
    }

    /* until: y_i <-> OR_d ( ry_{c_d} & AND_{e<d} ly_{c_e} ), c_0 = i, c_{e+1} = succ(c_e);
       d ranges over |uv| - i positions before |u| and over one period after */
    auto const xuntil = x( k, idx_until );
    for ( std::size_t i = 0u; i < N; ++i )
    {
      auto const steps = i < t.prefix ? N - i : t.period;
      std::vector<int> some{ -xuntil, -yk( i ), ry[i] };
      add( { -xuntil, yk( i ), -ry[i] } );
      int prefix = 0;
      std::size_t position = i;
      for ( std::size_t d = 1u; d < steps; ++d )
      {
        auto const previous = position;
        position = succ( position );
        prefix = d == 1u ? ly[previous]
                         : define_and( prefix, ly[previous], aux( aux_family::until_prefix, trace, k, static_cast<int>( i ), static_cast<int>( d ) ) );
        auto const term = define_and( ry[position], prefix, aux( aux_family::until_term, trace, k, static_cast<int>( i ), static_cast<int>( d ) ) );
        some.push_back( term );
        add( { -xuntil, yk( i ), -term } );
      }
      add( some );
    }
    check_limits();

    if ( !allowed( k, idx_triggers ) )
      continue;

    /* triggers: y_i <-> AND_{i<j<=L} ( lz_{i,j} -> ry_{M(j-1)} ) with lz the left child's z */
    auto const xtrig = x( k, idx_triggers );
    for ( std::size_t i = 0u; i < N; ++i )
    {
      std::vector<int> violated{ -xtrig, yk( i ) };
      for ( std::size_t j = i + 1u; j <= L; ++j )
      {
        auto const lz = fresh( aux( aux_family::left_z, trace, k, static_cast<int>( i ), static_cast<int>( j ) ) );
        for ( int c = 1; c <= m; ++c )
        {
          add( { -l( k, c ), -lz, z( trace, i, j, c ) } );
          add( { -l( k, c ), lz, -z( trace, i, j, c ) } );
        }
        auto const obligation = ry[canonical_position( t.prefix, t.period, j - 1u )];
        auto const v = define_and( lz, -obligation,
                                   aux( aux_family::trigger_violation, trace, k, static_cast<int>( i ), static_cast<int>( j ) ) );
        add( { -xtrig, -yk( i ), -v } );
        violated.push_back( v );
      }
      add( violated );
      check_limits();
    }
  }
}

structure_assignment encoder::extract( std::vector<bool> const& model ) const
{
  auto a = structure_assignment::empty( _budget.n, _labels.size() );
  auto const value = [&]( int var ) { return static_cast<std::size_t>( var ) < model.size() && model[var]; };
  for ( int k = 1; k <= _budget.n; ++k )
  {
    for ( std::size_t c = 0u; c < _labels.size(); ++c )
      a.labels[k][c] = value( x( k, c ) );
    for ( int c = 1; c < k; ++c )
    {
      a.left[k][c] = value( l( k, c ) );
      a.right[k][c] = value( r( k, c ) );
    }
  }
  return a;
}

std::vector<int> encoder::assumptions_for( structure_assignment const& a ) const
{
  if ( a.n != _budget.n )
    throw std::invalid_argument( "structure size does not match the encoding" );
  std::vector<int> lits;
  for ( int k = 1; k <= _budget.n; ++k )
  {
    for ( std::size_t c = 0u; c < _labels.size(); ++c )
      lits.push_back( a.labels[k][c] ? x( k, c ) : -x( k, c ) );
    for ( int c = 1; c < k; ++c )
    {
      lits.push_back( a.left[k][c] ? l( k, c ) : -l( k, c ) );
      lits.push_back( a.right[k][c] ? r( k, c ) : -r( k, c ) );
    }
  }
  return lits;
}

/* whole instances */

encoder build_phi( sample const& s, node_budget budget, learning_mode mode, encoding_options options )
{
  if ( mode == learning_mode::regex )
    throw std::invalid_argument( "regex mode expects a sample of finite words" );
  encoder enc( s.propositions(), budget, mode, options );
  for ( auto const& w : s.positives() )
    enc.add_unit( enc.root_literal( enc.add_trace( w ) ) );
  for ( auto const& w : s.negatives() )
    enc.add_unit( -enc.root_literal( enc.add_trace( w ) ) );
  return enc;
}

encoder build_phi( finite_sample const& s, int n, encoding_options options )
{
  encoder enc( s.propositions(), { n, n }, learning_mode::regex, options );
  for ( auto const& w : s.positives() )
    enc.add_unit( enc.root_literal( enc.add_trace( w ) ) );
  for ( auto const& w : s.negatives() )
    enc.add_unit( -enc.root_literal( enc.add_trace( w ) ) );
  return enc;
}

namespace
{

indexed_dag structure_of( formula const& f, proposition_set const& props, learning_mode mode )
{
  if ( !f.is_core() )
    throw std::invalid_argument( "structure checks need core operators only: " + to_string( f ) );
  if ( mode == learning_mode::regex )
  {
    if ( !f.is_regex() )
      throw std::invalid_argument( "not a regular expression: " + to_string( f ) );
    return index_formula( f, props, true );
  }
  if ( !f.is_psl() )
    throw std::invalid_argument( "not a formula: " + to_string( f ) );
  if ( mode == learning_mode::ltl && !f.is_ltl() )
    throw std::invalid_argument( "not an LTL formula: " + to_string( f ) );
  return index_formula( f, props );
}

template<typename Word>
bool solve_fixed( formula const& f, Word const& word, proposition_set const& props, learning_mode mode, encoding_options options )
{
  auto const indexed = structure_of( f, props, mode );
  node_budget const budget{ indexed.dag.size(), indexed.regex_nodes };
  encoder enc( props, budget, mode, options );
  auto const trace = enc.add_trace( word );
  auto solver = make_default_solver();
  solver->add_cnf( enc.clauses() );
  auto const assumptions = enc.assumptions_for( assignment_of( indexed.dag, props.size() ) );
  if ( solver->solve( assumptions ) != solve_status::sat )
    throw std::invalid_argument( "the structure of " + to_string( f ) + " is rejected by the typing constraints" );
  return solver->value( enc.root_literal( trace ) );
}

} // namespace

bool check_structure_fixed( formula const& phi, lasso_word const& word, proposition_set const& props, learning_mode mode,
                            encoding_options options )
{
  if ( mode == learning_mode::regex )
    throw std::invalid_argument( "regex mode expects a finite word" );
  return solve_fixed( phi, word, props, mode, options );
}

bool check_structure_fixed( formula const& rho, finite_word const& word, proposition_set const& props )
{
  return solve_fixed( rho, word, props, learning_mode::regex, {} );
}

struct structure_checker::entry
{
  node_budget budget;
  lasso_word word;
  std::unique_ptr<encoder> enc;
  std::unique_ptr<solver_backend> solver;
  int root = 0;
};

structure_checker::structure_checker( proposition_set props, learning_mode mode, encoding_options options, std::size_t capacity )
    : _props( std::move( props ) ), _mode( mode ), _options( options ), _capacity( std::max<std::size_t>( capacity, 1u ) )
{
  if ( mode == learning_mode::regex )
    throw std::invalid_argument( "structure_checker works on lasso words" );
}

structure_checker::~structure_checker() = default;

structure_checker::entry& structure_checker::instance( node_budget budget, lasso_word const& word )
{
  for ( auto it = _entries.begin(); it != _entries.end(); ++it )
  {
    if ( ( *it )->budget == budget && ( *it )->word == word )
    {
      _entries.splice( _entries.begin(), _entries, it );
      return *_entries.front();
    }
  }
  auto e = std::make_unique<entry>( entry{ budget, word, nullptr, nullptr, 0 } );
  e->enc = std::make_unique<encoder>( _props, budget, _mode, _options );
  auto const trace = e->enc->add_trace( word );
  e->root = e->enc->root_literal( trace );
  e->solver = make_default_solver();
  e->solver->add_cnf( e->enc->take_clauses() );
  _entries.push_front( std::move( e ) );
  if ( _entries.size() > _capacity )
    _entries.pop_back();
  return *_entries.front();
}

bool structure_checker::check( formula const& phi, lasso_word const& word, bool verify_forced )
{
  auto const indexed = structure_of( phi, _props, _mode );
  auto& e = instance( { indexed.dag.size(), indexed.regex_nodes }, word );
  auto assumptions = e.enc->assumptions_for( assignment_of( indexed.dag, _props.size() ) );
  if ( e.solver->solve( assumptions ) != solve_status::sat )
    throw std::invalid_argument( "the structure of " + to_string( phi ) + " is rejected by the typing constraints" );
  bool const value = e.solver->value( e.root );
  if ( verify_forced )
  {
    assumptions.push_back( value ? -e.root : e.root );
    if ( e.solver->solve( assumptions ) != solve_status::unsat )
      throw std::logic_error( "the root value of " + to_string( phi ) + " is not determined by its structure" );
  }
  return value;
}

} // namespace pslearn
