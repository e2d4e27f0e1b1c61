#include <pslearn/cnf.hpp>
#include <pslearn/trace.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace pslearn
{

namespace
{

char const* family_name( aux_family f )
{
  switch ( f )
  {
  case aux_family::none: return "aux";
  case aux_family::left_z: return "lz";
  case aux_family::right_z: return "rz";
  case aux_family::left_y: return "ly";
  case aux_family::right_y: return "ry";
  case aux_family::second_operand: return "s";
  case aux_family::split: return "g";
  case aux_family::until_prefix: return "up";
  case aux_family::until_term: return "ut";
  case aux_family::trigger_violation: return "tv";
  }
  return "aux";
}

} // namespace

std::string to_string( var_descriptor const& d )
{
  std::ostringstream os;
  switch ( d.kind )
  {
  case var_kind::x: os << "x " << d.node << ' ' << d.a; break;
  case var_kind::l: os << "l " << d.node << ' ' << d.a; break;
  case var_kind::r: os << "r " << d.node << ' ' << d.a; break;
  case var_kind::y: os << "y " << d.trace << ' ' << d.a << ' ' << d.node; break;
  case var_kind::z: os << "z " << d.trace << ' ' << d.a << ' ' << d.b << ' ' << d.node; break;
  case var_kind::aux:
    os << family_name( d.family ) << ' ' << d.trace << ' ' << d.node << ' ' << d.a << ' ' << d.b << ' ' << d.c;
    break;
  }
  return os.str();
}

int variable_table::add( var_descriptor const& d )
{
  _descriptors.push_back( d );
  ++_counts[static_cast<std::size_t>( d.kind )];
  return static_cast<int>( _descriptors.size() );
}

void variable_table::write_tsv( std::ostream& os ) const
{
  for ( std::size_t k = 0u; k < _descriptors.size(); ++k )
  {
    auto fields = to_string( _descriptors[k] );
    std::replace( fields.begin(), fields.end(), ' ', '\t' );
    os << ( k + 1u ) << '\t' << fields << '\n';
  }
}

void cnf::reserve_vars( int n ) noexcept
{
  if ( n > _num_vars )
    _num_vars = n;
}

void cnf::add_clause( std::span<int const> clause )
{
  for ( auto const lit : clause )
  {
    reserve_vars( std::abs( lit ) );
    _literals.push_back( lit );
  }
  _literals.push_back( 0 );
  ++_num_clauses;
}

std::vector<std::vector<int>> cnf::clauses() const
{
  std::vector<std::vector<int>> result;
  result.reserve( _num_clauses );
  std::vector<int> current;
  for ( auto const lit : _literals )
  {
    if ( lit == 0 )
      result.push_back( std::exchange( current, {} ) );
    else
      current.push_back( lit );
  }
  return result;
}

void export_dimacs( cnf const& formula, std::ostream& os, variable_table const* table )
{
  if ( table )
    for ( int id = 1; id <= table->size(); ++id )
      os << "c " << id << ' ' << to_string( table->descriptor( id ) ) << '\n';
  os << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  bool line_start = true;
  for ( auto const lit : formula.literals() )
  {
    if ( !line_start )
      os << ' ';
    os << lit;
    line_start = lit == 0;
    if ( line_start )
      os << '\n';
  }
}

std::string export_dimacs( cnf const& formula, variable_table const* table )
{
  std::ostringstream os;
  export_dimacs( formula, os, table );
  return os.str();
}

cnf parse_dimacs( std::string_view text )
{
  cnf result;
  std::istringstream is{ std::string( text ) };
  std::string line;
  std::size_t line_no = 0u;
  bool header = false;
  long declared_vars = 0;
  long declared_clauses = 0;
  std::vector<int> clause;
  while ( std::getline( is, line ) )
  {
    ++line_no;
    std::istringstream ls( line );
    std::string first;
    if ( !( ls >> first ) || first == "c" || first[0] == 'c' )
      continue;
    if ( first == "p" )
    {
      std::string format;
      if ( header || !( ls >> format >> declared_vars >> declared_clauses ) || format != "cnf" || declared_vars < 0 || declared_clauses < 0 )
        throw parse_error( "malformed DIMACS header", line_no, 1u );
      header = true;
      result.reserve_vars( static_cast<int>( declared_vars ) );
      continue;
    }
    if ( !header )
      throw parse_error( "clause before DIMACS header", line_no, 1u );
    std::istringstream cs( line );
    long lit = 0;
    while ( cs >> lit )
    {
      if ( std::labs( lit ) > declared_vars )
        throw parse_error( "literal " + std::to_string( lit ) + " exceeds the declared variable count", line_no, 1u );
      if ( lit == 0 )
        result.add_clause( std::exchange( clause, {} ) );
      else
        clause.push_back( static_cast<int>( lit ) );
    }
    if ( !cs.eof() )
      throw parse_error( "invalid token in DIMACS clause", line_no, 1u );
  }
  if ( !header )
    throw parse_error( "missing DIMACS header" );
  if ( !clause.empty() )
    throw parse_error( "unterminated DIMACS clause", line_no, 1u );
  if ( static_cast<long>( result.num_clauses() ) != declared_clauses )
    throw parse_error( "clause count does not match the DIMACS header" );
  return result;
}

} // namespace pslearn
