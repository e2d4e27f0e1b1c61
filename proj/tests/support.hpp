#pragma once

#include <pslearn/formula.hpp>
#include <pslearn/trace.hpp>

#include <random>
#include <string>
#include <string_view>

namespace pslearn::testing
{

/* "10;01" -> two symbols, first bit is the first proposition */
inline finite_word word( std::string_view text )
{
  finite_word w;
  if ( text.empty() )
    return w;
  std::size_t start = 0u;
  while ( true )
  {
    auto const end = text.find( ';', start );
    auto const token = text.substr( start, end == std::string_view::npos ? std::string_view::npos : end - start );
    symbol a;
    for ( std::size_t p = 0u; p < token.size(); ++p )
      a.set( p, token[p] == '1' );
    w.push_back( a );
    if ( end == std::string_view::npos )
      break;
    start = end + 1u;
  }
  return w;
}

inline lasso_word lasso( std::string_view prefix, std::string_view period )
{
  return lasso_word( word( prefix ), word( period ) );
}

inline proposition_set props( std::initializer_list<char const*> names )
{
  return proposition_set( std::vector<std::string>( names.begin(), names.end() ) );
}

inline finite_word random_finite( std::mt19937_64& rng, std::size_t length, std::size_t num_props )
{
  std::uniform_int_distribution<std::uint64_t> bits( 0u, ( std::uint64_t{ 1u } << num_props ) - 1u );
  finite_word w( length );
  for ( auto& a : w )
    a.bits = bits( rng );
  return w;
}

/* total length uniform in [1, max_length], then the prefix length uniform below it */
inline lasso_word random_lasso( std::mt19937_64& rng, std::size_t max_length, std::size_t num_props )
{
  auto const total = std::uniform_int_distribution<std::size_t>( 1u, max_length )( rng );
  auto const prefix = std::uniform_int_distribution<std::size_t>( 0u, total - 1u )( rng );
  return lasso_word( random_finite( rng, prefix, num_props ), random_finite( rng, total - prefix, num_props ) );
}

} // namespace pslearn::testing
